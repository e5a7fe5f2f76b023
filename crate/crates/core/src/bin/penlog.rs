use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use penlog::encoders::{encode_max_clique, export_wcnf, read_dimacs_graph, solve_max_clique};
use penlog::inference::{nm_entails, nm_entails_by_subtheories, Query};
use penlog::kb::{parse_pkb, parse_rational, write_pkb, PenaltyKb};
use penlog::logic::parse_formula;
use penlog::solver::{
    brute_force_min_cost, consistency_cost, min_cost_interpretations, phi_preferred_subtheories,
    preferred_subtheories, SearchConfig, VariableOrder, WitnessMode,
};
use penlog::{belief, Error};

/// Penalty-logic engine: weighted knowledge bases, minimum-cost
/// interpretations, nonmonotonic queries, and belief-function checks.
#[derive(Parser)]
#[command(name = "penlog", version, about, max_term_width = 80)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum OrderArg {
    Lex,
    #[default]
    Freq,
}

impl From<OrderArg> for VariableOrder {
    fn from(o: OrderArg) -> VariableOrder {
        match o {
            OrderArg::Lex => VariableOrder::Lexicographic,
            OrderArg::Freq => VariableOrder::Frequency,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimum-cost interpretations of a knowledge base
    Solve {
        kb: PathBuf,
        /// Report only the lexicographically smallest witness
        #[arg(long)]
        one: bool,
        /// Branching order of the search
        #[arg(long, value_enum, default_value_t)]
        order: OrderArg,
        /// Use the exhaustive reference solver instead
        #[arg(long)]
        oracle: bool,
    },
    /// Cost of consistency of a formula with a knowledge base
    Cost {
        kb: PathBuf,
        #[arg(long)]
        formula: String,
        /// Use the exhaustive reference solver instead
        #[arg(long)]
        oracle: bool,
    },
    /// Nonmonotonic entailment between two formulas
    Entail {
        kb: PathBuf,
        #[arg(long)]
        premise: String,
        #[arg(long)]
        conclusion: String,
        /// Answer through preferred sub-theories instead of preferred
        /// models
        #[arg(long)]
        oracle: bool,
    },
    /// Preferred sub-theories, optionally relative to a formula
    Subtheories {
        kb: PathBuf,
        #[arg(long)]
        formula: Option<String>,
    },
    /// Whether two bases induce the same cost function
    Equiv { a: PathBuf, b: PathBuf },
    /// Whether the first base costs no more than the second everywhere
    Cheaper { a: PathBuf, b: PathBuf },
    /// Merge duplicate formulas, summing their penalties
    Normalize {
        kb: PathBuf,
        /// Merge logically equivalent formulas, not just identical ones
        #[arg(long)]
        semantic: bool,
    },
    /// Encode maximum clique of a DIMACS graph as a penalty base
    EncodeClique { graph: PathBuf },
    /// Solve maximum clique of a DIMACS graph
    Clique { graph: PathBuf },
    /// Verify the cost/contour correspondence on a base
    DsCheck {
        kb: PathBuf,
        /// Largest acceptable deviation
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Leading order of the infinitesimal plausibility of a formula
    DsOrder {
        kb: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Export a clausal base as weighted CNF
    ExportWcnf {
        kb: PathBuf,
        /// Multiply finite penalties to clear denominators
        #[arg(long)]
        scale: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::VocabularyTooLarge { .. } | Error::TooManyItems { .. } => {
                    ExitCode::from(3)
                }
                _ => ExitCode::from(2),
            }
        }
    }
}

fn load_kb(path: &Path) -> Result<PenaltyKb, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })?;
    parse_pkb(&text)
}

fn load_graph(path: &Path) -> Result<penlog::encoders::Graph, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })?;
    read_dimacs_graph(&text)
}

fn bool_answer(answer: bool) -> ExitCode {
    println!("{answer}");
    if answer {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// 12 significant digits, locale-independent.
fn print_float(value: f64) -> String {
    format!("{value:.11e}")
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Solve {
            kb,
            one,
            order,
            oracle,
        } => {
            let kb = load_kb(&kb)?;
            let cfg = SearchConfig {
                witness_mode: if one { WitnessMode::One } else { WitnessMode::All },
                variable_order: order.into(),
                ..SearchConfig::default()
            };
            let result = if oracle {
                brute_force_min_cost(&kb, &cfg)?
            } else {
                min_cost_interpretations(&kb, &cfg)?
            };
            println!("optimum {}", result.optimum);
            for witness in &result.witnesses {
                println!("{witness}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cost {
            kb,
            formula,
            oracle,
        } => {
            let kb = load_kb(&kb)?;
            let f = parse_formula(&formula)?;
            let cost = if oracle {
                brute_force_min_cost(&kb.add_hard(f), &SearchConfig::default())?.optimum
            } else {
                consistency_cost(&kb, &f)?
            };
            println!("{cost}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Entail {
            kb,
            premise,
            conclusion,
            oracle,
        } => {
            let kb = load_kb(&kb)?;
            let query = Query::new(parse_formula(&premise)?, parse_formula(&conclusion)?);
            let answer = if oracle {
                nm_entails_by_subtheories(&kb, &query)?
            } else {
                nm_entails(&kb, &query)?
            };
            Ok(bool_answer(answer))
        }
        Command::Subtheories { kb, formula } => {
            let kb = load_kb(&kb)?;
            let subtheories = match formula {
                Some(text) => phi_preferred_subtheories(&kb, &parse_formula(&text)?)?,
                None => preferred_subtheories(&kb)?,
            };
            for sub in subtheories {
                let cost = kb.subtheory_cost(&sub)?;
                let tags: Vec<String> = sub.tags().map(|t| (t + 1).to_string()).collect();
                println!("{cost}: {}", tags.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Equiv { a, b } => {
            let (a, b) = (load_kb(&a)?, load_kb(&b)?);
            Ok(bool_answer(a.semantically_equivalent(&b)?))
        }
        Command::Cheaper { a, b } => {
            let (a, b) = (load_kb(&a)?, load_kb(&b)?);
            Ok(bool_answer(a.less_expensive(&b)?))
        }
        Command::Normalize { kb, semantic } => {
            let kb = load_kb(&kb)?;
            let merged = if semantic {
                kb.normalize_semantic()?
            } else {
                kb.normalize()
            };
            print!("{}", write_pkb(&merged));
            Ok(ExitCode::SUCCESS)
        }
        Command::EncodeClique { graph } => {
            let graph = load_graph(&graph)?;
            print!("{}", write_pkb(&encode_max_clique(&graph)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Clique { graph } => {
            let graph = load_graph(&graph)?;
            let clique = solve_max_clique(&graph)?;
            println!("size {}", clique.size());
            println!("{}", clique.vertices.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        Command::DsCheck { kb, tol } => {
            let kb = load_kb(&kb)?;
            let deviation = belief::max_contour_deviation(&kb)?;
            println!("{}", print_float(deviation));
            Ok(if deviation <= tol {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::DsOrder { kb, formula } => {
            let kb = load_kb(&kb)?;
            let order = belief::infinitesimal_plausibility(&kb, &parse_formula(&formula)?)?;
            println!("exponent {} multiplicity {}", order.exponent, order.multiplicity);
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportWcnf { kb, scale } => {
            let kb = load_kb(&kb)?;
            let scale = scale.map(|s| parse_rational(&s)).transpose()?;
            print!("{}", export_wcnf(&kb, scale.as_ref())?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
