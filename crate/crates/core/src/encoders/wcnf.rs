use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kb::{PenaltyKb, Penalty};
use crate::logic::{canonicalize, Atom, Formula};

/// Serializes a clausal base as weighted CNF: `p wcnf <vars> <clauses>
/// <top>` followed by `<weight> <lits...> 0` lines. Inviolable items get
/// the top weight, one more than the sum of the finite weights. Atom
/// names are recorded in `c var` comments so a round trip restores them.
///
/// Every formula must be a clause (a disjunction of literals, or `F`)
/// after canonicalization, and every finite penalty must be an integer;
/// `scale` multiplies finite penalties first, to clear denominators.
pub fn export_wcnf(kb: &PenaltyKb, scale: Option<&BigRational>) -> Result<String> {
    let vocab = kb.vocabulary();
    let scale = scale.cloned().unwrap_or_else(BigRational::one);
    if !scale.is_positive() {
        return Err(Error::InvalidNumber(scale.to_string()));
    }

    let mut weights: Vec<Option<BigInt>> = Vec::new(); // None marks hard
    let mut top = BigInt::one();
    for (index, item) in kb.items().iter().enumerate() {
        match item.penalty() {
            Penalty::Infinite => weights.push(None),
            Penalty::Finite(v) => {
                let scaled = v * &scale;
                if !scaled.denom().is_one() {
                    return Err(Error::NonIntegralWeight {
                        index,
                        weight: scaled.to_string(),
                    });
                }
                top += scaled.numer();
                weights.push(Some(scaled.numer().clone()));
            }
        }
    }

    let mut clauses = Vec::new();
    for (index, item) in kb.items().iter().enumerate() {
        let literals = clause_literals(item.formula(), &|a: &Atom| vocab.index_of(a))
            .ok_or_else(|| Error::NonClausal {
            index,
            formula: item.formula().to_string(),
        })?;
        clauses.push(literals);
    }

    let mut out = String::new();
    for (i, atom) in vocab.atoms().iter().enumerate() {
        writeln!(out, "c var {} {}", i + 1, atom).expect("string write");
    }
    writeln!(out, "p wcnf {} {} {}", vocab.len(), clauses.len(), top).expect("string write");
    for (literals, weight) in clauses.iter().zip(&weights) {
        match weight {
            Some(w) => write!(out, "{w}").expect("string write"),
            None => write!(out, "{top}").expect("string write"),
        }
        for &(var, positive) in literals {
            let lit = (var + 1) as i64;
            write!(out, " {}", if positive { lit } else { -lit }).expect("string write");
        }
        writeln!(out, " 0").expect("string write");
    }
    Ok(out)
}

/// A clause as (variable index, polarity) pairs; `F` is the empty clause.
fn clause_literals(
    f: &Formula,
    index_of: &dyn Fn(&Atom) -> Option<usize>,
) -> Option<Vec<(usize, bool)>> {
    fn collect(
        f: &Formula,
        index_of: &dyn Fn(&Atom) -> Option<usize>,
        out: &mut Vec<(usize, bool)>,
    ) -> bool {
        match f {
            Formula::Atom(a) => match index_of(a) {
                Some(i) => {
                    out.push((i, true));
                    true
                }
                None => false,
            },
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Atom(a) => match index_of(a) {
                    Some(i) => {
                        out.push((i, false));
                        true
                    }
                    None => false,
                },
                _ => false,
            },
            Formula::Or(p, q) => collect(p, index_of, out) && collect(q, index_of, out),
            _ => false,
        }
    }

    let canonical = canonicalize(f);
    if canonical == Formula::Bottom {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    if collect(&canonical, index_of, &mut out) {
        Some(out)
    } else {
        None
    }
}

/// Reads weighted CNF produced by [`export_wcnf`] (or by other tools;
/// variables without a `c var` name become `v<i>`). Clauses weighing at
/// least the header's top weight are inviolable.
pub fn import_wcnf(text: &str) -> Result<PenaltyKb> {
    let mut header: Option<(usize, usize, BigInt)> = None;
    let mut names: Vec<Option<String>> = Vec::new();
    let mut pairs: Vec<(Formula, Penalty)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Format { line: line_no, msg };
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "c" => {
                if fields.len() == 4 && fields[1] == "var" {
                    let i: usize = fields[2]
                        .parse()
                        .map_err(|_| err(format!("bad variable index `{}`", fields[2])))?;
                    if i == 0 {
                        return Err(err("variable indices start at 1".to_string()));
                    }
                    if names.len() < i {
                        names.resize(i, None);
                    }
                    names[i - 1] = Some(fields[3].to_string());
                }
            }
            "p" => {
                if header.is_some() {
                    return Err(err("duplicate problem line".to_string()));
                }
                if fields.len() != 5 || fields[1] != "wcnf" {
                    return Err(err(format!("malformed problem line `{line}`")));
                }
                let vars: usize = fields[2]
                    .parse()
                    .map_err(|_| err(format!("bad variable count `{}`", fields[2])))?;
                let clauses: usize = fields[3]
                    .parse()
                    .map_err(|_| err(format!("bad clause count `{}`", fields[3])))?;
                let top: BigInt = fields[4]
                    .parse()
                    .map_err(|_| err(format!("bad top weight `{}`", fields[4])))?;
                header = Some((vars, clauses, top));
            }
            _ => {
                let Some((vars, _, top)) = &header else {
                    return Err(err("clause before problem line".to_string()));
                };
                let weight: BigInt = fields[0]
                    .parse()
                    .map_err(|_| err(format!("bad clause weight `{}`", fields[0])))?;
                if weight.is_negative() || weight.is_zero() {
                    return Err(err(format!("clause weight must be positive, got {weight}")));
                }
                if fields.last() != Some(&"0") {
                    return Err(err("clause line must end with 0".to_string()));
                }
                let mut literals = Vec::new();
                for lit_text in &fields[1..fields.len() - 1] {
                    let lit: i64 = lit_text
                        .parse()
                        .map_err(|_| err(format!("bad literal `{lit_text}`")))?;
                    let var = lit.unsigned_abs() as usize;
                    if lit == 0 || var > *vars {
                        return Err(err(format!("literal out of range `{lit}`")));
                    }
                    literals.push((var, lit > 0));
                }
                let formula = clause_formula(&literals, &names)?;
                let penalty = if weight >= *top {
                    Penalty::Infinite
                } else {
                    Penalty::finite(BigRational::from_integer(weight))?
                };
                pairs.push((formula, penalty));
            }
        }
    }

    let Some((_, declared_clauses, _)) = header else {
        return Err(Error::Format {
            line: 1,
            msg: "missing problem line".to_string(),
        });
    };
    if pairs.len() != declared_clauses {
        return Err(Error::Format {
            line: 1,
            msg: format!(
                "header declares {declared_clauses} clauses, found {}",
                pairs.len()
            ),
        });
    }
    Ok(PenaltyKb::new(pairs))
}

fn clause_formula(literals: &[(usize, bool)], names: &[Option<String>]) -> Result<Formula> {
    let mut parts = Vec::new();
    for &(var, positive) in literals {
        let name = names
            .get(var - 1)
            .and_then(|n| n.clone())
            .unwrap_or_else(|| format!("v{var}"));
        let atom = Formula::atom(&name)?;
        parts.push(if positive { atom } else { Formula::not(atom) });
    }
    Ok(parts
        .into_iter()
        .reduce(Formula::or)
        .unwrap_or(Formula::Bottom))
}
