use std::fmt::Write;

use crate::error::{Error, Result};
use crate::kb::base::PenaltyKb;
use crate::kb::penalty::Penalty;
use crate::logic::parse_formula;

/// Parses the one-item-per-line knowledge base format:
///
/// ```text
/// # PK1
/// inf a
/// 10 b | c
/// 5 !b
/// 7 !c
/// ```
///
/// Each line is a penalty (`inf`, a decimal, or a ratio) followed by a
/// formula. `#` starts a comment; blank lines are skipped. Repeated lines
/// are distinct multiset occurrences.
pub fn parse_pkb(text: &str) -> Result<PenaltyKb> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (penalty_text, formula_text) = match line.split_once(char::is_whitespace) {
            Some(pair) => pair,
            None => {
                return Err(Error::Format {
                    line: line_no,
                    msg: format!("expected `<penalty> <formula>`, got `{line}`"),
                })
            }
        };
        let penalty = Penalty::parse(penalty_text).map_err(|e| Error::Format {
            line: line_no,
            msg: e.to_string(),
        })?;
        let formula = parse_formula(formula_text).map_err(|e| Error::Format {
            line: line_no,
            msg: e.to_string(),
        })?;
        pairs.push((formula, penalty));
    }
    Ok(PenaltyKb::new(pairs))
}

/// Renders a base in the format accepted by [`parse_pkb`].
pub fn write_pkb(kb: &PenaltyKb) -> String {
    let mut out = String::new();
    for item in kb.items() {
        writeln!(out, "{} {}", item.penalty(), item.formula()).expect("string write");
    }
    out
}
