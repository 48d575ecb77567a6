//! Reading ideals from text.
//!
//! An ideal is a list of monomials separated by commas or newlines. Blank
//! entries (such as a trailing newline) are skipped.

use crate::error::{Error, Result};
use crate::monomial::{parse_monomial, Monomial, MonomialIdeal};

/// A parsed ideal and the generators dropped because another generator
/// divides them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedIdeal {
    pub ideal: MonomialIdeal,
    pub redundant: Vec<Monomial>,
}

impl ParsedIdeal {
    pub fn warnings(&self) -> Vec<String> {
        self.redundant
            .iter()
            .map(|m| format!("non-minimal generator {m} dropped"))
            .collect()
    }
}

/// Parses an ideal in `num_vars` variables. Duplicates collapse silently;
/// non-minimal generators are dropped and reported.
pub fn parse_ideal(text: &str, num_vars: usize) -> Result<ParsedIdeal> {
    let mut gens = text
        .split([',', '\n'])
        .map(str::trim)
        .filter(|entry| !entry.is_empty())
        .map(|entry| parse_monomial(entry, num_vars))
        .collect::<Result<Vec<Monomial>>>()?;
    if gens.is_empty() {
        return Err(Error::Parse {
            input: text.to_string(),
            reason: "no generators".into(),
        });
    }
    gens.sort();
    gens.dedup();
    let ideal = MonomialIdeal::new(num_vars, gens.iter().cloned())?;
    let redundant = gens
        .into_iter()
        .filter(|m| ideal.index_of(m).is_none())
        .collect();
    Ok(ParsedIdeal { ideal, redundant })
}
