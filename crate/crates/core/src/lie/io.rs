//! JSON bracket files: `{ "q": .., "n": .., "terms": [{"i","j","k","c"}] }`.
//!
//! Only `i < j` terms are written, sorted lexicographically by `(i, j, k)`;
//! floats use the shortest decimal that round-trips.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Decomposition, LieBracket};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketTerm {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketFile {
    pub q: usize,
    pub n: usize,
    pub terms: Vec<BracketTerm>,
}

impl BracketFile {
    pub fn from_bracket<T: Scalar>(mu: &LieBracket<T>) -> Self {
        let dec = mu.decomposition();
        let d = dec.dim();
        let mut terms = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    let c = mu.get(i, j, k);
                    if c != T::zero() {
                        terms.push(BracketTerm { i, j, k, c: c.as_f64() });
                    }
                }
            }
        }
        Self { q: dec.q(), n: dec.n(), terms }
    }

    pub fn to_bracket<T: Scalar>(&self) -> Result<LieBracket<T>> {
        let dec = Decomposition::new(self.q, self.n)?;
        if let Some(t) = self.terms.iter().find(|t| !t.c.is_finite()) {
            return Err(Error::Format(format!("non-finite coefficient at ({}, {}, {})", t.i, t.j, t.k)));
        }
        let terms: Vec<_> = self.terms.iter().map(|t| (t.i, t.j, t.k, T::lit(t.c))).collect();
        LieBracket::from_terms(dec, &terms)
    }
}

pub fn to_json_string<T: Scalar>(mu: &LieBracket<T>) -> String {
    serde_json::to_string_pretty(&BracketFile::from_bracket(mu)).expect("bracket file serializes")
}

pub fn from_json_str<T: Scalar>(s: &str) -> Result<LieBracket<T>> {
    let file: BracketFile = serde_json::from_str(s)?;
    file.to_bracket()
}

pub fn read_bracket<T: Scalar>(path: impl AsRef<Path>) -> Result<LieBracket<T>> {
    from_json_str(&std::fs::read_to_string(path)?)
}

pub fn write_bracket<T: Scalar>(mu: &LieBracket<T>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, to_json_string(mu) + "\n")?;
    Ok(())
}
