//! Built-in bracket families.
//!
//! * `nosemi2(a, b, c)`: `q = 0, n = 6` on `(X1, Y1, Z1, X2, Y2, Z2)` with
//!   `[X1,Y1] = a Z1, [X1,X2] = b Y2, [X1,Y2] = -b X2, [X2,Y2] = c Z2`.
//! * `dpnop(a, b, c)`: `q = 1, n = 3` on `(Z, X1, X2, X3)` with
//!   `[Z,X1] = X2, [Z,X2] = -X1, [X1,X2] = a X3 + b Z, [X3,X1] = c X2, [X2,X3] = c X1`.
//! * `heisenberg`: `[X1, X2] = X3`.
//! * `abelian(n)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lie::{Decomposition, LieBracket};
use crate::scalar::Scalar;

pub fn nosemi2<T: Scalar>(a: T, b: T, c: T) -> LieBracket<T> {
    let dec = Decomposition::lie_group(6).expect("n = 6");
    // X1=0, Y1=1, Z1=2, X2=3, Y2=4, Z2=5
    LieBracket::from_terms(dec, &[(0, 1, 2, a), (0, 3, 4, b), (0, 4, 3, -b), (3, 4, 5, c)])
        .expect("indices in range")
}

/// `(a, b, c)` read back from a bracket of the `nosemi2` family.
pub fn nosemi2_params<T: Scalar>(mu: &LieBracket<T>) -> (T, T, T) {
    (mu.get(0, 1, 2), mu.get(0, 3, 4), mu.get(3, 4, 5))
}

pub fn dpnop<T: Scalar>(a: T, b: T, c: T) -> LieBracket<T> {
    let dec = Decomposition::new(1, 3).expect("q = 1, n = 3");
    // Z=0, X1=1, X2=2, X3=3
    let one = T::one();
    LieBracket::from_terms(
        dec,
        &[(0, 1, 2, one), (0, 2, 1, -one), (1, 2, 3, a), (1, 2, 0, b), (3, 1, 2, c), (2, 3, 1, c)],
    )
    .expect("indices in range")
}

/// `(a, b, c)` read back from a bracket of the `dpnop` family.
pub fn dpnop_params<T: Scalar>(mu: &LieBracket<T>) -> (T, T, T) {
    (mu.get(1, 2, 3), mu.get(1, 2, 0), mu.get(3, 1, 2))
}

pub fn heisenberg<T: Scalar>() -> LieBracket<T> {
    let dec = Decomposition::lie_group(3).expect("n = 3");
    LieBracket::from_terms(dec, &[(0, 1, 2, T::one())]).expect("indices in range")
}

/// `so(3)` with the cyclic bracket `[X1,X2] = X3, [X2,X3] = X1, [X3,X1] = X2`.
pub fn so3<T: Scalar>() -> LieBracket<T> {
    let dec = Decomposition::lie_group(3).expect("n = 3");
    let one = T::one();
    LieBracket::from_terms(dec, &[(0, 1, 2, one), (1, 2, 0, one), (2, 0, 1, one)]).expect("indices in range")
}

pub fn abelian<T: Scalar>(n: usize) -> Result<LieBracket<T>> {
    Ok(LieBracket::zero(Decomposition::lie_group(n)?))
}

/// Named scenario with its builder parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub params: Vec<f64>,
}

/// Names of the built-in scenarios, with parameter hints.
pub const BUILT_IN: &[(&str, &str)] = &[
    ("nosemi2", "a,b,c (default 1,1,1)"),
    ("dpnop", "a,b,c (default 1,-1,1)"),
    ("heisenberg", "no parameters"),
    ("abelian", "n (default 3)"),
];

impl Scenario {
    pub fn new(name: impl Into<String>, params: Vec<f64>) -> Self {
        Self { name: name.into(), params }
    }

    pub fn build<T: Scalar>(&self) -> Result<LieBracket<T>> {
        let p = &self.params;
        let three = |default: [f64; 3]| -> Result<[T; 3]> {
            match p.len() {
                0 => Ok(default.map(T::lit)),
                3 => Ok([T::lit(p[0]), T::lit(p[1]), T::lit(p[2])]),
                k => Err(Error::Format(format!("scenario '{}' takes 3 parameters, got {k}", self.name))),
            }
        };
        match self.name.as_str() {
            "nosemi2" => {
                let [a, b, c] = three([1.0, 1.0, 1.0])?;
                Ok(nosemi2(a, b, c))
            }
            "dpnop" => {
                let [a, b, c] = three([1.0, -1.0, 1.0])?;
                Ok(dpnop(a, b, c))
            }
            "heisenberg" if p.is_empty() => Ok(heisenberg()),
            "heisenberg" => Err(Error::Format("scenario 'heisenberg' takes no parameters".into())),
            "abelian" => match p.as_slice() {
                [] => abelian(3),
                [n] if *n >= 1.0 && n.fract() == 0.0 => abelian(*n as usize),
                _ => Err(Error::Format("scenario 'abelian' takes one positive integer".into())),
            },
            other => Err(Error::Format(format!("unknown scenario '{other}'"))),
        }
    }
}

impl FromStr for Scenario {
    type Err = Error;

    /// Parses `name` or `name:p1,p2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, Some(r)),
            None => (s, None),
        };
        if !BUILT_IN.iter().any(|(n, _)| *n == name) {
            return Err(Error::Format(format!("unknown scenario '{name}'")));
        }
        let params = match rest {
            None => Vec::new(),
            Some(r) => r
                .split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|e| Error::Format(format!("bad parameter '{x}': {e}"))))
                .collect::<Result<_>>()?,
        };
        Ok(Self::new(name, params))
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            write!(f, ":{}", ps.join(","))?;
        }
        Ok(())
    }
}
