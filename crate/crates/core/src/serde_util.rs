//! Serialization helpers: matrices are written row-major as nested arrays.

use nalgebra::{DMatrix, DVector};
use serde::ser::{SerializeSeq, Serializer};

use crate::scalar::Scalar;

pub fn matrix_rows<T: Scalar>(m: &DMatrix<T>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().map(|x| x.as_f64()).collect()).collect()
}

pub fn matrix<T: Scalar, S: Serializer>(m: &DMatrix<T>, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.nrows()))?;
    for row in matrix_rows(m) {
        seq.serialize_element(&row)?;
    }
    seq.end()
}

pub fn linear_map<T: Scalar, S: Serializer>(m: &crate::lie::LinearMap<T>, s: S) -> Result<S::Ok, S::Error> {
    matrix(m.matrix(), s)
}

pub fn vector<T: Scalar, S: Serializer>(v: &DVector<T>, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v.iter() {
        seq.serialize_element(&x.as_f64())?;
    }
    seq.end()
}

pub fn scalar<T: Scalar, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(x.as_f64())
}

pub fn opt_scalar<T: Scalar, S: Serializer>(x: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_f64(x.as_f64()),
        None => s.serialize_none(),
    }
}
