//! Rational scalars and dense coordinate vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::Deserialize;

use super::LinalgError;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Scalar = BigRational;

/// Coordinates of a vector with respect to the standard basis.
pub type Vector = Vec<Scalar>;

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

/// `numerator / denominator`; panics on a zero denominator.
pub fn frac(numerator: i64, denominator: i64) -> Scalar {
    Scalar::new(BigInt::from(numerator), BigInt::from(denominator))
}

/// Parses `"p"` or `"p/q"` with optional leading minus sign on `p`.
pub fn parse_scalar(text: &str) -> Result<Scalar, LinalgError> {
    let bad = || LinalgError::BadScalar(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let valid_int = |s: &str, signed: bool| {
        let digits = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return Err(bad());
    }
    let numerator: BigInt = num.parse().map_err(|_| bad())?;
    let denominator: BigInt = match den {
        Some(d) if valid_int(d, false) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if denominator.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(numerator, denominator))
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_scalar(value: &Scalar) -> String {
    value.to_string()
}

pub fn zero_vector(dim: usize) -> Vector {
    vec![Scalar::zero(); dim]
}

pub fn unit_vector(dim: usize, index: usize) -> Vector {
    let mut v = zero_vector(dim);
    v[index] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += coeff * v`
pub fn add_scaled(acc: &mut [Scalar], coeff: &Scalar, v: &[Scalar]) {
    if coeff.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += coeff * x;
        }
    }
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn format_vector(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

pub fn parse_vector<S: AsRef<str>>(items: &[S]) -> Result<Vector, LinalgError> {
    items.iter().map(|s| parse_scalar(s.as_ref())).collect()
}

/// Serde adapter writing a vector as an array of scalar strings.
pub mod serde_vector {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Scalar], serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&format_scalar(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vector, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        parse_vector(&raw).map_err(de::Error::custom)
    }
}

/// Serde adapter for a list of vectors (a matrix given by rows).
pub mod serde_vectors {
    use super::*;

    pub fn serialize<S: Serializer>(rows: &[Vector], serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(rows.len()))?;
        for row in rows {
            seq.serialize_element(&format_vector(row))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<Vector>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(deserializer)?;
        raw.iter().map(|row| parse_vector(row)).collect::<Result<_, _>>().map_err(de::Error::custom)
    }
}
