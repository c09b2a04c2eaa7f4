//! Exact rational eigenvalues and simultaneous eigenspace decompositions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::scalar::Scalar;
use super::subspace::Subspace;
use super::LinalgError;

/// One block of a simultaneous eigenspace decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenBlock {
    /// Eigenvalue of each input map on this block, in input order.
    pub eigenvalues: Vec<Scalar>,
    pub space: Subspace,
}

/// Rational eigenvalues of `m` with algebraic multiplicities, ascending.
///
/// Fails when the characteristic polynomial does not split over the rationals.
pub fn rational_eigenvalues(m: &Matrix) -> Result<Vec<(Scalar, usize)>, LinalgError> {
    let (roots, leftover) = rational_roots(m)?;
    if leftover > 0 {
        return Err(LinalgError::IrrationalOrDefective {
            map: 0,
            reason: format!("characteristic polynomial has {leftover} non-rational root(s)"),
        });
    }
    Ok(roots)
}

/// Rational roots of the characteristic polynomial with multiplicities, plus
/// the degree of the factor left over after removing them.
pub fn rational_roots(m: &Matrix) -> Result<(Vec<(Scalar, usize)>, usize), LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok((Vec::new(), 0));
    }
    // Scale to an integer matrix: its characteristic polynomial is monic with
    // integer coefficients, so every rational eigenvalue is an integer bounded
    // by the maximal absolute row sum.
    let mut denom = BigInt::one();
    for i in 0..n {
        for j in 0..n {
            denom = denom.lcm(m.get(i, j).denom());
        }
    }
    let scale = Scalar::from_integer(denom.clone());
    let mut scaled = m.clone();
    let mut bound = BigInt::zero();
    for i in 0..n {
        let mut row_sum = BigInt::zero();
        for j in 0..n {
            let x = m.get(i, j) * &scale;
            row_sum += x.numer().abs();
            scaled.set(i, j, x);
        }
        bound = bound.max(row_sum);
    }
    let mut poly: Vec<BigInt> = scaled
        .char_poly()?
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect();

    let mut roots: Vec<(BigInt, usize)> = Vec::new();
    let mut take_root = |poly: &mut Vec<BigInt>, r: &BigInt| {
        let mut mult = 0;
        while poly.len() > 1 && eval(poly, r).is_zero() {
            *poly = deflate(poly, r);
            mult += 1;
        }
        if mult > 0 {
            roots.push((r.clone(), mult));
        }
    };
    take_root(&mut poly, &BigInt::zero());
    let mut candidate = BigInt::one();
    while poly.len() > 1 && candidate <= bound && candidate <= poly[0].abs() {
        // integer roots divide the constant term, which is nonzero after removing zero roots
        if (&poly[0] % &candidate).is_zero() {
            take_root(&mut poly, &candidate);
            take_root(&mut poly, &-candidate.clone());
        }
        candidate += 1;
    }
    let mut out: Vec<(Scalar, usize)> = roots.into_iter().map(|(r, k)| (Scalar::new(r, denom.clone()), k)).collect();
    out.sort();
    Ok((out, poly.len() - 1))
}

fn eval(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Divides `poly` by `(t - root)`; the remainder must be zero.
fn deflate(poly: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let deg = poly.len() - 1;
    let mut out = vec![BigInt::zero(); deg];
    let mut carry = BigInt::zero();
    for i in (0..deg).rev() {
        carry = &poly[i + 1] + carry * root;
        out[i] = carry.clone();
    }
    out
}

/// Eigenspace decomposition of a single diagonalizable map with rational spectrum.
pub fn eigenspaces(m: &Matrix) -> Result<Vec<(Scalar, Subspace)>, LinalgError> {
    let values = rational_eigenvalues(m)?;
    let mut spaces = Vec::with_capacity(values.len());
    let mut total = 0;
    for (lambda, mult) in values {
        let space = m.shifted(&lambda).kernel();
        if space.rank() != mult {
            return Err(LinalgError::IrrationalOrDefective {
                map: 0,
                reason: format!(
                    "eigenvalue {lambda} has algebraic multiplicity {mult} but geometric multiplicity {}",
                    space.rank()
                ),
            });
        }
        total += mult;
        spaces.push((lambda, space));
    }
    debug_assert_eq!(total, m.rows());
    Ok(spaces)
}

/// Simultaneous eigenspace decomposition of pairwise commuting maps.
///
/// Blocks come back sorted by eigenvalue tuple. With no maps the whole space is
/// a single block with the empty tuple.
pub fn common_eigenspaces(dim: usize, ops: &[Matrix]) -> Result<Vec<EigenBlock>, LinalgError> {
    for op in ops {
        if !op.is_square() {
            return Err(LinalgError::NotSquare { rows: op.rows(), cols: op.cols() });
        }
        if op.rows() != dim {
            return Err(LinalgError::DimensionMismatch { expected: dim, found: op.rows() });
        }
    }
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if !ops[i].commutes_with(&ops[j])? {
                return Err(LinalgError::NotCommuting { first: i, second: j });
            }
        }
    }
    let mut blocks = vec![EigenBlock { eigenvalues: Vec::new(), space: Subspace::full(dim) }];
    for (index, op) in ops.iter().enumerate() {
        let spaces = eigenspaces(op).map_err(|e| match e {
            LinalgError::IrrationalOrDefective { reason, .. } => {
                LinalgError::IrrationalOrDefective { map: index, reason }
            }
            other => other,
        })?;
        let mut refined = Vec::new();
        for block in &blocks {
            for (lambda, space) in &spaces {
                let piece = block.space.intersect_unchecked(space);
                if !piece.is_zero() {
                    let mut eigenvalues = block.eigenvalues.clone();
                    eigenvalues.push(lambda.clone());
                    refined.push(EigenBlock { eigenvalues, space: piece });
                }
            }
        }
        blocks = refined;
    }
    blocks.sort_by(|a, b| a.eigenvalues.cmp(&b.eigenvalues));
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::scalar::{frac, int, Vector};

    fn diag(xs: &[i64]) -> Matrix {
        let mut m = Matrix::zeros(xs.len(), xs.len());
        for (i, &x) in xs.iter().enumerate() {
            m.set(i, i, int(x));
        }
        m
    }

    fn from(rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Matrix::from_rows(rows[0].len(), &rows).unwrap()
    }

    #[test]
    fn identity_is_one_block() {
        let blocks = common_eigenspaces(3, &[Matrix::identity(3)]).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].eigenvalues, vec![int(1)]);
        assert_eq!(blocks[0].space.rank(), 3);
    }

    #[test]
    fn diagonal_map_splits_into_lines() {
        let blocks = common_eigenspaces(3, &[diag(&[2, -2, 0])]).unwrap();
        let tuples: Vec<_> = blocks.iter().map(|b| b.eigenvalues.clone()).collect();
        assert_eq!(tuples, vec![vec![int(-2)], vec![int(0)], vec![int(2)]]);
    }

    #[test]
    fn two_commuting_maps() {
        let blocks = common_eigenspaces(3, &[diag(&[1, 1, 0]), diag(&[0, 1, 1])]).unwrap();
        let tuples: Vec<_> = blocks.iter().map(|b| b.eigenvalues.clone()).collect();
        assert_eq!(tuples, vec![vec![int(0), int(1)], vec![int(1), int(0)], vec![int(1), int(1)]]);
    }

    #[test]
    fn failure_modes() {
        let rotation = from(&[&[0, -1], &[1, 0]]);
        assert!(matches!(common_eigenspaces(2, &[rotation]), Err(LinalgError::IrrationalOrDefective { map: 0, .. })));
        let jordan = from(&[&[1, 1], &[0, 1]]);
        assert!(matches!(
            common_eigenspaces(2, &[diag(&[1, 1]), jordan]),
            Err(LinalgError::IrrationalOrDefective { map: 1, .. })
        ));
        let a = from(&[&[1, 1], &[0, 2]]);
        assert!(matches!(
            common_eigenspaces(2, &[a, diag(&[1, 2])]),
            Err(LinalgError::NotCommuting { first: 0, second: 1 })
        ));
        // x^2 - 2
        assert!(rational_eigenvalues(&from(&[&[0, 2], &[1, 0]])).is_err());
        // (x - 1)(x^2 - 2): one rational root, a quadratic left over
        let mixed = from(&[&[1, 0, 0], &[0, 0, 2], &[0, 1, 0]]);
        assert_eq!(rational_roots(&mixed).unwrap(), (vec![(int(1), 1)], 2));
    }

    #[test]
    fn fractional_eigenvalues() {
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 0, frac(1, 2));
        m.set(1, 1, frac(-3, 4));
        assert_eq!(rational_eigenvalues(&m).unwrap(), vec![(frac(-3, 4), 1), (frac(1, 2), 1)]);
    }
}
