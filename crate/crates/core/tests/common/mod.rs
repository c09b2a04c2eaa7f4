//! Oracles for integration tests.
//!
//! Nothing here calls the library's linear algebra: ranks come from a plain
//! Gaussian elimination and products from direct expansion of structure
//! constants.

#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use splitlts::{LeibnizAlgebra, TripleSystem};

pub type Q = BigRational;

pub fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// Rank by row reduction on a private copy.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for k in c..cols {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn in_span(rows: &[Vec<Q>], v: &[Q]) -> bool {
    let mut extended = rows.to_vec();
    extended.push(v.to_vec());
    rank(&extended) == rank(rows)
}

/// Same span, tested by ranks.
pub fn same_span(a: &[Vec<Q>], b: &[Vec<Q>]) -> bool {
    let both: Vec<Vec<Q>> = a.iter().chain(b).cloned().collect();
    let r = rank(&both);
    r == rank(a) && r == rank(b)
}

/// Dense structure constants `c[i][j][k]` of a trilinear product.
#[derive(Clone)]
pub struct Tensor {
    pub n: usize,
    pub c: Vec<Vec<Q>>,
}

impl Tensor {
    pub fn of(t: &TripleSystem) -> Self {
        let n = t.dim();
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c.push(t.entry(i, j, k).clone());
                }
            }
        }
        Self { n, c }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &[Q] {
        &self.c[(i * self.n + j) * self.n + k]
    }

    pub fn product(&self, x: &[Q], y: &[Q], z: &[Q]) -> Vec<Q> {
        let n = self.n;
        let mut out = vec![Q::zero(); n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                let xy = &x[i] * &y[j];
                for k in (0..n).filter(|&k| !z[k].is_zero()) {
                    let coeff = &xy * &z[k];
                    for (o, v) in out.iter_mut().zip(self.get(i, j, k)) {
                        *o += &coeff * v;
                    }
                }
            }
        }
        out
    }

    /// Both defining identities expanded on every basis 5-tuple.
    pub fn defining_identities_hold(&self) -> bool {
        let n = self.n;
        let e = |i| unit(n, i);
        let p = |a: &[Q], b: &[Q], c: &[Q]| self.product(a, b, c);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for f in 0..n {
                            let (ea, eb, ec, ed, ef) = (e(a), e(b), e(c), e(d), e(f));
                            let lhs1 = p(&ea, &p(&eb, &ec, &ed), &ef);
                            let rhs1 = combine(&[
                                (1, p(&p(&ea, &eb, &ec), &ed, &ef)),
                                (-1, p(&p(&ea, &ec, &eb), &ed, &ef)),
                                (-1, p(&p(&ea, &ed, &eb), &ec, &ef)),
                                (1, p(&p(&ea, &ed, &ec), &eb, &ef)),
                            ]);
                            if lhs1 != rhs1 {
                                return false;
                            }
                            let lhs2 = p(&ea, &eb, &p(&ec, &ed, &ef));
                            let rhs2 = combine(&[
                                (1, p(&p(&ea, &eb, &ec), &ed, &ef)),
                                (-1, p(&p(&ea, &eb, &ed), &ec, &ef)),
                                (-1, p(&p(&ea, &eb, &ef), &ec, &ed)),
                                (1, p(&p(&ea, &eb, &ef), &ed, &ec)),
                            ]);
                            if lhs2 != rhs2 {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Span of `{e_a, e_b, e_c}` over all basis triples.
    pub fn derived_rank(&self) -> usize {
        rank(&self.c)
    }

    /// Images of `rows` under every multiplication by basis vectors in the other two slots.
    fn multiples(&self, rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let n = self.n;
        let mut out = Vec::new();
        for s in rows {
            for a in 0..n {
                for b in 0..n {
                    let (ea, eb) = (unit(n, a), unit(n, b));
                    out.push(self.product(s, &ea, &eb));
                    out.push(self.product(&ea, s, &eb));
                    out.push(self.product(&ea, &eb, s));
                }
            }
        }
        out
    }

    /// Smallest ideal containing `seed`, as a spanning list.
    pub fn ideal_closure(&self, seed: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let mut span: Vec<Vec<Q>> = seed.to_vec();
        loop {
            let before = rank(&span);
            let mut grown = span.clone();
            grown.extend(self.multiples(&span));
            if rank(&grown) == before {
                return span;
            }
            span = independent_subset(&grown);
        }
    }

    pub fn is_ideal(&self, rows: &[Vec<Q>]) -> bool {
        self.multiples(rows).iter().all(|v| in_span(rows, v))
    }

    /// Rank of the ideal generated by `{a,b,c} - {a,c,b} + {b,c,a}`.
    pub fn j_rank(&self) -> usize {
        let n = self.n;
        let mut gens = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    gens.push(combine(&[
                        (1, self.get(a, b, c).to_vec()),
                        (-1, self.get(a, c, b).to_vec()),
                        (1, self.get(b, c, a).to_vec()),
                    ]));
                }
            }
        }
        rank(&self.ideal_closure(&gens))
    }

    /// `t -> {t,x,y} - {t,y,x}`, the action of the class of `x ⊗ y` on `T`.
    pub fn pair_action(&self, x: &[Q], y: &[Q], t: &[Q]) -> Vec<Q> {
        combine(&[(1, self.product(t, x, y)), (-1, self.product(t, y, x))])
    }
}

pub fn combine(terms: &[(i64, Vec<Q>)]) -> Vec<Q> {
    let n = terms[0].1.len();
    let mut out = vec![Q::zero(); n];
    for (c, v) in terms {
        let c = q(*c);
        for (o, x) in out.iter_mut().zip(v) {
            *o += &c * x;
        }
    }
    out
}

pub fn independent_subset(rows: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = Vec::new();
    for r in rows {
        if !in_span(&out, r) {
            out.push(r.clone());
        }
    }
    out
}

/// `{x,y,z} = [[x,y],z]` expanded directly from brackets.
pub fn derived_tensor(l: &LeibnizAlgebra) -> Tensor {
    let n = l.dim();
    let bracket = |x: &[Q], j: usize| -> Vec<Q> {
        let mut out = vec![Q::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (o, v) in out.iter_mut().zip(l.entry(i, j)) {
                *o += xi * v;
            }
        }
        out
    };
    let mut c = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ij = l.entry(i, j).clone();
            for k in 0..n {
                c.push(bracket(&ij, k));
            }
        }
    }
    Tensor { n, c }
}

/// `[[y,z],x] = [[y,x],z] + [y,[z,x]]` on all basis triples.
pub fn right_leibniz_holds(l: &LeibnizAlgebra) -> bool {
    let n = l.dim();
    let br = |x: &[Q], y: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                let c = &x[i] * &y[j];
                for (o, v) in out.iter_mut().zip(l.entry(i, j)) {
                    *o += &c * v;
                }
            }
        }
        out
    };
    for y in 0..n {
        for z in 0..n {
            for x in 0..n {
                let (ex, ey, ez) = (unit(n, x), unit(n, y), unit(n, z));
                let lhs = br(&br(&ey, &ez), &ex);
                let rhs = combine(&[(1, br(&br(&ey, &ex), &ez)), (1, br(&ey, &br(&ez, &ex)))]);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// Weights of the basis vectors under the actions of `masa_pairs`, each pair
/// `(x, y)` standing for the class of `e_x ⊗ e_y`. Returns `None` when some
/// basis vector is not a common eigenvector.
pub fn basis_weights(t: &Tensor, masa_pairs: &[(usize, usize)]) -> Option<Vec<Vec<Q>>> {
    let n = t.n;
    let mut weights = Vec::with_capacity(n);
    for b in 0..n {
        let eb = unit(n, b);
        let mut w = Vec::new();
        for &(x, y) in masa_pairs {
            let image = t.pair_action(&unit(n, x), &unit(n, y), &eb);
            let value = image[b].clone();
            if image.iter().enumerate().any(|(i, c)| i != b && !c.is_zero()) {
                return None;
            }
            w.push(value);
        }
        weights.push(w);
    }
    Some(weights)
}

/// Path of a golden file under `tests/golden`.
fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(format!("{name}.json"))
}

/// Compares `value` to the committed golden file, or rewrites it when `UPDATE_GOLDEN` is set.
pub fn check_golden(name: &str, value: &serde_json::Value) {
    let path = golden_path(name);
    let rendered = serde_json::to_string_pretty(value).unwrap() + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &rendered).unwrap();
        return;
    }
    let stored = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}; rerun with UPDATE_GOLDEN=1", path.display()));
    assert_eq!(stored, rendered, "golden file {} differs", path.display());
}

/// Basis pairs spanning the shipped MASA of each corpus case, mirrored from the corpus definitions.
pub fn masa_pairs(case: &str) -> &'static [(usize, usize)] {
    match case {
        "c3-sl2" | "c6-hs-natural" => &[(0, 2)],
        "c4-sl2-sum" => &[(0, 2), (3, 5)],
        "c5-hs-adjoint" => &[(0, 2), (3, 2)],
        _ => &[],
    }
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().enumerate().map(|(i, r)| [r.clone(), unit(n, i)].concat()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &pivot;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..2 * n {
                    let delta = &f * &a[c][k];
                    a[i][k] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Unit lower times unit upper triangular matrix built from `entries`; always invertible.
pub fn unimodular(n: usize, entries: &[i64]) -> Vec<Vec<Q>> {
    let mut it = entries.iter().cycle();
    let mut lower = vec![vec![Q::zero(); n]; n];
    let mut upper = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        lower[i][i] = Q::one();
        upper[i][i] = Q::one();
        for j in 0..i {
            lower[i][j] = q(*it.next().unwrap());
            upper[j][i] = q(*it.next().unwrap());
        }
    }
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &lower[i][k] * &upper[k][j]).sum()).collect()).collect()
}

/// Structure constants of `t` in the basis given by the columns of `p`.
pub fn change_basis(t: &TripleSystem, p: &[Vec<Q>]) -> TripleSystem {
    let tensor = Tensor::of(t);
    let n = tensor.n;
    let p_inv = inverse(p).expect("invertible change of basis");
    let column = |i: usize| -> Vec<Q> { (0..n).map(|r| p[r][i].clone()).collect() };
    TripleSystem::from_fn(n, |i, j, k| mat_vec(&p_inv, &tensor.product(&column(i), &column(j), &column(k)))).unwrap()
}
