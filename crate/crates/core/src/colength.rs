//! The multiplicity of a polynomial matrix as the colength of the ideal of
//! its maximal minors in the local ring at the origin.
//!
//! `dim 𝒪/(I + 𝔪^N)` is computed by linear algebra on truncations of degree
//! below `N`. Once two consecutive values agree, `𝔪^N ⊆ I + 𝔪^{N+1}`, hence
//! `𝔪^N ⊆ I` by Nakayama, and the value is the colength of `I` itself.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use crate::combin::{combinations, compositions};
use crate::error::{Error, Result};
use crate::poly::{PolyMatrix, Polynomial};
use crate::scalar::Scalar;

/// Default bound on the truncation degree.
pub const DEFAULT_DEGREE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Colength {
    /// `value = dim 𝒪/I`, first certified at truncation degree `degree`.
    Finite { value: BigInt, degree: usize },
    /// No stabilization below the cap; the colength may be infinite.
    Unbounded { degree_cap: usize },
}

impl Colength {
    pub fn value(&self) -> Option<&BigInt> {
        match self {
            Colength::Finite { value, .. } => Some(value),
            Colength::Unbounded { .. } => None,
        }
    }
}

/// Determinant of a square polynomial matrix by cofactor expansion along the
/// first row.
fn determinant(rows: &[Vec<&Polynomial>], m: usize) -> Polynomial {
    let n = rows.len();
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut total = Polynomial::zero(m);
    for j in 0..n {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<&Polynomial>> =
            rows[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| *p).collect()).collect();
        let term = rows[0][j].mul(&determinant(&minor, m));
        total = if j % 2 == 0 { total.add(&term) } else { total.sub(&term) };
    }
    total
}

/// All `n × n` minors, column subsets in lexicographic order.
pub fn maximal_minors(a: &PolyMatrix) -> Vec<Polynomial> {
    let n = a.rows();
    combinations(a.cols(), n)
        .into_iter()
        .map(|cols| {
            let sub: Vec<Vec<&Polynomial>> = (0..n).map(|i| cols.iter().map(|&j| a.entry(i, j)).collect()).collect();
            determinant(&sub, a.num_vars())
        })
        .collect()
}

/// Sparse row echelon form; each stored row has a leading one.
#[derive(Default)]
struct SparseEchelon {
    pivots: BTreeMap<usize, BTreeMap<usize, Scalar>>,
}

impl SparseEchelon {
    fn insert(&mut self, mut row: BTreeMap<usize, Scalar>) {
        while let Some((&c, lead)) = row.iter().next() {
            match self.pivots.get(&c) {
                Some(p) => {
                    let f = lead.clone();
                    for (&col, v) in p {
                        let e = row.entry(col).or_insert_with(Scalar::zero);
                        *e -= &(&f * v);
                        if e.is_zero() {
                            row.remove(&col);
                        }
                    }
                }
                None => {
                    let inv = lead.inv().expect("non-zero lead");
                    for v in row.values_mut() {
                        *v = &*v * &inv;
                    }
                    self.pivots.insert(c, row);
                    return;
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Monomials of total degree `< n` in `m` variables, by degree.
fn monomials_below(m: usize, n: usize) -> Vec<Vec<i64>> {
    (0..n).flat_map(|d| compositions(d, m)).map(|e| e.into_iter().map(|x| x as i64).collect()).collect()
}

/// `dim 𝒪/(I + 𝔪^n)`.
pub fn truncated_colength(gens: &[Polynomial], m: usize, n: usize) -> usize {
    let monos = monomials_below(m, n);
    let index: HashMap<&[i64], usize> = monos.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let mut ech = SparseEchelon::default();
    for f in gens {
        let Some(ord) = f.order() else { continue };
        for a in &monos {
            if ech.rank() == monos.len() {
                return 0;
            }
            let shift: i64 = a.iter().sum();
            if (shift + ord) as usize >= n {
                continue;
            }
            let row: BTreeMap<usize, Scalar> = f
                .terms()
                .iter()
                .filter_map(|(e, c)| {
                    let prod: Vec<i64> = e.iter().zip(a).map(|(x, y)| x + y).collect();
                    index.get(prod.as_slice()).map(|&i| (i, c.clone()))
                })
                .collect();
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    monos.len() - ech.rank()
}

/// `dim 𝒪_{ℂ^m,0}/⟨generators⟩`, or `Unbounded` if the truncated values do
/// not stabilize before `degree_cap`.
pub fn colength(generators: &[Polynomial], m: usize, degree_cap: usize) -> Result<Colength> {
    if generators.is_empty() {
        return Err(Error::pre("no generators"));
    }
    if let Some(g) = generators.iter().find(|g| g.num_vars() != m) {
        return Err(Error::dim(m, g.num_vars()));
    }
    let mut prev = truncated_colength(generators, m, 1);
    for n in 1..degree_cap {
        let next = truncated_colength(generators, m, n + 1);
        assert!(next >= prev, "truncated colength decreased from {prev} to {next}");
        if next == prev {
            return Ok(Colength::Finite { value: BigInt::from(prev), degree: n });
        }
        prev = next;
    }
    Ok(Colength::Unbounded { degree_cap })
}

/// The multiplicity of degeneration: the colength of the maximal minors.
pub fn multiplicity_oracle(a: &PolyMatrix, degree_cap: usize) -> Result<Colength> {
    colength(&maximal_minors(a), a.num_vars(), degree_cap)
}
