//! Sparse polynomials with Gaussian-rational coefficients and matrices of
//! them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::polyhedron::{LatticePolyhedron, LatticeVector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    m: usize,
    terms: BTreeMap<LatticeVector, Scalar>,
}

impl Polynomial {
    pub fn zero(m: usize) -> Self {
        Self { m, terms: BTreeMap::new() }
    }

    pub fn constant(m: usize, c: Scalar) -> Self {
        Self::monomial(vec![0; m], c)
    }

    pub fn monomial(exp: LatticeVector, c: Scalar) -> Self {
        let mut p = Self::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The coordinate function `x_i` (0-based).
    pub fn var(m: usize, i: usize) -> Self {
        let mut e = vec![0; m];
        e[i] = 1;
        Self::monomial(e, Scalar::one())
    }

    /// Builds a polynomial from `(exponent, coefficient)` terms; repeated
    /// exponents are added.
    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (LatticeVector, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(m);
        for (e, c) in terms {
            if e.len() != m {
                return Err(Error::dim(m, e.len()));
            }
            if e.iter().any(|&a| a < 0) {
                return Err(Error::pre("negative exponent"));
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: LatticeVector, c: &Scalar) {
        let entry = self.terms.entry(e).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<LatticeVector, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[i64]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree of a term.
    pub fn order(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.order()
    }

    pub fn support(&self) -> Vec<LatticeVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c);
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        Self { m: self.m, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero(self.m);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e: LatticeVector = a.iter().zip(b).map(|(u, v)| u + v).collect();
                p.add_term(e, &(x * y));
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.m, Scalar::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Terms whose exponent satisfies the predicate.
    pub fn filter(&self, keep: impl Fn(&[i64]) -> bool) -> Self {
        Self {
            m: self.m,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: i64) -> Self {
        self.filter(|e| e.iter().sum::<i64>() == d)
    }

    pub fn eval(&self, x: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.m {
            return Err(Error::dim(self.m, x.len()));
        }
        let mut total = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &a) in x.iter().zip(e) {
                t = &t * &xi.pow(a as u32);
            }
            total += &t;
        }
        Ok(total)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a > 0)
                    .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, a) })
                    .collect();
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => format!("({c})"),
                    (false, true) => mono.join("*"),
                    (false, false) => format!("({c})*{}", mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An `n × k` matrix of polynomials in `m = k − n + 1` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    k: usize,
    entries: Vec<Vec<Polynomial>>,
}

impl PolyMatrix {
    pub fn new(entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = entries.len();
        let k = entries.first().map_or(0, |r| r.len());
        if n == 0 || k < n {
            return Err(Error::Shape(format!("need 1 <= n <= k, got n={n}, k={k}")));
        }
        if entries.iter().any(|r| r.len() != k) {
            return Err(Error::Shape("ragged matrix".into()));
        }
        let m = k - n + 1;
        for p in entries.iter().flatten() {
            if p.num_vars() != m {
                return Err(Error::Shape(format!(
                    "entry in {} variables, expected m = k - n + 1 = {m}",
                    p.num_vars()
                )));
            }
        }
        Ok(Self { n, k, entries })
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.k
    }

    pub fn num_vars(&self) -> usize {
        self.k - self.n + 1
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    /// Grid of Newton polyhedra of the entries.
    pub fn newton_grid(&self) -> Vec<Vec<LatticePolyhedron>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(crate::newton::newton_polyhedron).collect())
            .collect()
    }

    pub fn eval(&self, x: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
        self.entries.iter().map(|r| r.iter().map(|p| p.eval(x)).collect()).collect()
    }

    /// `C · A` for a constant `n × n` matrix `C`.
    pub fn left_multiply(&self, c: &[Vec<Scalar>]) -> Result<Self> {
        if c.len() != self.n || c.iter().any(|r| r.len() != self.n) {
            return Err(Error::Shape("left factor must be n × n".into()));
        }
        let m = self.num_vars();
        let entries = (0..self.n)
            .map(|i| {
                (0..self.k)
                    .map(|j| {
                        (0..self.n).fold(Polynomial::zero(m), |acc, t| acc.add(&self.entries[t][j].scale(&c[i][t])))
                    })
                    .collect()
            })
            .collect();
        Self::new(entries)
    }

    /// The matrix with rows and columns permuted: entry `(i, j)` of the
    /// result is entry `(rows[i], cols[j])` of `self`.
    pub fn permute(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows.iter().map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect()).collect();
        Self { n: self.n, k: self.k, entries }
    }
}
