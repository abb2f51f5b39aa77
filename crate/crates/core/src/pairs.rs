//! Bounded pairs of parallel polyhedra, their signed volumes and lattice
//! counts, and the mixed volume of pairs.
//!
//! A pair `(Γ, Δ)` is ordered: its volume is `Vol(Γ∖Δ) − Vol(Δ∖Γ)` and its
//! lattice count `#(Γ∖Δ) − #(Δ∖Γ)`. Two routes to the mixed volume are
//! provided, one through lattice counts of subset sums and one through
//! classical mixed volumes of truncations, so they can check each other.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geom;
use crate::hull::Hull;
use crate::polyhedron::LatticePolyhedron;
use crate::rational::factorial;

type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundedPair {
    gamma: LatticePolyhedron,
    delta: LatticePolyhedron,
}

impl BoundedPair {
    /// Validates that the components are parallel and that their symmetric
    /// difference is bounded.
    pub fn new(gamma: LatticePolyhedron, delta: LatticePolyhedron) -> Result<Self> {
        if gamma.dim() != delta.dim() {
            return Err(Error::dim(gamma.dim(), delta.dim()));
        }
        if gamma.recession_axes() != delta.recession_axes() {
            return Err(Error::RecessionMismatch(
                gamma.recession_axes().to_vec(),
                delta.recession_axes().to_vec(),
            ));
        }
        if gamma.is_empty() != delta.is_empty() {
            return Err(Error::Unbounded("pair of an empty and a non-empty polyhedron".into()));
        }
        // Γ∖Δ is bounded iff every recession ray from a generator of Γ
        // eventually enters Δ, and symmetrically.
        for (a, b) in [(&gamma, &delta), (&delta, &gamma)] {
            let (bg, bm) = (b.rat_generators(), b.mask());
            for g in a.rat_generators() {
                for &s in a.recession_axes() {
                    if !geom::ray_enters(&bg, &bm, &g, s) {
                        return Err(Error::Unbounded(format!(
                            "symmetric difference is unbounded along axis {}",
                            s + 1
                        )));
                    }
                }
            }
        }
        Ok(Self { gamma, delta })
    }

    /// `(R^m_+, Δ)`: the pair whose volume is the covolume of `Δ`.
    pub fn covolume(delta: LatticePolyhedron) -> Result<Self> {
        let unit = LatticePolyhedron::orthant(delta.dim());
        Self::new(unit, delta)
    }

    /// `(∅, ∅)`, absorbing for the sum and neutral for the join.
    pub fn empty(dim: usize, recession: Vec<usize>) -> Self {
        let e = LatticePolyhedron::empty(dim, recession);
        Self { gamma: e.clone(), delta: e }
    }

    /// The unit of the sum: both components equal `{0} + C`.
    pub fn unit(dim: usize, recession: Vec<usize>) -> Self {
        let p = LatticePolyhedron::new(dim, vec![vec![0; dim]], recession).expect("origin is a lattice point");
        Self { gamma: p.clone(), delta: p }
    }

    pub fn gamma(&self) -> &LatticePolyhedron {
        &self.gamma
    }

    pub fn delta(&self) -> &LatticePolyhedron {
        &self.delta
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn recession_axes(&self) -> &[usize] {
        self.gamma.recession_axes()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    pub fn swap(&self) -> Self {
        Self { gamma: self.delta.clone(), delta: self.gamma.clone() }
    }

    /// Componentwise Minkowski sum.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            gamma: self.gamma.minkowski_sum(&other.gamma)?,
            delta: self.delta.minkowski_sum(&other.delta)?,
        })
    }

    /// Componentwise convex hull of the union.
    pub fn join(&self, other: &Self) -> Result<Self> {
        Ok(Self { gamma: self.gamma.join(&other.gamma)?, delta: self.delta.join(&other.delta)? })
    }

    /// Box containing the symmetric difference: coordinate ranges over the
    /// generators of both components.
    fn difference_box(&self) -> (Vec<i64>, Vec<i64>) {
        let q = self.dim();
        let all = || self.gamma.generators().iter().chain(self.delta.generators());
        let lo = (0..q).map(|t| all().map(|g| g[t]).min().unwrap()).collect();
        let hi = (0..q).map(|t| all().map(|g| g[t]).max().unwrap()).collect();
        (lo, hi)
    }

    /// `I(Γ, Δ) = #(Γ∖Δ) − #(Δ∖Γ)` over the integer lattice.
    pub fn lattice_count(&self) -> BigInt {
        if self.is_empty() {
            return BigInt::zero();
        }
        if self.gamma == self.delta {
            return BigInt::zero();
        }
        let (lo, hi) = self.difference_box();
        BigInt::from(self.gamma.count_in_box(&lo, &hi)) - BigInt::from(self.delta.count_in_box(&lo, &hi))
    }

    /// Smallest level `N` for which the truncation `Σ_S x_s <= N` is
    /// certified to contain the symmetric difference.
    pub fn certified_level(&self) -> i64 {
        if self.is_empty() {
            return 0;
        }
        let (_, hi) = self.difference_box();
        self.recession_axes().iter().map(|&s| hi[s]).sum()
    }

    /// Vertices of `Γ ∩ H` and `Δ ∩ H` for `H = {Σ_S x_s <= level}`.
    pub(crate) fn truncations(&self, level: i64) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
        let lv = Rat::from_integer(level.into());
        let cut = |p: &LatticePolyhedron| -> Vec<Vec<Rat>> {
            if p.is_bounded() {
                return p.rat_generators();
            }
            let t = geom::truncate(&p.rat_generators(), &p.mask(), &lv);
            geom::reduce(t, &vec![false; p.dim()])
        };
        (cut(&self.gamma), cut(&self.delta))
    }

    /// `Vol(Γ∖Δ) − Vol(Δ∖Γ)`.
    pub fn volume(&self) -> Rat {
        if self.is_empty() || self.gamma == self.delta {
            return Rat::zero();
        }
        let (g, d) = self.truncations(self.certified_level());
        Hull::new(g).volume() - Hull::new(d).volume()
    }
}

fn check_family(pairs: &[BoundedPair]) -> Result<()> {
    let first = pairs.first().ok_or_else(|| Error::pre("need at least one pair"))?;
    if pairs.len() != first.dim() {
        return Err(Error::Shape(format!(
            "{} pairs given in dimension {}",
            pairs.len(),
            first.dim()
        )));
    }
    for p in pairs {
        if p.dim() != first.dim() {
            return Err(Error::dim(first.dim(), p.dim()));
        }
        if p.recession_axes() != first.recession_axes() {
            return Err(Error::RecessionMismatch(first.recession_axes().to_vec(), p.recession_axes().to_vec()));
        }
        if p.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
    }
    Ok(())
}

/// Sums over all non-empty subsets, indexed by bitmask.
fn subset_sums<T: Clone>(items: &[T], add: impl Fn(&T, &T) -> Result<T>) -> Result<Vec<Option<T>>> {
    let n = items.len();
    let mut sums: Vec<Option<T>> = vec![None; 1 << n];
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        sums[mask] = Some(match &sums[rest] {
            None => items[low].clone(),
            Some(s) => add(s, &items[low])?,
        });
    }
    Ok(sums)
}

fn sign(q: usize, size: usize) -> i64 {
    if (q - size) % 2 == 0 { 1 } else { -1 }
}

/// `q!·MV(A_1, …, A_q)` by inclusion–exclusion over lattice counts of the
/// subset sums. Exact for lattice pairs.
pub fn mixed_volume_normalized(pairs: &[BoundedPair]) -> Result<BigInt> {
    check_family(pairs)?;
    let q = pairs.len();
    let sums = subset_sums(pairs, |a, b| a.sum(b))?;
    let mut total = BigInt::zero();
    for (mask, s) in sums.iter().enumerate().skip(1) {
        let size = mask.count_ones() as usize;
        total += s.as_ref().unwrap().lattice_count() * sign(q, size);
    }
    Ok(total)
}

/// Mixed volume of `q` bounded lattice pairs in `R^q`.
pub fn mixed_volume_pairs(pairs: &[BoundedPair]) -> Result<Rat> {
    let n = mixed_volume_normalized(pairs)?;
    Ok(Rat::new(n, factorial(pairs.len())))
}

fn rat_minkowski(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.iter().zip(y).map(|(u, v)| u + v).collect());
        }
    }
    let q = a.first().map_or(0, |v| v.len());
    geom::reduce(out, &vec![false; q])
}

/// Classical mixed volume of `q` non-empty polytopes given by (rational)
/// vertex lists in `R^q`, by inclusion–exclusion over volumes.
pub(crate) fn classical_mixed_volume_rat(polys: &[Vec<Vec<Rat>>]) -> Result<Rat> {
    let q = polys.len();
    if polys.iter().any(|p| p.is_empty()) {
        return Err(Error::EmptyPolyhedron);
    }
    if let Some(p) = polys.iter().flatten().find(|v| v.len() != q) {
        return Err(Error::dim(q, p.len()));
    }
    let sums = subset_sums(polys, |a, b| Ok(rat_minkowski(a, b)))?;
    let mut total = Rat::zero();
    for (mask, s) in sums.iter().enumerate().skip(1) {
        let size = mask.count_ones() as usize;
        let v = Hull::new(s.clone().unwrap()).volume();
        total += v * Rat::from_integer(sign(q, size).into());
    }
    Ok(total / Rat::from_integer(factorial(q)))
}

/// Classical mixed volume of `q` bounded polytopes in `R^q`.
pub fn classical_mixed_volume(polys: &[LatticePolyhedron]) -> Result<Rat> {
    if let Some(p) = polys.iter().find(|p| !p.is_bounded()) {
        return Err(Error::Unbounded(format!("{p} is not a polytope")));
    }
    let rats: Vec<Vec<Vec<Rat>>> = polys.iter().map(|p| p.rat_generators()).collect();
    classical_mixed_volume_rat(&rats)
}

/// Mixed volume of pairs as `MV(Γ_i ∩ H) − MV(Δ_i ∩ H)` with
/// `H = {Σ_S x_s <= level}`. The level must be at least the certified
/// level of every pair.
pub fn mixed_volume_truncation(pairs: &[BoundedPair], level: i64) -> Result<Rat> {
    check_family(pairs)?;
    let need = pairs.iter().map(|p| p.certified_level()).max().unwrap();
    if level < need {
        return Err(Error::pre(format!(
            "truncation level {level} is below the certified level {need}"
        )));
    }
    let (gs, ds): (Vec<_>, Vec<_>) = pairs.iter().map(|p| p.truncations(level)).unzip();
    Ok(classical_mixed_volume_rat(&gs)? - classical_mixed_volume_rat(&ds)?)
}

/// Smallest level accepted by [`mixed_volume_truncation`].
pub fn truncation_level(pairs: &[BoundedPair]) -> i64 {
    pairs.iter().map(|p| p.certified_level()).max().unwrap_or(0)
}

impl std::fmt::Display for BoundedPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.gamma, self.delta)
    }
}
