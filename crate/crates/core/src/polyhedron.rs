//! Lattice polyhedra `conv(G) + cone{e_s : s ∈ S}` and the tropical semiring
//! operations on them.
//!
//! Values are kept in canonical form (minimal generators, lexicographically
//! sorted, sorted recession axes), so structural equality is set equality.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom;
use crate::hull::Hull;

type Rat = BigRational;

/// A point of `Z^q`.
pub type LatticeVector = Vec<i64>;

/// A rational linear functional on `R^q`.
pub type Covector = Vec<Rat>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePolyhedron {
    dim: usize,
    generators: Vec<LatticeVector>,
    /// 0-based, sorted, distinct.
    recession: Vec<usize>,
}

/// A compatible collection of faces: the argmin faces of one covector on
/// each summand, whose sum is a non-empty bounded face of the total sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleFaces {
    pub faces: Vec<LatticePolyhedron>,
    pub covector: Covector,
}

fn to_rat(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

fn to_lattice(v: &[Rat]) -> Result<LatticeVector> {
    v.iter()
        .map(|x| {
            if !x.is_integer() {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                return Err(Error::NonLattice(format!("({})", s.join(","))));
            }
            crate::rational::to_i64(&x.to_integer())
        })
        .collect()
}

impl LatticePolyhedron {
    /// Builds the canonical form of `conv(generators) + cone{e_s : s ∈ recession}`.
    pub fn new(dim: usize, generators: Vec<LatticeVector>, recession: Vec<usize>) -> Result<Self> {
        for g in &generators {
            if g.len() != dim {
                return Err(Error::dim(dim, g.len()));
            }
        }
        let mut recession = recession;
        recession.sort_unstable();
        recession.dedup();
        if let Some(&s) = recession.iter().find(|&&s| s >= dim) {
            return Err(Error::pre(format!("recession axis {} out of range for dimension {dim}", s + 1)));
        }
        let mask: Vec<bool> = (0..dim).map(|t| recession.binary_search(&t).is_ok()).collect();
        let rats = generators.iter().map(|g| to_rat(g)).collect();
        let generators = geom::reduce(rats, &mask)
            .iter()
            .map(|g| to_lattice(g))
            .collect::<Result<_>>()?;
        Ok(Self { dim, generators, recession })
    }

    /// Like [`Self::new`] but accepts rational generators; fails unless every
    /// vertex is a lattice point.
    pub fn from_rational(dim: usize, generators: Vec<Vec<Rat>>, recession: Vec<usize>) -> Result<Self> {
        let mask: Vec<bool> = (0..dim).map(|t| recession.contains(&t)).collect();
        let verts = geom::reduce(generators, &mask);
        let gens = verts.iter().map(|v| to_lattice(v)).collect::<Result<_>>()?;
        Self::new(dim, gens, recession)
    }

    pub fn empty(dim: usize, recession: Vec<usize>) -> Self {
        let mut recession = recession;
        recession.sort_unstable();
        recession.dedup();
        Self { dim, generators: Vec::new(), recession }
    }

    /// The positive orthant `R^m_+`, unit of the semiring `P_+`.
    pub fn orthant(dim: usize) -> Self {
        Self { dim, generators: vec![vec![0; dim]], recession: (0..dim).collect() }
    }

    /// `conv(generators) + R^m_+`.
    pub fn orthant_hull(dim: usize, generators: Vec<LatticeVector>) -> Result<Self> {
        Self::new(dim, generators, (0..dim).collect())
    }

    /// The bounded polytope `conv(generators)`.
    pub fn polytope(dim: usize, generators: Vec<LatticeVector>) -> Result<Self> {
        Self::new(dim, generators, Vec::new())
    }

    pub fn point(p: LatticeVector) -> Self {
        Self { dim: p.len(), generators: vec![p], recession: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn recession_axes(&self) -> &[usize] {
        &self.recession
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.recession.is_empty()
    }

    /// Recession cone is the full orthant.
    pub fn is_orthant_kind(&self) -> bool {
        self.recession.len() == self.dim
    }

    pub(crate) fn mask(&self) -> Vec<bool> {
        (0..self.dim).map(|t| self.recession.binary_search(&t).is_ok()).collect()
    }

    pub(crate) fn rat_generators(&self) -> Vec<Vec<Rat>> {
        self.generators.iter().map(|g| to_rat(g)).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::dim(self.dim, other.dim));
        }
        if self.recession != other.recession {
            return Err(Error::RecessionMismatch(self.recession.clone(), other.recession.clone()));
        }
        Ok(())
    }

    /// Minkowski sum, the multiplication of the semiring.
    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.is_empty() || other.is_empty() {
            return Ok(Self::empty(self.dim, self.recession.clone()));
        }
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                let s = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()?;
                gens.push(s);
            }
        }
        Self::new(self.dim, gens, self.recession.clone())
    }

    /// Convex hull of the union, the addition of the semiring.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::new(self.dim, gens, self.recession.clone())
    }

    pub fn translate(&self, shift: &[i64]) -> Result<Self> {
        if shift.len() != self.dim {
            return Err(Error::dim(self.dim, shift.len()));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .zip(shift)
                    .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Self::new(self.dim, gens, self.recession.clone())
    }

    /// Dilation by a non-negative integer factor.
    pub fn scale(&self, factor: i64) -> Result<Self> {
        if factor < 0 {
            return Err(Error::pre("negative dilation factor"));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| g.iter().map(|x| x.checked_mul(factor).ok_or(Error::Overflow)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Self::new(self.dim, gens, self.recession.clone())
    }

    /// Exact membership of a rational point.
    pub fn contains(&self, point: &[Rat]) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::dim(self.dim, point.len()));
        }
        Ok(geom::contains(&self.rat_generators(), &self.mask(), point))
    }

    pub fn contains_lattice(&self, point: &[i64]) -> Result<bool> {
        self.contains(&to_rat(point))
    }

    /// Number of lattice points in the box `lo..=hi` lying in the polyhedron.
    pub(crate) fn count_in_box(&self, lo: &[i64], hi: &[i64]) -> u64 {
        geom::count_in_box(&self.rat_generators(), &self.mask(), lo, hi)
    }

    /// Smallest integer `T` with `T·e_axis` in the polyhedron, if any.
    fn axis_intercept(&self, axis: usize) -> Option<i64> {
        let max = self.generators.iter().map(|g| g[axis]).max()?;
        (0..=max.max(0)).find(|&t| {
            let mut p = vec![0; self.dim];
            p[axis] = t;
            self.contains_lattice(&p).unwrap_or(false)
        })
    }

    /// Whether the polyhedron meets every coordinate axis (equivalently, for
    /// members of `P_+` inside the orthant, has bounded complement).
    pub fn meets_all_axes(&self) -> bool {
        !self.is_empty() && (0..self.dim).all(|s| self.axis_intercept(s).is_some())
    }

    /// `I(Δ)`: the number of lattice points of `R^m_+ \ Δ`.
    pub fn complement_count(&self) -> Result<BigInt> {
        if !self.is_orthant_kind() {
            return Err(Error::pre("complement count needs the full orthant as recession cone"));
        }
        if self.is_empty() {
            return Err(Error::Unbounded("complement of the empty polyhedron".into()));
        }
        if self.generators.iter().flatten().any(|&x| x < 0) {
            return Err(Error::pre("polyhedron is not contained in the positive orthant"));
        }
        let mut hi = Vec::with_capacity(self.dim);
        for s in 0..self.dim {
            match self.axis_intercept(s) {
                Some(t) => hi.push(t - 1),
                None => return Err(Error::Unbounded(format!("complement is unbounded along axis {}", s + 1))),
            }
        }
        let lo = vec![0; self.dim];
        let boxed: BigInt = hi.iter().fold(BigInt::one(), |acc, &h| acc * BigInt::from((h + 1).max(0)));
        Ok(boxed - BigInt::from(self.count_in_box(&lo, &hi)))
    }

    fn require_bounded(&self) -> Result<()> {
        if !self.is_bounded() {
            return Err(Error::Unbounded("operation needs a bounded polytope".into()));
        }
        Ok(())
    }

    /// All lattice points of a bounded polytope, lexicographically sorted.
    pub fn lattice_points(&self) -> Result<Vec<LatticeVector>> {
        self.require_bounded()?;
        if self.is_empty() {
            return Ok(Vec::new());
        }
        let (lo, hi) = self.bounding_box();
        let rats = self.rat_generators();
        let mask = self.mask();
        let q = self.dim;
        if q == 0 {
            return Ok(vec![Vec::new()]);
        }
        let mut out = Vec::new();
        for prefix in crate::combin::integer_box(&lo[..q - 1], &hi[..q - 1]) {
            let pr = to_rat(&prefix);
            if let Some((a, Some(b))) = geom::fiber(&rats, &mask, &pr) {
                let a = crate::rational::ceil_i64(&a)?;
                let b = crate::rational::floor_i64(&b)?;
                for t in a..=b {
                    let mut p = prefix.clone();
                    p.push(t);
                    out.push(p);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Coordinate-wise minima and maxima over the generators.
    pub fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let lo = (0..self.dim).map(|t| self.generators.iter().map(|g| g[t]).min().unwrap_or(0)).collect();
        let hi = (0..self.dim).map(|t| self.generators.iter().map(|g| g[t]).max().unwrap_or(-1)).collect();
        (lo, hi)
    }

    pub(crate) fn hull(&self) -> Hull {
        Hull::new(self.rat_generators())
    }

    /// Euclidean volume of a bounded polytope.
    pub fn volume(&self) -> Result<Rat> {
        self.require_bounded()?;
        Ok(self.hull().volume())
    }

    /// Minimum of `γ` over the polyhedron and the face where it is attained.
    pub fn support_and_face(&self, gamma: &[Rat]) -> Result<(Rat, LatticePolyhedron)> {
        if gamma.len() != self.dim {
            return Err(Error::dim(self.dim, gamma.len()));
        }
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        if self.recession.iter().any(|&s| gamma[s].is_negative()) {
            return Err(Error::Unbounded("covector is negative on a recession direction".into()));
        }
        let values: Vec<Rat> = self.generators.iter().map(|g| crate::rational::dot_int(gamma, g)).collect();
        let min = values.iter().min().unwrap().clone();
        let gens = self
            .generators
            .iter()
            .zip(&values)
            .filter(|(_, v)| **v == min)
            .map(|(g, _)| g.clone())
            .collect();
        let rec = self.recession.iter().copied().filter(|&s| gamma[s].is_zero()).collect();
        Ok((min, Self::new(self.dim, gens, rec)?))
    }

    /// All non-empty bounded faces, each with a covector from the relative
    /// interior of its dual cone.
    pub fn bounded_faces(&self) -> Result<Vec<(LatticePolyhedron, Covector)>> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let mask = self.mask();
        let rec_sum = |p: &[Rat]| -> Rat {
            p.iter().zip(&mask).filter(|(_, &r)| r).fold(Rat::zero(), |acc, (x, _)| acc + x)
        };
        let gens = self.rat_generators();
        let (points, level) = if self.is_bounded() {
            (gens, None)
        } else {
            let level = gens.iter().map(|g| rec_sum(g)).max().unwrap() + Rat::one();
            let t = geom::truncate(&gens, &mask, &level);
            (geom::reduce(t, &vec![false; self.dim]), Some(level))
        };
        let hull = Hull::new(points);
        let mut out = Vec::new();
        for face in &hull.faces {
            let verts: Vec<&Vec<Rat>> = face.vertices.iter().map(|&i| &hull.vertices[i]).collect();
            if let Some(level) = &level {
                if verts.iter().any(|v| rec_sum(v) >= *level) {
                    continue;
                }
            }
            let lattice = verts.iter().map(|v| to_lattice(v)).collect::<Result<Vec<_>>>()?;
            let poly = Self::polytope(self.dim, lattice)?;
            out.push((poly, hull.face_covector(face)));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Compatible face collections of `polys`: one per non-empty bounded face
    /// of their Minkowski sum.
    pub fn enumerate_compatible(polys: &[LatticePolyhedron]) -> Result<Vec<CompatibleFaces>> {
        let first = polys.first().ok_or_else(|| Error::pre("need at least one polyhedron"))?;
        for p in polys {
            first.check_compatible(p)?;
            if p.is_empty() {
                return Err(Error::EmptyPolyhedron);
            }
        }
        let mut total = first.clone();
        for p in &polys[1..] {
            total = total.minkowski_sum(p)?;
        }
        let mut out: Vec<CompatibleFaces> = Vec::new();
        for (_, gamma) in total.bounded_faces()? {
            let faces = polys
                .iter()
                .map(|p| p.support_and_face(&gamma).map(|(_, f)| f))
                .collect::<Result<Vec<_>>>()?;
            if !out.iter().any(|c| c.faces == faces) {
                out.push(CompatibleFaces { faces, covector: gamma });
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LatticePolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let pts: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("({})", g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "conv{{{}}}", pts.join(","))?;
        if !self.recession.is_empty() {
            let axes: Vec<String> = self.recession.iter().map(|s| (s + 1).to_string()).collect();
            write!(f, " + cone{{e{}}}", axes.join(",e"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_vec};

    fn orth(gens: &[&[i64]]) -> LatticePolyhedron {
        let dim = gens[0].len();
        LatticePolyhedron::orthant_hull(dim, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(orth(&[&[1, 1], &[2, 3]]).generators(), &[vec![1, 1]]);
        let sq = LatticePolyhedron::polytope(2, vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2], vec![1, 1]]).unwrap();
        assert_eq!(sq.generators().len(), 4);
        assert!(LatticePolyhedron::polytope(2, vec![]).unwrap().is_empty());
        assert!(matches!(
            LatticePolyhedron::polytope(2, vec![vec![1, 2, 3]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn semiring_examples() {
        let d1 = orth(&[&[2, 0], &[0, 1]]);
        let d2 = orth(&[&[1, 0], &[0, 3]]);
        let s = d1.minkowski_sum(&d2).unwrap();
        assert_eq!(s.generators(), &[vec![0, 4], vec![1, 1], vec![3, 0]]);
        let e = LatticePolyhedron::empty(2, vec![0, 1]);
        assert!(e.minkowski_sum(&d1).unwrap().is_empty());
        assert_eq!(LatticePolyhedron::orthant(2).minkowski_sum(&d1).unwrap(), d1);
        assert_eq!(d1.join(&e).unwrap(), d1);
        let j = orth(&[&[2, 0], &[0, 2]]).join(&orth(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(j.generators(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(orth(&[&[2, 0]]).join(&orth(&[&[0, 1]])).unwrap(), d1);
    }

    #[test]
    fn membership_examples() {
        let s = orth(&[&[3, 0], &[1, 1], &[0, 4]]);
        assert!(s.contains_lattice(&[1, 1]).unwrap());
        assert!(!s.contains_lattice(&[2, 0]).unwrap());
        assert!(LatticePolyhedron::orthant(3).contains_lattice(&[0, 0, 0]).unwrap());
    }

    #[test]
    fn complement_counts() {
        let d1 = orth(&[&[2, 0], &[0, 1]]);
        let d2 = orth(&[&[1, 0], &[0, 3]]);
        let d3 = orth(&[&[2, 0], &[0, 3]]);
        let c = |p: &LatticePolyhedron| p.complement_count().unwrap();
        assert_eq!(c(&d1), 2.into());
        assert_eq!(c(&d2), 3.into());
        assert_eq!(c(&d3), 5.into());
        assert_eq!(c(&LatticePolyhedron::orthant(3)), 0.into());
        assert!(matches!(orth(&[&[1, 1]]).complement_count(), Err(Error::Unbounded(_))));
    }

    #[test]
    fn lattice_points_and_volume() {
        let seg = LatticePolyhedron::polytope(2, vec![vec![0, 0], vec![2, 0]]).unwrap();
        assert_eq!(seg.lattice_points().unwrap(), vec![vec![0, 0], vec![1, 0], vec![2, 0]]);
        let q = LatticePolyhedron::polytope(2, vec![vec![0, 0], vec![3, 0], vec![1, 1], vec![0, 4]]).unwrap();
        // The hull is the triangle (0,0),(3,0),(0,4): Pick gives 3 interior + 8 boundary.
        assert_eq!(q.generators().len(), 3);
        assert_eq!(q.lattice_points().unwrap().len(), 11);
        assert_eq!(q.volume().unwrap(), rat(6));
        assert_eq!(LatticePolyhedron::point(vec![1, 2]).volume().unwrap(), rat(0));
        assert!(orth(&[&[1, 0]]).volume().is_err());
    }

    #[test]
    fn support_faces() {
        let d1 = orth(&[&[2, 0], &[0, 1]]);
        let (v, f) = d1.support_and_face(&rat_vec(&[1, 1])).unwrap();
        assert_eq!(v, rat(1));
        assert_eq!(f, LatticePolyhedron::point(vec![0, 1]));
        let (v, f) = d1.support_and_face(&rat_vec(&[1, 2])).unwrap();
        assert_eq!(v, rat(2));
        assert_eq!(f, LatticePolyhedron::polytope(2, vec![vec![2, 0], vec![0, 1]]).unwrap());
        let (v, f) = d1.support_and_face(&rat_vec(&[0, 0])).unwrap();
        assert_eq!((v, f), (rat(0), d1.clone()));
        assert!(d1.support_and_face(&rat_vec(&[-1, 1])).is_err());
    }

    #[test]
    fn bounded_face_enumeration() {
        let o = LatticePolyhedron::orthant(2).bounded_faces().unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].0, LatticePolyhedron::point(vec![0, 0]));
        let d1 = orth(&[&[2, 0], &[0, 1]]);
        let faces = d1.bounded_faces().unwrap();
        assert_eq!(faces.len(), 3);
        for (f, g) in &faces {
            assert!(g.iter().all(|x| x.is_positive()));
            assert_eq!(&d1.support_and_face(g).unwrap().1, f);
        }
        let tri = LatticePolyhedron::polytope(2, vec![vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(tri.bounded_faces().unwrap().len(), 7);
    }

    #[test]
    fn compatible_collections() {
        let d1 = orth(&[&[2, 0], &[0, 1]]);
        let d2 = orth(&[&[1, 0], &[0, 3]]);
        let cs = LatticePolyhedron::enumerate_compatible(&[d1.clone(), d2.clone()]).unwrap();
        assert_eq!(cs.len(), 5);
        let edges = cs.iter().filter(|c| c.faces.iter().any(|f| f.generators().len() > 1)).count();
        assert_eq!(edges, 2);
        assert_eq!(LatticePolyhedron::enumerate_compatible(&[d1.clone()]).unwrap().len(), 3);
        let o = LatticePolyhedron::orthant(2);
        assert_eq!(LatticePolyhedron::enumerate_compatible(&[o.clone(), o.clone(), o]).unwrap().len(), 1);
    }
}
