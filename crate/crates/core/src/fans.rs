//! Relatively open rational cones, dual fans of lattice polytopes, lattice
//! transversality, and the lattice-point identity for Minkowski sums that
//! transversality implies.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{index, saturation};
use crate::lp::{feasible, Constraint, Relation};
use crate::polyhedron::{LatticePolyhedron, LatticeVector};
use crate::rational::{nullspace, rank, row_echelon, Rat};

/// All combinations of the generators with strictly positive coefficients.
/// The zero cone has no generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCone {
    q: usize,
    generators: Vec<Vec<Rat>>,
    dim: usize,
}

impl RationalCone {
    pub fn new(q: usize, generators: Vec<Vec<Rat>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != q) {
            return Err(Error::dim(q, g.len()));
        }
        if generators.iter().any(|g| g.iter().all(|x| x.is_zero())) {
            return Err(Error::pre("cone generators must be non-zero"));
        }
        let dim = rank(&generators);
        Ok(Self { q, generators, dim })
    }

    pub fn zero(q: usize) -> Self {
        Self { q, generators: Vec::new(), dim: 0 }
    }

    pub fn ambient_dim(&self) -> usize {
        self.q
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Rat>] {
        &self.generators
    }

    /// Membership in the relatively open cone, decided by an LP with all
    /// coefficients at least one (valid by homogeneity).
    pub fn contains(&self, v: &[Rat]) -> Result<bool> {
        if v.len() != self.q {
            return Err(Error::dim(self.q, v.len()));
        }
        let is_zero = v.iter().all(|x| x.is_zero());
        let r = self.generators.len();
        if r == 0 {
            return Ok(is_zero);
        }
        let vars = r + 1;
        let mut cons: Vec<Constraint> = (0..self.q)
            .map(|t| {
                let mut row: Vec<Rat> = self.generators.iter().map(|g| g[t].clone()).collect();
                row.push(-&v[t]);
                Constraint::new(row, Relation::Eq, Rat::zero())
            })
            .collect();
        for j in 0..vars {
            let mut row = vec![Rat::zero(); vars];
            row[j] = Rat::one();
            if j < r || !is_zero {
                cons.push(Constraint::new(row, Relation::Ge, Rat::one()));
            }
        }
        Ok(feasible(vars, &cons).is_some())
    }

    /// Covectors cutting out the linear span.
    fn span_equations(&self) -> Vec<Vec<Rat>> {
        if self.generators.is_empty() {
            return (0..self.q).map(|i| (0..self.q).map(|j| Rat::from_integer(((i == j) as i64).into())).collect()).collect();
        }
        nullspace(&self.generators, self.q)
    }
}

impl fmt::Display for RationalCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("({})", g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "cone{{{}}}", gens.join(","))
    }
}

/// A cone of a dual fan together with the face it is dual to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCone {
    pub face: LatticePolyhedron,
    pub cone: RationalCone,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    pub q: usize,
    pub cones: Vec<FanCone>,
}

impl Fan {
    /// Index of the cone containing the covector.
    pub fn locate(&self, gamma: &[Rat]) -> Result<Option<usize>> {
        for (i, c) in self.cones.iter().enumerate() {
            if c.cone.contains(gamma)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// Dual cones of all non-empty faces of a bounded polytope: for each face,
/// the covectors whose argmin face is exactly that face.
pub fn dual_fan(p: &LatticePolyhedron) -> Result<Fan> {
    if p.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    if !p.is_bounded() {
        return Err(Error::pre("dual fans are built for bounded polytopes"));
    }
    let q = p.dim();
    let hull = p.hull();
    let mut cones = Vec::with_capacity(hull.faces.len());
    for face in &hull.faces {
        let verts = face.vertices.iter().map(|&i| p.generators()[i].clone()).collect();
        cones.push(FanCone {
            face: LatticePolyhedron::polytope(q, verts)?,
            cone: RationalCone::new(q, hull.dual_cone_generators(face))?,
        });
    }
    Ok(Fan { q, cones })
}

/// `Σ dim C_i = q` and the lattice points of the cones generate `ℤ^q`.
///
/// A relatively open rational cone of positive dimension has lattice points
/// generating `span ∩ ℤ^q`, so the test is on the sum of saturations.
pub fn is_z_transversal(cones: &[RationalCone]) -> Result<bool> {
    let q = cones.first().map_or(0, |c| c.q);
    if let Some(c) = cones.iter().find(|c| c.q != q) {
        return Err(Error::dim(q, c.q));
    }
    if cones.iter().map(|c| c.dim).sum::<usize>() != q {
        return Ok(false);
    }
    let gens: Vec<_> = cones.iter().flat_map(|c| saturation(&c.generators, q)).collect();
    Ok(q == 0 || index(&gens, q).is_some_and(|d| d.is_one()))
}

/// The unique point of `⋂ (span C_i + c_i)`, if the intersection is a point.
fn affine_meet(rows: &[Vec<Rat>], q: usize) -> Option<Vec<Rat>> {
    let (ech, pivots) = row_echelon(rows.to_vec());
    if pivots.contains(&q) || pivots.len() != q {
        return None;
    }
    Some((0..q).map(|i| ech[i][q].clone()).collect())
}

fn consistent(rows: &[Vec<Rat>], q: usize) -> bool {
    let (_, pivots) = row_echelon(rows.to_vec());
    !pivots.contains(&q)
}

/// The first tuple of cones (one per fan, by index) whose shifted
/// intersection is a single point but which is not `ℤ`-transversal.
pub fn transversality_failure(fans: &[Fan], shifts: &[Vec<Rat>]) -> Result<Option<Vec<usize>>> {
    if fans.len() != shifts.len() {
        return Err(Error::Shape("one shift per fan".into()));
    }
    let q = fans.first().map_or(0, |f| f.q);
    if let Some(f) = fans.iter().find(|f| f.q != q) {
        return Err(Error::dim(q, f.q));
    }
    if let Some(s) = shifts.iter().find(|s| s.len() != q) {
        return Err(Error::dim(q, s.len()));
    }
    // Affine equations of each shifted cone span: N x = N c.
    let equations: Vec<Vec<Vec<Vec<Rat>>>> = fans
        .iter()
        .zip(shifts)
        .map(|(f, c)| {
            f.cones
                .iter()
                .map(|fc| {
                    fc.cone
                        .span_equations()
                        .into_iter()
                        .map(|mut n| {
                            let rhs = crate::rational::dot(&n, c);
                            n.push(rhs);
                            n
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut choice = Vec::with_capacity(fans.len());
    search(fans, shifts, &equations, q, &mut Vec::new(), &mut choice)
}

fn search(
    fans: &[Fan],
    shifts: &[Vec<Rat>],
    equations: &[Vec<Vec<Vec<Rat>>>],
    q: usize,
    rows: &mut Vec<Vec<Rat>>,
    choice: &mut Vec<usize>,
) -> Result<Option<Vec<usize>>> {
    let level = choice.len();
    if level == fans.len() {
        let Some(x) = affine_meet(rows, q) else { return Ok(None) };
        for (i, &c) in choice.iter().enumerate() {
            let rel: Vec<Rat> = x.iter().zip(&shifts[i]).map(|(a, b)| a - b).collect();
            if !fans[i].cones[c].cone.contains(&rel)? {
                return Ok(None);
            }
        }
        let cones: Vec<RationalCone> = choice.iter().enumerate().map(|(i, &c)| fans[i].cones[c].cone.clone()).collect();
        return Ok(if is_z_transversal(&cones)? { None } else { Some(choice.clone()) });
    }
    for (c, eqs) in equations[level].iter().enumerate() {
        let before = rows.len();
        rows.extend(eqs.iter().cloned());
        if consistent(rows, q) {
            choice.push(c);
            let found = search(fans, shifts, equations, q, rows, choice)?;
            choice.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        rows.truncate(before);
    }
    Ok(None)
}

/// Whether every tuple of cones meeting in a single point after shifting
/// is `ℤ`-transversal.
pub fn fans_transversal_wrt_shifts(fans: &[Fan], shifts: &[Vec<Rat>]) -> Result<bool> {
    Ok(transversality_failure(fans, shifts)?.is_none())
}

fn check_oda_input(polys: &[LatticePolyhedron]) -> Result<usize> {
    let first = polys.first().ok_or_else(|| Error::pre("need at least one polytope"))?;
    let q = first.dim();
    let mut total = LatticePolyhedron::point(vec![0; q]);
    for p in polys {
        if p.dim() != q {
            return Err(Error::dim(q, p.dim()));
        }
        if p.is_empty() || !p.is_bounded() {
            return Err(Error::pre("polytopes must be non-empty and bounded"));
        }
        total = total.minkowski_sum(p)?;
    }
    if total.hull().dim != q {
        return Err(Error::pre("the Minkowski sum is not full-dimensional"));
    }
    Ok(q)
}

/// Lattice points of `A_1 + … + A_p` that are not sums of lattice points of
/// the summands.
pub fn oda_missing(polys: &[LatticePolyhedron]) -> Result<Vec<LatticeVector>> {
    let q = check_oda_input(polys)?;
    let mut sums: BTreeSet<LatticeVector> = BTreeSet::from([vec![0; q]]);
    let mut total = LatticePolyhedron::point(vec![0; q]);
    for p in polys {
        let pts = p.lattice_points()?;
        sums = sums.iter().flat_map(|s| pts.iter().map(move |t| s.iter().zip(t).map(|(a, b)| a + b).collect())).collect();
        total = total.minkowski_sum(p)?;
    }
    Ok(total.lattice_points()?.into_iter().filter(|x| !sums.contains(x)).collect())
}

/// `(A_1∩ℤ^q) + … + (A_p∩ℤ^q) = (A_1+…+A_p)∩ℤ^q`, by enumeration.
pub fn check_oda(polys: &[LatticePolyhedron]) -> Result<bool> {
    Ok(oda_missing(polys)?.is_empty())
}
