//! General position of principal parts of polynomial matrices: effective
//! non-degeneracy, matrix-compatible face collections, and a checker that
//! either searches for a degenerate witness or compares against the
//! colength oracle.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::colength::{multiplicity_oracle, Colength};
use crate::combin::integer_box;
use crate::error::{Error, Result};
use crate::newton::{multiplicity_formula, restrict};
use crate::poly::PolyMatrix;
use crate::polyhedron::LatticePolyhedron;
use crate::rational::ratio;
use crate::scalar::{nullspace, Scalar};

/// A constant `n × k` matrix over the Gaussian rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstMatrix {
    pub entries: Vec<Vec<Scalar>>,
}

impl ConstMatrix {
    pub fn new(entries: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = entries.len();
        let k = entries.first().map_or(0, |r| r.len());
        if n == 0 || k < n || entries.iter().any(|r| r.len() != k) {
            return Err(Error::Shape(format!("need an n × k matrix with 1 <= n <= k, got {n} rows")));
        }
        Ok(Self { entries })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    /// Basis of the left kernel `{t : t·M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<Scalar>> {
        let (n, k) = (self.rows(), self.cols());
        let transposed: Vec<Vec<Scalar>> = (0..k).map(|j| (0..n).map(|i| self.entries[i][j].clone()).collect()).collect();
        nullspace(&transposed, n)
    }
}

/// True iff `t·M ≠ 0` for every `t` with all coordinates non-zero.
///
/// The left kernel is a linear subspace; over an infinite field it holds a
/// vector with all coordinates non-zero iff no coordinate vanishes on it
/// identically.
pub fn effectively_nondegenerate(m: &ConstMatrix) -> bool {
    let kernel = m.left_kernel();
    if kernel.is_empty() {
        return true;
    }
    (0..m.rows()).any(|i| kernel.iter().all(|v| v[i].is_zero()))
}

/// An `n × k` grid of bounded faces; `None` is the empty face.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceCollection {
    pub cells: Vec<Vec<Option<LatticePolyhedron>>>,
}

impl FaceCollection {
    pub fn nonempty_count(&self) -> usize {
        self.cells.iter().flatten().filter(|c| c.is_some()).count()
    }

    /// `*`/`∅` pattern, one row per line.
    pub fn pattern(&self) -> String {
        self.cells
            .iter()
            .map(|r| r.iter().map(|c| if c.is_some() { "*" } else { "∅" }).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for FaceCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(|c| c.as_ref().map_or("∅".to_string(), |p| p.to_string())).collect();
            write!(f, "{}", cells.join(" | "))?;
        }
        Ok(())
    }
}

/// Default shift radius: one more than the largest coordinate magnitude.
pub fn default_shift_radius(grid: &[Vec<LatticePolyhedron>]) -> i64 {
    1 + grid.iter().flatten().flat_map(|p| p.generators().iter().flatten()).map(|x| x.abs()).max().unwrap_or(0)
}

/// Default denominator of the row shifts.
pub const DEFAULT_SHIFT_DENOMINATOR: i64 = 2;

/// Matrix-compatible collections reachable with row shifts in
/// `(1/2)ℤ^m ∩ [−radius, radius]^m` (the last row unshifted), sorted.
pub fn enumerate_matrix_compatible(grid: &[Vec<LatticePolyhedron>], radius: i64) -> Result<Vec<FaceCollection>> {
    enumerate_matrix_compatible_with(grid, radius, DEFAULT_SHIFT_DENOMINATOR)
}

/// As [`enumerate_matrix_compatible`] with shifts in
/// `(1/denominator)ℤ^m`. Integer shifts alone miss collections whose
/// witnessing shifts lie strictly between lattice points.
pub fn enumerate_matrix_compatible_with(
    grid: &[Vec<LatticePolyhedron>],
    radius: i64,
    denominator: i64,
) -> Result<Vec<FaceCollection>> {
    let n = grid.len();
    let k = grid.first().map_or(0, |r| r.len());
    if n == 0 || k < n || grid.iter().any(|r| r.len() != k) {
        return Err(Error::Shape(format!("grid must be n × k with 1 <= n <= k, got {n} rows")));
    }
    let m = grid[0][0].dim();
    for p in grid.iter().flatten() {
        if p.dim() != m || p.is_empty() || !p.is_orthant_kind() {
            return Err(Error::pre("entries must be non-empty polyhedra with recession cone R^m_+"));
        }
    }
    if radius < 0 || denominator < 1 {
        return Err(Error::pre("shift radius must be non-negative and the denominator positive"));
    }
    // Work in the dilated grid so that shifts are integral.
    let scaled: Vec<Vec<LatticePolyhedron>> =
        grid.iter().map(|r| r.iter().map(|p| p.scale(denominator)).collect::<Result<_>>()).collect::<Result<_>>()?;
    let bound = radius.checked_mul(denominator).ok_or(Error::Overflow)?;
    let lo = vec![-bound; m * (n - 1)];
    let hi = vec![bound; m * (n - 1)];
    let mut found: BTreeSet<FaceCollection> = BTreeSet::new();
    for flat in integer_box(&lo, &hi) {
        let mut shifts: Vec<Vec<i64>> = flat.chunks(m.max(1)).map(|c| c.to_vec()).collect();
        shifts.truncate(n - 1);
        shifts.push(vec![0; m]);
        let shifted: Vec<Vec<LatticePolyhedron>> = (0..n)
            .map(|i| scaled[i].iter().map(|p| p.translate(&shifts[i])).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let columns: Vec<LatticePolyhedron> = (0..k)
            .map(|j| {
                let mut q = shifted[0][j].clone();
                for row in &shifted[1..] {
                    q = q.join(&row[j])?;
                }
                Ok(q)
            })
            .collect::<Result<_>>()?;
        for comp in LatticePolyhedron::enumerate_compatible(&columns)? {
            let gamma = &comp.covector;
            let mut cells = vec![vec![None; k]; n];
            for j in 0..k {
                let (qmin, _) = columns[j].support_and_face(gamma)?;
                for i in 0..n {
                    let (v, _) = shifted[i][j].support_and_face(gamma)?;
                    if v == qmin {
                        cells[i][j] = Some(grid[i][j].support_and_face(gamma)?.1);
                    }
                }
            }
            found.insert(FaceCollection { cells });
        }
    }
    Ok(found.into_iter().collect())
}

/// Entrywise restriction `A|_𝓑`; empty cells give zero.
pub fn restrict_matrix(a: &PolyMatrix, coll: &FaceCollection) -> Result<PolyMatrix> {
    if coll.cells.len() != a.rows() || coll.cells.iter().any(|r| r.len() != a.cols()) {
        return Err(Error::Shape("collection shape differs from the matrix".into()));
    }
    let newton = a.newton_grid();
    let mut entries = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut row = Vec::with_capacity(a.cols());
        for j in 0..a.cols() {
            if let Some(face) = &coll.cells[i][j] {
                let is_face = !newton[i][j].is_empty()
                    && newton[i][j].bounded_faces()?.iter().any(|(f, _)| f == face);
                if !is_face {
                    return Err(Error::pre(format!("{face} is not a bounded face of the Newton polyhedron of entry ({}, {})", i + 1, j + 1)));
                }
            }
            let face = coll.cells[i][j].clone().unwrap_or_else(|| LatticePolyhedron::empty(a.num_vars(), vec![]));
            row.push(restrict(a.entry(i, j), &face)?);
        }
        entries.push(row);
    }
    PolyMatrix::new(entries)
}

/// How [`general_position_check`] decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Evaluate every matrix-compatible restriction at sample points.
    Witness,
    /// Compare the colength oracle with the lattice-count formula.
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// A restriction that is effectively degenerate at a torus point.
    Fail { collection: FaceCollection, point: Vec<Scalar> },
    /// No witness found among the samples; not a proof.
    Inconclusive { collections: usize, points: usize },
    InGeneralPosition { multiplicity: BigInt },
    NotInGeneralPosition { oracle: BigInt, formula: BigInt },
    /// The oracle did not stabilize below the degree cap.
    Unresolved { formula: BigInt, degree_cap: usize },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Fail { .. } => "Fail",
            Verdict::Inconclusive { .. } => "Inconclusive",
            Verdict::InGeneralPosition { .. } => "InGeneralPosition",
            Verdict::NotInGeneralPosition { .. } => "NotInGeneralPosition",
            Verdict::Unresolved { .. } => "Unresolved",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub mode: Mode,
    pub samples: usize,
    /// `None` selects [`default_shift_radius`].
    pub shift_radius: Option<i64>,
    pub seed: u64,
    pub degree_cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { mode: Mode::Oracle, samples: 8, shift_radius: None, seed: 0, degree_cap: crate::colength::DEFAULT_DEGREE_CAP }
    }
}

/// A non-zero Gaussian rational with parts drawn from `{±1..±9}/{1..9}`;
/// the imaginary part may be zero.
pub fn sample_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let part = |rng: &mut ChaCha8Rng| {
        let num = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
        ratio(num, rng.gen_range(1..=9))
    };
    let re = part(rng);
    let im = if rng.gen_bool(0.5) { part(rng) } else { ratio(0, 1) };
    Scalar::new(re, im)
}

/// Sample points: the all-ones point, then seeded random torus points.
pub fn sample_points(m: usize, samples: usize, seed: u64) -> Vec<Vec<Scalar>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![vec![Scalar::one(); m]];
    for _ in 0..samples {
        out.push((0..m).map(|_| sample_scalar(&mut rng)).collect());
    }
    out
}

pub fn general_position_check(a: &PolyMatrix, opts: &CheckOptions) -> Result<Verdict> {
    if a.entries().iter().flatten().any(|p| p.is_zero()) {
        return Err(Error::pre("every entry must be a non-zero polynomial"));
    }
    let grid = a.newton_grid();
    match opts.mode {
        Mode::Witness => {
            let radius = opts.shift_radius.unwrap_or_else(|| default_shift_radius(&grid));
            let collections = enumerate_matrix_compatible(&grid, radius)?;
            let points = sample_points(a.num_vars(), opts.samples, opts.seed);
            for coll in &collections {
                let r = restrict_matrix(a, coll)?;
                for x in &points {
                    let m = ConstMatrix::new(r.eval(x)?)?;
                    if !effectively_nondegenerate(&m) {
                        return Ok(Verdict::Fail { collection: coll.clone(), point: x.clone() });
                    }
                }
            }
            Ok(Verdict::Inconclusive { collections: collections.len(), points: points.len() })
        }
        Mode::Oracle => {
            let formula = multiplicity_formula(&grid)?;
            match multiplicity_oracle(a, opts.degree_cap)? {
                Colength::Finite { value, .. } if value == formula => {
                    Ok(Verdict::InGeneralPosition { multiplicity: value })
                }
                Colength::Finite { value, .. } => Ok(Verdict::NotInGeneralPosition { oracle: value, formula }),
                Colength::Unbounded { degree_cap } => Ok(Verdict::Unresolved { formula, degree_cap }),
            }
        }
    }
}

/// Whether the matrix `(δ_{d_ij}^{α_i+β_j} a_ij(x))` is effectively
/// degenerate.
pub fn verify_homogeneous_witness(
    d: &[Vec<i64>],
    a: &PolyMatrix,
    alpha: &[i64],
    beta: &[i64],
    x: &[Scalar],
) -> Result<bool> {
    let (n, k) = (a.rows(), a.cols());
    if d.len() != n || d.iter().any(|r| r.len() != k) || alpha.len() != n || beta.len() != k {
        return Err(Error::Shape("degree grid, α and β must match the matrix shape".into()));
    }
    if x.iter().all(|c| c.is_zero()) {
        return Err(Error::pre("the point must be non-zero"));
    }
    for i in 0..n {
        for j in 0..k {
            if d[i][j] < alpha[i] + beta[j] {
                return Err(Error::pre(format!("d[{}][{}] < α + β", i + 1, j + 1)));
            }
            let p = a.entry(i, j);
            if !p.is_zero() && (!p.is_homogeneous() || p.degree() != Some(d[i][j])) {
                return Err(Error::pre(format!("entry ({}, {}) is not homogeneous of degree {}", i + 1, j + 1, d[i][j])));
            }
        }
    }
    let vals = a.eval(x)?;
    let entries = (0..n)
        .map(|i| {
            (0..k)
                .map(|j| if d[i][j] == alpha[i] + beta[j] { vals[i][j].clone() } else { Scalar::zero() })
                .collect()
        })
        .collect();
    Ok(!effectively_nondegenerate(&ConstMatrix::new(entries)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    #[test]
    fn effective_nondegeneracy_examples() {
        assert!(effectively_nondegenerate(&ConstMatrix::from_ints(&[&[1, 0], &[0, 1]]).unwrap()));
        // b ≠ 0 forces t_1 = 0.
        assert!(effectively_nondegenerate(&ConstMatrix::from_ints(&[&[1, 2, 3], &[1, 0, 0], &[1, 0, 0]]).unwrap()));
        // a = b = c = 0, d = e = 1: t = (1, 1, −1).
        assert!(!effectively_nondegenerate(&ConstMatrix::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[1, 0, 0]]).unwrap()));
        // The generic pattern of the second collection of the ray example.
        assert!(effectively_nondegenerate(&ConstMatrix::from_ints(&[&[0, 2, 3], &[5, 7, 11], &[13, 17, 19]]).unwrap()));
    }

    fn ray(a: i64) -> LatticePolyhedron {
        LatticePolyhedron::orthant_hull(1, vec![vec![a]]).unwrap()
    }

    fn ray_grid() -> Vec<Vec<LatticePolyhedron>> {
        vec![vec![ray(1), ray(1), ray(1)], vec![ray(1), ray(2), ray(2)], vec![ray(1), ray(2), ray(2)]]
    }

    #[test]
    fn ray_example_has_thirteen_collections() {
        let grid = ray_grid();
        let r = default_shift_radius(&grid);
        let colls = enumerate_matrix_compatible(&grid, r).unwrap();
        assert_eq!(colls.len(), 13);
        let star = |i: usize, j: usize| Some(grid[i][j].bounded_faces().unwrap()[0].0.clone());
        let b1 = FaceCollection {
            cells: vec![vec![star(0, 0), star(0, 1), star(0, 2)], vec![star(1, 0), None, None], vec![star(2, 0), None, None]],
        };
        let b2 = FaceCollection {
            cells: vec![
                vec![None, star(0, 1), star(0, 2)],
                vec![star(1, 0), star(1, 1), star(1, 2)],
                vec![star(2, 0), star(2, 1), star(2, 2)],
            ],
        };
        assert!(colls.contains(&b1));
        assert!(colls.contains(&b2));
        assert_eq!(enumerate_matrix_compatible(&grid, 2 * r).unwrap(), colls);
        assert_eq!(enumerate_matrix_compatible_with(&grid, r, 4).unwrap(), colls);
        // Integer shifts alone reach only ten of them.
        assert_eq!(enumerate_matrix_compatible_with(&grid, r, 1).unwrap().len(), 10);
    }

    #[test]
    fn single_row_gives_compatible_faces() {
        let d = LatticePolyhedron::orthant_hull(2, vec![vec![2, 0], vec![0, 1]]).unwrap();
        let e = LatticePolyhedron::orthant_hull(2, vec![vec![1, 0], vec![0, 3]]).unwrap();
        let colls = enumerate_matrix_compatible(&[vec![d.clone(), e.clone()]], 0).unwrap();
        assert_eq!(colls.len(), LatticePolyhedron::enumerate_compatible(&[d, e]).unwrap().len());
        assert_eq!(colls.len(), 5);
    }

    fn xy(a: i64, b: i64) -> Polynomial {
        let x = Polynomial::var(2, 0).scale(&Scalar::from_int(a));
        x.add(&Polynomial::var(2, 1).scale(&Scalar::from_int(b)))
    }

    #[test]
    fn forced_common_root_is_a_witness() {
        let f = xy(1, -1);
        let a = PolyMatrix::new(vec![vec![f.clone(), f]]).unwrap();
        let opts = CheckOptions { mode: Mode::Witness, ..CheckOptions::default() };
        match general_position_check(&a, &opts).unwrap() {
            Verdict::Fail { point, .. } => assert_eq!(point, vec![Scalar::one(), Scalar::one()]),
            v => panic!("expected a witness, got {v:?}"),
        }
    }

    #[test]
    fn homogeneous_witness() {
        let s = xy(1, 1);
        let y = Polynomial::var(2, 1);
        let e12 = s.pow(2).add(&y.pow(2));
        let e23 = s.pow(2).add(&y.pow(2).scale(&Scalar::from_int(2)));
        let a = PolyMatrix::new(vec![vec![s.clone(), e12, s.clone()], vec![s.clone(), s.clone(), e23]]).unwrap();
        let d = vec![vec![1, 2, 1], vec![1, 1, 2]];
        let pt = |u: i64, v: i64| vec![Scalar::from_int(u), Scalar::from_int(v)];
        assert!(verify_homogeneous_witness(&d, &a, &[1, 1], &[0, 0, 0], &pt(1, -1)).unwrap());
        assert!(!verify_homogeneous_witness(&d, &a, &[1, 1], &[0, 0, 0], &pt(1, 1)).unwrap());
        // α + β below every degree: the filtered matrix is zero.
        assert!(verify_homogeneous_witness(&d, &a, &[0, 0], &[0, 0, 0], &pt(1, 1)).unwrap());
        assert!(verify_homogeneous_witness(&d, &a, &[2, 2], &[0, 0, 0], &pt(1, 1)).is_err());
    }
}
