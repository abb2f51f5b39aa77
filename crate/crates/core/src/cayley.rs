//! Cayley polyhedra, grids of pairs, and the inclusion–exclusion formula
//! for the mixed volume of the column Cayley bodies of a grid.
//!
//! The Cayley polyhedron `P_1 * … * P_n` lives in `R^{n−1} ⊕ R^m`; the
//! copy of `P_i` sits over `b_i`, where `b_1, …, b_{n−1}` are the standard
//! basis vectors and `b_n = 0`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::combin::{block_assignments, combinations, compositions, nonempty_subsets};
use crate::error::{Error, Result};
use crate::lp::{self, Constraint, Relation};
use crate::pairs::{self, BoundedPair};
use crate::polyhedron::LatticePolyhedron;
use crate::rational::{factorial, rank};

type Rat = BigRational;

fn offset(i: usize, n: usize) -> Vec<i64> {
    let mut b = vec![0; n - 1];
    if i + 1 < n {
        b[i] = 1;
    }
    b
}

/// `P_1 * … * P_n`. Empty inputs contribute no generators.
pub fn cayley(polys: &[LatticePolyhedron]) -> Result<LatticePolyhedron> {
    let first = polys.first().ok_or_else(|| Error::pre("need at least one polyhedron"))?;
    let (n, m) = (polys.len(), first.dim());
    for p in polys {
        if p.dim() != m {
            return Err(Error::dim(m, p.dim()));
        }
        if p.recession_axes() != first.recession_axes() {
            return Err(Error::RecessionMismatch(first.recession_axes().to_vec(), p.recession_axes().to_vec()));
        }
    }
    let mut gens = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        let b = offset(i, n);
        for g in p.generators() {
            let mut v = b.clone();
            v.extend_from_slice(g);
            gens.push(v);
        }
    }
    let rec = first.recession_axes().iter().map(|s| s + n - 1).collect();
    LatticePolyhedron::new(n - 1 + m, gens, rec)
}

/// `(Γ_1, Δ_1) * … * (Γ_n, Δ_n) = (Γ_1 * … * Γ_n, Δ_1 * … * Δ_n)`.
pub fn cayley_pair(pairs: &[BoundedPair]) -> Result<BoundedPair> {
    let gs: Vec<_> = pairs.iter().map(|p| p.gamma().clone()).collect();
    let ds: Vec<_> = pairs.iter().map(|p| p.delta().clone()).collect();
    BoundedPair::new(cayley(&gs)?, cayley(&ds)?)
}

/// Which kind of polyhedra a grid was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// Entries `Δ` with recession cone `R^m_+`, read as pairs `(R^m_+, Δ)`.
    Orthant,
    /// Bounded lattice polytopes `B`, read as pairs `(B, {0})`.
    Bounded,
    /// Explicit pairs.
    Pairs,
}

/// An `n × k` grid of pairs in `R^m`, `m = k − n + 1`; `None` marks an empty
/// entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    n: usize,
    k: usize,
    m: usize,
    recession: Vec<usize>,
    kind: GridKind,
    cells: Vec<Vec<Option<BoundedPair>>>,
}

fn grid_shape<T>(cells: &[Vec<T>]) -> Result<(usize, usize, usize)> {
    let n = cells.len();
    let k = cells.first().map_or(0, |r| r.len());
    if n == 0 || k < n || cells.iter().any(|r| r.len() != k) {
        return Err(Error::Shape(format!("grid must be n × k with 1 <= n <= k, got {n} rows")));
    }
    Ok((n, k, k - n + 1))
}

impl Grid {
    pub fn from_pairs(cells: Vec<Vec<Option<BoundedPair>>>) -> Result<Self> {
        Self::build(cells, GridKind::Pairs)
    }

    fn build(cells: Vec<Vec<Option<BoundedPair>>>, kind: GridKind) -> Result<Self> {
        let (n, k, m) = grid_shape(&cells)?;
        let first = cells
            .iter()
            .flatten()
            .flatten()
            .next()
            .ok_or_else(|| Error::pre("grid has no non-empty entry"))?;
        let recession = first.recession_axes().to_vec();
        for p in cells.iter().flatten().flatten() {
            if p.dim() != m {
                return Err(Error::Shape(format!("entry of dimension {}, expected m = {m}", p.dim())));
            }
            if p.recession_axes() != recession.as_slice() {
                return Err(Error::pre("entries of mixed kinds"));
            }
        }
        Ok(Self { n, k, m, recession, kind, cells })
    }

    /// Grid of polyhedra with full orthant recession cone.
    pub fn orthant(cells: Vec<Vec<Option<LatticePolyhedron>>>) -> Result<Self> {
        let pairs = cells
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| match c {
                        Some(p) if !p.is_empty() => {
                            if !p.is_orthant_kind() {
                                return Err(Error::pre("orthant grid entry with a smaller recession cone"));
                            }
                            BoundedPair::covolume(p).map(Some)
                        }
                        _ => Ok(None),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::build(pairs, GridKind::Orthant)
    }

    /// Grid of bounded lattice polytopes.
    pub fn bounded(cells: Vec<Vec<Option<LatticePolyhedron>>>) -> Result<Self> {
        let pairs = cells
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| match c {
                        Some(p) if !p.is_empty() => {
                            if !p.is_bounded() {
                                return Err(Error::pre("bounded grid entry with a recession cone"));
                            }
                            let origin = LatticePolyhedron::point(vec![0; p.dim()]);
                            BoundedPair::new(p, origin).map(Some)
                        }
                        _ => Ok(None),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::build(pairs, GridKind::Bounded)
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn cell(&self, i: usize, j: usize) -> Option<&BoundedPair> {
        self.cells[i][j].as_ref()
    }

    fn empty_pair(&self) -> BoundedPair {
        BoundedPair::empty(self.m, self.recession.clone())
    }

    /// Cayley pair of column `j`.
    pub fn column_cayley(&self, j: usize) -> Result<BoundedPair> {
        let col: Vec<BoundedPair> =
            (0..self.n).map(|i| self.cells[i][j].clone().unwrap_or_else(|| self.empty_pair())).collect();
        cayley_pair(&col)
    }

    /// Cayley pairs of all columns, in column order.
    pub fn column_cayley_bodies(&self) -> Result<Vec<BoundedPair>> {
        (0..self.k).map(|j| self.column_cayley(j)).collect()
    }
}

/// One term of the formula: columns `J`, composition `b`, sign, and the
/// lattice count of the joined pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaTerm {
    pub columns: Vec<usize>,
    pub composition: Vec<usize>,
    pub sign: i64,
    pub count: BigInt,
}

/// Memoized sums `Σ_t B_{rows[t], cols[t]}` keyed by the cell list.
struct SumCache<'a> {
    grid: &'a Grid,
    memo: HashMap<Vec<(usize, usize)>, Option<BoundedPair>>,
}

impl<'a> SumCache<'a> {
    fn get(&mut self, key: &[(usize, usize)]) -> Result<Option<BoundedPair>> {
        if let Some(v) = self.memo.get(key) {
            return Ok(v.clone());
        }
        let (i, j) = *key.last().unwrap();
        let v = match &self.grid.cells[i][j] {
            None => None,
            Some(cell) if key.len() == 1 => Some(cell.clone()),
            Some(cell) => match self.get(&key[..key.len() - 1])? {
                None => None,
                Some(prefix) => Some(prefix.sum(cell)?),
            },
        };
        self.memo.insert(key.to_vec(), v.clone());
        Ok(v)
    }
}

/// The joined pair `⋁_{J_1 ⊔ … ⊔ J_n = J, |J_i| = b_i} Σ_{i, j ∈ J_i} B_{i,j}`
/// over the given columns, or `None` when every summand is empty.
fn joined(cache: &mut SumCache<'_>, cols: &[usize], b: &[usize]) -> Result<Option<BoundedPair>> {
    let mut acc: Option<BoundedPair> = None;
    for assign in block_assignments(cols, b) {
        let key: Vec<(usize, usize)> = assign.iter().zip(cols).map(|(&i, &j)| (i, j)).collect();
        if let Some(s) = cache.get(&key)? {
            acc = Some(match acc {
                None => s,
                Some(a) => a.join(&s)?,
            });
        }
    }
    Ok(acc)
}

/// Every term of the formula, in order of `|J|`, then `J`, then `b`.
pub fn formula_terms(grid: &Grid) -> Result<Vec<FormulaTerm>> {
    let mut cache = SumCache { grid, memo: HashMap::new() };
    let mut out = Vec::new();
    for cols in nonempty_subsets(grid.k) {
        let sign = if (grid.k - cols.len()) % 2 == 0 { 1 } else { -1 };
        for b in compositions(cols.len(), grid.n) {
            let count = joined(&mut cache, &cols, &b)?.map_or_else(BigInt::zero, |p| p.lattice_count());
            out.push(FormulaTerm { columns: cols.clone(), composition: b, sign, count });
        }
    }
    Ok(out)
}

/// `k!` times the formula value: the signed sum of the term counts.
pub fn formula_sum(grid: &Grid) -> Result<BigInt> {
    Ok(formula_terms(grid)?.iter().map(|t| &t.count * t.sign).sum())
}

/// Mixed volume of the column Cayley bodies of the grid, computed from
/// lattice counts in `R^m` only.
pub fn cayley_mv_formula(grid: &Grid) -> Result<Rat> {
    Ok(Rat::new(formula_sum(grid)?, factorial(grid.k)))
}

/// Mixed volume of the column Cayley bodies computed directly in
/// `R^{n−1+m}`: lattice counts of pairs for orthant and pair grids,
/// classical volumes for bounded grids.
pub fn cayley_mv_direct(grid: &Grid) -> Result<Rat> {
    let cols = grid.column_cayley_bodies()?;
    match grid.kind {
        GridKind::Bounded => {
            let bodies: Vec<LatticePolyhedron> = cols.iter().map(|p| p.gamma().clone()).collect();
            pairs::classical_mixed_volume(&bodies)
        }
        _ => pairs::mixed_volume_pairs(&cols),
    }
}

/// `(m+n−1)!·MV((D, Δ_{1,1} * … * Δ_{n,1}), …, (D, Δ_{1,k} * … * Δ_{n,k}))`.
pub fn multiplicity_cayley(grid: &[Vec<LatticePolyhedron>]) -> Result<BigInt> {
    grid_shape(grid)?;
    for p in grid.iter().flatten() {
        if p.is_empty() || !p.is_orthant_kind() {
            return Err(Error::pre("every entry must be a non-empty polyhedron with recession cone R^m_+"));
        }
        if !p.meets_all_axes() {
            return Err(Error::pre(format!("{p} does not intersect all coordinate axes")));
        }
    }
    let cells = grid.iter().map(|r| r.iter().cloned().map(Some).collect()).collect();
    let g = Grid::orthant(cells)?;
    pairs::mixed_volume_normalized(&g.column_cayley_bodies()?)
}

/// The fiber `{y : (a, y) ∈ P}` of a polyhedron in `R^{n−1} ⊕ R^m` over a
/// lattice point `a ∈ Z^{n−1}`. Recession axes of `P` must be trailing.
pub fn slice(p: &LatticePolyhedron, a: &[i64]) -> Result<LatticePolyhedron> {
    let lead = a.len();
    if lead > p.dim() {
        return Err(Error::dim(p.dim(), lead));
    }
    if p.recession_axes().iter().any(|&s| s < lead) {
        return Err(Error::pre("recession direction along the sliced coordinates"));
    }
    let m = p.dim() - lead;
    let rec: Vec<usize> = p.recession_axes().iter().map(|s| s - lead).collect();
    if p.is_empty() {
        return Ok(LatticePolyhedron::empty(m, rec));
    }
    // Vertices of the slice are images of basic feasible solutions of
    // {λ >= 0, Σλ = 1, Σλ g_lead = a}; the system has lead + 1 rows.
    let gens = p.generators();
    let row = |g: &[i64]| -> Vec<Rat> {
        std::iter::once(Rat::from_integer(1.into())).chain(g[..lead].iter().map(|&x| Rat::from_integer(x.into()))).collect()
    };
    let rhs: Vec<Rat> =
        std::iter::once(Rat::from_integer(1.into())).chain(a.iter().map(|&x| Rat::from_integer(x.into()))).collect();
    let mut points: Vec<Vec<Rat>> = Vec::new();
    for size in 1..=(lead + 1).min(gens.len()) {
        for support in combinations(gens.len(), size) {
            let cols: Vec<Vec<Rat>> = support.iter().map(|&t| row(&gens[t])).collect();
            if rank(&cols) < size {
                continue;
            }
            // Solve Σ λ_t col_t = rhs on the support through the LP solver,
            // which also certifies non-negativity.
            let cons: Vec<Constraint> = (0..=lead)
                .map(|r| Constraint::new(cols.iter().map(|c| c[r].clone()).collect(), Relation::Eq, rhs[r].clone()))
                .collect();
            if let Some(lambda) = lp::feasible(size, &cons) {
                let y: Vec<Rat> = (lead..p.dim())
                    .map(|c| {
                        support
                            .iter()
                            .zip(&lambda)
                            .fold(Rat::zero(), |acc, (&t, l)| acc + l * Rat::from_integer(gens[t][c].into()))
                    })
                    .collect();
                points.push(y);
            }
        }
    }
    if points.is_empty() {
        return Ok(LatticePolyhedron::empty(m, rec));
    }
    LatticePolyhedron::from_rational(m, points, rec)
}

/// Both sides of the identity expressing the lattice count of a sum of
/// Cayley pairs through joins of sums of the entries. `columns[j][i]` is
/// the pair in row `i` of the `j`-th Cayley factor.
pub fn intsum_sides(columns: &[Vec<BoundedPair>]) -> Result<(BigInt, BigInt)> {
    let p = columns.len();
    let n = columns.first().map_or(0, |c| c.len());
    if p == 0 || n == 0 || columns.iter().any(|c| c.len() != n) {
        return Err(Error::Shape("need p >= 1 columns of equal length n >= 1".into()));
    }
    let mut total: Option<BoundedPair> = None;
    for col in columns {
        let c = cayley_pair(col)?;
        total = Some(match total {
            None => c,
            Some(t) => t.sum(&c)?,
        });
    }
    let lhs = total.unwrap().lattice_count();
    let cells: Vec<Vec<Option<BoundedPair>>> =
        (0..n).map(|i| (0..p).map(|j| Some(columns[j][i].clone())).collect()).collect();
    let grid = Grid { n, k: p, m: columns[0][0].dim(), recession: columns[0][0].recession_axes().to_vec(), kind: GridKind::Pairs, cells };
    let mut cache = SumCache { grid: &grid, memo: HashMap::new() };
    let all: Vec<usize> = (0..p).collect();
    let mut rhs = BigInt::zero();
    for b in compositions(p, n) {
        if let Some(j) = joined(&mut cache, &all, &b)? {
            rhs += j.lattice_count();
        }
    }
    Ok((lhs, rhs))
}

/// The join over ordered partitions of `{1..p}` with block sizes `a` of the
/// sums `Σ_{i, j ∈ J_i} Δ_{i,j}`, where `entries[j][i]` is `Δ_{i,j}`.
pub fn partition_join(entries: &[Vec<LatticePolyhedron>], a: &[usize]) -> Result<LatticePolyhedron> {
    let p = entries.len();
    let first = entries.first().and_then(|c| c.first()).ok_or_else(|| Error::pre("no entries"))?;
    let mut acc = LatticePolyhedron::empty(first.dim(), first.recession_axes().to_vec());
    let all: Vec<usize> = (0..p).collect();
    for assign in block_assignments(&all, a) {
        let mut s: Option<LatticePolyhedron> = None;
        for (j, &i) in assign.iter().enumerate() {
            let d = &entries[j][i];
            s = Some(match s {
                None => d.clone(),
                Some(t) => t.minkowski_sum(d)?,
            });
        }
        acc = acc.join(&s.unwrap())?;
    }
    Ok(acc)
}
