//! Newton polyhedra of polynomials and the lattice-count formulas for local
//! degrees and matrix multiplicities.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cayley::{formula_sum, formula_terms, FormulaTerm, Grid};
use crate::combin::{block_assignments, combinations, compositions, multisets, nonempty_subsets};
use crate::error::{Error, Result};
use crate::pairs::{mixed_volume_normalized, BoundedPair};
use crate::poly::Polynomial;
use crate::polyhedron::LatticePolyhedron;
use crate::rational::binomial;

/// `conv ⋃ (a + R^m_+)` over the support; empty for the zero polynomial.
pub fn newton_polyhedron(f: &Polynomial) -> LatticePolyhedron {
    let m = f.num_vars();
    if f.is_zero() {
        return LatticePolyhedron::empty(m, (0..m).collect());
    }
    LatticePolyhedron::orthant_hull(m, f.support()).expect("exponents have length m")
}

/// Sum of the terms of `f` whose exponents lie in a bounded set `face`.
pub fn restrict(f: &Polynomial, face: &LatticePolyhedron) -> Result<Polynomial> {
    if face.is_empty() {
        return Ok(Polynomial::zero(f.num_vars()));
    }
    if !face.is_bounded() {
        return Err(Error::Unbounded("restriction to an unbounded face".into()));
    }
    if face.dim() != f.num_vars() {
        return Err(Error::dim(f.num_vars(), face.dim()));
    }
    // Dimensions agree, so membership cannot fail.
    Ok(f.filter(|e| face.contains_lattice(e).unwrap_or(false)))
}

/// Restriction of `f` to the union of the bounded faces of its Newton
/// polyhedron.
pub fn principal_part(f: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::pre("principal part of the zero polynomial"));
    }
    let faces = newton_polyhedron(f).bounded_faces()?;
    Ok(f.filter(|e| faces.iter().any(|(face, _)| face.contains_lattice(e).unwrap_or(false))))
}

fn check_covolume_input(p: &LatticePolyhedron, m: usize) -> Result<()> {
    if p.dim() != m {
        return Err(Error::dim(m, p.dim()));
    }
    if p.is_empty() || !p.is_orthant_kind() || p.generators().iter().flatten().any(|&x| x < 0) {
        return Err(Error::pre(format!("{p} is not a non-empty member of P_+ inside the orthant")));
    }
    if !p.meets_all_axes() {
        return Err(Error::pre(format!("the complement of {p} is unbounded")));
    }
    Ok(())
}

/// Local degree of a generic map with the given Newton polyhedra:
/// `Σ_{∅≠I} (−1)^{m−|I|} I(Σ_{i∈I} Δ_i)`.
pub fn bernstein_local(deltas: &[LatticePolyhedron]) -> Result<BigInt> {
    let m = deltas.len();
    if m == 0 {
        return Err(Error::pre("need at least one polyhedron"));
    }
    for d in deltas {
        check_covolume_input(d, m)?;
    }
    let mut total = BigInt::zero();
    for subset in nonempty_subsets(m) {
        let mut s = deltas[subset[0]].clone();
        for &i in &subset[1..] {
            s = s.minkowski_sum(&deltas[i])?;
        }
        let c = s.complement_count()?;
        if (m - subset.len()) % 2 == 0 {
            total += c;
        } else {
            total -= c;
        }
    }
    Ok(total)
}

fn orthant_grid(grid: &[Vec<LatticePolyhedron>]) -> Result<Grid> {
    let n = grid.len();
    let k = grid.first().map_or(0, |r| r.len());
    if n == 0 || k < n || grid.iter().any(|r| r.len() != k) {
        return Err(Error::Shape(format!("grid must be n × k with 1 <= n <= k, got {n} rows")));
    }
    let m = k - n + 1;
    for d in grid.iter().flatten() {
        check_covolume_input(d, m)?;
    }
    Grid::orthant(grid.iter().map(|r| r.iter().cloned().map(Some).collect()).collect())
}

/// Multiplicity of a generic `n × k` matrix with the given Newton
/// polyhedra of entries, as a signed sum of complement counts of joins.
pub fn multiplicity_formula(grid: &[Vec<LatticePolyhedron>]) -> Result<BigInt> {
    formula_sum(&orthant_grid(grid)?)
}

/// The individual terms of [`multiplicity_formula`].
pub fn multiplicity_terms(grid: &[Vec<LatticePolyhedron>]) -> Result<Vec<FormulaTerm>> {
    formula_terms(&orthant_grid(grid)?)
}

fn check_degree_grid(d: &[Vec<i64>]) -> Result<(usize, usize)> {
    let n = d.len();
    let k = d.first().map_or(0, |r| r.len());
    if n == 0 || k < n || d.iter().any(|r| r.len() != k) {
        return Err(Error::Shape(format!("degree grid must be n × k with 1 <= n <= k, got {n} rows")));
    }
    Ok((n, k))
}

/// `d^J_b`: the least total degree over ordered partitions of `J` into
/// blocks of sizes `b`. `J` holds 0-based column indices.
pub fn homogeneous_min_degrees(d: &[Vec<i64>], cols: &[usize], b: &[usize]) -> Result<i64> {
    let (n, k) = check_degree_grid(d)?;
    if b.len() != n || b.iter().sum::<usize>() != cols.len() {
        return Err(Error::Shape("block sizes must sum to |J|, one per row".into()));
    }
    if cols.iter().any(|&j| j >= k) {
        return Err(Error::Shape("column index out of range".into()));
    }
    Ok(block_assignments(cols, b)
        .iter()
        .map(|a| a.iter().zip(cols).map(|(&i, &j)| d[i][j]).sum())
        .min()
        .expect("sizes sum to |J|, so a partition exists"))
}

/// Multiplicity of a generic homogeneous matrix with entry degrees `d`:
/// `Σ (−1)^{k−|J|} C(m + d^J_b − 1, m)`.
pub fn homogeneous_multiplicity(d: &[Vec<i64>], m: usize) -> Result<BigInt> {
    let (n, k) = check_degree_grid(d)?;
    if m != k - n + 1 {
        return Err(Error::Shape(format!("m must be k - n + 1 = {}", k - n + 1)));
    }
    if d.iter().flatten().any(|&x| x < 1) {
        return Err(Error::pre("degrees must be positive"));
    }
    let mut total = BigInt::zero();
    for cols in nonempty_subsets(k) {
        let sign = if (k - cols.len()) % 2 == 0 { 1 } else { -1 };
        for b in compositions(cols.len(), n) {
            let dj = homogeneous_min_degrees(d, &cols, &b)?;
            total += binomial(m as i64 + dj - 1, m as i64) * sign;
        }
    }
    Ok(total)
}

/// `d·(standard simplex) + R^m_+`, the Newton polyhedron of a generic
/// homogeneous polynomial of degree `d`.
pub fn simplex_polyhedron(m: usize, d: i64) -> LatticePolyhedron {
    let gens = (0..m)
        .map(|i| {
            let mut v = vec![0; m];
            v[i] = d;
            v
        })
        .collect();
    LatticePolyhedron::orthant_hull(m, gens).expect("generators have length m")
}

/// Grid of [`simplex_polyhedron`]s for a degree grid.
pub fn simplex_grid(d: &[Vec<i64>]) -> Result<Vec<Vec<LatticePolyhedron>>> {
    let (n, k) = check_degree_grid(d)?;
    let m = k - n + 1;
    Ok(d.iter().map(|r| r.iter().map(|&x| simplex_polyhedron(m, x)).collect()).collect())
}

fn covolume_pairs(deltas: &[LatticePolyhedron], m: usize) -> Result<Vec<BoundedPair>> {
    deltas
        .iter()
        .map(|d| {
            check_covolume_input(d, m)?;
            BoundedPair::covolume(d.clone())
        })
        .collect()
}

/// Multiplicity when every row of the grid equals `Δ_1, …, Δ_k`:
/// `Σ_{j_1<…<j_m} m!·MV(Δ_{j_1}, …, Δ_{j_m})`.
pub fn uniform_column_multiplicity(deltas: &[LatticePolyhedron], m: usize) -> Result<BigInt> {
    if m == 0 || m > deltas.len() {
        return Err(Error::Shape(format!("need 1 <= m <= k, got m={m}, k={}", deltas.len())));
    }
    let pairs = covolume_pairs(deltas, m)?;
    let mut total = BigInt::zero();
    for c in combinations(pairs.len(), m) {
        let chosen: Vec<BoundedPair> = c.iter().map(|&j| pairs[j].clone()).collect();
        total += mixed_volume_normalized(&chosen)?;
    }
    Ok(total)
}

/// Multiplicity when every column of the grid equals `Δ_1, …, Δ_n`:
/// `Σ_{i_1<=…<=i_m} m!·MV(Δ_{i_1}, …, Δ_{i_m})` with indices over the rows.
pub fn uniform_row_multiplicity(deltas: &[LatticePolyhedron], k: usize, m: usize) -> Result<BigInt> {
    let n = deltas.len();
    if n == 0 || k < n || m != k - n + 1 {
        return Err(Error::Shape(format!("need m = k - n + 1, got n={n}, k={k}, m={m}")));
    }
    let pairs = covolume_pairs(deltas, m)?;
    let mut total = BigInt::zero();
    for c in multisets(n, m) {
        let chosen: Vec<BoundedPair> = c.iter().map(|&i| pairs[i].clone()).collect();
        total += mixed_volume_normalized(&chosen)?;
    }
    Ok(total)
}
