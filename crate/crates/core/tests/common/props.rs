//! One randomized case of each property suite, driven by a seed so the same
//! checks back both the proptest suites and the acceptance run.

use degmult::colength::{colength, truncated_colength, Colength};
use degmult::genpos::{effectively_nondegenerate, enumerate_matrix_compatible, ConstMatrix};
use degmult::pairs::{mixed_volume_pairs, mixed_volume_truncation, truncation_level};
use degmult::poly::Polynomial;
use degmult::{BoundedPair, LatticePolyhedron, Scalar};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::*;

pub type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: degmult::Error) -> String {
    e.to_string()
}

/// Polyhedron in `R^q` with up to 4 generators in `[-3, 3]^q` and the given
/// recession axes; empty one time in ten.
pub fn random_polyhedron(r: &mut ChaCha8Rng, q: usize, recession: &[usize]) -> LatticePolyhedron {
    if r.gen_bool(0.1) {
        return LatticePolyhedron::empty(q, recession.to_vec());
    }
    let count = r.gen_range(1..=4);
    let gens = (0..count).map(|_| (0..q).map(|_| r.gen_range(-3..=3)).collect()).collect();
    LatticePolyhedron::new(q, gens, recession.to_vec()).unwrap()
}

/// `+` and `∨` are associative and commutative and `+` distributes over `∨`.
pub fn semiring_laws(seed: u64) -> Check {
    let mut r = rng(seed);
    let q = r.gen_range(1..=3);
    let recession: Vec<usize> = (0..q).filter(|_| r.gen_bool(0.5)).collect();
    let a = random_polyhedron(&mut r, q, &recession);
    let b = random_polyhedron(&mut r, q, &recession);
    let c = random_polyhedron(&mut r, q, &recession);
    let ctx = || format!("A={a}, B={b}, C={c}");
    let sum = |x: &LatticePolyhedron, y: &LatticePolyhedron| x.minkowski_sum(y).unwrap();
    let join = |x: &LatticePolyhedron, y: &LatticePolyhedron| x.join(y).unwrap();
    ensure(sum(&a, &b) == sum(&b, &a), || format!("+ not commutative: {}", ctx()))?;
    ensure(join(&a, &b) == join(&b, &a), || format!("∨ not commutative: {}", ctx()))?;
    ensure(sum(&sum(&a, &b), &c) == sum(&a, &sum(&b, &c)), || format!("+ not associative: {}", ctx()))?;
    ensure(join(&join(&a, &b), &c) == join(&a, &join(&b, &c)), || format!("∨ not associative: {}", ctx()))?;
    ensure(sum(&join(&a, &b), &c) == join(&sum(&a, &c), &sum(&b, &c)), || format!("not distributive: {}", ctx()))?;
    if recession.len() == q {
        let unit = LatticePolyhedron::orthant(q);
        ensure(sum(&a, &unit) == a, || format!("orthant is not the unit: {}", ctx()))?;
    }
    Ok(())
}

/// Orthant-kind lattice pair `(Γ, Δ)` in `R^q` with both components
/// meeting every axis, or a covolume pair `(R^q_+, Δ)`.
pub fn random_pair(r: &mut ChaCha8Rng, q: usize) -> BoundedPair {
    let max = if q == 3 { 2 } else { 3 };
    let delta = orthant_poly(r, q, max);
    if r.gen_bool(0.5) {
        BoundedPair::covolume(delta).unwrap()
    } else {
        BoundedPair::new(orthant_poly(r, q, max), delta).unwrap()
    }
}

fn random_pairs(r: &mut ChaCha8Rng, q: usize) -> Vec<BoundedPair> {
    (0..q).map(|_| random_pair(r, q)).collect()
}

fn pair_dim(r: &mut ChaCha8Rng) -> usize {
    if r.gen_bool(0.75) {
        2
    } else {
        3
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut v = p.clone();
            v.insert(i, n - 1);
            out.push(v);
        }
    }
    out
}

/// Mixed volume is symmetric, linear in the first argument, and equals the
/// pair volume on the diagonal.
pub fn mixed_volume_laws(seed: u64) -> Check {
    let mut r = rng(seed);
    let q = pair_dim(&mut r);
    let pairs = random_pairs(&mut r, q);
    let mv = mixed_volume_pairs(&pairs).map_err(err)?;
    for perm in permutations(q) {
        let permuted: Vec<BoundedPair> = perm.iter().map(|&i| pairs[i].clone()).collect();
        let v = mixed_volume_pairs(&permuted).map_err(err)?;
        ensure(v == mv, || format!("MV changes under permutation {perm:?}: {mv} vs {v}"))?;
    }
    let extra = random_pair(&mut r, q);
    let mut summed = pairs.clone();
    summed[0] = pairs[0].sum(&extra).map_err(err)?;
    let mut swapped = pairs.clone();
    swapped[0] = extra.clone();
    let lhs = mixed_volume_pairs(&summed).map_err(err)?;
    let rhs = &mv + mixed_volume_pairs(&swapped).map_err(err)?;
    ensure(lhs == rhs, || format!("MV not additive in the first argument: {lhs} vs {rhs}"))?;
    let diagonal = mixed_volume_pairs(&vec![pairs[0].clone(); q]).map_err(err)?;
    let volume = pairs[0].volume();
    ensure(diagonal == volume, || format!("MV(A,…,A) = {diagonal} but Vol(A) = {volume} for {}", pairs[0]))
}

/// Lattice-count and truncation mixed volumes agree, also above the
/// certified level.
pub fn mixed_volume_agreement(seed: u64) -> Check {
    let mut r = rng(seed);
    let q = pair_dim(&mut r);
    let pairs = random_pairs(&mut r, q);
    let counts = mixed_volume_pairs(&pairs).map_err(err)?;
    let level = truncation_level(&pairs) + r.gen_range(0..=2);
    let trunc = mixed_volume_truncation(&pairs, level).map_err(err)?;
    ensure(counts == trunc, || format!("counts {counts} vs truncation {trunc} at level {level}"))
}

/// Random generators in two variables with finite colength: pure powers of
/// both variables (possibly perturbed) plus random terms.
fn random_ideal(r: &mut ChaCha8Rng) -> Vec<Polynomial> {
    let mut gens = Vec::new();
    for s in 0..2 {
        let mut support = vec![{
            let mut e = vec![0, 0];
            e[s] = r.gen_range(1..=4);
            e
        }];
        for _ in 0..r.gen_range(0..=2) {
            support.push(vec![r.gen_range(0..=3), r.gen_range(0..=3)]);
        }
        support.retain(|e| e != &vec![0, 0]);
        gens.push(random_poly(r, 2, &support));
    }
    if r.gen_bool(0.5) {
        let support: Vec<Vec<i64>> = (0..2).map(|_| vec![r.gen_range(1..=2), r.gen_range(1..=2)]).collect();
        gens.push(random_poly(r, 2, &support));
    }
    gens
}

/// Truncated colengths never decrease, stay put once two consecutive values
/// agree, and the certified value is that plateau.
pub fn colength_stabilization(seed: u64) -> Check {
    let mut r = rng(seed);
    let gens = random_ideal(&mut r);
    let Colength::Finite { value, degree } = colength(&gens, 2, 24).map_err(err)? else {
        return Err(format!("no stabilization for {gens:?}"));
    };
    let seq: Vec<usize> = (1..=degree + 3).map(|n| truncated_colength(&gens, 2, n)).collect();
    ensure(seq.windows(2).all(|w| w[0] <= w[1]), || format!("not monotone: {seq:?}"))?;
    let plateau = &seq[degree - 1..];
    ensure(plateau.iter().all(|&c| c == plateau[0]), || format!("moved after stabilizing at {degree}: {seq:?}"))?;
    ensure(value == plateau[0].into(), || format!("value {value} is not the plateau {seq:?}"))
}

/// Small integer scalars and zeros, so degenerate matrices are common.
fn sparse_scalar(r: &mut ChaCha8Rng) -> Scalar {
    if r.gen_bool(0.4) {
        Scalar::zero()
    } else {
        Scalar::from_int(r.gen_range(-2..=2))
    }
}

/// Effective non-degeneracy is unchanged by non-zero row scalings and
/// column permutations.
pub fn nondegeneracy_invariance(seed: u64) -> Check {
    let mut r = rng(seed);
    let n = r.gen_range(1..=3);
    let k = r.gen_range(n..=4);
    let mut rows: Vec<Vec<Scalar>> = (0..n).map(|_| (0..k).map(|_| sparse_scalar(&mut r)).collect()).collect();
    if n > 1 && r.gen_bool(0.3) {
        // A dependent last row makes degenerate cases frequent.
        let c = gaussian(&mut r);
        rows[n - 1] = rows[0].iter().map(|x| x * &c).collect();
    }
    let before = effectively_nondegenerate(&ConstMatrix::new(rows.clone()).map_err(err)?);
    let mut cols: Vec<usize> = (0..k).collect();
    cols.shuffle(&mut r);
    let scaled: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|row| {
            let c = gaussian(&mut r);
            cols.iter().map(|&j| &row[j] * &c).collect()
        })
        .collect();
    let after = effectively_nondegenerate(&ConstMatrix::new(scaled).map_err(err)?);
    ensure(before == after, || format!("verdict changed from {before} to {after} for {rows:?}"))
}

/// The collections found at radius `R` are among those found at `R + 1`.
pub fn enumeration_monotone(seed: u64) -> Check {
    let mut r = rng(seed);
    let (n, k) = [(1, 2), (2, 2), (2, 3)][r.gen_range(0..3)];
    let m = k - n + 1;
    let max = if m == 1 { 3 } else { 2 };
    let grid: Vec<Vec<LatticePolyhedron>> =
        (0..n).map(|_| (0..k).map(|_| orthant_poly(&mut r, m, max)).collect()).collect();
    let radius = r.gen_range(0..=2);
    let small = enumerate_matrix_compatible(&grid, radius).map_err(err)?;
    let large = enumerate_matrix_compatible(&grid, radius + 1).map_err(err)?;
    let missing: Vec<_> = small.iter().filter(|c| !large.contains(c)).collect();
    ensure(missing.is_empty(), || format!("radius {radius} finds {} collections absent at radius {}", missing.len(), radius + 1))
}
