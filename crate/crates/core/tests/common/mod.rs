//! Seeded random instances shared by the integration suites.
#![allow(dead_code)]

use degmult::poly::{PolyMatrix, Polynomial};
use degmult::rational::ratio;
use degmult::{LatticePolyhedron, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub mod cases;
pub mod props;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Orthant polyhedron in `R^m` meeting every axis, small coordinates.
pub fn orthant_poly(r: &mut ChaCha8Rng, m: usize, max: i64) -> LatticePolyhedron {
    let mut gens = Vec::new();
    for s in 0..m {
        let mut v = vec![0; m];
        v[s] = r.gen_range(1..=max);
        gens.push(v);
    }
    for _ in 0..r.gen_range(0..=2) {
        gens.push((0..m).map(|_| r.gen_range(0..=max)).collect());
    }
    LatticePolyhedron::orthant_hull(m, gens).unwrap()
}

/// Bounded lattice polytope in `R^m` with 1 to 3 generators.
pub fn bounded_poly(r: &mut ChaCha8Rng, m: usize, max: i64) -> LatticePolyhedron {
    let count = r.gen_range(1..=3);
    let gens = (0..count).map(|_| (0..m).map(|_| r.gen_range(0..=max)).collect()).collect();
    LatticePolyhedron::polytope(m, gens).unwrap()
}

/// `n × k` grid with occasional empty cells, every column keeping at least
/// one entry.
pub fn sparse_grid(
    r: &mut ChaCha8Rng,
    n: usize,
    k: usize,
    empty_rate: f64,
    mut cell: impl FnMut(&mut ChaCha8Rng) -> LatticePolyhedron,
) -> Vec<Vec<Option<LatticePolyhedron>>> {
    let mut g: Vec<Vec<Option<LatticePolyhedron>>> =
        (0..n).map(|_| (0..k).map(|_| Some(cell(r))).collect()).collect();
    for j in 0..k {
        for i in 0..n {
            if r.gen_bool(empty_rate) {
                g[i][j] = None;
            }
        }
        if g.iter().all(|row| row[j].is_none()) {
            let i = r.gen_range(0..n);
            g[i][j] = Some(cell(r));
        }
    }
    g
}

/// Nonzero Gaussian rational with parts from `{±1..±9}/{1..9}` (imaginary
/// part possibly zero).
pub fn gaussian(r: &mut ChaCha8Rng) -> Scalar {
    let part = |r: &mut ChaCha8Rng| {
        let num = r.gen_range(1..=9) * if r.gen_bool(0.5) { 1 } else { -1 };
        ratio(num, r.gen_range(1..=9))
    };
    let re = part(r);
    let im = if r.gen_bool(0.5) { part(r) } else { ratio(0, 1) };
    Scalar::new(re, im)
}

/// Polynomial with random coefficients on the given support.
pub fn random_poly(r: &mut ChaCha8Rng, m: usize, support: &[Vec<i64>]) -> Polynomial {
    Polynomial::from_terms(m, support.iter().map(|e| (e.clone(), gaussian(r)))).unwrap()
}

/// Generic homogeneous polynomial of degree `d` in two variables.
pub fn dense_homogeneous(r: &mut ChaCha8Rng, d: i64) -> Polynomial {
    let support: Vec<Vec<i64>> = (0..=d).map(|a| vec![a, d - a]).collect();
    random_poly(r, 2, &support)
}

pub fn homogeneous_matrix(r: &mut ChaCha8Rng, d: &[Vec<i64>]) -> PolyMatrix {
    PolyMatrix::new(d.iter().map(|row| row.iter().map(|&x| dense_homogeneous(r, x)).collect()).collect()).unwrap()
}

pub fn orth(g: &[&[i64]]) -> LatticePolyhedron {
    LatticePolyhedron::orthant_hull(g[0].len(), g.iter().map(|v| v.to_vec()).collect()).unwrap()
}
