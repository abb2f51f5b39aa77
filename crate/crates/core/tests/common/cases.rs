//! Randomized instances for the multiplicity, fan and envelope suites.

use degmult::cayley::multiplicity_cayley;
use degmult::colength::{multiplicity_oracle, Colength, DEFAULT_DEGREE_CAP};
use degmult::envelope::{minimax_check, standard_simplex};
use degmult::fans::{check_oda, dual_fan, fans_transversal_wrt_shifts};
use degmult::newton::multiplicity_formula;
use degmult::poly::PolyMatrix;
use degmult::rational::{ratio, Rat};
use degmult::LatticePolyhedron;
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::props::Check;
use super::*;

pub const SHAPES: [(usize, usize, usize); 3] = [(1, 2, 2), (2, 2, 3), (1, 3, 3)];

/// Random full orthant grid of the given shape with `m = k - n + 1`.
pub fn orthant_grid(r: &mut ChaCha8Rng, (m, n, k): (usize, usize, usize)) -> Vec<Vec<LatticePolyhedron>> {
    let max = if m == 1 { 4 } else { 3 };
    (0..n).map(|_| (0..k).map(|_| orthant_poly(r, m, max)).collect()).collect()
}

/// Both closed forms of the multiplicity agree on a random grid.
pub fn formula_matches_cayley(seed: u64, shape: (usize, usize, usize)) -> Check {
    let mut r = rng(seed);
    let grid = orthant_grid(&mut r, shape);
    let f = multiplicity_formula(&grid).map_err(|e| e.to_string())?;
    let c = multiplicity_cayley(&grid).map_err(|e| e.to_string())?;
    if f == c {
        Ok(())
    } else {
        Err(format!("formula {f} vs Cayley {c} on {grid:?}"))
    }
}

/// Support in two variables meeting both axes, with up to two extra
/// monomials.
fn random_support(r: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let mut s = vec![vec![r.gen_range(1..=3), 0], vec![0, r.gen_range(1..=3)]];
    for _ in 0..r.gen_range(0..=2) {
        let e = vec![r.gen_range(0..=2), r.gen_range(0..=2)];
        if e != vec![0, 0] && !s.contains(&e) {
            s.push(e);
        }
    }
    s
}

/// A `2 × 3` matrix in two variables. Generic instances draw Gaussian
/// rational coefficients; special ones use coefficients `±1` with every
/// entry of a row sharing its support, which produces cancellations.
pub fn polynomial_instance(r: &mut ChaCha8Rng, generic: bool) -> PolyMatrix {
    let rows = (0..2)
        .map(|_| {
            let shared = random_support(r);
            (0..3)
                .map(|_| {
                    if generic {
                        let support = random_support(r);
                        random_poly(r, 2, &support)
                    } else {
                        let terms = shared.iter().map(|e| (e.clone(), Scalar::from_int(if r.gen_bool(0.5) { 1 } else { -1 })));
                        Polynomial::from_terms(2, terms).unwrap()
                    }
                })
                .collect()
        })
        .collect();
    PolyMatrix::new(rows).unwrap()
}

pub enum OracleComparison {
    Equal(BigInt),
    Greater { oracle: BigInt, formula: BigInt },
    /// The oracle did not stabilize below the cap.
    Unbounded { formula: BigInt },
}

/// Oracle against formula on one matrix; fails if the oracle is smaller.
pub fn compare_oracle(a: &PolyMatrix) -> std::result::Result<OracleComparison, String> {
    let formula = multiplicity_formula(&a.newton_grid()).map_err(|e| e.to_string())?;
    match multiplicity_oracle(a, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())? {
        Colength::Finite { value, .. } if value == formula => Ok(OracleComparison::Equal(value)),
        Colength::Finite { value, .. } if value > formula => Ok(OracleComparison::Greater { oracle: value, formula }),
        Colength::Finite { value, .. } => Err(format!("oracle {value} below formula {formula} for {a:?}")),
        Colength::Unbounded { .. } => Ok(OracleComparison::Unbounded { formula }),
    }
}

fn generic_rat(r: &mut ChaCha8Rng) -> Rat {
    ratio(r.gen_range(-97..=97), r.gen_range(1..=31))
}

/// Random bounded lattice polytope in `R^q` with 2 to 4 generators.
fn small_polytope(r: &mut ChaCha8Rng, q: usize) -> LatticePolyhedron {
    let max = if q == 3 { 1 } else { 2 };
    let count = r.gen_range(2..=4);
    let gens = (0..count).map(|_| (0..q).map(|_| r.gen_range(0..=max)).collect()).collect();
    LatticePolyhedron::polytope(q, gens).unwrap()
}

pub enum OdaCase {
    /// The Minkowski sum is not full-dimensional or the fans are not
    /// transversal for the drawn shifts.
    Skipped,
    Transversal { holds: bool, polys: Vec<LatticePolyhedron> },
}

/// Random family of `p` polytopes in `R^q` with random rational shifts; the
/// lattice identity is evaluated when the shifted fans are transversal.
pub fn oda_case(seed: u64, p: usize, q: usize) -> std::result::Result<OdaCase, String> {
    let mut r = rng(seed);
    let polys: Vec<LatticePolyhedron> = (0..p).map(|_| small_polytope(&mut r, q)).collect();
    let total = polys[1..].iter().try_fold(polys[0].clone(), |s, x| s.minkowski_sum(x)).map_err(|e| e.to_string())?;
    if total.volume().map_err(|e| e.to_string())? == ratio(0, 1) {
        return Ok(OdaCase::Skipped);
    }
    let fans = polys.iter().map(dual_fan).collect::<degmult::Result<Vec<_>>>().map_err(|e| e.to_string())?;
    let shifts: Vec<Vec<Rat>> = (0..p).map(|_| (0..q).map(|_| generic_rat(&mut r)).collect()).collect();
    if !fans_transversal_wrt_shifts(&fans, &shifts).map_err(|e| e.to_string())? {
        return Ok(OdaCase::Skipped);
    }
    let holds = check_oda(&polys).map_err(|e| e.to_string())?;
    Ok(OdaCase::Transversal { holds, polys })
}

/// Envelope against vertex tuples for random functions at a random lattice
/// point of `pS`, `S` the standard simplex.
pub fn minimax_case(seed: u64) -> Check {
    let mut r = rng(seed);
    let p = r.gen_range(1..=3);
    let q = r.gen_range(1..=3);
    let functions: Vec<Vec<Rat>> = (0..p).map(|_| (0..q).map(|_| generic_rat(&mut r)).collect()).collect();
    // A point of pS: p unit steps, each to a random vertex.
    let mut a = vec![0i64; q];
    for _ in 0..p {
        let v = r.gen_range(0..=q);
        if v > 0 {
            a[v - 1] += 1;
        }
    }
    let res = minimax_check(&functions, &standard_simplex(q), &a).map_err(|e| e.to_string())?;
    if res.equal {
        Ok(())
    } else {
        Err(format!("envelope {} vs vertex max {:?} at {a:?} for {functions:?}", res.envelope, res.vertex_max))
    }
}
