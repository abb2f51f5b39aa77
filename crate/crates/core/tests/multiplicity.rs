mod common;

use common::cases::{self, OracleComparison, SHAPES};
use common::*;
use degmult::colength::{multiplicity_oracle, DEFAULT_DEGREE_CAP};
use degmult::Scalar;
use degmult::newton::{homogeneous_multiplicity, multiplicity_formula, simplex_grid};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

#[test]
fn formula_matches_cayley_route() {
    for t in 0..30 {
        cases::formula_matches_cayley(100 + t, SHAPES[t as usize % 3]).unwrap();
    }
}

#[test]
fn formula_is_symmetric_in_rows_and_columns() {
    let mut r = rng(7);
    for t in 0..12 {
        let grid = cases::orthant_grid(&mut r, SHAPES[t % 3]);
        let base = multiplicity_formula(&grid).unwrap();
        let mut rows: Vec<usize> = (0..grid.len()).collect();
        let mut cols: Vec<usize> = (0..grid[0].len()).collect();
        rows.shuffle(&mut r);
        cols.shuffle(&mut r);
        let permuted: Vec<Vec<_>> = rows.iter().map(|&i| cols.iter().map(|&j| grid[i][j].clone()).collect()).collect();
        assert_eq!(multiplicity_formula(&permuted).unwrap(), base, "{grid:?}");
        assert!(base >= BigInt::from(0));
    }
}

#[test]
fn homogeneous_closed_form_matches_simplex_grid() {
    let mut r = rng(8);
    for t in 0..20 {
        let (n, k) = [(1, 2), (2, 2), (2, 3)][t % 3];
        let d: Vec<Vec<i64>> = (0..n).map(|_| (0..k).map(|_| r.gen_range(1..=3)).collect()).collect();
        let m = k - n + 1;
        assert_eq!(homogeneous_multiplicity(&d, m).unwrap(), multiplicity_formula(&simplex_grid(&d).unwrap()).unwrap(), "{d:?}");
    }
}

#[test]
fn oracle_bounds_formula_with_equality_for_generic_coefficients() {
    let mut r = rng(9);
    let mut equal = 0;
    for _ in 0..12 {
        match cases::compare_oracle(&cases::polynomial_instance(&mut r, true)).unwrap() {
            OracleComparison::Equal(_) => equal += 1,
            OracleComparison::Greater { oracle, formula } => panic!("generic instance with oracle {oracle} > {formula}"),
            OracleComparison::Unbounded { formula } => panic!("generic instance did not stabilize, formula {formula}"),
        }
    }
    assert_eq!(equal, 12);
    for _ in 0..12 {
        cases::compare_oracle(&cases::polynomial_instance(&mut r, false)).unwrap();
    }
}

#[test]
fn generic_homogeneous_oracle_matches_closed_form() {
    let mut r = rng(10);
    let d = vec![vec![1, 2, 1], vec![1, 1, 2]];
    for _ in 0..5 {
        let a = homogeneous_matrix(&mut r, &d);
        assert_eq!(multiplicity_oracle(&a, DEFAULT_DEGREE_CAP).unwrap().value(), Some(&BigInt::from(3)));
    }
}

#[test]
fn oracle_is_invariant_under_unimodular_row_operations() {
    let mut r = rng(11);
    for _ in 0..6 {
        let a = cases::polynomial_instance(&mut r, true);
        let c = r.gen_range(-3..=3);
        let u = vec![vec![Scalar::one(), Scalar::from_int(c)], vec![Scalar::zero(), Scalar::one()]];
        let b = a.left_multiply(&u).unwrap();
        assert_eq!(multiplicity_oracle(&a, 24).unwrap(), multiplicity_oracle(&b, 24).unwrap().clone());
    }
}
