//! Integer lattices: Hermite normal form, integer kernels, saturations and
//! indices of sublattices of `ℤ^q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{nullspace, primitive, Rat};

/// Row Hermite normal form: the non-zero rows of an echelon basis of the
/// row lattice, pivots positive and entries above each pivot reduced.
pub fn hermite_basis(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rows = reduce_left(rows, cols);
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    for r in 0..rows.len() {
        let c = rows[r].iter().position(|x| !x.is_zero()).unwrap();
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot = rows[r].clone();
        for row in rows[..r].iter_mut() {
            let q = row[c].div_floor(&pivot[c]);
            if !q.is_zero() {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
            }
        }
    }
    rows
}

/// Basis of `{x ∈ ℤ^cols : A x = 0}`.
pub fn integer_kernel(a: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    // Row-reduce [Aᵀ | I]; rows whose left block vanishes carry the kernel.
    let aug: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            let mut row: Vec<BigInt> = a.iter().map(|r| r[j].clone()).collect();
            row.extend((0..cols).map(|t| if t == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let left = a.len();
    let mut reduced = reduce_left(aug, left);
    reduced.retain(|r| r[..left].iter().all(|x| x.is_zero()));
    let kernel: Vec<Vec<BigInt>> = reduced.into_iter().map(|r| r[left..].to_vec()).collect();
    hermite_basis(kernel)
}

/// Unimodular row reduction of the first `left` columns, keeping every row.
fn reduce_left(mut rows: Vec<Vec<BigInt>>, left: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for c in 0..left {
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&p) = nz.first() {
                    rows.swap(r, p);
                    r += 1;
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            rows.swap(r, p);
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
            }
        }
    }
    rows
}

/// Basis of `span(vectors) ∩ ℤ^q`.
pub fn saturation(vectors: &[Vec<Rat>], q: usize) -> Vec<Vec<BigInt>> {
    let nonzero: Vec<Vec<Rat>> = vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let orth: Vec<Vec<BigInt>> = nullspace(&nonzero, q).iter().map(|v| primitive(v)).collect();
    if orth.is_empty() {
        return (0..q).map(|i| (0..q).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    }
    integer_kernel(&orth, q)
}

/// Index of the lattice generated by `gens` in `ℤ^q`; `None` if it has
/// rank below `q`.
pub fn index(gens: &[Vec<BigInt>], q: usize) -> Option<BigInt> {
    let h = hermite_basis(gens.to_vec());
    if h.len() < q {
        return None;
    }
    let mut d = BigInt::one();
    for (i, row) in h.iter().enumerate() {
        let c = row.iter().position(|x| !x.is_zero())?;
        if c != i {
            return None;
        }
        d *= &row[c];
    }
    Some(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_vec;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hermite_and_index() {
        let h = hermite_basis(big(&[&[2, 4], &[3, 5]]));
        assert_eq!(h, big(&[&[1, 1], &[0, 2]]));
        assert_eq!(index(&big(&[&[1, 0], &[1, 2]]), 2), Some(BigInt::from(2)));
        assert_eq!(index(&big(&[&[1, 0], &[0, 1], &[1, 2]]), 2), Some(BigInt::one()));
        assert_eq!(index(&big(&[&[1, 1], &[2, 2]]), 2), None);
        assert_eq!(index(&big(&[&[6, 0], &[0, 10], &[4, 15]]), 2), Some(BigInt::from(10)));
    }

    #[test]
    fn kernels_and_saturation() {
        let k = integer_kernel(&big(&[&[2, 3, 5]]), 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!((BigInt::from(2) * &v[0] + BigInt::from(3) * &v[1] + BigInt::from(5) * &v[2]).is_zero());
        }
        // The kernel is saturated: index 1 inside its own span.
        let s = saturation(&[rat_vec(&[2, 4, 0])], 3);
        assert_eq!(s, big(&[&[1, 2, 0]]));
        let s = saturation(&[rat_vec(&[1, 0]), rat_vec(&[1, 2])], 2);
        assert_eq!(index(&s, 2), Some(BigInt::one()));
        assert!(saturation(&[rat_vec(&[0, 0])], 2).is_empty());
    }
}
