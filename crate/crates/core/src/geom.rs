//! Generator-level primitives shared by the polyhedron types.
//!
//! A polyhedron here is `conv(points) + cone{e_s : rec[s]}`. Everything is
//! decided by exact linear programs over the convex weights.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lp::{self, Constraint, Outcome, Relation};

type Rat = BigRational;

/// `point` is dominated by `g`: equal off the recession axes, at least as
/// large on them. Cheap sufficient test for membership.
fn dominates(point: &[Rat], g: &[Rat], rec: &[bool]) -> bool {
    point
        .iter()
        .zip(g)
        .zip(rec)
        .all(|((p, x), &r)| if r { p >= x } else { p == x })
}

/// Constraints `λ >= 0, Σλ = 1, Σλ g_t (rel) target_t` for the coordinates
/// listed in `coords`; recession coordinates use `<=`.
fn weight_constraints(
    gens: &[Vec<Rat>],
    rec: &[bool],
    coords: &[usize],
    target: &[Rat],
) -> Vec<Constraint> {
    let n = gens.len();
    let mut cons = Vec::with_capacity(coords.len() + 1);
    cons.push(Constraint::new(vec![Rat::one(); n], Relation::Eq, Rat::one()));
    for (&t, v) in coords.iter().zip(target) {
        let coeffs = gens.iter().map(|g| g[t].clone()).collect();
        let rel = if rec[t] { Relation::Le } else { Relation::Eq };
        cons.push(Constraint::new(coeffs, rel, v.clone()));
    }
    cons
}

pub fn contains(gens: &[Vec<Rat>], rec: &[bool], point: &[Rat]) -> bool {
    if gens.is_empty() {
        return false;
    }
    if gens.iter().any(|g| dominates(point, g, rec)) {
        return true;
    }
    // Coordinate-wise lower bounds on recession axes and ranges elsewhere.
    for t in 0..point.len() {
        let lo = gens.iter().map(|g| &g[t]).min().unwrap();
        if &point[t] < lo {
            return false;
        }
        if !rec[t] && &point[t] > gens.iter().map(|g| &g[t]).max().unwrap() {
            return false;
        }
    }
    let coords: Vec<usize> = (0..point.len()).collect();
    lp::feasible(gens.len(), &weight_constraints(gens, rec, &coords, point)).is_some()
}

/// Does the ray `point + t e_axis` (t >= 0) eventually enter the polyhedron?
pub fn ray_enters(gens: &[Vec<Rat>], rec: &[bool], point: &[Rat], axis: usize) -> bool {
    if gens.is_empty() {
        return false;
    }
    let coords: Vec<usize> = (0..point.len()).filter(|&t| t != axis).collect();
    let target: Vec<Rat> = coords.iter().map(|&t| point[t].clone()).collect();
    lp::feasible(gens.len(), &weight_constraints(gens, rec, &coords, &target)).is_some()
}

/// Minimal generator set: drops duplicates, dominated points, and points in
/// the hull of the others plus the recession cone. Output is sorted.
pub fn reduce(mut gens: Vec<Vec<Rat>>, rec: &[bool]) -> Vec<Vec<Rat>> {
    gens.sort();
    gens.dedup();
    if gens.len() <= 1 {
        return gens;
    }
    if rec.iter().any(|&r| r) {
        let keep: Vec<bool> = (0..gens.len())
            .map(|i| {
                !(0..gens.len()).any(|j| j != i && dominates(&gens[i], &gens[j], rec))
            })
            .collect();
        gens = gens
            .into_iter()
            .zip(keep)
            .filter_map(|(g, k)| k.then_some(g))
            .collect();
    }
    let mut i = 0;
    while i < gens.len() && gens.len() > 1 {
        let others: Vec<Vec<Rat>> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        if contains(&others, rec, &gens[i]) {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    gens
}

/// Range of the last coordinate over the fiber of the polyhedron above the
/// given values of the leading coordinates. `None` if the fiber is empty;
/// an upper bound of `None` means unbounded above.
pub fn fiber(gens: &[Vec<Rat>], rec: &[bool], prefix: &[Rat]) -> Option<(Rat, Option<Rat>)> {
    if gens.is_empty() {
        return None;
    }
    let q = rec.len();
    debug_assert_eq!(prefix.len() + 1, q);
    let last = q - 1;
    let coords: Vec<usize> = (0..last).collect();
    let cons = weight_constraints(gens, rec, &coords, prefix);
    let obj: Vec<Rat> = gens.iter().map(|g| g[last].clone()).collect();
    let lo = match lp::minimize(gens.len(), &obj, &cons) {
        Outcome::Optimal { value, .. } => value,
        Outcome::Infeasible => return None,
        Outcome::Unbounded => unreachable!("convex weights are bounded"),
    };
    if rec[last] {
        return Some((lo, None));
    }
    let hi = lp::maximize(gens.len(), &obj, &cons)
        .value()
        .cloned()
        .expect("feasible bounded program");
    Some((lo, Some(hi)))
}

/// Counts lattice points of the polyhedron inside the integer box
/// `lo..=hi` by scanning fibers along the last coordinate.
pub fn count_in_box(gens: &[Vec<Rat>], rec: &[bool], lo: &[i64], hi: &[i64]) -> u64 {
    let q = rec.len();
    if gens.is_empty() || lo.iter().zip(hi).any(|(l, h)| l > h) {
        return 0;
    }
    if q == 0 {
        return 1;
    }
    let mut total = 0u64;
    for prefix in crate::combin::integer_box(&lo[..q - 1], &hi[..q - 1]) {
        let pr: Vec<Rat> = prefix.iter().map(|&v| Rat::from_integer(v.into())).collect();
        let Some((flo, fhi)) = fiber(gens, rec, &pr) else {
            continue;
        };
        let a = flo.ceil().to_integer().max(lo[q - 1].into());
        let b = match fhi {
            Some(h) => h.floor().to_integer().min(hi[q - 1].into()),
            None => hi[q - 1].into(),
        };
        if a <= b {
            let n: num_bigint::BigInt = b - a + 1;
            total += u64::try_from(n).expect("box count fits");
        }
    }
    total
}

/// Truncates the polyhedron by `Σ_{s recession} x_s <= level`, returning the
/// generators of the resulting polytope. Requires `level` at least the
/// recession-coordinate sum of every generator.
pub fn truncate(gens: &[Vec<Rat>], rec: &[bool], level: &Rat) -> Vec<Vec<Rat>> {
    let mut out = Vec::new();
    for g in gens {
        let used: Rat = g
            .iter()
            .zip(rec)
            .filter(|(_, &r)| r)
            .fold(Rat::zero(), |acc, (x, _)| acc + x);
        let slack = level - used;
        debug_assert!(slack >= Rat::zero());
        out.push(g.clone());
        for (s, &r) in rec.iter().enumerate() {
            if r {
                let mut p = g.clone();
                p[s] += &slack;
                out.push(p);
            }
        }
    }
    out
}
