//! Upper envelopes of sums of linear functions on a lattice polytope `S`:
//! the envelope value at a lattice point of `pS` against the best tuple of
//! vertices, and the count of lattice points of `pS` where the envelope is
//! attained by a unique vertex tuple.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lp::{maximize, Constraint, Outcome, Relation};
use crate::polyhedron::LatticeVector;
use crate::rational::{binomial, dot_int, Rat};

/// Vertices `0, e_1, …, e_q` of the standard simplex.
pub fn standard_simplex(q: usize) -> Vec<LatticeVector> {
    let mut v = vec![vec![0; q]];
    for i in 0..q {
        let mut e = vec![0; q];
        e[i] = 1;
        v.push(e);
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimax {
    /// `max Σ l_i(x_i)` over `x_i ∈ S` with `Σ x_i = a`.
    pub envelope: Rat,
    /// Best `Σ l_i(c_i)` over vertex tuples with `Σ c_i = a`; `None` if no
    /// tuple sums to `a`.
    pub vertex_max: Option<Rat>,
    pub equal: bool,
}

fn check_functions(functions: &[Vec<Rat>], q: usize) -> Result<()> {
    if functions.is_empty() {
        return Err(Error::pre("need at least one linear function"));
    }
    match functions.iter().find(|l| l.len() != q) {
        Some(l) => Err(Error::dim(q, l.len())),
        None => Ok(()),
    }
}

/// Envelope value at `a` against the best vertex tuple, with `S` the convex
/// hull of `vertices` and `l_i(x) = ⟨functions[i], x⟩`.
pub fn minimax_check(functions: &[Vec<Rat>], vertices: &[LatticeVector], a: &[i64]) -> Result<Minimax> {
    let q = a.len();
    check_functions(functions, q)?;
    if vertices.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    if let Some(v) = vertices.iter().find(|v| v.len() != q) {
        return Err(Error::dim(q, v.len()));
    }
    let p = functions.len();
    let nv = vertices.len();
    // x_i = Σ_v λ_{i,v} v with λ_i a probability vector.
    let vars = p * nv;
    let mut cons = Vec::new();
    for i in 0..p {
        let mut row = vec![Rat::zero(); vars];
        for v in 0..nv {
            row[i * nv + v] = Rat::one();
        }
        cons.push(Constraint::new(row, Relation::Eq, Rat::one()));
    }
    for t in 0..q {
        let mut row = vec![Rat::zero(); vars];
        for i in 0..p {
            for (v, vert) in vertices.iter().enumerate() {
                row[i * nv + v] = Rat::from_integer(vert[t].into());
            }
        }
        cons.push(Constraint::new(row, Relation::Eq, Rat::from_integer(a[t].into())));
    }
    let objective: Vec<Rat> =
        (0..p).flat_map(|i| vertices.iter().map(move |v| dot_int(&functions[i], v))).collect();
    let envelope = match maximize(vars, &objective, &cons) {
        Outcome::Optimal { value, .. } => value,
        Outcome::Infeasible => return Err(Error::pre("the point is outside pS")),
        Outcome::Unbounded => unreachable!("the feasible set is bounded"),
    };
    let vertex_max = best_tuples(functions, vertices, a).map(|(v, _)| v);
    let equal = vertex_max.as_ref() == Some(&envelope);
    Ok(Minimax { envelope, vertex_max, equal })
}

/// Best value over vertex tuples summing to `a` and how many tuples attain it.
fn best_tuples(functions: &[Vec<Rat>], vertices: &[LatticeVector], a: &[i64]) -> Option<(Rat, usize)> {
    fn rec(
        i: usize,
        functions: &[Vec<Rat>],
        vertices: &[LatticeVector],
        left: &mut Vec<i64>,
        acc: Rat,
        best: &mut Option<(Rat, usize)>,
    ) {
        if i == functions.len() {
            if left.iter().all(|&x| x == 0) {
                match best {
                    Some((b, n)) if *b == acc => *n += 1,
                    Some((b, _)) if *b > acc => {}
                    _ => *best = Some((acc, 1)),
                }
            }
            return;
        }
        for v in vertices {
            for (l, x) in left.iter_mut().zip(v) {
                *l -= x;
            }
            rec(i + 1, functions, vertices, left, &acc + dot_int(&functions[i], v), best);
            for (l, x) in left.iter_mut().zip(v) {
                *l += x;
            }
        }
    }
    let mut best = None;
    rec(0, functions, vertices, &mut a.to_vec(), Rat::zero(), &mut best);
    best
}

/// Lattice points of `pS` (standard simplex `S`) at which the envelope of
/// `l_1 + … + l_p` is attained by a unique vertex tuple. Any tie is reported
/// as degeneracy; for generic functions the count is `C(p+q, q)`.
pub fn tropical_piece_count(functions: &[Vec<Rat>], q: usize) -> Result<u64> {
    check_functions(functions, q)?;
    let p = functions.len() as i64;
    let vertices = standard_simplex(q);
    let mut count = 0u64;
    for a in simplex_points(q, p) {
        let (best, ties) = best_tuples(functions, &vertices, &a).expect("standard simplex vertices generate pS");
        if ties > 1 {
            let pt: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            return Err(Error::Degenerate(format!("{ties} vertex tuples attain {best} at ({})", pt.join(","))));
        }
        count += 1;
    }
    debug_assert_eq!(binomial(p + q as i64, q as i64), count.into());
    Ok(count)
}

/// Lattice points of `p` times the standard simplex in `ℝ^q`.
fn simplex_points(q: usize, p: i64) -> Vec<LatticeVector> {
    fn rec(q: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<LatticeVector>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(q, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(q, p, &mut Vec::new(), &mut out);
    out
}
