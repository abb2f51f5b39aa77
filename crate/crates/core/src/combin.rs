//! Enumeration helpers: subsets, combinations, compositions, and ordered
//! set partitions with prescribed block sizes.

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Non-empty subsets of `0..n`, ordered by size and then lexicographically.
pub fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    (1..=n).flat_map(|k| combinations(n, k)).collect()
}

/// Weakly increasing `k`-tuples with entries in `0..n`.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, k, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 || k == 0 {
        rec(n, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Compositions of `total` into `parts` non-negative summands, in
/// lexicographic order of the summand vector.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == parts {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(left - v, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Ordered partitions `J = J_1 ⊔ … ⊔ J_n` with `|J_i| = sizes[i]`, encoded as
/// the block index assigned to each element of `set` (same order as `set`).
pub fn block_assignments(set: &[usize], sizes: &[usize]) -> Vec<Vec<usize>> {
    fn rec(pos: usize, left: &mut [usize], cur: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
        if pos == len {
            out.push(cur.clone());
            return;
        }
        for b in 0..left.len() {
            if left[b] == 0 {
                continue;
            }
            left[b] -= 1;
            cur.push(b);
            rec(pos + 1, left, cur, len, out);
            cur.pop();
            left[b] += 1;
        }
    }
    let mut out = Vec::new();
    if sizes.iter().sum::<usize>() != set.len() {
        return out;
    }
    let mut left = sizes.to_vec();
    rec(0, &mut left, &mut Vec::with_capacity(set.len()), set.len(), &mut out);
    out
}

/// Cartesian power `range^k`, lexicographic.
pub fn integer_box(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return out;
    }
    let mut cur = lo.to_vec();
    loop {
        out.push(cur.clone());
        let mut i = cur.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(nonempty_subsets(3).len(), 7);
        assert_eq!(compositions(3, 2), vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]);
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(multisets(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(integer_box(&[0, 0], &[1, 2]).len(), 6);
        assert_eq!(integer_box(&[], &[]).len(), 1);
    }

    #[test]
    fn ordered_partitions_with_sizes() {
        // J = {a, b, c}, sizes (1, 2): three ways to pick the singleton.
        let parts = block_assignments(&[0, 1, 2], &[1, 2]);
        assert_eq!(parts, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(block_assignments(&[0, 1], &[3]).len(), 0);
        assert_eq!(block_assignments(&[], &[0, 0]).len(), 1);
    }
}
