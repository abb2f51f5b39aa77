//! Face structure of bounded polytopes given by their vertices.
//!
//! Facets are found by scanning affinely independent vertex subsets inside
//! the affine hull (projected onto pivot coordinates, where the projection
//! is injective). The face lattice is the closure of the facets under
//! intersection. Dimensions are small, so this is fast enough and entirely
//! exact.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combin::combinations;
use crate::rational::{det, factorial, nullspace, row_echelon};

type Rat = BigRational;

#[derive(Debug, Clone)]
pub struct Facet {
    /// Inner normal as an ambient covector (zero off the pivot coordinates).
    pub normal: Vec<Rat>,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
    /// Indices of the facets containing this face.
    pub facets: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Hull {
    pub ambient: usize,
    pub vertices: Vec<Vec<Rat>>,
    pub dim: usize,
    /// Covectors constant on the polytope; they span the lineality of every
    /// dual cone.
    pub equations: Vec<Vec<Rat>>,
    pub facets: Vec<Facet>,
    /// All non-empty faces, the polytope itself included.
    pub faces: Vec<Face>,
}

/// Fraction-free determinant of an integer matrix.
fn int_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Normal of the hyperplane spanned by `d - 1` difference vectors in `Z^d`.
fn cross(diffs: &[Vec<BigInt>], d: usize) -> Vec<BigInt> {
    (0..d)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = diffs
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let v = int_det(minor);
            if j % 2 == 0 { v } else { -v }
        })
        .collect()
}

impl Hull {
    /// `vertices` must be the distinct vertices of the polytope.
    pub fn new(vertices: Vec<Vec<Rat>>) -> Self {
        let ambient = vertices.first().map_or(0, |v| v.len());
        if vertices.is_empty() {
            return Hull { ambient, vertices, dim: 0, equations: Vec::new(), facets: Vec::new(), faces: Vec::new() };
        }
        let p0 = vertices[0].clone();
        let diffs: Vec<Vec<Rat>> = vertices[1..]
            .iter()
            .map(|v| v.iter().zip(&p0).map(|(a, b)| a - b).collect())
            .collect();
        let (_, pivots) = if diffs.is_empty() { (Vec::new(), Vec::new()) } else { row_echelon(diffs.clone()) };
        let dim = pivots.len();
        let equations = nullspace(&diffs, ambient);

        // Integer coordinates on the pivot axes.
        let lcm = vertices
            .iter()
            .flat_map(|v| pivots.iter().map(move |&c| v[c].denom().clone()))
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let proj: Vec<Vec<BigInt>> = vertices
            .iter()
            .map(|v| pivots.iter().map(|&c| (&v[c] * &lcm).to_integer()).collect())
            .collect();

        let facets = Self::find_facets(&vertices, &proj, &pivots, dim, ambient);
        let mut hull = Hull { ambient, vertices, dim, equations, facets, faces: Vec::new() };
        hull.faces = hull.build_faces(&proj);
        hull
    }

    fn find_facets(
        vertices: &[Vec<Rat>],
        proj: &[Vec<BigInt>],
        pivots: &[usize],
        dim: usize,
        ambient: usize,
    ) -> Vec<Facet> {
        let n = vertices.len();
        let mut facets: Vec<Facet> = Vec::new();
        if dim == 0 {
            return facets;
        }
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for subset in combinations(n, dim) {
            if facets.iter().any(|f| subset.iter().all(|i| f.vertices.binary_search(i).is_ok())) {
                continue;
            }
            let base = &proj[subset[0]];
            let diffs: Vec<Vec<BigInt>> = subset[1..]
                .iter()
                .map(|&i| proj[i].iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let w = cross(&diffs, dim);
            if w.iter().all(|x| x.is_zero()) {
                continue;
            }
            let off: BigInt = w.iter().zip(base).map(|(a, b)| a * b).sum();
            let vals: Vec<BigInt> = proj
                .iter()
                .map(|p| w.iter().zip(p).map(|(a, b)| a * b).sum::<BigInt>() - &off)
                .collect();
            let sign = if vals.iter().all(|v| !v.is_negative()) {
                1
            } else if vals.iter().all(|v| !v.is_positive()) {
                -1
            } else {
                continue;
            };
            let incident: Vec<usize> = (0..n).filter(|&i| vals[i].is_zero()).collect();
            if !seen.insert(incident.clone()) {
                continue;
            }
            let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let mut normal = vec![Rat::zero(); ambient];
            for (c, x) in pivots.iter().zip(&w) {
                normal[*c] = Rat::from_integer(x * sign / &g);
            }
            facets.push(Facet { normal, vertices: incident });
        }
        facets
    }

    fn affine_dim(proj: &[Vec<BigInt>], verts: &[usize]) -> usize {
        if verts.len() <= 1 {
            return 0;
        }
        let base = &proj[verts[0]];
        let rows: Vec<Vec<Rat>> = verts[1..]
            .iter()
            .map(|&i| proj[i].iter().zip(base).map(|(a, b)| Rat::from_integer(a - b)).collect())
            .collect();
        crate::rational::rank(&rows)
    }

    fn build_faces(&self, proj: &[Vec<BigInt>]) -> Vec<Face> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert(all);
        let mut queue: Vec<Vec<usize>> = self.facets.iter().map(|f| f.vertices.clone()).collect();
        while let Some(s) = queue.pop() {
            if s.is_empty() || !sets.insert(s.clone()) {
                continue;
            }
            for f in &self.facets {
                let inter: Vec<usize> = s.iter().copied().filter(|i| f.vertices.binary_search(i).is_ok()).collect();
                if !inter.is_empty() && !sets.contains(&inter) {
                    queue.push(inter);
                }
            }
        }
        let mut faces: Vec<Face> = sets
            .into_iter()
            .map(|vs| {
                let facets = (0..self.facets.len())
                    .filter(|&f| vs.iter().all(|i| self.facets[f].vertices.binary_search(i).is_ok()))
                    .collect();
                let dim = Self::affine_dim(proj, &vs);
                Face { vertices: vs, dim, facets }
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        faces
    }

    /// A covector in the relative interior of the dual cone of `face`.
    pub fn face_covector(&self, face: &Face) -> Vec<Rat> {
        let mut c = vec![Rat::zero(); self.ambient];
        for &f in &face.facets {
            for (x, y) in c.iter_mut().zip(&self.facets[f].normal) {
                *x += y;
            }
        }
        c
    }

    /// Generators of the dual cone of `face` (positive combinations give
    /// exactly the covectors minimized on that face).
    pub fn dual_cone_generators(&self, face: &Face) -> Vec<Vec<Rat>> {
        let mut gens: Vec<Vec<Rat>> = face.facets.iter().map(|&f| self.facets[f].normal.clone()).collect();
        for e in &self.equations {
            gens.push(e.clone());
            gens.push(e.iter().map(|x| -x).collect());
        }
        gens
    }

    /// Euclidean volume (zero unless full-dimensional).
    pub fn volume(&self) -> Rat {
        if self.vertices.is_empty() || self.dim < self.ambient {
            return Rat::zero();
        }
        let top = self.faces.len() - 1;
        let mut memo = HashMap::new();
        let simplices = self.triangulate(top, &mut memo);
        let total = simplices.iter().fold(Rat::zero(), |acc, s| {
            let v0 = &self.vertices[s[0]];
            let m: Vec<Vec<Rat>> = s[1..]
                .iter()
                .map(|&i| self.vertices[i].iter().zip(v0).map(|(a, b)| a - b).collect())
                .collect();
            acc + det(m).abs()
        });
        total / Rat::from_integer(factorial(self.ambient))
    }

    /// Pulling triangulation of a face: cone from its first vertex over the
    /// facets of the face not containing it.
    fn triangulate(&self, face: usize, memo: &mut HashMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if let Some(t) = memo.get(&face) {
            return t.clone();
        }
        let f = &self.faces[face];
        let out = if f.dim == 0 {
            vec![vec![f.vertices[0]]]
        } else {
            let apex = f.vertices[0];
            let mut out = Vec::new();
            for (g, sub) in self.faces.iter().enumerate() {
                if sub.dim + 1 != f.dim
                    || sub.vertices.contains(&apex)
                    || !sub.vertices.iter().all(|i| f.vertices.binary_search(i).is_ok())
                {
                    continue;
                }
                for mut s in self.triangulate(g, memo) {
                    s.insert(0, apex);
                    out.push(s);
                }
            }
            out
        };
        memo.insert(face, out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_vec};

    fn hull(v: &[&[i64]]) -> Hull {
        Hull::new(v.iter().map(|p| rat_vec(p)).collect())
    }

    #[test]
    fn square_faces_and_volume() {
        let h = hull(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        assert_eq!(h.dim, 2);
        assert_eq!(h.facets.len(), 4);
        assert_eq!(h.faces.len(), 9);
        assert_eq!(h.volume(), rat(1));
    }

    #[test]
    fn volume_matches_shoelace() {
        // (1,1) is interior to the triangle, which has area 6.
        let h = hull(&[&[0, 0], &[0, 4], &[1, 1], &[3, 0]]);
        assert_eq!(h.volume(), rat(6));
        let h = hull(&[&[0, 0], &[0, 4], &[2, 3], &[3, 0]]);
        // shoelace: (0*0-3*0) + (3*3-2*0) + (2*4-0*3) + (0*0-0*4) = 17
        assert_eq!(h.volume(), crate::rational::ratio(17, 2));
    }

    #[test]
    fn cube_and_lower_dimensional() {
        let mut cube = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    cube.push(rat_vec(&[2 * x, 2 * y, 2 * z]));
                }
            }
        }
        let h = Hull::new(cube);
        assert_eq!(h.facets.len(), 6);
        assert_eq!(h.faces.len(), 8 + 12 + 6 + 1);
        assert_eq!(h.volume(), rat(8));

        let seg = hull(&[&[0, 0], &[1, 2]]);
        assert_eq!(seg.dim, 1);
        assert_eq!(seg.faces.len(), 3);
        assert_eq!(seg.equations.len(), 1);
        assert_eq!(seg.volume(), rat(0));
    }

    #[test]
    fn integer_determinant() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(0), BigInt::from(3)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)],
        ];
        assert_eq!(int_det(m), BigInt::from(-3));
    }
}
