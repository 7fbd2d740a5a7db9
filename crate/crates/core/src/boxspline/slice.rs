//! Independent oracle: the density as the `(m - r)`-volume of the fiber
//! `{u in [-1/2, 1/2]^m : X u = t}`, computed from its vertices by a pulling
//! triangulation.

use std::collections::BTreeSet;

use num::{Signed, Zero};

use super::BoxSplineSpec;
use crate::error::{Error, Result};
use crate::linalg::{self, combinations, Matrix};
use crate::rational::{q, qi, Q};
use crate::rootsys::Weight;

struct Fiber {
    /// Full coordinates `u` of each vertex.
    vertices: Vec<Vec<Q>>,
    /// Coordinates `u_N` used for volumes.
    projected: Vec<Vec<Q>>,
    dim: usize,
}

fn column_matrix(cols: &[&Vec<i64>]) -> Matrix {
    let r = cols[0].len();
    (0..r).map(|i| cols.iter().map(|c| qi(c[i])).collect()).collect()
}

fn fiber_vertices(x: &[Vec<i64>], t: &[Q]) -> Vec<Vec<Q>> {
    let m = x.len();
    let r = t.len();
    let half = q(1, 2);
    let mut found: BTreeSet<Vec<Q>> = BTreeSet::new();
    for face in combinations(m, r) {
        let cols: Vec<&Vec<i64>> = face.iter().map(|&i| &x[i]).collect();
        let Some(inv) = linalg::inverse(&column_matrix(&cols)) else { continue };
        let rest: Vec<usize> = (0..m).filter(|i| !face.contains(i)).collect();
        for signs in 0u64..(1u64 << rest.len()) {
            let mut u = vec![Q::zero(); m];
            let mut rhs = t.to_vec();
            for (b, &j) in rest.iter().enumerate() {
                let s = if signs >> b & 1 == 1 { half.clone() } else { -half.clone() };
                for i in 0..r {
                    rhs[i] -= &s * qi(x[j][i]);
                }
                u[j] = s;
            }
            let uf = linalg::mat_vec(&inv, &rhs);
            if uf.iter().all(|c| c.abs() <= half) {
                for (k, &i) in face.iter().enumerate() {
                    u[i] = uf[k].clone();
                }
                found.insert(u);
            }
        }
    }
    found.into_iter().collect()
}

fn affine_dim(points: &[&Vec<Q>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let diffs: Matrix = points[1..].iter().map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    linalg::rank(&diffs)
}

impl Fiber {
    fn tight(&self, v: usize, j: usize, upper: bool) -> bool {
        let h = q(1, 2);
        if upper {
            self.vertices[v][j] == h
        } else {
            self.vertices[v][j] == -h
        }
    }

    /// Pulling triangulation of the face spanned by `face` (vertex indices)
    /// of dimension `dim`; appends simplices as vertex-index lists.
    fn triangulate(&self, face: &[usize], dim: usize, out: &mut Vec<Vec<usize>>) {
        if dim == 0 {
            out.push(vec![face[0]]);
            return;
        }
        let apex = face[0];
        let m = self.vertices[0].len();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for j in 0..m {
            for upper in [false, true] {
                if self.tight(apex, j, upper) {
                    continue;
                }
                let sub: Vec<usize> = face.iter().copied().filter(|&v| self.tight(v, j, upper)).collect();
                if sub.is_empty() || seen.contains(&sub) {
                    continue;
                }
                let pts: Vec<&Vec<Q>> = sub.iter().map(|&v| &self.projected[v]).collect();
                if affine_dim(&pts) + 1 != dim {
                    continue;
                }
                seen.insert(sub.clone());
                let mut inner = Vec::new();
                self.triangulate(&sub, dim - 1, &mut inner);
                for mut s in inner {
                    s.insert(0, apex);
                    out.push(s);
                }
            }
        }
    }

    fn volume(&self) -> Q {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut simplices = Vec::new();
        self.triangulate(&all, self.dim, &mut simplices);
        let fact: i64 = (1..=self.dim as i64).product();
        let mut vol = Q::zero();
        for s in simplices {
            let p0 = &self.projected[s[0]];
            let m: Matrix = s[1..]
                .iter()
                .map(|&v| self.projected[v].iter().zip(p0).map(|(a, b)| a - b).collect())
                .collect();
            vol += linalg::det(&m).abs();
        }
        vol / qi(fact)
    }
}

/// Exact centered density at `t` by fiber volume. Sets with a coloop are only
/// handled when every vector is one (`m = r`); there a point on the boundary
/// of the parallelepiped gets the mean of the one-sided values, and points on
/// more than one boundary face are rejected.
pub fn slice_volume_density(spec: &BoxSplineSpec, t: &Weight) -> Result<Q> {
    spec.check_point(t)?;
    let x = spec.expanded_ints();
    let m = x.len();
    let r = spec.rank;
    if m == r {
        let cols: Vec<&Vec<i64>> = x.iter().collect();
        let v = column_matrix(&cols);
        let c = linalg::solve(&v, &t.coords).ok_or_else(|| Error::Singular("parallelepiped".into()))?;
        let half = q(1, 2);
        let mut value = qi(1) / linalg::abs_det(&v);
        let mut on_boundary = 0;
        for ci in &c {
            let a = ci.abs();
            if a > half {
                return Ok(Q::zero());
            }
            if a == half {
                on_boundary += 1;
                value /= qi(2);
            }
        }
        if on_boundary > 1 {
            return Err(Error::Unsupported("point on several faces of a parallelepiped".into()));
        }
        return Ok(value);
    }
    if spec.has_coloop() {
        return Err(Error::Unsupported("fiber volume oracle does not handle coloops".into()));
    }
    let vertices = fiber_vertices(&x, &t.coords);
    if vertices.is_empty() {
        return Ok(Q::zero());
    }
    // first basis in index order fixes the projection
    let basis = combinations(m, r)
        .into_iter()
        .find(|f| {
            let cols: Vec<&Vec<i64>> = f.iter().map(|&i| &x[i]).collect();
            !linalg::det(&column_matrix(&cols)).is_zero()
        })
        .expect("vectors span");
    let cols: Vec<&Vec<i64>> = basis.iter().map(|&i| &x[i]).collect();
    let det_b = linalg::abs_det(&column_matrix(&cols));
    let rest: Vec<usize> = (0..m).filter(|i| !basis.contains(i)).collect();
    let projected: Vec<Vec<Q>> = vertices.iter().map(|u| rest.iter().map(|&j| u[j].clone()).collect()).collect();
    let dim = m - r;
    let refs: Vec<&Vec<Q>> = projected.iter().collect();
    if affine_dim(&refs) < dim {
        return Ok(Q::zero());
    }
    let fiber = Fiber { vertices, projected, dim };
    Ok(fiber.volume() / det_b)
}
