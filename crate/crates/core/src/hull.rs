//! Convex hulls of small 3D point sets, and an independent extremality test
//! based on Wolfe's minimum-norm-point algorithm.
//!
//! The hull is found by supporting-plane enumeration over point triples,
//! which is quartic in the point count but exact in its combinatorics:
//! coplanar facets are merged and vertices interior to a face or an edge are
//! dropped.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];

fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm(a: Vec3) -> f64 {
    libm::sqrt(dot(a, a))
}

fn scale_of(points: &[Vec3]) -> f64 {
    points.iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Face {
    /// Outward unit normal.
    pub normal: Vec3,
    pub offset: f64,
    /// Corner indices, counter-clockwise seen from outside.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hull {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<Face>,
}

impl Hull {
    /// `(V, E, F)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.faces.len())
    }

    pub fn is_vertex(&self, i: usize) -> bool {
        self.vertices.binary_search(&i).is_ok()
    }
}

/// Indices of the first representative of each cluster of points lying
/// within `tol` (max-norm) of an earlier representative.
pub fn dedup_points(points: &[Vec3], tol: f64) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let dup = reps.iter().any(|&j| {
            let q = points[j];
            (0..3).all(|k| (p[k] - q[k]).abs() <= tol)
        });
        if !dup {
            reps.push(i);
        }
    }
    reps
}

fn check_full_dimensional(points: &[Vec3], tol: f64) -> Result<()> {
    let n = points.len();
    if n < 4 {
        return Err(Error::Degenerate("a 3D hull needs at least four points"));
    }
    let a = points[0];
    let far = |f: &dyn Fn(Vec3) -> f64| {
        (1..n).map(|i| (i, f(points[i]))).fold((0, 0.0), |m, x| if x.1 > m.1 { x } else { m })
    };
    let (b, db) = far(&|p| norm(sub(p, a)));
    if db <= tol {
        return Err(Error::Degenerate("all points coincide"));
    }
    let ab = sub(points[b], a);
    let (c, dc) = far(&|p| norm(cross(ab, sub(p, a))) / db);
    if dc <= tol {
        return Err(Error::Degenerate("all points are collinear"));
    }
    let nrm = cross(ab, sub(points[c], a));
    let nn = norm(nrm);
    let (_, dd) = far(&|p| dot(nrm, sub(p, a)).abs() / nn);
    if dd <= tol {
        return Err(Error::Degenerate("all points are coplanar"));
    }
    Ok(())
}

/// Convex polygon of `idx` (all lying in the plane with unit normal `n`),
/// counter-clockwise about `n`, without collinear points.
fn face_polygon(points: &[Vec3], idx: &[usize], n: Vec3, tol: f64) -> Vec<usize> {
    let helper = if n[0].abs() < 0.6 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let u = {
        let c = cross(n, helper);
        let k = norm(c);
        [c[0] / k, c[1] / k, c[2] / k]
    };
    let v = cross(n, u);
    let mut pts: Vec<(f64, f64, usize)> =
        idx.iter().map(|&i| (dot(points[i], u), dot(points[i], v), i)).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let turn = |o: &(f64, f64, usize), a: &(f64, f64, usize), b: &(f64, f64, usize)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64, usize)> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= tol {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<(f64, f64, usize)> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= tol {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.into_iter().chain(upper).map(|p| p.2).collect()
}

/// Hull of `points` with coplanarity tolerance `tol`, scaled by the largest
/// coordinate magnitude when that exceeds 1.
pub fn convex_hull(points: &[Vec3], tol: f64) -> Result<Hull> {
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("hull points must be finite"));
    }
    let eps = tol * scale_of(points);
    check_full_dimensional(points, eps)?;
    let n = points.len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let raw = cross(sub(points[j], points[i]), sub(points[k], points[i]));
                let len = norm(raw);
                if len <= eps * eps.max(1.0) {
                    continue;
                }
                let mut nrm = [raw[0] / len, raw[1] / len, raw[2] / len];
                let mut off = dot(nrm, points[i]);
                let (mut above, mut below) = (false, false);
                for p in points {
                    let h = dot(nrm, *p) - off;
                    above |= h > eps;
                    below |= h < -eps;
                    if above && below {
                        break;
                    }
                }
                if above && below {
                    continue;
                }
                if above {
                    nrm = nrm.map(|x| -x);
                    off = -off;
                }
                let on: Vec<usize> =
                    (0..n).filter(|&m| (dot(nrm, points[m]) - off).abs() <= eps).collect();
                if seen.insert(on.clone()) {
                    let vertices = face_polygon(points, &on, nrm, eps * eps.max(1.0));
                    faces.push(Face { normal: nrm, offset: off, vertices });
                }
            }
        }
    }
    let mut verts = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for f in &faces {
        let m = f.vertices.len();
        for a in 0..m {
            let (p, q) = (f.vertices[a], f.vertices[(a + 1) % m]);
            verts.insert(p);
            edges.insert((p.min(q), p.max(q)));
        }
    }
    let hull = Hull { vertices: verts.into_iter().collect(), edges: edges.into_iter().collect(), faces };
    let (v, e, f) = hull.counts();
    if v + f != e + 2 {
        return Err(Error::Degenerate("hull combinatorics violate Euler's formula"));
    }
    Ok(hull)
}

/// Solves `[G 1; 1ᵀ 0]·[α; μ] = [0; 1]` for the affine minimum-norm
/// combination of `pts`.
fn affine_min_norm(pts: &[Vec3]) -> Option<Vec<f64>> {
    let m = pts.len();
    let size = m + 1;
    let mut a = alloc::vec![0.0; size * (size + 1)];
    let w = size + 1;
    for r in 0..m {
        for c in 0..m {
            a[r * w + c] = dot(pts[r], pts[c]);
        }
        a[r * w + m] = 1.0;
        a[m * w + r] = 1.0;
    }
    a[m * w + size] = 1.0;
    for col in 0..size {
        let piv = (col..size).max_by(|&x, &y| a[x * w + col].abs().total_cmp(&a[y * w + col].abs()))?;
        if a[piv * w + col].abs() < 1e-14 {
            return None;
        }
        for c in 0..w {
            a.swap(col * w + c, piv * w + c);
        }
        for r in 0..size {
            if r != col {
                let f = a[r * w + col] / a[col * w + col];
                for c in col..w {
                    a[r * w + c] -= f * a[col * w + c];
                }
            }
        }
    }
    Some((0..m).map(|r| a[r * w + size] / a[r * w + r]).collect())
}

fn combine(pts: &[Vec3], lambda: &[f64]) -> Vec3 {
    let mut x = [0.0; 3];
    for (p, l) in pts.iter().zip(lambda) {
        for k in 0..3 {
            x[k] += l * p[k];
        }
    }
    x
}

/// The point of minimum Euclidean norm in the convex hull of `points`
/// (Wolfe's algorithm).
pub fn min_norm_point(points: &[Vec3]) -> Result<Vec3> {
    if points.is_empty() {
        return Err(Error::InvalidInput("empty point set"));
    }
    let big = points.iter().map(|p| dot(*p, *p)).fold(0.0, f64::max).max(1e-300);
    let start = (0..points.len()).min_by(|&a, &b| dot(points[a], points[a]).total_cmp(&dot(points[b], points[b])));
    let mut set: Vec<usize> = alloc::vec![start.unwrap_or(0)];
    let mut lambda: Vec<f64> = alloc::vec![1.0];
    let mut x = points[set[0]];
    for _ in 0..1000 {
        let (j, xq) = (0..points.len())
            .map(|j| (j, dot(x, points[j])))
            .fold((0, f64::INFINITY), |m, v| if v.1 < m.1 { v } else { m });
        if dot(x, x) - xq <= 1e-12 * big || set.contains(&j) {
            return Ok(x);
        }
        set.push(j);
        lambda.push(0.0);
        loop {
            let sub_pts: Vec<Vec3> = set.iter().map(|&i| points[i]).collect();
            let alpha = affine_min_norm(&sub_pts)
                .ok_or(Error::Degenerate("affinely dependent corral in min-norm search"))?;
            if alpha.iter().all(|a| *a > 1e-15) {
                lambda = alpha;
                x = combine(&sub_pts, &lambda);
                break;
            }
            let theta = lambda
                .iter()
                .zip(&alpha)
                .filter(|(_, a)| **a <= 1e-15)
                .map(|(l, a)| l / (l - a))
                .fold(1.0f64, f64::min);
            for (l, a) in lambda.iter_mut().zip(&alpha) {
                *l += theta * (a - *l);
            }
            let mut k = 0;
            while k < set.len() {
                if lambda[k] <= 1e-15 {
                    set.remove(k);
                    lambda.remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = lambda.iter().sum();
            lambda.iter_mut().for_each(|l| *l /= total);
        }
    }
    Err(Error::Degenerate("min-norm search did not converge"))
}

/// Indices of points at distance greater than `tol` from the hull of the
/// remaining points. Input should be free of duplicates.
pub fn extreme_points(points: &[Vec3], tol: f64) -> Result<Vec<usize>> {
    let eps = tol * scale_of(points);
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let others: Vec<Vec3> =
            points.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| sub(*q, *p)).collect();
        if others.is_empty() || norm(min_norm_point(&others)?) > eps {
            out.push(i);
        }
    }
    Ok(out)
}
