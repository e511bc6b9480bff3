//! Upper half-plane primitives: points, ideal points, geodesics, Möbius maps,
//! ideal triangles and the constructions built from them.

use crate::error::{Error, Result};

/// Default absolute tolerance for scalar comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IdealPoint {
    Finite(f64),
    Infinity,
}

impl IdealPoint {
    pub fn finite(self) -> Option<f64> {
        match self {
            IdealPoint::Finite(x) => Some(x),
            IdealPoint::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, IdealPoint::Infinity)
    }

    pub fn approx_eq(self, other: IdealPoint, tol: f64) -> bool {
        match (self, other) {
            (IdealPoint::Infinity, IdealPoint::Infinity) => true,
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) => (a - b).abs() <= tol,
            _ => false,
        }
    }
}

impl From<f64> for IdealPoint {
    fn from(x: f64) -> Self {
        IdealPoint::Finite(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H2Point {
    x: f64,
    y: f64,
}

impl H2Point {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::NotInUpperHalfPlane(x, y));
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Hyperbolic distance.
    pub fn distance(&self, o: &H2Point) -> f64 {
        let dx = self.x - o.x;
        let dy = self.y - o.y;
        let arg = 1.0 + (dx * dx + dy * dy) / (2.0 * self.y * o.y);
        crate::scalar::acosh_clamped(arg)
    }
}

/// Oriented geodesic from `a` to `b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    a: IdealPoint,
    b: IdealPoint,
}

impl Geodesic {
    pub fn new(a: impl Into<IdealPoint>, b: impl Into<IdealPoint>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a == b {
            return Err(Error::Degenerate("geodesic endpoints coincide"));
        }
        if let Some(false) = a.finite().map(f64::is_finite) {
            return Err(Error::InvalidInput("non-finite endpoint"));
        }
        if let Some(false) = b.finite().map(f64::is_finite) {
            return Err(Error::InvalidInput("non-finite endpoint"));
        }
        Ok(Self { a, b })
    }

    pub fn start(&self) -> IdealPoint {
        self.a
    }

    pub fn end(&self) -> IdealPoint {
        self.b
    }

    pub fn reversed(&self) -> Self {
        Self { a: self.b, b: self.a }
    }

    pub fn has_endpoint(&self, v: IdealPoint, tol: f64) -> bool {
        self.a.approx_eq(v, tol) || self.b.approx_eq(v, tol)
    }
}

/// Orientation-preserving isometry `z ↦ (az + b)/(cz + d)`, stored with determinant 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl MobiusMap {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::InvalidInput("Möbius map needs positive finite determinant"));
        }
        let s = libm::sqrt(det);
        Ok(Self { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub const fn identity() -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn translation(t: f64) -> Self {
        Self { a: 1.0, b: t, c: 0.0, d: 1.0 }
    }

    /// `z ↦ k z` for `k > 0`.
    pub fn dilation(k: f64) -> Result<Self> {
        Self::new(k, 0.0, 0.0, 1.0)
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// `self ∘ other`.
    pub fn compose(&self, o: &MobiusMap) -> MobiusMap {
        let m = MobiusMap {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        };
        m.renormalized()
    }

    fn renormalized(self) -> Self {
        let s = libm::sqrt(self.det());
        Self { a: self.a / s, b: self.b / s, c: self.c / s, d: self.d / s }
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn apply_ideal(&self, z: IdealPoint) -> IdealPoint {
        match z {
            IdealPoint::Infinity => {
                if self.c == 0.0 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite(self.a / self.c)
                }
            }
            IdealPoint::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    IdealPoint::Infinity
                } else {
                    IdealPoint::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }

    pub fn apply_point(&self, p: &H2Point) -> H2Point {
        let (x, y) = (p.x, p.y);
        let dr = self.c * x + self.d;
        let di = self.c * y;
        let n2 = dr * dr + di * di;
        let nr = self.a * x + self.b;
        let ni = self.a * y;
        H2Point { x: (nr * dr + ni * di) / n2, y: (ni * dr - nr * di) / n2 }
    }

    pub fn apply_geodesic(&self, g: &Geodesic) -> Geodesic {
        Geodesic { a: self.apply_ideal(g.a), b: self.apply_ideal(g.b) }
    }

    pub fn apply_triangle(&self, t: &IdealTriangle) -> IdealTriangle {
        IdealTriangle { v: t.v.map(|z| self.apply_ideal(z)) }
    }

    /// The orientation-preserving map with `a ↦ 0` and `b ↦ ∞` fixing the
    /// standard frame used throughout this module.
    pub fn normalizing(a: IdealPoint, b: IdealPoint) -> Result<MobiusMap> {
        match (a, b) {
            (IdealPoint::Finite(a), IdealPoint::Infinity) => Ok(Self::translation(-a)),
            (IdealPoint::Infinity, IdealPoint::Finite(b)) => Self::new(0.0, -1.0, 1.0, -b),
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) if a != b => {
                if a > b {
                    Self::new(1.0, -a, 1.0, -b)
                } else {
                    Self::new(-1.0, a, 1.0, -b)
                }
            }
            _ => Err(Error::Degenerate("normalizing frame needs two distinct points")),
        }
    }

    /// The unique Möbius map sending `src[i]` to `dst[i]`; fails if that map
    /// reverses orientation.
    pub fn from_triples(src: [IdealPoint; 3], dst: [IdealPoint; 3]) -> Result<MobiusMap> {
        let s = cross_ratio_frame(src)?;
        let d = cross_ratio_frame(dst)?;
        let [a1, b1, c1, d1] = s;
        let [a2, b2, c2, d2] = d;
        let di = [d2, -b2, -c2, a2];
        let m = [
            di[0] * a1 + di[1] * c1,
            di[0] * b1 + di[1] * d1,
            di[2] * a1 + di[3] * c1,
            di[2] * b1 + di[3] * d1,
        ];
        let det = m[0] * m[3] - m[1] * m[2];
        if !(det > 0.0) {
            return Err(Error::InvalidInput("triples have opposite orientations"));
        }
        Self::new(m[0], m[1], m[2], m[3])
    }

    /// Fixed points on the boundary. Parabolic maps return the same point
    /// twice; elliptic maps are rejected.
    pub fn fixed_points(&self) -> Result<(IdealPoint, IdealPoint)> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
        let raw = (a - d) * (a - d) + 4.0 * b * c;
        if raw < -1e-12 * scale * scale.max(1.0) {
            return Err(Error::Degenerate("elliptic map has no ideal fixed points"));
        }
        if c.abs() <= 1e-14 * scale {
            if (d - a).abs() <= 1e-14 * scale {
                return Ok((IdealPoint::Infinity, IdealPoint::Infinity));
            }
            return Ok((IdealPoint::Infinity, IdealPoint::Finite(b / (d - a))));
        }
        let disc = raw.max(0.0);
        let r = libm::sqrt(disc);
        let amd = a - d;
        let big = if amd >= 0.0 { amd + r } else { amd - r };
        let z1 = big / (2.0 * c);
        let z2 = if big == 0.0 { z1 } else { -2.0 * b / big };
        Ok((IdealPoint::Finite(z1), IdealPoint::Finite(z2)))
    }
}

fn cross_ratio_frame(z: [IdealPoint; 3]) -> Result<[f64; 4]> {
    use IdealPoint::*;
    let m = match z {
        [Finite(z1), Finite(z2), Infinity] => [1.0, -z1, 0.0, z2 - z1],
        [Infinity, Finite(z2), Finite(z3)] => [0.0, z2 - z3, 1.0, -z3],
        [Finite(z1), Infinity, Finite(z3)] => [1.0, -z1, 1.0, -z3],
        [Finite(z1), Finite(z2), Finite(z3)] => {
            [z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)]
        }
        _ => return Err(Error::Degenerate("repeated point at infinity")),
    };
    if m[0] * m[3] - m[1] * m[2] == 0.0 {
        return Err(Error::Degenerate("repeated points in triple"));
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealTriangle {
    v: [IdealPoint; 3],
}

impl IdealTriangle {
    pub fn new(
        v1: impl Into<IdealPoint>,
        v2: impl Into<IdealPoint>,
        v3: impl Into<IdealPoint>,
    ) -> Result<Self> {
        let v = [v1.into(), v2.into(), v3.into()];
        if v[0] == v[1] || v[1] == v[2] || v[0] == v[2] {
            return Err(Error::Degenerate("triangle has repeated vertices"));
        }
        Ok(Self { v })
    }

    pub fn vertices(&self) -> [IdealPoint; 3] {
        self.v
    }

    /// Edge `k` joins vertex `k` to vertex `k + 1` (indices mod 3, zero-based).
    pub fn edge(&self, k: usize) -> Result<Geodesic> {
        if k > 2 {
            return Err(Error::InvalidInput("edge index must be 0, 1 or 2"));
        }
        Ok(Geodesic { a: self.v[k], b: self.v[(k + 1) % 3] })
    }

    pub fn vertex_index(&self, p: IdealPoint, tol: f64) -> Option<usize> {
        self.v.iter().position(|v| v.approx_eq(p, tol))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    center: (f64, f64),
    radius: f64,
}

impl Circle {
    pub fn new(center: (f64, f64), radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidInput("circle radius must be positive"));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> (f64, f64) {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// `mobius_apply` on interior points.
pub fn mobius_apply(m: &MobiusMap, p: &H2Point) -> H2Point {
    m.apply_point(p)
}

/// `mobius_apply` on boundary points.
pub fn mobius_apply_ideal(m: &MobiusMap, z: IdealPoint) -> IdealPoint {
    m.apply_ideal(z)
}

/// Foot of the perpendicular dropped from the ideal point `v` to `g`.
pub fn perpendicular_foot(v: IdealPoint, g: &Geodesic) -> Result<H2Point> {
    let m = MobiusMap::normalizing(g.a, g.b)?;
    match m.apply_ideal(v) {
        IdealPoint::Finite(w) if w != 0.0 => {
            Ok(m.inverse().apply_point(&H2Point { x: 0.0, y: w.abs() }))
        }
        _ => Err(Error::Degenerate("ideal point is an endpoint of the geodesic")),
    }
}

/// Tangency point of the incircle of `t` with edge `edge` (zero-based).
pub fn triangle_median(t: &IdealTriangle, edge: usize) -> Result<H2Point> {
    let g = t.edge(edge)?;
    perpendicular_foot(t.v[(edge + 2) % 3], &g)
}

/// The incircle as a Euclidean circle through the three medians.
pub fn incircle(t: &IdealTriangle) -> Result<Circle> {
    let p = [triangle_median(t, 0)?, triangle_median(t, 1)?, triangle_median(t, 2)?];
    let (ax, ay) = (p[0].x, p[0].y);
    let (bx, by) = (p[1].x, p[1].y);
    let (cx, cy) = (p[2].x, p[2].y);
    let d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if d == 0.0 {
        return Err(Error::Degenerate("collinear medians"));
    }
    let a2 = ax * ax + ay * ay;
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    let uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    let r = libm::hypot(ax - ux, ay - uy);
    Circle::new((ux, uy), r)
}

/// Slide `p` along the horocycle centred at `center` until it meets `g`,
/// which must end at `center`.
pub fn horocyclic_projection(p: &H2Point, center: IdealPoint, g: &Geodesic) -> Result<H2Point> {
    let other = if g.a == center {
        g.b
    } else if g.b == center {
        g.a
    } else {
        return Err(Error::Incidence);
    };
    let m = MobiusMap::normalizing(other, center)?;
    let q = m.apply_point(p);
    Ok(m.inverse().apply_point(&H2Point { x: 0.0, y: q.y }))
}

/// Signed distance from `p` to `q` measured along `g`, positive in the
/// direction of `g`. Points off `g` are first projected along horocycles
/// centred at `g`'s endpoint.
pub fn signed_distance(g: &Geodesic, p: &H2Point, q: &H2Point) -> Result<f64> {
    let m = MobiusMap::normalizing(g.a, g.b)?;
    Ok(libm::log(m.apply_point(q).y / m.apply_point(p).y))
}

/// Shear between `t1` and `t2` along `g`, using the default tolerance.
pub fn shear(t1: &IdealTriangle, t2: &IdealTriangle, g: &Geodesic) -> Result<f64> {
    shear_with_tol(t1, t2, g, DEFAULT_TOL)
}

/// Shear between `t1` and `t2` along `g`.
///
/// `g` runs from a vertex `v1` of `t1` to a vertex `v2` of `t2`, with `t1` on
/// its left. Each `t_i` contributes the median on its edge facing `g`, slid
/// onto `g` by the parabolic fixing `v_i`.
pub fn shear_with_tol(
    t1: &IdealTriangle,
    t2: &IdealTriangle,
    g: &Geodesic,
    tol: f64,
) -> Result<f64> {
    let (v1, v2) = (g.a, g.b);
    if t1.vertex_index(v1, tol).is_none() || t2.vertex_index(v2, tol).is_none() {
        return Err(Error::Incidence);
    }
    let q1 = projected_median(t1, v1, v2, tol)?;
    let q2 = projected_median(t2, v2, v1, tol)?;
    signed_distance(g, &q1, &q2)
}

fn projected_median(
    t: &IdealTriangle,
    apex: IdealPoint,
    far: IdealPoint,
    tol: f64,
) -> Result<H2Point> {
    let frame = MobiusMap::normalizing(far, apex)?;
    let k = t.vertex_index(apex, tol).ok_or(Error::Incidence)?;
    let mut best: Option<(usize, f64)> = None;
    for j in [(k + 1) % 3, (k + 2) % 3] {
        let w = match frame.apply_ideal(t.v[j]) {
            IdealPoint::Finite(w) => w,
            IdealPoint::Infinity => return Err(Error::NotSeparating),
        };
        if w < -tol {
            return Err(Error::NotSeparating);
        }
        if best.is_none_or(|(_, b)| w < b) {
            best = Some((j, w));
        }
    }
    let (j, _) = best.ok_or(Error::NotSeparating)?;
    let edge = Geodesic::new(apex, t.v[j])?;
    let opposite = t.v[3 - k - j];
    let m = perpendicular_foot(opposite, &edge)?;
    let g = Geodesic::new(far, apex)?;
    horocyclic_projection(&m, apex, &g)
}

/// Foot on `g1` of the common perpendicular to `g1` and `g2`.
pub fn orthofoot(g1: &Geodesic, g2: &Geodesic) -> Result<H2Point> {
    let m = MobiusMap::normalizing(g1.a, g1.b)?;
    let (a, b) = match (m.apply_ideal(g2.a), m.apply_ideal(g2.b)) {
        (IdealPoint::Finite(a), IdealPoint::Finite(b)) => (a, b),
        _ => return Err(Error::NotUltraparallel),
    };
    if !(a * b > 0.0) {
        return Err(Error::NotUltraparallel);
    }
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let radius = libm::sqrt(c * c - r * r);
    Ok(m.inverse().apply_point(&H2Point { x: 0.0, y: radius }))
}

/// Hyperbolic translation along `g` by `length`, in the direction of `g`.
pub fn axis_translation(g: &Geodesic, length: f64) -> Result<MobiusMap> {
    if !(length > 0.0) {
        return Err(Error::InvalidInput("translation length must be positive"));
    }
    let m = MobiusMap::normalizing(g.a, g.b)?;
    let h = libm::exp(0.5 * length);
    let t = MobiusMap { a: h, b: 0.0, c: 0.0, d: 1.0 / h };
    Ok(m.inverse().compose(&t).compose(&m))
}

/// Third vertex of the ideal triangle glued to `t` along edge `edge` with
/// shear `s` across that edge.
pub fn adjacent_vertex(t: &IdealTriangle, edge: usize, s: f64) -> Result<IdealPoint> {
    let g = t.edge(edge)?;
    let m = MobiusMap::normalizing(g.a, g.b)?;
    let z = match m.apply_ideal(t.v[(edge + 2) % 3]) {
        IdealPoint::Finite(z) if z != 0.0 => z,
        _ => return Err(Error::Degenerate("triangle vertex on edge")),
    };
    let r = if z < 0.0 { -z * libm::exp(s) } else { -z * libm::exp(-s) };
    Ok(m.inverse().apply_ideal(IdealPoint::Finite(r)))
}
