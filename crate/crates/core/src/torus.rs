//! Holonomy model of the once-punctured torus.
//!
//! `A` translates along `(0, ∞)` by `l`; at zero twist `B` is the symmetric
//! matrix whose axis meets `A`'s at a right angle with `tr[A, B] = −2`.
//! Twisting by `τ` composes `B` with the translation by `τ` along `A`'s axis.
//! Simple closed curves correspond to slopes `p/q`; the curve of slope `p/q`
//! is represented by the Christoffel word with `p` letters `A^{±1}` and `q`
//! letters `B`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::acosh_clamped;
use crate::stretch::{twist_along_stretch, Direction, FNPoint, StretchSpec, Surface};
use crate::pants::Twist;

/// Default slope search bound.
pub const DEFAULT_MAX_Q: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [f64; 4]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([1.0, 0.0, 0.0, 1.0]);

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Mat2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn trace(&self) -> f64 {
        self.0[0] + self.0[3]
    }

    pub fn det(&self) -> f64 {
        self.0[0] * self.0[3] - self.0[1] * self.0[2]
    }

    /// Inverse of a determinant-one matrix.
    pub fn inv(&self) -> Mat2 {
        let [a, b, c, d] = self.0;
        Mat2([d, -b, -c, a])
    }

    fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

/// A matrix stored as `e^{log_scale} · m` with `m` of unit max-entry.
#[derive(Debug, Clone, Copy)]
struct Scaled {
    m: Mat2,
    log_scale: f64,
}

impl Scaled {
    fn new(m: Mat2) -> Self {
        Scaled { m, log_scale: 0.0 }.normalized()
    }

    fn normalized(self) -> Self {
        let s = self.m.max_abs();
        Scaled { m: Mat2(self.m.0.map(|x| x / s)), log_scale: self.log_scale + libm::log(s) }
    }

    fn mul(&self, o: &Scaled) -> Scaled {
        Scaled { m: self.m.mul(&o.m), log_scale: self.log_scale + o.log_scale }.normalized()
    }

    fn length(&self) -> Result<f64> {
        let t = self.m.trace().abs();
        if t == 0.0 {
            return Err(Error::NonHyperbolic(0.0));
        }
        let log_tr = libm::log(t) + self.log_scale;
        if log_tr > 30.0 {
            return Ok(2.0 * log_tr);
        }
        let tr = libm::exp(log_tr);
        if tr <= 2.0 - 1e-12 {
            return Err(Error::NonHyperbolic(tr));
        }
        let len = 2.0 * acosh_clamped(tr / 2.0);
        if !(len > 0.0) {
            return Err(Error::NonHyperbolic(tr));
        }
        Ok(len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusRep {
    a: Mat2,
    b: Mat2,
}

impl TorusRep {
    /// Checks are relative to the entry sizes, so that generators with
    /// large entries (short `α`) are not rejected for rounding.
    pub fn new(a: Mat2, b: Mat2) -> Result<Self> {
        let na = a.max_abs().max(1.0);
        let nb = b.max_abs().max(1.0);
        if (a.det() - 1.0).abs() > 1e-9 * na * na || (b.det() - 1.0).abs() > 1e-9 * nb * nb {
            return Err(Error::InvalidInput("generators must have determinant one"));
        }
        if !(a.trace().abs() > 2.0) {
            return Err(Error::NonHyperbolic(a.trace().abs()));
        }
        let r = TorusRep { a, b };
        if (r.commutator_trace() + 2.0).abs() > 1e-9 * (na * nb) * (na * nb) {
            return Err(Error::InvalidInput("commutator trace must be -2"));
        }
        Ok(r)
    }

    pub fn a(&self) -> Mat2 {
        self.a
    }

    pub fn b(&self) -> Mat2 {
        self.b
    }

    pub fn commutator_trace(&self) -> f64 {
        self.a.mul(&self.b).mul(&self.a.inv()).mul(&self.b.inv()).trace()
    }

    fn letter(&self, l: Letter) -> Mat2 {
        match l {
            Letter::A => self.a,
            Letter::AInv => self.a.inv(),
            Letter::B => self.b,
        }
    }
}

/// Representation with `α` of length `l` and twist `τ` about `α`.
pub fn rep_from_fn(l: f64, tau: f64) -> Result<TorusRep> {
    if !(l > 0.0) || !l.is_finite() || !tau.is_finite() {
        return Err(Error::InvalidInput("length must be positive and twist finite"));
    }
    let h = libm::exp(l / 2.0);
    let a = Mat2([h, 0.0, 0.0, 1.0 / h]);
    let coth = 1.0 / libm::tanh(l / 2.0);
    let csch = 1.0 / libm::sinh(l / 2.0);
    let k = libm::exp(tau / 2.0);
    let b = Mat2([coth * k, csch / k, csch * k, coth / k]);
    TorusRep::new(a, b)
}

pub fn rep_of(x: &FNPoint) -> Result<TorusRep> {
    require_s11(x)?;
    rep_from_fn(x.length(0), x.twist(0))
}

fn require_s11(x: &FNPoint) -> Result<()> {
    if x.surface() != Surface::S11 {
        return Err(Error::InvalidInput("the torus model needs a point on the punctured torus"));
    }
    Ok(())
}

/// Slope `p/q` with `gcd(p, q) = 1`, `q ≥ 0`, and `∞ = 1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };
    pub const ZERO: Slope = Slope { p: 0, q: 1 };

    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidInput("0/0 is not a slope"));
        }
        let g = gcd(p.unsigned_abs(), q.unsigned_abs()) as i64;
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Geometric intersection number on the punctured torus.
    pub fn intersection(&self, o: &Slope) -> u64 {
        (self.p * o.q - self.q * o.p).unsigned_abs()
    }

    /// Image under `k` Dehn twists about `α`: `p/q ↦ (p + kq)/q`.
    pub fn twisted(&self, k: i64) -> Slope {
        Slope { p: self.p + k * self.q, q: self.q }
    }
}

impl core::fmt::Display for Slope {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.q == 0 {
            f.write_str("inf")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    A,
    AInv,
    B,
}

/// Christoffel word of `s`, built by Stern-Brocot descent: the word of a
/// mediant is the word of its left parent followed by that of its right.
pub fn slope_word(s: &Slope) -> Vec<Letter> {
    if s.q == 0 {
        return alloc::vec![Letter::A];
    }
    if s.p == 0 {
        return alloc::vec![Letter::B];
    }
    let a = if s.p > 0 { Letter::A } else { Letter::AInv };
    let (p, q) = (s.p.abs(), s.q);
    let (mut lo, mut hi) = ((0i64, 1i64), (1i64, 0i64));
    let (mut wl, mut wr) = (alloc::vec![Letter::B], alloc::vec![a]);
    loop {
        let m = (lo.0 + hi.0, lo.1 + hi.1);
        let mut w = wl.clone();
        w.extend_from_slice(&wr);
        match (p * m.1).cmp(&(m.0 * q)) {
            Ordering::Equal => return w,
            Ordering::Less => {
                hi = m;
                wr = w;
            }
            Ordering::Greater => {
                lo = m;
                wl = w;
            }
        }
    }
}

/// Length of the geodesic of slope `s`.
pub fn curve_length(r: &TorusRep, s: &Slope) -> Result<f64> {
    let mut acc = Scaled::new(Mat2::IDENTITY);
    for l in slope_word(s) {
        acc = acc.mul(&Scaled::new(r.letter(l)));
    }
    acc.length()
}

/// Lengths of every slope with `|p| ≤ n` and `q ≤ n`, in a fixed order:
/// `∞`, `0`, then the positive and negative Stern-Brocot subtrees depth-first.
pub fn slope_lengths(r: &TorusRep, n: u32) -> Result<Vec<(Slope, f64)>> {
    let n = n as i64;
    let mut out = Vec::new();
    let a = Scaled::new(r.a);
    let b = Scaled::new(r.b);
    out.push((Slope::INFINITY, a.length()?));
    out.push((Slope::ZERO, b.length()?));
    for (sign, right) in [(1i64, a), (-1i64, Scaled::new(r.a.inv()))] {
        walk(n, sign, (0, 1), (1, 0), b, right, &mut out)?;
    }
    Ok(out)
}

fn walk(
    n: i64,
    sign: i64,
    lo: (i64, i64),
    hi: (i64, i64),
    wl: Scaled,
    wr: Scaled,
    out: &mut Vec<(Slope, f64)>,
) -> Result<()> {
    let m = (lo.0 + hi.0, lo.1 + hi.1);
    if m.0 > n || m.1 > n {
        return Ok(());
    }
    let w = wl.mul(&wr);
    out.push((Slope { p: sign * m.0, q: m.1 }, w.length()?));
    walk(n, sign, lo, m, wl, w, out)?;
    walk(n, sign, m, hi, w, wr, out)
}

/// Number of Dehn twists about `α` bringing `x`'s twist into `[-l/2, l/2]`.
pub fn twist_renormalization(x: &FNPoint) -> i64 {
    libm::round(x.twist(0) / x.length(0)) as i64
}

fn renormalized(x: &FNPoint, k: i64) -> Result<FNPoint> {
    FNPoint::s11(x.length(0), x.twist(0) - k as f64 * x.length(0))
}

/// Lower bound for the Thurston distance from `x` to `y`: the largest log
/// length ratio over slopes in the box `|p|, q ≤ max_q`, taken in the marking
/// where `x`'s twist is smallest.
pub fn dth_estimate(x: &FNPoint, y: &FNPoint, max_q: u32) -> Result<f64> {
    require_s11(x)?;
    require_s11(y)?;
    if max_q < 1 {
        return Err(Error::InvalidInput("max_q must be at least 1"));
    }
    let k = twist_renormalization(x);
    let lx = slope_lengths(&rep_of(&renormalized(x, k)?)?, max_q)?;
    let ly = slope_lengths(&rep_of(&renormalized(y, k)?)?, max_q)?;
    Ok(lx
        .iter()
        .zip(&ly)
        .map(|((_, a), (_, b))| libm::log(b / a))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Earthquake of length `t` along `α`: the twist grows by `t`.
pub fn earthquake(x: &FNPoint, t: f64) -> Result<FNPoint> {
    require_s11(x)?;
    FNPoint::s11(x.length(0), x.twist(0) + t)
}

/// `(β, β')`: the shortest slope and the shortest slope meeting it, with
/// lengths compared to 1e-9 and ties going to smaller `q`, then smaller `|p|`.
pub fn short_marking(x: &FNPoint) -> Result<(Slope, Slope)> {
    short_marking_with_bound(x, DEFAULT_MAX_Q)
}

pub fn short_marking_with_bound(x: &FNPoint, bound: u32) -> Result<(Slope, Slope)> {
    require_s11(x)?;
    let k = twist_renormalization(x);
    let table: Vec<(Slope, f64)> = slope_lengths(&rep_of(&renormalized(x, k)?)?, bound)?
        .into_iter()
        .map(|(s, l)| (s.twisted(-k), l))
        .collect();
    let better = |a: &(Slope, f64), b: &(Slope, f64)| {
        if (a.1 - b.1).abs() > 1e-9 {
            return a.1 < b.1;
        }
        (a.0.q, a.0.p.abs(), a.0.p) < (b.0.q, b.0.p.abs(), b.0.p)
    };
    let pick = |pred: &dyn Fn(&Slope) -> bool| {
        let mut best: Option<(Slope, f64)> = None;
        for e in table.iter().filter(|e| pred(&e.0)) {
            if best.is_none_or(|b| better(e, &b)) {
                best = Some(*e);
            }
        }
        best.map(|b| b.0)
    };
    let beta = pick(&|_| true).ok_or(Error::Degenerate("empty slope table"))?;
    let dual = pick(&|s| s.intersection(&beta) > 0).ok_or(Error::Degenerate("no dual slope"))?;
    Ok((beta, dual))
}

/// `(Y^L_{-t}, Y^R_{-t})`: `y` stretched backward for time `t` along the left-
/// and right-twisting 3-symmetric completions.
pub fn stretch_endpoints(y: &FNPoint, t: f64) -> Result<(FNPoint, FNPoint)> {
    require_s11(y)?;
    if !(t >= 0.0) {
        return Err(Error::InvalidInput("t must be non-negative"));
    }
    let len = y.length(0) * libm::exp(-t);
    let end = |tw: Twist| -> Result<FNPoint> {
        let spec = StretchSpec::uniform(Surface::S11, tw, Direction::Backward, t)?;
        FNPoint::s11(len, twist_along_stretch(y, &spec, 0)?)
    };
    Ok((end(Twist::Left)?, end(Twist::Right)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stretch::{twist_width_closed, WidthConvention};

    #[test]
    fn puncture_condition() {
        for (l, tau) in [(0.1, 0.0), (1.0, 0.3), (3.0, -7.0), (6.0, 20.0)] {
            let r = rep_from_fn(l, tau).unwrap();
            assert!((r.commutator_trace() + 2.0).abs() < 1e-9);
            assert!((curve_length(&r, &Slope::INFINITY).unwrap() - l).abs() < 1e-12);
        }
        assert!(rep_from_fn(0.0, 0.0).is_err());
    }

    #[test]
    fn markov_identity() {
        for (l, tau) in [(0.5, 0.0), (1.7, 0.4), (2.5, -1.1)] {
            let r = rep_from_fn(l, tau).unwrap();
            let x = r.a.trace().abs();
            let y = r.b.trace().abs();
            let z = r.a.mul(&r.b).trace().abs();
            assert!(((x * x + y * y + z * z) / (x * y * z) - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn slope_normalization() {
        assert_eq!(Slope::new(-4, -6).unwrap(), Slope::new(2, 3).unwrap());
        assert_eq!(Slope::new(-3, 0).unwrap(), Slope::INFINITY);
        assert!(Slope::new(0, 0).is_err());
        assert_eq!(Slope::new(2, 3).unwrap().intersection(&Slope::new(1, 1).unwrap()), 1);
    }

    #[test]
    fn christoffel_words() {
        for (p, q) in [(1, 1), (2, 3), (5, 3), (7, 11), (-4, 9)] {
            let s = Slope::new(p, q).unwrap();
            let w = slope_word(&s);
            assert_eq!(w.len() as i64, p.abs() + q);
            let b = w.iter().filter(|&&l| l == Letter::B).count() as i64;
            assert_eq!(b, q);
        }
        assert_eq!(slope_word(&Slope::new(1, 1).unwrap()), [Letter::B, Letter::A]);
    }

    #[test]
    fn full_dehn_twist_relabels_slopes() {
        let (l, tau) = (1.3, 0.4);
        let twisted = rep_from_fn(l, tau + l).unwrap();
        let plain = rep_from_fn(l, tau).unwrap();
        for q in 1..=10i64 {
            for p in -10..=10i64 {
                let Ok(s) = Slope::new(p, q) else { continue };
                if s.q != q {
                    continue;
                }
                let a = curve_length(&twisted, &s).unwrap();
                let b = curve_length(&plain, &s.twisted(1)).unwrap();
                assert!((a - b).abs() < 1e-8, "{s}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn table_agrees_with_words() {
        let r = rep_from_fn(0.8, 0.3).unwrap();
        let table = slope_lengths(&r, 8).unwrap();
        for (s, l) in &table {
            assert!((curve_length(&r, s).unwrap() - l).abs() < 1e-9 * l.max(1.0));
        }
        let mut seen: Vec<Slope> = table.iter().map(|e| e.0).collect();
        let n = seen.len();
        seen.sort_by_key(|s| (s.p, s.q));
        seen.dedup();
        assert_eq!(seen.len(), n);
    }

    #[test]
    fn zero_slope_golden() {
        let l = 1.0;
        let r = rep_from_fn(l, 0.0).unwrap();
        let b = curve_length(&r, &Slope::ZERO).unwrap();
        let want = 2.0 * acosh_clamped(1.0 / libm::tanh(l / 2.0));
        assert!((b - want).abs() < 1e-14);
        assert!((b - 2.813_658_227_494_59).abs() < 1e-12, "{b}");
    }

    #[test]
    fn estimator_basics() {
        let x = FNPoint::s11(1.2, 0.3).unwrap();
        assert_eq!(dth_estimate(&x, &x, 10).unwrap(), 0.0);
        let y = FNPoint::s11(1.2, 0.3 + 1.2).unwrap();
        let a = dth_estimate(&x, &y, 5).unwrap();
        let b = dth_estimate(&x, &y, 30).unwrap();
        assert!(a <= b && a > 0.0);
        assert!(dth_estimate(&x, &y, 0).is_err());
    }

    #[test]
    fn short_markings() {
        let (b, d) = short_marking(&FNPoint::s11(0.1, 0.02).unwrap()).unwrap();
        assert_eq!(b, Slope::INFINITY);
        assert_eq!(d.q, 1);
        let square = 2.0 * acosh_clamped(libm::sqrt(2.0));
        let x = FNPoint::s11(square, 0.0).unwrap();
        let r = rep_of(&x).unwrap();
        let l0 = curve_length(&r, &Slope::ZERO).unwrap();
        assert!((l0 - square).abs() < 1e-12);
        let (b, d) = short_marking(&x).unwrap();
        assert_eq!((b, d), (Slope::INFINITY, Slope::ZERO));
        assert!(b.intersection(&d) > 0);
    }

    #[test]
    fn endpoints_gap() {
        let y = FNPoint::s11(2.4, 0.5).unwrap();
        let (l, r) = stretch_endpoints(&y, 0.0).unwrap();
        assert_eq!((&l, &r), (&y, &y));
        for t in [0.5, 2.0, 5.0] {
            let (l, r) = stretch_endpoints(&y, t).unwrap();
            let w = twist_width_closed(1.2, t, WidthConvention::Reconciled).unwrap();
            assert!((l.twist(0) - r.twist(0) - w).abs() < 1e-9);
            assert!((l.length(0) - 2.4 * libm::exp(-t)).abs() < 1e-14);
        }
    }
}
