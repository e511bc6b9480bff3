//! Bound expressions for the width of stretch-path envelopes on the
//! punctured torus, and grid sweeps over `(l0, t)`.
//!
//! Throughout, `u = l0·e^{-t}` where `l0 = lα(Y)/2`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::pants::Twist;
use crate::scalar::log_coth;
use crate::stretch::{
    twist_at, twist_width_closed, DeltaMethod, Direction, FNPoint, StretchSpec, Surface,
    WidthConvention,
};
use crate::torus::{dth_estimate, earthquake, stretch_endpoints, DEFAULT_MAX_Q};

/// `log(e^{lα/2}·t)`.
pub fn earthquake_bound(l_alpha: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::OutOfRegime("earthquake bound needs t > 0"));
    }
    Ok(0.5 * l_alpha + libm::log(t))
}

/// `4·lα·lβ/ε²`.
pub fn intersection_bound(l_alpha: f64, l_beta: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::OutOfRegime("intersection bound needs ε > 0"));
    }
    Ok(4.0 * l_alpha * l_beta / (eps * eps))
}

/// `2·log(1/l)` for `0 < l ≤ 1/e`.
pub fn collar_width(l: f64) -> Result<f64> {
    if !(l > 0.0) || l > libm::exp(-1.0) * (1.0 + 1e-15) {
        return Err(Error::OutOfRegime("collar width needs 0 < l ≤ 1/e"));
    }
    Ok(-2.0 * libm::log(l))
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::OutOfRegime("ε must lie in (0, 1)"));
    }
    Ok(())
}

/// `1 + u/log(1/ε) · 4(e^{-t} log coth l0 + log coth u)`, valid for `u ≤ ε`.
pub fn ratio_bound_thin(l0: f64, t: f64, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    if !(l0 > 0.0) || !(t >= 0.0) {
        return Err(Error::OutOfRegime("thin bound needs l0 > 0 and t ≥ 0"));
    }
    let u = l0 * libm::exp(-t);
    if u > eps {
        return Err(Error::OutOfRegime("thin bound needs l0·e^-t ≤ ε"));
    }
    let big_l = -libm::log(eps);
    Ok(1.0 + u / big_l * 4.0 * (libm::exp(-t) * log_coth(l0) + log_coth(u)))
}

/// Ceiling for [`ratio_bound_thin`] from `u·log coth u ≤ 1`:
/// `1 + 4(e^{-2t} + 1)/log(1/ε)`.
pub fn thin_ratio_ceiling(t: f64, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    Ok(1.0 + 4.0 * (libm::exp(-2.0 * t) + 1.0) / -libm::log(eps))
}

/// `e^{2u}·log coth u`.
pub fn decay_factor(u: f64) -> Result<f64> {
    decay_factor_with_exponent(u, 2.0)
}

/// `e^{k·u}·log coth u`.
pub fn decay_factor_with_exponent(u: f64, k: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::OutOfRegime("decay factor needs u > 0"));
    }
    Ok(libm::exp(k * u - 2.0 * u) * (libm::exp(2.0 * u) * log_coth(u)))
}

/// `4e^u(e^{-t} log coth l0 + log coth u)`, the earthquake-weighted twist
/// gap used when `u > 1`.
pub fn thick_bound(l0: f64, t: f64) -> Result<f64> {
    if !(l0 > 0.0) || !(t >= 0.0) {
        return Err(Error::OutOfRegime("thick bound needs l0 > 0 and t ≥ 0"));
    }
    let u = l0 * libm::exp(-t);
    if !(u > 1.0) {
        return Err(Error::OutOfRegime("thick bound needs l0·e^-t > 1"));
    }
    Ok(4.0 * libm::exp(u) * (libm::exp(-t) * log_coth(l0) + log_coth(u)))
}

/// Default ε: `min(0.3, 0.99·log 2)`.
pub fn default_epsilon() -> f64 {
    0.3f64.min(0.99 * core::f64::consts::LN_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Thin,
    Middle,
    Thick,
}

impl Regime {
    pub const ALL: [Regime; 3] = [Regime::Thin, Regime::Middle, Regime::Thick];

    pub fn classify(l0: f64, t: f64, eps: f64) -> Regime {
        let u = l0 * libm::exp(-t);
        if u <= eps {
            Regime::Thin
        } else if u > 1.0 {
            Regime::Thick
        } else {
            Regime::Middle
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Thin => "thin",
            Regime::Middle => "middle",
            Regime::Thick => "thick",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    l0: Vec<f64>,
    t: Vec<f64>,
    eps: f64,
    max_q: u32,
}

impl SweepGrid {
    pub fn new(l0: Vec<f64>, t: Vec<f64>, eps: f64, max_q: u32) -> Result<Self> {
        if l0.is_empty() || t.is_empty() {
            return Err(Error::InvalidInput("grid axes must be non-empty"));
        }
        if l0.iter().any(|x| !(*x > 0.0) || !x.is_finite()) {
            return Err(Error::InvalidInput("l0 values must be positive"));
        }
        if t.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) {
            return Err(Error::InvalidInput("t values must be non-negative"));
        }
        if l0.windows(2).any(|w| w[0] >= w[1]) || t.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("grid axes must be strictly ascending"));
        }
        if !(eps > 0.0 && eps <= core::f64::consts::LN_2) {
            return Err(Error::InvalidInput("ε must lie in (0, log 2]"));
        }
        if max_q < 1 {
            return Err(Error::InvalidInput("max_q must be at least 1"));
        }
        Ok(Self { l0, t, eps, max_q })
    }

    /// `l0 ∈ {0.1, 0.5, 1, 2, 5}`, `t ∈ [0, 12]` step 0.25.
    pub fn default_grid() -> Self {
        Self {
            l0: alloc::vec![0.1, 0.5, 1.0, 2.0, 5.0],
            t: uniform_steps(12.0, 0.25),
            eps: default_epsilon(),
            max_q: DEFAULT_MAX_Q,
        }
    }

    pub fn l0(&self) -> &[f64] {
        &self.l0
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn epsilon(&self) -> f64 {
        self.eps
    }

    pub fn max_q(&self) -> u32 {
        self.max_q
    }
}

/// `0, step, 2·step, …` up to and including `end` (within 1e-9).
pub fn uniform_steps(end: f64, step: f64) -> Vec<f64> {
    let n = libm::floor(end / step + 1e-9) as usize;
    (0..=n).map(|i| i as f64 * step).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub l0: f64,
    pub t: f64,
    pub regime: Regime,
    pub bound_value: f64,
    /// `θ(Y^L_{-t}) − θ(Y^R_{-t})`.
    pub twist_width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeSummary {
    pub regime: Regime,
    pub count: usize,
    pub sup: Option<f64>,
    pub argmax: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub summaries: [RegimeSummary; 3],
    pub global_bounded: bool,
    /// Largest bound value over the grid.
    pub empirical_b: f64,
    pub epsilon: f64,
    pub max_q: u32,
}

/// Point at signed time `s` on the left or right stretch path through `y`.
fn path_point(y: &FNPoint, twist: Twist, s: f64) -> Result<FNPoint> {
    let spec = StretchSpec::uniform(Surface::S11, twist, Direction::Forward, 0.0)?;
    let theta = twist_at(y, spec.pants(), 0, s, DeltaMethod::ClosedForm)?;
    FNPoint::s11(y.length(0) * libm::exp(s), theta)
}

/// `2(1 − ε) + max(d(Y0^R, Y0^L), d(Y0^L, Y0^R))` with `lα(Y0) = 1`.
pub fn middle_bound(l0: f64, eps: f64, max_q: u32) -> Result<f64> {
    let y = FNPoint::s11(2.0 * l0, 0.0)?;
    let s = -libm::log(2.0 * l0);
    let l = path_point(&y, Twist::Left, s)?;
    let r = path_point(&y, Twist::Right, s)?;
    let d = dth_estimate(&r, &l, max_q)?.max(dth_estimate(&l, &r, max_q)?);
    Ok(2.0 * (1.0 - eps) + d)
}

pub fn run_sweep(g: &SweepGrid) -> Result<SweepReport> {
    let mut rows = Vec::with_capacity(g.l0.len() * g.t.len());
    for &l0 in &g.l0 {
        let mut middle: Option<f64> = None;
        for &t in &g.t {
            let regime = Regime::classify(l0, t, g.eps);
            let bound_value = match regime {
                Regime::Thin => ratio_bound_thin(l0, t, g.eps)?,
                Regime::Thick => thick_bound(l0, t)?,
                Regime::Middle => match middle {
                    Some(v) => v,
                    None => *middle.insert(middle_bound(l0, g.eps, g.max_q)?),
                },
            };
            let twist_width = twist_width_closed(l0, t, WidthConvention::Reconciled)?;
            rows.push(SweepRow { l0, t, regime, bound_value, twist_width });
        }
    }
    let summaries = Regime::ALL.map(|regime| {
        let mut s = RegimeSummary { regime, count: 0, sup: None, argmax: None };
        for r in rows.iter().filter(|r| r.regime == regime) {
            s.count += 1;
            if s.sup.is_none_or(|m| r.bound_value > m) {
                s.sup = Some(r.bound_value);
                s.argmax = Some((r.l0, r.t));
            }
        }
        s
    });
    let global_bounded = rows.iter().all(|r| r.bound_value.is_finite());
    let empirical_b = rows.iter().map(|r| r.bound_value).fold(f64::NEG_INFINITY, f64::max);
    Ok(SweepReport { rows, summaries, global_bounded, empirical_b, epsilon: g.eps, max_q: g.max_q })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopePoint {
    pub t: f64,
    /// `dth_estimate(Y^L_{-t}, Y^R_{-t})`.
    pub dth_lr: f64,
    /// `dth_estimate(Y^R_{-t}, Y^L_{-t})`.
    pub dth_rl: f64,
    pub twist_gap: f64,
}

/// Distance estimates between the left and right backward stretches from
/// `Y` with `lα(Y) = 2·l0` and zero twist.
pub fn envelope_series(l0: f64, ts: &[f64], max_q: u32) -> Result<Vec<EnvelopePoint>> {
    let y = FNPoint::s11(2.0 * l0, 0.0)?;
    ts.iter()
        .map(|&t| {
            let (l, r) = stretch_endpoints(&y, t)?;
            Ok(EnvelopePoint {
                t,
                dth_lr: dth_estimate(&l, &r, max_q)?,
                dth_rl: dth_estimate(&r, &l, max_q)?,
                twist_gap: l.twist(0) - r.twist(0),
            })
        })
        .collect()
}

/// One `(lhs, rhs)` comparison behind the earthquake constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EarthquakeSample {
    pub l_alpha: f64,
    pub t: f64,
    /// `dth_estimate(X, Eq_t X)`.
    pub lhs: f64,
    /// `log(e^{lα/2}·t)`.
    pub rhs: f64,
}

impl EarthquakeSample {
    pub fn excess(&self) -> f64 {
        self.lhs - self.rhs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EarthquakeCalibration {
    pub samples: Vec<EarthquakeSample>,
    /// Largest excess over the samples.
    pub constant: f64,
}

pub fn calibrate_earthquake(l_alphas: &[f64], ts: &[f64], max_q: u32) -> Result<EarthquakeCalibration> {
    let mut samples = Vec::with_capacity(l_alphas.len() * ts.len());
    for &l_alpha in l_alphas {
        let x = FNPoint::s11(l_alpha, 0.0)?;
        for &t in ts {
            let lhs = dth_estimate(&x, &earthquake(&x, t)?, max_q)?;
            samples.push(EarthquakeSample { l_alpha, t, lhs, rhs: earthquake_bound(l_alpha, t)? });
        }
    }
    let constant = samples.iter().map(EarthquakeSample::excess).fold(f64::NEG_INFINITY, f64::max);
    Ok(EarthquakeCalibration { samples, constant })
}
