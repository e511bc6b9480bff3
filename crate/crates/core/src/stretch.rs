//! Fenchel-Nielsen twists along stretch paths.
//!
//! A stretch along a completion `λ` multiplies every decomposition-curve
//! length by `e^s`; the twist of a curve `c` evolves as
//! `θ(s) = θ(0)e^s + (Δ¹(0) + Δ²(0))e^s − Δ¹(s) − Δ²(s)`, where `Δⁱ` are the
//! offsets contributed by the two pants sides of `c`, evaluated at lengths
//! scaled by `e^s`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::pants::{
    delta, delta_normalized, delta_oracle, Cuff, Layout, PantsMetric, PantsTriangulation,
    SINGULAR_CUFF, Twist, TwistSigns,
};
use crate::scalar::log_coth;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Surface {
    /// Once-punctured torus: one curve, one pants with cuffs `(α, α, cusp)`.
    S11,
    /// Four-times-punctured sphere: one curve, two pants `(α, cusp, cusp)`.
    S04,
    /// Closed genus two: three curves, two pants `(α, β, γ)`.
    S2,
}

impl Surface {
    pub fn curve_count(self) -> usize {
        match self {
            Surface::S11 | Surface::S04 => 1,
            Surface::S2 => 3,
        }
    }

    pub fn pants_count(self) -> usize {
        match self {
            Surface::S11 => 1,
            Surface::S04 | Surface::S2 => 2,
        }
    }

    /// The two pants sides `(pants, cuff)` of curve `c`.
    pub fn sides(self, c: usize) -> [(usize, Cuff); 2] {
        match self {
            Surface::S11 => [(0, 0), (0, 1)],
            Surface::S04 => [(0, 0), (1, 0)],
            Surface::S2 => [(0, c), (1, c)],
        }
    }

    /// `l0` in the closed width formula: `lα/2` on `S11`, `lα/4` on `S04`.
    pub fn width_l0(self, l_alpha: f64) -> Option<f64> {
        match self {
            Surface::S11 => Some(l_alpha / 2.0),
            Surface::S04 => Some(l_alpha / 4.0),
            Surface::S2 => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FNPoint {
    surface: Surface,
    lengths: Vec<f64>,
    twists: Vec<f64>,
}

impl FNPoint {
    pub fn new(surface: Surface, lengths: Vec<f64>, twists: Vec<f64>) -> Result<Self> {
        let n = surface.curve_count();
        if lengths.len() != n || twists.len() != n {
            return Err(Error::InvalidInput("curve count does not match the surface"));
        }
        if lengths.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
            return Err(Error::InvalidInput("lengths must be positive and finite"));
        }
        if twists.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidInput("twists must be finite"));
        }
        Ok(Self { surface, lengths, twists })
    }

    pub fn s11(l: f64, twist: f64) -> Result<Self> {
        Self::new(Surface::S11, vec![l], vec![twist])
    }

    pub fn s04(l: f64, twist: f64) -> Result<Self> {
        Self::new(Surface::S04, vec![l], vec![twist])
    }

    pub fn s2(l: [f64; 3], twists: [f64; 3]) -> Result<Self> {
        Self::new(Surface::S2, l.to_vec(), twists.to_vec())
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn twists(&self) -> &[f64] {
        &self.twists
    }

    pub fn length(&self, c: usize) -> f64 {
        self.lengths[c]
    }

    pub fn twist(&self, c: usize) -> f64 {
        self.twists[c]
    }

    pub fn with_twist(&self, c: usize, theta: f64) -> Self {
        let mut out = self.clone();
        out.twists[c] = theta;
        out
    }

    /// Cuff lengths of each pants (they agree on every supported surface),
    /// scaled by `e^s`.
    pub fn pants_metric(&self, s: f64) -> Result<PantsMetric> {
        let k = libm::exp(s);
        let l = &self.lengths;
        let raw = match self.surface {
            Surface::S11 => [l[0], l[0], 0.0],
            Surface::S04 => [l[0], 0.0, 0.0],
            Surface::S2 => [l[0], l[1], l[2]],
        };
        PantsMetric::from_array(raw.map(|x| x * k))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StretchSpec {
    pants: Vec<PantsTriangulation>,
    direction: Direction,
    duration: f64,
}

impl StretchSpec {
    pub fn new(
        surface: Surface,
        pants: Vec<PantsTriangulation>,
        direction: Direction,
        duration: f64,
    ) -> Result<Self> {
        if pants.len() != surface.pants_count() {
            return Err(Error::InvalidInput("one triangulation per pants is required"));
        }
        if !(duration >= 0.0) || !duration.is_finite() {
            return Err(Error::InvalidInput("duration must be finite and non-negative"));
        }
        for c in 0..surface.curve_count() {
            let [(p1, c1), (p2, c2)] = surface.sides(c);
            if pants[p1].signs.0[c1] != pants[p2].signs.0[c2] {
                return Err(Error::SpecMismatch("both sides of a curve must twist the same way"));
            }
        }
        Ok(Self { pants, direction, duration })
    }

    /// The completion with every curve twisting in direction `twist`:
    /// 3-symmetric on `S11` and `S2`, four ends at `α` on `S04`.
    pub fn uniform(surface: Surface, twist: Twist, direction: Direction, duration: f64) -> Result<Self> {
        let signs = TwistSigns([twist; 3]);
        let layout = match surface {
            Surface::S04 => Layout::TwoSym(0),
            _ => Layout::ThreeSym,
        };
        let t = PantsTriangulation { layout, signs };
        Self::new(surface, vec![t; surface.pants_count()], direction, duration)
    }

    pub fn pants(&self) -> &[PantsTriangulation] {
        &self.pants
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    /// Stretch time with the direction folded into the sign.
    pub fn signed_time(&self) -> f64 {
        match self.direction {
            Direction::Forward => self.duration,
            Direction::Backward => -self.duration,
        }
    }
}

/// How the offsets Δ are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeltaMethod {
    #[default]
    ClosedForm,
    Oracle,
    /// Closed form with the log argument multiplied by `e^{k·l_c}`.
    Normalized(i32),
}

/// Lengths after stretching for time `t`.
pub fn stretch_lengths(x: &FNPoint, t: f64) -> FNPoint {
    let k = libm::exp(t);
    FNPoint {
        surface: x.surface,
        lengths: x.lengths.iter().map(|l| l * k).collect(),
        twists: x.twists.clone(),
    }
}

/// `Δ¹(s) + Δ²(s)` for curve `c`.
pub fn delta_sum(x: &FNPoint, pants: &[PantsTriangulation], c: usize, s: f64, method: DeltaMethod) -> Result<f64> {
    if c >= x.surface.curve_count() {
        return Err(Error::InvalidInput("curve index out of range"));
    }
    if pants.len() != x.surface.pants_count() {
        return Err(Error::InvalidInput("one triangulation per pants is required"));
    }
    let mut total = 0.0;
    for (i, cuff) in x.surface.sides(c) {
        let m = x.pants_metric(s)?;
        if m.length(cuff) < SINGULAR_CUFF {
            return Err(Error::SingularCuff(m.length(cuff)));
        }
        total += match method {
            DeltaMethod::ClosedForm => delta(&m, &pants[i], cuff)?,
            DeltaMethod::Oracle => delta_oracle(&m, &pants[i], cuff)?,
            DeltaMethod::Normalized(k) => delta_normalized(&m, &pants[i], cuff, k as f64)?,
        };
    }
    Ok(total)
}

/// Twist of curve `c` after stretching for signed time `s`.
pub fn twist_at(x: &FNPoint, pants: &[PantsTriangulation], c: usize, s: f64, method: DeltaMethod) -> Result<f64> {
    let d0 = delta_sum(x, pants, c, 0.0, method)?;
    let ds = delta_sum(x, pants, c, s, method)?;
    let e = libm::exp(s);
    Ok(x.twist(c) * e + d0 * e - ds)
}

/// Twist of curve `c` at the end of the stretch described by `spec`.
pub fn twist_along_stretch(x: &FNPoint, spec: &StretchSpec, c: usize) -> Result<f64> {
    twist_along_stretch_with(x, spec, c, DeltaMethod::ClosedForm)
}

pub fn twist_along_stretch_with(x: &FNPoint, spec: &StretchSpec, c: usize, method: DeltaMethod) -> Result<f64> {
    check_surface(x, spec)?;
    twist_at(x, &spec.pants, c, spec.signed_time(), method)
}

/// The point reached at the end of the stretch: scaled lengths, new twists.
pub fn stretch_point(x: &FNPoint, spec: &StretchSpec) -> Result<FNPoint> {
    check_surface(x, spec)?;
    let mut y = stretch_lengths(x, spec.signed_time());
    for c in 0..x.surface.curve_count() {
        y.twists[c] = twist_along_stretch(x, spec, c)?;
    }
    Ok(y)
}

fn check_surface(x: &FNPoint, spec: &StretchSpec) -> Result<()> {
    if spec.pants.len() != x.surface.pants_count() {
        return Err(Error::SpecMismatch("specification is for a different surface"));
    }
    Ok(())
}

/// Twist of `c` along `λ` minus twist along `ν`.
pub fn twist_width(x: &FNPoint, lambda: &StretchSpec, nu: &StretchSpec, c: usize) -> Result<f64> {
    twist_width_with(x, lambda, nu, c, DeltaMethod::ClosedForm)
}

pub fn twist_width_with(
    x: &FNPoint,
    lambda: &StretchSpec,
    nu: &StretchSpec,
    c: usize,
    method: DeltaMethod,
) -> Result<f64> {
    if lambda.direction != nu.direction {
        return Err(Error::SpecMismatch("directions differ"));
    }
    if lambda.duration != nu.duration {
        return Err(Error::SpecMismatch("durations differ"));
    }
    Ok(twist_along_stretch_with(x, lambda, c, method)? - twist_along_stretch_with(x, nu, c, method)?)
}

/// Argument convention for the closed width formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WidthConvention {
    /// `4e^{-t} log coth(l0) − 4 log coth(e^{-t} l0)`, matching the developed geometry.
    #[default]
    Reconciled,
    /// The same expression with every `log coth` argument halved.
    Printed,
}

/// Twist gap `θ(Y^L_{-t}) − θ(Y^R_{-t})` between the left and right
/// backward stretches on `S11` (`l0 = lα/2`) or `S04` (`l0 = lα/4`).
pub fn twist_width_closed(l0: f64, t: f64, convention: WidthConvention) -> Result<f64> {
    if !(l0 > 0.0) || !l0.is_finite() {
        return Err(Error::InvalidInput("l0 must be positive"));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidInput("t must be non-negative"));
    }
    let a = match convention {
        WidthConvention::Reconciled => l0,
        WidthConvention::Printed => l0 / 2.0,
    };
    let e = libm::exp(-t);
    Ok(4.0 * e * log_coth(a) - 4.0 * log_coth(e * a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lr(surface: Surface, t: f64) -> (StretchSpec, StretchSpec) {
        (
            StretchSpec::uniform(surface, Twist::Left, Direction::Backward, t).unwrap(),
            StretchSpec::uniform(surface, Twist::Right, Direction::Backward, t).unwrap(),
        )
    }

    #[test]
    fn lengths_scale() {
        let x = FNPoint::s11(1.0, 0.3).unwrap();
        assert_eq!(stretch_lengths(&x, 0.0), x);
        assert!((stretch_lengths(&x, libm::log(2.0)).length(0) - 2.0).abs() < 1e-15);
        let x = FNPoint::s2([0.4, 1.1, 2.3], [0.0; 3]).unwrap();
        let a = stretch_lengths(&stretch_lengths(&x, 0.25), 0.5);
        let b = stretch_lengths(&x, 0.75);
        for c in 0..3 {
            assert!((a.length(c) - b.length(c)).abs() <= 1e-15 * b.length(c));
        }
    }

    #[test]
    fn twist_at_zero_time() {
        let x = FNPoint::s04(1.3, 0.7).unwrap();
        let (l, _) = lr(Surface::S04, 0.0);
        assert!((twist_along_stretch(&x, &l, 0).unwrap() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn punctured_sphere_backward_example() {
        let l0 = 1.0;
        let x = FNPoint::s04(4.0 * l0, 0.0).unwrap();
        let (l, _) = lr(Surface::S04, 1.0);
        let got = twist_along_stretch(&x, &l, 0).unwrap();
        let d = |s: f64| log_coth(l0 * libm::exp(s));
        let want = 2.0 * (d(0.0) * libm::exp(-1.0) - d(-1.0));
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn closed_width_matches_specs() {
        for surface in [Surface::S11, Surface::S04] {
            for la in [0.3, 2.0, 6.0] {
                for t in [0.0, 0.5, 1.0, 3.0] {
                    let x = FNPoint::new(surface, vec![la], vec![0.2]).unwrap();
                    let (l, r) = lr(surface, t);
                    let w = twist_width(&x, &l, &r, 0).unwrap();
                    let l0 = surface.width_l0(la).unwrap();
                    let c = twist_width_closed(l0, t, WidthConvention::Reconciled).unwrap();
                    assert!((w - c).abs() < 1e-9, "{surface:?} {la} {t}: {w} vs {c}");
                    let o = twist_width_with(&x, &l, &r, 0, DeltaMethod::Oracle).unwrap();
                    assert!((o - c).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn printed_width_golden() {
        let v = twist_width_closed(1.0, 1.0, WidthConvention::Printed).unwrap();
        assert!((v - (-5.681_428_936_287_259)).abs() < 1e-12, "{v}");
        let v = twist_width_closed(1.0, 1.0, WidthConvention::Reconciled).unwrap();
        assert!((v - (-3.774_201_734_914_796)).abs() < 1e-12, "{v}");
        assert_eq!(twist_width_closed(1.0, 0.0, WidthConvention::Printed).unwrap(), 0.0);
        assert!(twist_width_closed(0.0, 1.0, WidthConvention::Reconciled).is_err());
    }

    #[test]
    fn mismatched_specs() {
        let x = FNPoint::s11(1.0, 0.0).unwrap();
        let a = StretchSpec::uniform(Surface::S11, Twist::Left, Direction::Backward, 1.0).unwrap();
        let b = StretchSpec::uniform(Surface::S11, Twist::Right, Direction::Forward, 1.0).unwrap();
        let c = StretchSpec::uniform(Surface::S11, Twist::Right, Direction::Backward, 2.0).unwrap();
        assert!(matches!(twist_width(&x, &a, &b, 0), Err(Error::SpecMismatch(_))));
        assert!(matches!(twist_width(&x, &a, &c, 0), Err(Error::SpecMismatch(_))));
        let bad = PantsTriangulation {
            layout: Layout::ThreeSym,
            signs: TwistSigns([Twist::Left, Twist::Right, Twist::Left]),
        };
        assert!(StretchSpec::new(Surface::S11, vec![bad], Direction::Forward, 1.0).is_err());
    }
}
