use alloc::vec;

use super::{
    Cuff, Layout, Leaf, LiftChoice, PantsMetric, PantsTriangulation, ShearCoords, SymmetryClass,
    TwistSigns, SINGULAR_CUFF,
};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Shear coordinates of every leaf, determined by the cuff lengths and twist
/// directions.
pub fn shear_coords(p: &PantsMetric, t: &PantsTriangulation) -> ShearCoords {
    let el = |c: Cuff| t.signs.eps(c) * p.length(c);
    match t.layout {
        Layout::ThreeSym => {
            let s = |i: Cuff, j: Cuff| {
                let k = 3 - i - j;
                (Leaf::new(i, j), 0.5 * (el(k) - el(i) - el(j)))
            };
            ShearCoords::new(vec![s(0, 1), s(0, 2), s(1, 2)])
        }
        Layout::TwoSym(k) => {
            let (d, e) = ((k + 1) % 3, (k + 2) % 3);
            ShearCoords::new(vec![
                (Leaf::new(k, k), 0.5 * (-el(k) + el(d) + el(e))),
                (Leaf::new(k, d), -el(d)),
                (Leaf::new(k, e), -el(e)),
            ])
        }
    }
}

fn check_cuff(l1: f64) -> Result<()> {
    if !(l1 >= SINGULAR_CUFF) {
        return Err(Error::SingularCuff(l1));
    }
    Ok(())
}

fn half_log_or_err<S: Scalar>(inner: S, e1: f64) -> Result<S> {
    if !(inner.re() > 0.0) || !inner.re().is_finite() {
        return Err(Error::NonRealizable("log argument is not positive"));
    }
    Ok(inner.ln().scale(0.5 * e1))
}

/// `εl` products in role order.
fn signed<S: Scalar>(l: [S; 3], e: [f64; 3]) -> [S; 3] {
    [l[0].scale(e[0]), l[1].scale(e[1]), l[2].scale(e[2])]
}

fn inner_3sym<S: Scalar>(l: [S; 3], e: [f64; 3]) -> S {
    let one = S::cst(1.0);
    let [a, b, c] = signed(l, e);
    let s12 = (c - a - b).scale(0.5);
    let s23 = (a - b - c).scale(0.5);
    let x = (one + s12.exp()) / ((-a).exp() - one);
    let e23 = s23.exp();
    (x + one) * (x + (e23 + (-b).exp()) / (e23 + one))
}

fn inner_2sym<S: Scalar>(l: [S; 3], e: [f64; 3]) -> S {
    let one = S::cst(1.0);
    let [a, b, c] = signed(l, e);
    let s11 = (-a + b + c).scale(0.5);
    let s12 = -b;
    let s13 = -c;
    let num = one + s12.exp() + (s12 + s11).exp() + (s12 + s11 + s13).exp();
    let x = num / ((-a).exp() - one);
    (x + one) * (x + (-b).exp())
}

fn inner_asym<S: Scalar>(l: [S; 3], e: [f64; 3]) -> S {
    let one = S::cst(1.0);
    let [a, b, c] = signed(l, e);
    let s22 = (-b + a + c).scale(0.5);
    let s23 = -c;
    let x = one / ((-a).exp() - one);
    let w = s22.exp() + (s22 + s23).exp() + (s22.scale(2.0) + s23).exp();
    (x + one) * (x + (w + (-b).exp()) / (w + one))
}

fn canonical<S: Scalar>(
    inner: fn([S; 3], [f64; 3]) -> S,
    l: [S; 3],
    e: [f64; 3],
    k: f64,
) -> Result<S> {
    check_cuff(l[0].re())?;
    let r = inner(l, e) * l[0].scale(k).exp();
    half_log_or_err(r, e[0])
}

fn roles(p: &PantsMetric, s: &TwistSigns, r: [Cuff; 3]) -> ([f64; 3], [f64; 3]) {
    (r.map(|i| p.length(i)), r.map(|i| s.eps(i)))
}

/// Δ at cuff 0 for the 3-symmetric layout.
pub fn delta_3sym(p: &PantsMetric, signs: &TwistSigns) -> Result<f64> {
    let (l, e) = roles(p, signs, [0, 1, 2]);
    canonical(inner_3sym::<f64>, l, e, 0.0)
}

/// Δ at cuff 0 when cuff 0 carries four leaf ends.
pub fn delta_2sym(p: &PantsMetric, signs: &TwistSigns) -> Result<f64> {
    let (l, e) = roles(p, signs, [0, 1, 2]);
    canonical(inner_2sym::<f64>, l, e, 0.0)
}

/// Δ at cuff 0 when cuff 1 carries four leaf ends.
pub fn delta_asym(p: &PantsMetric, signs: &TwistSigns) -> Result<f64> {
    let (l, e) = roles(p, signs, [0, 1, 2]);
    canonical(inner_asym::<f64>, l, e, 0.0)
}

/// `x` as printed for the 3-symmetric case at cuff 0.
pub fn printed_x_3sym(p: &PantsMetric, signs: &TwistSigns) -> f64 {
    let s12 = shear_coords(p, &PantsTriangulation { layout: Layout::ThreeSym, signs: *signs })
        .get(Leaf::new(0, 1))
        .unwrap_or(f64::NAN);
    (1.0 + libm::exp(s12)) / (libm::exp(-signs.eps(0) * p.length(0)) - 1.0)
}

/// Δ at `cuff` with the γ2 lift and no extra normalization.
pub fn delta(p: &PantsMetric, t: &PantsTriangulation, cuff: Cuff) -> Result<f64> {
    delta_closed(p, t, cuff, LiftChoice::Gamma2)
}

pub fn delta_closed(
    p: &PantsMetric,
    t: &PantsTriangulation,
    cuff: Cuff,
    choice: LiftChoice,
) -> Result<f64> {
    delta_generic(p.lengths(), t, cuff, choice, 0.0)
}

/// Δ with the log argument multiplied by `e^{k·l_c}`.
pub fn delta_normalized(p: &PantsMetric, t: &PantsTriangulation, cuff: Cuff, k: f64) -> Result<f64> {
    delta_generic(p.lengths(), t, cuff, LiftChoice::Gamma2, k)
}

/// Δ at `cuff` over any [`Scalar`]; with dual-number lengths this yields the
/// exact derivative along a length variation.
pub fn delta_generic<S: Scalar>(
    l: [S; 3],
    t: &PantsTriangulation,
    cuff: Cuff,
    choice: LiftChoice,
    k: f64,
) -> Result<S> {
    if cuff > 2 {
        return Err(Error::InvalidInput("cuff index must be 0, 1 or 2"));
    }
    let c = cuff;
    let pick = |r: [Cuff; 3]| (r.map(|i| l[i]), r.map(|i| t.signs.eps(i)));
    let cyclic = [c, (c + 1) % 3, (c + 2) % 3];
    match (t.layout.class_at(c), t.layout) {
        (SymmetryClass::ThreeSym, _) => match choice {
            LiftChoice::Gamma2 => {
                let (l, e) = pick(cyclic);
                canonical(inner_3sym::<S>, l, e, k)
            }
            LiftChoice::Gamma3 => {
                let (l, e) = pick([c, (c + 2) % 3, (c + 1) % 3]);
                let base = canonical(inner_3sym::<S>, l, e, k)?;
                let (l, e) = pick(cyclic);
                let s12 = (l[2].scale(e[2]) - l[0].scale(e[0]) - l[1].scale(e[1])).scale(0.5);
                Ok(base + s12.scale(e[0]))
            }
        },
        (SymmetryClass::TwoSym, _) => {
            let (l, e) = pick(cyclic);
            canonical(inner_2sym::<S>, l, e, k)
        }
        (SymmetryClass::Asym, Layout::TwoSym(d)) => {
            let (l, e) = pick([c, d, 3 - c - d]);
            canonical(inner_asym::<S>, l, e, k)
        }
        (SymmetryClass::Asym, Layout::ThreeSym) => unreachable!("3-symmetric layouts have no asymmetric cuff"),
    }
}
