//! Reconciliation of the closed-form twist offsets and width formula with the
//! constructive upper half-plane development.

use serde::Serialize;

use thurston_core::pants::{
    delta_closed, enumerate_triangulations, oracle_frame, shear_coords, Layout, LiftChoice,
    PantsMetric, SymmetryClass, TwistSigns, PantsTriangulation,
};
use thurston_core::scalar::log_coth;
use thurston_core::stretch::{
    twist_along_stretch, twist_at, twist_width, twist_width_closed, twist_width_with, DeltaMethod,
    Direction, FNPoint, StretchSpec, Surface, WidthConvention,
};
use thurston_core::pants::Twist;

use crate::output::num;
use crate::KitError;

pub const LENGTH_GRID: [f64; 4] = [0.5, 1.0, 2.0, 4.0];
pub const WIDTH_L0: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];
/// Stretch times for the width comparison. The development loses accuracy
/// once stretched cuffs fall below about 1e-3 (residuals near 1e-8 at 1e-4),
/// so times stop at 4.
pub const WIDTH_T: [f64; 6] = [0.0, 0.5, 1.0, 2.0, 3.0, 4.0];
/// Tolerance for the exact identities.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Tolerance for the width invariants.
pub const WIDTH_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct FormulaEntry {
    pub name: String,
    pub printed: String,
    pub adopted: String,
    pub corrected: bool,
    /// Largest deviation of the adopted form from the development.
    pub max_residual: f64,
    /// Largest deviation of the printed form, when it differs.
    pub printed_residual: Option<f64>,
    pub samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantResult {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reconciliation {
    pub tolerance: f64,
    pub formulas: Vec<FormulaEntry>,
    pub invariants: Vec<InvariantResult>,
    pub notes: Vec<String>,
    pub passed: bool,
}

impl Reconciliation {
    pub fn corrected(&self) -> impl Iterator<Item = &FormulaEntry> {
        self.formulas.iter().filter(|f| f.corrected)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.invariants.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect()
    }
}

fn grid() -> impl Iterator<Item = PantsMetric> {
    LENGTH_GRID.into_iter().flat_map(|a| {
        LENGTH_GRID.into_iter().flat_map(move |b| {
            LENGTH_GRID.into_iter().map(move |c| PantsMetric::new(a, b, c).expect("positive grid"))
        })
    })
}

fn oracle(p: &PantsMetric, t: &PantsTriangulation, c: usize, choice: LiftChoice) -> Result<f64, KitError> {
    Ok(oracle_frame(p, t, c, choice)?.delta)
}

/// Max |closed − oracle| over the length grid for the cuffs of class `class`.
fn delta_residual(class: SymmetryClass, choice: LiftChoice) -> Result<(f64, usize), KitError> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for p in grid() {
        for t in enumerate_triangulations() {
            for c in 0..3 {
                if t.layout.class_at(c) != class {
                    continue;
                }
                let d = delta_closed(&p, &t, c, choice)? - oracle(&p, &t, c, choice)?;
                worst = worst.max(d.abs());
                n += 1;
            }
        }
    }
    Ok((worst, n))
}

fn lr(surface: Surface, t: f64) -> Result<(StretchSpec, StretchSpec), KitError> {
    Ok((
        StretchSpec::uniform(surface, Twist::Left, Direction::Backward, t)?,
        StretchSpec::uniform(surface, Twist::Right, Direction::Backward, t)?,
    ))
}

fn width_point(surface: Surface, l0: f64, theta: f64) -> Result<FNPoint, KitError> {
    Ok(match surface {
        Surface::S04 => FNPoint::s04(4.0 * l0, theta)?,
        _ => FNPoint::s11(2.0 * l0, theta)?,
    })
}

fn invariant(name: &str, value: f64, tolerance: f64) -> InvariantResult {
    InvariantResult { name: name.into(), passed: value <= tolerance, value, tolerance }
}

pub fn reconcile(tol: f64) -> Result<Reconciliation, KitError> {
    let mut formulas = Vec::new();
    let as_printed = |name: &str, form: &str, (r, n): (f64, usize)| FormulaEntry {
        name: name.into(),
        printed: form.into(),
        adopted: form.into(),
        corrected: false,
        max_residual: r,
        printed_residual: None,
        samples: n,
    };
    let r3 = delta_residual(SymmetryClass::ThreeSym, LiftChoice::Gamma2)?;
    let r3b = delta_residual(SymmetryClass::ThreeSym, LiftChoice::Gamma3)?;
    let r2 = delta_residual(SymmetryClass::TwoSym, LiftChoice::Gamma2)?;
    let ra = delta_residual(SymmetryClass::Asym, LiftChoice::Gamma2)?;
    formulas.push(as_printed("delta_3sym", "1/2 log((x+1)(x + (e^s23 + e^-l2)/(e^s23 + 1)))", r3));
    formulas.push(as_printed("delta_3sym_gamma3_lift", "delta_3sym with roles 1,3,2 plus s12", r3b));
    formulas.push(as_printed("delta_2sym", "1/2 log((x+1)(x + e^-l2))", r2));
    formulas.push(as_printed("delta_asym", "1/2 log((x+1)(x + (W + e^-l2)/(W + 1)))", ra));

    let mut s04 = (0.0f64, 0.0f64, 0);
    let t2 = PantsTriangulation { layout: Layout::TwoSym(0), signs: TwistSigns::ALL_LEFT };
    for la in [0.2, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let p = PantsMetric::new(la, 0.0, 0.0)?;
        let dev = oracle(&p, &t2, 0, LiftChoice::Gamma2)?;
        s04.0 = s04.0.max((dev - log_coth(la / 4.0)).abs());
        s04.1 = s04.1.max((dev - log_coth(la / 2.0)).abs());
        s04.2 += 1;
    }
    formulas.push(FormulaEntry {
        name: "s04_offset_log_coth".into(),
        printed: "log coth(l_s)".into(),
        adopted: "log coth(l_s/2) = log coth(l_alpha/4)".into(),
        corrected: true,
        max_residual: s04.0,
        printed_residual: Some(s04.1),
        samples: s04.2,
    });

    let mut w = (0.0f64, 0.0f64, 0);
    for surface in [Surface::S11, Surface::S04] {
        for l0 in WIDTH_L0 {
            for t in WIDTH_T {
                let (lam, nu) = lr(surface, t)?;
                let dev = twist_width_with(&width_point(surface, l0, 0.0)?, &lam, &nu, 0, DeltaMethod::Oracle)?;
                let rec = twist_width_closed(l0, t, WidthConvention::Reconciled)?;
                let pr = twist_width_closed(l0, t, WidthConvention::Printed)?;
                w.0 = w.0.max((dev - rec).abs());
                w.1 = w.1.max((dev - pr).abs());
                w.2 += 1;
            }
        }
    }
    formulas.push(FormulaEntry {
        name: "twist_width_closed".into(),
        printed: "4e^-t log coth(l0/2) - 4 log coth(e^-t l0/2)".into(),
        adopted: "4e^-t log coth(l0) - 4 log coth(e^-t l0)".into(),
        corrected: true,
        max_residual: w.0,
        printed_residual: Some(w.1),
        samples: w.2,
    });

    let mut invariants = vec![
        invariant("oracle_equivalence", r3.0.max(r3b.0).max(r2.0).max(ra.0), tol),
        invariant("s04_offset_reconciled", s04.0, tol),
        invariant("twist_width_reconciled", w.0, tol),
    ];
    invariants.extend(identity_checks()?);
    let passed = invariants.iter().all(|i| i.passed);
    let notes = vec![
        "Twist widths are reported as theta(Y^L) - theta(Y^R) for the backward stretches.".into(),
        "The width comparison stops at t = 4, where the smallest stretched cuff is about \
         3.7e-3; below 1e-3 the development is ill-conditioned."
            .into(),
        "Offsets at cuff c use the cyclic roles (c, c+1, c+2); the a-symmetric case puts the \
         four-ended cuff second."
            .into(),
    ];
    Ok(Reconciliation { tolerance: tol, formulas, invariants, notes, passed })
}

fn identity_checks() -> Result<Vec<InvariantResult>, KitError> {
    let mut cuff_sum = 0.0f64;
    for p in grid() {
        for t in enumerate_triangulations() {
            let sc = shear_coords(&p, &t);
            for c in 0..3 {
                let s: f64 = sc
                    .iter()
                    .map(|(leaf, v)| leaf.ends().iter().filter(|&&e| e == c).count() as f64 * v)
                    .sum();
                cuff_sum = cuff_sum.max((s + t.signs.eps(c) * p.length(c)).abs());
            }
        }
    }
    let (mut zero, mut anti, mut shift, mut norm, mut fb) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for surface in [Surface::S11, Surface::S04] {
        for l0 in WIDTH_L0 {
            let x = width_point(surface, l0, 0.0)?;
            let (lam0, nu0) = lr(surface, 0.0)?;
            zero = zero.max(twist_width(&x, &lam0, &nu0, 0)?.abs());
            for t in WIDTH_T {
                let (lam, nu) = lr(surface, t)?;
                let a = twist_width(&x, &lam, &nu, 0)?;
                anti = anti.max((a + twist_width(&x, &nu, &lam, 0)?).abs());
                for theta in [-3.0, 0.7, 11.0] {
                    let y = width_point(surface, l0, theta)?;
                    shift = shift.max((twist_width(&y, &lam, &nu, 0)? - a).abs());
                }
                for k in [-2, 1, 3] {
                    let b = twist_width_with(&x, &lam, &nu, 0, DeltaMethod::Normalized(k))?;
                    norm = norm.max((b - a).abs());
                }
                let y = width_point(surface, l0, 0.4)?;
                let back = twist_along_stretch(&y, &lam, 0)?;
                let fwd = twist_at(&y, lam.pants(), 0, -t, DeltaMethod::ClosedForm)?;
                fb = fb.max((back - fwd).abs());
            }
        }
    }
    Ok(vec![
        invariant("shear_cuff_sums", cuff_sum, IDENTITY_TOL),
        invariant("twist_width_at_zero", zero, 0.0),
        invariant("twist_width_antisymmetry", anti, WIDTH_TOL),
        invariant("initial_twist_independence", shift, WIDTH_TOL),
        invariant("normalization_invariance", norm, WIDTH_TOL),
        invariant("backward_forward_consistency", fb, IDENTITY_TOL),
    ])
}

pub fn render_markdown(r: &Reconciliation) -> String {
    let mut s = String::from("# Reconciliation report\n\n");
    s.push_str(&format!("Tolerance: {}\n\n", num(r.tolerance)));
    s.push_str("## Formulas\n\n| name | corrected | adopted | max residual | printed residual | samples |\n");
    s.push_str("|---|---|---|---|---|---|\n");
    for f in &r.formulas {
        s.push_str(&format!(
            "| {} | {} | `{}` | {} | {} | {} |\n",
            f.name,
            if f.corrected { "yes" } else { "no" },
            f.adopted,
            num(f.max_residual),
            f.printed_residual.map_or("-".into(), num),
            f.samples
        ));
    }
    s.push_str("\n## Invariants\n\n| name | status | value | tolerance |\n|---|---|---|---|\n");
    for i in &r.invariants {
        s.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            i.name,
            if i.passed { "pass" } else { "FAIL" },
            num(i.value),
            num(i.tolerance)
        ));
    }
    s.push_str("\n## Notes\n\n");
    for n in &r.notes {
        s.push_str(&format!("- {n}\n"));
    }
    s
}
