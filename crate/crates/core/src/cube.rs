//! Twist projections of stretch vectors on the closed genus-two surface cut
//! along three curves into two pants, one point per completion of the
//! pants curves to a triangulating lamination.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::hull::{convex_hull, dedup_points, extreme_points, Hull, Vec3};
use crate::pants::{delta_generic, Layout, LiftChoice, PantsTriangulation, TwistSigns};
use crate::scalar::Dual;
use crate::stretch::{delta_sum, DeltaMethod, FNPoint, Surface};

/// Points closer than this in every coordinate are identified.
pub const DEDUP_TOL: f64 = 1e-9;
pub const HULL_TOL: f64 = 1e-9;
pub const EXTREME_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Completion {
    pub signs: TwistSigns,
    pub layout1: Layout,
    pub layout2: Layout,
}

impl Completion {
    /// All 128 candidates, ordered by signs, then first layout, then second.
    pub fn all() -> Vec<Completion> {
        let mut out = Vec::with_capacity(128);
        for signs in TwistSigns::all() {
            for layout1 in Layout::ALL {
                for layout2 in Layout::ALL {
                    out.push(Completion { signs, layout1, layout2 });
                }
            }
        }
        out
    }

    pub fn pants(&self) -> [PantsTriangulation; 2] {
        [
            PantsTriangulation { layout: self.layout1, signs: self.signs },
            PantsTriangulation { layout: self.layout2, signs: self.signs },
        ]
    }

    pub fn flipped(&self) -> Self {
        Self { signs: self.signs.flipped(), ..*self }
    }
}

impl fmt::Display for Completion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.signs, self.layout1, self.layout2)
    }
}

/// Time derivatives at 0 of the twists about `α, β, γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistVector(pub [f64; 3]);

/// Lengths 1, twists 0.
pub fn default_base_point() -> FNPoint {
    FNPoint::s2([1.0; 3], [0.0; 3]).expect("valid base point")
}

fn require_s2(x: &FNPoint) -> Result<()> {
    if x.surface() != Surface::S2 {
        return Err(Error::InvalidInput("stretch vectors are defined on the genus-two surface"));
    }
    Ok(())
}

/// `θc + Σ Δ(0) − Σ Δ'(0)` for each curve, with `Δ'` from dual-number
/// lengths `l + l·ds`.
pub fn stretch_vector_projection(x: &FNPoint, c: &Completion) -> Result<TwistVector> {
    require_s2(x)?;
    let pants = c.pants();
    let l: [Dual; 3] = core::array::from_fn(|i| Dual::new(x.length(i), x.length(i)));
    let mut out = [0.0; 3];
    for (curve, o) in out.iter_mut().enumerate() {
        let mut acc = x.twist(curve);
        for (i, cuff) in Surface::S2.sides(curve) {
            let d = delta_generic(l, &pants[i], cuff, LiftChoice::Gamma2, 0.0)?;
            acc += d.v - d.d;
        }
        *o = acc;
    }
    Ok(TwistVector(out))
}

/// Same quantity with `Δ'` replaced by a central difference of step `h`.
pub fn stretch_vector_projection_fd(x: &FNPoint, c: &Completion, h: f64) -> Result<TwistVector> {
    require_s2(x)?;
    if !(h > 0.0) {
        return Err(Error::InvalidInput("step must be positive"));
    }
    let pants = c.pants();
    let mut out = [0.0; 3];
    for (curve, o) in out.iter_mut().enumerate() {
        let d = |s| delta_sum(x, &pants, curve, s, DeltaMethod::ClosedForm);
        *o = x.twist(curve) + d(0.0)? - (d(h)? - d(-h)?) / (2.0 * h);
    }
    Ok(TwistVector(out))
}

/// Projections for all 128 candidates, in [`Completion::all`] order.
pub fn cloud(x: &FNPoint) -> Result<Vec<(Completion, TwistVector)>> {
    Completion::all()
        .into_iter()
        .map(|c| Ok((c, stretch_vector_projection(x, &c)?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistinctPoint {
    pub point: Vec3,
    /// Every completion projecting onto this point.
    pub completions: Vec<Completion>,
}

/// Cloud points merged within [`DEDUP_TOL`], in order of first appearance.
pub fn distinct_points(cloud: &[(Completion, TwistVector)]) -> Vec<DistinctPoint> {
    let pts: Vec<Vec3> = cloud.iter().map(|(_, v)| v.0).collect();
    let reps = dedup_points(&pts, DEDUP_TOL);
    let mut out: Vec<DistinctPoint> =
        reps.iter().map(|&i| DistinctPoint { point: pts[i], completions: Vec::new() }).collect();
    for (c, v) in cloud {
        let slot = out
            .iter_mut()
            .find(|d| (0..3).all(|k| (d.point[k] - v.0[k]).abs() <= DEDUP_TOL))
            .expect("every point has a representative");
        slot.completions.push(*c);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CubeAnalysis {
    pub cloud: Vec<(Completion, TwistVector)>,
    pub distinct: Vec<DistinctPoint>,
    /// Hull over the distinct points; indices refer to `distinct`.
    pub hull: Hull,
    /// Indices into `distinct` found extreme by the min-norm test.
    pub extreme: Vec<usize>,
}

impl CubeAnalysis {
    pub fn methods_agree(&self) -> bool {
        self.hull.vertices == self.extreme
    }
}

pub fn analyze(x: &FNPoint) -> Result<CubeAnalysis> {
    let cloud = cloud(x)?;
    let distinct = distinct_points(&cloud);
    let pts: Vec<Vec3> = distinct.iter().map(|d| d.point).collect();
    let hull = convex_hull(&pts, HULL_TOL)?;
    let extreme = extreme_points(&pts, EXTREME_TOL)?;
    Ok(CubeAnalysis { cloud, distinct, hull, extreme })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pants::Twist;

    #[test]
    fn enumeration() {
        let all = Completion::all();
        assert_eq!(all.len(), 128);
        for (i, a) in all.iter().enumerate() {
            assert!(all[i + 1..].iter().all(|b| a != b));
        }
    }

    #[test]
    fn antipodal_sign_flip() {
        let x = default_base_point();
        for c in Completion::all() {
            let a = stretch_vector_projection(&x, &c).unwrap();
            let b = stretch_vector_projection(&x, &c.flipped()).unwrap();
            for k in 0..3 {
                assert!((a.0[k] + b.0[k]).abs() < 1e-9, "{c}");
            }
        }
    }

    #[test]
    fn analytic_matches_finite_difference() {
        for x in [default_base_point(), FNPoint::s2([0.7, 1.3, 2.2], [0.4, -1.0, 0.0]).unwrap()] {
            for c in Completion::all() {
                let a = stretch_vector_projection(&x, &c).unwrap();
                let f = stretch_vector_projection_fd(&x, &c, 1e-6).unwrap();
                for k in 0..3 {
                    assert!((a.0[k] - f.0[k]).abs() <= 1e-6 * a.0[k].abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn curve_relabeling_permutes_coordinates() {
        let x = default_base_point();
        let perm = [1, 2, 0];
        for c in Completion::all() {
            let mut signs = [Twist::Left; 3];
            for i in 0..3 {
                signs[perm[i]] = c.signs.0[i];
            }
            let d = Completion {
                signs: TwistSigns(signs),
                layout1: c.layout1.permuted(perm),
                layout2: c.layout2.permuted(perm),
            };
            let a = stretch_vector_projection(&x, &c).unwrap();
            let b = stretch_vector_projection(&x, &d).unwrap();
            for i in 0..3 {
                assert!((a.0[i] - b.0[perm[i]]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn twists_shift_the_cloud() {
        let x = FNPoint::s2([1.0; 3], [0.5, -0.25, 2.0]).unwrap();
        let c = Completion::all()[37];
        let a = stretch_vector_projection(&default_base_point(), &c).unwrap();
        let b = stretch_vector_projection(&x, &c).unwrap();
        for k in 0..3 {
            assert!((b.0[k] - a.0[k] - x.twist(k)).abs() < 1e-12);
        }
    }

    #[test]
    fn chamfered_cube() {
        let a = analyze(&default_base_point()).unwrap();
        assert_eq!(a.cloud.len(), 128);
        assert_eq!(a.distinct.len(), 80);
        assert_eq!(a.hull.counts(), (32, 48, 18));
        assert!(a.methods_agree());
        let n = a.distinct.len() as f64;
        for k in 0..3 {
            let m: f64 = a.distinct.iter().map(|d| d.point[k]).sum::<f64>() / n;
            assert!(m.abs() < 1e-8);
        }
    }

    #[test]
    fn rejects_other_surfaces() {
        let x = FNPoint::s11(1.0, 0.0).unwrap();
        assert!(stretch_vector_projection(&x, &Completion::all()[0]).is_err());
    }
}
