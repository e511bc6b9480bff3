//! Δ computed by developing the triangulated pants into the upper half-plane.
//!
//! The two ideal triangles are glued with shears solved from the cuff
//! conditions (the shears at the leaf ends around a cuff add up to `-ε l`).
//! Fans of triangles around a cuff are developed one gluing at a time; the
//! resulting holonomy gives the lift of that cuff. Nothing here uses the
//! closed-form expressions.

use super::{Cuff, Layout, Leaf, LiftChoice, PantsMetric, PantsTriangulation, SINGULAR_CUFF};
use crate::error::{Error, Result};
use crate::h2::{
    adjacent_vertex, horocyclic_projection, orthofoot, perpendicular_foot, signed_distance,
    triangle_median, Geodesic, H2Point, IdealPoint, IdealTriangle, MobiusMap,
};

/// Corner `k` of a triangle; side `k` joins corner `k` to corner `k + 1`.
struct Model {
    corners: [[Cuff; 3]; 2],
    sides: [[Leaf; 3]; 2],
    glue: [[(usize, usize); 3]; 2],
}

impl Model {
    fn new(layout: Layout) -> Self {
        match layout {
            Layout::ThreeSym => Model {
                corners: [[0, 1, 2], [0, 2, 1]],
                sides: [
                    [Leaf::new(0, 1), Leaf::new(1, 2), Leaf::new(0, 2)],
                    [Leaf::new(0, 2), Leaf::new(1, 2), Leaf::new(0, 1)],
                ],
                glue: [[(1, 2), (1, 1), (1, 0)], [(0, 2), (0, 1), (0, 0)]],
            },
            Layout::TwoSym(k) => {
                let (d, e) = ((k + 1) % 3, (k + 2) % 3);
                Model {
                    corners: [[k, k, d], [k, k, e]],
                    sides: [
                        [Leaf::new(k, k), Leaf::new(k, d), Leaf::new(k, d)],
                        [Leaf::new(k, k), Leaf::new(k, e), Leaf::new(k, e)],
                    ],
                    glue: [[(1, 0), (0, 2), (0, 1)], [(0, 0), (1, 2), (1, 1)]],
                }
            }
        }
    }
}

/// Shears from the cuff conditions, by Gaussian elimination.
fn solve_shears(layout: Layout, p: &PantsMetric, t: &PantsTriangulation) -> Result<[(Leaf, f64); 3]> {
    let leaves = layout.leaves();
    let mut a = [[0.0f64; 4]; 3];
    for (i, leaf) in leaves.iter().enumerate() {
        for c in leaf.ends() {
            a[c][i] += 1.0;
        }
    }
    for (c, row) in a.iter_mut().enumerate() {
        row[3] = -t.signs.eps(c) * p.length(c);
    }
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[piv][col].abs() < 1e-12 {
            return Err(Error::Degenerate("cuff conditions are singular"));
        }
        a.swap(col, piv);
        for r in 0..3 {
            if r != col {
                let f = a[r][col] / a[col][col];
                for k in col..4 {
                    a[r][k] -= f * a[col][k];
                }
            }
        }
    }
    Ok(core::array::from_fn(|i| (leaves[i], a[i][3] / a[i][i])))
}

struct Developer {
    model: Model,
    shears: [(Leaf, f64); 3],
}

#[derive(Clone, Copy)]
struct Lift {
    tri: usize,
    pos: [IdealPoint; 3],
}

impl Developer {
    fn shear(&self, leaf: Leaf) -> f64 {
        self.shears.iter().find(|(l, _)| *l == leaf).map(|(_, s)| *s).unwrap_or(f64::NAN)
    }

    /// Cross side `side` of `lift` into the neighbouring triangle; returns the
    /// new lift and the corner index there matching corner `side + 1` here.
    fn cross(&self, lift: &Lift, side: usize) -> Result<(Lift, usize)> {
        let (t2, k2) = self.model.glue[lift.tri][side];
        let tri = IdealTriangle::new(lift.pos[0], lift.pos[1], lift.pos[2])?;
        let r = adjacent_vertex(&tri, side, self.shear(self.model.sides[lift.tri][side]))?;
        let mut pos = [IdealPoint::Infinity; 3];
        pos[k2] = lift.pos[(side + 1) % 3];
        pos[(k2 + 1) % 3] = lift.pos[side];
        pos[(k2 + 2) % 3] = r;
        Ok((Lift { tri: t2, pos }, k2))
    }

    /// Holonomy of the cuff at corner `j` of `lift`, found by walking once
    /// around the fan of triangles at that corner.
    fn fan_holonomy(&self, lift: &Lift, j: usize) -> Result<MobiusMap> {
        let (mut cur, mut jj) = (*lift, j);
        for _ in 0..8 {
            let (next, k) = self.cross(&cur, (jj + 2) % 3)?;
            cur = next;
            jj = k;
            if cur.tri == lift.tri && jj == j {
                return MobiusMap::from_triples(lift.pos, cur.pos);
            }
        }
        Err(Error::Degenerate("fan did not close"))
    }
}

/// Intermediate data of the developing construction, in the frame where the
/// lift of the distinguished cuff is `(0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleFrame {
    /// Position of the neighbouring corner on the start triangle's edge.
    pub x: f64,
    /// Far endpoint of the lift of the neighbouring cuff (or the cusp itself).
    pub p_star: IdealPoint,
    /// Foot of the common perpendicular on `(0, ∞)`.
    pub foot: H2Point,
    /// Median point of the start triangle slid onto `(0, ∞)`.
    pub median: H2Point,
    pub delta: f64,
}

/// Δ at `cuff` from the developing construction with the γ2 lift.
pub fn delta_oracle(p: &PantsMetric, t: &PantsTriangulation, cuff: Cuff) -> Result<f64> {
    oracle_frame(p, t, cuff, LiftChoice::Gamma2).map(|f| f.delta)
}

pub fn oracle_frame(
    p: &PantsMetric,
    t: &PantsTriangulation,
    cuff: Cuff,
    choice: LiftChoice,
) -> Result<OracleFrame> {
    if cuff > 2 {
        return Err(Error::InvalidInput("cuff index must be 0, 1 or 2"));
    }
    let c = cuff;
    if !(p.length(c) >= SINGULAR_CUFF) {
        return Err(Error::SingularCuff(p.length(c)));
    }
    if choice == LiftChoice::Gamma3 && t.layout != Layout::ThreeSym {
        return Err(Error::InvalidInput("the γ3 lift is only defined for the 3-symmetric layout"));
    }
    let dev = Developer { model: Model::new(t.layout), shears: solve_shears(t.layout, p, t)? };
    let neighbour = match t.layout {
        Layout::ThreeSym => (c + 1) % 3,
        Layout::TwoSym(k) if k == c => (c + 1) % 3,
        Layout::TwoSym(k) => k,
    };
    let (tri, j) = (0..2)
        .flat_map(|tr| (0..3).map(move |j| (tr, j)))
        .find(|&(tr, j)| {
            dev.model.corners[tr][j] == c && dev.model.corners[tr][(j + 2) % 3] == neighbour
        })
        .ok_or(Error::Degenerate("no start corner"))?;

    let mut pos = [IdealPoint::Infinity; 3];
    pos[(j + 1) % 3] = IdealPoint::Finite(0.0);
    pos[(j + 2) % 3] = IdealPoint::Finite(1.0);
    let start = Lift { tri, pos };
    let hol = dev.fan_holonomy(&start, j)?;
    let f = match hol.fixed_points()? {
        (IdealPoint::Infinity, IdealPoint::Finite(f)) | (IdealPoint::Finite(f), IdealPoint::Infinity) => f,
        _ => return Err(Error::NonRealizable("cuff holonomy does not fix the start corner")),
    };
    let shift = MobiusMap::translation(-f);
    let start = Lift { tri, pos: start.pos.map(|z| shift.apply_ideal(z)) };
    let x = start.pos[(j + 1) % 3].finite().ok_or(Error::Degenerate("corner at infinity"))?;
    let axis_up = Geodesic::new(0.0, IdealPoint::Infinity)?;

    let (lift2, j2) = match choice {
        LiftChoice::Gamma2 => (start, (j + 2) % 3),
        LiftChoice::Gamma3 => {
            let (next, k) = dev.cross(&start, (j + 2) % 3)?;
            (next, (k + 2) % 3)
        }
    };
    let v = lift2.pos[j2];
    let cusp_len = p.length(dev.model.corners[lift2.tri][j2]);
    let (p_star, foot) = if cusp_len < SINGULAR_CUFF {
        (v, perpendicular_foot(v, &axis_up)?)
    } else {
        let (u, w) = dev.fan_holonomy(&lift2, j2)?.fixed_points()?;
        let far = |z: IdealPoint| match (z, v) {
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) => (a - b).abs(),
            _ => f64::INFINITY,
        };
        let ps = if far(u) >= far(w) { u } else { w };
        (ps, orthofoot(&axis_up, &Geodesic::new(v, ps)?)?)
    };

    let tri_pos = IdealTriangle::new(start.pos[0], start.pos[1], start.pos[2])?;
    let m = triangle_median(&tri_pos, j)?;
    let median = horocyclic_projection(&m, IdealPoint::Infinity, &axis_up)?;
    let oriented = if x < 0.0 { axis_up } else { axis_up.reversed() };
    let delta = signed_distance(&oriented, &median, &foot)?;
    Ok(OracleFrame { x, p_star, foot, median, delta })
}
