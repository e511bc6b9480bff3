//! Geodesic triangulations of a pair of pants, their shear coordinates, and
//! the twist offsets Δ at each cuff.
//!
//! Cuffs are indexed `0, 1, 2`. Formulas written for a distinguished cuff
//! `γ1` are applied to cuff `c` by relabeling.

mod closed;
mod oracle;

pub use closed::{
    delta, delta_2sym, delta_3sym, delta_asym, delta_closed, delta_generic, delta_normalized,
    printed_x_3sym, shear_coords,
};
pub use oracle::{delta_oracle, oracle_frame, OracleFrame};

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub type Cuff = usize;

/// Lengths below this are treated as zero on the distinguished cuff.
pub const SINGULAR_CUFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PantsMetric {
    l: [f64; 3],
}

impl PantsMetric {
    pub fn new(l1: f64, l2: f64, l3: f64) -> Result<Self> {
        let l = [l1, l2, l3];
        if l.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidInput("cuff lengths must be finite and non-negative"));
        }
        Ok(Self { l })
    }

    pub fn from_array(l: [f64; 3]) -> Result<Self> {
        Self::new(l[0], l[1], l[2])
    }

    pub fn lengths(&self) -> [f64; 3] {
        self.l
    }

    pub fn length(&self, c: Cuff) -> f64 {
        self.l[c]
    }

    /// All lengths multiplied by `e^s`.
    pub fn stretched(&self, s: f64) -> Self {
        let k = libm::exp(s);
        Self { l: self.l.map(|x| x * k) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Twist {
    Left,
    Right,
}

impl Twist {
    pub fn sign(self) -> f64 {
        match self {
            Twist::Left => 1.0,
            Twist::Right => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Twist::Left => Twist::Right,
            Twist::Right => Twist::Left,
        }
    }
}

/// Twist direction at each cuff; `ε = +1` means twisting to the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistSigns(pub [Twist; 3]);

impl TwistSigns {
    pub const ALL_LEFT: Self = Self([Twist::Left; 3]);
    pub const ALL_RIGHT: Self = Self([Twist::Right; 3]);

    pub fn eps(&self, c: Cuff) -> f64 {
        self.0[c].sign()
    }

    pub fn flipped(&self) -> Self {
        Self(self.0.map(Twist::flipped))
    }

    /// The 8 sign patterns, left before right in each slot.
    pub fn all() -> [Self; 8] {
        let t = |b: usize| if b == 0 { Twist::Left } else { Twist::Right };
        core::array::from_fn(|i| Self([t(i >> 2 & 1), t(i >> 1 & 1), t(i & 1)]))
    }
}

impl fmt::Display for TwistSigns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.0 {
            f.write_str(if t == Twist::Left { "L" } else { "R" })?;
        }
        Ok(())
    }
}

impl core::str::FromStr for TwistSigns {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let b = s.as_bytes();
        if b.len() != 3 {
            return Err(Error::InvalidInput("twist signs are three letters from {L, R}"));
        }
        let mut out = [Twist::Left; 3];
        for (o, ch) in out.iter_mut().zip(b) {
            *o = match ch {
                b'L' | b'l' => Twist::Left,
                b'R' | b'r' => Twist::Right,
                _ => return Err(Error::InvalidInput("twist signs are three letters from {L, R}")),
            };
        }
        Ok(Self(out))
    }
}

/// How the six leaf ends are spread over the cuffs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layout {
    /// Two ends at every cuff, leaves `γ12, γ13, γ23`.
    ThreeSym,
    /// Four ends at the given cuff: a self-leaf there plus one leaf to each
    /// other cuff.
    TwoSym(Cuff),
}

impl Layout {
    pub const ALL: [Layout; 4] =
        [Layout::ThreeSym, Layout::TwoSym(0), Layout::TwoSym(1), Layout::TwoSym(2)];

    pub fn end_counts(&self) -> [u8; 3] {
        match *self {
            Layout::ThreeSym => [2, 2, 2],
            Layout::TwoSym(k) => {
                let mut c = [1; 3];
                c[k] = 4;
                c
            }
        }
    }

    pub fn class_at(&self, c: Cuff) -> SymmetryClass {
        match *self {
            Layout::ThreeSym => SymmetryClass::ThreeSym,
            Layout::TwoSym(k) if k == c => SymmetryClass::TwoSym,
            Layout::TwoSym(_) => SymmetryClass::Asym,
        }
    }

    pub fn leaves(&self) -> [Leaf; 3] {
        match *self {
            Layout::ThreeSym => [Leaf::new(0, 1), Leaf::new(0, 2), Leaf::new(1, 2)],
            Layout::TwoSym(k) => {
                [Leaf::new(k, k), Leaf::new(k, (k + 1) % 3), Leaf::new(k, (k + 2) % 3)]
            }
        }
    }

    /// Relabel cuffs by `c ↦ perm[c]`.
    pub fn permuted(&self, perm: [Cuff; 3]) -> Self {
        match *self {
            Layout::ThreeSym => Layout::ThreeSym,
            Layout::TwoSym(k) => Layout::TwoSym(perm[k]),
        }
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Layout::ThreeSym => f.write_str("3sym"),
            Layout::TwoSym(k) => write!(f, "4@{}", k + 1),
        }
    }
}

/// Symmetry class of a triangulation as seen from one cuff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    ThreeSym,
    TwoSym,
    Asym,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PantsTriangulation {
    pub layout: Layout,
    pub signs: TwistSigns,
}

impl PantsTriangulation {
    pub fn new(layout: Layout, signs: TwistSigns) -> Result<Self> {
        if let Layout::TwoSym(k) = layout {
            if k > 2 {
                return Err(Error::InvalidInput("cuff index must be 0, 1 or 2"));
            }
        }
        Ok(Self { layout, signs })
    }

    pub fn flipped(&self) -> Self {
        Self { layout: self.layout, signs: self.signs.flipped() }
    }
}

/// An unordered pair of cuffs naming a leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leaf(Cuff, Cuff);

impl Leaf {
    pub fn new(i: Cuff, j: Cuff) -> Self {
        if i <= j {
            Leaf(i, j)
        } else {
            Leaf(j, i)
        }
    }

    pub fn ends(&self) -> [Cuff; 2] {
        [self.0, self.1]
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}{}", self.0 + 1, self.1 + 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShearCoords {
    entries: Vec<(Leaf, f64)>,
}

impl ShearCoords {
    pub(crate) fn new(mut entries: Vec<(Leaf, f64)>) -> Self {
        entries.sort_by_key(|e| e.0);
        Self { entries }
    }

    pub fn get(&self, leaf: Leaf) -> Option<f64> {
        self.entries.iter().find(|(l, _)| *l == leaf).map(|(_, s)| *s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Leaf, f64)> + '_ {
        self.entries.iter().copied()
    }
}

/// Which neighbouring cuff's lift fixes the foot point in the 3-symmetric case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LiftChoice {
    #[default]
    Gamma2,
    Gamma3,
}

/// All 32 topological types.
pub fn enumerate_triangulations() -> Vec<PantsTriangulation> {
    let mut out = Vec::with_capacity(32);
    for layout in Layout::ALL {
        for signs in TwistSigns::all() {
            out.push(PantsTriangulation { layout, signs });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn thirty_two_types() {
        let all = enumerate_triangulations();
        assert_eq!(all.len(), 32);
        assert_eq!(all.iter().filter(|t| t.layout == Layout::ThreeSym).count(), 8);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
        }
        let mut dists: Vec<[u8; 3]> = all.iter().map(|t| t.layout.end_counts()).collect();
        dists.sort();
        dists.dedup();
        assert_eq!(dists, [[1, 1, 4], [1, 4, 1], [2, 2, 2], [4, 1, 1]]);
    }

    #[test]
    fn sign_parsing() {
        let s: TwistSigns = "LRl".parse().unwrap();
        assert_eq!(s.0, [Twist::Left, Twist::Right, Twist::Left]);
        assert_eq!(s.to_string(), "LRL");
        assert!("LLX".parse::<TwistSigns>().is_err());
        assert!("LL".parse::<TwistSigns>().is_err());
    }

    #[test]
    fn classes() {
        assert_eq!(Layout::TwoSym(1).class_at(1), SymmetryClass::TwoSym);
        assert_eq!(Layout::TwoSym(1).class_at(0), SymmetryClass::Asym);
        assert_eq!(Layout::ThreeSym.class_at(2), SymmetryClass::ThreeSym);
    }

    #[test]
    fn metric_validation() {
        assert!(PantsMetric::new(1.0, -0.1, 0.0).is_err());
        assert!(PantsMetric::new(f64::NAN, 1.0, 1.0).is_err());
        assert!(PantsMetric::new(0.0, 0.0, 0.0).is_ok());
    }
}
