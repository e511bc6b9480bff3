//! Real scalars and forward-mode dual numbers.
//!
//! The closed-form Δ expressions are written once over [`Scalar`] so that the
//! same code yields values (`f64`) and exact first derivatives ([`Dual`]).

use core::ops::{Add, Div, Mul, Neg, Sub};

pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn cst(v: f64) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn re(self) -> f64;

    fn scale(self, k: f64) -> Self {
        self * Self::cst(k)
    }
}

impl Scalar for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn exp(self) -> Self {
        libm::exp(self)
    }
    fn ln(self) -> Self {
        libm::log(self)
    }
    fn re(self) -> f64 {
        self
    }
}

/// `v + d·ε` with `ε² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub fn new(v: f64, d: f64) -> Self {
        Self { v, d }
    }

    pub fn var(v: f64) -> Self {
        Self { v, d: 1.0 }
    }
}

impl Add for Dual {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.v + o.v, self.d + o.d)
    }
}

impl Sub for Dual {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.v - o.v, self.d - o.d)
    }
}

impl Mul for Dual {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.v * o.v, self.d * o.v + self.v * o.d)
    }
}

impl Div for Dual {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Self::new(self.v / o.v, (self.d * o.v - self.v * o.d) / (o.v * o.v))
    }
}

impl Neg for Dual {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.v, -self.d)
    }
}

impl Scalar for Dual {
    fn cst(v: f64) -> Self {
        Self::new(v, 0.0)
    }
    fn exp(self) -> Self {
        let e = libm::exp(self.v);
        Self::new(e, e * self.d)
    }
    fn ln(self) -> Self {
        Self::new(libm::log(self.v), self.d / self.v)
    }
    fn re(self) -> f64 {
        self.v
    }
}

/// `log coth u` for `u > 0`, accurate for both small and large `u`.
pub fn log_coth(u: f64) -> f64 {
    let e = libm::exp(-2.0 * u);
    let denom = if e < 0.5 { libm::log1p(-e) } else { libm::log(-libm::expm1(-2.0 * u)) };
    libm::log1p(e) - denom
}

/// `arccosh` with inputs in `[1 - 1e-12, 1)` clamped to 1.
pub fn acosh_clamped(x: f64) -> f64 {
    let x = if (1.0 - 1e-12..1.0).contains(&x) { 1.0 } else { x };
    libm::log(x + libm::sqrt(x * x - 1.0))
}
