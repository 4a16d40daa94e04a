//! Scalar abstraction shared by all kernels.
//!
//! Every operation in this crate is generic over [`Entry`], with exactly two
//! implementations: `f64` (float mode, tolerance-based comparisons) and
//! [`BigRational`] (exact mode, strict comparisons). Keeping arithmetic behind
//! associated functions taking references lets the rational implementation
//! avoid gratuitous clones without hauling higher-ranked `&T: Mul<&T>` bounds
//! through every signature.
//!
//! Float ratio computations run in log domain (see [`Entry::LOG_DOMAIN`]):
//! subtracting logarithms keeps intermediate quotients finite when entries
//! span many orders of magnitude, at the cost of a few ulps on the way back
//! through `exp`. Rational arithmetic never needs the detour.

use alloc::string::String;
use alloc::string::ToString;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Signed, ToPrimitive};

use crate::instance::Tolerance;

/// Matrix entry scalar: cloneable, totally ordered on the values we admit,
/// with field arithmetic by reference.
pub trait Entry: Clone + PartialOrd + core::fmt::Debug + Send + Sync {
    /// True when comparisons are exact (rational arithmetic).
    const EXACT: bool;
    /// True when ratio-style computations should run in log domain.
    const LOG_DOMAIN: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(a: &Self, b: &Self) -> Self;
    fn sub(a: &Self, b: &Self) -> Self;
    fn mul(a: &Self, b: &Self) -> Self;
    /// Division; callers guarantee `b != 0`.
    fn div(a: &Self, b: &Self) -> Self;
    fn neg(a: &Self) -> Self;
    fn abs(a: &Self) -> Self;
    /// Rationals are always finite; floats reject NaN/inf at the boundary.
    fn is_finite(a: &Self) -> bool;
    /// Exact conversion: every finite f64 is a dyadic rational.
    fn from_f64(v: f64) -> Self;
    /// Lossy conversion for display and reporting.
    fn to_f64(a: &Self) -> f64;
    /// Natural log as f64; only called when [`Self::LOG_DOMAIN`] is true.
    fn ln_lossy(a: &Self) -> f64;
    /// Inverse of [`Self::ln_lossy`]; only called when `LOG_DOMAIN` is true.
    fn from_ln(v: f64) -> Self;
    /// Render for file formats: decimal for floats, `p/q` for rationals.
    fn render(a: &Self) -> String;
}

impl Entry for f64 {
    const EXACT: bool = false;
    const LOG_DOMAIN: bool = true;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(a: &Self, b: &Self) -> Self {
        a + b
    }
    fn sub(a: &Self, b: &Self) -> Self {
        a - b
    }
    fn mul(a: &Self, b: &Self) -> Self {
        a * b
    }
    fn div(a: &Self, b: &Self) -> Self {
        a / b
    }
    fn neg(a: &Self) -> Self {
        -a
    }
    fn abs(a: &Self) -> Self {
        // Via the Float trait so the no_std+libm build resolves it too.
        Float::abs(*a)
    }
    fn is_finite(a: &Self) -> bool {
        f64::is_finite(*a)
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(a: &Self) -> f64 {
        *a
    }
    fn ln_lossy(a: &Self) -> f64 {
        Float::ln(*a)
    }
    fn from_ln(v: f64) -> Self {
        Float::exp(v)
    }
    fn render(a: &Self) -> String {
        // Shortest round-trip decimal; `FromStr` recovers the exact bits.
        let mut s = a.to_string();
        if !s.contains(['.', 'e', 'E', 'n', 'i']) {
            s.push_str(".0");
        }
        s
    }
}

impl Entry for BigRational {
    const EXACT: bool = true;
    const LOG_DOMAIN: bool = false;

    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn add(a: &Self, b: &Self) -> Self {
        a + b
    }
    fn sub(a: &Self, b: &Self) -> Self {
        a - b
    }
    fn mul(a: &Self, b: &Self) -> Self {
        a * b
    }
    fn div(a: &Self, b: &Self) -> Self {
        a / b
    }
    fn neg(a: &Self) -> Self {
        -a
    }
    fn abs(a: &Self) -> Self {
        Signed::abs(a)
    }
    fn is_finite(_a: &Self) -> bool {
        true
    }
    fn from_f64(v: f64) -> Self {
        <BigRational as FromPrimitive>::from_f64(v).expect("finite float converts exactly")
    }
    fn to_f64(a: &Self) -> f64 {
        a.to_f64().unwrap_or(f64::NAN)
    }
    fn ln_lossy(_a: &Self) -> f64 {
        unreachable!("log-domain path is float-only")
    }
    fn from_ln(_v: f64) -> Self {
        unreachable!("log-domain path is float-only")
    }
    fn render(a: &Self) -> String {
        use alloc::format;
        if a.denom() == &BigInt::from(1) {
            format!("{}", a.numer())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// Tolerance comparisons instantiated for one entry type.
///
/// Slack for a comparison against a right-hand side of magnitude `s` is
/// `rel * max(1, |s|)`; zero classification uses the absolute `zero_tol`.
/// In exact mode both knobs are zero, so every helper degenerates to the
/// strict comparison.
pub(crate) struct TolCtx<T> {
    rel: T,
    zero_tol: T,
    one: T,
}

impl<T: Entry> TolCtx<T> {
    pub(crate) fn new(tol: &Tolerance) -> Self {
        TolCtx {
            rel: T::from_f64(tol.effective_rel()),
            zero_tol: T::from_f64(tol.effective_zero_tol()),
            one: T::one(),
        }
    }

    /// `rel * max(1, |scale|)`.
    pub(crate) fn slack(&self, scale: &T) -> T {
        let m = T::abs(scale);
        let m = if m > self.one { m } else { self.one.clone() };
        T::mul(&self.rel, &m)
    }

    /// `lhs > rhs + rel * max(1, |scale|)`.
    pub(crate) fn exceeds(&self, lhs: &T, rhs: &T, scale: &T) -> bool {
        *lhs > T::add(rhs, &self.slack(scale))
    }

    /// `|lhs - rhs| > rel * max(1, |scale|)`.
    pub(crate) fn differs(&self, lhs: &T, rhs: &T, scale: &T) -> bool {
        T::abs(&T::sub(lhs, rhs)) > self.slack(scale)
    }

    /// Symmetric approximate equality: `|a - b| <= rel * max(1, |a|, |b|)`.
    pub(crate) fn approx_eq(&self, a: &T, b: &T) -> bool {
        let scale = if T::abs(a) > T::abs(b) { a } else { b };
        !self.differs(a, b, scale)
    }

    /// `|v| <= zero_tol`.
    pub(crate) fn is_zero(&self, v: &T) -> bool {
        T::abs(v) <= self.zero_tol
    }

    /// `v > zero_tol` (strictly positive beyond the zero band).
    pub(crate) fn is_positive(&self, v: &T) -> bool {
        *v > self.zero_tol
    }

    /// `v >= -zero_tol` (non-negative up to the zero band).
    pub(crate) fn is_nonnegative(&self, v: &T) -> bool {
        *v >= T::neg(&self.zero_tol)
    }

    /// Slack-normalized excess `(lhs - rhs) / max(1, |scale|)`.
    pub(crate) fn gap(&self, lhs: &T, rhs: &T, scale: &T) -> T {
        let m = T::abs(scale);
        let m = if m > self.one { m } else { self.one.clone() };
        T::div(&T::sub(lhs, rhs), &m)
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_round_trip_render() {
        for v in [0.1, 1.0, -3.5, 2.0f64.powi(-40), 1.7e300, 12345.678901234567] {
            let s = <f64 as Entry>::render(&v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }

    #[test]
    fn rational_from_f64_is_exact() {
        let r = <BigRational as Entry>::from_f64(0.1);
        // 0.1 is the dyadic 3602879701896397 / 2^55, not 1/10.
        assert_ne!(r, BigRational::new(BigInt::from(1), BigInt::from(10)));
        assert_eq!(<BigRational as Entry>::to_f64(&r), 0.1);
    }

    #[test]
    fn slack_floors_at_one() {
        let tol = Tolerance::default();
        let ctx: TolCtx<f64> = TolCtx::new(&tol);
        assert_eq!(ctx.slack(&0.5), 1e-9);
        assert_eq!(ctx.slack(&-2.0), 2e-9);
    }

    #[test]
    fn exact_mode_is_strict() {
        let ctx: TolCtx<BigRational> = TolCtx::new(&Tolerance::exact());
        let one = <BigRational as Entry>::one();
        let two = <BigRational as Entry>::add(&one, &one);
        assert!(ctx.exceeds(&two, &one, &one));
        assert!(!ctx.exceeds(&one, &one, &one));
        assert!(!ctx.is_zero(&one));
    }
}
