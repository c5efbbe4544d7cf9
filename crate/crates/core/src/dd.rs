//! Double-double arithmetic for the operational-matrix assembly.
//!
//! The alternating sums behind the matrix entries cancel by factors up to
//! ~16^N, which wipes out plain f64 for N above ~10. Carrying the exact
//! rational partial sums into a ~31-digit double-double accumulator keeps the
//! final entries accurate to f64 roundoff for every N the solver supports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// pi
#[allow(dead_code)]
pub const DD_PI: Dd = Dd { hi: std::f64::consts::PI, lo: 1.2246467991473532e-16 };
/// sqrt(pi) = Gamma(1/2)
pub const DD_SQRT_PI: Dd = Dd { hi: 1.772453850905516, lo: -7.666586499825799e-17 };
/// Gamma(1/4)
pub const DD_GAMMA_1_4: Dd = Dd { hi: 3.625609908221908, lo: 1.0555907647086408e-16 };
/// Gamma(3/4)
pub const DD_GAMMA_3_4: Dd = Dd { hi: 1.2254167024651776, lo: 2.151319998296141e-18 };

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd { hi: -other.hi, lo: -other.lo })
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Dd::from_f64(q1)));
        let q2 = (r.hi + r.lo) / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }
    }

    pub fn scale(self, s: f64) -> Dd {
        self.mul(Dd::from_f64(s))
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Convert a big rational to f64 without overflowing on huge numerators.
///
/// Scales the quotient into the exactly-representable integer range first, so
/// the result is correct to one ulp even when numerator and denominator have
/// thousands of bits.
pub fn big_ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer();
    let den = r.denom();
    // shift so that |num| * 2^shift / den lands near 2^80
    let shift = 80 + (den.bits() as i64) - (num.bits() as i64);
    let scaled: BigInt = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let v = scaled.to_f64().unwrap_or(f64::NAN);
    v * 2f64.powi(-shift as i32)
}

/// Convert a big rational to double-double (relative error ~1e-32).
pub fn big_ratio_to_dd(r: &BigRational) -> Dd {
    let hi = big_ratio_to_f64(r);
    if !hi.is_finite() {
        return Dd::from_f64(hi);
    }
    let rest = r - BigRational::from_float(hi).expect("finite hi");
    let lo = big_ratio_to_f64(&rest);
    Dd { hi, lo }
}
