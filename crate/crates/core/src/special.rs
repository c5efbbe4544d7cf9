//! Gamma and Beta functions for positive real arguments.

use crate::error::{Error, Result};

// Lanczos approximation, g = 607/128, 15 terms.
const LANCZOS_G: f64 = 4.742_187_5;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_188_9e-5,
    4.652_362_892_704_857_5e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_124_9e-4,
    -2.102_644_417_241_048_8e-4,
    2.174_396_181_152_126_4e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_274e-5,
    -2.619_083_840_158_140_9e-5,
    3.689_918_265_953_162e-6,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;

/// Natural log of Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        // Gamma(x) = Gamma(x + 1) / x
        return ln_gamma(x + 1.0) - x.ln();
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Gamma(x) for x > 0.
pub fn gamma(x: f64) -> f64 {
    if x > 0.0 && x == x.floor() && x <= 20.0 {
        // exact factorials for small integers
        let mut acc = 1.0;
        let mut k = 2.0;
        while k < x {
            acc *= k;
            k += 1.0;
        }
        return acc;
    }
    ln_gamma(x).exp()
}

/// Euler Beta function B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b), a, b > 0.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::Domain(format!("beta requires positive arguments, got ({a}, {b})")));
    }
    Ok((ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp())
}
