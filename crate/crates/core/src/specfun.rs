//! Scalar special functions: Gaussian tail probability, modified Bessel
//! functions of orders 0 and 1, and the large-argument inverse of `x e^{-x}`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Probability(f64);

impl Probability {
    pub const HALF: Probability = Probability(0.5);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(Error::InvalidParameter {
                name: "probability",
                value,
                detail: "must lie in [0, 1]",
            })
        }
    }

    /// Clamps rounding excursions into `[0, 1]`. Used for closed forms whose
    /// range is known analytically.
    pub(crate) fn saturating(value: f64) -> Self {
        Probability(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

/// Standard normal upper-tail probability `Q(x) = P(N(0,1) > x)`.
pub fn gaussian_q(x: f64) -> Result<Probability> {
    if !x.is_finite() {
        return Err(Error::Domain {
            func: "gaussian_q",
            value: x,
            detail: "argument must be finite",
        });
    }
    Ok(Probability::saturating(q_tail(x)))
}

/// Unchecked `Q(x)` for hot loops; NaN in, NaN out.
#[inline]
pub(crate) fn q_tail(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

fn check_bessel_arg(func: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            func,
            value: x,
            detail: "argument must be finite and non-negative",
        })
    }
}

/// Below this argument the ascending series is summed directly; above it the
/// Hankel asymptotic expansion is accurate to well below 1e-15.
const BESSEL_SERIES_LIMIT: f64 = 30.0;

/// `(e^{-x} I0(x), e^{-x} I1(x))` for `x >= 0`.
fn bessel_i01_scaled(x: f64) -> (f64, f64) {
    if x <= BESSEL_SERIES_LIMIT {
        let q = 0.25 * x * x;
        let mut t0 = 1.0;
        let mut t1 = 0.5 * x;
        let mut s0 = t0;
        let mut s1 = t1;
        let mut k = 1.0;
        loop {
            t0 *= q / (k * k);
            t1 *= q / (k * (k + 1.0));
            s0 += t0;
            s1 += t1;
            if t0 <= s0 * 1e-17 && t1 <= s1 * 1e-17 {
                break;
            }
            k += 1.0;
        }
        let scale = (-x).exp();
        (s0 * scale, s1 * scale)
    } else {
        (hankel_scaled(0.0, x), hankel_scaled(1.0, x))
    }
}

fn hankel_scaled(order: f64, x: f64) -> f64 {
    let mu = 4.0 * order * order;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= -(mu - odd * odd) / (k as f64 * 8.0 * x);
        if term.abs() >= prev {
            break;
        }
        sum += term;
        prev = term.abs();
        if prev < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

/// Modified Bessel function `I0(x)`; overflows to infinity past `x ≈ 713`.
pub fn bessel_i0(x: f64) -> Result<f64> {
    check_bessel_arg("bessel_i0", x)?;
    Ok(bessel_i01_scaled(x).0 * x.exp())
}

/// Modified Bessel function `I1(x)`; overflows to infinity past `x ≈ 713`.
pub fn bessel_i1(x: f64) -> Result<f64> {
    check_bessel_arg("bessel_i1", x)?;
    Ok(bessel_i01_scaled(x).1 * x.exp())
}

/// Exponentially scaled `e^{-x} I0(x)`.
pub fn bessel_i0e(x: f64) -> Result<f64> {
    check_bessel_arg("bessel_i0e", x)?;
    Ok(bessel_i01_scaled(x).0)
}

/// Exponentially scaled `e^{-x} I1(x)`.
pub fn bessel_i1e(x: f64) -> Result<f64> {
    check_bessel_arg("bessel_i1e", x)?;
    Ok(bessel_i01_scaled(x).1)
}

/// `I1(x) / I0(x)`, finite for every non-negative argument.
pub fn bessel_ratio_i1_i0(x: f64) -> Result<f64> {
    check_bessel_arg("bessel_ratio_i1_i0", x)?;
    Ok(bessel_ratio_unchecked(x))
}

#[inline]
pub(crate) fn bessel_ratio_unchecked(x: f64) -> f64 {
    let (i0e, i1e) = bessel_i01_scaled(x);
    i1e / i0e
}

/// Inverse of `y = x e^{-x}` on the branch `x >= 1`.
///
/// Valid for `0 < y <= 1/e`; small `y` maps to large `x`.
pub fn inv_x_exp_neg_x(y: f64) -> Result<f64> {
    let branch_point = (-1.0f64).exp();
    if !(y.is_finite() && y > 0.0 && y <= branch_point) {
        return Err(Error::Domain {
            func: "inv_x_exp_neg_x",
            value: y,
            detail: "requires 0 < y <= 1/e",
        });
    }
    if y == branch_point {
        return Ok(1.0);
    }
    let log_y = y.ln();
    // g is strictly decreasing on [1, inf) with g(1) >= 0.
    let g = |x: f64| x.ln() - x - log_y;

    // Asymptotic iterate x <- ln(x / y) seeds the upper bracket.
    let mut guess = (-log_y).max(1.0);
    for _ in 0..8 {
        guess = (guess.ln() - log_y).max(1.0);
    }
    let mut lo = 1.0;
    let mut hi = (2.0 * guess).max(2.0);
    while g(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    if g(guess) > 0.0 {
        lo = lo.max(guess);
    } else {
        hi = hi.min(guess);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
