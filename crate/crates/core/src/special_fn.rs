//! Modified Bessel functions of the first kind with real fractional order,
//! the bivariate Gaussian kernel, normal-CDF helpers, and series-truncation
//! control.
//!
//! `I_v(z)` is evaluated from its power series
//! `I_v(z) = sum_k (z/2)^{2k+v} / (k! Gamma(v+k+1))`
//! in log space around the largest term, so the scaled form `e^{-z} I_v(z)`
//! stays representable for arguments far beyond the naive overflow point.
//! All terms are positive, so there is no cancellation in the sum.

use crate::error::{Error, Result};

/// Natural log of f64::MAX; exp() overflows above this.
const LN_F64_MAX: f64 = 709.782712893384;

/// Relative term size at which the series sum is converged.
const SERIES_EPS: f64 = 1e-17;

/// A validated nonnegative real Bessel order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(v: f64) -> Result<Self> {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Domain {
                op: "BesselOrder::new",
                detail: format!("order must be finite and >= 0, got {v}"),
            });
        }
        Ok(Self(v))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Truncation budget for the image-charge series in the wedge densities.
#[derive(Debug, Clone, Copy)]
pub struct SeriesBudget {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl SeriesBudget {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::Domain {
                op: "SeriesBudget::new",
                detail: format!("rel_tol must be in (0,1), got {rel_tol}"),
            });
        }
        if max_terms == 0 {
            return Err(Error::Domain {
                op: "SeriesBudget::new",
                detail: "max_terms must be >= 1".to_string(),
            });
        }
        Ok(Self { rel_tol, max_terms })
    }
}

/// ln I_v(z) for v >= 0, z >= 0. Returns -inf when I_v(z) = 0 (z = 0, v > 0).
///
/// The sum is anchored at the index k* of the largest series term, found from
/// the term-ratio equation (k+1)(v+k+1) = (z/2)^2, and extended in both
/// directions until the relative contribution drops below machine noise.
pub(crate) fn ln_bessel_i(v: f64, z: f64) -> f64 {
    debug_assert!(v >= 0.0 && z >= 0.0);
    if z == 0.0 {
        return if v == 0.0 { 0.0 } else { f64::NEG_INFINITY };
    }
    let zh = 0.5 * z;
    let ln_zh = zh.ln();

    // Peak index of t_k = (z/2)^{2k+v} / (k! Gamma(v+k+1)).
    let disc = (v * v + 4.0 * zh * zh).sqrt();
    let k_peak = (0.5 * (disc - (v + 2.0))).floor().max(0.0) as usize;

    let kf = k_peak as f64;
    let ln_peak = (2.0 * kf + v) * ln_zh
        - libm::lgamma_r(kf + 1.0).0
        - libm::lgamma_r(v + kf + 1.0).0;

    // Relative sum around the peak; ratios avoid re-evaluating lgamma.
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut k = kf;
    loop {
        let ratio = (zh * zh) / ((k + 1.0) * (v + k + 1.0));
        term *= ratio;
        sum += term;
        k += 1.0;
        if term < SERIES_EPS * sum || k > kf + 1.0e7 {
            break;
        }
    }
    term = 1.0;
    k = kf;
    while k >= 1.0 {
        let ratio = k * (v + k) / (zh * zh);
        term *= ratio;
        sum += term;
        k -= 1.0;
        if term < SERIES_EPS * sum {
            break;
        }
    }

    ln_peak + sum.ln()
}

fn check_bessel_args(op: &'static str, v: f64, z: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::Domain {
            op,
            detail: format!("order must be finite and >= 0, got {v}"),
        });
    }
    if !z.is_finite() || z < 0.0 {
        return Err(Error::Domain {
            op,
            detail: format!("argument must be finite and >= 0, got {z}"),
        });
    }
    Ok(())
}

/// Modified Bessel function of the first kind, `I_v(z)`.
///
/// Errors with `Overflow` once the value exceeds f64 range; callers in that
/// regime should use [`bessel_i_scaled`].
pub fn bessel_i(v: BesselOrder, z: f64) -> Result<f64> {
    check_bessel_args("bessel_i", v.get(), z)?;
    let ln_val = ln_bessel_i(v.get(), z);
    if ln_val > LN_F64_MAX {
        return Err(Error::Overflow {
            op: "bessel_i",
            detail: format!("ln I_v(z) = {ln_val} for v = {}, z = {z}", v.get()),
        });
    }
    Ok(ln_val.exp())
}

/// Exponentially scaled modified Bessel function, `e^{-z} I_v(z)`.
///
/// Representable for every v >= 0, z >= 0 (bounded by 1).
pub fn bessel_i_scaled(v: BesselOrder, z: f64) -> Result<f64> {
    check_bessel_args("bessel_i_scaled", v.get(), z)?;
    Ok(bessel_i_scaled_raw(v.get(), z))
}

/// Unchecked fast path for the density series loops.
#[inline]
pub(crate) fn bessel_i_scaled_raw(v: f64, z: f64) -> f64 {
    (ln_bessel_i(v, z) - z).exp()
}

/// Standard bivariate Gaussian kernel `(2 pi)^{-1} exp(-x . x / 2)`.
#[inline]
pub fn gauss2(x: [f64; 2]) -> f64 {
    (2.0 * std::f64::consts::PI).recip() * (-0.5 * (x[0] * x[0] + x[1] * x[1])).exp()
}

/// Outcome of [`truncation_length`]: the advised term count and whether the
/// geometric tail bound was actually met within the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    pub terms: usize,
    pub bound_met: bool,
}

/// Advisory truncation point for the wedge series `sum_n n sin(..) I_{n pi/alpha}(z)`.
///
/// Uses the term bound `I_v(z) < e (z/2)^v` (valid for z < 2): with
/// `q = (z/2)^{pi/alpha}`, the tail past N is below
/// `e q^{N+1} ((N+1) - N q) / (1-q)^2`. Returns the smallest N whose tail
/// bound drops below `rel_tol` times the bounded partial sum, or
/// `max_terms` with `bound_met = false` when the bound cannot certify
/// (z >= 2, or the budget is too small).
pub fn truncation_length(alpha: f64, z: f64, budget: SeriesBudget) -> Truncation {
    debug_assert!(alpha > 0.0 && alpha < std::f64::consts::PI);
    debug_assert!(z >= 0.0);
    if z == 0.0 {
        return Truncation {
            terms: 1,
            bound_met: true,
        };
    }
    let q = (0.5 * z).powf(std::f64::consts::PI / alpha);
    if q >= 1.0 {
        return Truncation {
            terms: budget.max_terms,
            bound_met: false,
        };
    }
    let e = std::f64::consts::E;
    let denom = (1.0 - q) * (1.0 - q);
    let mut partial = 0.0;
    let mut qn = 1.0;
    for n in 1..=budget.max_terms {
        qn *= q;
        partial += e * n as f64 * qn;
        let nf = n as f64;
        let tail = e * qn * q * ((nf + 1.0) - nf * q) / denom;
        if tail < budget.rel_tol * partial {
            return Truncation {
                terms: n,
                bound_met: true,
            };
        }
    }
    Truncation {
        terms: budget.max_terms,
        bound_met: false,
    }
}

/// Standard normal CDF.
#[inline]
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// ln of the standard normal CDF, stable far into the left tail.
pub fn ln_norm_cdf(x: f64) -> f64 {
    if x > -30.0 {
        return norm_cdf(x).ln();
    }
    // Asymptotic expansion of Mills' ratio; for x <= -30 the truncation
    // error is below 1e-14 relative.
    let y = 1.0 / (x * x);
    let series = 1.0 + y * (-1.0 + y * (3.0 + y * (-15.0 + y * (105.0 - y * 945.0))));
    -0.5 * x * x - (-x).ln() - 0.5 * (2.0 * std::f64::consts::PI).ln() + series.ln()
}
