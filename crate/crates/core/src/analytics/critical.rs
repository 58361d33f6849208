use super::rates::{basic_unchecked, rates_for, variant_unchecked, DenseParams, RateModel};
use crate::error::{Error, Result};

/// Lower end of the bisection bracket.
pub const C_LOWER: f64 = 1e-6;
/// Upper end of the bisection bracket.
pub const C_UPPER: f64 = 100.0;

/// Smallest clique constant `c` with `ρ(c) >= √τ` at fixed `(α, β[, η])`,
/// found by bisection on `(C_LOWER, C_UPPER]`.
///
/// `ρ` is strictly increasing in `c` and `τ` does not depend on it, so the
/// crossing is unique. Pass `eta` for the refined model, `dense` for
/// `G(n, p, k, q)`; at most one of them.
pub fn critical_c(
    alpha: f64,
    beta: f64,
    eta: Option<f64>,
    dense: Option<DenseParams>,
) -> Result<f64> {
    let model = match (eta, dense) {
        (Some(_), Some(_)) => {
            return Err(Error::InvalidParams(
                "critical_c takes eta or dense parameters, not both".into(),
            ))
        }
        (Some(_), None) => RateModel::Variant,
        (None, Some(d)) => RateModel::Dense(d),
        (None, None) => RateModel::Basic,
    };
    // validates every argument once
    rates_for(model, alpha, beta, eta, 1.0)?;
    critical_c_unchecked(model, alpha, beta, eta.unwrap_or(0.0))
}

/// `ρ(c) - √τ`, monotone increasing in `c`.
#[inline]
fn excess(model: RateModel, alpha: f64, beta: f64, eta: f64, c: f64) -> Result<f64> {
    let r = match model {
        RateModel::Basic => basic_unchecked(alpha, beta, c),
        RateModel::Variant => variant_unchecked(alpha, beta, eta, c)?,
        RateModel::Dense(d) => basic_unchecked(alpha, beta, c * d.signal()),
    };
    Ok(r.rho - r.tau.sqrt())
}

pub(crate) fn critical_c_unchecked(
    model: RateModel,
    alpha: f64,
    beta: f64,
    eta: f64,
) -> Result<f64> {
    let f = |c| excess(model, alpha, beta, eta, c);
    let (mut lo, mut hi) = (C_LOWER, C_UPPER);
    if f(hi)? < 0.0 {
        return Err(Error::NoCrossing { upper: C_UPPER });
    }
    if f(lo)? >= 0.0 {
        return Ok(lo);
    }
    // run to floating-point convergence: |ρ(c̃) - √τ| must be far below 1e-9,
    // which a 1e-6 bracket on c alone does not give
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}
