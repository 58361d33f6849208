use super::normal::sf;
use crate::error::{invalid, Error, Result};
use serde::{Deserialize, Serialize};

/// Algorithm knobs plus the clique-size constant `c` in `k = c·√n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliqueParams {
    /// Sampling rate of the reference set.
    pub alpha: f64,
    /// Survivor threshold, in half standard deviations above the mean.
    pub beta: f64,
    /// Threshold for the refined reference set; `Some` only in variant mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    pub c: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon4: Option<f64>,
}

impl CliqueParams {
    pub fn basic(alpha: f64, beta: f64, c: f64) -> Self {
        CliqueParams {
            alpha,
            beta,
            eta: None,
            c,
            epsilon4: None,
        }
    }

    pub fn variant(alpha: f64, beta: f64, eta: f64, c: f64) -> Self {
        CliqueParams {
            alpha,
            beta,
            eta: Some(eta),
            c,
            epsilon4: None,
        }
    }
}

/// Edge probabilities of `G(n, p, k, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenseParams {
    pub p: f64,
    pub q: f64,
}

impl DenseParams {
    /// The hidden clique model `G(n, 1/2, k)`.
    pub const CLIQUE: DenseParams = DenseParams { p: 0.5, q: 1.0 };

    pub fn new(p: f64, q: f64) -> Result<Self> {
        let d = DenseParams { p, q };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p > 0.0 && self.p < 1.0) {
            return invalid(format!("p = {} must lie in (0, 1)", self.p));
        }
        if !(self.q > self.p && self.q <= 1.0) {
            return invalid(format!(
                "need p < q <= 1, got p = {}, q = {}",
                self.p, self.q
            ));
        }
        Ok(())
    }

    /// `(q - p) / √(p(1 - p))`: signal per standard deviation of one pair.
    pub fn signal(&self) -> f64 {
        (self.q - self.p) / (self.p * (1.0 - self.p)).sqrt()
    }

    /// `(p + q) / 2`.
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.p + self.q)
    }
}

/// Which shrinkage formulas apply.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum RateModel {
    Basic,
    Variant,
    Dense(DenseParams),
}

impl RateModel {
    /// Edge probabilities assumed by the model.
    pub fn edge_probs(&self) -> DenseParams {
        match self {
            RateModel::Dense(d) => *d,
            _ => DenseParams::CLIQUE,
        }
    }
}

/// Per-iteration survival rates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rates {
    /// Fraction of non-clique vertices surviving an iteration.
    pub tau: f64,
    /// Fraction of clique vertices surviving an iteration.
    pub rho: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// `rho / √tau`; the clique fraction `k_i / √n_i` grows iff this exceeds 1.
    pub growth: f64,
}

impl Rates {
    fn new(tau: f64, rho: f64) -> Self {
        Rates {
            tau,
            rho,
            gamma: None,
            delta: None,
            growth: rho / tau.sqrt(),
        }
    }

    pub fn is_supercritical(&self) -> bool {
        self.growth > 1.0
    }
}

fn check_common(alpha: f64, beta: f64, c: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return invalid(format!("alpha = {alpha} must lie in (0, 1)"));
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return invalid(format!("beta = {beta} must be finite and non-negative"));
    }
    if !(c >= 0.0 && c.is_finite()) {
        return invalid(format!("c = {c} must be finite and non-negative"));
    }
    Ok(())
}

/// `τ = (1-α)Φ̄(β)`, `ρ = (1-α)Φ̄(β - c√α)`.
pub fn rates_basic(alpha: f64, beta: f64, c: f64) -> Result<Rates> {
    check_common(alpha, beta, c)?;
    Ok(basic_unchecked(alpha, beta, c))
}

#[inline]
pub(crate) fn basic_unchecked(alpha: f64, beta: f64, c: f64) -> Rates {
    let keep = 1.0 - alpha;
    Rates::new(keep * sf(beta), keep * sf(beta - c * alpha.sqrt()))
}

/// Refined reference set: `γ = αΦ̄(η)`, `δ = αΦ̄(η - c√α)`,
/// `ρ = (1-α)Φ̄(β - cδ/√γ)`; `τ` as in the basic model.
///
/// `eta` may be any finite real; very negative values make the refined set
/// the whole sample.
pub fn rates_variant(alpha: f64, beta: f64, eta: f64, c: f64) -> Result<Rates> {
    check_common(alpha, beta, c)?;
    if !eta.is_finite() {
        return invalid(format!("eta = {eta} must be finite"));
    }
    variant_unchecked(alpha, beta, eta, c)
}

#[inline]
pub(crate) fn variant_unchecked(alpha: f64, beta: f64, eta: f64, c: f64) -> Result<Rates> {
    let gamma = alpha * sf(eta);
    if gamma <= 0.0 {
        return Err(Error::DegenerateRates(format!(
            "gamma underflows to 0 at eta = {eta}"
        )));
    }
    let delta = alpha * sf(eta - c * alpha.sqrt());
    let keep = 1.0 - alpha;
    let mut r = Rates::new(keep * sf(beta), keep * sf(beta - c * delta / gamma.sqrt()));
    r.gamma = Some(gamma);
    r.delta = Some(delta);
    Ok(r)
}

/// Dense model: `ρ' = (1-α)Φ̄(β - c√α (q-p)/√(p(1-p)))`.
pub fn rates_dense(alpha: f64, beta: f64, c: f64, dense: DenseParams) -> Result<Rates> {
    check_common(alpha, beta, c)?;
    dense.validate()?;
    Ok(basic_unchecked(alpha, beta, c * dense.signal()))
}

/// Rates under `model`; `eta` is required for the variant and ignored otherwise.
pub fn rates_for(
    model: RateModel,
    alpha: f64,
    beta: f64,
    eta: Option<f64>,
    c: f64,
) -> Result<Rates> {
    match model {
        RateModel::Basic => rates_basic(alpha, beta, c),
        RateModel::Variant => {
            let eta = eta.ok_or_else(|| Error::InvalidParams("variant mode needs eta".into()))?;
            rates_variant(alpha, beta, eta, c)
        }
        RateModel::Dense(d) => rates_dense(alpha, beta, c, d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn published_basic_point() {
        let r = rates_basic(0.3728, 0.72, 1.65).unwrap();
        assert!((r.tau - 0.14787).abs() < 2e-4, "{r:?}");
        assert!((r.rho - 0.38455).abs() < 2e-4, "{r:?}");
        assert!((r.growth - 1.00003).abs() < 5e-5, "{r:?}");
        assert!(r.gamma.is_none() && r.delta.is_none());
    }

    #[test]
    fn zero_signal_and_centered_cases() {
        let r = rates_basic(0.3, 1.1, 0.0).unwrap();
        assert_eq!(r.rho, r.tau);
        let r = rates_basic(0.5, 0.0, 0.0).unwrap();
        assert_eq!(r.tau, 0.25);
        assert_eq!(r.rho, 0.25);
    }

    #[test]
    fn basic_rejects_out_of_range() {
        assert!(rates_basic(0.0, 1.0, 1.0).is_err());
        assert!(rates_basic(1.0, 1.0, 1.0).is_err());
        assert!(rates_basic(0.5, -1.0, 1.0).is_err());
        assert!(rates_basic(0.5, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn published_variant_point() {
        let r = rates_variant(0.8, 2.3, 1.2, 1.261).unwrap();
        assert!((r.tau - 0.0021448).abs() < 2e-6, "{r:?}");
        assert!((r.rho - 0.046348).abs() < 5e-5, "{r:?}");
        assert!((r.growth - 1.0008).abs() < 1e-4, "{r:?}");
        // αΦ̄(1.2) and αΦ̄(1.2 - 1.261√0.8), evaluated with mpmath erfc
        assert!((r.gamma.unwrap() - 0.092_055_736_177_366_6).abs() < 1e-12);
        assert!((r.delta.unwrap() - 0.377_000_236_349_860_5).abs() < 1e-12);
    }

    #[test]
    fn variant_reduces_to_basic_for_very_negative_eta() {
        let v = rates_variant(0.4, 1.0, -20.0, 2.0).unwrap();
        let b = rates_basic(0.4, 1.0, 2.0).unwrap();
        assert!((v.gamma.unwrap() - 0.4).abs() < 1e-12);
        assert!((v.delta.unwrap() - 0.4).abs() < 1e-12);
        assert!((v.rho - b.rho).abs() < 1e-12);
    }

    #[test]
    fn variant_degenerate_gamma() {
        assert!(matches!(
            rates_variant(0.5, 1.0, 60.0, 2.0),
            Err(Error::DegenerateRates(_))
        ));
    }

    #[test]
    fn dense_reductions() {
        let half = DenseParams::new(0.5, 1.0).unwrap();
        let d = rates_dense(0.3728, 0.72, 1.65, half).unwrap();
        let b = rates_basic(0.3728, 0.72, 1.65).unwrap();
        assert!((d.rho - b.rho).abs() <= 1e-12 && (d.tau - b.tau).abs() <= 1e-12);

        let dp = DenseParams::new(0.3, 0.8).unwrap();
        let d = rates_dense(0.3728, 0.72, 3.0, dp).unwrap();
        let eff = rates_basic(0.3728, 0.72, 3.0 * dp.signal()).unwrap();
        assert_eq!(d, eff);
        // direct evaluation: (1-α)Φ̄(0.72 - 3√0.3728·0.5/√0.21), mpmath
        assert!((d.rho - 0.564_151_285_578_601_0).abs() < 1e-12, "{}", d.rho);
    }

    #[test]
    fn dense_rejects_degenerate_p() {
        assert!(DenseParams::new(0.0, 0.5).is_err());
        assert!(DenseParams::new(0.5, 0.5).is_err());
        assert!(rates_dense(0.5, 1.0, 1.0, DenseParams { p: 1.0, q: 1.0 }).is_err());
    }
}
