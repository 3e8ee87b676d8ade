//! Accuracy limits for the quantum-illumination radar: per-mode and delay
//! quantum Fisher information, the QCB error probability, the quantum ZZB,
//! its threshold SNR, and the advantage over the classical radar.

use serde::{Deserialize, Serialize};

use crate::classical::{
    threshold_root, zzb_classical_gaussian, zzb_with, DelayPrior, PeForm, RadarScenario, ZzbOptions,
};
use crate::curve::db10;
use crate::error::{non_negative, positive, Error, Result};
use crate::specfun::Probability;
use crate::sum::compensated_sum;
use crate::waveform::{gaussian_mismatch, BrightnessProfile, FluorescenceSpectrum};

/// One signal/idler mode pair of the two-mode squeezed vacuum after the
/// target return.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModePairState {
    pub brightness: f64,
    pub kappa: f64,
    pub n_b: f64,
    pub phase: f64,
}

impl ModePairState {
    pub fn new(brightness: f64, kappa: f64, n_b: f64) -> Result<Self> {
        let kappa = positive("kappa", kappa)?;
        if kappa > 1.0 {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: kappa,
                detail: "transmissivity must lie in (0, 1]",
            });
        }
        Ok(ModePairState {
            brightness: non_negative("brightness", brightness)?,
            kappa,
            n_b: non_negative("n_b", n_b)?,
            phase: 0.0,
        })
    }

    pub fn with_phase(self, phase: f64) -> Self {
        ModePairState { phase, ..self }
    }

    /// Signal/idler cross-correlation `√(S(S+1))` of the source.
    pub fn cross_correlation(&self) -> f64 {
        (self.brightness * (self.brightness + 1.0)).sqrt()
    }
}

/// Phase Fisher information of a single returned mode pair,
/// `4κS(S+1)/(1 + N_B(2S+1) + (1-κ)S)`.
pub fn qfi_phase_tmsv(m: &ModePairState) -> f64 {
    tmsv(m.brightness, m.kappa, m.n_b)
}

#[inline]
fn tmsv(s: f64, kappa: f64, n_b: f64) -> f64 {
    4.0 * kappa * s * (s + 1.0) / (1.0 + n_b * (2.0 * s + 1.0) + (1.0 - kappa) * s)
}

/// Phase Fisher information of a coherent-state mode carrying `mode_energy`
/// photons: `2κE/(N_B + 1/2)`.
pub fn qfi_phase_coherent(mode_energy: f64, n_b: f64, kappa: f64) -> f64 {
    2.0 * kappa * mode_energy / (n_b + 0.5)
}

/// Upper bound on the per-mode phase QFI over all probe states with mean
/// brightness `n_s`.
pub fn qfi_upper_bound(n_s: f64, kappa: f64, n_b: f64) -> Result<f64> {
    let n_s = non_negative("n_s", n_s)?;
    let n_b = non_negative("n_b", n_b)?;
    let kappa = non_negative("kappa", kappa)?;
    if kappa >= 1.0 {
        return Err(Error::SingularBound);
    }
    let kn = kappa * n_s;
    let num = 4.0 * kn * (kn + (1.0 - kappa) * n_b + 1.0);
    let den =
        (1.0 - kappa) * (kn * (2.0 * n_b + 1.0) - kappa * n_b * (n_b + 1.0) + (n_b + 1.0).powi(2));
    Ok(num / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QfiMode {
    /// Low-brightness, weak-return, bright-background limit `4κS/N_B`.
    Asymptotic,
    /// Full per-mode expression, valid at any brightness.
    Full,
}

/// Delay QFI `T ∫ dω/2π ω² 𝓕_φ(S⁽ⁿ⁾(ω))` in s⁻².
pub fn qfi_delay_quantum(
    f: &FluorescenceSpectrum,
    kappa: f64,
    n_b: f64,
    mode: QfiMode,
) -> Result<f64> {
    let state = ModePairState::new(0.0, kappa, n_b)?;
    match mode {
        QfiMode::Asymptotic => {
            let n_b = positive("n_b", n_b)?;
            match &f.profile {
                BrightnessProfile::Gaussian { bandwidth, .. } => {
                    Ok(4.0 * bandwidth * bandwidth * kappa * f.energy() / n_b)
                }
                BrightnessProfile::Tabulated(_) => {
                    let w2 = f.integrate_spectrum(|w, s| w * w * s)?;
                    Ok(4.0 * kappa * f.pulse_duration * w2 / n_b)
                }
            }
        }
        QfiMode::Full => {
            let w2 = f.integrate_spectrum(|w, s| {
                if s > 0.0 {
                    w * w * tmsv(s, state.kappa, state.n_b)
                } else {
                    0.0
                }
            })?;
            Ok(f.pulse_duration * w2)
        }
    }
}

/// `δτ_CRB^Q = 1/(2Δω√SNR)`.
pub fn crb_quantum(s: &RadarScenario) -> f64 {
    1.0 / (2.0 * s.bandwidth() * s.snr().sqrt())
}

/// Quantum CRB from the full (any-brightness) delay QFI.
pub fn crb_quantum_full(f: &FluorescenceSpectrum, kappa: f64, n_b: f64) -> Result<f64> {
    Ok(1.0 / qfi_delay_quantum(f, kappa, n_b, QfiMode::Full)?.sqrt())
}

/// Quantum Chernoff exponent `SNR γ_Q(τ')`.
#[inline]
pub fn qcb_exponent(snr: f64, gamma: f64) -> f64 {
    snr * gamma
}

/// `e^{-SNR γ_Q(τ')}/2`.
pub fn pe_qcb_quantum(
    s: &RadarScenario,
    f: &FluorescenceSpectrum,
    tau: f64,
) -> Result<Probability> {
    let gamma = f.quantum_spectral_mismatch(tau)?;
    Ok(Probability::saturating(
        0.5 * (-qcb_exponent(s.snr(), gamma)).exp(),
    ))
}

/// Quantum ZZB with the QCB standing in for the Helstrom error probability.
pub fn zzb_qcb_quantum(
    prior: &DelayPrior,
    s: &RadarScenario,
    f: &FluorescenceSpectrum,
) -> Result<f64> {
    f.quantum_spectral_mismatch(0.0)?;
    let snr = s.snr();
    let opts = ZzbOptions::with_resolution(1.0 / f.rms_bandwidth());
    zzb_with(
        prior,
        |t| {
            let g = f.quantum_spectral_mismatch(t).unwrap_or(f64::NAN);
            0.5 * (-qcb_exponent(snr, g)).exp()
        },
        opts,
    )
}

pub fn zzb_qcb_quantum_gaussian(prior: &DelayPrior, snr: f64, bandwidth: f64) -> Result<f64> {
    zzb_with(
        prior,
        |t| 0.5 * (-qcb_exponent(snr, gaussian_mismatch(bandwidth, t))).exp(),
        ZzbOptions::with_resolution(1.0 / bandwidth),
    )
}

/// `σ_τ e^{-SNR}`.
pub fn zzb_quantum_low_snr_asymptote(prior: &DelayPrior, snr: f64) -> f64 {
    prior.sigma() * (-snr).exp()
}

/// `SNR_thresh^Q = f(1/(2Δω²σ_τ²))/2`.
pub fn threshold_snr_quantum(prior: &DelayPrior, bandwidth: f64) -> Result<f64> {
    Ok(0.5 * threshold_root(prior, bandwidth)?)
}

/// Factor applied to the quantum Chernoff exponent once the source leaves
/// the low-brightness regime.
///
/// The full-to-asymptotic delay QFI ratio runs from `N_B/(N_B + 1)` at
/// vanishing brightness down to 1/2 at high brightness. With `ρ ∈ [0, 1]`
/// its position within that range, the factor is `((1 + ρ)/2)²`: 1 for a
/// dim source and 1/4 for a bright one, where the quantum exponent falls
/// back to the classical Chernoff exponent.
pub fn qcb_exponent_scale(f: &FluorescenceSpectrum, kappa: f64, n_b: f64) -> Result<f64> {
    let full = qfi_delay_quantum(f, kappa, n_b, QfiMode::Full)?;
    let asym = qfi_delay_quantum(f, kappa, n_b, QfiMode::Asymptotic)?;
    let dim = n_b / (n_b + 1.0);
    let rho = ((full / asym - 0.5) / (dim - 0.5)).clamp(0.0, 1.0);
    Ok((0.5 * (1.0 + rho)).powi(2))
}

/// SNR at which an advantage is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatingPoint {
    QuantumThreshold,
    Snr(f64),
}

/// Quantum-over-classical accuracy advantage for one `(Δτ, Δω)` pair. All
/// dB figures are for mean-squared error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdvantageReport {
    pub snr_thresh_quantum: f64,
    pub snr_thresh_classical: f64,
    pub evaluated_at_snr: f64,
    pub zzb_classical_exact_s: f64,
    pub zzb_classical_qcb_s: f64,
    pub zzb_quantum_qcb_s: f64,
    pub advantage_qcb_vs_qcb_db: f64,
    pub advantage_exact_vs_qcb_db: f64,
    pub asymptotic_advantage_db: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_fit: Option<AlphaFit>,
}

pub fn advantage_report(
    prior: &DelayPrior,
    bandwidth: f64,
    at: OperatingPoint,
) -> Result<AdvantageReport> {
    let root = threshold_root(prior, bandwidth)?;
    let snr = match at {
        OperatingPoint::QuantumThreshold => 0.5 * root,
        OperatingPoint::Snr(v) => non_negative("snr", v)?,
    };
    let exact = zzb_classical_gaussian(prior, snr, bandwidth, PeForm::Exact)?;
    let cqcb = zzb_classical_gaussian(prior, snr, bandwidth, PeForm::Chernoff)?;
    let qqcb = zzb_qcb_quantum_gaussian(prior, snr, bandwidth)?;
    Ok(AdvantageReport {
        snr_thresh_quantum: 0.5 * root,
        snr_thresh_classical: 2.0 * root,
        evaluated_at_snr: snr,
        zzb_classical_exact_s: exact,
        zzb_classical_qcb_s: cqcb,
        zzb_quantum_qcb_s: qqcb,
        advantage_qcb_vs_qcb_db: 2.0 * db10(cqcb / qqcb),
        advantage_exact_vs_qcb_db: 2.0 * db10(exact / qqcb),
        asymptotic_advantage_db: db10(std::f64::consts::E) * 0.75 * root,
        alpha_fit: None,
    })
}

/// Classical Pe used in the numeric side of an α fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitReference {
    ExactVsQcb,
    QcbVsQcb,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaFitPoint {
    pub delta_tau_s: f64,
    /// `2Δω²σ_τ²`.
    pub scale: f64,
    pub numeric_db: f64,
    pub asymptotic_db: f64,
}

/// Least-squares (in dB) fits of the numeric advantage at the quantum
/// threshold to two closed forms: `α e^{3f/4}` and `α (2Δω²σ_τ²)^{3/4}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaFit {
    pub reference: FitReference,
    pub alpha_exponential: f64,
    pub alpha_power_law: f64,
    /// Largest deviation of the numeric advantage from the fitted `α e^{3f/4}`.
    pub max_residual_db: f64,
    pub points: Vec<AlphaFitPoint>,
}

pub fn fit_alpha(
    delay_widths: &[f64],
    bandwidth: f64,
    reference: FitReference,
) -> Result<AlphaFit> {
    if delay_widths.is_empty() {
        return Err(Error::InvalidParameter {
            name: "delay grid",
            value: 0.0,
            detail: "at least one delay width required",
        });
    }
    let eval = |&width: &f64| -> Result<AlphaFitPoint> {
        let prior = DelayPrior::new(width)?;
        let r = advantage_report(&prior, bandwidth, OperatingPoint::QuantumThreshold)?;
        let sigma = prior.sigma();
        Ok(AlphaFitPoint {
            delta_tau_s: width,
            scale: 2.0 * bandwidth * bandwidth * sigma * sigma,
            numeric_db: match reference {
                FitReference::ExactVsQcb => r.advantage_exact_vs_qcb_db,
                FitReference::QcbVsQcb => r.advantage_qcb_vs_qcb_db,
            },
            asymptotic_db: r.asymptotic_advantage_db,
        })
    };
    #[cfg(feature = "parallel")]
    let points: Vec<AlphaFitPoint> = {
        use rayon::prelude::*;
        delay_widths.par_iter().map(eval).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let points: Vec<AlphaFitPoint> = delay_widths.iter().map(eval).collect::<Result<_>>()?;

    let n = points.len() as f64;
    let exp_offset = compensated_sum(points.iter().map(|p| p.numeric_db - p.asymptotic_db)) / n;
    let pow_offset =
        compensated_sum(points.iter().map(|p| p.numeric_db - 0.75 * db10(p.scale))) / n;
    let max_residual_db = points
        .iter()
        .map(|p| (p.numeric_db - p.asymptotic_db - exp_offset).abs())
        .fold(0.0, f64::max);
    Ok(AlphaFit {
        reference,
        alpha_exponential: 10f64.powf(exp_offset / 10.0),
        alpha_power_law: 10f64.powf(pow_offset / 10.0),
        max_residual_db,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{chernoff_exponent, crb_classical, fisher_delay_classical};
    use crate::specfun::inv_x_exp_neg_x;
    use crate::waveform::SpectralTable;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{PI, SQRT_2};

    const BW: f64 = 2.0 * PI * 1e6;

    fn fig1_prior() -> DelayPrior {
        DelayPrior::from_range_uncertainty(5e3).unwrap()
    }

    #[test]
    fn tmsv_values() {
        let zero = ModePairState::new(0.0, 1e-6, 1e3).unwrap();
        assert_eq!(qfi_phase_tmsv(&zero), 0.0);
        let m = ModePairState::new(1e-3, 1e-6, 1e3).unwrap();
        let v = qfi_phase_tmsv(&m);
        let direct = 4.0 * 1e-6 * 1e-3 * (1.0 + 1e-3) / (1.0 + 1e3 * 1.002 + (1.0 - 1e-6) * 1e-3);
        assert_relative_eq!(v, direct, max_relative = 1e-15);
        assert!((v - 3.992e-12).abs() < 1e-15);
        // Dropping the (S+1) factor gives 4κS/1003.002.
        assert!((4.0f64 * 1e-6 * 1e-3 / 1003.002 - 3.988e-12).abs() < 1e-15);
        let asym = 4.0 * 1e-6 * 1e-3 / 1e3;
        assert!((v / asym - 0.998).abs() < 5e-4);
        assert!(ModePairState::new(1e-3, 1.5, 1.0).is_err());
        assert_relative_eq!(m.cross_correlation(), (1e-3f64 * 1.001).sqrt());
    }

    #[test]
    fn coherent_mode_values() {
        assert_relative_eq!(qfi_phase_coherent(1.0, 0.0, 0.3), 4.0 * 0.3);
        assert_relative_eq!(
            qfi_phase_coherent(1.0, 99.5, 0.01),
            2e-4,
            max_relative = 1e-14
        );
    }

    #[test]
    fn coherent_modes_sum_to_delay_information() {
        // Σ_n (2πn/T)² 𝓕_coh over a Gaussian |S(ω)|², in the continuum limit.
        let (kappa, energy, n_b) = (1e-3, 1e6, 50.0);
        let f = FluorescenceSpectrum::gaussian(1.0, BW, 1e-3).unwrap();
        let t = f.pulse_duration;
        let w2 = f
            .integrate_spectrum(|w, s| {
                let mode_energy = energy * s / f.energy();
                w * w * qfi_phase_coherent(mode_energy, n_b, kappa)
            })
            .unwrap()
            * t;
        let closed = crate::classical::fisher_delay_coherent_state(BW, kappa, energy, n_b);
        assert!((w2 / closed - 1.0).abs() < 1e-3);
    }

    #[test]
    fn upper_bound_values() {
        let ub = qfi_upper_bound(1e-3, 1e-6, 1e3).unwrap();
        assert!((ub - 3.996e-12).abs() < 2e-15, "{ub}");
        let m = ModePairState::new(1e-3, 1e-6, 1e3).unwrap();
        let ratio = qfi_phase_tmsv(&m) / ub;
        assert!((ratio - 0.998).abs() <= 0.003, "{ratio}");
        assert_eq!(qfi_upper_bound(1e-3, 0.0, 1e3).unwrap(), 0.0);
        assert_eq!(qfi_upper_bound(1e-3, 1.0, 1e3), Err(Error::SingularBound));
    }

    #[test]
    fn upper_bound_dominates_tmsv() {
        let mut x = 0.5f64;
        let mut next = || {
            x = (x * 9301.0 + 0.2113).fract();
            x
        };
        for _ in 0..1000 {
            let s = 1e-4 * 1e6f64.powf(next());
            let kappa = 0.5 * 1e-6f64.powf(next());
            let n_b = 1e-2 * 1e5f64.powf(next());
            let m = ModePairState::new(s, kappa, n_b).unwrap();
            let ub = qfi_upper_bound(s, kappa, n_b).unwrap();
            assert!(
                qfi_phase_tmsv(&m) <= ub * (1.0 + 1e-12),
                "S={s} κ={kappa} N_B={n_b}"
            );
        }
    }

    #[test]
    fn delay_qfi_asymptotic() {
        // SNR = 1: κ𝓔 = N_B.
        let n_b = 1e3;
        let kappa = 1e-6;
        let t = 1e-3;
        let n_s = n_b / (kappa * BW * t);
        let f = FluorescenceSpectrum::gaussian(n_s, BW, t).unwrap();
        let v = qfi_delay_quantum(&f, kappa, n_b, QfiMode::Asymptotic).unwrap();
        assert_relative_eq!(v, 4.0 * BW * BW, max_relative = 1e-12);
        assert!((v - 1.5791e14).abs() < 1e10);
        let s = RadarScenario::from_budget(kappa, f.energy(), n_b, BW).unwrap();
        assert_relative_eq!(v, 2.0 * fisher_delay_classical(&s), max_relative = 1e-12);
        assert_relative_eq!(1.0 / v.sqrt(), crb_quantum(&s), max_relative = 1e-12);
    }

    #[test]
    fn delay_qfi_tabulated_matches_gaussian() {
        let (n_s, t, kappa, n_b) = (1e-3, 1e-3, 1e-6, 1e3);
        let g = FluorescenceSpectrum::gaussian(n_s, BW, t).unwrap();
        let table =
            SpectralTable::from_fn(-9.0 * BW, 9.0 * BW, 3001, |w| g.brightness_at(w)).unwrap();
        let tab = FluorescenceSpectrum::tabulated(table, t).unwrap();
        for mode in [QfiMode::Asymptotic, QfiMode::Full] {
            let a = qfi_delay_quantum(&g, kappa, n_b, mode).unwrap();
            let b = qfi_delay_quantum(&tab, kappa, n_b, mode).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-6);
        }
    }

    #[test]
    fn full_qfi_limits() {
        let (kappa, n_b, t) = (1e-6, 1e3, 1e-3);
        let dim = FluorescenceSpectrum::gaussian(1e-3, BW, t).unwrap();
        let full = qfi_delay_quantum(&dim, kappa, n_b, QfiMode::Full).unwrap();
        let asym = qfi_delay_quantum(&dim, kappa, n_b, QfiMode::Asymptotic).unwrap();
        assert!((full / asym - 1.0).abs() < 0.01);

        let bright = FluorescenceSpectrum::gaussian(100.0, BW, t).unwrap();
        let full = qfi_delay_quantum(&bright, kappa, n_b, QfiMode::Full).unwrap();
        let s = RadarScenario::from_snr(kappa * bright.energy() / n_b, BW).unwrap();
        let classical = fisher_delay_classical(&s);
        assert!(
            (full / classical - 1.0).abs() < 0.05,
            "{}",
            full / classical
        );
        let crb_full = crb_quantum_full(&bright, kappa, n_b).unwrap();
        assert!((crb_full / crb_classical(&s) - 1.0).abs() < 0.05);
    }

    #[test]
    fn exponent_scale_limits() {
        let (kappa, n_b, t) = (1e-6, 1e3, 1e-3);
        let dim = FluorescenceSpectrum::gaussian(1e-4, BW, t).unwrap();
        assert!(qcb_exponent_scale(&dim, kappa, n_b).unwrap() > 0.999);
        let bright = FluorescenceSpectrum::gaussian(100.0, BW, t).unwrap();
        let g = qcb_exponent_scale(&bright, kappa, n_b).unwrap();
        assert!((g - 0.25).abs() < 0.03, "{g}");
    }

    #[test]
    fn crb_ratio() {
        for db in [-20.0, 0.0, 13.0, 40.0] {
            let s = RadarScenario::from_snr(10f64.powf(db / 10.0), BW).unwrap();
            assert_relative_eq!(
                crb_quantum(&s) / crb_classical(&s),
                1.0 / SQRT_2,
                max_relative = 1e-12
            );
        }
        let s = RadarScenario::from_snr(1.0, BW).unwrap();
        assert!((crb_quantum(&s) - 7.9577e-8).abs() < 1e-11);
    }

    #[test]
    fn qcb_values() {
        let f = FluorescenceSpectrum::gaussian(1e-3, BW, 1e-3).unwrap();
        let s = RadarScenario::from_snr(1.0, BW).unwrap();
        assert_eq!(pe_qcb_quantum(&s, &f, 0.0).unwrap().value(), 0.5);
        let far = pe_qcb_quantum(&s, &f, 30.0 / BW).unwrap().value();
        assert_relative_eq!(far, 0.5 * (-2.0f64).exp(), max_relative = 1e-12);
        assert!((far - 0.067668).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn exponent_ratio_is_four(snr in 1e-4f64..1e4, x in 0.0f64..20.0) {
            let gamma = gaussian_mismatch(BW, x / BW);
            let q = qcb_exponent(snr, gamma);
            let c = chernoff_exponent(snr, gamma);
            if c > 0.0 {
                prop_assert!((q / c - 4.0).abs() <= 1e-14 * 4.0);
            }
        }

        #[test]
        fn threshold_ratio_is_four(delta_r in 1e2f64..1e5, bw_hz in 1e5f64..1e8) {
            let bw = 2.0 * PI * bw_hz;
            let prior = DelayPrior::from_range_uncertainty(delta_r).unwrap();
            if let (Ok(q), Ok(c)) = (
                threshold_snr_quantum(&prior, bw),
                crate::classical::threshold_snr_classical(&prior, bw),
            ) {
                prop_assert!((c / q - 4.0).abs() <= 4e-12);
            }
        }
    }

    #[test]
    fn thresholds() {
        let prior = fig1_prior();
        let q = threshold_snr_quantum(&prior, BW).unwrap();
        assert!((q - 5.662).abs() < 1e-3, "{q}");
        assert!((db10(q) - 7.53).abs() < 0.01);
        let sigma = (std::f64::consts::E / 2.0).sqrt() / BW;
        let branch = DelayPrior::new(sigma * 12f64.sqrt()).unwrap();
        assert_relative_eq!(
            threshold_snr_quantum(&branch, BW).unwrap(),
            0.5,
            max_relative = 1e-6
        );
    }

    #[test]
    fn quantum_zzb_limits() {
        let prior = fig1_prior();
        let f = FluorescenceSpectrum::gaussian(1e-3, BW, 1e-3).unwrap();
        let low = RadarScenario::from_snr(1e-4, BW).unwrap();
        let v = zzb_qcb_quantum(&prior, &low, &f).unwrap() / prior.sigma();
        assert!((0.99..=1.0).contains(&v));
        let snr = threshold_snr_quantum(&prior, BW).unwrap() * 10f64.powf(1.5);
        let s = RadarScenario::from_snr(snr, BW).unwrap();
        let r = zzb_qcb_quantum(&prior, &s, &f).unwrap() / crb_quantum(&s);
        assert!((0.95..=1.05).contains(&r), "{r}");
        assert_relative_eq!(
            zzb_qcb_quantum(&prior, &s, &f).unwrap(),
            zzb_qcb_quantum_gaussian(&prior, snr, BW).unwrap(),
            max_relative = 1e-9
        );
    }

    #[test]
    fn quantum_zzb_below_classical_qcb() {
        let prior = fig1_prior();
        for k in 0..40 {
            let snr = 10f64.powf((-5.0 + 30.0 * k as f64 / 39.0) / 10.0);
            let q = zzb_qcb_quantum_gaussian(&prior, snr, BW).unwrap();
            let c = zzb_classical_gaussian(&prior, snr, BW, PeForm::Chernoff).unwrap();
            assert!(q <= c);
        }
    }

    #[test]
    fn report_fig1() {
        let prior = fig1_prior();
        let r = advantage_report(&prior, BW, OperatingPoint::QuantumThreshold).unwrap();
        assert_relative_eq!(
            r.snr_thresh_classical / r.snr_thresh_quantum,
            4.0,
            max_relative = 1e-12
        );
        let sigma = prior.sigma();
        let f = inv_x_exp_neg_x(1.0 / (2.0 * BW * BW * sigma * sigma)).unwrap();
        assert_relative_eq!(
            r.asymptotic_advantage_db,
            db10((0.75 * f).exp()),
            max_relative = 1e-12
        );
        assert!((r.asymptotic_advantage_db - 36.9).abs() < 0.05);
        assert!(r.advantage_qcb_vs_qcb_db > r.advantage_exact_vs_qcb_db);
        assert!(r.advantage_qcb_vs_qcb_db.is_finite() && r.advantage_exact_vs_qcb_db.is_finite());
        assert!(r.alpha_fit.is_none());
    }

    #[test]
    fn alpha_fit_two_forms() {
        let widths: Vec<f64> = [1e3, 5e3, 2e4]
            .iter()
            .map(|&d| DelayPrior::from_range_uncertainty(d).unwrap().width())
            .collect();
        let fit = fit_alpha(&widths, BW, FitReference::ExactVsQcb).unwrap();
        assert_eq!(fit.points.len(), 3);
        assert!(fit.alpha_exponential > 0.0 && fit.alpha_power_law > fit.alpha_exponential);
        assert!(fit_alpha(&[], BW, FitReference::ExactVsQcb).is_err());
    }
}
