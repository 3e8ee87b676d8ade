//! Accuracy limits for the coherent-state (classical) pulse-compression radar:
//! Cramér–Rao bound, exact and Chernoff error probabilities for the two-delay
//! hypothesis test, the Ziv–Zakai bound, its asymptotes and threshold SNR.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{non_negative, positive, Error, Result};
use crate::quadrature::{integrate, QuadOptions};
use crate::specfun::{inv_x_exp_neg_x, q_tail, Probability};
use crate::waveform::{gaussian_mismatch, PulseShape};

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Transmissivity at or below which the return is treated as weak (`κ ≪ 1`).
pub const WEAK_RETURN_KAPPA: f64 = 1e-2;
/// Background brightness at or above which `N_B ≫ 1` holds.
pub const BRIGHT_BACKGROUND_NB: f64 = 10.0;

/// Physical triplet behind an SNR: `SNR = κ𝓔/N_B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget {
    pub kappa: f64,
    pub energy: f64,
    pub n_b: f64,
}

/// Dimensionless operating point of a radar.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadarScenario {
    snr: f64,
    bandwidth: f64,
    budget: Option<LinkBudget>,
}

impl RadarScenario {
    /// Operating point given by its SNR alone; `N_B ≫ 1` is implied.
    pub fn from_snr(snr: f64, bandwidth: f64) -> Result<Self> {
        Ok(RadarScenario {
            snr: non_negative("snr", snr)?,
            bandwidth: positive("bandwidth", bandwidth)?,
            budget: None,
        })
    }

    /// Operating point from `(κ, 𝓔, N_B)`. `N_B = 0` is accepted (vacuum
    /// background) and yields an infinite SNR.
    pub fn from_budget(kappa: f64, energy: f64, n_b: f64, bandwidth: f64) -> Result<Self> {
        let kappa = positive("kappa", kappa)?;
        if kappa > 1.0 {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: kappa,
                detail: "transmissivity must lie in (0, 1]",
            });
        }
        let energy = positive("energy", energy)?;
        let n_b = non_negative("n_b", n_b)?;
        Ok(RadarScenario {
            snr: kappa * energy / n_b,
            bandwidth: positive("bandwidth", bandwidth)?,
            budget: Some(LinkBudget { kappa, energy, n_b }),
        })
    }

    pub fn snr(&self) -> f64 {
        self.snr
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn budget(&self) -> Option<LinkBudget> {
        self.budget
    }

    pub fn weak_return(&self) -> bool {
        self.budget.is_none_or(|b| b.kappa <= WEAK_RETURN_KAPPA)
    }

    pub fn bright_background(&self) -> bool {
        self.budget.is_none_or(|b| b.n_b >= BRIGHT_BACKGROUND_NB)
    }

    /// Same bandwidth, different SNR; drops any link budget.
    pub fn with_snr(&self, snr: f64) -> Result<Self> {
        RadarScenario::from_snr(snr, self.bandwidth)
    }
}

/// Uniform prior on the delay over an interval of width `Δτ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayPrior {
    width: f64,
    min: f64,
}

impl DelayPrior {
    pub fn new(width: f64) -> Result<Self> {
        Ok(DelayPrior {
            width: positive("delay width", width)?,
            min: 0.0,
        })
    }

    pub fn with_offset(width: f64, min: f64) -> Result<Self> {
        Ok(DelayPrior {
            width: positive("delay width", width)?,
            min: non_negative("delay offset", min)?,
        })
    }

    /// Prior for a range uncertainty `ΔR` in meters: `Δτ = 2ΔR/c`.
    pub fn from_range_uncertainty(delta_r: f64) -> Result<Self> {
        DelayPrior::new(2.0 * positive("range uncertainty", delta_r)? / SPEED_OF_LIGHT)
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    /// `σ_τ = Δτ/√12`.
    pub fn sigma(&self) -> f64 {
        self.width / 12f64.sqrt()
    }
}

/// Error-probability form used inside a Ziv–Zakai evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeForm {
    Exact,
    Chernoff,
}

/// Which asymptote: the one built on the exact `Pe` or on its (quantum)
/// Chernoff bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymptoteForm {
    Exact,
    Qcb,
}

/// `δτ_CRB = 1/(Δω √(2κ𝓔/(N_B + 1/2)))`, or `1/(Δω √(2 SNR))` without a
/// link budget.
pub fn crb_classical(s: &RadarScenario) -> f64 {
    let information = match s.budget {
        Some(b) => 2.0 * b.kappa * b.energy / (b.n_b + 0.5),
        None => 2.0 * s.snr,
    };
    1.0 / (s.bandwidth * information.sqrt())
}

/// Delay Fisher information of the coherent-state radar in the `N_B ≫ 1`
/// form, `2Δω² SNR`.
pub fn fisher_delay_classical(s: &RadarScenario) -> f64 {
    2.0 * s.bandwidth * s.bandwidth * s.snr
}

/// Coherent-state quantum Fisher information `2κ𝓔Δω²/(N_B + 1/2)`.
pub fn fisher_delay_coherent_state(bandwidth: f64, kappa: f64, energy: f64, n_b: f64) -> f64 {
    2.0 * kappa * energy * bandwidth * bandwidth / (n_b + 0.5)
}

/// Heterodyne-reception Fisher information `2κ𝓔Δω²/(N_B + 1)`.
pub fn fisher_delay_heterodyne(bandwidth: f64, kappa: f64, energy: f64, n_b: f64) -> f64 {
    2.0 * kappa * energy * bandwidth * bandwidth / (n_b + 1.0)
}

/// `Q(√(SNR γ/2))` for the exact minimum error probability.
#[inline]
pub fn pe_exact_from_mismatch(snr: f64, gamma: f64) -> f64 {
    q_tail((0.5 * snr * gamma).sqrt())
}

/// Chernoff exponent `SNR γ/4` of the coherent-state radar.
#[inline]
pub fn chernoff_exponent(snr: f64, gamma: f64) -> f64 {
    0.25 * snr * gamma
}

pub fn pe_exact(s: &RadarScenario, p: &PulseShape, tau: f64) -> Result<Probability> {
    let gamma = p.spectral_mismatch(tau)?;
    Ok(Probability::saturating(pe_exact_from_mismatch(
        s.snr, gamma,
    )))
}

pub fn pe_chernoff(s: &RadarScenario, p: &PulseShape, tau: f64) -> Result<Probability> {
    let gamma = p.spectral_mismatch(tau)?;
    Ok(Probability::saturating(
        0.5 * (-chernoff_exponent(s.snr, gamma)).exp(),
    ))
}

/// Controls for the Ziv–Zakai quadrature.
#[derive(Debug, Clone, Copy)]
pub struct ZzbOptions {
    pub rel_tol: f64,
    /// Delay scale of the error-probability features, typically `1/Δω`.
    /// Seeds the log-spaced mesh near zero offset.
    pub resolution: Option<f64>,
    pub max_intervals: usize,
}

impl Default for ZzbOptions {
    fn default() -> Self {
        ZzbOptions {
            rel_tol: 1e-8,
            resolution: None,
            max_intervals: 20_000,
        }
    }
}

impl ZzbOptions {
    pub fn with_resolution(resolution: f64) -> Self {
        ZzbOptions {
            resolution: Some(resolution),
            ..Default::default()
        }
    }
}

/// Ziv–Zakai bound `√(∫₀^{Δτ} dτ' τ'(1 - τ'/Δτ) Pe(τ'))` in seconds.
pub fn zzb<F: Fn(f64) -> f64>(prior: &DelayPrior, pe: F) -> Result<f64> {
    zzb_with(prior, pe, ZzbOptions::default())
}

pub fn zzb_with<F: Fn(f64) -> f64>(prior: &DelayPrior, pe: F, opts: ZzbOptions) -> Result<f64> {
    let width = prior.width;
    let start = opts
        .resolution
        .map_or(width * 1e-9, |r| (r * 1e-3).min(width * 1e-3));
    let decades = (width / start).log10().max(1.0);
    let points = (decades * 12.0).ceil() as usize;
    let mesh: Vec<f64> = (0..points)
        .map(|k| start * 10f64.powf(k as f64 * decades / points as f64))
        .collect();
    let integrand = |t: f64| t * (1.0 - t / width) * pe(t);
    let r = integrate(
        integrand,
        0.0,
        width,
        &mesh,
        QuadOptions {
            rel_tol: opts.rel_tol,
            abs_tol: 0.0,
            max_intervals: opts.max_intervals,
        },
    )?;
    Ok(r.value.max(0.0).sqrt())
}

/// Classical ZZB for pulse `p` with the chosen error-probability form.
pub fn zzb_classical(
    prior: &DelayPrior,
    s: &RadarScenario,
    p: &PulseShape,
    form: PeForm,
) -> Result<f64> {
    let bw = p.rms_bandwidth()?;
    // Surface waveform errors before entering the quadrature.
    p.spectral_mismatch(0.0)?;
    let snr = s.snr;
    let mismatch = |t: f64| p.spectral_mismatch(t).unwrap_or(f64::NAN);
    let opts = ZzbOptions::with_resolution(1.0 / bw);
    match form {
        PeForm::Exact => zzb_with(prior, |t| pe_exact_from_mismatch(snr, mismatch(t)), opts),
        PeForm::Chernoff => zzb_with(
            prior,
            |t| 0.5 * (-chernoff_exponent(snr, mismatch(t))).exp(),
            opts,
        ),
    }
}

/// Classical ZZB for a Gaussian spectrum of rms width `bandwidth`, given the SNR
/// directly.
pub fn zzb_classical_gaussian(
    prior: &DelayPrior,
    snr: f64,
    bandwidth: f64,
    form: PeForm,
) -> Result<f64> {
    let opts = ZzbOptions::with_resolution(1.0 / bandwidth);
    match form {
        PeForm::Exact => zzb_with(
            prior,
            |t| pe_exact_from_mismatch(snr, gaussian_mismatch(bandwidth, t)),
            opts,
        ),
        PeForm::Chernoff => zzb_with(
            prior,
            |t| 0.5 * (-chernoff_exponent(snr, gaussian_mismatch(bandwidth, t))).exp(),
            opts,
        ),
    }
}

/// Low-SNR behaviour: `√(Δτ²/6 · Q(√SNR))` (exact) or `σ_τ e^{-SNR/4}` (QCB).
pub fn zzb_low_snr_asymptote(prior: &DelayPrior, snr: f64, form: AsymptoteForm) -> f64 {
    match form {
        AsymptoteForm::Exact => (prior.width * prior.width / 6.0 * q_tail(snr.sqrt())).sqrt(),
        AsymptoteForm::Qcb => prior.sigma() * (-0.25 * snr).exp(),
    }
}

/// High-SNR behaviour: the CRB (exact) or `√2` times it (QCB).
pub fn zzb_high_snr_asymptote(s: &RadarScenario, form: AsymptoteForm) -> f64 {
    match form {
        AsymptoteForm::Exact => crb_classical(s),
        AsymptoteForm::Qcb => SQRT_2 * crb_classical(s),
    }
}

/// `f(1/(2Δω²σ_τ²))`, shared by both threshold formulas.
pub(crate) fn threshold_root(prior: &DelayPrior, bandwidth: f64) -> Result<f64> {
    let bandwidth = positive("bandwidth", bandwidth)?;
    let sigma = prior.sigma();
    let product = 2.0 * bandwidth * bandwidth * sigma * sigma;
    let branch = (-1.0f64).exp();
    let y = 1.0 / product;
    if !(y <= branch * (1.0 + 1e-12)) {
        return Err(Error::ScenarioTooNarrow { product });
    }
    inv_x_exp_neg_x(y.min(branch))
}

/// `SNR_thresh^C = 2 f(1/(2Δω²σ_τ²))`, where the low- and high-SNR QCB
/// asymptotes of the classical ZZB intersect.
pub fn threshold_snr_classical(prior: &DelayPrior, bandwidth: f64) -> Result<f64> {
    Ok(2.0 * threshold_root(prior, bandwidth)?)
}
