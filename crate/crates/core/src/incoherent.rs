//! Phase-incoherent classical radar: Monte-Carlo Fisher information of the
//! heterodyne receiver and the rectangular-pulse error probabilities.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{non_negative, positive, Error, Result};
use crate::specfun::{bessel_ratio_unchecked, q_tail, Probability};
use crate::sum::compensated_sum;
use crate::waveform::PulseShape;

/// Sampling grid in units of the pulse's rms duration `T`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    /// Step as a fraction of `T`.
    pub step_fraction: f64,
    /// Half-width in multiples of `T` around the true delay.
    pub span: f64,
}

impl Default for TimeGrid {
    fn default() -> Self {
        TimeGrid {
            step_fraction: 1.0 / 50.0,
            span: 12.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeterodyneModel {
    pub kappa: f64,
    pub energy: f64,
    pub n_b: f64,
    pub pulse: PulseShape,
    pub grid: TimeGrid,
}

/// One draw of the sampled receiver output around the true delay.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub times: Vec<f64>,
    pub received: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeMode {
    Analytic,
    CentralDifference { h: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCConfig {
    pub samples: usize,
    pub seed: u64,
    pub derivative: DerivativeMode,
}

impl MCConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        MCConfig {
            samples,
            seed,
            derivative: DerivativeMode::Analytic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: usize,
    /// Set when the relative standard error exceeds 0.5.
    pub poorly_converged: bool,
}

impl HeterodyneModel {
    pub fn new(kappa: f64, energy: f64, n_b: f64, pulse: PulseShape) -> Result<Self> {
        HeterodyneModel::with_grid(kappa, energy, n_b, pulse, TimeGrid::default())
    }

    pub fn with_grid(
        kappa: f64,
        energy: f64,
        n_b: f64,
        pulse: PulseShape,
        grid: TimeGrid,
    ) -> Result<Self> {
        let kappa = non_negative("kappa", kappa)?;
        if kappa > 1.0 {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: kappa,
                detail: "transmissivity must lie in [0, 1]",
            });
        }
        let step = positive("grid step", grid.step_fraction)?;
        if step > 1.0 / 20.0 {
            return Err(Error::InvalidParameter {
                name: "grid step",
                value: step,
                detail: "step must not exceed T/20",
            });
        }
        if !(grid.span >= 10.0) {
            return Err(Error::InvalidParameter {
                name: "grid span",
                value: grid.span,
                detail: "grid must cover at least ±10 rms durations",
            });
        }
        Ok(HeterodyneModel {
            kappa,
            energy: non_negative("energy", energy)?,
            n_b: non_negative("n_b", n_b)?,
            pulse,
            grid,
        })
    }

    /// Rms duration `T` of the transform-limited Gaussian.
    pub fn duration(&self) -> Result<f64> {
        match self.pulse {
            PulseShape::TransformLimitedGaussian { duration } => Ok(duration),
            _ => Err(Error::Unsupported(
                "Monte-Carlo heterodyne model requires a transform-limited Gaussian pulse".into(),
            )),
        }
    }

    /// `2κ𝓔Δω²/(N_B + 1)`, the phase-coherent heterodyne Fisher information.
    pub fn coherent_fisher(&self) -> Result<f64> {
        let bw = 0.5 / self.duration()?;
        Ok(2.0 * self.kappa * self.energy * bw * bw / (self.n_b + 1.0))
    }

    /// `κ𝓔/(N_B + 1)`.
    pub fn snr(&self) -> f64 {
        self.kappa * self.energy / (self.n_b + 1.0)
    }

    fn times(&self, true_tau: f64) -> Result<(Vec<f64>, f64)> {
        let t = self.duration()?;
        let dt = self.grid.step_fraction * t;
        let k = (self.grid.span / self.grid.step_fraction).ceil() as i64;
        Ok(((-k..=k).map(|m| true_tau + m as f64 * dt).collect(), dt))
    }

    /// Builds `r̃_m = √(κ𝓔) s̃_m(τ) + w̃_m` from a given noise vector.
    pub fn realize(&self, true_tau: f64, noise: &[Complex64]) -> Result<Realization> {
        let (times, dt) = self.times(true_tau)?;
        if noise.len() != times.len() {
            return Err(Error::InvalidParameter {
                name: "noise length",
                value: noise.len() as f64,
                detail: "noise realization must match the sampling grid",
            });
        }
        let amp = (self.kappa * self.energy).sqrt();
        let received = times
            .iter()
            .zip(noise)
            .map(|(&t, w)| Ok(amp * dt.sqrt() * self.pulse.pulse_value(t - true_tau)? + w))
            .collect::<Result<_>>()?;
        Ok(Realization { times, received })
    }

    /// Complex noise with variance `N_B + 1` per sample.
    pub fn draw_noise<R: rand::Rng + ?Sized>(
        &self,
        true_tau: f64,
        rng: &mut R,
    ) -> Result<Vec<Complex64>> {
        let n = self.times(true_tau)?.0.len();
        let sd = (0.5 * (self.n_b + 1.0)).sqrt();
        Ok((0..n)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                Complex64::new(sd * re, sd * im)
            })
            .collect())
    }
}

struct Templates {
    at: Vec<f64>,
    slope: Vec<f64>,
    plus: Vec<f64>,
    minus: Vec<f64>,
}

fn templates(
    m: &HeterodyneModel,
    times: &[f64],
    tau: f64,
    mode: DerivativeMode,
) -> Result<Templates> {
    let t = m.duration()?;
    let dt = times.get(1).map_or(1.0, |x| x - times[0]);
    let root = dt.sqrt();
    let s = |x: f64| {
        root * (-x * x / (4.0 * t * t)).exp() / (2.0 * std::f64::consts::PI * t * t).powf(0.25)
    };
    let at: Vec<f64> = times.iter().map(|&tm| s(tm - tau)).collect();
    let slope = times
        .iter()
        .zip(&at)
        .map(|(&tm, &v)| (tm - tau) / (2.0 * t * t) * v)
        .collect();
    let (plus, minus) = match mode {
        DerivativeMode::Analytic => (Vec::new(), Vec::new()),
        DerivativeMode::CentralDifference { h } => {
            let h = positive("h", h)?;
            (
                times.iter().map(|&tm| s(tm - tau - h)).collect(),
                times.iter().map(|&tm| s(tm - tau + h)).collect(),
            )
        }
    };
    Ok(Templates {
        at,
        slope,
        plus,
        minus,
    })
}

fn correlate(r: &[Complex64], s: &[f64]) -> Complex64 {
    let re = compensated_sum(r.iter().zip(s).map(|(a, b)| a.re * b));
    let im = compensated_sum(r.iter().zip(s).map(|(a, b)| a.im * b));
    Complex64::new(re, im)
}

fn derivative_with(r: &[Complex64], tpl: &Templates, mode: DerivativeMode) -> Result<(f64, f64)> {
    let z = correlate(r, &tpl.at);
    let mag = z.norm();
    if mag == 0.0 {
        return Err(Error::DerivativeUndefined);
    }
    let d = match mode {
        DerivativeMode::Analytic => (z.conj() * correlate(r, &tpl.slope)).re / mag,
        DerivativeMode::CentralDifference { h } => {
            (correlate(r, &tpl.plus).norm() - correlate(r, &tpl.minus).norm()) / (2.0 * h)
        }
    };
    Ok((mag, d))
}

/// `∂|z(τ)|/∂τ` with `z(τ) = Σ r̃_m s̃_m(τ)`.
pub fn matched_filter_derivative(
    m: &HeterodyneModel,
    r: &Realization,
    tau: f64,
    mode: DerivativeMode,
) -> Result<f64> {
    let tpl = templates(m, &r.times, tau, mode)?;
    Ok(derivative_with(&r.received, &tpl, mode)?.1)
}

/// Monte-Carlo estimate of the phase-incoherent Fisher information in s⁻².
///
/// Sample `i` draws its noise from a ChaCha8 stream keyed by `(seed, i)`, so
/// the estimate does not depend on how samples are split across threads.
pub fn fisher_incoherent_mc(
    m: &HeterodyneModel,
    cfg: &MCConfig,
    true_tau: f64,
) -> Result<MCEstimate> {
    if cfg.samples == 0 {
        return Err(Error::InvalidParameter {
            name: "samples",
            value: 0.0,
            detail: "at least one sample required",
        });
    }
    let (times, _) = m.times(true_tau)?;
    let tpl = templates(m, &times, true_tau, cfg.derivative)?;
    let amp = (m.kappa * m.energy).sqrt();
    let gain = 2.0 * amp / (m.n_b + 1.0);
    let clean: Vec<f64> = tpl.at.iter().map(|v| amp * v).collect();

    let sample = |i: usize| -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(i as u64);
        let noise = m.draw_noise(true_tau, &mut rng)?;
        let r: Vec<Complex64> = noise.iter().zip(&clean).map(|(w, c)| w + c).collect();
        let (mag, d) = derivative_with(&r, &tpl, cfg.derivative)?;
        let v = bessel_ratio_unchecked(gain * mag) * gain * d;
        Ok(v * v)
    };

    #[cfg(feature = "parallel")]
    let values: Vec<f64> = {
        use rayon::prelude::*;
        (0..cfg.samples)
            .into_par_iter()
            .map(sample)
            .collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let values: Vec<f64> = (0..cfg.samples).map(sample).collect::<Result<_>>()?;

    let n = values.len() as f64;
    let mean = compensated_sum(values.iter().copied()) / n;
    let var = if values.len() > 1 {
        compensated_sum(values.iter().map(|v| (v - mean).powi(2))) / (n - 1.0)
    } else {
        0.0
    };
    let std_error = (var / n).sqrt();
    Ok(MCEstimate {
        estimate: mean,
        std_error,
        samples: cfg.samples,
        poorly_converged: std_error > 0.5 * mean.abs(),
    })
}

fn rect_exponent_arg(t_s: f64, kappa_energy: f64, n_b: f64, tau: f64) -> Result<f64> {
    let t_s = positive("t_s", t_s)?;
    let ke = non_negative("kappa_energy", kappa_energy)?;
    let n_b = non_negative("n_b", n_b)?;
    let tau = non_negative("tau", tau)?;
    Ok(ke * tau.min(t_s) / (t_s * (n_b + 1.0)))
}

/// Error probability of the phase-incoherent likelihood-ratio test between
/// two rectangular-pulse delays.
pub fn pe_incoherent_rect(t_s: f64, kappa_energy: f64, n_b: f64, tau: f64) -> Result<Probability> {
    let x = rect_exponent_arg(t_s, kappa_energy, n_b, tau)?;
    Ok(Probability::saturating(0.5 * (-0.5 * x).exp()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RectForm {
    Exact,
    Chernoff,
}

/// Phase-coherent counterpart of [`pe_incoherent_rect`].
pub fn pe_coherent_rect(
    t_s: f64,
    kappa_energy: f64,
    n_b: f64,
    tau: f64,
    form: RectForm,
) -> Result<Probability> {
    let x = rect_exponent_arg(t_s, kappa_energy, n_b, tau)?;
    Ok(Probability::saturating(match form {
        RectForm::Exact => q_tail(x.sqrt()),
        RectForm::Chernoff => 0.5 * (-0.5 * x).exp(),
    }))
}
