//! Transmitted pulse shapes, the entangled source's fluorescence spectrum, and
//! the spectral quantities derived from them.
//!
//! Spectral densities follow the convention `∫ dω/2π |S(ω)|² = 1` for pulses.
//! The mismatch `γ(τ') = ∫ dω/2π |S(ω)|² |1 - e^{-iωτ'}|²` is what every
//! binary delay-discrimination error probability depends on.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{positive, Error, Result};
use crate::quadrature::{integrate, QuadOptions};

/// Minimum number of grid points where a tabulated density is non-negligible.
pub const MIN_SUPPORT_POINTS: usize = 16;
/// Tolerance on the unit-energy normalization of tabulated pulse spectra.
pub const NORMALIZATION_TOL: f64 = 1e-6;
/// Peak `S(ω)/2π` at or below which the source counts as low-brightness.
pub const LOW_BRIGHTNESS_PEAK: f64 = 0.1;

/// A non-negative density sampled on a uniform angular-frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTable {
    omega: Vec<f64>,
    values: Vec<f64>,
    step: f64,
}

impl SpectralTable {
    pub fn new(omega: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if omega.len() != values.len() {
            return Err(Error::Parse {
                line: 0,
                detail: format!(
                    "{} frequencies but {} density values",
                    omega.len(),
                    values.len()
                ),
            });
        }
        if omega.len() < 2 {
            return Err(Error::Resolution(
                "spectral table needs at least two points".into(),
            ));
        }
        let step = (omega[omega.len() - 1] - omega[0]) / (omega.len() - 1) as f64;
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::Resolution(
                "frequency grid must be strictly increasing".into(),
            ));
        }
        for (i, w) in omega.iter().enumerate() {
            let expected = omega[0] + i as f64 * step;
            if (w - expected).abs() > 1e-6 * step {
                return Err(Error::Resolution(format!(
                    "frequency grid is not uniform at index {i} ({w} vs {expected})"
                )));
            }
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidParameter {
                name: "spectral density",
                value: *bad,
                detail: "densities must be finite and non-negative",
            });
        }
        let peak = values.iter().cloned().fold(0.0, f64::max);
        if peak <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "spectral density",
                value: peak,
                detail: "density is identically zero",
            });
        }
        let support = values.iter().filter(|v| **v >= 1e-6 * peak).count();
        if support < MIN_SUPPORT_POINTS {
            return Err(Error::Resolution(format!(
                "only {support} grid points across the spectral support (need {MIN_SUPPORT_POINTS})"
            )));
        }
        let edge = values[0].max(values[values.len() - 1]);
        if edge > 1e-10 * peak {
            return Err(Error::Resolution(format!(
                "density at the grid edge is {:.3e} of its peak; extend the grid over the full support",
                edge / peak
            )));
        }
        Ok(SpectralTable {
            omega,
            values,
            step,
        })
    }

    /// Samples `density` on `points` uniformly spaced frequencies in `[lo, hi]`.
    pub fn from_fn<F: Fn(f64) -> f64>(lo: f64, hi: f64, points: usize, density: F) -> Result<Self> {
        let n = points.max(2);
        let step = (hi - lo) / (n - 1) as f64;
        let omega: Vec<f64> = (0..n).map(|i| lo + i as f64 * step).collect();
        let values = omega.iter().map(|&w| density(w)).collect();
        SpectralTable::new(omega, values)
    }

    /// Parses whitespace-delimited `omega value` rows; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut omega = Vec::new();
        let mut values = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split_whitespace();
            let mut next = |what: &str| -> Result<f64> {
                let tok = cols.next().ok_or_else(|| Error::Parse {
                    line: idx + 1,
                    detail: format!("missing {what} column"),
                })?;
                tok.parse::<f64>().map_err(|e| Error::Parse {
                    line: idx + 1,
                    detail: format!("bad {what} `{tok}`: {e}"),
                })
            };
            let w = next("frequency")?;
            let v = next("density")?;
            if cols.next().is_some() {
                return Err(Error::Parse {
                    line: idx + 1,
                    detail: "expected exactly two columns".into(),
                });
            }
            omega.push(w);
            values.push(v);
        }
        SpectralTable::new(omega, values)
    }

    pub fn load<P: AsRef<Path>>(path: P) -> Result<Self> {
        SpectralTable::parse(&std::fs::read_to_string(path)?)
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn peak(&self) -> f64 {
        self.values.iter().cloned().fold(0.0, f64::max)
    }

    /// Trapezoid estimate of `∫ dω/2π g(ω, v(ω))`.
    pub fn integrate_with<G: Fn(f64, f64) -> f64>(&self, g: G) -> f64 {
        let n = self.omega.len();
        let acc: crate::sum::Neumaier = self
            .omega
            .iter()
            .zip(&self.values)
            .enumerate()
            .map(|(i, (&w, &v))| {
                let weight = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                weight * g(w, v)
            })
            .collect();
        acc.total() * self.step / (2.0 * PI)
    }

    /// `∫ dω/2π ω^k v(ω)`.
    pub fn moment(&self, k: i32) -> f64 {
        self.integrate_with(|w, v| w.powi(k) * v)
    }

    /// `∫ dω/2π v(ω) cos(ωτ)`.
    ///
    /// Trapezoid while the grid resolves the oscillation; beyond that the
    /// linear interpolant is integrated against the cosine exactly.
    fn cosine_moment(&self, tau: f64) -> f64 {
        let h = self.step;
        if h * tau <= 1.0 {
            return self.integrate_with(|w, v| v * (w * tau).cos());
        }
        let mut acc = crate::sum::Neumaier::default();
        for (ws, vs) in self.omega.windows(2).zip(self.values.windows(2)) {
            let (a, b) = (ws[0], ws[1]);
            let slope = (vs[1] - vs[0]) / h;
            let (sa, sb) = ((a * tau).sin(), (b * tau).sin());
            let (ca, cb) = ((a * tau).cos(), (b * tau).cos());
            acc.add(vs[0] * (sb - sa) / tau + slope * (h * sb / tau + (cb - ca) / (tau * tau)));
        }
        acc.total() / (2.0 * PI)
    }

    /// Energy-normalized mismatch `∫ v |1 - e^{-iωτ}|² / ∫ v`.
    fn normalized_mismatch(&self, tau: f64) -> f64 {
        let m0 = self.moment(0);
        (2.0 * (m0 - self.cosine_moment(tau)) / m0).clamp(0.0, 4.0)
    }

    // Second moment about ω = 0, where the carrier sits.
    fn rms_width(&self) -> f64 {
        (self.moment(2) / self.moment(0)).sqrt()
    }
}

/// Closed-form Gaussian mismatch `2(1 - e^{-Δω²τ²/2})`.
#[inline]
pub fn gaussian_mismatch(rms_bandwidth: f64, tau: f64) -> f64 {
    let x = rms_bandwidth * tau;
    -2.0 * (-0.5 * x * x).exp_m1()
}

/// A transmitted waveform of unit energy.
#[derive(Debug, Clone, PartialEq)]
pub enum PulseShape {
    /// `s(t) = (2πT²)^{-1/4} exp(-t²/4T² + iΔω t²/2T)`; `chirp_bandwidth` is
    /// taken as the rms bandwidth, which holds when `Δω T ≫ 1`.
    ChirpedGaussian { duration: f64, chirp_bandwidth: f64 },
    /// `s(t) = (2πT²)^{-1/4} exp(-t²/4T²)`, rms bandwidth `1/2T`.
    TransformLimitedGaussian { duration: f64 },
    /// `1/√T_s` on `[0, T_s]`.
    Rectangular { duration: f64 },
    /// `|S(ω)|²` on a uniform grid, normalized so `∫ dω/2π |S|² = 1`.
    TabulatedSpectrum(SpectralTable),
}

impl PulseShape {
    pub fn chirped_gaussian(duration: f64, chirp_bandwidth: f64) -> Result<Self> {
        Ok(PulseShape::ChirpedGaussian {
            duration: positive("duration", duration)?,
            chirp_bandwidth: positive("chirp_bandwidth", chirp_bandwidth)?,
        })
    }

    pub fn transform_limited(duration: f64) -> Result<Self> {
        Ok(PulseShape::TransformLimitedGaussian {
            duration: positive("duration", duration)?,
        })
    }

    /// The transform-limited Gaussian whose rms bandwidth is `bandwidth`.
    pub fn transform_limited_with_bandwidth(bandwidth: f64) -> Result<Self> {
        PulseShape::transform_limited(0.5 / positive("bandwidth", bandwidth)?)
    }

    pub fn rectangular(duration: f64) -> Result<Self> {
        Ok(PulseShape::Rectangular {
            duration: positive("duration", duration)?,
        })
    }

    pub fn tabulated(table: SpectralTable) -> Result<Self> {
        let energy = table.moment(0);
        if (energy - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidParameter {
                name: "pulse energy",
                value: energy,
                detail: "tabulated |S(ω)|² must satisfy ∫dω/2π |S|² = 1 within 1e-6",
            });
        }
        Ok(PulseShape::TabulatedSpectrum(table))
    }

    /// Samples the unit-energy Gaussian spectrum of rms width `bandwidth` on
    /// `±span` rms widths.
    pub fn tabulated_gaussian(bandwidth: f64, span: f64, points: usize) -> Result<Self> {
        let bw = positive("bandwidth", bandwidth)?;
        let norm = 2.0 * PI / (2.0 * PI * bw * bw).sqrt();
        let table = SpectralTable::from_fn(-span * bw, span * bw, points, |w| {
            norm * (-0.5 * (w / bw).powi(2)).exp()
        })?;
        PulseShape::tabulated(table)
    }

    /// Root-mean-squared bandwidth in rad/s.
    pub fn rms_bandwidth(&self) -> Result<f64> {
        match self {
            PulseShape::ChirpedGaussian {
                chirp_bandwidth, ..
            } => Ok(*chirp_bandwidth),
            PulseShape::TransformLimitedGaussian { duration } => Ok(0.5 / duration),
            PulseShape::Rectangular { .. } => Err(Error::Unsupported(
                "rectangular pulse has a divergent second spectral moment".into(),
            )),
            PulseShape::TabulatedSpectrum(t) => Ok(t.rms_width()),
        }
    }

    /// Mismatch `γ(τ') ∈ [0, 4]`.
    pub fn spectral_mismatch(&self, tau: f64) -> Result<f64> {
        let tau = check_offset(tau)?;
        match self {
            PulseShape::TabulatedSpectrum(t) => Ok(t.normalized_mismatch(tau)),
            PulseShape::Rectangular { .. } => Err(Error::Unsupported(
                "spectral mismatch is not defined for the rectangular pulse; \
                 use the closed forms in `incoherent`"
                    .into(),
            )),
            _ => Ok(gaussian_mismatch(self.rms_bandwidth()?, tau)),
        }
    }

    /// Complex envelope `s(t)` in s^{-1/2}.
    pub fn pulse_value(&self, t: f64) -> Result<Complex64> {
        match *self {
            PulseShape::ChirpedGaussian {
                duration,
                chirp_bandwidth,
            } => {
                let amp = (2.0 * PI * duration * duration).powf(-0.25);
                let env = (-t * t / (4.0 * duration * duration)).exp();
                let phase = chirp_bandwidth * t * t / (2.0 * duration);
                Ok(Complex64::from_polar(amp * env, phase))
            }
            PulseShape::TransformLimitedGaussian { duration } => {
                let amp = (2.0 * PI * duration * duration).powf(-0.25);
                Ok(Complex64::new(
                    amp * (-t * t / (4.0 * duration * duration)).exp(),
                    0.0,
                ))
            }
            PulseShape::Rectangular { duration } => {
                let v = if (0.0..=duration).contains(&t) {
                    1.0 / duration.sqrt()
                } else {
                    0.0
                };
                Ok(Complex64::new(v, 0.0))
            }
            PulseShape::TabulatedSpectrum(_) => Err(Error::Unsupported(
                "tabulated spectra carry no time-domain phase".into(),
            )),
        }
    }

    /// Numerically evaluates `√(∫ |ds/dt|² dt)` for the Gaussian families.
    ///
    /// For the chirped pulse this is the exact rms bandwidth, which
    /// approaches the declared chirp bandwidth when `Δω T ≫ 1`.
    pub fn verify_rms_bandwidth(&self) -> Result<f64> {
        let (duration, chirp) = match *self {
            PulseShape::ChirpedGaussian {
                duration,
                chirp_bandwidth,
            } => (duration, chirp_bandwidth),
            PulseShape::TransformLimitedGaussian { duration } => (duration, 0.0),
            PulseShape::TabulatedSpectrum(ref t) => return Ok(t.rms_width()),
            PulseShape::Rectangular { .. } => return self.rms_bandwidth(),
        };
        let derivative_sq = |t: f64| -> f64 {
            let s = self.pulse_value(t).map(|z| z.norm_sqr()).unwrap_or(0.0);
            let d = Complex64::new(-t / (2.0 * duration * duration), chirp * t / duration);
            s * d.norm_sqr()
        };
        let span = 12.0 * duration;
        let r = integrate(derivative_sq, -span, span, &[0.0], QuadOptions::default())?;
        Ok(r.value.sqrt())
    }
}

fn check_offset(tau: f64) -> Result<f64> {
    if tau.is_finite() && tau >= 0.0 {
        Ok(tau)
    } else {
        Err(Error::InvalidParameter {
            name: "delay offset",
            value: tau,
            detail: "must be finite and non-negative",
        })
    }
}

/// Per-mode brightness profile `S⁽ⁿ⁾(ω)` of the signal beam.
#[derive(Debug, Clone, PartialEq)]
pub enum BrightnessProfile {
    /// `S⁽ⁿ⁾(ω)/2π = N_S e^{-ω²/2Δω²}/√(2π)`.
    Gaussian {
        n_s: f64,
        bandwidth: f64,
    },
    Tabulated(SpectralTable),
}

/// The entangled source's fluorescence spectrum over a pulse of duration `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct FluorescenceSpectrum {
    pub profile: BrightnessProfile,
    pub pulse_duration: f64,
}

impl FluorescenceSpectrum {
    pub fn gaussian(n_s: f64, bandwidth: f64, pulse_duration: f64) -> Result<Self> {
        Ok(FluorescenceSpectrum {
            profile: BrightnessProfile::Gaussian {
                n_s: positive("n_s", n_s)?,
                bandwidth: positive("bandwidth", bandwidth)?,
            },
            pulse_duration: positive("pulse_duration", pulse_duration)?,
        })
    }

    pub fn tabulated(table: SpectralTable, pulse_duration: f64) -> Result<Self> {
        Ok(FluorescenceSpectrum {
            profile: BrightnessProfile::Tabulated(table),
            pulse_duration: positive("pulse_duration", pulse_duration)?,
        })
    }

    /// `S⁽ⁿ⁾(ω)`, dimensionless photons per mode.
    pub fn brightness_at(&self, omega: f64) -> f64 {
        match &self.profile {
            BrightnessProfile::Gaussian { n_s, bandwidth } => {
                (2.0 * PI).sqrt() * n_s * (-0.5 * (omega / bandwidth).powi(2)).exp()
            }
            BrightnessProfile::Tabulated(t) => {
                let x = (omega - t.omega[0]) / t.step;
                if x < 0.0 || x > (t.omega.len() - 1) as f64 {
                    return 0.0;
                }
                let i = (x.floor() as usize).min(t.omega.len() - 2);
                let frac = x - i as f64;
                t.values[i] * (1.0 - frac) + t.values[i + 1] * frac
            }
        }
    }

    /// Mean signal photon number `𝓔 = T ∫ dω/2π S⁽ⁿ⁾(ω)`.
    pub fn energy(&self) -> f64 {
        match &self.profile {
            BrightnessProfile::Gaussian { n_s, bandwidth } => n_s * bandwidth * self.pulse_duration,
            BrightnessProfile::Tabulated(t) => self.pulse_duration * t.moment(0),
        }
    }

    pub fn rms_bandwidth(&self) -> f64 {
        match &self.profile {
            BrightnessProfile::Gaussian { bandwidth, .. } => *bandwidth,
            BrightnessProfile::Tabulated(t) => t.rms_width(),
        }
    }

    /// `max_ω S⁽ⁿ⁾(ω)/2π`.
    pub fn peak_brightness(&self) -> f64 {
        match &self.profile {
            BrightnessProfile::Gaussian { n_s, .. } => n_s / (2.0 * PI).sqrt(),
            BrightnessProfile::Tabulated(t) => t.peak() / (2.0 * PI),
        }
    }

    pub fn is_low_brightness(&self) -> bool {
        self.peak_brightness() <= LOW_BRIGHTNESS_PEAK
    }

    /// `M = Δω T`.
    pub fn time_bandwidth_product(&self) -> f64 {
        self.rms_bandwidth() * self.pulse_duration
    }

    /// Long-pulse condition under which Fourier modes decouple.
    pub fn is_long_pulse(&self) -> bool {
        self.time_bandwidth_product() >= 20.0 * 2.0 * PI
    }

    /// Energy-normalized mismatch `T ∫ dω/2π S⁽ⁿ⁾(ω) |1 - e^{-iωτ'}|² / 𝓔`.
    pub fn quantum_spectral_mismatch(&self, tau: f64) -> Result<f64> {
        let tau = check_offset(tau)?;
        Ok(match &self.profile {
            BrightnessProfile::Gaussian { bandwidth, .. } => gaussian_mismatch(*bandwidth, tau),
            BrightnessProfile::Tabulated(t) => t.normalized_mismatch(tau),
        })
    }

    /// `∫ dω/2π g(ω, S⁽ⁿ⁾(ω))` over the whole spectrum.
    pub fn integrate_spectrum<G: Fn(f64, f64) -> f64>(&self, g: G) -> Result<f64> {
        match &self.profile {
            BrightnessProfile::Gaussian { bandwidth, .. } => {
                let span = 14.0 * bandwidth;
                let breaks: Vec<f64> = (-6..=6).map(|k| k as f64 * 2.0 * bandwidth).collect();
                let r = integrate(
                    |w| g(w, self.brightness_at(w)),
                    -span,
                    span,
                    &breaks,
                    QuadOptions {
                        rel_tol: 1e-12,
                        ..Default::default()
                    },
                )?;
                Ok(r.value / (2.0 * PI))
            }
            BrightnessProfile::Tabulated(t) => Ok(t.integrate_with(g)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const BW: f64 = 2.0 * PI * 1e6;

    fn gaussian_table() -> PulseShape {
        PulseShape::tabulated_gaussian(BW, 8.0, 2001).unwrap()
    }

    #[test]
    fn transform_limited_bandwidth() {
        let p = PulseShape::transform_limited(1e-6).unwrap();
        assert_relative_eq!(p.rms_bandwidth().unwrap(), 0.5e6);
        assert_relative_eq!(
            p.verify_rms_bandwidth().unwrap(),
            0.5e6,
            max_relative = 1e-9
        );
    }

    #[test]
    fn chirped_bandwidth_large_tbp() {
        let t = 1e-3;
        let p = PulseShape::chirped_gaussian(t, BW).unwrap();
        assert_eq!(p.rms_bandwidth().unwrap(), BW);
        let numeric = p.verify_rms_bandwidth().unwrap();
        assert!((numeric / BW - 1.0).abs() < 0.01);
        // Exact second moment of the chirped Gaussian: Δω² + 1/4T².
        assert_relative_eq!(
            numeric,
            (BW * BW + 0.25 / (t * t)).sqrt(),
            max_relative = 1e-8
        );
    }

    #[test]
    fn tabulated_bandwidth() {
        let p = gaussian_table();
        let bw = p.rms_bandwidth().unwrap();
        assert!((bw / 6.2832e6 - 1.0).abs() < 1e-3);
        assert_relative_eq!(bw, BW, max_relative = 1e-9);
    }

    #[test]
    fn rectangular_unsupported() {
        let p = PulseShape::rectangular(1e-6).unwrap();
        assert!(matches!(p.rms_bandwidth(), Err(Error::Unsupported(_))));
        assert!(matches!(
            p.spectral_mismatch(1e-7),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn coarse_table_rejected() {
        let r = SpectralTable::from_fn(-8.0 * BW, 8.0 * BW, 9, |w| (-0.5 * (w / BW).powi(2)).exp());
        assert!(matches!(r, Err(Error::Resolution(_))));
        let truncated = SpectralTable::from_fn(-2.0 * BW, 2.0 * BW, 200, |w| {
            (-0.5 * (w / BW).powi(2)).exp()
        });
        assert!(matches!(truncated, Err(Error::Resolution(_))));
    }

    #[test]
    fn unnormalized_pulse_rejected() {
        let t = SpectralTable::from_fn(-8.0 * BW, 8.0 * BW, 401, |w| {
            (-0.5 * (w / BW).powi(2)).exp()
        })
        .unwrap();
        assert!(PulseShape::tabulated(t).is_err());
    }

    #[test]
    fn mismatch_values() {
        let p = PulseShape::chirped_gaussian(1e-3, BW).unwrap();
        assert_eq!(p.spectral_mismatch(0.0).unwrap(), 0.0);
        let g = p.spectral_mismatch(1.0 / BW).unwrap();
        assert_relative_eq!(g, 2.0 * (1.0 - (-0.5f64).exp()), max_relative = 1e-14);
        assert!((g - 0.78694).abs() < 1e-5);
        assert!(p.spectral_mismatch(-1.0).is_err());
    }

    // Oracle: adaptive quadrature of |S|²|1-e^{-iωτ}|² on ±8Δω, independent of
    // both the closed form and the tabulated trapezoid.
    fn mismatch_oracle(tau: f64) -> f64 {
        let norm = 1.0 / (2.0 * PI * BW * BW).sqrt();
        let f = |w: f64| norm * (-0.5 * (w / BW).powi(2)).exp() * 2.0 * (1.0 - (w * tau).cos());
        integrate(
            f,
            -8.0 * BW,
            8.0 * BW,
            &[0.0],
            QuadOptions {
                rel_tol: 1e-13,
                ..Default::default()
            },
        )
        .unwrap()
        .value
    }

    #[test]
    fn tabulated_mismatch_matches_oracle() {
        let p = gaussian_table();
        let closed = PulseShape::transform_limited_with_bandwidth(BW).unwrap();
        // deterministic pseudo-random offsets in (0, 6/Δω)
        let mut x = 0.123456789f64;
        for _ in 0..20 {
            x = (x * 9301.0 + 0.49297).fract();
            let tau = 6.0 * x / BW;
            let oracle = mismatch_oracle(tau);
            assert!((p.spectral_mismatch(tau).unwrap() - oracle).abs() < 1e-6);
            assert!((closed.spectral_mismatch(tau).unwrap() - oracle).abs() < 1e-6);
        }
        // Far offsets take the Filon branch and must approach 2.
        let far = p.spectral_mismatch(1e4 / BW).unwrap();
        assert!((far - 2.0).abs() < 1e-6, "far mismatch {far}");
    }

    #[test]
    fn small_offset_expansion() {
        let tau = 1e-3 / BW;
        for p in [
            PulseShape::chirped_gaussian(1e-3, BW).unwrap(),
            gaussian_table(),
        ] {
            let ratio = p.spectral_mismatch(tau).unwrap() / (tau * tau) / (BW * BW);
            assert!((ratio - 1.0).abs() < 0.01, "ratio {ratio}");
        }
    }

    #[test]
    fn pulse_values() {
        let t = 2e-6;
        let p = PulseShape::chirped_gaussian(t, BW).unwrap();
        let s0 = p.pulse_value(0.0).unwrap();
        assert_relative_eq!(s0.re, (2.0 * PI * t * t).powf(-0.25), max_relative = 1e-15);
        assert_eq!(s0.im, 0.0);
        let r = PulseShape::rectangular(4e-6).unwrap();
        assert_relative_eq!(r.pulse_value(2e-6).unwrap().re, 1.0 / 4e-6f64.sqrt());
        assert_eq!(r.pulse_value(5e-6).unwrap().re, 0.0);
        assert!(gaussian_table().pulse_value(0.0).is_err());
    }

    #[test]
    fn chirped_pulse_normalized() {
        let t = 2e-6;
        let p = PulseShape::chirped_gaussian(t, BW).unwrap();
        // trapezoid on ±10T
        let n = 200_000;
        let h = 20.0 * t / n as f64;
        let mut s = 0.0;
        for i in 0..=n {
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            s += w * p.pulse_value(-10.0 * t + i as f64 * h).unwrap().norm_sqr();
        }
        assert!((s * h - 1.0).abs() < 1e-9);
    }

    #[test]
    fn fluorescence_energy_and_mismatch() {
        let f = FluorescenceSpectrum::gaussian(1e-3, BW, 1e-2).unwrap();
        assert_relative_eq!(f.energy(), 1e-3 * BW * 1e-2, max_relative = 1e-15);
        // Quadrature of the profile reproduces the same energy.
        let numeric = f.pulse_duration * f.integrate_spectrum(|_, s| s).unwrap();
        assert_relative_eq!(numeric, f.energy(), max_relative = 1e-10);
        assert!(f.is_low_brightness());
        assert!(f.is_long_pulse());
        assert_eq!(f.quantum_spectral_mismatch(0.0).unwrap(), 0.0);
        assert!((f.quantum_spectral_mismatch(8.0 / BW).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn tabulated_fluorescence_matches_gaussian() {
        let n_s = 1e-3;
        let g = FluorescenceSpectrum::gaussian(n_s, BW, 1e-2).unwrap();
        let table =
            SpectralTable::from_fn(-8.0 * BW, 8.0 * BW, 2001, |w| g.brightness_at(w)).unwrap();
        let t = FluorescenceSpectrum::tabulated(table, 1e-2).unwrap();
        assert_relative_eq!(t.energy(), g.energy(), max_relative = 1e-9);
        assert_relative_eq!(t.rms_bandwidth(), BW, max_relative = 1e-9);
        assert_relative_eq!(
            t.peak_brightness(),
            g.peak_brightness(),
            max_relative = 1e-12
        );
        for k in 1..20 {
            let tau = k as f64 * 0.25 / BW;
            let a = t.quantum_spectral_mismatch(tau).unwrap();
            let b = g.quantum_spectral_mismatch(tau).unwrap();
            assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn parse_two_column_file() {
        let mut text = String::from("# omega density\n\n");
        for i in 0..=200 {
            let w = -8.0 * BW + i as f64 * 0.08 * BW;
            text.push_str(&format!(
                "{w:e} {:e}  # row {i}\n",
                (-0.5 * (w / BW).powi(2)).exp()
            ));
        }
        let t = SpectralTable::parse(&text).unwrap();
        assert_eq!(t.omega().len(), 201);
        assert!(SpectralTable::parse("1.0 2.0 3.0\n").is_err());
        assert!(matches!(
            SpectralTable::parse("1.0 x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    proptest! {
        #[test]
        fn gaussian_mismatch_monotone(a in 0.0f64..20.0, b in 0.0f64..20.0) {
            prop_assume!(a < b);
            let p = PulseShape::chirped_gaussian(1e-3, BW).unwrap();
            let ga = p.spectral_mismatch(a / BW).unwrap();
            let gb = p.spectral_mismatch(b / BW).unwrap();
            prop_assert!(ga <= gb);
            prop_assert!((0.0..=4.0).contains(&gb));
        }

        #[test]
        fn gaussian_energy_identity(n_s in 1e-6f64..10.0, bw in 1e3f64..1e10, t in 1e-6f64..10.0) {
            let f = FluorescenceSpectrum::gaussian(n_s, bw, t).unwrap();
            prop_assert!((f.energy() / (n_s * bw * t) - 1.0).abs() <= 1e-10);
        }
    }
}
