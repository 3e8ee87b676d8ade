//! Physical front end: background brightness, radar-equation loss, mapping a
//! link to an operating point, the advantage contour over (range, pulse
//! duration), sweep drivers, and the flat key = value link configuration.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classical::{
    crb_classical, threshold_snr_classical, zzb_classical_gaussian, zzb_high_snr_asymptote,
    zzb_low_snr_asymptote, AsymptoteForm, DelayPrior, PeForm, RadarScenario, SPEED_OF_LIGHT,
};
use crate::curve::{db10, db20, from_db10, BoundCurve, CurveKind};
use crate::error::{positive, Error, Result};
use crate::incoherent::{fisher_incoherent_mc, HeterodyneModel, MCConfig};
use crate::quantum::{
    crb_quantum, qcb_exponent_scale, threshold_snr_quantum, zzb_qcb_quantum_gaussian,
    zzb_quantum_low_snr_asymptote,
};
use crate::waveform::{FluorescenceSpectrum, PulseShape};

/// Reduced Planck constant, J·s (exact SI).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K (exact SI).
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Range at or above which, in units of `√A_R`, the far-field flag is set.
pub const FAR_FIELD_FACTOR: f64 = 10.0;

/// Thermal occupation `1/(e^{ħω₀/k_B T_B} - 1)` in photons per mode.
pub fn planck_brightness(carrier: f64, noise_temp: f64) -> Result<f64> {
    let x =
        HBAR * positive("carrier", carrier)? / (BOLTZMANN * positive("noise_temp", noise_temp)?);
    Ok(1.0 / x.exp_m1())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeUncertainty {
    /// Meters.
    Absolute(f64),
    /// Fraction of the range.
    Fraction(f64),
}

/// A monostatic radar looking at a point target. Angular frequencies in
/// rad/s, lengths in meters, areas in m².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadarLink {
    pub carrier: f64,
    pub antenna_area: f64,
    pub cross_section: f64,
    pub noise_temp: f64,
    pub range: f64,
    pub range_uncertainty: RangeUncertainty,
    pub pulse_duration: f64,
    pub bandwidth: f64,
    pub signal_brightness: Option<f64>,
}

impl RadarLink {
    pub fn validate(&self) -> Result<()> {
        positive("carrier", self.carrier)?;
        positive("antenna_area", self.antenna_area)?;
        positive("cross_section", self.cross_section)?;
        positive("noise_temp", self.noise_temp)?;
        positive("range", self.range)?;
        positive("pulse_duration", self.pulse_duration)?;
        positive("bandwidth", self.bandwidth)?;
        self.delta_r()?;
        if let Some(n_s) = self.signal_brightness {
            positive("signal_brightness", n_s)?;
        }
        Ok(())
    }

    pub fn with_range(self, range: f64) -> Self {
        RadarLink { range, ..self }
    }

    pub fn with_pulse_duration(self, pulse_duration: f64) -> Self {
        RadarLink {
            pulse_duration,
            ..self
        }
    }

    pub fn with_signal_brightness(self, n_s: f64) -> Self {
        RadarLink {
            signal_brightness: Some(n_s),
            ..self
        }
    }

    pub fn wavelength(&self) -> f64 {
        2.0 * PI * SPEED_OF_LIGHT / self.carrier
    }

    /// `G_T = A_R/λ²`.
    pub fn antenna_gain(&self) -> f64 {
        self.antenna_area / self.wavelength().powi(2)
    }

    pub fn far_field(&self) -> bool {
        self.range >= FAR_FIELD_FACTOR * self.antenna_area.sqrt()
    }

    pub fn delta_r(&self) -> Result<f64> {
        match self.range_uncertainty {
            RangeUncertainty::Absolute(d) => positive("range_uncertainty", d),
            RangeUncertainty::Fraction(f) => {
                Ok(positive("range_uncertainty_fraction", f)? * self.range)
            }
        }
    }

    pub fn delay_prior(&self) -> Result<DelayPrior> {
        DelayPrior::from_range_uncertainty(self.delta_r()?)
    }

    /// Round-trip delay `2R/c`.
    pub fn delay(&self) -> f64 {
        2.0 * self.range / SPEED_OF_LIGHT
    }

    pub fn background(&self) -> Result<f64> {
        planck_brightness(self.carrier, self.noise_temp)
    }

    /// `M = Δω T`.
    pub fn time_bandwidth_product(&self) -> f64 {
        self.bandwidth * self.pulse_duration
    }

    /// Fluorescence spectrum for signal brightness `n_s`.
    pub fn fluorescence(&self, n_s: f64) -> Result<FluorescenceSpectrum> {
        FluorescenceSpectrum::gaussian(n_s, self.bandwidth, self.pulse_duration)
    }
}

/// `κ = (G_T/4πR²)(σA_R/4πR²)`.
pub fn roundtrip_transmissivity(link: &RadarLink) -> Result<f64> {
    link.validate()?;
    let spread = 4.0 * PI * link.range * link.range;
    let kappa = link.antenna_gain() / spread * (link.cross_section * link.antenna_area / spread);
    if kappa >= 1.0 {
        return Err(Error::ModelViolation(format!(
            "round-trip transmissivity {kappa:.3e} >= 1 at range {} m; target too close for the radar equation",
            link.range
        )));
    }
    Ok(kappa)
}

/// Operating point of a link whose signal brightness is set.
pub fn link_to_scenario(link: &RadarLink) -> Result<RadarScenario> {
    let n_s = link.signal_brightness.ok_or(Error::InvalidParameter {
        name: "signal_brightness",
        value: f64::NAN,
        detail: "signal brightness must be set or solved for",
    })?;
    let kappa = roundtrip_transmissivity(link)?;
    let energy = n_s * link.time_bandwidth_product();
    RadarScenario::from_budget(kappa, energy, link.background()?, link.bandwidth)
}

/// Signal brightness `N_S = SNR·N_B/(κΔωT)` at which `link` reaches `snr`.
pub fn brightness_for_snr(link: &RadarLink, snr: f64) -> Result<f64> {
    let snr = positive("snr", snr)?;
    let kappa = roundtrip_transmissivity(link)?;
    Ok(snr * link.background()? / (kappa * link.time_bandwidth_product()))
}

/// `template` with its signal brightness solved so that it reaches `s`'s SNR.
pub fn scenario_to_link(s: &RadarScenario, template: &RadarLink) -> Result<RadarLink> {
    let link = RadarLink {
        bandwidth: s.bandwidth(),
        ..*template
    };
    Ok(link.with_signal_brightness(brightness_for_snr(&link, s.snr())?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    LowBrightness,
    Bright,
    Missing,
}

impl Regime {
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::LowBrightness => "low_brightness",
            Regime::Bright => "bright",
            Regime::Missing => "missing",
        }
    }
}

/// One `(R, T)` cell of the advantage contour.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourCell {
    pub range_m: f64,
    pub pulse_duration_s: f64,
    pub delta_r_m: f64,
    pub kappa: f64,
    pub n_b: f64,
    pub snr_thresh_quantum: Option<f64>,
    pub n_s: Option<f64>,
    pub exponent_scale: Option<f64>,
    pub advantage_db: Option<f64>,
    pub regime: Regime,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Advantage over a range × pulse-duration grid, stored row-major with one
/// row per range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub ranges: Vec<f64>,
    pub durations: Vec<f64>,
    pub cells: Vec<ContourCell>,
}

impl Contour {
    pub fn cell(&self, range_index: usize, duration_index: usize) -> &ContourCell {
        &self.cells[range_index * self.durations.len() + duration_index]
    }

    /// One curve per range, advantage in dB against pulse duration. Missing
    /// cells are left out of their row.
    pub fn to_curves(&self) -> Result<Vec<BoundCurve>> {
        self.ranges
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let row = &self.cells[i * self.durations.len()..(i + 1) * self.durations.len()];
                let (x, y): (Vec<f64>, Vec<f64>) = row
                    .iter()
                    .filter_map(|c| c.advantage_db.map(|a| (c.pulse_duration_s, a)))
                    .unzip();
                Ok(
                    BoundCurve::new(CurveKind::ContourRow, x, "s", y, "dB")?
                        .with_meta("range_m", r),
                )
            })
            .collect()
    }
}

fn check_grid(name: &'static str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter {
            name,
            value: 0.0,
            detail: "grid must not be empty",
        });
    }
    for &v in grid {
        positive(name, v)?;
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter {
            name,
            value: f64::NAN,
            detail: "grid must be strictly increasing",
        });
    }
    Ok(())
}

/// Mean-squared accuracy advantage at the quantum threshold SNR over a grid
/// of ranges and pulse durations. At each cell the signal brightness is
/// solved so the link sits at the quantum threshold; the advantage compares
/// the classical ZZB-QCB with the quantum ZZB-QCB. Outside the
/// low-brightness regime the quantum exponent is reduced by
/// [`qcb_exponent_scale`].
pub fn advantage_contour(
    template: &RadarLink,
    ranges: &[f64],
    durations: &[f64],
) -> Result<Contour> {
    check_grid("range grid", ranges)?;
    check_grid("pulse duration grid", durations)?;
    template.validate()?;
    let jobs: Vec<(f64, f64)> = ranges
        .iter()
        .flat_map(|&r| durations.iter().map(move |&t| (r, t)))
        .collect();
    let eval = |&(r, t): &(f64, f64)| contour_cell(template.with_range(r).with_pulse_duration(t));
    #[cfg(feature = "parallel")]
    let cells: Vec<ContourCell> = {
        use rayon::prelude::*;
        jobs.par_iter().map(eval).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let cells: Vec<ContourCell> = jobs.iter().map(eval).collect::<Result<_>>()?;
    Ok(Contour {
        ranges: ranges.to_vec(),
        durations: durations.to_vec(),
        cells,
    })
}

fn contour_cell(link: RadarLink) -> Result<ContourCell> {
    let kappa = roundtrip_transmissivity(&link)?;
    let n_b = link.background()?;
    let delta_r = link.delta_r()?;
    let mut cell = ContourCell {
        range_m: link.range,
        pulse_duration_s: link.pulse_duration,
        delta_r_m: delta_r,
        kappa,
        n_b,
        snr_thresh_quantum: None,
        n_s: None,
        exponent_scale: None,
        advantage_db: None,
        regime: Regime::Missing,
        note: None,
    };
    let attempt = || -> Result<(f64, f64, f64, bool, f64)> {
        let prior = link.delay_prior()?;
        let snr = threshold_snr_quantum(&prior, link.bandwidth)?;
        let n_s = brightness_for_snr(&link, snr)?;
        let f = link.fluorescence(n_s)?;
        let low = f.is_low_brightness();
        let g = if low {
            1.0
        } else {
            qcb_exponent_scale(&f, kappa, n_b)?
        };
        let classical = zzb_classical_gaussian(&prior, snr, link.bandwidth, PeForm::Chernoff)?;
        let quantum = zzb_qcb_quantum_gaussian(&prior, g * snr, link.bandwidth)?;
        Ok((snr, n_s, g, low, 2.0 * db10(classical / quantum)))
    };
    match attempt() {
        Ok((snr, n_s, g, low, adv)) => {
            cell.snr_thresh_quantum = Some(snr);
            cell.n_s = Some(n_s);
            cell.exponent_scale = Some(g);
            cell.advantage_db = Some(adv);
            cell.regime = if low {
                Regime::LowBrightness
            } else {
                Regime::Bright
            };
        }
        Err(e @ (Error::ScenarioTooNarrow { .. } | Error::Quadrature { .. })) => {
            cell.note = Some(e.to_string());
        }
        Err(e) => return Err(e),
    }
    Ok(cell)
}

/// Normalized accuracies `20 log₁₀(δτ/σ_τ)` against SNR for one prior and
/// bandwidth. Points whose quadrature failed hold NaN.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracySweep {
    pub snr_db: Vec<f64>,
    pub zzb_classical_exact_db: Vec<f64>,
    pub zzb_classical_qcb_db: Vec<f64>,
    pub zzb_quantum_qcb_db: Vec<f64>,
    pub crb_classical_db: Vec<f64>,
    pub crb_quantum_db: Vec<f64>,
    pub low_snr_classical_qcb_db: Vec<f64>,
    pub low_snr_classical_exact_db: Vec<f64>,
    pub low_snr_quantum_qcb_db: Vec<f64>,
    pub snr_thresh_quantum_db: Option<f64>,
    pub snr_thresh_classical_db: Option<f64>,
    pub failed_points: usize,
}

pub fn accuracy_sweep(prior: &DelayPrior, bandwidth: f64, snr_db: &[f64]) -> Result<AccuracySweep> {
    positive("bandwidth", bandwidth)?;
    let sigma = prior.sigma();
    let norm = |v: f64| db20(v / sigma);
    let eval = |&db: &f64| -> Result<[f64; 8]> {
        let snr = from_db10(db);
        let s = RadarScenario::from_snr(snr, bandwidth)?;
        let quad = |r: Result<f64>| match r {
            Ok(v) => Ok(norm(v)),
            Err(Error::Quadrature { .. }) => Ok(f64::NAN),
            Err(e) => Err(e),
        };
        Ok([
            quad(zzb_classical_gaussian(prior, snr, bandwidth, PeForm::Exact))?,
            quad(zzb_classical_gaussian(
                prior,
                snr,
                bandwidth,
                PeForm::Chernoff,
            ))?,
            quad(zzb_qcb_quantum_gaussian(prior, snr, bandwidth))?,
            norm(crb_classical(&s)),
            norm(crb_quantum(&s)),
            norm(zzb_low_snr_asymptote(prior, snr, AsymptoteForm::Qcb)),
            norm(zzb_low_snr_asymptote(prior, snr, AsymptoteForm::Exact)),
            norm(zzb_quantum_low_snr_asymptote(prior, snr)),
        ])
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<[f64; 8]> = {
        use rayon::prelude::*;
        snr_db.par_iter().map(eval).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<[f64; 8]> = snr_db.iter().map(eval).collect::<Result<_>>()?;

    let col = |k: usize| rows.iter().map(|r| r[k]).collect::<Vec<_>>();
    let failed_points = rows
        .iter()
        .filter(|r| r[..3].iter().any(|v| v.is_nan()))
        .count();
    Ok(AccuracySweep {
        snr_db: snr_db.to_vec(),
        zzb_classical_exact_db: col(0),
        zzb_classical_qcb_db: col(1),
        zzb_quantum_qcb_db: col(2),
        crb_classical_db: col(3),
        crb_quantum_db: col(4),
        low_snr_classical_qcb_db: col(5),
        low_snr_classical_exact_db: col(6),
        low_snr_quantum_qcb_db: col(7),
        snr_thresh_quantum_db: threshold_snr_quantum(prior, bandwidth).ok().map(db10),
        snr_thresh_classical_db: threshold_snr_classical(prior, bandwidth).ok().map(db10),
        failed_points,
    })
}

impl AccuracySweep {
    /// The sweep as labelled curves (NaN points dropped).
    pub fn to_curves(&self) -> Result<Vec<BoundCurve>> {
        let series = [
            (
                CurveKind::ZzbExact,
                "classical",
                &self.zzb_classical_exact_db,
            ),
            (CurveKind::ZzbQcb, "classical", &self.zzb_classical_qcb_db),
            (CurveKind::ZzbQcb, "quantum", &self.zzb_quantum_qcb_db),
            (CurveKind::Crb, "classical", &self.crb_classical_db),
            (CurveKind::Crb, "quantum", &self.crb_quantum_db),
            (
                CurveKind::AsymptoteLow,
                "classical",
                &self.low_snr_classical_qcb_db,
            ),
            (
                CurveKind::AsymptoteLow,
                "quantum",
                &self.low_snr_quantum_qcb_db,
            ),
        ];
        series
            .iter()
            .map(|(kind, radar, ys)| {
                let (x, y): (Vec<f64>, Vec<f64>) = self
                    .snr_db
                    .iter()
                    .zip(ys.iter())
                    .filter(|(_, v)| v.is_finite())
                    .map(|(a, b)| (*a, *b))
                    .unzip();
                Ok(BoundCurve::new(*kind, x, "dB", y, "dB")?.with_meta("radar", radar))
            })
            .collect()
    }
}

/// Classical high-SNR asymptote in seconds; convenience for front ends.
pub fn classical_high_snr(snr: f64, bandwidth: f64, form: AsymptoteForm) -> Result<f64> {
    Ok(zzb_high_snr_asymptote(
        &RadarScenario::from_snr(snr, bandwidth)?,
        form,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IncoherentRow {
    pub snr_db: f64,
    pub fisher_incoherent: f64,
    pub fisher_coherent: f64,
    pub std_error: f64,
}

/// Monte-Carlo incoherent versus coherent Fisher information against
/// `SNR = κ𝓔/(N_B + 1)` for a transform-limited Gaussian of rms duration
/// `duration`.
pub fn incoherent_sweep(
    snr_db: &[f64],
    n_b: f64,
    duration: f64,
    cfg: &MCConfig,
) -> Result<Vec<IncoherentRow>> {
    let pulse = PulseShape::transform_limited(duration)?;
    snr_db
        .iter()
        .map(|&db| {
            let energy = from_db10(db) * (n_b + 1.0);
            let m = HeterodyneModel::new(1.0, energy, n_b, pulse.clone())?;
            let e = fisher_incoherent_mc(&m, cfg, 0.0)?;
            Ok(IncoherentRow {
                snr_db: db,
                fisher_incoherent: e.estimate,
                fisher_coherent: m.coherent_fisher()?,
                std_error: e.std_error,
            })
        })
        .collect()
}

/// Link parameters as read from a flat `key = value` file, in the file's
/// units (Hz, m, m², K, s).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LinkConfig {
    pub carrier_hz: Option<f64>,
    pub antenna_area_m2: Option<f64>,
    pub cross_section_m2: Option<f64>,
    pub noise_temp_k: Option<f64>,
    pub range_m: Option<f64>,
    pub range_uncertainty_m: Option<f64>,
    pub range_uncertainty_fraction: Option<f64>,
    pub pulse_duration_s: Option<f64>,
    pub rms_bandwidth_hz: Option<f64>,
    pub signal_brightness: Option<f64>,
}

impl LinkConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = LinkConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |detail: String| Error::Parse {
                line: i + 1,
                detail,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_err(format!("expected `key = value`, found `{line}`")))?;
            let key = key.trim();
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("`{}` is not a number", value.trim())))?;
            let slot = match key {
                "carrier_hz" => &mut cfg.carrier_hz,
                "antenna_area_m2" => &mut cfg.antenna_area_m2,
                "cross_section_m2" => &mut cfg.cross_section_m2,
                "noise_temp_k" => &mut cfg.noise_temp_k,
                "range_m" => &mut cfg.range_m,
                "range_uncertainty_m" => &mut cfg.range_uncertainty_m,
                "range_uncertainty_fraction" => &mut cfg.range_uncertainty_fraction,
                "pulse_duration_s" => &mut cfg.pulse_duration_s,
                "rms_bandwidth_hz" => &mut cfg.rms_bandwidth_hz,
                "signal_brightness" => &mut cfg.signal_brightness,
                other => return Err(parse_err(format!("unknown key `{other}`"))),
            };
            if slot.is_some() {
                return Err(parse_err(format!("duplicate key `{key}`")));
            }
            *slot = Some(value);
        }
        Ok(cfg)
    }

    pub fn load<P: AsRef<Path>>(path: P) -> Result<Self> {
        LinkConfig::parse(&std::fs::read_to_string(path)?)
    }

    /// Values in `other` take precedence.
    pub fn overlay(&self, other: &LinkConfig) -> LinkConfig {
        LinkConfig {
            carrier_hz: other.carrier_hz.or(self.carrier_hz),
            antenna_area_m2: other.antenna_area_m2.or(self.antenna_area_m2),
            cross_section_m2: other.cross_section_m2.or(self.cross_section_m2),
            noise_temp_k: other.noise_temp_k.or(self.noise_temp_k),
            range_m: other.range_m.or(self.range_m),
            range_uncertainty_m: other.range_uncertainty_m.or(self.range_uncertainty_m),
            range_uncertainty_fraction: other
                .range_uncertainty_fraction
                .or(self.range_uncertainty_fraction),
            pulse_duration_s: other.pulse_duration_s.or(self.pulse_duration_s),
            rms_bandwidth_hz: other.rms_bandwidth_hz.or(self.rms_bandwidth_hz),
            signal_brightness: other.signal_brightness.or(self.signal_brightness),
        }
    }

    pub fn to_link(&self) -> Result<RadarLink> {
        fn need(name: &'static str, v: Option<f64>) -> Result<f64> {
            v.ok_or(Error::InvalidParameter {
                name,
                value: f64::NAN,
                detail: "required link parameter missing",
            })
        }
        let range_uncertainty = match (self.range_uncertainty_m, self.range_uncertainty_fraction) {
            (Some(d), None) => RangeUncertainty::Absolute(d),
            (None, Some(f)) => RangeUncertainty::Fraction(f),
            (Some(_), Some(_)) => {
                return Err(Error::InvalidParameter {
                    name: "range_uncertainty",
                    value: f64::NAN,
                    detail: "give range_uncertainty_m or range_uncertainty_fraction, not both",
                })
            }
            (None, None) => RangeUncertainty::Fraction(0.01),
        };
        let link = RadarLink {
            carrier: 2.0 * PI * need("carrier_hz", self.carrier_hz)?,
            antenna_area: need("antenna_area_m2", self.antenna_area_m2)?,
            cross_section: need("cross_section_m2", self.cross_section_m2)?,
            noise_temp: need("noise_temp_k", self.noise_temp_k)?,
            range: need("range_m", self.range_m)?,
            range_uncertainty,
            pulse_duration: need("pulse_duration_s", self.pulse_duration_s)?,
            bandwidth: 2.0 * PI * need("rms_bandwidth_hz", self.rms_bandwidth_hz)?,
            signal_brightness: self.signal_brightness,
        };
        link.validate()?;
        Ok(link)
    }
}
