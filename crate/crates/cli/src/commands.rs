use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use qiranging::classical::{crb_classical, threshold_snr_classical, DelayPrior, RadarScenario};
use qiranging::curve::{db10, db20, from_db10};
use qiranging::incoherent::MCConfig;
use qiranging::quantum::{
    advantage_report, crb_quantum, fit_alpha, threshold_snr_quantum, FitReference, OperatingPoint,
};
use qiranging::scenario::{accuracy_sweep, advantage_contour, incoherent_sweep, LinkConfig};
use serde_json::json;

use crate::output::{Cell, Table};
use crate::sweep::{Scale, SweepSpec};
use crate::{Command, Common, Format};

const DEFAULT_BANDWIDTH_HZ: f64 = 1e6;
const DEFAULT_DELTA_R_M: f64 = 5e3;
const DEFAULT_SAMPLES: usize = 10_000;

/// Bad or missing command-line input.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Too many sweep points failed to converge.
#[derive(Debug)]
pub struct NumericFailure(pub String);

impl fmt::Display for NumericFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for NumericFailure {}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    use qiranging::Error as E;
    for cause in e.chain() {
        if cause.is::<Usage>() {
            return 2;
        }
        if cause.is::<NumericFailure>() {
            return 3;
        }
        if let Some(err) = cause.downcast_ref::<E>() {
            return match err {
                E::ScenarioTooNarrow { .. } | E::ModelViolation(_) => 4,
                E::Quadrature { .. }
                | E::Domain { .. }
                | E::Resolution(_)
                | E::SingularBound
                | E::DerivativeUndefined => 3,
                E::InvalidParameter { .. } | E::Unsupported(_) | E::Parse { .. } | E::Io(_) => 2,
            };
        }
    }
    2
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn load_config(common: &Common) -> Result<LinkConfig> {
    match &common.config {
        Some(path) => LinkConfig::load(path)
            .map_err(anyhow::Error::from)
            .with_context(|| format!("reading config {}", path.display())),
        None => Ok(LinkConfig::default()),
    }
}

fn bandwidth_hz(common: &Common, cfg: &LinkConfig, default: Option<f64>) -> Result<f64> {
    let bw = common
        .rms_bandwidth_hz
        .or(cfg.rms_bandwidth_hz)
        .or(default)
        .ok_or_else(|| usage("an rms bandwidth is required (--rms-bandwidth-hz or rms_bandwidth_hz in the config)"))?;
    if !(bw.is_finite() && bw > 0.0) {
        return Err(usage(format!("rms bandwidth must be positive, got {bw}")));
    }
    Ok(bw)
}

fn prior(common: &Common, cfg: &LinkConfig, table: &mut Table) -> Result<DelayPrior> {
    let p = if let Some(dt) = common.delta_tau_s {
        table.param("delta_tau_s", dt);
        DelayPrior::new(dt)?
    } else {
        let dr = common
            .delta_r_m
            .or(cfg.range_uncertainty_m)
            .or_else(|| Some(cfg.range_uncertainty_fraction? * cfg.range_m?))
            .unwrap_or(DEFAULT_DELTA_R_M);
        table.param("delta_r_m", dr);
        DelayPrior::from_range_uncertainty(dr)?
    };
    table.param("delta_tau_resolved_s", p.width());
    Ok(p)
}

fn snr_points(common: &Common, default: SweepSpec, table: &mut Table) -> Result<Vec<f64>> {
    if let Some(db) = common.snr_db {
        table.param("snr_db", db);
        return Ok(vec![db]);
    }
    let spec = common.snr_sweep.unwrap_or(default);
    table.param("snr_sweep", spec);
    spec.values(Scale::Linear).map_err(usage)
}

fn emit(common: &Common, table: &Table) -> Result<()> {
    let text = match common.format {
        Format::Csv => table.to_csv(),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&table.to_json())?),
    };
    write_out(common.out.as_deref(), &text)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn sidecar_path(explicit: Option<PathBuf>, out: Option<&Path>) -> Option<PathBuf> {
    explicit.or_else(|| {
        out.map(|p| {
            let mut s = p.as_os_str().to_owned();
            s.push(".thresholds.json");
            PathBuf::from(s)
        })
    })
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Crb { common } => crb(&common),
        Command::Zzb { common, sidecar } => zzb(&common, sidecar),
        Command::Threshold { common } => threshold(&common),
        Command::Advantage {
            common,
            alpha_sweep,
        } => advantage(&common, alpha_sweep),
        Command::Contour {
            common,
            range_sweep,
            duration_sweep,
        } => contour(&common, range_sweep, duration_sweep),
        Command::IncoherentMc {
            common,
            n_b,
            pulse_duration_s,
        } => incoherent(&common, n_b, pulse_duration_s),
    }
}

fn crb(common: &Common) -> Result<()> {
    let cfg = load_config(common)?;
    let mut t = Table::new(
        "crb",
        vec!["snr_db", "crb_classical_s", "crb_quantum_s", "ratio_db"],
    );
    let bw_hz = bandwidth_hz(common, &cfg, Some(DEFAULT_BANDWIDTH_HZ))?;
    t.param("rms_bandwidth_hz", bw_hz);
    let snrs = snr_points(
        common,
        SweepSpec {
            start: 0.0,
            stop: 0.0,
            points: 1,
            scale: None,
        },
        &mut t,
    )?;
    for db in snrs {
        let s = RadarScenario::from_snr(from_db10(db), 2.0 * PI * bw_hz)?;
        let (c, q) = (crb_classical(&s), crb_quantum(&s));
        t.push(vec![db.into(), c.into(), q.into(), db20(c / q).into()]);
    }
    emit(common, &t)
}

fn zzb(common: &Common, sidecar: Option<PathBuf>) -> Result<()> {
    let cfg = load_config(common)?;
    let mut t = Table::new(
        "zzb",
        vec![
            "snr_db",
            "zzb_classical_exact_db",
            "zzb_classical_qcb_db",
            "zzb_quantum_qcb_db",
            "crb_classical_db",
            "crb_quantum_db",
            "low_snr_classical_exact_db",
            "low_snr_classical_qcb_db",
            "low_snr_quantum_qcb_db",
        ],
    );
    let bw_hz = bandwidth_hz(common, &cfg, Some(DEFAULT_BANDWIDTH_HZ))?;
    t.param("rms_bandwidth_hz", bw_hz);
    let prior = prior(common, &cfg, &mut t)?;
    t.param("normalization", "20*log10(delta_tau/sigma_tau)");
    let snrs = snr_points(
        common,
        SweepSpec {
            start: -5.0,
            stop: 25.0,
            points: 61,
            scale: None,
        },
        &mut t,
    )?;
    let s = accuracy_sweep(&prior, 2.0 * PI * bw_hz, &snrs)?;
    for i in 0..s.snr_db.len() {
        t.push(
            [
                s.snr_db[i],
                s.zzb_classical_exact_db[i],
                s.zzb_classical_qcb_db[i],
                s.zzb_quantum_qcb_db[i],
                s.crb_classical_db[i],
                s.crb_quantum_db[i],
                s.low_snr_classical_exact_db[i],
                s.low_snr_classical_qcb_db[i],
                s.low_snr_quantum_qcb_db[i],
            ]
            .into_iter()
            .map(Cell::from)
            .collect(),
        );
    }
    let markers = json!({
        "snr_thresh_quantum_db": s.snr_thresh_quantum_db,
        "snr_thresh_classical_db": s.snr_thresh_classical_db,
        "points": s.snr_db.len(),
        "failed_points": s.failed_points,
    });
    match common.format {
        Format::Csv => emit(common, &t)?,
        Format::Json => {
            let mut doc = t.to_json();
            doc["thresholds"] = markers.clone();
            write_out(
                common.out.as_deref(),
                &format!("{}\n", serde_json::to_string_pretty(&doc)?),
            )?;
        }
    }
    if let Some(path) = sidecar_path(sidecar, common.out.as_deref()) {
        write_out(
            Some(&path),
            &format!("{}\n", serde_json::to_string_pretty(&markers)?),
        )?;
    }
    if s.failed_points * 10 > s.snr_db.len() {
        return Err(NumericFailure(format!(
            "{} of {} sweep points failed to converge",
            s.failed_points,
            s.snr_db.len()
        ))
        .into());
    }
    Ok(())
}

fn threshold(common: &Common) -> Result<()> {
    let cfg = load_config(common)?;
    let mut t = Table::new(
        "threshold",
        vec!["snr_thresh_quantum_db", "snr_thresh_classical_db", "gap_db"],
    );
    let bw_hz = bandwidth_hz(common, &cfg, Some(DEFAULT_BANDWIDTH_HZ))?;
    t.param("rms_bandwidth_hz", bw_hz);
    let prior = prior(common, &cfg, &mut t)?;
    let q = db10(threshold_snr_quantum(&prior, 2.0 * PI * bw_hz)?);
    let c = db10(threshold_snr_classical(&prior, 2.0 * PI * bw_hz)?);
    t.push(vec![q.into(), c.into(), (c - q).into()]);
    emit(common, &t)
}

fn advantage(common: &Common, alpha_sweep: Option<SweepSpec>) -> Result<()> {
    let cfg = load_config(common)?;
    let mut t = Table::new(
        "advantage",
        vec![
            "evaluated_at_snr_db",
            "snr_thresh_quantum_db",
            "snr_thresh_classical_db",
            "advantage_qcb_vs_qcb_db",
            "advantage_exact_vs_qcb_db",
            "asymptotic_advantage_db",
            "alpha_exponential",
            "alpha_power_law",
        ],
    );
    let bw_hz = bandwidth_hz(common, &cfg, Some(DEFAULT_BANDWIDTH_HZ))?;
    let bw = 2.0 * PI * bw_hz;
    t.param("rms_bandwidth_hz", bw_hz);
    let prior = prior(common, &cfg, &mut t)?;
    let at = match common.snr_db {
        Some(db) => {
            t.param("snr_db", db);
            OperatingPoint::Snr(from_db10(db))
        }
        None => {
            t.param("snr", "quantum_threshold");
            OperatingPoint::QuantumThreshold
        }
    };
    let mut report = advantage_report(&prior, bw, at)?;
    if let Some(spec) = alpha_sweep {
        t.param("alpha_sweep_delta_r_m", spec);
        let widths = spec
            .values(Scale::Log)
            .map_err(usage)?
            .into_iter()
            .map(|dr| DelayPrior::from_range_uncertainty(dr).map(|p| p.width()))
            .collect::<qiranging::Result<Vec<_>>>()?;
        report.alpha_fit = Some(fit_alpha(&widths, bw, FitReference::ExactVsQcb)?);
    }
    match common.format {
        Format::Json => {
            let doc = json!({
                "version": env!("CARGO_PKG_VERSION"),
                "command": "advantage",
                "parameters": t.parameters.iter().map(|(k, v)| (k.clone(), json!(v))).collect::<serde_json::Map<_, _>>(),
                "report": report,
            });
            write_out(
                common.out.as_deref(),
                &format!("{}\n", serde_json::to_string_pretty(&doc)?),
            )
        }
        Format::Csv => {
            let (ae, ap) = report.alpha_fit.as_ref().map_or((f64::NAN, f64::NAN), |f| {
                (f.alpha_exponential, f.alpha_power_law)
            });
            t.push(
                [
                    db10(report.evaluated_at_snr),
                    db10(report.snr_thresh_quantum),
                    db10(report.snr_thresh_classical),
                    report.advantage_qcb_vs_qcb_db,
                    report.advantage_exact_vs_qcb_db,
                    report.asymptotic_advantage_db,
                    ae,
                    ap,
                ]
                .into_iter()
                .map(Cell::from)
                .collect(),
            );
            emit(common, &t)
        }
    }
}

fn contour(common: &Common, range_sweep: SweepSpec, duration_sweep: SweepSpec) -> Result<()> {
    let cfg = load_config(common)?;
    if common.config.is_none() {
        return Err(usage("contour needs --config with the link parameters"));
    }
    let ranges = range_sweep.values(Scale::Log).map_err(usage)?;
    let durations = duration_sweep.values(Scale::Log).map_err(usage)?;
    let bw_hz = bandwidth_hz(common, &cfg, None)?;
    let mut t = Table::new(
        "contour",
        vec![
            "range_m",
            "pulse_duration_s",
            "advantage_db",
            "regime_tag",
            "signal_brightness",
            "snr_thresh_quantum_db",
            "kappa",
        ],
    );
    let cfg = LinkConfig {
        range_m: cfg.range_m.or(Some(ranges[0])),
        pulse_duration_s: cfg.pulse_duration_s.or(Some(durations[0])),
        rms_bandwidth_hz: Some(bw_hz),
        range_uncertainty_m: common.delta_r_m.or(cfg.range_uncertainty_m),
        ..cfg
    };
    let link = cfg.to_link()?;
    for (k, v) in [
        ("carrier_hz", cfg.carrier_hz),
        ("antenna_area_m2", cfg.antenna_area_m2),
        ("cross_section_m2", cfg.cross_section_m2),
        ("noise_temp_k", cfg.noise_temp_k),
        ("range_uncertainty_m", cfg.range_uncertainty_m),
        ("range_uncertainty_fraction", cfg.range_uncertainty_fraction),
        ("rms_bandwidth_hz", cfg.rms_bandwidth_hz),
    ] {
        if let Some(v) = v {
            t.param(k, v);
        }
    }
    t.param("noise_brightness", link.background()?);
    t.param("range_sweep_m", range_sweep);
    t.param("duration_sweep_s", duration_sweep);
    let c = advantage_contour(&link, &ranges, &durations)?;
    for cell in &c.cells {
        t.push(vec![
            cell.range_m.into(),
            cell.pulse_duration_s.into(),
            cell.advantage_db.unwrap_or(f64::NAN).into(),
            cell.regime.tag().into(),
            cell.n_s.unwrap_or(f64::NAN).into(),
            cell.snr_thresh_quantum.map_or(f64::NAN, db10).into(),
            cell.kappa.into(),
        ]);
    }
    emit(common, &t)
}

fn incoherent(common: &Common, n_b: f64, duration: f64) -> Result<()> {
    let mut t = Table::new(
        "incoherent-mc",
        vec![
            "snr_db",
            "fisher_incoherent",
            "fisher_coherent",
            "std_error",
        ],
    );
    t.param("n_b", n_b);
    t.param("pulse_duration_s", duration);
    t.param("snr_definition", "kappa*energy/(n_b+1)");
    let samples = common.samples.unwrap_or(DEFAULT_SAMPLES);
    if samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let seed = common.seed.unwrap_or(0);
    t.param("samples", samples);
    t.param("seed", seed);
    let snrs = snr_points(
        common,
        SweepSpec {
            start: 0.0,
            stop: 30.0,
            points: 7,
            scale: None,
        },
        &mut t,
    )?;
    let rows = incoherent_sweep(&snrs, n_b, duration, &MCConfig::new(samples, seed))?;
    for r in rows {
        t.push(vec![
            r.snr_db.into(),
            r.fisher_incoherent.into(),
            r.fisher_coherent.into(),
            r.std_error.into(),
        ]);
    }
    emit(common, &t)
}
