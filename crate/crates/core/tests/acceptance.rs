//! Acceptance gate: one PASS/FAIL line per criterion. The exit status is
//! non-zero on any FAIL only when `ACCEPTANCE_STRICT` is set.

use std::f64::consts::{PI, SQRT_2};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qiranging::classical::{
    chernoff_exponent, crb_classical, fisher_delay_classical, threshold_snr_classical,
    zzb_classical_gaussian, DelayPrior, PeForm, RadarScenario,
};
use qiranging::curve::{db10, first_crossing, linspace, logspace};
use qiranging::incoherent::{
    fisher_incoherent_mc, pe_coherent_rect, pe_incoherent_rect, HeterodyneModel, MCConfig, RectForm,
};
use qiranging::quantum::{
    advantage_report, crb_quantum, crb_quantum_full, fit_alpha, qcb_exponent, qfi_delay_quantum,
    qfi_phase_tmsv, qfi_upper_bound, threshold_snr_quantum, zzb_qcb_quantum_gaussian, FitReference,
    ModePairState, OperatingPoint, QfiMode,
};
use qiranging::scenario::{advantage_contour, planck_brightness, RadarLink, RangeUncertainty};
use qiranging::waveform::{gaussian_mismatch, FluorescenceSpectrum, PulseShape};

const BW: f64 = 2.0 * PI * 1e6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn reference_prior() -> DelayPrior {
    DelayPrior::from_range_uncertainty(5e3).unwrap()
}

/// Root x ≥ 1 of x e^{-x} = y by plain bisection on [1, 60].
fn f_oracle(y: f64) -> f64 {
    let (mut lo, mut hi) = (1.0f64, 60.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid * (-mid).exp() > y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn threshold_gap() -> Outcome {
    let mut worst: f64 = 0.0;
    for dr in [1e3, 5e3, 20e3, 50e3] {
        let prior = DelayPrior::from_range_uncertainty(dr).unwrap();
        let gap = db10(threshold_snr_classical(&prior, BW).unwrap())
            - db10(threshold_snr_quantum(&prior, BW).unwrap());
        worst = worst.max((gap - 6.02).abs());
    }
    outcome(
        worst <= 0.01,
        format!("max |gap - 6.02 dB| = {worst:.2e} dB over 4 ranges"),
    )
}

/// SNR (dB) at which `curve` rises `gap` dB above `asymptote`, scanning down
/// from the high-SNR end.
fn departure(snr_db: &[f64], curve: &[f64], asymptote: &[f64], gap: f64) -> Option<f64> {
    let x: Vec<f64> = snr_db.iter().rev().map(|v| -v).collect();
    let a: Vec<f64> = asymptote.iter().rev().copied().collect();
    let c: Vec<f64> = curve.iter().rev().copied().collect();
    first_crossing(&x, &a, &c, -gap).map(|v| -v)
}

fn threshold_knees() -> Outcome {
    let prior = reference_prior();
    let sigma = prior.sigma();
    let y = 1.0 / (2.0 * BW * BW * sigma * sigma);
    let f = f_oracle(y);
    let q = db10(threshold_snr_quantum(&prior, BW).unwrap());
    let c = db10(threshold_snr_classical(&prior, BW).unwrap());
    let (oq, oc) = (db10(f / 2.0), db10(2.0 * f));
    let closed_ok = (q - 7.53).abs() <= 0.05
        && (c - 13.55).abs() <= 0.05
        && (q - oq).abs() <= 0.05
        && (c - oc).abs() <= 0.05;

    let snr_db = linspace(-5.0, 25.0, 61);
    let mut quantum = Vec::new();
    let mut quantum_crb = Vec::new();
    let mut classical = Vec::new();
    let mut classical_asym = Vec::new();
    for &db in &snr_db {
        let snr = 10f64.powf(db / 10.0);
        let s = RadarScenario::from_snr(snr, BW).unwrap();
        quantum.push(20.0 * (zzb_qcb_quantum_gaussian(&prior, snr, BW).unwrap() / sigma).log10());
        quantum_crb.push(20.0 * (crb_quantum(&s) / sigma).log10());
        classical.push(
            20.0 * (zzb_classical_gaussian(&prior, snr, BW, PeForm::Chernoff).unwrap() / sigma)
                .log10(),
        );
        classical_asym.push(20.0 * (SQRT_2 * crb_classical(&s) / sigma).log10());
    }
    let dq = departure(&snr_db, &quantum, &quantum_crb, 3.0);
    let dc = departure(&snr_db, &classical, &classical_asym, 3.0);
    let dep_ok =
        matches!((dq, dc), (Some(a), Some(b)) if (a - q).abs() <= 1.5 && (b - c).abs() <= 1.5);
    outcome(
        closed_ok && dep_ok,
        format!(
            "thresholds {q:.3}/{c:.3} dB (oracle {oq:.3}/{oc:.3}); 3 dB departures at {:.2}/{:.2} dB",
            dq.unwrap_or(f64::NAN),
            dc.unwrap_or(f64::NAN)
        ),
    )
}

fn crb_ratio() -> Outcome {
    let mut worst: f64 = 0.0;
    for db in linspace(-30.0, 60.0, 181) {
        let s = RadarScenario::from_snr(10f64.powf(db / 10.0), BW).unwrap();
        worst = worst.max((crb_quantum(&s) / crb_classical(&s) * SQRT_2 - 1.0).abs());
    }
    outcome(
        worst <= 1e-12,
        format!("max relative deviation from 1/sqrt(2): {worst:.1e}"),
    )
}

fn headline_advantage() -> Outcome {
    let r = advantage_report(&reference_prior(), BW, OperatingPoint::QuantumThreshold).unwrap();
    outcome(
        (r.advantage_qcb_vs_qcb_db - 28.0).abs() <= 3.0,
        format!(
            "QCB-vs-QCB {:.2} dB (target 28 +/- 3); exact-vs-QCB {:.2} dB; asymptotic {:.2} dB",
            r.advantage_qcb_vs_qcb_db, r.advantage_exact_vs_qcb_db, r.asymptotic_advantage_db
        ),
    )
}

fn alpha_fit() -> Outcome {
    let widths: Vec<f64> = logspace(1e3, 50e3, 12)
        .into_iter()
        .map(|dr| DelayPrior::from_range_uncertainty(dr).unwrap().width())
        .collect();
    let fit = fit_alpha(&widths, BW, FitReference::ExactVsQcb).unwrap();
    outcome(
        (fit.alpha_exponential - 0.14).abs() <= 0.04,
        format!(
            "alpha = {:.4} for alpha*e^(3f/4) (max residual {:.2} dB); alpha = {:.3} for alpha*(2 bw^2 sigma^2)^(3/4)",
            fit.alpha_exponential, fit.max_residual_db, fit.alpha_power_law
        ),
    )
}

fn planck() -> Outcome {
    let n_b = planck_brightness(2.0 * PI * 100e9, 150.0).unwrap();
    let divergence = (32.0 - n_b) / 32.0;
    outcome(
        (n_b - 30.8).abs() <= 0.1 && divergence.abs() <= 0.04,
        format!(
            "N_B = {n_b:.4}; {:.2}% below the rounded 32",
            100.0 * divergence
        ),
    )
}

fn asymptote_convergence() -> Outcome {
    let prior = reference_prior();
    let sigma = prior.sigma();
    let sc = threshold_snr_classical(&prior, BW).unwrap() * 10f64.powf(1.5);
    let sq = threshold_snr_quantum(&prior, BW).unwrap() * 10f64.powf(1.5);
    let crb_c = crb_classical(&RadarScenario::from_snr(sc, BW).unwrap());
    let crb_q = crb_quantum(&RadarScenario::from_snr(sq, BW).unwrap());
    let exact = zzb_classical_gaussian(&prior, sc, BW, PeForm::Exact).unwrap() / crb_c;
    let cqcb = zzb_classical_gaussian(&prior, sc, BW, PeForm::Chernoff).unwrap() / crb_c;
    let qqcb = zzb_qcb_quantum_gaussian(&prior, sq, BW).unwrap() / crb_q;
    let high_ok = (0.95..=1.05).contains(&exact)
        && (0.95 * SQRT_2..=1.05 * SQRT_2).contains(&cqcb)
        && (0.95..=1.05).contains(&qqcb);
    let low = [
        zzb_classical_gaussian(&prior, 1e-4, BW, PeForm::Exact).unwrap(),
        zzb_classical_gaussian(&prior, 1e-4, BW, PeForm::Chernoff).unwrap(),
        zzb_qcb_quantum_gaussian(&prior, 1e-4, BW).unwrap(),
    ];
    let low_dev = low
        .iter()
        .map(|v| (v / sigma - 1.0).abs())
        .fold(0.0, f64::max);
    outcome(
        high_ok && low_dev <= 0.01,
        format!(
            "high-SNR ratios {exact:.4} / {:.4}*sqrt2 / {qqcb:.4}; low-SNR max deviation {low_dev:.2e}",
            cqcb / SQRT_2
        ),
    )
}

/// Trapezoid over a wide uniform grid: ∫dω/2π ω² J(S(ω)) T.
fn full_qfi_oracle(n_s: f64, t: f64, kappa: f64, n_b: f64) -> f64 {
    let n = 20_001;
    let span = 12.0 * BW;
    let h = 2.0 * span / (n - 1) as f64;
    let mut acc = 0.0;
    for i in 0..n {
        let w = -span + i as f64 * h;
        let s = (2.0 * PI).sqrt() * n_s * (-0.5 * (w / BW).powi(2)).exp();
        let j = 4.0 * kappa * s * (s + 1.0) / (1.0 + n_b * (2.0 * s + 1.0) + (1.0 - kappa) * s);
        let weight = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        acc += weight * w * w * j;
    }
    acc * h / (2.0 * PI) * t
}

fn qfi_identities() -> Outcome {
    let (kappa, n_b, t) = (1e-6, 1e3, 1e-3);
    let dim = FluorescenceSpectrum::gaussian(1e-3, BW, t).unwrap();
    let q = qfi_delay_quantum(&dim, kappa, n_b, QfiMode::Asymptotic).unwrap();
    let s = RadarScenario::from_budget(kappa, dim.energy(), n_b, BW).unwrap();
    let identity = (q / (2.0 * fisher_delay_classical(&s)) - 1.0).abs();

    let m = ModePairState::new(1e-3, kappa, n_b).unwrap();
    let saturation = qfi_phase_tmsv(&m) / qfi_upper_bound(1e-3, kappa, n_b).unwrap();

    let bright = FluorescenceSpectrum::gaussian(100.0, BW, t).unwrap();
    let full = qfi_delay_quantum(&bright, kappa, n_b, QfiMode::Full).unwrap();
    let oracle = full_qfi_oracle(100.0, t, kappa, n_b);
    let bright_s = RadarScenario::from_snr(kappa * bright.energy() / n_b, BW).unwrap();
    let crb_ratio = crb_quantum_full(&bright, kappa, n_b).unwrap() / crb_classical(&bright_s);
    let pass = identity <= 1e-12
        && (0.99..=1.0).contains(&saturation)
        && (full / oracle - 1.0).abs() <= 1e-6
        && (crb_ratio - 1.0).abs() <= 0.05;
    outcome(
        pass,
        format!(
            "F_Q/2F_C - 1 = {identity:.1e}; TMSV/UB = {saturation:.5}; bright CRB_Q/CRB_C = {crb_ratio:.4} (oracle agreement {:.1e})",
            (full / oracle - 1.0).abs()
        ),
    )
}

fn incoherent_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut x = 0.377f64;
    let mut next = || {
        x = (x * 7411.0 + 0.3187).fract();
        x
    };
    for _ in 0..10_000 {
        let t_s = 1e-9 * 1e6f64.powf(next());
        let ke = 1e-2 * 1e6f64.powf(next());
        let n_b = 1e3 * next();
        let tau = 3.0 * t_s * next();
        let a = pe_incoherent_rect(t_s, ke, n_b, tau).unwrap().value();
        let b = pe_coherent_rect(t_s, ke, n_b, tau, RectForm::Chernoff)
            .unwrap()
            .value();
        worst = worst.max((a - b).abs());
    }
    let n_b = 100.0;
    let energy = 1e3 * (n_b + 1.0);
    let model = HeterodyneModel::new(
        1.0,
        energy,
        n_b,
        PulseShape::transform_limited(1e-6).unwrap(),
    )
    .unwrap();
    let est = fisher_incoherent_mc(&model, &MCConfig::new(100_000, 2024), 0.0).unwrap();
    let coh = model.coherent_fisher().unwrap();
    let ratio = est.estimate / coh;
    outcome(
        worst <= 1e-14 && (ratio - 1.0).abs() <= 0.10,
        format!(
            "max |Pe_incoh - Pe_coh,chernoff| = {worst:.1e}; MC/coherent Fisher = {ratio:.4} +/- {:.4}",
            est.std_error / coh
        ),
    )
}

fn exponent_ratio() -> Outcome {
    let mut worst: f64 = 0.0;
    for db in linspace(-30.0, 40.0, 71) {
        let snr = 10f64.powf(db / 10.0);
        for k in 1..=200 {
            let gamma = gaussian_mismatch(BW, k as f64 * 0.05 / BW);
            let r = qcb_exponent(snr, gamma) / chernoff_exponent(snr, gamma);
            worst = worst.max((r - 4.0).abs());
        }
    }
    outcome(worst == 0.0, format!("max |ratio - 4| = {worst:.1e}"))
}

fn contour_iso_advantage() -> Outcome {
    let template = RadarLink {
        carrier: 2.0 * PI * 100e9,
        antenna_area: 1.0,
        cross_section: 0.01,
        noise_temp: 150.0,
        range: 100.0,
        range_uncertainty: RangeUncertainty::Fraction(0.01),
        pulse_duration: 1.0,
        bandwidth: 2.0 * PI * 1e9,
        signal_brightness: None,
    };
    // Adjacent range steps are a factor 10^(1/9), duration steps 10^(4/9),
    // so cell (i, j) and (i + 1, j + 1) lie on the same T/R^4 line.
    let ranges = logspace(100.0, 1000.0, 10);
    let durations = logspace(0.01, 100.0, 10);
    let c = advantage_contour(&template, &ranges, &durations).unwrap();
    let n = ranges.len();
    let mut worst: f64 = 0.0;
    let mut worst_line = 0i64;
    let mut lines = 0;
    for offset in -(n as i64 - 2)..=(n as i64 - 2) {
        let vals: Vec<f64> = (0..n as i64)
            .filter_map(|i| {
                let j = i + offset;
                (0..n as i64)
                    .contains(&j)
                    .then(|| c.cell(i as usize, j as usize).advantage_db)
                    .flatten()
            })
            .collect();
        if vals.len() < 2 {
            continue;
        }
        lines += 1;
        let spread = vals.iter().cloned().fold(f64::MIN, f64::max)
            - vals.iter().cloned().fold(f64::MAX, f64::min);
        if spread > worst {
            worst = spread;
            worst_line = offset;
        }
    }
    let missing = c.cells.iter().filter(|x| x.advantage_db.is_none()).count();
    outcome(
        worst < 1.0 && lines > 0,
        format!(
            "max spread along {lines} T/R^4 lines = {worst:.2} dB (line offset {worst_line}); {missing} missing cells"
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 threshold gap", threshold_gap, Duration::from_secs(1)),
        (
            "2 thresholds and knees",
            threshold_knees,
            Duration::from_secs(30),
        ),
        ("3 CRB ratio", crb_ratio, Duration::from_secs(1)),
        (
            "4 headline advantage",
            headline_advantage,
            Duration::from_secs(10),
        ),
        ("5 alpha fit", alpha_fit, Duration::from_secs(300)),
        ("6 Planck brightness", planck, Duration::from_secs(1)),
        (
            "7 asymptote convergence",
            asymptote_convergence,
            Duration::from_secs(60),
        ),
        ("8 QFI identities", qfi_identities, Duration::from_secs(10)),
        (
            "9 incoherent equivalence",
            incoherent_equivalence,
            Duration::from_secs(300),
        ),
        ("10 exponent ratio", exponent_ratio, Duration::from_secs(1)),
        (
            "11 iso-advantage contour",
            contour_iso_advantage,
            Duration::from_secs(120),
        ),
    ];
    let mut failures = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (
                false,
                format!(
                    "panicked: {}",
                    e.downcast_ref::<String>()
                        .cloned()
                        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_default()
                ),
            ),
        };
        let in_time = elapsed <= budget;
        let ok = pass && in_time;
        if !ok {
            failures += 1;
        }
        println!(
            "{} criterion {name}: {detail} [{:.2?}{}]",
            if ok { "PASS" } else { "FAIL" },
            elapsed,
            if in_time {
                String::new()
            } else {
                format!(" > budget {budget:?}")
            }
        );
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failures);
    // Red criteria are reported above; set ACCEPTANCE_STRICT=1 to turn them
    // into a failing exit status.
    if failures > 0 && std::env::var_os("ACCEPTANCE_STRICT").is_some_and(|v| v != "0") {
        std::process::exit(1);
    }
}
