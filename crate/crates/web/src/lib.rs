//! Browser bindings for the interactive demo in `www/`.
//!
//! Every export returns a flat row-major `Float64Array`; the row stride is
//! given in each function's docs. Failed points come back as `NaN`.

use std::f64::consts::PI;

use qiranging::classical::{chernoff_exponent, pe_exact_from_mismatch, DelayPrior};
use qiranging::curve::{db10, linspace, logspace};
use qiranging::quantum::{advantage_report, qcb_exponent, OperatingPoint};
use qiranging::scenario::accuracy_sweep;
use qiranging::waveform::gaussian_mismatch;
use wasm_bindgen::prelude::*;

fn js_err(e: qiranging::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Normalized accuracy curves against SNR, stride 7:
/// `snr_db, zzb_classical_exact, zzb_classical_qcb, zzb_quantum_qcb,
/// crb_classical, crb_quantum, low_snr_quantum_qcb` (all in dB re σ_τ).
///
/// Two trailing entries carry the quantum and classical threshold SNRs in dB
/// (`NaN` when the scenario is too narrow).
#[wasm_bindgen]
pub fn accuracy_curves(
    delta_r_m: f64,
    bandwidth_hz: f64,
    snr_min_db: f64,
    snr_max_db: f64,
    points: usize,
) -> Result<Vec<f64>, JsError> {
    let prior = DelayPrior::from_range_uncertainty(delta_r_m).map_err(js_err)?;
    let snr = linspace(snr_min_db, snr_max_db, points.max(2));
    let s = accuracy_sweep(&prior, 2.0 * PI * bandwidth_hz, &snr).map_err(js_err)?;
    let mut out = Vec::with_capacity(snr.len() * 7 + 2);
    for i in 0..snr.len() {
        out.extend_from_slice(&[
            s.snr_db[i],
            s.zzb_classical_exact_db[i],
            s.zzb_classical_qcb_db[i],
            s.zzb_quantum_qcb_db[i],
            s.crb_classical_db[i],
            s.crb_quantum_db[i],
            s.low_snr_quantum_qcb_db[i],
        ]);
    }
    out.push(s.snr_thresh_quantum_db.unwrap_or(f64::NAN));
    out.push(s.snr_thresh_classical_db.unwrap_or(f64::NAN));
    Ok(out)
}

/// Advantage at the quantum threshold against range uncertainty, stride 5:
/// `delta_r_m, threshold_db, qcb_vs_qcb_db, exact_vs_qcb_db, asymptotic_db`.
/// Too-narrow uncertainties yield `NaN` rows.
#[wasm_bindgen]
pub fn advantage_vs_delta_r(
    bandwidth_hz: f64,
    dr_min_m: f64,
    dr_max_m: f64,
    points: usize,
) -> Vec<f64> {
    let bw = 2.0 * PI * bandwidth_hz;
    let mut out = Vec::with_capacity(points * 5);
    for dr in logspace(dr_min_m, dr_max_m, points.max(2)) {
        let row = DelayPrior::from_range_uncertainty(dr)
            .and_then(|p| advantage_report(&p, bw, OperatingPoint::QuantumThreshold));
        match row {
            Ok(r) => out.extend_from_slice(&[
                dr,
                db10(r.snr_thresh_quantum),
                r.advantage_qcb_vs_qcb_db,
                r.advantage_exact_vs_qcb_db,
                r.asymptotic_advantage_db,
            ]),
            Err(_) => out.extend_from_slice(&[dr, f64::NAN, f64::NAN, f64::NAN, f64::NAN]),
        }
    }
    out
}

/// Pairwise error probabilities against delay offset for a Gaussian pulse,
/// stride 4: `tau_s, classical_exact, classical_chernoff, quantum_qcb`.
#[wasm_bindgen]
pub fn pe_curves(snr_db: f64, bandwidth_hz: f64, tau_max_s: f64, points: usize) -> Vec<f64> {
    let snr = 10f64.powf(snr_db / 10.0);
    let bw = 2.0 * PI * bandwidth_hz;
    let mut out = Vec::with_capacity(points * 4);
    for tau in linspace(0.0, tau_max_s, points.max(2)) {
        let g = gaussian_mismatch(bw, tau);
        out.extend_from_slice(&[
            tau,
            pe_exact_from_mismatch(snr, g),
            0.5 * (-chernoff_exponent(snr, g)).exp(),
            0.5 * (-qcb_exponent(snr, g)).exp(),
        ]);
    }
    out
}
