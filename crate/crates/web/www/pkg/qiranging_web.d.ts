/* tslint:disable */
/* eslint-disable */

/**
 * Normalized accuracy curves against SNR, stride 7:
 * `snr_db, zzb_classical_exact, zzb_classical_qcb, zzb_quantum_qcb,
 * crb_classical, crb_quantum, low_snr_quantum_qcb` (all in dB re σ_τ).
 *
 * Two trailing entries carry the quantum and classical threshold SNRs in dB
 * (`NaN` when the scenario is too narrow).
 */
export function accuracy_curves(delta_r_m: number, bandwidth_hz: number, snr_min_db: number, snr_max_db: number, points: number): Float64Array;

/**
 * Advantage at the quantum threshold against range uncertainty, stride 5:
 * `delta_r_m, threshold_db, qcb_vs_qcb_db, exact_vs_qcb_db, asymptotic_db`.
 * Too-narrow uncertainties yield `NaN` rows.
 */
export function advantage_vs_delta_r(bandwidth_hz: number, dr_min_m: number, dr_max_m: number, points: number): Float64Array;

/**
 * Pairwise error probabilities against delay offset for a Gaussian pulse,
 * stride 4: `tau_s, classical_exact, classical_chernoff, quantum_qcb`.
 */
export function pe_curves(snr_db: number, bandwidth_hz: number, tau_max_s: number, points: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly accuracy_curves: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly advantage_vs_delta_r: (a: number, b: number, c: number, d: number) => [number, number];
    readonly pe_curves: (a: number, b: number, c: number, d: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
