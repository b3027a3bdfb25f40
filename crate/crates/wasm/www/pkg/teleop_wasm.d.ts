/* tslint:disable */
/* eslint-disable */

/**
 * Indicator output for one torque sample.
 */
export class RtiView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    b: number;
    fill: number;
    g: number;
    r: number;
    /**
     * CSS color string, e.g. `rgb(0,255,0)`.
     */
    readonly css: string;
    readonly zone: string;
}

/**
 * Result of one simulated trial.
 */
export class TrialView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    high_pct: number;
    low_pct: number;
    mae: number;
    opt_pct: number;
    window_end_s: number;
    window_start_s: number;
    readonly label: string;
    /**
     * Sample times (s) of the decimated traces.
     */
    readonly times: Float64Array;
    /**
     * Follower gripper reaction estimate (Nm).
     */
    readonly torques: Float64Array;
    /**
     * Largest leader/follower angle mismatch over all joints (rad).
     */
    readonly tracking: Float64Array;
}

export function colorRamp(from: number, to: number, n: number): Uint8Array;

export function renderRti(tau: number): RtiView;

export function simulateTrial(scenario: string, object: string, operator: string, seed: number, latency_ms: number): TrialView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_get_rtiview_b: (a: number) => number;
    readonly __wbg_get_rtiview_fill: (a: number) => number;
    readonly __wbg_get_rtiview_g: (a: number) => number;
    readonly __wbg_get_rtiview_r: (a: number) => number;
    readonly __wbg_get_trialview_high_pct: (a: number) => number;
    readonly __wbg_get_trialview_low_pct: (a: number) => number;
    readonly __wbg_get_trialview_mae: (a: number) => number;
    readonly __wbg_get_trialview_opt_pct: (a: number) => number;
    readonly __wbg_get_trialview_window_end_s: (a: number) => number;
    readonly __wbg_get_trialview_window_start_s: (a: number) => number;
    readonly __wbg_rtiview_free: (a: number, b: number) => void;
    readonly __wbg_set_rtiview_b: (a: number, b: number) => void;
    readonly __wbg_set_rtiview_fill: (a: number, b: number) => void;
    readonly __wbg_set_rtiview_g: (a: number, b: number) => void;
    readonly __wbg_set_rtiview_r: (a: number, b: number) => void;
    readonly __wbg_set_trialview_high_pct: (a: number, b: number) => void;
    readonly __wbg_set_trialview_low_pct: (a: number, b: number) => void;
    readonly __wbg_set_trialview_mae: (a: number, b: number) => void;
    readonly __wbg_set_trialview_opt_pct: (a: number, b: number) => void;
    readonly __wbg_set_trialview_window_end_s: (a: number, b: number) => void;
    readonly __wbg_set_trialview_window_start_s: (a: number, b: number) => void;
    readonly __wbg_trialview_free: (a: number, b: number) => void;
    readonly colorRamp: (a: number, b: number, c: number) => [number, number, number, number];
    readonly renderRti: (a: number) => [number, number, number];
    readonly rtiview_css: (a: number) => [number, number];
    readonly rtiview_zone: (a: number) => [number, number];
    readonly simulateTrial: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
    readonly trialview_label: (a: number) => [number, number];
    readonly trialview_times: (a: number) => [number, number];
    readonly trialview_torques: (a: number) => [number, number];
    readonly trialview_tracking: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
