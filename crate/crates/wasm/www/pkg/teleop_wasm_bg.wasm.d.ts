/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_get_rtiview_b: (a: number) => number;
export const __wbg_get_rtiview_fill: (a: number) => number;
export const __wbg_get_rtiview_g: (a: number) => number;
export const __wbg_get_rtiview_r: (a: number) => number;
export const __wbg_get_trialview_high_pct: (a: number) => number;
export const __wbg_get_trialview_low_pct: (a: number) => number;
export const __wbg_get_trialview_mae: (a: number) => number;
export const __wbg_get_trialview_opt_pct: (a: number) => number;
export const __wbg_get_trialview_window_end_s: (a: number) => number;
export const __wbg_get_trialview_window_start_s: (a: number) => number;
export const __wbg_rtiview_free: (a: number, b: number) => void;
export const __wbg_set_rtiview_b: (a: number, b: number) => void;
export const __wbg_set_rtiview_fill: (a: number, b: number) => void;
export const __wbg_set_rtiview_g: (a: number, b: number) => void;
export const __wbg_set_rtiview_r: (a: number, b: number) => void;
export const __wbg_set_trialview_high_pct: (a: number, b: number) => void;
export const __wbg_set_trialview_low_pct: (a: number, b: number) => void;
export const __wbg_set_trialview_mae: (a: number, b: number) => void;
export const __wbg_set_trialview_opt_pct: (a: number, b: number) => void;
export const __wbg_set_trialview_window_end_s: (a: number, b: number) => void;
export const __wbg_set_trialview_window_start_s: (a: number, b: number) => void;
export const __wbg_trialview_free: (a: number, b: number) => void;
export const colorRamp: (a: number, b: number, c: number) => [number, number, number, number];
export const renderRti: (a: number) => [number, number, number];
export const rtiview_css: (a: number) => [number, number];
export const rtiview_zone: (a: number) => [number, number];
export const simulateTrial: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
export const trialview_label: (a: number) => [number, number];
export const trialview_times: (a: number) => [number, number];
export const trialview_torques: (a: number) => [number, number];
export const trialview_tracking: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
