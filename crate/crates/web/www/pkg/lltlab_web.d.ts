/* tslint:disable */
/* eslint-disable */

export class CurveView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Re Φ(z).
     */
    readonly phi: Float64Array;
    /**
     * Re Φₙ(z).
     */
    readonly phi_n: Float64Array;
    readonly zs: Float64Array;
}

export class DensityView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly argmax: number;
    readonly certificate: number;
    readonly p: Float64Array;
    readonly pn: Float64Array;
    readonly sup_error: number;
    readonly xs: Float64Array;
}

/**
 * The condition audit as a text table.
 */
export function audit(model: string, n_values: Uint32Array): string;

/**
 * Re Φₙ and Re Φ on [0, z_max].
 */
export function char_fn_curve(model: string, n: number, z_max: number, points: number): CurveView;

/**
 * pₙ and p on `points` grid points over [x_min, x_max].
 */
export function density(model: string, n: number, x_min: number, x_max: number, points: number): DensityView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curveview_free: (a: number, b: number) => void;
    readonly __wbg_densityview_free: (a: number, b: number) => void;
    readonly audit: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly char_fn_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly curveview_phi: (a: number) => [number, number];
    readonly curveview_phi_n: (a: number) => [number, number];
    readonly curveview_zs: (a: number) => [number, number];
    readonly density: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly densityview_argmax: (a: number) => number;
    readonly densityview_certificate: (a: number) => number;
    readonly densityview_p: (a: number) => [number, number];
    readonly densityview_pn: (a: number) => [number, number];
    readonly densityview_sup_error: (a: number) => number;
    readonly densityview_xs: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
