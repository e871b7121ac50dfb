/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curveview_free: (a: number, b: number) => void;
export const __wbg_densityview_free: (a: number, b: number) => void;
export const audit: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const char_fn_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const curveview_phi: (a: number) => [number, number];
export const curveview_phi_n: (a: number) => [number, number];
export const curveview_zs: (a: number) => [number, number];
export const density: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const densityview_argmax: (a: number) => number;
export const densityview_certificate: (a: number) => number;
export const densityview_p: (a: number) => [number, number];
export const densityview_pn: (a: number) => [number, number];
export const densityview_sup_error: (a: number) => number;
export const densityview_xs: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
