/* tslint:disable */
/* eslint-disable */

/**
 * `{α,β}` on a built-in structure.
 */
export function bracket(fixture: string, a: string, b: string): string;

/**
 * Holonomy `exp(i∫)` of the oscillator (`dim = 2`) or sphere (`dim = 3`)
 * primitive on `samples` leaves with radius in `(0, r_max]`.
 */
export function holonomy_sweep(dim: number, r_max: number, samples: number): string;

/**
 * Bohr–Sommerfeld spheres of the gerbe `(1,0,B)` with radius in `(0, hi]`.
 */
export function sphere_radii(hi: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly bracket: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly holonomy_sweep: (a: number, b: number, c: number) => [number, number, number, number];
    readonly sphere_radii: (a: number, b: number) => [number, number, number, number];
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
