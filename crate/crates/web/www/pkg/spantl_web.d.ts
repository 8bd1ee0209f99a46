/* tslint:disable */
/* eslint-disable */

/**
 * Per-size counts of the trees accepted by `nfta`, sizes 1 to `size`.
 */
export function count(nfta: string, size: number): string;

export function preset(name: string): string;

/**
 * Names of the bundled example machines, one per line.
 */
export function preset_names(): string;

/**
 * The tree automaton for `machine` on `input`, in the text format, headed by
 * its size bound as a comment.
 */
export function reduce(machine: string, input: string, bounds: string): string;

/**
 * Span of `machine` on `input`, with the outputs listed.
 */
export function span(machine: string, input: string, ordered: boolean, bounds: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly count: (a: number, b: number, c: number) => [number, number, number, number];
    readonly preset: (a: number, b: number) => [number, number, number, number];
    readonly preset_names: () => [number, number];
    readonly reduce: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly span: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
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
