/* tslint:disable */
/* eslint-disable */

/**
 * Commutativity, the Jordan identity and, for Jordan algebras, the
 * invariants. Accepts the JSON algebra format or a catalog label.
 */
export function check_algebra(input: string): string;

/**
 * Degeneration graph of `dim2` or `dim3` with its primary edges, rigid
 * algebras and components. Recorded Gröbner reductions are trusted.
 */
export function degeneration_graph(name: string): string;

/**
 * Shipped witnesses as `source->target [origin]` names.
 */
export function witness_list(name: string): string;

/**
 * Structure constants of the `index`-th shipped witness at `t = num/den`,
 * next to their limits and the target's constants.
 */
export function witness_slice(name: string, index: number, num: number, den: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly check_algebra: (a: number, b: number) => [number, number];
    readonly degeneration_graph: (a: number, b: number) => [number, number];
    readonly witness_list: (a: number, b: number) => [number, number];
    readonly witness_slice: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
