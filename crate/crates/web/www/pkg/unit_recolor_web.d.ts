/* tslint:disable */
/* eslint-disable */

/**
 * An incremental coloring session.
 */
export class Session {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * JSON update record, or an error naming the clique that blocks `x`.
     */
    insert(x: string): string;
    constructor(k: number);
    /**
     * JSON `{k, total_recolored, last, intervals: [{x, arrival, color}]}`.
     */
    state(): string;
}

export function colorArcs(input: string): string;

export function playFrogs(n: number, kappa: number, delta: number, strategy: string, seed: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_session_free: (a: number, b: number) => void;
    readonly colorArcs: (a: number, b: number) => [number, number, number, number];
    readonly playFrogs: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly session_insert: (a: number, b: number, c: number) => [number, number, number, number];
    readonly session_new: (a: number) => [number, number, number];
    readonly session_state: (a: number) => [number, number];
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
