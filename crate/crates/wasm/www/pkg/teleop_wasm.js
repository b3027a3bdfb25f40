/* @ts-self-types="./teleop_wasm.d.ts" */

/**
 * Indicator output for one torque sample.
 */
export class RtiView {
    static __wrap(ptr) {
        const obj = Object.create(RtiView.prototype);
        obj.__wbg_ptr = ptr;
        RtiViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        RtiViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_rtiview_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get b() {
        const ret = wasm.__wbg_get_rtiview_b(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get fill() {
        const ret = wasm.__wbg_get_rtiview_fill(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get g() {
        const ret = wasm.__wbg_get_rtiview_g(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get r() {
        const ret = wasm.__wbg_get_rtiview_r(this.__wbg_ptr);
        return ret;
    }
    /**
     * CSS color string, e.g. `rgb(0,255,0)`.
     * @returns {string}
     */
    get css() {
        let deferred1_0;
        let deferred1_1;
        try {
            const ret = wasm.rtiview_css(this.__wbg_ptr);
            deferred1_0 = ret[0];
            deferred1_1 = ret[1];
            return getStringFromWasm0(ret[0], ret[1]);
        } finally {
            wasm.__wbindgen_free(deferred1_0, deferred1_1, 1);
        }
    }
    /**
     * @returns {string}
     */
    get zone() {
        let deferred1_0;
        let deferred1_1;
        try {
            const ret = wasm.rtiview_zone(this.__wbg_ptr);
            deferred1_0 = ret[0];
            deferred1_1 = ret[1];
            return getStringFromWasm0(ret[0], ret[1]);
        } finally {
            wasm.__wbindgen_free(deferred1_0, deferred1_1, 1);
        }
    }
    /**
     * @param {number} arg0
     */
    set b(arg0) {
        wasm.__wbg_set_rtiview_b(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set fill(arg0) {
        wasm.__wbg_set_rtiview_fill(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set g(arg0) {
        wasm.__wbg_set_rtiview_g(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set r(arg0) {
        wasm.__wbg_set_rtiview_r(this.__wbg_ptr, arg0);
    }
}
if (Symbol.dispose) RtiView.prototype[Symbol.dispose] = RtiView.prototype.free;

/**
 * Result of one simulated trial.
 */
export class TrialView {
    static __wrap(ptr) {
        const obj = Object.create(TrialView.prototype);
        obj.__wbg_ptr = ptr;
        TrialViewFinalization.register(obj, obj.__wbg_ptr, obj);
        return obj;
    }
    __destroy_into_raw() {
        const ptr = this.__wbg_ptr;
        this.__wbg_ptr = 0;
        TrialViewFinalization.unregister(this);
        return ptr;
    }
    free() {
        const ptr = this.__destroy_into_raw();
        wasm.__wbg_trialview_free(ptr, 0);
    }
    /**
     * @returns {number}
     */
    get high_pct() {
        const ret = wasm.__wbg_get_trialview_high_pct(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get low_pct() {
        const ret = wasm.__wbg_get_trialview_low_pct(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get mae() {
        const ret = wasm.__wbg_get_trialview_mae(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get opt_pct() {
        const ret = wasm.__wbg_get_trialview_opt_pct(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get window_end_s() {
        const ret = wasm.__wbg_get_trialview_window_end_s(this.__wbg_ptr);
        return ret;
    }
    /**
     * @returns {number}
     */
    get window_start_s() {
        const ret = wasm.__wbg_get_trialview_window_start_s(this.__wbg_ptr);
        return ret;
    }
    /**
     * @param {number} arg0
     */
    set high_pct(arg0) {
        wasm.__wbg_set_trialview_high_pct(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set low_pct(arg0) {
        wasm.__wbg_set_trialview_low_pct(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set mae(arg0) {
        wasm.__wbg_set_trialview_mae(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set opt_pct(arg0) {
        wasm.__wbg_set_trialview_opt_pct(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set window_end_s(arg0) {
        wasm.__wbg_set_trialview_window_end_s(this.__wbg_ptr, arg0);
    }
    /**
     * @param {number} arg0
     */
    set window_start_s(arg0) {
        wasm.__wbg_set_trialview_window_start_s(this.__wbg_ptr, arg0);
    }
    /**
     * @returns {string}
     */
    get label() {
        let deferred1_0;
        let deferred1_1;
        try {
            const ret = wasm.trialview_label(this.__wbg_ptr);
            deferred1_0 = ret[0];
            deferred1_1 = ret[1];
            return getStringFromWasm0(ret[0], ret[1]);
        } finally {
            wasm.__wbindgen_free(deferred1_0, deferred1_1, 1);
        }
    }
    /**
     * Sample times (s) of the decimated traces.
     * @returns {Float64Array}
     */
    get times() {
        const ret = wasm.trialview_times(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * Follower gripper reaction estimate (Nm).
     * @returns {Float64Array}
     */
    get torques() {
        const ret = wasm.trialview_torques(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
    /**
     * Largest leader/follower angle mismatch over all joints (rad).
     * @returns {Float64Array}
     */
    get tracking() {
        const ret = wasm.trialview_tracking(this.__wbg_ptr);
        var v1 = getArrayF64FromWasm0(ret[0], ret[1]).slice();
        wasm.__wbindgen_free(ret[0], ret[1] * 8, 8);
        return v1;
    }
}
if (Symbol.dispose) TrialView.prototype[Symbol.dispose] = TrialView.prototype.free;

/**
 * @param {number} from
 * @param {number} to
 * @param {number} n
 * @returns {Uint8Array}
 */
export function colorRamp(from, to, n) {
    const ret = wasm.colorRamp(from, to, n);
    if (ret[3]) {
        throw takeFromExternrefTable0(ret[2]);
    }
    var v1 = getArrayU8FromWasm0(ret[0], ret[1]).slice();
    wasm.__wbindgen_free(ret[0], ret[1] * 1, 1);
    return v1;
}

/**
 * @param {number} tau
 * @returns {RtiView}
 */
export function renderRti(tau) {
    const ret = wasm.renderRti(tau);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return RtiView.__wrap(ret[0]);
}

/**
 * @param {string} scenario
 * @param {string} object
 * @param {string} operator
 * @param {number} seed
 * @param {number} latency_ms
 * @returns {TrialView}
 */
export function simulateTrial(scenario, object, operator, seed, latency_ms) {
    const ptr0 = passStringToWasm0(scenario, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
    const len0 = WASM_VECTOR_LEN;
    const ptr1 = passStringToWasm0(object, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
    const len1 = WASM_VECTOR_LEN;
    const ptr2 = passStringToWasm0(operator, wasm.__wbindgen_malloc, wasm.__wbindgen_realloc);
    const len2 = WASM_VECTOR_LEN;
    const ret = wasm.simulateTrial(ptr0, len0, ptr1, len1, ptr2, len2, seed, latency_ms);
    if (ret[2]) {
        throw takeFromExternrefTable0(ret[1]);
    }
    return TrialView.__wrap(ret[0]);
}
function __wbg_get_imports() {
    const import0 = {
        __proto__: null,
        __wbg_Error_30c8987f7c2ed4e2: function(arg0, arg1) {
            const ret = Error(getStringFromWasm0(arg0, arg1));
            return ret;
        },
        __wbg___wbindgen_throw_41e9ee4f547fc59a: function(arg0, arg1) {
            throw new Error(getStringFromWasm0(arg0, arg1));
        },
        __wbindgen_init_externref_table: function() {
            const table = wasm.__wbindgen_externrefs;
            const offset = table.grow(4);
            table.set(0, undefined);
            table.set(offset + 0, undefined);
            table.set(offset + 1, null);
            table.set(offset + 2, true);
            table.set(offset + 3, false);
        },
    };
    return {
        __proto__: null,
        "./teleop_wasm_bg.js": import0,
    };
}

const RtiViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_rtiview_free(ptr, 1));
const TrialViewFinalization = (typeof FinalizationRegistry === 'undefined')
    ? { register: () => {}, unregister: () => {} }
    : new FinalizationRegistry(ptr => wasm.__wbg_trialview_free(ptr, 1));

function getArrayF64FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getFloat64ArrayMemory0().subarray(ptr / 8, ptr / 8 + len);
}

function getArrayU8FromWasm0(ptr, len) {
    ptr = ptr >>> 0;
    return getUint8ArrayMemory0().subarray(ptr / 1, ptr / 1 + len);
}

let cachedFloat64ArrayMemory0 = null;
function getFloat64ArrayMemory0() {
    if (cachedFloat64ArrayMemory0 === null || cachedFloat64ArrayMemory0.byteLength === 0) {
        cachedFloat64ArrayMemory0 = new Float64Array(wasm.memory.buffer);
    }
    return cachedFloat64ArrayMemory0;
}

function getStringFromWasm0(ptr, len) {
    return decodeText(ptr >>> 0, len);
}

let cachedUint8ArrayMemory0 = null;
function getUint8ArrayMemory0() {
    if (cachedUint8ArrayMemory0 === null || cachedUint8ArrayMemory0.byteLength === 0) {
        cachedUint8ArrayMemory0 = new Uint8Array(wasm.memory.buffer);
    }
    return cachedUint8ArrayMemory0;
}

function passStringToWasm0(arg, malloc, realloc) {
    if (realloc === undefined) {
        const buf = cachedTextEncoder.encode(arg);
        const ptr = malloc(buf.length, 1) >>> 0;
        getUint8ArrayMemory0().subarray(ptr, ptr + buf.length).set(buf);
        WASM_VECTOR_LEN = buf.length;
        return ptr;
    }

    let len = arg.length;
    let ptr = malloc(len, 1) >>> 0;

    const mem = getUint8ArrayMemory0();

    let offset = 0;

    for (; offset < len; offset++) {
        const code = arg.charCodeAt(offset);
        if (code > 0x7F) break;
        mem[ptr + offset] = code;
    }
    if (offset !== len) {
        if (offset !== 0) {
            arg = arg.slice(offset);
        }
        ptr = realloc(ptr, len, len = offset + arg.length * 3, 1) >>> 0;
        const view = getUint8ArrayMemory0().subarray(ptr + offset, ptr + len);
        const ret = cachedTextEncoder.encodeInto(arg, view);

        offset += ret.written;
        ptr = realloc(ptr, len, offset, 1) >>> 0;
    }

    WASM_VECTOR_LEN = offset;
    return ptr;
}

function takeFromExternrefTable0(idx) {
    const value = wasm.__wbindgen_externrefs.get(idx);
    wasm.__externref_table_dealloc(idx);
    return value;
}

let cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
cachedTextDecoder.decode();
const MAX_SAFARI_DECODE_BYTES = 2146435072;
let numBytesDecoded = 0;
function decodeText(ptr, len) {
    numBytesDecoded += len;
    if (numBytesDecoded >= MAX_SAFARI_DECODE_BYTES) {
        cachedTextDecoder = new TextDecoder('utf-8', { ignoreBOM: true, fatal: true });
        cachedTextDecoder.decode();
        numBytesDecoded = len;
    }
    return cachedTextDecoder.decode(getUint8ArrayMemory0().subarray(ptr, ptr + len));
}

const cachedTextEncoder = new TextEncoder();

if (!('encodeInto' in cachedTextEncoder)) {
    cachedTextEncoder.encodeInto = function (arg, view) {
        const buf = cachedTextEncoder.encode(arg);
        view.set(buf);
        return {
            read: arg.length,
            written: buf.length
        };
    };
}

let WASM_VECTOR_LEN = 0;

let wasmModule, wasmInstance, wasm;
function __wbg_finalize_init(instance, module) {
    wasmInstance = instance;
    wasm = instance.exports;
    wasmModule = module;
    cachedFloat64ArrayMemory0 = null;
    cachedUint8ArrayMemory0 = null;
    wasm.__wbindgen_start();
    return wasm;
}

async function __wbg_load(module, imports) {
    if (typeof Response === 'function' && module instanceof Response) {
        if (!module.ok) {
            throw new Error(`failed to fetch Wasm: ${module.status} ${module.statusText} fetching '${module.url}'`);
        }

        if (typeof WebAssembly.instantiateStreaming === 'function') {
            try {
                return await WebAssembly.instantiateStreaming(module, imports);
            } catch (e) {
                const validResponse = expectedResponseType(module.type);

                if (validResponse && module.headers.get('Content-Type') !== 'application/wasm') {
                    console.warn("`WebAssembly.instantiateStreaming` failed because your server does not serve Wasm with `application/wasm` MIME type. Falling back to `WebAssembly.instantiate` which is slower. Original error:\n", e);

                } else { throw e; }
            }
        }

        const bytes = await module.arrayBuffer();
        return await WebAssembly.instantiate(bytes, imports);
    } else {
        const instance = await WebAssembly.instantiate(module, imports);

        if (instance instanceof WebAssembly.Instance) {
            return { instance, module };
        } else {
            return instance;
        }
    }

    function expectedResponseType(type) {
        switch (type) {
            case 'basic': case 'cors': case 'default': return true;
        }
        return false;
    }
}

function initSync(module) {
    if (wasm !== undefined) return wasm;


    if (module !== undefined) {
        if (Object.getPrototypeOf(module) === Object.prototype) {
            ({module} = module)
        } else {
            console.warn('using deprecated parameters for `initSync()`; pass a single object instead')
        }
    }

    const imports = __wbg_get_imports();
    if (!(module instanceof WebAssembly.Module)) {
        module = new WebAssembly.Module(module);
    }
    const instance = new WebAssembly.Instance(module, imports);
    return __wbg_finalize_init(instance, module);
}

async function __wbg_init(module_or_path) {
    if (wasm !== undefined) return wasm;


    if (module_or_path !== undefined) {
        if (Object.getPrototypeOf(module_or_path) === Object.prototype) {
            ({module_or_path} = module_or_path)
        } else {
            console.warn('using deprecated parameters for the initialization function; pass a single object instead')
        }
    }

    if (module_or_path === undefined) {
        module_or_path = new URL('teleop_wasm_bg.wasm', import.meta.url);
    }
    const imports = __wbg_get_imports();

    if (typeof module_or_path === 'string' || (typeof Request === 'function' && module_or_path instanceof Request) || (typeof URL === 'function' && module_or_path instanceof URL)) {
        module_or_path = fetch(module_or_path);
    }

    const { instance, module } = await __wbg_load(await module_or_path, imports);

    return __wbg_finalize_init(instance, module);
}

export { initSync, __wbg_init as default };
