import { ApiError } from "./api.js";
import { debounce, latestResponseGate } from "./debounce.js";
import type { AnalyzeRequest, RooflineReportDto } from "./types.js";

/** The slice of the API the store needs; ApiClient satisfies it. */
export interface AnalysisApi {
  analyze(request: AnalyzeRequest): Promise<RooflineReportDto>;
}

export interface Controls {
  networkPreset: string;
  area_mm2: number;
  freq_mhz: number;
  kind: "fixed" | "float32";
  bits: number;
  k: number;
  autoArray: boolean; // true: the server sizes the array from the budget
  arrayRows: number;
  arrayCols: number;
  transfer_rate_mhz: number;
  bus_width_bits: number;
  derating: number;
  spill: "onchip" | "spill";
}

export const DEFAULT_CONTROLS: Controls = {
  networkPreset: "resnet18",
  area_mm2: 1.0,
  freq_mhz: 800,
  kind: "fixed",
  bits: 4,
  k: 3,
  autoArray: false,
  arrayRows: 16,
  arrayCols: 16,
  transfer_rate_mhz: 2400,
  bus_width_bits: 64,
  derating: 1.0,
  spill: "onchip",
};

// Mirror of the ranges the API enforces; out-of-range entries are flagged
// before any request is sent.
export function validateControls(c: Controls): Partial<Record<keyof Controls, string>> {
  const errors: Partial<Record<keyof Controls, string>> = {};
  if (!(c.area_mm2 > 0)) errors.area_mm2 = "area must be > 0";
  if (!(c.freq_mhz > 0)) errors.freq_mhz = "frequency must be > 0";
  if (c.kind === "fixed" && !(Number.isInteger(c.bits) && c.bits >= 1 && c.bits <= 64)) {
    errors.bits = "bitwidth must be an integer in [1, 64]";
  }
  if (!(Number.isInteger(c.k) && c.k >= 1)) errors.k = "kernel side must be >= 1";
  if (!c.autoArray) {
    if (!(Number.isInteger(c.arrayRows) && c.arrayRows >= 1)) errors.arrayRows = "array rows must be >= 1";
    if (!(Number.isInteger(c.arrayCols) && c.arrayCols >= 1)) errors.arrayCols = "array cols must be >= 1";
  }
  if (!(c.transfer_rate_mhz > 0)) errors.transfer_rate_mhz = "transfer rate must be > 0";
  if (!(Number.isInteger(c.bus_width_bits) && c.bus_width_bits >= 1)) {
    errors.bus_width_bits = "bus width must be >= 1";
  }
  if (!(c.derating > 0 && c.derating <= 1)) errors.derating = "derating must be in (0, 1]";
  return errors;
}

export function controlsToRequest(c: Controls): AnalyzeRequest {
  const request: AnalyzeRequest = {
    network_preset: c.networkPreset,
    hardware: {
      area_mm2: c.area_mm2,
      freq_mhz: c.freq_mhz,
      kind: c.kind,
      b_w: c.bits,
      b_a: c.bits,
      k: c.k,
    },
    memory: {
      transfer_rate_mhz: c.transfer_rate_mhz,
      bus_width_bits: c.bus_width_bits,
      derating: c.derating,
    },
    spill: c.spill,
  };
  if (!c.autoArray) {
    request.hardware.array = [c.arrayRows, c.arrayCols];
  }
  return request;
}

export interface PinnedReport {
  label: string;
  report: RooflineReportDto;
}

export interface ExplorerState {
  controls: Controls;
  errors: Partial<Record<keyof Controls, string>>;
  report: RooflineReportDto | null; // last good report, kept during refresh
  apiError: string | null;
  pending: boolean;
  pinboard: readonly PinnedReport[];
}

export interface ExplorerStore {
  state(): ExplorerState;
  setControl<K extends keyof Controls>(name: K, value: Controls[K]): void;
  /** Issue the analyze request immediately (skips the debounce interval). */
  refreshNow(): void;
  pin(label: string): void;
  unpin(label: string): void;
}

export function createExplorerStore(
  api: AnalysisApi,
  onChange: (state: ExplorerState) => void,
  debounceMs = 150,
): ExplorerStore {
  const state: ExplorerState = {
    controls: { ...DEFAULT_CONTROLS },
    errors: {},
    report: null,
    apiError: null,
    pending: false,
    pinboard: [],
  };
  const gate = latestResponseGate<RooflineReportDto>();

  const notify = () => onChange(state);

  const submit = () => {
    state.errors = validateControls(state.controls);
    if (Object.keys(state.errors).length > 0) {
      gate.invalidate(); // a stale in-flight response must not land now
      state.pending = false;
      notify();
      return;
    }
    state.pending = true;
    notify();
    gate.dispatch(
      api.analyze(controlsToRequest(state.controls)),
      (report) => {
        state.report = report; // atomic swap; prior report retained until here
        state.apiError = null;
        state.pending = false;
        notify();
      },
      (err) => {
        state.apiError = err instanceof ApiError ? err.message : String(err);
        state.pending = false;
        notify();
      },
    );
  };
  const submitDebounced = debounce(submit, debounceMs);

  return {
    state: () => state,
    setControl(name, value) {
      state.controls[name] = value;
      state.errors = validateControls(state.controls);
      notify();
      if (Object.keys(state.errors).length === 0) {
        submitDebounced();
      } else {
        submitDebounced.cancel();
        gate.invalidate();
      }
    },
    refreshNow() {
      submitDebounced.cancel();
      submit();
    },
    pin(label) {
      if (!state.report) return;
      // pinned snapshots are immutable: deep-frozen copy, later control
      // changes never touch them
      const copy = deepFreeze(JSON.parse(JSON.stringify(state.report)));
      state.pinboard = Object.freeze([...state.pinboard, { label, report: copy }]);
      notify();
    },
    unpin(label) {
      state.pinboard = Object.freeze(state.pinboard.filter((p) => p.label !== label));
      notify();
    },
  };
}

function deepFreeze<T>(obj: T): T {
  if (obj && typeof obj === "object") {
    for (const value of Object.values(obj)) deepFreeze(value);
    Object.freeze(obj);
  }
  return obj;
}
