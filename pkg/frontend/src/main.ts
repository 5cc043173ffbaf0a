import { ApiClient } from "./api.js";
import { renderRooflineChart } from "./chart.js";
import { createExplorerStore, DEFAULT_CONTROLS, type Controls, type ExplorerState } from "./state.js";
import { renderLayerTable, renderSummary } from "./table.js";

const api = new ApiClient("");

const el = (id: string) => {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
};

function render(state: ExplorerState): void {
  el("status").textContent = state.pending ? "computing..." : "";
  const errorPanel = el("error-panel");
  if (state.apiError) {
    errorPanel.textContent = state.apiError;
    errorPanel.classList.remove("hidden");
  } else {
    errorPanel.classList.add("hidden");
  }
  for (const [field, message] of Object.entries(state.errors)) {
    const slot = document.querySelector(`[data-error-for="${field}"]`);
    if (slot) slot.textContent = message ?? "";
  }
  document.querySelectorAll("[data-error-for]").forEach((slot) => {
    const field = slot.getAttribute("data-error-for") as keyof Controls;
    if (!(field in state.errors)) slot.textContent = "";
  });
  if (state.report) {
    el("chart").innerHTML = renderRooflineChart(state.report, state.pinboard);
    el("table").innerHTML = renderLayerTable(state.report);
    el("summary").innerHTML = renderSummary(state.report);
  }
  el("pinboard").innerHTML = state.pinboard
    .map(
      (p) =>
        `<li>${p.label} — ceiling ${p.report.compute_ceiling_ops_per_s} OPS/s ` +
        `<button data-unpin="${p.label}">remove</button></li>`,
    )
    .join("\n");
}

const store = createExplorerStore(api, render);

function bindNumber(id: string, field: keyof Controls): void {
  const input = el(id) as HTMLInputElement;
  input.value = String(DEFAULT_CONTROLS[field]);
  input.addEventListener("input", () => {
    store.setControl(field, Number(input.value) as never);
  });
}

function bindSelect(id: string, field: keyof Controls): void {
  const select = el(id) as HTMLSelectElement;
  select.value = String(DEFAULT_CONTROLS[field]);
  select.addEventListener("change", () => {
    store.setControl(field, select.value as never);
  });
}

async function init(): Promise<void> {
  const presets = await api.presets();
  const select = el("network") as HTMLSelectElement;
  select.innerHTML = presets.networks
    .map((n) => `<option value="${n}">${n}</option>`)
    .join("");
  select.value = DEFAULT_CONTROLS.networkPreset;
  select.addEventListener("change", () => store.setControl("networkPreset", select.value));

  const autoArray = el("array-auto") as HTMLInputElement;
  autoArray.checked = DEFAULT_CONTROLS.autoArray;
  autoArray.addEventListener("change", () => {
    store.setControl("autoArray", autoArray.checked);
  });

  bindNumber("area", "area_mm2");
  bindNumber("freq", "freq_mhz");
  bindNumber("bits", "bits");
  bindNumber("k", "k");
  bindNumber("array-rows", "arrayRows");
  bindNumber("array-cols", "arrayCols");
  bindNumber("mem-rate", "transfer_rate_mhz");
  bindNumber("mem-bus", "bus_width_bits");
  bindNumber("mem-derating", "derating");
  bindSelect("kind", "kind");
  bindSelect("spill", "spill");

  el("pin").addEventListener("click", () => {
    const label = `pin ${store.state().pinboard.length + 1}: ` +
      `${store.state().controls.bits}b @ ${store.state().controls.freq_mhz} MHz`;
    store.pin(label);
  });
  el("pinboard").addEventListener("click", (ev) => {
    const target = ev.target as HTMLElement;
    const label = target.getAttribute("data-unpin");
    if (label) store.unpin(label);
  });

  store.refreshNow();
}

init().catch((err) => {
  el("error-panel").textContent = `failed to reach the analysis server: ${err}`;
  el("error-panel").classList.remove("hidden");
});
