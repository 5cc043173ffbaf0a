// End-to-end against the real analysis server: the layer table must show the
// server's numbers byte-identically to the CLI's JSON output for the same
// inputs, and halving the clock must halve the displayed compute ceiling.

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { createExplorerStore, DEFAULT_CONTROLS, type ExplorerState } from "../src/state.js";
import { renderLayerTable, renderSummary } from "../src/table.js";
import type { RooflineReportDto } from "../src/types.js";

const HW_TOML = `area_mm2 = 6.0
freq_mhz = 100
kind = "fixed"
b_w = 8
b_a = 8
k = 3

[mem]
transfer_rate_mhz = 2400
bus_width_bits = 64
`;

let proc: ChildProcess;
let baseUrl = "";
let workDir = "";

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "explorer-e2e-"));
  writeFileSync(join(workDir, "hw.toml"), HW_TOML);

  proc = spawn("python3", ["-m", "accelscope.cli", "serve", "--port", "0"], {
    env: { ...process.env, PYTHONUNBUFFERED: "1" },
    stdio: ["ignore", "pipe", "pipe"],
  });
  baseUrl = await new Promise<string>((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error("server did not start")), 15000);
    proc.stdout!.on("data", (chunk: Buffer) => {
      const match = chunk.toString().match(/serving on (http:\/\/[\d.]+:\d+)/);
      if (match) {
        clearTimeout(timer);
        resolve(match[1]);
      }
    });
    proc.on("exit", (code) => reject(new Error(`server exited early (${code})`)));
  });
}, 20000);

afterAll(() => {
  proc?.kill();
  if (workDir) rmSync(workDir, { recursive: true, force: true });
});

function cliRooflineJson(): string {
  return execFileSync(
    "python3",
    ["-m", "accelscope.cli", "roofline", "resnet18_layer2",
     "--hw", join(workDir, "hw.toml"), "--json"],
    { encoding: "utf-8" },
  );
}

function example2Store() {
  let latest: ExplorerState | null = null;
  const store = createExplorerStore(new ApiClient(baseUrl), (s) => (latest = s), 1);
  for (const [key, value] of Object.entries({
    ...DEFAULT_CONTROLS,
    networkPreset: "resnet18_layer2",
    area_mm2: 6.0,
    freq_mhz: 100,
    bits: 8,
    autoArray: true,
  })) {
    store.setControl(key as never, value as never);
  }
  const settled = async (): Promise<ExplorerState> => {
    for (let i = 0; i < 200; i++) {
      await new Promise((res) => setTimeout(res, 25));
      if (latest && !(latest as ExplorerState).pending && (latest as ExplorerState).report) {
        return latest;
      }
    }
    throw new Error("no report arrived");
  };
  return { store, settled };
}

describe("explorer against the live server", () => {
  it("layer table numbers are byte-identical to the CLI JSON", async () => {
    const { settled } = example2Store();
    const state = await settled();
    const report = state.report as RooflineReportDto;
    const table = renderLayerTable(report);
    const summary = renderSummary(report);

    const cliJson = cliRooflineJson();
    const opbTokens = [...cliJson.matchAll(/^\s*"ops_per_bit": ([^,\n]+?),?$/gm)].map(
      (m) => m[1],
    );
    const reqTokens = [...cliJson.matchAll(/^\s*"required_ops_per_s": ([^,\n]+?),?$/gm)].map(
      (m) => m[1],
    );
    const ceiling = cliJson.match(/"compute_ceiling_ops_per_s": ([^,\n]+?),?$/m)![1];

    expect(opbTokens).toHaveLength(2); // raw + partial-sum for the single layer
    for (const token of opbTokens) {
      expect(table).toContain(`data-field="ops_per_bit">${token}<`);
    }
    for (const token of reqTokens) {
      expect(table).toContain(`data-field="required_ops_per_s">${token}<`);
    }
    expect(summary).toContain(`data-field="compute_ceiling">${ceiling}<`);
    // the criterion-2 scenario itself: 8-bit example-2 sits right at the edge
    expect(ceiling).toBe("3969000000000.0");
    expect(table).toContain("compute-bound *");
  }, 30000);

  it("halving the clock halves the displayed compute ceiling", async () => {
    const { store, settled } = example2Store();
    const before = await settled();
    const ceilingBefore = (before.report as RooflineReportDto).compute_ceiling_ops_per_s;

    store.setControl("freq_mhz", 50);
    await new Promise((res) => setTimeout(res, 50));
    const after = await settled();
    const ceilingAfter = (after.report as RooflineReportDto).compute_ceiling_ops_per_s;

    expect(ceilingAfter).toBe(ceilingBefore / 2);
    const summary = renderSummary(after.report as RooflineReportDto);
    expect(summary).toContain(`data-field="compute_ceiling">1984500000000.0<`);
  }, 30000);

  it("switching 8-bit to 4-bit raises the capacity from 3969 to 11236 GOPS/s", async () => {
    const { store, settled } = example2Store();
    const before = await settled();
    expect((before.report as RooflineReportDto).compute_ceiling_ops_per_s).toBe(3969e9);

    store.setControl("bits", 4);
    await new Promise((res) => setTimeout(res, 50));
    const after = await settled();
    expect((after.report as RooflineReportDto).compute_ceiling_ops_per_s).toBe(11236e9);
  }, 30000);

  it("out-of-range area reports the server's infeasibility message inline", async () => {
    const { store, settled } = example2Store();
    await settled();
    store.setControl("area_mm2", 0.000001);
    await new Promise((res) => setTimeout(res, 300));
    const state = store.state();
    expect(state.apiError).toMatch(/fits no complete PE/);
    expect(state.report).not.toBeNull(); // prior report retained
  }, 30000);
});
