import type { RooflineReportDto } from "../src/types.js";

export function fixtureReport(overrides: Partial<RooflineReportDto> = {}): RooflineReportDto {
  return {
    network: "fixture",
    frequency_hz: 1e8,
    array: [16, 16],
    spill: "onchip",
    compute_ceiling_ops_per_s: 2.048e12,
    bandwidth_bits_per_s: 1.536e11,
    ridge_point_ops_per_bit: 13.333333333333334,
    sizing: {
      pe_area_um2: 528.5,
      pe_count: 256,
      array: [16, 16],
      capacity_ops_per_s: 2.048e12,
      est_power_mw: 95.7,
    },
    memory: {
      transfer_rate: 2.4e9,
      bus_width: 64,
      derating: 1.0,
      bandwidth_bits_per_s: 1.536e11,
    },
    points: [
      {
        layer: "a",
        variant: "raw",
        ops_per_bit: 36.63551401869159,
        required_ops_per_s: 4.096e12,
        classification: "compute-bound",
        borderline: true,
      },
      {
        layer: "a",
        variant: "partial-sum",
        ops_per_bit: 25.128205128205128,
        required_ops_per_s: 1.024e12,
        classification: "feasible",
        borderline: false,
      },
      {
        layer: "b",
        variant: "raw",
        ops_per_bit: 9.158878504672897,
        required_ops_per_s: 4.096e12,
        classification: "compute-and-memory-bound",
        borderline: false,
      },
      {
        layer: "b",
        variant: "partial-sum",
        ops_per_bit: 5.54,
        required_ops_per_s: 2.56e11,
        classification: "memory-bound",
        borderline: false,
      },
    ],
    ...overrides,
  };
}
