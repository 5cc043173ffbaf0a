// Shapes mirrored from the server's JSON API (docs/api.md).

export interface RooflinePointDto {
  layer: string;
  variant: "raw" | "partial-sum";
  ops_per_bit: number;
  required_ops_per_s: number;
  classification: string;
  borderline: boolean;
}

export interface SizingDto {
  pe_area_um2: number;
  pe_count: number;
  array: [number, number];
  capacity_ops_per_s: number;
  est_power_mw: number;
}

export interface MemoryDto {
  transfer_rate: number;
  bus_width: number;
  derating: number;
  bandwidth_bits_per_s: number;
}

export interface RooflineReportDto {
  network: string;
  frequency_hz: number;
  array: [number, number];
  spill: "onchip" | "spill";
  compute_ceiling_ops_per_s: number;
  bandwidth_bits_per_s: number;
  ridge_point_ops_per_bit: number;
  sizing: SizingDto;
  memory: MemoryDto;
  points: RooflinePointDto[];
}

export interface PresetListDto {
  networks: string[];
  calibrations: string[];
}

export interface NetworkDto {
  name: string;
  layers: unknown[];
  metadata?: Record<string, unknown>;
}

export interface HardwareSpec {
  area_mm2: number;
  freq_mhz: number;
  kind: "fixed" | "float32";
  b_w: number;
  b_a: number;
  k: number;
  array?: [number, number];
}

export interface MemorySpec {
  transfer_rate_mhz: number;
  bus_width_bits: number;
  derating?: number;
}

export interface AnalyzeRequest {
  network?: NetworkDto;
  network_preset?: string;
  hardware: HardwareSpec;
  memory: MemorySpec;
  array?: [number, number];
  spill: "onchip" | "spill";
}
