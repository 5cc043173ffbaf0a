import type {
  AnalyzeRequest,
  NetworkDto,
  PresetListDto,
  RooflineReportDto,
} from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function readError(resp: Response): Promise<never> {
  let detail = resp.statusText;
  try {
    const body = await resp.json();
    if (body && typeof body.error === "string") detail = body.error;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(resp.status, detail);
}

/** Thin client for the analysis server; every number shown in the UI comes
 *  from one of these responses. */
export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  private async get<T>(path: string): Promise<T> {
    const resp = await fetch(this.baseUrl + path);
    if (!resp.ok) await readError(resp);
    return (await resp.json()) as T;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const resp = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) await readError(resp);
    return (await resp.json()) as T;
  }

  presets(): Promise<PresetListDto> {
    return this.get("/api/presets");
  }

  preset(name: string): Promise<NetworkDto> {
    return this.get(`/api/presets/${encodeURIComponent(name)}`);
  }

  analyze(request: AnalyzeRequest): Promise<RooflineReportDto> {
    return this.post("/api/analyze", request);
  }
}
