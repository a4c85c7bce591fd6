import type {
  AnnotationRecord,
  Progress,
  SampleStatus,
  SampleSummary,
  SampleView,
  Smell,
} from "./types.js";

/** Error carrying the HTTP status and the service's message body. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let message = `HTTP ${response.status}`;
  try {
    const doc = (await response.json()) as { error?: string };
    if (doc && typeof doc.error === "string") message = doc.error;
  } catch {
    /* non-JSON error body: keep the status line */
  }
  return new ApiError(response.status, message);
}

/** Thin typed client for the annotation service. */
export class ApiClient {
  /** @param base service origin, e.g. "http://127.0.0.1:8754"; "" for same-origin */
  constructor(readonly base: string = "") {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(this.base + path);
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  progress(): Promise<Progress> {
    return this.get<Progress>("/progress");
  }

  async listSamples(status?: SampleStatus, smell?: Smell): Promise<SampleSummary[]> {
    const query = new URLSearchParams();
    if (status) query.set("status", status);
    if (smell) query.set("smell", smell);
    const suffix = query.toString() ? `?${query.toString()}` : "";
    const doc = await this.get<{ samples: SampleSummary[] }>(`/samples${suffix}`);
    return doc.samples;
  }

  getSample(id: string): Promise<SampleView> {
    return this.get<SampleView>(`/samples/${encodeURIComponent(id)}`);
  }

  async submitAnnotation(id: string, record: AnnotationRecord): Promise<SampleView> {
    const response = await fetch(
      `${this.base}/samples/${encodeURIComponent(id)}/annotation`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(record),
      },
    );
    if (!response.ok) throw await parseError(response);
    const doc = (await response.json()) as { ok: boolean; sample: SampleView };
    return doc.sample;
  }
}
