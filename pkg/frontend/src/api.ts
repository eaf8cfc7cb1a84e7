/** Typed client for the annotation service. */

import type {
  Annotation,
  Debate,
  DebateListing,
  ValidationReport,
} from "./types.js";

export class ServiceUnreachable extends Error {
  constructor(cause: unknown) {
    super(`service unreachable: ${String(cause)}`);
  }
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public pointer: string | null = null
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (cause) {
    throw new ServiceUnreachable(cause);
  }
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    if (body && typeof body.code === "string") {
      throw new ApiError(response.status, body.code, body.message ?? "", body.pointer ?? null);
    }
    throw new ApiError(response.status, "E_HTTP", `unexpected ${response.status}`);
  }
  return body as T;
}

export class ServiceClient {
  constructor(private base: string = "") {}

  private url(path: string): string {
    return `${this.base}${path}`;
  }

  getDebates(): Promise<{ debates: DebateListing[] }> {
    return request(this.url("/debates"));
  }

  getDebate(id: string): Promise<Debate> {
    return request(this.url(`/debates/${encodeURIComponent(id)}`));
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return request(this.url(path), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  validate(annotation: Annotation): Promise<ValidationReport> {
    return this.post("/validate", { annotation });
  }

  render(annotation: Annotation, requireValid = false): Promise<{ text_form: string }> {
    return this.post("/render", { annotation, require_valid: requireValid });
  }

  canonicalize(
    annotation: Annotation,
    dropAuxRationale = false
  ): Promise<{ annotation: Annotation }> {
    return this.post("/canonicalize", { annotation, drop_aux_rationale: dropAuxRationale });
  }

  saveAnnotation(annotation: Annotation): Promise<{ id: string }> {
    return this.post("/annotations", { annotation });
  }

  listAnnotations(params: {
    debate_id?: string;
    annotator_id?: string;
  }): Promise<{ annotations: Annotation[] }> {
    const query = new URLSearchParams();
    if (params.debate_id) query.set("debate_id", params.debate_id);
    if (params.annotator_id) query.set("annotator_id", params.annotator_id);
    const suffix = query.toString() ? `?${query.toString()}` : "";
    return request(this.url(`/annotations${suffix}`));
  }
}
