// Typed client for the bookwalk HTTP API. The fetch implementation is
// injectable so tests can run without a browser.

export interface TocNode {
  id: string;
  label: string;
  depth: number;
  children: TocNode[];
}

export interface BookBlock {
  id: string;
  kind: "topic" | "description" | "question";
  anchor: string;
  html?: string;
  text?: string;
  topics?: string[];
}

export interface QueryRequest {
  seeds: string[];
  target_kind: string;
  k?: number;
  gamma?: number;
  d_max?: number;
}

export interface QueryEntry {
  id: string;
  score: number;
  anchor?: string;
  preview?: string;
}

export interface QueryResponse {
  target_kind: string;
  entries: QueryEntry[];
  warnings: string[];
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status?: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: string };
    if (body && typeof body.detail === "string") return body.detail;
  } catch {
    // non-JSON error body; fall through to the status line
  }
  return `${response.status} ${response.statusText}`;
}

export class ApiClient {
  constructor(
    private readonly baseUrl = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.baseUrl + path, init);
    } catch (cause) {
      throw new ApiError(`cannot reach the service: ${String(cause)}`);
    }
    if (!response.ok) {
      throw new ApiError(await errorDetail(response), response.status);
    }
    return (await response.json()) as T;
  }

  getToc(): Promise<{ roots: TocNode[] }> {
    return this.request("/api/toc");
  }

  getBook(): Promise<{ blocks: BookBlock[] }> {
    return this.request("/api/book");
  }

  query(body: QueryRequest): Promise<QueryResponse> {
    return this.request("/api/query", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }
}
