// Wire types for the search API. Field names mirror the JSON payload;
// the UI never re-ranks, re-labels or rewrites any of these strings.

export interface SourceInfo {
  name: string;
  kind: string;
  domain: string;
  trusted: boolean;
}

export interface EvidenceItem {
  text: string;
  relevance: number;
}

export interface ResultCard {
  doc_id: string;
  url: string;
  title: string;
  source: SourceInfo;
  perspective: string;
  stance: string;
  stance_confidence: number;
  group: number;
  evidence: EvidenceItem[];
}

export interface SearchResponse {
  query: string;
  k: number;
  retrieved: number;
  dropped: number;
  clusters: Record<string, ResultCard[]>;
}

export interface ApiError {
  error: { code: string; message: string };
}

export class SearchApiError extends Error {
  readonly code: string;

  constructor(code: string, message: string) {
    super(message);
    this.code = code;
  }
}

export async function fetchSearch(
  baseUrl: string,
  query: string,
  k?: number,
  signal?: AbortSignal,
): Promise<SearchResponse> {
  const params = new URLSearchParams({ q: query });
  if (k !== undefined) params.set("k", String(k));
  const response = await fetch(`${baseUrl}/search?${params.toString()}`, { signal });
  const body = (await response.json()) as SearchResponse | ApiError;
  if (!response.ok || "error" in body) {
    const err = body as ApiError;
    throw new SearchApiError(
      err.error?.code ?? `http_${response.status}`,
      err.error?.message ?? `search failed with status ${response.status}`,
    );
  }
  return body;
}
