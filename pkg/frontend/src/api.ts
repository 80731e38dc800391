/** Thin client for the recommendation service HTTP API. */

import type { Model } from "./model.js";

export type FetchLike = (
  input: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export interface RankedEntry {
  item: string;
  score: number;
}

export interface RecommendRequest {
  model: Model;
  scheme: string;
  context: { kind: "class" | "package"; name: string };
  k: number;
  kContexts: number;
  n: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export async function postRecommendations(
  serverUrl: string,
  request: RecommendRequest,
  fetchImpl: FetchLike,
): Promise<RankedEntry[]> {
  const response = await fetchImpl(
    `${serverUrl.replace(/\/$/, "")}/api/recommendations`,
    {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    },
  );
  const payload = (await response.json()) as {
    entries?: RankedEntry[];
    error?: { code: string; message: string };
  };
  if (!response.ok) {
    const err = payload.error ?? { code: "http_error", message: "request failed" };
    throw new ApiError(response.status, err.code, err.message);
  }
  return payload.entries ?? [];
}
