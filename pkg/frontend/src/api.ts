// Thin typed client over the session endpoints.

import type {
  CreateResponse,
  SessionParams,
  SessionState,
  StepResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function request<T>(
  base: string,
  method: string,
  path: string,
  body?: unknown,
): Promise<T> {
  const resp = await fetch(base + path, {
    method,
    headers: body === undefined ? {} : { "content-type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const data = await resp.json();
      if (data && typeof data.error === "string") detail = data.error;
    } catch {
      // keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  if (resp.status === 204) return undefined as T;
  return (await resp.json()) as T;
}

export class Client {
  constructor(readonly base: string = "") {}

  createSession(params: SessionParams): Promise<CreateResponse> {
    return request(this.base, "POST", "/sessions", params);
  }

  getState(id: string): Promise<SessionState> {
    return request(this.base, "GET", `/sessions/${id}`);
  }

  step(id: string, passes: number): Promise<StepResponse> {
    return request(this.base, "POST", `/sessions/${id}/step`, { passes });
  }

  setWeight(id: string, weight: number): Promise<{ state: SessionState }> {
    return request(this.base, "PATCH", `/sessions/${id}/config`, { weight });
  }

  deleteSession(id: string): Promise<void> {
    return request(this.base, "DELETE", `/sessions/${id}`);
  }
}
