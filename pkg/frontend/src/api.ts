/** Typed client for the steering service. All game knowledge stays server-side. */

export interface NodeSummary {
  key: string;
  lands: string[];
  parity: number;
  rcts: string[];
  status: string;
  lives: number;
  landCount: number;
}

export interface NodeView extends NodeSummary {
  children?: NodeSummary[];
}

export interface SessionCreated {
  id: string;
  root: NodeView;
}

export interface AutoStarted {
  key: string;
  status: string;
}

export interface Progress {
  status: string;
  key: string | null;
  result: string;
  nodesExplored: number;
  memoSize: number;
}

export interface CancelResult {
  status: string;
  memoSize: number;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class Client {
  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike = (...a) => fetch(...a),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const res = await this.fetchFn(this.base + path, init);
    if (!res.ok) {
      let detail = `${res.status}`;
      try {
        const body = await res.json();
        if (body && typeof body.error === "string") detail = body.error;
      } catch {
        /* non-JSON error body; keep the status code */
      }
      throw new ApiError(res.status, detail);
    }
    return res;
  }

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    return (await this.request(path, init)).json() as Promise<T>;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.json<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  createSession(body: { spots?: number; position?: string }): Promise<SessionCreated> {
    return this.post("/sessions", body);
  }

  node(sid: string, key?: string): Promise<NodeView> {
    const q = key === undefined ? "" : `?key=${encodeURIComponent(key)}`;
    return this.json(`/sessions/${sid}/node${q}`);
  }

  descend(sid: string, childKey: string): Promise<NodeView> {
    return this.post(`/sessions/${sid}/descend`, { childKey });
  }

  back(sid: string): Promise<NodeView> {
    return this.post(`/sessions/${sid}/back`, {});
  }

  auto(
    sid: string,
    body: { nodeKey?: string; budgetNodes?: number; budgetSecs?: number },
  ): Promise<AutoStarted> {
    return this.post(`/sessions/${sid}/auto`, body);
  }

  progress(sid: string): Promise<Progress> {
    return this.json(`/sessions/${sid}/progress`);
  }

  cancel(sid: string): Promise<CancelResult> {
    return this.post(`/sessions/${sid}/cancel`, {});
  }

  async proof(sid: string, key?: string): Promise<string> {
    const q = key === undefined ? "" : `?key=${encodeURIComponent(key)}`;
    return (await this.request(`/sessions/${sid}/proof${q}`)).text();
  }
}
