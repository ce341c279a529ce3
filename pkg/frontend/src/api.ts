import type { HintResponse, Player, SessionState, Structure } from './types';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

/** Thin client for the game service; every game verdict comes from here. */
export class ArenaClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? undefined : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = (await response.json()) as T & { error?: string };
    if (!response.ok) {
      throw new ServiceError(payload.error ?? `service error ${response.status}`, response.status);
    }
    return payload;
  }

  createSession(a: string, b: string, moves: number, human: Player): Promise<SessionState> {
    return this.request<SessionState>('POST', '/sessions', { a, b, moves, human });
  }

  getSession(id: string): Promise<SessionState> {
    return this.request<SessionState>('GET', `/sessions/${id}`);
  }

  postMove(id: string, structure: Structure, position: number): Promise<SessionState> {
    return this.request<SessionState>('POST', `/sessions/${id}/moves`, { structure, position });
  }

  getHints(id: string): Promise<HintResponse> {
    return this.request<HintResponse>('GET', `/sessions/${id}/hints`);
  }

  async healthy(): Promise<boolean> {
    try {
      await this.request<{ ok: boolean }>('GET', '/healthz');
      return true;
    } catch {
      return false;
    }
  }
}
