// Thin typed client for the game session service. Every legality verdict
// comes from the server; this module never decides anything itself.

export interface ElementObj {
  type: string;
  lo?: string;
  hi?: string;
  stem?: string;
  atoms?: string[];
  assignments?: Record<string, ElementObj>;
}

export interface PointObj {
  type: string;
  value?: string;
  support?: number[];
  id?: string;
  components?: Record<string, PointObj>;
}

export interface MoveObj {
  role: "alpha" | "beta";
  open: ElementObj;
  point?: PointObj;
}

export interface GameState {
  game_id: string;
  space: { kind: string };
  mode: "bm" | "ch";
  human_role: "alpha" | "beta";
  engine: string;
  turn: "alpha" | "beta";
  moves: MoveObj[];
  certificate: Record<string, unknown> | null;
  engine_move?: MoveObj;
}

export interface RepFragment {
  origin: string;
  mode: string;
  elements: { id: string; B: ElementObj }[];
  leq: [string, string][];
}

export class ServerError extends Error {
  readonly errorName: string;
  constructor(errorName: string, detail: string) {
    super(`${errorName}: ${detail}`);
    this.errorName = errorName;
  }
}

export interface CreateConfig {
  space: string | Record<string, unknown>;
  mode?: "bm" | "ch";
  human_role?: "alpha" | "beta";
  engine?: string;
  seed?: number;
}

async function asJson<T>(res: Response): Promise<T> {
  const body = await res.json();
  if (!res.ok) {
    throw new ServerError(body.error ?? "Unknown", body.detail ?? "");
  }
  return body as T;
}

export class ApiClient {
  constructor(private readonly base: string) {}

  async createGame(config: CreateConfig): Promise<GameState> {
    const res = await fetch(`${this.base}/games`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(config),
    });
    return asJson<GameState>(res);
  }

  async submitMove(gameId: string, open: ElementObj,
                   point?: PointObj): Promise<GameState> {
    const body: Record<string, unknown> = { open };
    if (point) body.point = point;
    const res = await fetch(`${this.base}/games/${gameId}/moves`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return asJson<GameState>(res);
  }

  async fetchState(gameId: string): Promise<GameState> {
    return asJson<GameState>(await fetch(`${this.base}/games/${gameId}`));
  }

  // Raw bytes: compared verbatim against offline transcripts.
  async fetchTranscript(gameId: string): Promise<string> {
    const res = await fetch(`${this.base}/games/${gameId}/transcript`);
    if (!res.ok) {
      const body = await res.json();
      throw new ServerError(body.error ?? "Unknown", body.detail ?? "");
    }
    return res.text();
  }

  async fetchRep(gameId: string): Promise<RepFragment> {
    return asJson<RepFragment>(await fetch(`${this.base}/games/${gameId}/rep`));
  }
}
