// Game view state: holds only server-validated state and re-fetches the
// transcript after every update so the rendered history always equals the
// server's record. No optimistic rendering.

import { ApiClient, CreateConfig, ElementObj, GameState, PointObj,
         ServerError } from "./api.js";

export interface ViewUpdate {
  state: GameState;
  transcript: string;
  error?: string;
}

export class GameView {
  private state: GameState | null = null;
  private transcript = "";

  constructor(private readonly api: ApiClient) {}

  get current(): GameState {
    if (!this.state) throw new Error("no active session");
    return this.state;
  }

  get history(): string {
    return this.transcript;
  }

  async start(config: CreateConfig): Promise<ViewUpdate> {
    this.state = await this.api.createGame(config);
    this.transcript = this.state.moves.length
      ? await this.api.fetchTranscript(this.state.game_id)
      : "";
    return { state: this.state, transcript: this.transcript };
  }

  async submit(open: ElementObj, point?: PointObj): Promise<ViewUpdate> {
    const gid = this.current.game_id;
    try {
      this.state = await this.api.submitMove(gid, open, point);
    } catch (e) {
      if (e instanceof ServerError) {
        // illegal move: surface the exact server error name, keep state
        return { state: this.current, transcript: this.transcript,
                 error: e.errorName };
      }
      throw e;
    }
    this.transcript = await this.api.fetchTranscript(gid);
    return { state: this.state, transcript: this.transcript };
  }

  async refresh(): Promise<ViewUpdate> {
    const gid = this.current.game_id;
    this.state = await this.api.fetchState(gid);
    this.transcript = this.state.moves.length
      ? await this.api.fetchTranscript(gid)
      : "";
    return { state: this.state, transcript: this.transcript };
  }
}
