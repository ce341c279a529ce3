// Wire types of the game service (schema version 1, 1-based positions).

export type Player = 'I' | 'II';
export type Structure = 'A' | 'B';

export interface WireMove {
  structure: Structure;
  position: number;
}

export interface TranscriptEntry {
  player: Player;
  structure: Structure;
  position: number;
  by: 'human' | 'engine';
  at: number;
}

export interface SessionState {
  schema: number;
  id: string;
  a: string;
  b: string;
  moves: number;
  human: Player;
  movesLeft: number;
  pending: WireMove | null;
  history: { a: number; b: number }[];
  turn: Player | null;
  humanToMove: boolean;
  finished: boolean;
  winner: Player | null;
  mapOk: boolean;
  transcript: TranscriptEntry[];
}

export interface HintResponse {
  moves: WireMove[];
}
