import { describe, expect, it, vi } from 'vitest';

import { clickableStructure, renderBoard } from '../src/board';
import type { SessionState } from '../src/types';

function state(overrides: Partial<SessionState> = {}): SessionState {
  return {
    schema: 1,
    id: 's1',
    a: 'rrr',
    b: 'rrrr',
    moves: 2,
    human: 'I',
    movesLeft: 2,
    pending: null,
    history: [],
    turn: 'I',
    humanToMove: true,
    finished: false,
    winner: null,
    mapOk: true,
    transcript: [],
    ...overrides,
  };
}

describe('board rendering', () => {
  it('renders one labelled cell per position', () => {
    const root = document.createElement('div');
    renderBoard(root, state(), [], { onCell: () => undefined });
    const rows = root.querySelectorAll('.board-row');
    expect(rows).toHaveLength(2);
    expect(rows[0].querySelectorAll('.cell')).toHaveLength(3);
    expect(rows[1].querySelectorAll('.cell')).toHaveLength(4);
    expect(rows[1].querySelectorAll('.cell')[0].textContent).toBe('r');
  });

  it('numbers chosen pairs by move and mirrors the transcript', () => {
    const root = document.createElement('div');
    renderBoard(
      root,
      state({ history: [{ a: 1, b: 1 }, { a: 3, b: 4 }], movesLeft: 0, finished: true, winner: 'II', turn: null, humanToMove: false }),
      [],
      { onCell: () => undefined },
    );
    const badges = [...root.querySelectorAll('.badge')].map((b) => b.textContent);
    expect(badges).toEqual(['1', '2', '1', '2']);
    expect(root.querySelector('.banner')?.textContent).toContain('player II wins');
    expect(root.querySelector('.pair-map')?.textContent).toContain('a3 → b4');
  });

  it('counters always sum to the move count', () => {
    for (const played of [0, 1, 2]) {
      const s = state({
        history: Array.from({ length: played }, (_, i) => ({ a: i + 1, b: i + 1 })),
        movesLeft: 2 - played,
      });
      expect(s.history.length + s.movesLeft).toBe(s.moves);
      const root = document.createElement('div');
      renderBoard(root, s, [], { onCell: () => undefined });
      expect(root.querySelector('.moves-left')?.textContent).toContain(
        `moves left: ${2 - played}`,
      );
    }
  });

  it('cells call the handler only when clickable', () => {
    const onCell = vi.fn();
    const root = document.createElement('div');
    renderBoard(root, state(), [], { onCell });
    (root.querySelectorAll('.cell')[0] as HTMLButtonElement).click();
    expect(onCell).toHaveBeenCalledWith('A', 1);

    const inertRoot = document.createElement('div');
    const inert = vi.fn();
    renderBoard(inertRoot, state({ humanToMove: false, turn: 'I' }), [], { onCell: inert });
    const cell = inertRoot.querySelectorAll('.cell')[0] as HTMLButtonElement;
    cell.click();
    expect(inert).not.toHaveBeenCalled();
    expect(cell.title).toBe('not your turn');
  });

  it('restricts the duplicator to the answering structure', () => {
    const s = state({
      human: 'II',
      turn: 'II',
      humanToMove: true,
      pending: { structure: 'B', position: 2 },
    });
    expect(clickableStructure(s)).toBe('A');
    const onCell = vi.fn();
    const root = document.createElement('div');
    renderBoard(root, s, [], { onCell });
    const rows = root.querySelectorAll('.board-row');
    (rows[1].querySelectorAll('.cell')[0] as HTMLButtonElement).click();
    expect(onCell).not.toHaveBeenCalled();
    (rows[0].querySelectorAll('.cell')[1] as HTMLButtonElement).click();
    expect(onCell).toHaveBeenCalledWith('A', 2);
  });

  it('marks hinted cells', () => {
    const root = document.createElement('div');
    renderBoard(root, state(), [{ structure: 'A', position: 2 }], { onCell: () => undefined });
    const hinted = root.querySelectorAll('.cell-hint');
    expect(hinted).toHaveLength(1);
    expect((hinted[0] as HTMLElement).dataset.position).toBe('2');
  });
});
