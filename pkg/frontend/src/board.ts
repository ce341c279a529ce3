import type { SessionState, Structure, WireMove } from './types';

export interface BoardHandlers {
  onCell(structure: Structure, position: number): void;
}

const COLOUR_CLASSES: Record<string, string> = { r: 'cell-r', b: 'cell-b', g: 'cell-g' };

function glyphs(text: string): string[] {
  return text === '-' ? [] : text.split('');
}

/** Which structure the human may click right now, or null. */
export function clickableStructure(state: SessionState): Structure | null {
  if (state.finished || !state.humanToMove || state.turn === null) return null;
  if (state.turn === 'I') return null; // spoiler picks either side; both clickable
  if (state.pending === null) return null;
  return state.pending.structure === 'A' ? 'B' : 'A';
}

function renderRow(
  state: SessionState,
  structure: Structure,
  hints: WireMove[],
  handlers: BoardHandlers,
): HTMLElement {
  const row = document.createElement('div');
  row.className = 'board-row';
  row.dataset.structure = structure;

  const label = document.createElement('span');
  label.className = 'row-label';
  label.textContent = structure;
  row.appendChild(label);

  const text = structure === 'A' ? state.a : state.b;
  const pairIndex = new Map<number, number>();
  state.history.forEach((pair, i) => {
    pairIndex.set(structure === 'A' ? pair.a : pair.b, i + 1);
  });
  const pendingHere =
    state.pending !== null && state.pending.structure === structure
      ? state.pending.position
      : null;
  const restrict = clickableStructure(state);
  const clickable =
    !state.finished &&
    state.humanToMove &&
    (state.turn === 'I' || restrict === structure);
  const hintSet = new Set(
    hints.filter((h) => h.structure === structure).map((h) => h.position),
  );

  glyphs(text).forEach((glyph, i) => {
    const position = i + 1;
    const cell = document.createElement('button');
    cell.type = 'button';
    cell.className = `cell ${COLOUR_CLASSES[glyph] ?? 'cell-other'}`;
    cell.dataset.position = String(position);
    cell.textContent = glyph;
    const move = pairIndex.get(position);
    if (move !== undefined) {
      cell.classList.add('cell-chosen');
      const badge = document.createElement('span');
      badge.className = 'badge';
      badge.textContent = String(move);
      cell.appendChild(badge);
    }
    if (pendingHere === position) {
      cell.classList.add('cell-pending');
      const badge = document.createElement('span');
      badge.className = 'badge badge-pending';
      badge.textContent = '?';
      cell.appendChild(badge);
    }
    if (hintSet.has(position)) cell.classList.add('cell-hint');
    if (clickable) {
      cell.classList.add('cell-clickable');
      cell.addEventListener('click', () => handlers.onCell(structure, position));
    } else {
      cell.title = state.finished
        ? 'the game is over'
        : state.humanToMove
          ? `play in structure ${restrict}`
          : 'not your turn';
      cell.addEventListener('click', (event) => event.preventDefault());
    }
    row.appendChild(cell);
  });

  if (glyphs(text).length === 0) {
    const empty = document.createElement('span');
    empty.className = 'empty-order';
    empty.textContent = '(empty)';
    row.appendChild(empty);
  }
  return row;
}

function renderStatus(state: SessionState): HTMLElement {
  const status = document.createElement('div');
  status.className = 'status';

  const counter = document.createElement('span');
  counter.className = 'moves-left';
  const played = state.history.length;
  counter.textContent = `round ${Math.min(played + 1, state.moves)} of ${state.moves} - moves left: ${state.movesLeft}`;
  status.appendChild(counter);

  const turn = document.createElement('span');
  turn.className = 'turn';
  if (state.finished) {
    turn.textContent = 'game over';
  } else {
    const who = state.humanToMove ? 'you' : 'engine';
    turn.textContent = `player ${state.turn} to move (${who})`;
  }
  status.appendChild(turn);
  return status;
}

function renderBanner(state: SessionState): HTMLElement | null {
  if (!state.finished || state.winner === null) return null;
  const banner = document.createElement('div');
  banner.className = `banner winner-${state.winner.toLowerCase()}`;
  const verdict = state.mapOk
    ? 'the final map is an order- and colour-isomorphism'
    : 'the final map is not an isomorphism';
  const side = state.winner === state.human ? 'you win' : 'engine wins';
  banner.textContent = `player ${state.winner} wins (${side}) - ${verdict}`;
  return banner;
}

/** Rebuild the board into `root`; all verdicts come from the service state. */
export function renderBoard(
  root: HTMLElement,
  state: SessionState,
  hints: WireMove[],
  handlers: BoardHandlers,
): void {
  root.textContent = '';
  root.appendChild(renderStatus(state));
  const banner = renderBanner(state);
  if (banner) root.appendChild(banner);
  root.appendChild(renderRow(state, 'A', hints, handlers));
  root.appendChild(renderRow(state, 'B', hints, handlers));

  const map = document.createElement('div');
  map.className = 'pair-map';
  map.textContent = state.history.length
    ? 'map: ' + state.history.map((p, i) => `${i + 1}: a${p.a} → b${p.b}`).join(', ')
    : 'map: (no pairs yet)';
  root.appendChild(map);
}
