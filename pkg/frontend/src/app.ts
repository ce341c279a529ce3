import { ArenaClient, ServiceError } from './api';
import { renderBoard } from './board';
import type { Player, SessionState, Structure } from './types';

export interface ArenaOptions {
  /** Restore this session instead of showing a fresh form. */
  sessionId?: string;
  onSessionChange?(id: string | null): void;
}

/**
 * Mounts the arena: a new-game form plus the live board.  The client is the
 * only source of game state and verdicts; the UI round-trips every change.
 */
export class Arena {
  state: SessionState | null = null;
  hintsOn = false;
  private busy = false;

  private readonly form: HTMLFormElement;
  private readonly error: HTMLElement;
  private readonly board: HTMLElement;

  constructor(
    root: HTMLElement,
    private readonly client: ArenaClient,
    private readonly options: ArenaOptions = {},
  ) {
    root.textContent = '';
    this.form = this.buildForm();
    this.error = document.createElement('div');
    this.error.className = 'form-error';
    this.board = document.createElement('div');
    this.board.className = 'board';
    root.appendChild(this.form);
    root.appendChild(this.error);
    root.appendChild(this.board);
    if (options.sessionId) {
      void this.restore(options.sessionId);
    }
  }

  private buildForm(): HTMLFormElement {
    const form = document.createElement('form');
    form.className = 'new-game';
    form.innerHTML = `
      <label>A <input name="a" value="rrr" spellcheck="false"></label>
      <label>B <input name="b" value="rrrr" spellcheck="false"></label>
      <label>moves <input name="moves" type="number" value="2" min="0" max="8"></label>
      <label>you play
        <select name="role">
          <option value="I">I (spoiler)</option>
          <option value="II">II (duplicator)</option>
        </select>
      </label>
      <label class="hints-toggle"><input name="hints" type="checkbox"> hints</label>
      <button type="submit">start</button>
    `;
    form.addEventListener('submit', (event) => {
      event.preventDefault();
      void this.start();
    });
    return form;
  }

  private field(name: string): HTMLInputElement {
    return this.form.elements.namedItem(name) as HTMLInputElement;
  }

  async start(): Promise<void> {
    const a = this.field('a').value.trim();
    const b = this.field('b').value.trim();
    const moves = Number(this.field('moves').value);
    const role = this.field('role').value as Player;
    this.hintsOn = this.field('hints').checked;
    this.error.textContent = '';
    try {
      this.state = await this.client.createSession(a, b, moves, role);
      this.options.onSessionChange?.(this.state.id);
    } catch (err) {
      this.state = null;
      this.error.textContent = err instanceof ServiceError ? err.message : String(err);
      this.options.onSessionChange?.(null);
    }
    await this.redraw();
  }

  async restore(id: string): Promise<void> {
    try {
      this.state = await this.client.getSession(id);
    } catch {
      this.state = null;
      this.options.onSessionChange?.(null);
    }
    await this.redraw();
  }

  /** Handle a cell click; inert unless it is the human's turn. */
  async clickCell(structure: Structure, position: number): Promise<void> {
    if (!this.state || this.busy || this.state.finished || !this.state.humanToMove) return;
    this.busy = true;
    try {
      this.state = await this.client.postMove(this.state.id, structure, position);
      this.error.textContent = '';
    } catch (err) {
      // illegal moves leave the session unchanged server-side
      this.error.textContent = err instanceof ServiceError ? err.message : String(err);
    } finally {
      this.busy = false;
    }
    await this.redraw();
  }

  private async redraw(): Promise<void> {
    if (!this.state) {
      this.board.textContent = '';
      return;
    }
    let hints: { structure: Structure; position: number }[] = [];
    if (this.hintsOn && !this.state.finished && this.state.humanToMove) {
      try {
        hints = (await this.client.getHints(this.state.id)).moves;
      } catch {
        hints = [];
      }
    }
    renderBoard(this.board, this.state, hints, {
      onCell: (structure, position) => void this.clickCell(structure, position),
    });
  }
}

export function mountArena(root: HTMLElement, client: ArenaClient, options?: ArenaOptions): Arena {
  return new Arena(root, client, options);
}
