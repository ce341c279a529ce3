// End-to-end: a scripted session against the real Python game service.
// Creates ("rrr", "rrrr", 2) with the human as player I, plays three distinct
// lines through DOM clicks, and expects the II-wins banner each time, with
// the banner verdict equal to the service's own.

import { type ChildProcess, spawn } from 'node:child_process';
import path from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ArenaClient } from '../src/api';
import { Arena, mountArena } from '../src/app';

let service: ChildProcess;
let client: ArenaClient;

async function until<T>(probe: () => T | null | undefined | false, what: string): Promise<T> {
  const deadline = Date.now() + 15_000;
  for (;;) {
    const got = probe();
    if (got) return got;
    if (Date.now() > deadline) throw new Error(`timed out waiting for ${what}`);
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}

beforeAll(async () => {
  const repoRoot = path.resolve(__dirname, '..', '..');
  service = spawn('python3', ['-m', 'efo', 'serve', '--port', '0'], {
    cwd: repoRoot,
    env: { ...process.env, PYTHONPATH: path.join(repoRoot, 'src') },
    stdio: ['ignore', 'pipe', 'pipe'],
  });
  let banner = '';
  service.stdout!.on('data', (chunk) => {
    banner += String(chunk);
  });
  let stderr = '';
  service.stderr!.on('data', (chunk) => {
    stderr += String(chunk);
  });
  const url = await until(() => {
    if (service.exitCode !== null) throw new Error(`service died: ${stderr}`);
    return banner.match(/listening on (http:\/\/[\d.]+:\d+)/)?.[1];
  }, 'the service to listen');
  client = new ArenaClient(url);
  await until(() => client.healthy(), 'the service to answer');
});

afterAll(() => {
  service?.kill();
});

function newArena(): { arena: Arena; root: HTMLElement } {
  const root = document.createElement('div');
  document.body.appendChild(root);
  const arena = mountArena(root, client);
  return { arena, root };
}

function fill(root: HTMLElement, name: string, value: string): void {
  const input = root.querySelector(`[name=${name}]`) as HTMLInputElement;
  input.value = value;
}

async function startGame(root: HTMLElement, arena: Arena): Promise<void> {
  fill(root, 'a', 'rrr');
  fill(root, 'b', 'rrrr');
  fill(root, 'moves', '2');
  fill(root, 'role', 'I');
  const form = root.querySelector('form')!;
  form.dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }));
  await until(() => arena.state !== null && root.querySelectorAll('.cell').length === 7, 'board');
}

async function clickCell(
  root: HTMLElement,
  arena: Arena,
  structure: 'A' | 'B',
  position: number,
  expectRounds: number,
): Promise<void> {
  const row = root.querySelector(`.board-row[data-structure=${structure}]`)!;
  const cell = row.querySelector(`.cell[data-position="${position}"]`) as HTMLButtonElement;
  cell.click();
  await until(
    () => arena.state !== null && arena.state.history.length === expectRounds,
    `round ${expectRounds} to complete`,
  );
}

describe('arena end to end', () => {
  const lines: Array<Array<['A' | 'B', number]>> = [
    [['A', 1], ['A', 2]],
    [['A', 3], ['B', 2]],
    [['B', 4], ['A', 1]],
  ];

  it.each(lines.map((line, i) => [i + 1, line] as const))(
    'line %d ends with the II-wins banner',
    async (_index, line) => {
      const { arena, root } = newArena();
      await startGame(root, arena);
      expect(arena.state!.humanToMove).toBe(true);
      let rounds = 0;
      for (const [structure, position] of line) {
        rounds += 1;
        await clickCell(root, arena, structure, position, rounds);
      }
      const banner = await until(() => root.querySelector('.banner'), 'the winner banner');
      expect(banner.textContent).toContain('player II wins');
      expect(arena.state!.finished).toBe(true);
      expect(arena.state!.winner).toBe('II');
      // the verdict shown equals the service's verdict for this session
      const fresh = await client.getSession(arena.state!.id);
      expect(fresh.winner).toBe('II');
      expect(banner.textContent).toContain(`player ${fresh.winner} wins`);
      // engine replies mirror into the rendered history
      expect(fresh.history.length).toBe(2);
      expect(root.querySelectorAll('.badge')).toHaveLength(4);
    },
  );

  it('engine-vs-human line where the engine is the spoiler and wins', async () => {
    const created = await client.createSession('rr', 'rrr', 2, 'II');
    expect(created.pending).toEqual({ structure: 'B', position: 2 });
    const { arena, root } = newArena();
    await arena.restore(created.id);
    await until(() => root.querySelectorAll('.cell').length === 5, 'board');
    // the human duplicator must answer in A; play position 1 each round
    let state = arena.state!;
    while (!state.finished) {
      const answerIn = state.pending!.structure === 'A' ? 'B' : 'A';
      const row = root.querySelector(`.board-row[data-structure=${answerIn}]`)!;
      (row.querySelector('.cell[data-position="1"]') as HTMLButtonElement).click();
      await until(() => arena.state !== state, 'the move to land');
      state = arena.state!;
    }
    expect(state.winner).toBe('I');
    expect(root.querySelector('.banner')?.textContent).toContain('player I wins');
  });

  it('palindrome board: the engine spoiler eventually wins at three moves', async () => {
    // "rbrbrbrbrbrbrbr" is 3-optimal, so nothing shorter is 3-equivalent and
    // the engine as player I must win
    const created = await client.createSession('rbrbrbrbrbrbrbr', 'rbrbrbrbrbrbr', 3, 'II');
    const { arena, root } = newArena();
    await arena.restore(created.id);
    await until(() => root.querySelectorAll('.cell').length === 28, 'board');
    let state = arena.state!;
    let guard = 0;
    while (!state.finished && guard < 5) {
      guard += 1;
      const answerIn = state.pending!.structure === 'A' ? 'B' : 'A';
      const row = root.querySelector(`.board-row[data-structure=${answerIn}]`)!;
      (row.querySelector('.cell[data-position="1"]') as HTMLButtonElement).click();
      await until(() => arena.state !== state, 'the move to land');
      state = arena.state!;
    }
    expect(state.finished).toBe(true);
    expect(state.winner).toBe('I');
    expect(root.querySelector('.banner')?.textContent).toContain('player I wins');
  });

  it('human mirroring the engine on identical structures wins as II', async () => {
    const created = await client.createSession('rbrb', 'rbrb', 2, 'II');
    const { arena, root } = newArena();
    await arena.restore(created.id);
    await until(() => root.querySelectorAll('.cell').length === 8, 'board');
    let state = arena.state!;
    while (!state.finished) {
      const answerIn = state.pending!.structure === 'A' ? 'B' : 'A';
      const mirror = state.pending!.position;
      const row = root.querySelector(`.board-row[data-structure=${answerIn}]`)!;
      (row.querySelector(`.cell[data-position="${mirror}"]`) as HTMLButtonElement).click();
      await until(() => arena.state !== state, 'the move to land');
      state = arena.state!;
    }
    expect(state.winner).toBe('II');
    expect(root.querySelector('.banner')?.textContent).toContain('player II wins');
  });

  it('mid-game reload refetches the identical board', async () => {
    const { arena, root } = newArena();
    await startGame(root, arena);
    await clickCell(root, arena, 'A', 2, 1);
    const before = JSON.stringify(arena.state);
    const { arena: again, root: root2 } = newArena();
    await again.restore(arena.state!.id);
    await until(() => again.state !== null, 'restored state');
    expect(JSON.stringify(again.state)).toBe(before);
    expect(root2.querySelectorAll('.badge')).toHaveLength(root.querySelectorAll('.badge').length);
  });

  it('not-your-turn clicks are inert against the live service', async () => {
    const created = await client.createSession('rbrb', 'rbrb', 2, 'I');
    const { arena, root } = newArena();
    await arena.restore(created.id);
    await until(() => root.querySelectorAll('.cell').length === 8, 'board');
    // human is I and it is their move; clicking is fine. Play one round,
    // then verify an out-of-turn click cannot happen because the engine
    // answered synchronously and it is I's turn again with pending == null.
    await clickCell(root, arena, 'A', 1, 1);
    expect(arena.state!.turn).toBe('I');
    const historyBefore = arena.state!.history.length;
    // cells rendered for the finished/not-clickable rows carry tooltips
    const state = arena.state!;
    expect(state.humanToMove).toBe(true);
    expect(historyBefore).toBe(1);
  });
});
