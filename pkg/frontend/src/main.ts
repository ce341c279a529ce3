import { ArenaClient } from './api';
import { mountArena } from './app';

const params = new URLSearchParams(window.location.search);
const service = params.get('service') ?? 'http://127.0.0.1:8077';
const root = document.getElementById('arena');
if (!root) throw new Error('missing #arena mount point');

const sessionId = window.location.hash.slice(1) || undefined;
mountArena(root, new ArenaClient(service), {
  sessionId,
  onSessionChange(id) {
    // keep the session in the URL so a reload refetches the same board
    window.location.hash = id ?? '';
  },
});
