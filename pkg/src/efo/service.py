"""Game session service: JSON endpoints the browser arena plays against.

Endpoints (all JSON, schema version 1; positions on the wire are 1-based):

    POST /sessions                {"a": "rrr", "b": "rrrr", "moves": 2, "human": "I"}
    GET  /sessions/<id>
    POST /sessions/<id>/moves    {"structure": "A", "position": 2}
    GET  /sessions/<id>/hints
    GET  /healthz

Sessions live in memory, are independent, and serialise their own moves; the
engine's interning table is shared across sessions.  Illegal moves are
rejected with the state unchanged.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .engine import (
    PLAYER_I,
    PLAYER_II,
    SIDE_A,
    SIDE_B,
    GameState,
    TypeContext,
    alive_for_ii,
    best_move,
)
from .errors import ParseError
from .orders import Palette, parse

SCHEMA_VERSION = 1
MAX_LENGTH = 200
MAX_MOVES = 8

_SERVICE_PALETTE = Palette.default(3)


class SessionError(Exception):
    def __init__(self, message: str, status: int = 400):
        super().__init__(message)
        self.status = status


class Session:
    """One live game; the engine side moves automatically."""

    def __init__(self, a_text: str, b_text: str, moves: int, human: str, ctx: TypeContext):
        if human not in (PLAYER_I, PLAYER_II):
            raise SessionError('"human" must be "I" or "II"')
        if not 0 <= moves <= MAX_MOVES:
            raise SessionError(f'"moves" must be between 0 and {MAX_MOVES}')
        try:
            a = parse(a_text, _SERVICE_PALETTE)
            b = parse(b_text, _SERVICE_PALETTE)
        except ParseError as e:
            raise SessionError(str(e)) from None
        if len(a) > MAX_LENGTH or len(b) > MAX_LENGTH:
            raise SessionError(f"structures longer than {MAX_LENGTH} are not supported")
        self.id = uuid.uuid4().hex
        self.a_text = a.text()
        self.b_text = b.text()
        self.moves = moves
        self.human = human
        self.ctx = ctx
        self.state = GameState.new(a, b, moves)
        self.transcript: list[dict] = []
        self.forced_winner: str | None = None  # set when a player cannot move at all
        self.lock = threading.Lock()
        self._advance_engine()

    # -- turn bookkeeping ---------------------------------------------------

    @property
    def finished(self) -> bool:
        return self.forced_winner is not None or self.state.finished

    @property
    def winner(self) -> str | None:
        if self.forced_winner is not None:
            return self.forced_winner
        return self.state.winner

    @property
    def turn(self) -> str | None:
        if self.finished:
            return None
        return PLAYER_I if self.state.pending is None else PLAYER_II

    def _record(self, player: str, side: str, pos: int, by: str) -> None:
        self.transcript.append(
            {
                "player": player,
                "structure": side,
                "position": pos + 1,
                "by": by,
                "at": time.time(),
            }
        )

    def _advance_engine(self) -> None:
        while not self.finished and self.turn != self.human:
            mover = self.turn
            choice = best_move(self.state, mover, self.ctx)
            if choice.position is None:
                # the mover cannot place a point anywhere: the duplicator
                # loses outright, a stuck spoiler forfeits the remaining moves
                self.forced_winner = PLAYER_I if mover == PLAYER_II else PLAYER_II
                return
            if mover == PLAYER_I:
                self.state = self.state.with_spoiler_move(choice.side, choice.position)
            else:
                self.state = self.state.with_duplicator_reply(choice.position)
            self._record(mover, choice.side, choice.position, "engine")
        # a human who cannot move at all loses/wins the same way
        if not self.finished and self.turn == self.human:
            if self.human == PLAYER_II:
                side, _ = self.state.pending
                required = len(self.state.b) if side == SIDE_A else len(self.state.a)
                if required == 0:
                    self.forced_winner = PLAYER_I
            elif len(self.state.a) == 0 and len(self.state.b) == 0:
                self.forced_winner = PLAYER_II

    def human_move(self, structure: str, position_1based: int) -> None:
        if self.finished:
            raise SessionError("session is finished")
        if self.turn != self.human:
            raise SessionError("not your turn")
        if structure not in (SIDE_A, SIDE_B):
            raise SessionError('"structure" must be "A" or "B"')
        pos = position_1based - 1
        mover = self.turn
        if mover == PLAYER_I:
            length = len(self.state.a) if structure == SIDE_A else len(self.state.b)
            if not 0 <= pos < length:
                raise SessionError(f"position {position_1based} out of range for {structure}")
            self.state = self.state.with_spoiler_move(structure, pos)
        else:
            pending_side, _ = self.state.pending
            required = SIDE_B if pending_side == SIDE_A else SIDE_A
            if structure != required:
                raise SessionError(f"the reply must be played in structure {required}")
            length = len(self.state.a) if required == SIDE_A else len(self.state.b)
            if not 0 <= pos < length:
                raise SessionError(f"position {position_1based} out of range for {structure}")
            self.state = self.state.with_duplicator_reply(pos)
        self._record(mover, structure, pos, "human")
        self._advance_engine()

    def hints(self) -> list[dict]:
        """Moves that keep the human's side winning; empty when it is not the
        human's turn or no move preserves the win."""
        if self.finished or self.turn != self.human:
            return []
        out = []
        if self.turn == PLAYER_I:
            for side, length in ((SIDE_A, len(self.state.a)), (SIDE_B, len(self.state.b))):
                for p in range(length):
                    probe = self.state.with_spoiler_move(side, p)
                    answers = len(probe.b) if side == SIDE_A else len(probe.a)
                    if not any(
                        alive_for_ii(probe.with_duplicator_reply(q), self.ctx)
                        for q in range(answers)
                    ):
                        out.append({"structure": side, "position": p + 1})
        else:
            pending_side, _ = self.state.pending
            side = SIDE_B if pending_side == SIDE_A else SIDE_A
            length = len(self.state.a) if side == SIDE_A else len(self.state.b)
            for q in range(length):
                nxt = self.state.with_duplicator_reply(q)
                if not nxt.lost_for_ii and alive_for_ii(nxt, self.ctx):
                    out.append({"structure": side, "position": q + 1})
        return out

    def to_json(self) -> dict:
        pending = None
        if self.state.pending is not None:
            side, pos = self.state.pending
            pending = {"structure": side, "position": pos + 1}
        return {
            "schema": SCHEMA_VERSION,
            "id": self.id,
            "a": self.a_text,
            "b": self.b_text,
            "moves": self.moves,
            "human": self.human,
            "movesLeft": self.state.moves_left,
            "pending": pending,
            "history": [{"a": x + 1, "b": y + 1} for x, y in self.state.history],
            "turn": self.turn,
            "humanToMove": self.turn == self.human,
            "finished": self.finished,
            "winner": self.winner,
            "mapOk": not self.state.lost_for_ii,
            "transcript": self.transcript,
        }


class SessionStore:
    def __init__(self):
        self.ctx = TypeContext()
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, payload: dict) -> Session:
        for field in ("a", "b", "moves", "human"):
            if field not in payload:
                raise SessionError(f'missing field "{field}"')
        if not isinstance(payload["moves"], int):
            raise SessionError('"moves" must be an integer')
        session = Session(payload["a"], payload["b"], payload["moves"], payload["human"], self.ctx)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise SessionError(f"unknown session {session_id!r}", status=404)
        return session


class _Handler(BaseHTTPRequestHandler):
    server_version = "efo-arena/0.1"

    def log_message(self, fmt, *args):  # quiet by default
        if getattr(self.server, "verbose", False):
            super().log_message(fmt, *args)

    def _reply(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()
        self.wfile.write(body)

    def _payload(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b"{}"
        try:
            payload = json.loads(raw.decode() or "{}")
        except (ValueError, UnicodeDecodeError):
            raise SessionError("request body is not valid JSON") from None
        if not isinstance(payload, dict):
            raise SessionError("request body must be a JSON object")
        return payload

    def do_OPTIONS(self):
        self._reply(204, {})

    def do_GET(self):
        try:
            parts = [p for p in self.path.split("?")[0].split("/") if p]
            if parts == ["healthz"]:
                self._reply(200, {"ok": True})
            elif len(parts) == 2 and parts[0] == "sessions":
                session = self.server.store.get(parts[1])
                with session.lock:
                    self._reply(200, session.to_json())
            elif len(parts) == 3 and parts[0] == "sessions" and parts[2] == "hints":
                session = self.server.store.get(parts[1])
                with session.lock:
                    self._reply(200, {"moves": session.hints()})
            else:
                self._reply(404, {"error": "not found"})
        except SessionError as e:
            self._reply(e.status, {"error": str(e)})

    def do_POST(self):
        try:
            parts = [p for p in self.path.split("?")[0].split("/") if p]
            if parts == ["sessions"]:
                session = self.server.store.create(self._payload())
                with session.lock:
                    self._reply(201, session.to_json())
            elif len(parts) == 3 and parts[0] == "sessions" and parts[2] == "moves":
                payload = self._payload()
                session = self.server.store.get(parts[1])
                if "structure" not in payload or "position" not in payload:
                    raise SessionError('body must carry "structure" and "position"')
                if not isinstance(payload["position"], int):
                    raise SessionError('"position" must be an integer')
                with session.lock:
                    session.human_move(payload["structure"], payload["position"])
                    self._reply(200, session.to_json())
            else:
                self._reply(404, {"error": "not found"})
        except SessionError as e:
            self._reply(e.status, {"error": str(e)})


class GameServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, host: str = "127.0.0.1", port: int = 8077, verbose: bool = False):
        super().__init__((host, port), _Handler)
        self.store = SessionStore()
        self.verbose = verbose

    @property
    def port(self) -> int:
        return self.server_address[1]


def run(host: str = "127.0.0.1", port: int = 8077, verbose: bool = True) -> None:
    server = GameServer(host, port, verbose=verbose)
    print(f"listening on http://{host}:{server.port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
