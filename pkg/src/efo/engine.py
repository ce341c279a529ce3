"""n-round game equivalence engine for coloured orders.

Two orders are n-equivalent when the duplicator (player II) has a winning
strategy in the n-move Ehrenfeucht-Fraisse game.  The engine decides this
through the standard character recursion: the level-0 value of every order is
a single shared unit, and the level n+1 value is the set of triples
(colour, left level-n value, right level-n value) contributed by the order's
positions.  Two orders are (n+1)-equivalent exactly when those sets coincide.

Values are hash-consed (structurally equal values are the same object), so
equivalence checks are identity checks, and every interval value is memoised
per base string keyed by (lo, hi, level).  A brute-force minimax oracle over
the literal move tree is kept deliberately independent of the recursion so
the two routes can be checked against each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

from .errors import BudgetError, effective_budget
from .orders import Colour, ColouredOrder, IntervalView

PLAYER_I = "I"
PLAYER_II = "II"


class NType:
    """Hash-consed level-n value; equal values are identical objects.

    ``members`` is None at level 0 and a frozenset of (colour id, left NType,
    right NType) triples at level n+1.  ``witness`` records the colour ids of
    the first string interned with this value.
    """

    __slots__ = ("level", "serial", "members", "witness")

    def __init__(self, level, serial, members, witness):
        self.level = level
        self.serial = serial
        self.members = members
        self.witness = witness

    def colour_ids(self) -> frozenset[int]:
        """Colours realized by the strings of this class (level >= 1)."""
        if self.level == 0:
            raise ValueError("level-0 value carries no colour information")
        return frozenset(c for (c, _, _) in self.members)

    def __repr__(self):
        return f"NType(level={self.level}, serial={self.serial})"


class Character(NamedTuple):
    """The n-character of a position: its flanking level-n values plus colour."""

    left: NType
    right: NType
    colour: Colour


class TypeContext:
    """Interning table plus per-string interval memo.

    Reads of the tables are plain dict lookups; inserts go through
    ``dict.setdefault`` so concurrent interning of the same key under the GIL
    still yields a single object and identity semantics survive threading.
    """

    def __init__(self):
        self._intern: dict = {}
        self._level1: dict = {}
        self._memo: dict = {}
        self._prefix: dict = {}
        self._counter = itertools.count()
        self.unit = NType(0, next(self._counter), None, ())

    def _intern_type(self, level, members, witness) -> NType:
        key = (level, frozenset((c, l.serial, r.serial) for (c, l, r) in members))
        t = self._intern.get(key)
        if t is None:
            t = self._intern.setdefault(
                key, NType(level, next(self._counter), frozenset(members), witness)
            )
        return t

    def _type1(self, colour_ids: frozenset[int], witness) -> NType:
        t = self._level1.get(colour_ids)
        if t is None:
            members = {(c, self.unit, self.unit) for c in colour_ids}
            t = self._level1.setdefault(colour_ids, self._intern_type(1, members, witness))
        return t

    def _prefix_counts(self, order: ColouredOrder):
        # per-colour running counts so any interval's colour set is O(m)
        got = self._prefix.get(order.ids)
        if got is None:
            m = len(order.palette)
            pref = [[0] * (len(order.ids) + 1) for _ in range(m)]
            for i, c in enumerate(order.ids):
                for cc in range(m):
                    pref[cc][i + 1] = pref[cc][i]
                pref[c][i + 1] += 1
            got = self._prefix.setdefault(order.ids, pref)
        return got

    def _memo_for(self, order: ColouredOrder) -> dict:
        memo = self._memo.get(order.ids)
        if memo is None:
            memo = self._memo.setdefault(order.ids, {})
        return memo


_DEFAULT_CONTEXT = TypeContext()


def _context(ctx: TypeContext | None) -> TypeContext:
    return _DEFAULT_CONTEXT if ctx is None else ctx


def _itype(ctx: TypeContext, order: ColouredOrder, lo: int, hi: int, level: int) -> NType:
    if level == 0:
        return ctx.unit
    memo = ctx._memo_for(order)
    key = (lo, hi, level)
    t = memo.get(key)
    if t is not None:
        return t
    if level == 1:
        pref = ctx._prefix_counts(order)
        cols = frozenset(c for c in range(len(order.palette)) if pref[c][hi] > pref[c][lo])
        t = ctx._type1(cols, order.ids[lo:hi])
    else:
        ids = order.ids
        members = set()
        for a in range(lo, hi):
            left = _itype(ctx, order, lo, a, level - 1)
            right = _itype(ctx, order, a + 1, hi, level - 1)
            members.add((ids[a], left, right))
        t = ctx._intern_type(level, members, ids[lo:hi])
    memo[key] = t
    return t


def ntype(order: ColouredOrder, level: int, ctx: TypeContext | None = None) -> NType:
    """The level-n value of an order; equal values are identical objects."""
    if level < 0:
        raise ValueError("level must be >= 0")
    return _itype(_context(ctx), order, 0, len(order), level)


def interval_ntype(view: IntervalView, level: int, ctx: TypeContext | None = None) -> NType:
    if level < 0:
        raise ValueError("level must be >= 0")
    return _itype(_context(ctx), view.base, view.lo, view.hi, level)


def characters(order: ColouredOrder, level: int, ctx: TypeContext | None = None) -> list[Character]:
    """The n-character of every position, in position order."""
    ctx = _context(ctx)
    k = len(order)
    out = []
    for i in range(k):
        out.append(
            Character(
                _itype(ctx, order, 0, i, level),
                _itype(ctx, order, i + 1, k, level),
                order[i],
            )
        )
    return out


def equiv(a: ColouredOrder, b: ColouredOrder, level: int, ctx: TypeContext | None = None) -> bool:
    """Whether the duplicator wins the level-move game on a and b."""
    if a.palette != b.palette:
        raise ValueError("orders must share a palette")
    ctx = _context(ctx)
    return ntype(a, level, ctx) is ntype(b, level, ctx)


# ---------------------------------------------------------------------------
# Brute-force game oracle (independent of the character recursion)
# ---------------------------------------------------------------------------


def game_oracle(a: ColouredOrder, b: ColouredOrder, moves: int, budget: int | None = None) -> str:
    """Exhaustive minimax winner of the n-move game.

    The full move tree is explored: the spoiler may pick any point of either
    structure (repeats included), the duplicator answers in the other one, and
    the duplicator wins when the chosen pairs form an order- and
    colour-isomorphism after all moves.  Intended for small instances only.
    """
    if a.palette != b.palette:
        raise ValueError("orders must share a palette")
    if moves < 0:
        raise ValueError("moves must be >= 0")
    limit = effective_budget(budget)
    cost = (len(a) + len(b) + 1) ** moves * max(len(a), len(b), 1)
    if cost > limit:
        raise BudgetError(
            f"minimax over |A|={len(a)}, |B|={len(b)}, n={moves} exceeds budget {limit}"
        )

    ia, ib = a.ids, b.ids
    la, lb = len(ia), len(ib)
    memo: dict = {}

    def replies(pairs, pos, in_a):
        # Consistent answers to a spoiler pick: the forced partner for a
        # repeated point, otherwise same-coloured points strictly inside the
        # matching gap.  pairs is sorted on both coordinates at once.
        if in_a:
            lo, hi = -1, lb
            for x, y in pairs:
                if x == pos:
                    return (y,)
                if x < pos:
                    lo = y
                else:
                    hi = y
                    break
            col = ia[pos]
            return tuple(q for q in range(lo + 1, hi) if ib[q] == col)
        lo, hi = -1, la
        for x, y in pairs:
            if y == pos:
                return (x,)
            if y < pos:
                lo = x
            else:
                hi = x
                break
        col = ib[pos]
        return tuple(p for p in range(lo + 1, hi) if ia[p] == col)

    def win_ii(pairs, r):
        if r == 0:
            return True
        key = (pairs, r)
        cached = memo.get(key)
        if cached is not None:
            return cached
        ok = True
        for pos in range(la):
            if not any(
                win_ii(tuple(sorted(set(pairs + ((pos, q),)))), r - 1)
                for q in replies(pairs, pos, True)
            ):
                ok = False
                break
        if ok:
            for pos in range(lb):
                if not any(
                    win_ii(tuple(sorted(set(pairs + ((p, pos),)))), r - 1)
                    for p in replies(pairs, pos, False)
                ):
                    ok = False
                    break
        memo[key] = ok
        return ok

    return PLAYER_II if win_ii((), moves) else PLAYER_I


# ---------------------------------------------------------------------------
# Game states and strategy synthesis
# ---------------------------------------------------------------------------

SIDE_A = "A"
SIDE_B = "B"


@dataclass(frozen=True)
class GameState:
    """A (possibly mid-round) position of the n-move game.

    ``history`` holds the completed (a, b) position pairs, 0-based and sorted;
    ``pending`` is the spoiler's half-move awaiting an answer.  Either the
    partial map is an order- and colour-isomorphism or ``lost_for_ii`` is set.
    moves_left counts whole rounds still to play.
    """

    a: ColouredOrder
    b: ColouredOrder
    history: tuple[tuple[int, int], ...] = ()
    moves_left: int = 0
    pending: Optional[tuple[str, int]] = None
    lost_for_ii: bool = False

    @classmethod
    def new(cls, a: ColouredOrder, b: ColouredOrder, moves: int) -> "GameState":
        if a.palette != b.palette:
            raise ValueError("orders must share a palette")
        if moves < 0:
            raise ValueError("moves must be >= 0")
        return cls(a=a, b=b, moves_left=moves)

    @property
    def finished(self) -> bool:
        return self.lost_for_ii or (self.moves_left == 0 and self.pending is None)

    @property
    def winner(self) -> Optional[str]:
        if not self.finished:
            return None
        return PLAYER_I if self.lost_for_ii else PLAYER_II

    def with_spoiler_move(self, side: str, pos: int) -> "GameState":
        if self.pending is not None:
            raise ValueError("a spoiler move is already pending")
        if self.moves_left <= 0 or self.lost_for_ii:
            raise ValueError("game is over")
        length = len(self.a) if side == SIDE_A else len(self.b)
        if side not in (SIDE_A, SIDE_B):
            raise ValueError(f"unknown side {side!r}")
        if not 0 <= pos < length:
            raise ValueError(f"position {pos} out of range for side {side}")
        return replace(self, pending=(side, pos))

    def with_duplicator_reply(self, pos: int) -> "GameState":
        if self.pending is None:
            raise ValueError("no spoiler move to answer")
        side, spos = self.pending
        if side == SIDE_A:
            apos, bpos = spos, pos
            length = len(self.b)
        else:
            apos, bpos = pos, spos
            length = len(self.a)
        if not 0 <= pos < length:
            raise ValueError(f"position {pos} out of range")
        pair = (apos, bpos)
        consistent = self.a.ids[apos] == self.b.ids[bpos] and _pair_consistent(
            self.history, pair
        )
        history = tuple(sorted(set(self.history + (pair,))))
        return replace(
            self,
            history=history,
            pending=None,
            moves_left=self.moves_left - 1,
            lost_for_ii=self.lost_for_ii or not consistent,
        )


def _pair_consistent(history: tuple[tuple[int, int], ...], pair: tuple[int, int]) -> bool:
    pa, pb = pair
    for x, y in history:
        if (x == pa) != (y == pb):
            return False
        if x != pa and (x < pa) != (y < pb):
            return False
    return True


def _gap_pairs(state: GameState):
    """Corresponding open intervals between consecutive matched points."""
    bounds_a = [-1] + [x for x, _ in state.history] + [len(state.a)]
    bounds_b = [-1] + [y for _, y in state.history] + [len(state.b)]
    return [
        ((bounds_a[i] + 1, bounds_a[i + 1]), (bounds_b[i] + 1, bounds_b[i + 1]))
        for i in range(len(bounds_a) - 1)
    ]


def alive_for_ii(state: GameState, ctx: TypeContext | None = None) -> bool:
    """Whether the duplicator can still win: every matching gap pair is
    moves_left-equivalent (and the map so far is an isomorphism)."""
    if state.lost_for_ii:
        return False
    ctx = _context(ctx)
    r = state.moves_left
    for (alo, ahi), (blo, bhi) in _gap_pairs(state):
        if _itype(ctx, state.a, alo, ahi, r) is not _itype(ctx, state.b, blo, bhi, r):
            return False
    return True


class MoveChoice(NamedTuple):
    side: Optional[str]
    position: Optional[int]
    keeps_win: bool


def best_move(state: GameState, mover: str, ctx: TypeContext | None = None) -> MoveChoice:
    """A strategy-preserving move for the given player.

    For the duplicator: answer inside the matching gap so that both flanking
    parts stay (moves_left - 1)-equivalent.  For the spoiler: pick a point
    whose character inside its gap the other structure cannot answer.  When
    the mover has no winning strategy the first legal move is returned with a
    losing evaluation; a duplicator with no position to play at all gets
    MoveChoice(None, None, False), which is a verdict rather than an error.
    Ties break towards the smallest position in A, then in B.
    """
    ctx = _context(ctx)
    if mover == PLAYER_II:
        return _best_duplicator_reply(state, ctx)
    if mover == PLAYER_I:
        return _best_spoiler_move(state, ctx)
    raise ValueError(f"unknown player {mover!r}")


def _best_duplicator_reply(state: GameState, ctx: TypeContext) -> MoveChoice:
    if state.pending is None:
        raise ValueError("duplicator moves only in reply to a pending spoiler move")
    side, _ = state.pending
    other_len = len(state.b) if side == SIDE_A else len(state.a)
    reply_side = SIDE_B if side == SIDE_A else SIDE_A
    if other_len == 0:
        return MoveChoice(None, None, False)
    fallback = None
    for q in range(other_len):
        nxt = state.with_duplicator_reply(q)
        if not nxt.lost_for_ii:
            if alive_for_ii(nxt, ctx):
                return MoveChoice(reply_side, q, True)
            if fallback is None:
                fallback = q
    return MoveChoice(reply_side, fallback if fallback is not None else 0, False)


def _best_spoiler_move(state: GameState, ctx: TypeContext) -> MoveChoice:
    if state.pending is not None:
        raise ValueError("spoiler already moved this round")
    if state.moves_left <= 0:
        raise ValueError("no moves left")
    for side, length in ((SIDE_A, len(state.a)), (SIDE_B, len(state.b))):
        for pos in range(length):
            if _spoiler_move_wins(state, side, pos, ctx):
                return MoveChoice(side, pos, True)
    if len(state.a):
        return MoveChoice(SIDE_A, 0, False)
    if len(state.b):
        return MoveChoice(SIDE_B, 0, False)
    return MoveChoice(None, None, False)


def _spoiler_move_wins(state: GameState, side: str, pos: int, ctx: TypeContext) -> bool:
    probed = state.with_spoiler_move(side, pos)
    other_len = len(state.b) if side == SIDE_A else len(state.a)
    for q in range(other_len):
        nxt = probed.with_duplicator_reply(q)
        if not nxt.lost_for_ii and alive_for_ii(nxt, ctx):
            return False
    return True


# ---------------------------------------------------------------------------
# Cutting reduction
# ---------------------------------------------------------------------------


def cut(order: ColouredOrder, level: int, ctx: TypeContext | None = None) -> ColouredOrder:
    """Shrink an order while preserving (level+1)-equivalence.

    Repeatedly deletes an interval (a, b] where positions a and b share a
    level-n character and every character inside (a, b] already occurs at or
    before a.  Scans take the leftmost a and then the largest valid b, so the
    result is deterministic; it is always a subword of the input.
    """
    ctx = _context(ctx)
    current = order
    while True:
        chars = characters(current, level, ctx)
        k = len(chars)
        removed = False
        for a in range(k):
            seen = set(chars[: a + 1])
            for b in range(k - 1, a, -1):
                if chars[b] == chars[a] and all(chars[x] in seen for x in range(a + 1, b + 1)):
                    current = ColouredOrder(
                        current.palette, current.ids[: a + 1] + current.ids[b + 1 :]
                    )
                    removed = True
                    break
            if removed:
                break
        if not removed:
            return current
