"""Complete 2-equivalence theory: threshold configurations, class descriptors,
canonical optimal substrings, and exhaustive class enumeration.

For a string with m colours, x_i is the leftmost point with i colours weakly
to its left and y_j the rightmost point with j colours weakly to its right.
The induced linear order on {x_1..x_m, y_1..y_m} (the threshold configuration)
together with the set of colours strictly inside each gap between consecutive
threshold points determines the 2-equivalence class exactly, which is what
everything in this module leans on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .engine import TypeContext, characters
from .errors import BudgetError, InfeasibleError, effective_budget
from .orders import ColouredOrder, IntervalView, Palette

# Merge-pattern tokens: "X" a lone x_i, "Y" a lone y_j, "XY" a coincidence.
TOKEN_X = "X"
TOKEN_Y = "Y"
TOKEN_XY = "XY"


@dataclass(frozen=True)
class TConfiguration:
    """A coloured threshold configuration.

    ``tokens`` spells the interleaving left to right; the i-th X-bearing token
    is x_i and the j-th Y-bearing token counted from the right is y_j.
    ``colours`` gives the colour id of each token's point.
    """

    tokens: tuple[str, ...]
    colours: tuple[int, ...]

    def __post_init__(self):
        if len(self.tokens) != len(self.colours):
            raise ValueError("one colour per token required")
        xs = sum(1 for t in self.tokens if t in (TOKEN_X, TOKEN_XY))
        ys = sum(1 for t in self.tokens if t in (TOKEN_Y, TOKEN_XY))
        if any(t not in (TOKEN_X, TOKEN_Y, TOKEN_XY) for t in self.tokens):
            raise ValueError("tokens must be X, Y or XY")
        if xs != ys:
            raise ValueError("x and y point counts must agree")
        if self.tokens:
            if self.tokens[0] not in (TOKEN_X, TOKEN_XY):
                raise ValueError("x_1 must be the least point")
            if self.tokens[-1] not in (TOKEN_Y, TOKEN_XY):
                raise ValueError("y_1 must be the greatest point")

    @property
    def m(self) -> int:
        return sum(1 for t in self.tokens if t in (TOKEN_X, TOKEN_XY))

    def pattern(self) -> tuple[str, ...]:
        return self.tokens

    def pattern_text(self) -> str:
        """Human-readable pattern, e.g. ``x1<x2=y2<y1``."""
        return pattern_text(self.tokens)


EMPTY_CONFIG = TConfiguration((), ())

# Gap colour sets, one per adjacent token pair, ordered left to right.
GapColours = tuple


@dataclass(frozen=True)
class ClassDescriptor2:
    """Names a 2-equivalence class: coloured configuration plus gap colours."""

    config: TConfiguration
    gaps: tuple[frozenset, ...]

    def __post_init__(self):
        expected = max(len(self.config.tokens) - 1, 0)
        if len(self.gaps) != expected:
            raise ValueError(f"expected {expected} gap sets, got {len(self.gaps)}")


EMPTY_DESCRIPTOR = ClassDescriptor2(EMPTY_CONFIG, ())


def pattern_text(tokens: tuple[str, ...]) -> str:
    if not tokens:
        return "(empty)"
    m = sum(1 for t in tokens if t in (TOKEN_X, TOKEN_XY))
    ys_seen = 0
    xi = 0
    parts = []
    for t in tokens:
        names = []
        if t in (TOKEN_X, TOKEN_XY):
            xi += 1
            names.append(f"x{xi}")
        if t in (TOKEN_Y, TOKEN_XY):
            ys_seen += 1
            names.append(f"y{m + 1 - ys_seen}")
        parts.append("=".join(names))
    return "<".join(parts)


def _threshold_positions(order: ColouredOrder) -> tuple[list[int], list[int]]:
    """0-based positions of x_1..x_m (ascending) and y_1..y_m (y_1 last)."""
    xs = []
    seen: set[int] = set()
    for i, c in enumerate(order.ids):
        if c not in seen:
            seen.add(c)
            xs.append(i)
    ys = []
    seen = set()
    for i in range(len(order.ids) - 1, -1, -1):
        c = order.ids[i]
        if c not in seen:
            seen.add(c)
            ys.append(i)
    return xs, ys


def _tpoints(order: ColouredOrder) -> tuple[list[int], TConfiguration]:
    xs, ys = _threshold_positions(order)
    xset, yset = set(xs), set(ys)
    tpos = sorted(xset | yset)
    tokens = []
    for p in tpos:
        if p in xset and p in yset:
            tokens.append(TOKEN_XY)
        elif p in xset:
            tokens.append(TOKEN_X)
        else:
            tokens.append(TOKEN_Y)
    config = TConfiguration(tuple(tokens), tuple(order.ids[p] for p in tpos))
    return tpos, config


def tconfig_of(order: ColouredOrder) -> TConfiguration:
    """The coloured threshold configuration induced by an order."""
    if len(order) == 0:
        return EMPTY_CONFIG
    return _tpoints(order)[1]


def _token_index_maps(tokens: tuple[str, ...]) -> tuple[list[int], list[int]]:
    """Token indices of x_1..x_m and of y_1..y_m."""
    xs = [i for i, t in enumerate(tokens) if t in (TOKEN_X, TOKEN_XY)]
    ys_scan = [i for i, t in enumerate(tokens) if t in (TOKEN_Y, TOKEN_XY)]
    ys = list(reversed(ys_scan))  # ys[j-1] is y_j
    return xs, ys


def _violation(tokens: tuple[str, ...]) -> Optional[tuple[int, int]]:
    xs, ys = _token_index_maps(tokens)
    m = len(xs)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            if i + j <= m + 1 and xs[i - 1] > ys[j - 1]:
                return (i, j)
    return None


def feasible(config: "TConfiguration | tuple[str, ...]") -> bool:
    """Whether some coloured order induces this configuration:
    i + j <= m + 1 must imply x_i <= y_j."""
    tokens = config.tokens if isinstance(config, TConfiguration) else tuple(config)
    return _violation(tokens) is None


def merge_patterns(m: int) -> list[tuple[str, ...]]:
    """All uncoloured threshold patterns on m colours (feasible or not)."""
    if m == 0:
        return [()]
    out: list[tuple[str, ...]] = []

    def extend(prefix: list[str], xs_left: int, ys_left: int):
        if xs_left == 0 and ys_left == 0:
            if prefix[0] in (TOKEN_X, TOKEN_XY) and prefix[-1] in (TOKEN_Y, TOKEN_XY):
                out.append(tuple(prefix))
            return
        for tok, dx, dy in ((TOKEN_X, 1, 0), (TOKEN_Y, 0, 1), (TOKEN_XY, 1, 1)):
            if xs_left >= dx and ys_left >= dy:
                prefix.append(tok)
                extend(prefix, xs_left - dx, ys_left - dy)
                prefix.pop()

    extend([], m, m)
    return out


def realize(pattern: "tuple[str, ...] | TConfiguration", palette: Palette | None = None) -> ColouredOrder:
    """A coloured order on exactly the pattern's points inducing the pattern.

    Uses the greedy colouring: x_i gets colour i-1; each y gets the colour of
    a coinciding x, otherwise the smallest colour not yet used by a y among
    those legal for its slot.
    """
    tokens = pattern.tokens if isinstance(pattern, TConfiguration) else tuple(pattern)
    bad = _violation(tokens)
    if bad is not None:
        raise InfeasibleError(
            f"infeasible pattern: x{bad[0]} > y{bad[1]} with {bad[0]}+{bad[1]} <= m+1",
            pair=bad,
        )
    m = sum(1 for t in tokens if t in (TOKEN_X, TOKEN_XY))
    if palette is None:
        palette = Palette.default(max(m, 1))
    colours: list[int] = []
    used_y: set[int] = set()
    x_seen = 0
    for t in tokens:
        if t == TOKEN_X:
            colours.append(x_seen)
            x_seen += 1
        elif t == TOKEN_XY:
            colours.append(x_seen)
            used_y.add(x_seen)
            x_seen += 1
        else:
            avail = [c for c in range(x_seen) if c not in used_y]
            if not avail:
                raise InfeasibleError("no legal colour for a y point; pattern infeasible")
            colours.append(avail[0])
            used_y.add(avail[0])
    return ColouredOrder(palette, colours)


def gap_allowed_colours(config: TConfiguration, gap: int) -> frozenset:
    """Colours insertable strictly between tokens gap and gap+1: those already
    seen weakly left of the gap among x colours and weakly right among y colours."""
    left_cols = frozenset(
        config.colours[i]
        for i, t in enumerate(config.tokens)
        if i <= gap and t in (TOKEN_X, TOKEN_XY)
    )
    right_cols = frozenset(
        config.colours[i]
        for i, t in enumerate(config.tokens)
        if i >= gap + 1 and t in (TOKEN_Y, TOKEN_XY)
    )
    return left_cols & right_cols


def descriptor(order: ColouredOrder) -> ClassDescriptor2:
    """The class descriptor of an order; equal descriptors mean 2-equivalent."""
    if len(order) == 0:
        return EMPTY_DESCRIPTOR
    tpos, config = _tpoints(order)
    ids = order.ids
    gaps = tuple(
        frozenset(ids[p] for p in range(tpos[g] + 1, tpos[g + 1]))
        for g in range(len(tpos) - 1)
    )
    return ClassDescriptor2(config, gaps)


def is_finite_class(d: ClassDescriptor2) -> bool:
    """Finite classes are exactly the singletons: every gap set empty."""
    return all(not g for g in d.gaps)


def canon2(order: ColouredOrder) -> ColouredOrder:
    """A 2-equivalent optimal substring: keep the threshold points and, inside
    each gap, the first occurrence of each gap colour."""
    if len(order) == 0:
        return order
    tpos, _ = _tpoints(order)
    kept = list(tpos)
    ids = order.ids
    for g in range(len(tpos) - 1):
        seen: set[int] = set()
        for p in range(tpos[g] + 1, tpos[g + 1]):
            if ids[p] not in seen:
                seen.add(ids[p])
                kept.append(p)
    kept.sort()
    return ColouredOrder(order.palette, tuple(ids[p] for p in kept))


def is_optimal2(order: ColouredOrder, ctx: TypeContext | None = None) -> bool:
    """Shortest in its 2-class, equivalently: no 1-character occurs twice."""
    chars = characters(order, 1, ctx)
    return len(set(chars)) == len(chars)


class LMRSplit2(NamedTuple):
    """Left of x_m, the stretch from x_m to y_m, and right of y_m.

    When y_m precedes x_m the defining conditions overlap; the middle view is
    empty and ``overlap`` flags the case instead of guessing a resolution.
    """

    l: IntervalView
    m: IntervalView
    r: IntervalView
    overlap: bool


def lmr_split2(order: ColouredOrder) -> LMRSplit2:
    k = len(order)
    if k == 0:
        empty = order.view(0, 0)
        return LMRSplit2(empty, empty, empty, False)
    xs, ys = _threshold_positions(order)
    px, py = xs[-1], ys[-1]
    left = order.view(0, px)
    right = order.view(py + 1, k)
    if px <= py:
        return LMRSplit2(left, order.view(px, py + 1), right, False)
    return LMRSplit2(left, order.view(px, px), right, True)


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------
#
# Bucketing all strings of length <= budget by their level-2 value is done
# with memoised incremental typing: the level-2 value of a string is the set
# of its (left colours, colour, right colours) position profiles, and the
# profile set of A + c is a function of the profile set of A alone.  Strings
# are therefore swept breadth-first and merged as soon as their profile sets
# coincide, which visits each class once instead of each string once.
# Profiles are packed into bit masks: code = L | R << m | c << 2m.


class ClassRecord(NamedTuple):
    representative: ColouredOrder
    descriptor: ClassDescriptor2
    finite: bool


@dataclass(frozen=True)
class Catalogue2:
    """Every 2-class with a representative of length <= budget, sorted by
    representative (length, then colour ids).  ``complete`` certifies that a
    further extension step produced no new class."""

    palette: Palette
    budget: int
    records: tuple[ClassRecord, ...]
    complete: bool

    @property
    def max_length(self) -> int:
        return max(len(r.representative) for r in self.records)


def enumerate2(
    m: int, budget: int | None = None, palette: Palette | None = None
) -> Catalogue2:
    """Catalogue of all 2-classes of strings over m colours.

    The default budget m*m + 2m is the exact upper bound on optimal
    representative lengths; smaller budgets are rejected as incomplete.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    bound = m * m + 2 * m
    if budget is None:
        budget = bound
    if budget < bound:
        raise BudgetError(f"budget {budget} below m^2+2m = {bound}; catalogue would be incomplete")
    if palette is None:
        palette = Palette.default(m)
    if len(palette) < m:
        raise ValueError("palette smaller than m")

    shift_c = 2 * m
    new_rbit = [1 << (m + c) for c in range(m)]
    start_code = [c << shift_c for c in range(m)]  # L=0, R=0 plus colour

    # state -> representative colour ids; insertion order is BFS order, so the
    # first string reaching a state is its shortest, lexicographically least rep
    reps: dict[int, tuple[int, ...]] = {0: ()}
    frontier: list[tuple[int, int, tuple[int, ...]]] = [(0, 0, ())]
    complete = False
    for depth in range(budget + 1):
        if not frontier:
            complete = True
            break
        probe_only = depth == budget  # one step past the budget certifies closure
        nxt: list[tuple[int, int, tuple[int, ...]]] = []
        for mask, colmask, rep in frontier:
            for c in range(m):
                rbit = new_rbit[c]
                new_mask = 0
                rest = mask
                while rest:
                    low = rest & -rest
                    rest ^= low
                    code = low.bit_length() - 1
                    new_mask |= 1 << (code | rbit)
                new_mask |= 1 << (colmask | (c << shift_c))
                if new_mask not in reps:
                    if probe_only:
                        return _build_catalogue(palette, budget, reps, complete=False)
                    new_rep = rep + (c,)
                    reps[new_mask] = new_rep
                    nxt.append((new_mask, colmask | (1 << c), new_rep))
        frontier = nxt
    else:
        complete = True  # the probe layer ran and produced nothing new
    return _build_catalogue(palette, budget, reps, complete=complete)


def _build_catalogue(palette, budget, reps, complete) -> Catalogue2:
    records = []
    for rep_ids in reps.values():
        rep = ColouredOrder(palette, rep_ids)
        d = descriptor(rep)
        records.append(ClassRecord(rep, d, is_finite_class(d)))
    records.sort(key=lambda r: (len(r.representative), r.representative.ids))
    return Catalogue2(palette, budget, tuple(records), complete)


def max_optimal_length2(m: int, budget: int | None = None) -> int:
    """Largest optimal-representative length over all 2-classes of m colours."""
    cat = enumerate2(m, budget)
    if not cat.complete:
        raise BudgetError(f"sweep to length {cat.budget} did not close the class space")
    return cat.max_length


# ---------------------------------------------------------------------------
# Direct descriptor generator (cross-check for the sweep)
# ---------------------------------------------------------------------------


def _colourings(tokens: tuple[str, ...], colour_ids: tuple[int, ...]):
    """All legal colourings of a pattern using exactly the given colours."""
    m = sum(1 for t in tokens if t in (TOKEN_X, TOKEN_XY))
    if m != len(colour_ids):
        raise ValueError("colour count must match pattern size")
    results: list[tuple[int, ...]] = []
    for x_perm in itertools.permutations(colour_ids):
        # colour of x_i is x_perm[i-1]; assign y colours left to right
        def assign(idx: int, x_seen: int, used_y: frozenset, acc: tuple[int, ...]):
            if idx == len(tokens):
                results.append(acc)
                return
            t = tokens[idx]
            if t == TOKEN_X:
                assign(idx + 1, x_seen + 1, used_y, acc + (x_perm[x_seen],))
            elif t == TOKEN_XY:
                col = x_perm[x_seen]
                if col in used_y:
                    return
                assign(idx + 1, x_seen + 1, used_y | {col}, acc + (col,))
            else:
                for col in x_perm[:x_seen]:
                    if col not in used_y:
                        assign(idx + 1, x_seen, used_y | {col}, acc + (col,))

        assign(0, 0, frozenset(), ())
    return results


def generate_descriptors(m: int, palette: Palette | None = None) -> set[ClassDescriptor2]:
    """All class descriptors over a palette of m colours, generated directly
    from feasible patterns, legal colourings and legal gap sets.  Candidate
    colourings are validated by realising them and reading the configuration
    back, which sidesteps the corner cases of the counting argument."""
    if palette is None:
        palette = Palette.default(m)
    out: set[ClassDescriptor2] = {EMPTY_DESCRIPTOR}
    all_ids = [c.id for c in palette]
    for size in range(1, m + 1):
        for subset in itertools.combinations(all_ids, size):
            for tokens in merge_patterns(size):
                if not feasible(tokens):
                    continue
                for colours in _colourings(tokens, subset):
                    config = TConfiguration(tokens, colours)
                    probe = ColouredOrder(palette, colours)
                    if tconfig_of(probe) != config:
                        continue
                    gap_options = [
                        [frozenset(c) for c in _powerset(sorted(gap_allowed_colours(config, g)))]
                        for g in range(len(tokens) - 1)
                    ]
                    for gaps in itertools.product(*gap_options):
                        out.add(ClassDescriptor2(config, tuple(gaps)))
    return out


def _powerset(items):
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def class_member(d: ClassDescriptor2, palette: Palette) -> ColouredOrder:
    """A canonical member of the class: threshold points plus each gap colour
    once, in ascending colour order."""
    ids: list[int] = []
    for i, col in enumerate(d.config.colours):
        ids.append(col)
        if i < len(d.gaps):
            ids.extend(sorted(d.gaps[i]))
    return ColouredOrder(palette, ids)
