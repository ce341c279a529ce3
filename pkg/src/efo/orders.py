"""Finite coloured linear orders: palettes, parsing, printing, interval views.

A coloured order is a finite word over a palette of colours.  Positions are
0-based internally; user-facing output (CLI, service, reports) is 1-based.
All values here are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import ParseError

# Letters a-z with r, b, g pulled to the front so small palettes read like
# the conventional red/blue/green examples.
_LETTER_GLYPHS = "rbg" + "".join(c for c in "abcdefghijklmnopqrstuvwxyz" if c not in "rbg")

EMPTY_LITERAL = "-"


class Colour(NamedTuple):
    id: int
    glyph: str


class Palette:
    """An ordered set of colours; orders refer to colours by id."""

    __slots__ = ("colours", "_by_glyph")

    def __init__(self, glyphs: Iterable[str]):
        glyphs = tuple(glyphs)
        if not glyphs:
            raise ValueError("palette needs at least one colour")
        if len(set(glyphs)) != len(glyphs):
            raise ValueError("palette glyphs must be unique")
        if any(not g for g in glyphs):
            raise ValueError("palette glyphs must be non-empty")
        self.colours: tuple[Colour, ...] = tuple(Colour(i, g) for i, g in enumerate(glyphs))
        self._by_glyph = {c.glyph: c for c in self.colours}

    @classmethod
    def default(cls, m: int) -> "Palette":
        """Standard palette of m colours: letters for m <= 26, integers beyond."""
        if m <= 0:
            raise ValueError("palette size must be positive")
        if m <= len(_LETTER_GLYPHS):
            return cls(_LETTER_GLYPHS[:m])
        return cls(str(i) for i in range(m))

    @property
    def glyphic(self) -> bool:
        """True when every glyph is a single character (compact text encoding)."""
        return all(len(c.glyph) == 1 for c in self.colours)

    def colour(self, glyph: str) -> Colour:
        return self._by_glyph[glyph]

    def glyphs(self) -> tuple[str, ...]:
        return tuple(c.glyph for c in self.colours)

    def __len__(self) -> int:
        return len(self.colours)

    def __iter__(self) -> Iterator[Colour]:
        return iter(self.colours)

    def __eq__(self, other) -> bool:
        return isinstance(other, Palette) and self.glyphs() == other.glyphs()

    def __hash__(self) -> int:
        return hash(self.glyphs())

    def __repr__(self) -> str:
        return f"Palette({''.join(self.glyphs()) if self.glyphic else self.glyphs()})"


class ColouredOrder:
    """A finite sequence of palette colours."""

    __slots__ = ("palette", "ids")

    def __init__(self, palette: Palette, ids: Iterable[int]):
        ids = tuple(ids)
        n = len(palette)
        for c in ids:
            if not 0 <= c < n:
                raise ValueError(f"colour id {c} outside palette of size {n}")
        self.palette = palette
        self.ids = ids

    def __len__(self) -> int:
        return len(self.ids)

    def __getitem__(self, i: int) -> Colour:
        return self.palette.colours[self.ids[i]]

    def __iter__(self) -> Iterator[Colour]:
        cols = self.palette.colours
        return (cols[c] for c in self.ids)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ColouredOrder)
            and self.ids == other.ids
            and self.palette == other.palette
        )

    def __hash__(self) -> int:
        return hash((self.palette, self.ids))

    def __repr__(self) -> str:
        return f"ColouredOrder({self.text()!r})"

    def text(self) -> str:
        if not self.ids:
            return EMPTY_LITERAL
        glyphs = [self.palette.colours[c].glyph for c in self.ids]
        return "".join(glyphs) if self.palette.glyphic else ",".join(glyphs)

    def reverse(self) -> "ColouredOrder":
        return ColouredOrder(self.palette, reversed(self.ids))

    def view(self, lo: int = 0, hi: int | None = None) -> "IntervalView":
        return IntervalView(self, lo, len(self.ids) if hi is None else hi)

    def __add__(self, other: "ColouredOrder") -> "ColouredOrder":
        if self.palette != other.palette:
            raise ValueError("cannot concatenate orders over different palettes")
        return ColouredOrder(self.palette, self.ids + other.ids)


@dataclass(frozen=True)
class IntervalView:
    """A non-owning convex window [lo, hi) of a coloured order."""

    base: ColouredOrder
    lo: int
    hi: int

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi <= len(self.base):
            raise ValueError(f"bad interval [{self.lo}, {self.hi}) for length {len(self.base)}")

    def __len__(self) -> int:
        return self.hi - self.lo

    def ids(self) -> tuple[int, ...]:
        return self.base.ids[self.lo : self.hi]

    def to_order(self) -> ColouredOrder:
        return ColouredOrder(self.base.palette, self.ids())

    def text(self) -> str:
        return self.to_order().text()


def parse(text: str, palette: Palette) -> ColouredOrder:
    """Parse textual form; "-" is the empty order.  Rejects unknown glyphs."""
    if text == EMPTY_LITERAL:
        return ColouredOrder(palette, ())
    if not text:
        raise ParseError("empty text (use '-' for the empty order)", position=1, glyph="")
    tokens = list(text) if palette.glyphic else text.split(",")
    ids = []
    for i, tok in enumerate(tokens):
        try:
            ids.append(palette.colour(tok).id)
        except KeyError:
            raise ParseError(
                f"unknown glyph {tok!r} at position {i + 1}", position=i + 1, glyph=tok
            ) from None
    return ColouredOrder(palette, ids)


def colour_set(value: ColouredOrder | IntervalView) -> frozenset[Colour]:
    """Exactly the colours occurring in the order or view."""
    if isinstance(value, IntervalView):
        palette, ids = value.base.palette, value.ids()
    else:
        palette, ids = value.palette, value.ids
    return frozenset(palette.colours[c] for c in set(ids))


def read_orders(lines: Iterable[str], palette: Palette) -> list[ColouredOrder]:
    """Read newline-separated orders; blank lines and '#' comments are skipped."""
    out = []
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append(parse(line, palette))
    return out
