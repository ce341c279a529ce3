"""Readable renderings of level values and characters.

Level values print as an optimal representative of their class when one is
cheap to compute (levels 0-2); higher levels print a reduced witness subword,
which identifies the class but is not canonical.
"""

from __future__ import annotations

from .engine import Character, NType, TypeContext, characters, cut
from .orders import ColouredOrder, Palette
from .twoequiv import canon2


def ntype_info(t: NType, palette: Palette, ctx: TypeContext | None = None) -> dict:
    """Representative string and canonicity flag for a level value."""
    if t.level == 0:
        return {"level": 0, "representative": "-", "canonical": True}
    if t.level == 1:
        ids = sorted(t.colour_ids())
        rep = ColouredOrder(palette, ids).text()
        return {"level": 1, "representative": rep, "canonical": True}
    witness = ColouredOrder(palette, t.witness)
    if t.level == 2:
        return {"level": 2, "representative": canon2(witness).text(), "canonical": True}
    reduced = cut(witness, t.level - 1, ctx)
    return {"level": t.level, "witness": reduced.text(), "canonical": False}


def ntype_text(t: NType, palette: Palette, ctx: TypeContext | None = None) -> str:
    info = ntype_info(t, palette, ctx)
    return info.get("representative") or info["witness"]


def character_text(ch: Character, palette: Palette, ctx: TypeContext | None = None) -> str:
    left = ntype_text(ch.left, palette, ctx)
    right = ntype_text(ch.right, palette, ctx)
    return f"<{left},{right}>_{ch.colour.glyph}"


def character_info(ch: Character, palette: Palette, ctx: TypeContext | None = None) -> dict:
    return {
        "left": ntype_info(ch.left, palette, ctx),
        "right": ntype_info(ch.right, palette, ctx),
        "colour": ch.colour.glyph,
    }


def characters_report(
    order: ColouredOrder, level: int, ctx: TypeContext | None = None
) -> list[dict]:
    """One record per position: 1-based position, colour, flank renderings."""
    out = []
    for i, ch in enumerate(characters(order, level, ctx)):
        record = character_info(ch, order.palette, ctx)
        record["position"] = i + 1
        out.append(record)
    return out
