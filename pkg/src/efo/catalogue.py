"""Catalogue files: stable JSON and CSV exports of the 2-class enumeration.

Records are sorted by representative (length, then colour ids) and every
field is serialised in a fixed order, so regenerating a catalogue reproduces
it byte for byte.
"""

from __future__ import annotations

import csv
import io
import json

from .orders import ColouredOrder
from .twoequiv import Catalogue2, ClassRecord

GENERATOR_VERSION = "1"


def _glyph_string(palette, colour_ids) -> str:
    order = ColouredOrder(palette, colour_ids)
    return "" if len(order) == 0 else order.text()


def record_dict(record: ClassRecord, palette) -> dict:
    d = record.descriptor
    return {
        "pattern": d.config.pattern_text(),
        "colours": _glyph_string(palette, d.config.colours),
        "gaps": [_glyph_string(palette, sorted(g)) for g in d.gaps],
        "representative": record.representative.text(),
        "length": len(record.representative),
        "finite": record.finite,
    }


def catalogue_dict(cat: Catalogue2) -> dict:
    return {
        "header": {
            "palette": "".join(cat.palette.glyphs()),
            "moves": 2,
            "generator": GENERATOR_VERSION,
            "budget": cat.budget,
            "complete": cat.complete,
            "classes": len(cat.records),
            "maxRepresentativeLength": cat.max_length,
        },
        "records": [record_dict(r, cat.palette) for r in cat.records],
    }


def to_json_bytes(cat: Catalogue2) -> bytes:
    return (json.dumps(catalogue_dict(cat), indent=2, ensure_ascii=True) + "\n").encode()


CSV_FIELDS = ["pattern", "colours", "gaps", "representative", "length", "finite"]


def to_csv_bytes(cat: Catalogue2) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in cat.records:
        d = record_dict(r, cat.palette)
        writer.writerow(
            [
                d["pattern"],
                d["colours"],
                ";".join(d["gaps"]),
                d["representative"],
                d["length"],
                "true" if d["finite"] else "false",
            ]
        )
    return buf.getvalue().encode()


def write_json(cat: Catalogue2, path) -> None:
    with open(path, "wb") as fh:
        fh.write(to_json_bytes(cat))


def write_csv(cat: Catalogue2, path) -> None:
    with open(path, "wb") as fh:
        fh.write(to_csv_bytes(cat))
