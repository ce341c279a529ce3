from efo import characters, ntype
from efo.display import character_text, characters_report, ntype_info, ntype_text

from conftest import PAL2, P


def test_level0_and_level1_rendering(ctx):
    assert ntype_text(ntype(P("-"), 0, ctx), PAL2, ctx) == "-"
    assert ntype_text(ntype(P("brb"), 1, ctx), PAL2, ctx) == "rb"
    assert ntype_text(ntype(P("-"), 1, ctx), PAL2, ctx) == "-"


def test_level2_renders_optimal_representative(ctx):
    info = ntype_info(ntype(P("rrrrr"), 2, ctx), PAL2, ctx)
    assert info == {"level": 2, "representative": "rrr", "canonical": True}


def test_level3_renders_reduced_witness(ctx):
    info = ntype_info(ntype(P("rrrrrr"), 3, ctx), PAL2, ctx)
    assert info["canonical"] is False
    assert info["level"] == 3
    # the reduced witness still identifies the class
    assert ntype(P(info["witness"]), 3, ctx) is ntype(P("rrrrrr"), 3, ctx)


def test_character_text(ctx):
    chars = characters(P("rb"), 1, ctx)
    assert character_text(chars[0], PAL2, ctx) == "<-,b>_r"
    assert character_text(chars[1], PAL2, ctx) == "<r,->_b"


def test_characters_report_positions(ctx):
    report = characters_report(P("rbr"), 2, ctx)
    assert [r["position"] for r in report] == [1, 2, 3]
    assert report[0]["colour"] == "r"
    assert report[0]["left"]["representative"] == "-"
