import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from efo import (
    BudgetError,
    ColouredOrder,
    InfeasibleError,
    TypeContext,
    canon2,
    characters,
    colour_set,
    descriptor,
    enumerate2,
    equiv,
    feasible,
    gap_allowed_colours,
    generate_descriptors,
    is_finite_class,
    is_optimal2,
    lmr_split2,
    max_optimal_length2,
    merge_patterns,
    realize,
    tconfig_of,
)
from efo.twoequiv import EMPTY_DESCRIPTOR, pattern_text

from conftest import PAL2, PAL3, P, all_strings


# -- threshold configurations -------------------------------------------------


def test_tconfig_examples():
    assert tconfig_of(P("rbrb")).pattern_text() == "x1<x2<y2<y1"
    assert tconfig_of(P("rbrb")).colours == (0, 1, 0, 1)
    assert tconfig_of(P("rbb")).pattern_text() == "x1=y2<x2<y1"
    assert tconfig_of(P("r")).pattern_text() == "x1=y1"
    assert tconfig_of(P("-")).tokens == ()


def test_two_colour_singleton_listing():
    # the six patterns and one singleton string for each
    listing = {
        "rbrb": "x1<x2<y2<y1",
        "rbr": "x1<x2=y2<y1",
        "rrbb": "x1<y2<x2<y1",
        "rbb": "x1=y2<x2<y1",
        "rrb": "x1<y2<x2=y1",
        "rb": "x1=y2<x2=y1",
    }
    for text, pattern in listing.items():
        assert tconfig_of(P(text)).pattern_text() == pattern
        assert is_finite_class(descriptor(P(text)))


def test_merge_pattern_counts():
    assert len(merge_patterns(1)) == 2
    assert len(merge_patterns(2)) == 6
    assert len(merge_patterns(3)) == 26
    assert sum(1 for p in merge_patterns(3) if feasible(p)) == 22


def test_infeasible_patterns_are_the_four_listed():
    # y2 < x2 forces x2 <= y2 to fail (2 + 2 <= 4)
    bad = [p for p in merge_patterns(3) if not feasible(p)]
    assert len(bad) == 4
    for tokens in bad:
        ys = [i for i, t in enumerate(tokens) if t in ("Y", "XY")]
        xs = [i for i, t in enumerate(tokens) if t in ("X", "XY")]
        y2 = list(reversed(ys))[1]
        assert xs[1] > y2


def test_feasible_m1_always():
    assert all(feasible(p) for p in merge_patterns(1))


def test_real_strings_always_induce_feasible_configurations():
    rng = random.Random(2024)
    for s in all_strings(PAL2, 6):
        if len(s):
            assert feasible(tconfig_of(s))
    for _ in range(300):
        order = ColouredOrder(PAL3, tuple(rng.randint(0, 2) for _ in range(rng.randint(1, 20))))
        assert feasible(tconfig_of(order))


def test_realize_examples():
    assert realize(("X", "Y")).text() == "rr"
    assert realize(("X", "Y", "X", "Y"), PAL2).text() == "rrbb"
    with pytest.raises(InfeasibleError) as exc:
        realize(("X", "Y", "Y", "X", "X", "Y"))
    assert exc.value.pair == (2, 2)


def test_realize_roundtrip_all_feasible_m3():
    for tokens in merge_patterns(3):
        if not feasible(tokens):
            continue
        order = realize(tokens, PAL3)
        assert len(order) == len(tokens)
        assert tconfig_of(order).tokens == tokens


# -- descriptors ----------------------------------------------------------------


def test_descriptor_examples(ctx):
    assert descriptor(P("rrbrbrbb")) == descriptor(P("rrbbrrbb"))
    assert all(not g for g in descriptor(P("rbrb")).gaps)
    d = descriptor(P("rrrr"))
    assert d == descriptor(P("rrr"))
    assert d.config.pattern_text() == "x1<y1"
    assert d.gaps == (frozenset({0}),)


def test_descriptor_equality_is_two_equivalence_exhaustive(ctx):
    from efo import ntype

    # the partitions induced by level-2 values and by descriptors must agree
    partition_type = {}
    partition_desc = {}
    for s in all_strings(PAL2, 8):
        partition_type.setdefault(ntype(s, 2, ctx), []).append(s.ids)
        partition_desc.setdefault(descriptor(s), []).append(s.ids)
    assert sorted(map(sorted, partition_type.values())) == sorted(
        map(sorted, partition_desc.values())
    )


def test_descriptor_equality_matches_equiv_random_three_colours(ctx):
    rng = random.Random(417)
    samples = [
        ColouredOrder(PAL3, tuple(rng.randint(0, 2) for _ in range(rng.randint(0, 20))))
        for _ in range(400)
    ]
    for a, b in zip(samples, samples[1:]):
        assert (descriptor(a) == descriptor(b)) == equiv(a, b, 2, ctx)


def test_descriptor_equality_matches_the_literal_game_three_colours():
    # cross-checked against the raw minimax, not the character recursion
    from efo import PLAYER_II, game_oracle

    strings = all_strings(PAL3, 4)
    for a in strings:
        for b in strings:
            assert (descriptor(a) == descriptor(b)) == (game_oracle(a, b, 2) == PLAYER_II)


def test_gap_legality_of_real_strings():
    rng = random.Random(99)
    for _ in range(500):
        order = ColouredOrder(PAL3, tuple(rng.randint(0, 2) for _ in range(rng.randint(1, 18))))
        d = descriptor(order)
        for g, colours in enumerate(d.gaps):
            assert colours <= gap_allowed_colours(d.config, g)


def test_finiteness():
    assert is_finite_class(descriptor(P("rb")))
    assert not is_finite_class(descriptor(P("rrr")))
    assert is_finite_class(descriptor(P("rbrb")))
    assert is_finite_class(EMPTY_DESCRIPTOR)


def test_infinite_classes_have_a_second_member():
    # inserting one gap colour yields a longer member of the same class
    for record in enumerate2(2).records:
        d = record.descriptor
        if is_finite_class(d):
            continue
        rep = record.representative
        gap_index = next(i for i, g in enumerate(d.gaps) if g)
        col = sorted(d.gaps[gap_index])[0]
        # insert right after the gap's left threshold point
        from efo.twoequiv import _tpoints

        tpos, _ = _tpoints(rep)
        at = tpos[gap_index] + 1
        longer = ColouredOrder(rep.palette, rep.ids[:at] + (col,) + rep.ids[at:])
        assert descriptor(longer) == d
        assert len(longer) == len(rep) + 1


# -- canonicalisation -------------------------------------------------------------


def test_canon_examples():
    assert canon2(P("rrrr")).text() == "rrr"
    assert canon2(P("rrbrbrbb")).text() == "rrbrbrbb"
    assert canon2(P("rbrb")).text() == "rbrb"
    assert canon2(P("-")).text() == "-"


def test_optimality_examples(ctx):
    assert is_optimal2(P("rbrb"), ctx)
    assert not is_optimal2(P("rrrr"), ctx)


def test_all_90_representatives_have_distinct_characters(ctx):
    for record in enumerate2(2).records:
        if len(colour_set(record.representative)) == 2:
            assert is_optimal2(record.representative, ctx)


@given(st.text(alphabet="rbg", min_size=0, max_size=24))
def test_canon_properties(text):
    ctx = TypeContext()
    order = P(text or "-", PAL3)
    reduced = canon2(order)
    it = iter(order.ids)
    assert all(c in it for c in reduced.ids)  # subword
    assert equiv(order, reduced, 2, ctx)
    assert canon2(reduced) == reduced
    assert is_optimal2(reduced, ctx)
    m = len(colour_set(order))
    assert len(reduced) <= m * m + 2 * m


def test_optimal_iff_canon_keeps_length(ctx):
    rng = random.Random(5150)
    for _ in range(500):
        order = ColouredOrder(PAL3, tuple(rng.randint(0, 2) for _ in range(rng.randint(0, 25))))
        assert is_optimal2(order, ctx) == (len(order) == len(canon2(order)))


def test_optimal_iff_shortest_in_class_exhaustive(ctx):
    from efo import ntype

    # independent oracle: bucket every string of length <= 8 by its 2-class
    buckets = {}
    for s in all_strings(PAL2, 8):
        buckets.setdefault(ntype(s, 2, ctx), []).append(s)
    for members in buckets.values():
        shortest = min(len(s) for s in members)
        for s in members:
            assert is_optimal2(s, ctx) == (len(s) == shortest)


# -- L/M/R ---------------------------------------------------------------------


def test_lmr_split_examples():
    s = lmr_split2(P("rrbb"))
    assert (s.l.ids(), s.m.ids(), s.r.ids()) == ((0, 0), (), (1, 1))
    s = lmr_split2(P("rbbr"))
    assert (s.l.ids(), s.m.ids(), s.r.ids()) == ((0,), (1, 1), (0,))
    assert not s.overlap
    s = lmr_split2(P("rrr"))
    assert (len(s.l), len(s.m), len(s.r)) == (0, 3, 0)


def test_lmr_overlap_flagged_for_three_colours():
    order = P("rbbbgg", PAL3)
    s = lmr_split2(order)
    assert s.overlap
    assert len(s.m) == 0


def test_lmr_split_of_empty_order():
    s = lmr_split2(P("-"))
    assert (len(s.l), len(s.m), len(s.r), s.overlap) == (0, 0, 0, False)


# -- enumeration -------------------------------------------------------------------


def test_enumerate_counts():
    cat1 = enumerate2(1)
    assert len(cat1.records) == 4  # includes the empty order's class
    assert {r.representative.text() for r in cat1.records} == {"-", "r", "rr", "rrr"}
    cat2 = enumerate2(2)
    both = [r for r in cat2.records if len(colour_set(r.representative)) == 2]
    assert len(both) == 90
    assert len(cat2.records) == 97
    assert cat2.complete


def test_enumerate_budget_guard():
    with pytest.raises(BudgetError):
        enumerate2(2, budget=7)


def test_enumerate_representatives_are_optimal(ctx):
    for record in enumerate2(2).records:
        if len(record.representative):
            assert is_optimal2(record.representative, ctx)


def test_enumerate_descriptors_distinct():
    cat = enumerate2(2)
    descriptors = {r.descriptor for r in cat.records}
    assert len(descriptors) == len(cat.records)


def test_max_optimal_length():
    assert max_optimal_length2(1) == 3
    assert max_optimal_length2(2) == 8


def test_direct_generator_agrees_m1_m2():
    for m in (1, 2):
        cat = enumerate2(m)
        assert {r.descriptor for r in cat.records} == generate_descriptors(m)


def test_three_colour_sweep_agrees_with_generator_and_pattern_count():
    cat = enumerate2(3)
    assert cat.complete
    fully_split = [
        r for r in cat.records if r.descriptor.config.tokens == ("X", "X", "X", "Y", "Y", "Y")
    ]
    assert len(fully_split) == 36 * 2**9  # 18432
    assert {r.descriptor for r in cat.records} == generate_descriptors(3)


def test_pattern_text_rendering():
    assert pattern_text(("X", "XY", "Y")) == "x1<x2=y2<y1"
    assert pattern_text(()) == "(empty)"
