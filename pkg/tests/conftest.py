import itertools

import pytest
from hypothesis import settings

from efo import ColouredOrder, Palette, TypeContext, parse

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

PAL2 = Palette.default(2)
PAL3 = Palette.default(3)


@pytest.fixture
def pal2():
    return PAL2


@pytest.fixture
def pal3():
    return PAL3


@pytest.fixture
def ctx():
    return TypeContext()


def P(text, palette=PAL2):
    return parse(text, palette)


def all_strings(palette, max_len):
    """Every order over the palette with length <= max_len, by length then lex."""
    m = len(palette)
    return [
        ColouredOrder(palette, ids)
        for length in range(max_len + 1)
        for ids in itertools.product(range(m), repeat=length)
    ]
