import itertools

import pytest

from syncodec.deltrans import DeltransDeskCode
from syncodec.words import Word


@pytest.fixture(scope="session")
def desk_code():
    # cap-5 greedy hash takes ~20s; build once and share
    return DeltransDeskCode.build(28, 5)


def binary_words(n):
    for bits in itertools.product((0, 1), repeat=n):
        yield Word(bits, 2)


def quaternary_words(n):
    for symbols in itertools.product(range(4), repeat=n):
        yield Word(symbols, 4)
