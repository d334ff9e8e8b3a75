from __future__ import annotations

from itertools import product

import pytest

from qorder.fixtures import n3, p2, q2, q3, trop
from qorder.structures import EnrichedStructure

SAMPLES = __import__("pathlib").Path(__file__).resolve().parent.parent / "samples"


def one(base, elem: str, label: str = "") -> EnrichedStructure:
    return EnrichedStructure.from_names(base, [("*", base.objects[0])], [[elem]], label)


def two(base, hom, label: str = "") -> EnrichedStructure:
    t = base.objects[0]
    return EnrichedStructure.from_names(base, [("a", t), ("b", t)], hom, label)


def largest(L, pred):
    """Brute force: the unique largest element satisfying ``pred``, checked to exist."""
    sat = [x for x in L.carrier if pred(x)]
    tops = [x for x in sat if all(L.leq(y, x) for y in sat)]
    assert len(tops) == 1
    return tops[0]


def all_bases():
    return [q2(), q3(), p2(), n3(), trop(4)]


@pytest.fixture
def C1():
    return one(q3(), "1", "C1")


@pytest.fixture
def Sm():
    return one(q3(), "m", "Sm")


@pytest.fixture
def isolated():
    return two(q2(), [["1", "0"], ["0", "0"]], "isolated")


def arrows(Q):
    for x, y in product(range(Q.n_objects), repeat=2):
        for e in Q.hom(x, y).carrier:
            yield x, y, e
