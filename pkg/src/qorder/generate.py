"""Exhaustive generation of small enriched structures over a base."""

from __future__ import annotations

from itertools import combinations_with_replacement, product
from typing import Iterator, Literal

from .matrix import QMatrix, TypedSet
from .quantaloid import Quantaloid
from .structures import EnrichedStructure

Filter = Literal["any", "semicategory", "regular", "trs", "category", "normal"]

_FLAG = {
    "semicategory": "semicategory",
    "regular": "regular",
    "trs": "totally_regular",
    "category": "category",
    "normal": "normal",
}


def type_tuples(base: Quantaloid, n: int, sorted_only: bool = True) -> Iterator[tuple[int, ...]]:
    """Object typings for ``n`` objects; non-decreasing ones only unless asked otherwise."""
    if sorted_only:
        yield from combinations_with_replacement(range(base.n_objects), n)
    else:
        yield from product(range(base.n_objects), repeat=n)


def structures(
    base: Quantaloid, n: int, kind: Filter = "any", sorted_types: bool = True
) -> Iterator[EnrichedStructure]:
    """Every structure with ``n`` objects named ``a0, a1, ...`` whose flags pass ``kind``."""
    flag = _FLAG.get(kind)
    names = tuple(f"a{i}" for i in range(n))
    for types in type_tuples(base, n, sorted_types):
        obs = TypedSet(names, types)
        cells = [(i, j) for i in range(n) for j in range(n)]
        ranges = [base.hom(types[j], types[i]).carrier for i, j in cells]
        for vals in product(*ranges):
            entries = tuple(tuple(vals[i * n + j] for j in range(n)) for i in range(n))
            S = EnrichedStructure(QMatrix(base, obs, obs, entries), f"{base.name}#{n}")
            if flag is None or getattr(S.flags, flag):
                yield S


def structures_up_to(base: Quantaloid, max_objects: int, kind: Filter = "any") -> list[EnrichedStructure]:
    out: list[EnrichedStructure] = []
    for n in range(1, max_objects + 1):
        out.extend(structures(base, n, kind))
    return out
