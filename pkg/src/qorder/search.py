"""Deterministic backtracking enumerators shared by the completion and Morita code.

Every enumerator yields results in lexicographic scan order: positions in
object-id order, candidate values in element-id order.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import BudgetExceeded, InputError
from .matrix import QMatrix, TypedSet, compose
from .structures import EnrichedStructure, ObjectMap, check_object_map


@dataclass(frozen=True)
class Budget:
    """Limits for exhaustive searches; exceeding one raises :class:`BudgetExceeded`."""

    max_objects: int = 3
    max_lattice: int = 8
    max_nodes: int = 2_000_000

    @classmethod
    def from_env(cls, default: Budget | None = None) -> Budget:
        """Read ``QORDER_BUDGET``: a bare node count or ``objects=3,lattice=8,nodes=...``."""
        base = default or cls()
        raw = os.environ.get("QORDER_BUDGET", "").strip()
        if not raw:
            return base
        if raw.isdigit():
            return cls(base.max_objects, base.max_lattice, int(raw))
        vals = {"objects": base.max_objects, "lattice": base.max_lattice, "nodes": base.max_nodes}
        for part in raw.split(","):
            key, sep, val = part.partition("=")
            if not sep or key.strip() not in vals or not val.strip().isdigit():
                raise InputError(f"cannot parse QORDER_BUDGET={raw!r}")
            vals[key.strip()] = int(val)
        return cls(vals["objects"], vals["lattice"], vals["nodes"])

    def check_inputs(self, *structures: EnrichedStructure) -> None:
        for S in structures:
            if len(S) > self.max_objects:
                raise BudgetExceeded(f"{len(S)} objects exceeds the budget of {self.max_objects}")
            if S.base.max_hom_size() > self.max_lattice:
                raise BudgetExceeded(
                    f"hom-lattices of size {S.base.max_hom_size()} exceed the budget of {self.max_lattice}"
                )

    def counter(self) -> Counter:
        return Counter(self.max_nodes)


class Counter:
    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise BudgetExceeded(f"search visited more than {self.limit} nodes")


def _tick(counter: Counter | None) -> None:
    if counter is not None:
        counter.tick()


def regular_columns(
    B: EnrichedStructure, x: int, e: int | None = None, counter: Counter | None = None
) -> list[tuple[int, ...]]:
    """Vectors ``v`` (``v[y]: x -> type y``) with ``B . v = v`` and, if given, ``v o e = v``.

    These are the regular matrices from a one-object structure with hom ``e``
    (of type ``x``) into ``B``.  ``B`` must be regular.
    """
    if not B.flags.regular:
        raise InputError("regular columns need a regular codomain")
    base = B.base
    n = len(B)
    tb = B.obs.types
    total = B.flags.totally_regular
    cands: list[list[int]] = []
    for y in range(n):
        L = base.hom(x, tb[y])
        vals = []
        for v in L.carrier:
            if e is not None and base.compose(x, x, tb[y], v, e) != v:
                continue
            if total and base.compose(x, tb[y], tb[y], B(y, y), v) != v:
                continue
            vals.append(v)
        cands.append(vals)

    out: list[tuple[int, ...]] = []
    cur = [0] * n

    def consistent(y: int, v: int) -> bool:
        Ly = base.hom(x, tb[y])
        for y2 in range(y):
            w = cur[y2]
            if not Ly.leq(base.compose(x, tb[y2], tb[y], B(y, y2), w), v):
                return False
            if not base.hom(x, tb[y2]).leq(base.compose(x, tb[y], tb[y2], B(y2, y), v), w):
                return False
        return True

    def rec(y: int) -> None:
        if y == n:
            vec = tuple(cur)
            if _is_fixed_column(B, x, vec):
                out.append(vec)
            return
        for v in cands[y]:
            _tick(counter)
            if consistent(y, v):
                cur[y] = v
                rec(y + 1)

    rec(0)
    return out


def _is_fixed_column(B: EnrichedStructure, x: int, vec: Sequence[int]) -> bool:
    base = B.base
    tb = B.obs.types
    for y2 in range(len(B)):
        L = base.hom(x, tb[y2])
        acc = L.bottom
        for y in range(len(B)):
            acc = L.join_table[acc][base.compose(x, tb[y], tb[y2], B(y2, y), vec[y])]
        if acc != vec[y2]:
            return False
    return True


def regular_semidistributors(
    A: EnrichedStructure, B: EnrichedStructure, counter: Counter | None = None
) -> Iterator[QMatrix]:
    """All matrices ``M: A -> B`` with ``B . M = M = M . A``, column-major scan order."""
    if not (A.flags.regular and B.flags.regular):
        raise InputError("regular semidistributors need regular domain and codomain")
    base = A.base
    ta, tb = A.obs.types, B.obs.types
    na, nb = len(A), len(B)
    col_cands = [
        regular_columns(B, ta[a], A(a, a) if A.flags.totally_regular else None, counter) for a in range(na)
    ]
    cols: list[tuple[int, ...]] = [()] * na

    def consistent(a: int, col: tuple[int, ...]) -> bool:
        for a2 in range(a):
            c2 = cols[a2]
            for b in range(nb):
                L = base.hom(ta[a2], tb[b])
                if not L.leq(base.compose(ta[a2], ta[a], tb[b], col[b], A(a, a2)), c2[b]):
                    return False
                L = base.hom(ta[a], tb[b])
                if not L.leq(base.compose(ta[a], ta[a2], tb[b], c2[b], A(a2, a)), col[b]):
                    return False
        return True

    def rec(a: int) -> Iterator[QMatrix]:
        if a == na:
            M = QMatrix(base, B.obs, A.obs, tuple(tuple(cols[j][i] for j in range(na)) for i in range(nb)))
            if compose(M, A.hom) == M:
                yield M
            return
        for col in col_cands[a]:
            _tick(counter)
            if consistent(a, col):
                cols[a] = col
                yield from rec(a + 1)

    yield from rec(0)


def all_matrices(base, rows: TypedSet, cols: TypedSet) -> Iterator[QMatrix]:
    """Every matrix of the given shape; exponential, for oracles on tiny shapes."""
    from itertools import product

    cells = [(i, j) for i in range(len(rows)) for j in range(len(cols))]
    ranges = [base.hom(cols.types[j], rows.types[i]).carrier for i, j in cells]
    for vals in product(*ranges):
        it = iter(vals)
        yield QMatrix(
            base, rows, cols, tuple(tuple(next(it) for _ in range(len(cols))) for _ in range(len(rows)))
        )


def object_maps(
    A: EnrichedStructure,
    B: EnrichedStructure,
    *,
    regular: bool = False,
    fully_faithful: bool = False,
    allowed: Sequence[Sequence[int]] | None = None,
    counter: Counter | None = None,
) -> Iterator[ObjectMap]:
    """Type-preserving semifunctors ``A -> B`` (regular ones if asked), scan order.

    ``allowed[a]`` optionally restricts the candidate images of ``a``.
    """
    base = A.base
    na, nb = len(A), len(B)
    use_local = regular and A.flags.totally_regular and B.flags.totally_regular
    cands: list[list[int]] = []
    for a in range(na):
        x = A.type_of(a)
        pool = allowed[a] if allowed is not None else range(nb)
        vals = []
        for b in pool:
            if B.type_of(b) != x:
                continue
            ea, eb = A(a, a), B(b, b)
            if fully_faithful and ea != eb:
                continue
            if not base.hom(x, x).leq(ea, eb):
                continue
            if use_local and not _locally_absorbing(A, B, a, b):
                continue
            vals.append(b)
        cands.append(vals)

    cur = [0] * na

    def consistent(a: int, b: int) -> bool:
        for a2 in range(a):
            b2 = cur[a2]
            if fully_faithful:
                if A(a2, a) != B(b2, b) or A(a, a2) != B(b, b2):
                    return False
            else:
                if not A.lattice(a2, a).leq(A(a2, a), B(b2, b)):
                    return False
                if not A.lattice(a, a2).leq(A(a, a2), B(b, b2)):
                    return False
        return True

    def rec(a: int) -> Iterator[ObjectMap]:
        if a == na:
            F = ObjectMap(A, B, tuple(cur))
            flags = check_object_map(F)
            if flags.semifunctor and (not regular or flags.regular_semifunctor):
                yield F
            return
        for b in cands[a]:
            _tick(counter)
            if consistent(a, b):
                cur[a] = b
                yield from rec(a + 1)

    yield from rec(0)


def _locally_absorbing(A: EnrichedStructure, B: EnrichedStructure, a: int, b: int) -> bool:
    base = A.base
    x = A.type_of(a)
    e = A(a, a)
    for y in range(len(B)):
        ty = B.type_of(y)
        if base.compose(x, x, ty, B(y, b), e) != B(y, b):
            return False
        if base.compose(ty, x, x, e, B(b, y)) != B(b, y):
            return False
    return True
