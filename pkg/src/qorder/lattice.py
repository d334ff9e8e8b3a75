"""Finite complete lattices with dense integer element ids."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InputError, LatticeError


@dataclass
class ValidationReport:
    """Outcome of an axiom check: ``ok`` iff no violations were recorded."""

    violations: list[tuple[str, object]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom: str, witness: object) -> None:
        self.violations.append((axiom, witness))

    def __bool__(self) -> bool:
        return self.ok

    def lines(self) -> list[str]:
        if self.ok:
            return ["ok"]
        return [f"{axiom}: {witness}" for axiom, witness in self.violations]


class FiniteLattice:
    """A finite poset stored as a full boolean ``leq`` table.

    Elements are the ids ``0..n-1``; ``names`` gives their printable labels.
    Construction does not validate; call :func:`validate_lattice` for that.
    Joins and meets are tabulated on first use and raise
    :class:`LatticeError` if the order is not a lattice.
    """

    def __init__(self, names: Sequence[str], leq: Sequence[Sequence[bool]]):
        self.names = tuple(str(n) for n in names)
        n = len(self.names)
        if len(set(self.names)) != n:
            raise InputError(f"duplicate element names in {self.names}")
        if len(leq) != n or any(len(row) != n for row in leq):
            raise InputError("leq table must be square over the carrier")
        self._leq = tuple(tuple(bool(v) for v in row) for row in leq)
        self._index = {name: i for i, name in enumerate(self.names)}

    @classmethod
    def from_relation(cls, names: Sequence[str], pairs: Iterable[tuple[str, str]]) -> FiniteLattice:
        """Order generated (reflexively, transitively) by ``x <= y`` pairs given by name."""
        idx = {name: i for i, name in enumerate(names)}
        n = len(names)
        table = [[i == j for j in range(n)] for i in range(n)]
        for x, y in pairs:
            try:
                table[idx[x]][idx[y]] = True
            except KeyError as exc:
                raise InputError(f"unknown element {exc.args[0]!r} in order relation") from None
        for k in range(n):
            for i in range(n):
                if table[i][k]:
                    for j in range(n):
                        if table[k][j]:
                            table[i][j] = True
        return cls(names, table)

    @classmethod
    def chain(cls, names: Sequence[str]) -> FiniteLattice:
        n = len(names)
        return cls(names, [[i <= j for j in range(n)] for i in range(n)])

    @classmethod
    def from_key(cls, names: Sequence[str], le) -> FiniteLattice:
        return cls(names, [[bool(le(x, y)) for y in names] for x in names])

    def __len__(self) -> int:
        return len(self.names)

    def __repr__(self) -> str:
        return f"FiniteLattice({list(self.names)})"

    @property
    def carrier(self) -> range:
        return range(len(self.names))

    def index(self, name: str) -> int:
        try:
            return self._index[str(name)]
        except KeyError:
            raise InputError(f"{name!r} is not an element of {list(self.names)}") from None

    def name(self, x: int) -> str:
        return self.names[self._check(x)]

    def _check(self, x: int) -> int:
        if not isinstance(x, int) or not 0 <= x < len(self.names):
            raise InputError(f"element id {x!r} outside carrier of size {len(self.names)}")
        return x

    def leq(self, x: int, y: int) -> bool:
        return self._leq[self._check(x)][self._check(y)]

    @property
    def leq_table(self) -> tuple[tuple[bool, ...], ...]:
        return self._leq

    def upper_bounds(self, xs: Iterable[int]) -> list[int]:
        xs = [self._check(x) for x in xs]
        return [u for u in self.carrier if all(self._leq[x][u] for x in xs)]

    def lower_bounds(self, xs: Iterable[int]) -> list[int]:
        xs = [self._check(x) for x in xs]
        return [u for u in self.carrier if all(self._leq[u][x] for x in xs)]

    def _least(self, cands: list[int]) -> int | None:
        for c in cands:
            if all(self._leq[c][d] for d in cands):
                return c
        return None

    def _greatest(self, cands: list[int]) -> int | None:
        for c in cands:
            if all(self._leq[d][c] for d in cands):
                return c
        return None

    def sup_of(self, xs: Iterable[int]) -> int | None:
        """Least upper bound by exhaustive scan, or None when it does not exist."""
        return self._least(self.upper_bounds(xs))

    def inf_of(self, xs: Iterable[int]) -> int | None:
        return self._greatest(self.lower_bounds(xs))

    @cached_property
    def bottom(self) -> int:
        b = self.sup_of(())
        if b is None:
            raise LatticeError("no bottom element (empty join missing)")
        return b

    @cached_property
    def top(self) -> int:
        t = self.inf_of(())
        if t is None:
            raise LatticeError("no top element (empty meet missing)")
        return t

    @cached_property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for x in self.carrier:
            row = []
            for y in self.carrier:
                j = self.sup_of((x, y))
                if j is None:
                    raise LatticeError(f"no join for {{{self.names[x]}, {self.names[y]}}}")
                row.append(j)
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for x in self.carrier:
            row = []
            for y in self.carrier:
                m = self.inf_of((x, y))
                if m is None:
                    raise LatticeError(f"no meet for {{{self.names[x]}, {self.names[y]}}}")
                row.append(m)
            rows.append(tuple(row))
        return tuple(rows)

    def join(self, xs: Iterable[int]) -> int:
        """Join of a finite family; the empty join is bottom."""
        acc = self.bottom
        table = self.join_table
        for x in xs:
            acc = table[acc][self._check(x)]
        return acc

    def meet(self, xs: Iterable[int]) -> int:
        """Meet of a finite family; the empty meet is top."""
        acc = self.top
        table = self.meet_table
        for x in xs:
            acc = table[acc][self._check(x)]
        return acc


def validate_lattice(L: FiniteLattice) -> ValidationReport:
    """Check the partial-order and completeness axioms.

    For a finite poset, bounds for the empty set plus binary joins and meets
    give every subset a sup and an inf, so pairs serve as witnesses.
    """
    report = ValidationReport()
    leq = L.leq_table
    n = len(L)
    for x in range(n):
        if not leq[x][x]:
            report.add("reflexivity fails", (L.names[x],))
    for x, y in combinations(range(n), 2):
        if leq[x][y] and leq[y][x]:
            report.add("antisymmetry fails", (L.names[x], L.names[y]))
    for x in range(n):
        for y in range(n):
            if not leq[x][y]:
                continue
            for z in range(n):
                if leq[y][z] and not leq[x][z]:
                    report.add("transitivity fails", (L.names[x], L.names[y], L.names[z]))
    if not report.ok:
        return report
    if L.sup_of(()) is None:
        report.add("no sup", ())
    if L.inf_of(()) is None:
        report.add("no inf", ())
    for x, y in combinations(range(n), 2):
        if L.sup_of((x, y)) is None:
            report.add("no sup", (L.names[x], L.names[y]))
        if L.inf_of((x, y)) is None:
            report.add("no inf", (L.names[x], L.names[y]))
    return report
