"""Matrices of base arrows between typed sets.

A matrix ``M: X -> Y`` has one row per element of ``Y`` and one column per
element of ``X``; the entry ``M[y][x]`` is an arrow ``type(x) -> type(y)``.
Composition of ``Psi: Y -> Z`` after ``Phi: X -> Y`` is
``(Psi . Phi)[z][x] = join_y Psi[z][y] o Phi[y][x]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import InputError
from .quantaloid import Quantaloid, extend_table, lift_table


@dataclass(frozen=True)
class TypedSet:
    names: tuple[str, ...]
    types: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.types):
            raise InputError("typed set needs one type per element")
        if len(set(self.names)) != len(self.names):
            raise InputError(f"duplicate element names in typed set {self.names}")

    @classmethod
    def of(cls, pairs: Iterable[tuple[str, int]]) -> TypedSet:
        pairs = list(pairs)
        return cls(tuple(str(n) for n, _ in pairs), tuple(int(t) for _, t in pairs))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"{name!r} is not in typed set {self.names}") from None

    def subset(self, idx: Sequence[int]) -> TypedSet:
        return TypedSet(tuple(self.names[i] for i in idx), tuple(self.types[i] for i in idx))

    def check_types(self, base: Quantaloid) -> None:
        for n, t in zip(self.names, self.types):
            if not 0 <= t < base.n_objects:
                raise InputError(f"type of {n!r} is not an object of {base.name}")


@dataclass(frozen=True)
class QMatrix:
    base: Quantaloid
    rows: TypedSet
    cols: TypedSet
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        self.rows.check_types(self.base)
        self.cols.check_types(self.base)
        if len(self.entries) != len(self.rows) or any(len(r) != len(self.cols) for r in self.entries):
            raise InputError(
                f"matrix shape does not match {len(self.rows)} rows x {len(self.cols)} columns"
            )
        for i, row in enumerate(self.entries):
            for j, v in enumerate(row):
                L = self.base.hom(self.cols.types[j], self.rows.types[i])
                if not isinstance(v, int) or not 0 <= v < len(L):
                    raise InputError(
                        f"entry ({self.rows.names[i]}, {self.cols.names[j]}) = {v!r} "
                        f"is not an element of its hom-lattice"
                    )

    @classmethod
    def from_names(
        cls, base: Quantaloid, rows: TypedSet, cols: TypedSet, names: Sequence[Sequence[str]]
    ) -> QMatrix:
        if len(names) != len(rows) or any(len(r) != len(cols) for r in names):
            raise InputError(f"matrix literal must be {len(rows)} x {len(cols)}")
        entries = tuple(
            tuple(
                base.hom(cols.types[j], rows.types[i]).index(names[i][j]) for j in range(len(cols))
            )
            for i in range(len(rows))
        )
        return cls(base, rows, cols, entries)

    @classmethod
    def build(cls, base: Quantaloid, rows: TypedSet, cols: TypedSet, fn) -> QMatrix:
        """Matrix with entry ``fn(i, j)`` at row ``i``, column ``j``."""
        return cls(
            base, rows, cols, tuple(tuple(fn(i, j) for j in range(len(cols))) for i in range(len(rows)))
        )

    @classmethod
    def bottom(cls, base: Quantaloid, rows: TypedSet, cols: TypedSet) -> QMatrix:
        return cls.build(base, rows, cols, lambda i, j: base.hom(cols.types[j], rows.types[i]).bottom)

    @classmethod
    def identity(cls, base: Quantaloid, ts: TypedSet) -> QMatrix:
        """The unit of matrix composition: identities on the diagonal, bottom elsewhere."""
        return cls.build(
            base,
            ts,
            ts,
            lambda i, j: base.identity(ts.types[i]) if i == j else base.hom(ts.types[j], ts.types[i]).bottom,
        )

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def lattice(self, i: int, j: int):
        return self.base.hom(self.cols.types[j], self.rows.types[i])

    def names(self) -> list[list[str]]:
        return [
            [self.lattice(i, j).name(v) for j, v in enumerate(row)] for i, row in enumerate(self.entries)
        ]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> QMatrix:
        return QMatrix(
            self.base,
            self.rows.subset(row_idx),
            self.cols.subset(col_idx),
            tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx),
        )

    def with_sets(self, rows: TypedSet, cols: TypedSet) -> QMatrix:
        """Same entries over relabelled (equally typed) row and column sets."""
        if rows.types != self.rows.types or cols.types != self.cols.types:
            raise InputError("relabelling must keep the types")
        return QMatrix(self.base, rows, cols, self.entries)

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(r) for r in self.names()) + "]"


def _same_base(*ms: QMatrix) -> Quantaloid:
    base = ms[0].base
    for m in ms[1:]:
        if m.base is not base:
            raise InputError("matrices live over different bases")
    return base


def compose(psi: QMatrix, phi: QMatrix) -> QMatrix:
    """``psi . phi``: join over the middle set of composites; bottom when it is empty."""
    base = _same_base(psi, phi)
    if psi.cols != phi.rows:
        raise InputError("middle typed sets do not match")
    A, B, C = phi.cols, phi.rows, psi.rows
    ta, tb, tc = A.types, B.types, C.types
    nb = len(B)
    out = []
    for i in range(len(C)):
        prow = psi.entries[i]
        z = tc[i]
        row = []
        for j in range(len(A)):
            x = ta[j]
            L = base.hom(x, z)
            jt = L.join_table
            acc = L.bottom
            for k in range(nb):
                acc = jt[acc][base._comp[x, tb[k], z][prow[k]][phi.entries[k][j]]]
            row.append(acc)
        out.append(tuple(row))
    return QMatrix(base, C, A, tuple(out))


def compose_all(*ms: QMatrix) -> QMatrix:
    """Right-to-left composite ``ms[0] . ms[1] . ... . ms[-1]``."""
    out = ms[-1]
    for m in reversed(ms[:-1]):
        out = compose(m, out)
    return out


def _check_parallel(ms: Sequence[QMatrix]) -> None:
    first = ms[0]
    _same_base(*ms)
    for m in ms[1:]:
        if m.rows != first.rows or m.cols != first.cols:
            raise InputError("matrices are not parallel")


def sup(ms: Sequence[QMatrix]) -> QMatrix:
    """Entrywise join of a nonempty family of parallel matrices."""
    ms = list(ms)
    if not ms:
        raise InputError("sup needs a nonempty family")
    _check_parallel(ms)
    first = ms[0]
    return QMatrix.build(
        first.base,
        first.rows,
        first.cols,
        lambda i, j: first.lattice(i, j).join(m.entries[i][j] for m in ms),
    )


def leq_matrix(phi: QMatrix, psi: QMatrix) -> bool:
    _check_parallel([phi, psi])
    return all(
        phi.lattice(i, j).leq(phi.entries[i][j], psi.entries[i][j])
        for i in range(len(phi.rows))
        for j in range(len(phi.cols))
    )


def mat_lifting(phi: QMatrix, theta: QMatrix) -> QMatrix:
    """Largest ``X`` with ``phi . X <= theta``.

    ``phi: A -> B`` and ``theta: C -> B`` give ``X: C -> A`` with
    ``X[a][c] = meet_b [phi[b][a], theta[b][c]]``.
    """
    base = _same_base(phi, theta)
    if phi.rows != theta.rows:
        raise InputError("lifting needs matrices with a common codomain")
    A, B, C = phi.cols, phi.rows, theta.cols

    def entry(a: int, c: int) -> int:
        x, z = A.types[a], C.types[c]
        vals = (
            lift_table(base, x, B.types[b], z)[phi.entries[b][a]][theta.entries[b][c]]
            for b in range(len(B))
        )
        return base.hom(z, x).meet(vals)

    return QMatrix.build(base, A, C, entry)


def mat_extension(phi: QMatrix, theta: QMatrix) -> QMatrix:
    """Largest ``X`` with ``X . phi <= theta``.

    ``phi: A -> B`` and ``theta: A -> C`` give ``X: B -> C`` with
    ``X[c][b] = meet_a {phi[b][a], theta[c][a]}``.
    """
    base = _same_base(phi, theta)
    if phi.cols != theta.cols:
        raise InputError("extension needs matrices with a common domain")
    A, B, C = phi.cols, phi.rows, theta.rows

    def entry(c: int, b: int) -> int:
        y, z = B.types[b], C.types[c]
        vals = (
            extend_table(base, A.types[a], y, z)[phi.entries[b][a]][theta.entries[c][a]]
            for a in range(len(A))
        )
        return base.hom(y, z).meet(vals)

    return QMatrix.build(base, C, B, entry)


class MonadFlags(NamedTuple):
    monad: bool
    idempotent: bool


def is_monad_matrix(M: QMatrix) -> MonadFlags:
    """Monad: identities below the diagonal and ``M . M <= M``; idempotent: ``M . M == M``."""
    if M.rows != M.cols:
        raise InputError("monad check needs a square matrix")
    MM = compose(M, M)
    unit = all(
        M.lattice(i, i).leq(M.base.identity(M.rows.types[i]), M.entries[i][i]) for i in range(len(M.rows))
    )
    return MonadFlags(unit and leq_matrix(MM, M), MM == M)
