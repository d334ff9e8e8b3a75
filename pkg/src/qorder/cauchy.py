"""Adjoint semidistributors, convergence, and Cauchy completion.

Two flavours share one engine.  The totally regular flavour probes a
structure with every one-object structure ``*_e`` (``e`` an idempotent of the
base); the category flavour only with identity homs.  Completion objects are
the left adjoint probes themselves; the hom from ``phi`` to ``psi`` is
``psi* . phi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal, Sequence

from .errors import InputError
from .lattice import ValidationReport
from .matrix import QMatrix, TypedSet, compose, compose_all, leq_matrix, mat_lifting
from .quantaloid import ArrowRef, Quantaloid, all_idempotents
from .search import Counter, object_maps, regular_columns, regular_semidistributors
from .structures import (
    EnrichedStructure,
    ObjectMap,
    SemiDistributor,
    check_object_map,
    check_semidistributor,
    compose_maps,
    induced_matrices,
    maps_equivalent,
    star_idempotent,
)

Kind = Literal["trs", "cat"]


@dataclass(frozen=True)
class AdjointPair:
    left: SemiDistributor
    right: SemiDistributor


def _require_regular(phi: SemiDistributor) -> None:
    if not check_semidistributor(phi).regular:
        raise InputError("not a regular semidistributor")


def right_adjoint_candidate(phi: SemiDistributor) -> QMatrix:
    """The only possible right adjoint of ``phi``.

    Between categories this is the matrix lifting ``[phi, B]``; in general it is
    that lifting regularized on both sides, ``A . [phi, B] . B``.
    """
    _require_regular(phi)
    A, B = phi.dom, phi.cod
    lift = mat_lifting(phi.mat, B.hom)
    if A.flags.category and B.flags.category:
        return lift
    return compose_all(A.hom, lift, B.hom)


def is_adjoint_pair(phi: SemiDistributor, psi: SemiDistributor) -> bool:
    """``A <= psi . phi`` and ``phi . psi <= B``, both sides regular semidistributors."""
    if psi.dom != phi.cod or psi.cod != phi.dom:
        raise InputError("adjoint pair needs opposite semidistributors")
    if not (check_semidistributor(phi).regular and check_semidistributor(psi).regular):
        return False
    unit = leq_matrix(phi.dom.hom, compose(psi.mat, phi.mat))
    counit = leq_matrix(compose(phi.mat, psi.mat), phi.cod.hom)
    return unit and counit


def is_left_adjoint(phi: SemiDistributor) -> AdjointPair | None:
    if not check_semidistributor(phi).regular:
        return None
    psi = SemiDistributor(phi.cod, phi.dom, right_adjoint_candidate(phi))
    return AdjointPair(phi, psi) if is_adjoint_pair(phi, psi) else None


def right_adjoints_by_search(phi: SemiDistributor, counter: Counter | None = None) -> list[QMatrix]:
    """Every regular semidistributor that is right adjoint to ``phi``, found by enumeration."""
    if not check_semidistributor(phi).regular:
        return []
    out = []
    for m in regular_semidistributors(phi.cod, phi.dom, counter):
        if is_adjoint_pair(phi, SemiDistributor(phi.cod, phi.dom, m)):
            out.append(m)
    return out


def convergence_points(phi: QMatrix, phi_star: QMatrix, B: EnrichedStructure) -> list[list[int]]:
    """For each column ``a`` of ``phi``: objects ``b`` with ``B(-,b) = phi(-,a)`` and ``B(b,-) = phi*(a,-)``."""
    out = []
    for a in range(len(phi.cols)):
        col, row = phi.column(a), phi_star.row(a)
        out.append(
            [
                b
                for b in range(len(B))
                if B.type_of(b) == phi.cols.types[a] and B.hom.column(b) == col and B.hom.row(b) == row
            ]
        )
    return out


def converges(phi: SemiDistributor) -> ObjectMap | None:
    """First object map ``F`` (scan order) with ``phi = B(-,F-)`` and ``phi* = B(F-,-)``.

    The conditions are per object, so the candidates factor; any two choices
    induce the same matrices and hence are isomorphic in the local order.
    """
    pair = is_left_adjoint(phi)
    if pair is None:
        raise InputError("convergence is defined for left adjoints only")
    points = convergence_points(phi.mat, pair.right.mat, phi.cod)
    if any(not p for p in points):
        return None
    F = ObjectMap(phi.dom, phi.cod, tuple(p[0] for p in points))
    lower, upper = induced_matrices(F)
    assert lower == phi.mat and upper == pair.right.mat
    return F


# ---------------------------------------------------------------- probes


@dataclass(frozen=True)
class Probe:
    """A left adjoint ``phi: *_e -> B`` with its right adjoint ``phi*``."""

    idempotent: ArrowRef
    phi: QMatrix
    phi_star: QMatrix

    @property
    def type(self) -> int:
        return self.idempotent.src

    def is_bottom(self) -> bool:
        return all(v == self.phi.lattice(i, 0).bottom for i, v in enumerate(self.phi.column(0)))

    def describe(self) -> str:
        base = self.phi.base
        return f"e={_arrow_label(base, self.idempotent)} phi={self.phi}"


def _arrow_label(base: Quantaloid, e: ArrowRef) -> str:
    name = base.arrow_name(e)
    return name if base.n_objects == 1 else f"{base.objects[e.src]}:{name}"


def probe_domains(base: Quantaloid, kind: Kind) -> list[ArrowRef]:
    if kind == "trs":
        return all_idempotents(base)
    if kind == "cat":
        return [ArrowRef(x, x, base.identity(x)) for x in range(base.n_objects)]
    raise InputError(f"unknown probe kind {kind!r}")


def probes(B: EnrichedStructure, kind: Kind = "trs", counter: Counter | None = None) -> Iterator[Probe]:
    """Left adjoint probes into ``B`` in (idempotent, column) scan order."""
    base = B.base
    for e in probe_domains(base, kind):
        D = star_idempotent(base, e)
        for col in regular_columns(B, e.src, e.elem, counter):
            phi = SemiDistributor(D, B, QMatrix(base, B.obs, D.obs, tuple((v,) for v in col)))
            pair = is_left_adjoint(phi)
            if pair is not None:
                yield Probe(e, phi.mat, pair.right.mat)


def probe_converges(B: EnrichedStructure, p: Probe) -> int | None:
    """An object ``b`` the probe converges to, or ``None``."""
    pts = convergence_points(p.phi, p.phi_star, B)[0]
    return pts[0] if pts else None


# ---------------------------------------------------------------- completeness


@dataclass(frozen=True)
class Completeness:
    complete: bool
    witness: Probe | None
    failures: tuple[Probe, ...]

    def __bool__(self) -> bool:
        return self.complete


def _completeness(B: EnrichedStructure, kind: Kind, counter: Counter | None) -> Completeness:
    failures = tuple(p for p in probes(B, kind, counter) if probe_converges(B, p) is None)
    if not failures:
        return Completeness(True, None, ())
    # prefer a witness that is not the degenerate all-bottom probe
    witness = next((p for p in failures if not p.is_bottom()), failures[0])
    return Completeness(False, witness, failures)


def is_cauchy_complete_trs(B: EnrichedStructure, counter: Counter | None = None) -> Completeness:
    if not B.flags.totally_regular:
        raise InputError("structure is not totally regular")
    return _completeness(B, "trs", counter)


def is_cauchy_complete_cat(B: EnrichedStructure, counter: Counter | None = None) -> Completeness:
    if not B.flags.category:
        raise InputError("structure is not a category")
    return _completeness(B, "cat", counter)


def is_cauchy_complete_by_definition(
    B: EnrichedStructure, domains: Sequence[EnrichedStructure], counter: Counter | None = None
) -> bool:
    """Every left adjoint regular semidistributor from each given domain into ``B`` converges."""
    if not B.flags.totally_regular:
        raise InputError("structure is not totally regular")
    for A in domains:
        for m in regular_semidistributors(A, B, counter):
            phi = SemiDistributor(A, B, m)
            if is_left_adjoint(phi) is not None and converges(phi) is None:
                return False
    return True


# ---------------------------------------------------------------- completion


@dataclass(frozen=True)
class CompletionResult:
    completed: EnrichedStructure
    embed: ObjectMap | None
    object_table: tuple[Probe, ...]
    kind: str = "trs"


def _probe_name(p: Probe) -> str:
    base = p.phi.base
    vals = ",".join(p.phi.lattice(i, 0).name(v) for i, v in enumerate(p.phi.column(0)))
    return f"<{_arrow_label(base, p.idempotent)}|{vals}>"


def completion_hom(table: Sequence[Probe]) -> list[list[int]]:
    """``hom[i][j] = table[i]* . table[j]``."""
    return [[compose(q.phi_star, p.phi).entries[0][0] for p in table] for q in table]


def _complete(B: EnrichedStructure, kind: Kind, skeletal: bool, counter: Counter | None) -> CompletionResult:
    base = B.base
    table = list(probes(B, kind, counter))
    hom = completion_hom(table)
    if skeletal:
        keep = _skeleton(table, hom)
        table = [table[i] for i in keep]
        hom = [[hom[i][j] for j in keep] for i in keep]
    obs = TypedSet(tuple(_probe_name(p) for p in table), tuple(p.type for p in table))
    label = f"{B.label or 'B'}_cc" if kind == "trs" else f"{B.label or 'B'}_cat"
    completed = EnrichedStructure(QMatrix(base, obs, obs, tuple(tuple(r) for r in hom)), label)
    return CompletionResult(completed, _embedding(B, completed, table, kind), tuple(table), kind)


def _skeleton(table: Sequence[Probe], hom: Sequence[Sequence[int]]) -> list[int]:
    """First member of each class of objects with equal type, hom column and hom row."""
    n = len(table)
    keep: list[int] = []
    for i in range(n):
        if not any(
            table[i].type == table[j].type
            and all(hom[r][i] == hom[r][j] for r in range(n))
            and hom[i] == hom[j]
            for j in keep
        ):
            keep.append(i)
    return keep


def _embedding(B: EnrichedStructure, completed: EnrichedStructure, table: Sequence[Probe], kind: Kind):
    """``b |-> B(-, b)`` as a probe at ``B(b,b)`` (or at the identity); ``None`` if some image is missing."""
    base = B.base
    index = {(p.idempotent, p.phi.column(0)): i for i, p in enumerate(table)}
    images = []
    for b in range(len(B)):
        x = B.type_of(b)
        e = ArrowRef(x, x, B.endo(b) if kind == "trs" else base.identity(x))
        i = index.get((e, B.hom.column(b)))
        if i is None:
            return None
        images.append(i)
    return ObjectMap(B, completed, tuple(images))


def cauchy_complete_trs(
    B: EnrichedStructure, skeletal: bool = False, counter: Counter | None = None
) -> CompletionResult:
    if not B.flags.totally_regular:
        raise InputError("structure is not totally regular")
    return _complete(B, "trs", skeletal, counter)


def cauchy_complete_cat(
    B: EnrichedStructure, skeletal: bool = False, counter: Counter | None = None
) -> CompletionResult:
    if not B.flags.category:
        raise InputError("structure is not a category")
    return _complete(B, "cat", skeletal, counter)


def complete_regular(B: EnrichedStructure, counter: Counter | None = None) -> CompletionResult:
    """The same recipe on any regular structure; the embedding may be missing or not full."""
    if not B.flags.regular:
        raise InputError("structure is not regular")
    return _complete(B, "trs", False, counter)


# ---------------------------------------------------------------- Yoneda


def is_inverse_pair(phi: SemiDistributor, psi: SemiDistributor) -> bool:
    """``psi . phi`` is the identity of ``phi.dom`` and ``phi . psi`` that of ``phi.cod``."""
    if psi.dom != phi.cod or psi.cod != phi.dom:
        raise InputError("inverse pair needs opposite semidistributors")
    return compose(psi.mat, phi.mat) == phi.dom.hom and compose(phi.mat, psi.mat) == phi.cod.hom


def embedding_pair(result: CompletionResult, B: EnrichedStructure) -> tuple[SemiDistributor, SemiDistributor]:
    """``B_cc(-, k-): B -> B_cc`` and ``B_cc(k-, -): B_cc -> B``."""
    if result.embed is None:
        raise InputError("completion has no embedding")
    lower, upper = induced_matrices(result.embed)
    return SemiDistributor(B, result.completed, lower), SemiDistributor(result.completed, B, upper)


def yoneda_check(B: EnrichedStructure, result: CompletionResult) -> ValidationReport:
    """Full faithfulness of ``k``, ``B_cc(kb, phi) = phi(b)``, ``B_cc(phi, kb) = phi*(b)``, inverse pair."""
    rep = ValidationReport()
    C, k = result.completed, result.embed
    names = C.obs.names
    if k is None:
        rep.add("embedding exists", B.label or "B")
        return rep
    for b2 in range(len(B)):
        for b1 in range(len(B)):
            if C(k(b2), k(b1)) != B(b2, b1):
                rep.add("k fully faithful", (B.obs.names[b2], B.obs.names[b1]))
    for i, p in enumerate(result.object_table):
        for b in range(len(B)):
            if C(k(b), i) != p.phi.entries[b][0]:
                rep.add("hom(k b, phi) = phi(b)", (B.obs.names[b], names[i]))
            if C(i, k(b)) != p.phi_star.entries[0][b]:
                rep.add("hom(phi, k b) = phi*(b)", (names[i], B.obs.names[b]))
    lower, upper = embedding_pair(result, B)
    if not is_inverse_pair(lower, upper):
        rep.add("induced pair of k is an inverse pair", B.label or "B")
    return rep


# ---------------------------------------------------------------- factorization


@dataclass(frozen=True)
class Factorization:
    G: ObjectMap
    completion: CompletionResult


def factor_through_completion(
    F: ObjectMap, completion: CompletionResult | None = None, counter: Counter | None = None
) -> Factorization:
    """``G: A_cc -> B`` sending each probe ``phi`` to where ``B(-,F-) . phi`` converges."""
    A, B = F.dom, F.cod
    if not check_object_map(F).regular_semifunctor:
        raise InputError("map to factor is not a regular semifunctor")
    if not A.flags.totally_regular:
        raise InputError("domain is not totally regular")
    if not is_cauchy_complete_trs(B, counter):
        raise InputError("target is not Cauchy complete")
    comp = completion if completion is not None else cauchy_complete_trs(A, counter=counter)
    lower, upper = induced_matrices(F)
    images = []
    for p in comp.object_table:
        col = compose(lower, p.phi)
        row = compose(p.phi_star, upper)
        pts = convergence_points(col, row, B)[0]
        if not pts:
            raise InputError(f"probe {p.describe()} does not converge after pushing forward")
        images.append(pts[0])
    return Factorization(ObjectMap(comp.completed, B, tuple(images)), comp)


def factorizations_by_search(
    F: ObjectMap, completion: CompletionResult, counter: Counter | None = None
) -> Iterator[ObjectMap]:
    """Every regular semifunctor ``H: A_cc -> B`` with ``H . k`` locally isomorphic to ``F``."""
    k = completion.embed
    if k is None:
        raise InputError("completion has no embedding")
    B = F.cod
    allowed = [list(range(len(B))) for _ in range(len(completion.completed))]
    for a, i in enumerate(k.map):
        col = B.hom.column(F(a))
        allowed[i] = [b for b in allowed[i] if B.hom.column(b) == col]
    for H in object_maps(completion.completed, B, regular=True, allowed=allowed, counter=counter):
        if maps_equivalent(compose_maps(H, k), F):
            yield H
