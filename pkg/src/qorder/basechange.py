"""Change of base between ``Q`` and its split-idempotent completion ``Idm(Q)``.

Reshuffling retypes each object ``a`` of a totally regular structure at the
idempotent ``A(a,a)``; hom entries keep their underlying base arrows.  The
result is a normal category over ``Idm(Q)`` and unreshuffling inverts it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .cauchy import is_cauchy_complete_cat, is_cauchy_complete_trs, is_inverse_pair, is_left_adjoint
from .errors import InputError
from .lattice import ValidationReport
from .matrix import QMatrix, TypedSet, compose, leq_matrix, sup
from .quantaloid import ArrowRef, IdmQuantaloid, Quantaloid, Splitting, build_idm, is_monad, split_monad
from .search import regular_semidistributors
from .structures import EnrichedStructure, SemiDistributor


@dataclass(frozen=True)
class ReshuffleWitness:
    source: EnrichedStructure
    target: EnrichedStructure
    types: tuple[int, ...]  # Idm object id of each source object


def _idm_type(idm: IdmQuantaloid, x: int, e: int) -> int:
    return idm.idempotent_objects.index(ArrowRef(x, x, e))


def reshuffle(A: EnrichedStructure) -> ReshuffleWitness:
    if not A.flags.totally_regular:
        raise InputError("reshuffle needs a totally regular structure")
    idm = build_idm(A.base)
    types = tuple(_idm_type(idm, A.type_of(a), A.endo(a)) for a in range(len(A)))
    obs = TypedSet(A.obs.names, types)
    entries = tuple(
        tuple(idm.from_base(types[a1], types[a2], A(a2, a1)) for a1 in range(len(A))) for a2 in range(len(A))
    )
    target = EnrichedStructure(QMatrix(idm, obs, obs, entries), A.label)
    return ReshuffleWitness(A, target, types)


def _require_idm(C: EnrichedStructure) -> IdmQuantaloid:
    if not isinstance(C.base, IdmQuantaloid):
        raise InputError("structure does not live over a split-idempotent completion")
    return C.base


def unreshuffle(C: EnrichedStructure) -> EnrichedStructure:
    idm = _require_idm(C)
    if not C.flags.normal:
        raise InputError("unreshuffle needs a normal category")
    n = len(C)
    obs = TypedSet(C.obs.names, tuple(idm.base_object(t) for t in C.obs.types))
    entries = tuple(
        tuple(idm.to_base(C.type_of(a1), C.type_of(a2), C(a2, a1)) for a1 in range(n)) for a2 in range(n)
    )
    return EnrichedStructure(QMatrix(idm.base, obs, obs, entries), C.label)


def reshuffle_matrix(M: QMatrix, dom: ReshuffleWitness, cod: ReshuffleWitness) -> QMatrix:
    """Entrywise translation of a matrix ``dom -> cod``; every entry must be absorbed by the endo-homs."""
    idm = dom.target.base
    return QMatrix.build(
        idm,
        cod.target.obs,
        dom.target.obs,
        lambda b, a: idm.from_base(dom.types[a], cod.types[b], M.entries[b][a]),
    )


def unreshuffle_matrix(M: QMatrix, dom: EnrichedStructure, cod: EnrichedStructure) -> QMatrix:
    """Inverse of :func:`reshuffle_matrix`; ``dom`` and ``cod`` are the base-level structures."""
    idm = M.base
    if not isinstance(idm, IdmQuantaloid):
        raise InputError("matrix does not live over a split-idempotent completion")
    return QMatrix.build(
        idm.base,
        cod.obs,
        dom.obs,
        lambda b, a: idm.to_base(M.cols.types[a], M.rows.types[b], M.entries[b][a]),
    )


def reshuffle_semidistributor(phi: SemiDistributor) -> SemiDistributor:
    dom, cod = reshuffle(phi.dom), reshuffle(phi.cod)
    return SemiDistributor(dom.target, cod.target, reshuffle_matrix(phi.mat, dom, cod))


# ---------------------------------------------------------------- normalization


@dataclass(frozen=True)
class SplittingChoice:
    """One splitting of the endo-hom monad per object, in object order."""

    splittings: tuple[Splitting, ...]

    def check(self, base: Quantaloid) -> None:
        for s in self.splittings:
            x, y = s.monad.src, s.obj
            if base.compose(x, y, x, s.u, s.f) != s.monad.elem:
                raise InputError(f"u o f differs from {base.arrow_name(s.monad)}")
            if base.compose(y, x, y, s.f, s.u) != base.identity(y):
                raise InputError(f"f o u is not the identity at {base.objects[y]}")


def default_splittings(A: EnrichedStructure) -> SplittingChoice:
    base = A.base
    out = []
    for a in range(len(A)):
        x = A.type_of(a)
        t = ArrowRef(x, x, A.endo(a))
        if not is_monad(base, t):
            raise InputError(f"endo-hom of {A.obs.names[a]!r} is not a monad")
        s = split_monad(base, t)
        if s is None:
            raise InputError(f"monad {base.arrow_name(t)} does not split (object {A.obs.names[a]!r})")
        out.append(s)
    return SplittingChoice(tuple(out))


@dataclass(frozen=True)
class Normalization:
    normal: EnrichedStructure
    phi: SemiDistributor  # A -> normal
    psi: SemiDistributor  # normal -> A
    choice: SplittingChoice


def normalize_category(A: EnrichedStructure, choice: SplittingChoice | None = None) -> Normalization:
    """Conjugate every hom by the chosen splittings ``t_a = u_a o f_a``."""
    if not A.flags.category:
        raise InputError("normalization needs a category")
    base = A.base
    choice = choice or default_splittings(A)
    if len(choice.splittings) != len(A):
        raise InputError("need one splitting per object")
    for a, s in enumerate(choice.splittings):
        if s.monad != ArrowRef(A.type_of(a), A.type_of(a), A.endo(a)):
            raise InputError(f"splitting for {A.obs.names[a]!r} is for a different monad")
    choice.check(base)
    sp = choice.splittings
    n = len(A)
    t = A.obs.types
    new_types = tuple(s.obj for s in sp)
    obs = TypedSet(A.obs.names, new_types)

    def tilde(a2: int, a1: int) -> int:
        h = base.compose(new_types[a1], t[a1], t[a2], A(a2, a1), sp[a1].u)
        return base.compose(new_types[a1], t[a2], new_types[a2], sp[a2].f, h)

    normal = EnrichedStructure(QMatrix.build(base, obs, obs, tilde), A.label)
    phi = QMatrix.build(base, obs, A.obs, lambda b, a: base.compose(t[a], t[b], new_types[b], sp[b].f, A(b, a)))
    psi = QMatrix.build(base, A.obs, obs, lambda b, a: base.compose(new_types[a], t[a], t[b], A(b, a), sp[a].u))
    return Normalization(normal, SemiDistributor(A, normal, phi), SemiDistributor(normal, A, psi), choice)


def check_normalization(res: Normalization) -> ValidationReport:
    rep = ValidationReport()
    if not res.normal.flags.normal:
        rep.add("normalized structure is a normal category", str(res.normal))
    if not is_inverse_pair(res.phi, res.psi):
        rep.add("phi and psi are inverse", (str(res.phi), str(res.psi)))
    return rep


# ---------------------------------------------------------------- equivalence facets


def verify_prop23(
    base: Quantaloid,
    sample: Sequence[EnrichedStructure],
    normal_objects: int = 2,
    max_pairs: int | None = None,
) -> ValidationReport:
    """Check that reshuffling is a structure-preserving bijection on the sampled data.

    Per structure: round trip and completeness transfer.  Per ordered pair:
    the reshuffle is a bijection between regular semidistributor lattices that
    preserves and reflects order, binary suprema, composition with the reverse
    direction, and left adjointness.  Finally every normal ``Idm(base)``
    category with at most ``normal_objects`` objects must be a reshuffle.
    """
    from .generate import structures

    rep = ValidationReport()
    idm = build_idm(base)
    trs = [S for S in sample if S.flags.totally_regular]
    wit = {}
    for A in trs:
        w = reshuffle(A)
        wit[id(A)] = w
        if unreshuffle(w.target) != A:
            rep.add("unreshuffle . reshuffle = id", str(A))
        if not w.target.flags.normal:
            rep.add("reshuffle is normal", str(A))
        if is_cauchy_complete_trs(A).complete != is_cauchy_complete_cat(w.target).complete:
            rep.add("completeness transfers", str(A))

    pairs = [(A, B) for A in trs for B in trs]
    if max_pairs is not None:
        pairs = pairs[:max_pairs]
    for A, B in pairs:
        wa, wb = wit[id(A)], wit[id(B)]
        fwd = list(regular_semidistributors(A, B))
        bwd = list(regular_semidistributors(B, A))
        fwd_hat = [reshuffle_matrix(m, wa, wb) for m in fwd]
        bwd_hat = [reshuffle_matrix(m, wb, wa) for m in bwd]
        target_all = set(regular_semidistributors(wa.target, wb.target))
        if set(fwd_hat) != target_all or len(set(fwd_hat)) != len(fwd):
            rep.add("reshuffle is a bijection on semidistributors", (str(A), str(B)))
        for m, mh in zip(fwd, fwd_hat):
            if unreshuffle_matrix(mh, A, B) != m:
                rep.add("matrix round trip", str(m))
            left = is_left_adjoint(SemiDistributor(A, B, m)) is not None
            left_hat = is_left_adjoint(SemiDistributor(wa.target, wb.target, mh)) is not None
            if left != left_hat:
                rep.add("left adjointness transfers", str(m))
        for (m1, h1), (m2, h2) in combinations(zip(fwd, fwd_hat), 2):
            if leq_matrix(m1, m2) != leq_matrix(h1, h2):
                rep.add("order transfers", (str(m1), str(m2)))
            if reshuffle_matrix(sup([m1, m2]), wa, wb) != sup([h1, h2]):
                rep.add("suprema transfer", (str(m1), str(m2)))
        for m, mh in zip(fwd, fwd_hat):
            for n, nh in zip(bwd, bwd_hat):
                if reshuffle_matrix(compose(n, m), wa, wa) != compose(nh, mh):
                    rep.add("composition transfers", (str(n), str(m)))

    for k in range(1, normal_objects + 1):
        for C in structures(idm, k, "normal"):
            A = unreshuffle(C)
            if not A.flags.totally_regular or reshuffle(A).target != C:
                rep.add("normal category is a reshuffle", str(C))
    return rep
