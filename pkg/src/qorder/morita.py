"""Isomorphism in the regular-semidistributor calculus and equivalence of structures.

Both searches are exhaustive within a :class:`~qorder.search.Budget` and
raise :class:`~qorder.errors.BudgetExceeded` rather than guess.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cauchy import cauchy_complete_trs, is_inverse_pair, right_adjoint_candidate
from .errors import InputError
from .fixtures import q2
from .matrix import QMatrix
from .search import Budget, Counter, object_maps, regular_semidistributors
from .structures import (
    EnrichedStructure,
    ObjectMap,
    SemiDistributor,
    check_object_map,
    compose_maps,
    full_subgraph,
    identity_map,
    induced_matrices,
    maps_equivalent,
)

__all__ = [
    "EquivWitness",
    "IsoWitness",
    "MoritaReport",
    "StripResult",
    "is_equivalence",
    "is_inverse_pair",
    "prop19_check",
    "search_equivalence",
    "search_isomorphism",
    "skeleton",
    "strip_isolated",
]


@dataclass(frozen=True)
class IsoWitness:
    forward: SemiDistributor
    backward: SemiDistributor


@dataclass(frozen=True)
class EquivWitness:
    F: ObjectMap
    G: ObjectMap


def _same_base(A: EnrichedStructure, B: EnrichedStructure) -> None:
    if A.base is not B.base:
        raise InputError("structures live over different bases")


def _require_trs(*ss: EnrichedStructure) -> None:
    for S in ss:
        if not S.flags.totally_regular:
            raise InputError(f"{S.label or 'structure'} is not totally regular")


def search_isomorphism(
    A: EnrichedStructure,
    B: EnrichedStructure,
    budget: Budget | None = None,
    exhaustive: bool = False,
) -> IsoWitness | None:
    """First regular semidistributor ``A -> B`` (scan order) with an inverse.

    An inverse is in particular a right adjoint, so only the canonical right
    adjoint candidate is tried unless ``exhaustive`` asks for every matrix.
    """
    _same_base(A, B)
    _require_trs(A, B)
    budget = budget or Budget.from_env()
    budget.check_inputs(A, B)
    counter = budget.counter()
    for m in regular_semidistributors(A, B, counter):
        phi = SemiDistributor(A, B, m)
        backs = regular_semidistributors(B, A, counter) if exhaustive else [right_adjoint_candidate(phi)]
        for n in backs:
            psi = SemiDistributor(B, A, n)
            if is_inverse_pair(phi, psi):
                return IsoWitness(phi, psi)
    return None


def is_equivalence(F: ObjectMap, G: ObjectMap) -> bool:
    """``G . F`` and ``F . G`` are locally isomorphic to identities."""
    if F.dom != G.cod or F.cod != G.dom:
        raise InputError("equivalence needs maps in opposite directions")
    if not (check_object_map(F).regular_semifunctor and check_object_map(G).regular_semifunctor):
        return False
    return maps_equivalent(compose_maps(G, F), identity_map(F.dom)) and maps_equivalent(
        compose_maps(F, G), identity_map(F.cod)
    )


def skeleton(S: EnrichedStructure) -> tuple[EnrichedStructure, ObjectMap, ObjectMap]:
    """Keep the first object of each class with equal type, hom column and hom row.

    Returns the skeleton, its inclusion and the retraction onto it.
    """
    reps: list[int] = []
    rep_of = []
    for a in range(len(S)):
        for i, r in enumerate(reps):
            if S.type_of(r) == S.type_of(a) and S.hom.column(r) == S.hom.column(a) and S.hom.row(r) == S.hom.row(a):
                rep_of.append(i)
                break
        else:
            rep_of.append(len(reps))
            reps.append(a)
    sub, incl = full_subgraph(S, reps)
    return sub, incl, ObjectMap(S, sub, tuple(rep_of))


def _search_equivalence_raw(
    A: EnrichedStructure, B: EnrichedStructure, counter: Counter, prune: bool
) -> EquivWitness | None:
    for F in object_maps(A, B, regular=True, fully_faithful=prune, counter=counter):
        allowed = [
            [a for a in range(len(A)) if B.hom.column(F(a)) == B.hom.column(b)] for b in range(len(B))
        ]
        for G in object_maps(B, A, regular=True, allowed=allowed, counter=counter):
            if is_equivalence(F, G):
                return EquivWitness(F, G)
    return None


def search_equivalence(
    A: EnrichedStructure,
    B: EnrichedStructure,
    budget: Budget | None = None,
    exhaustive: bool = False,
) -> EquivWitness | None:
    """An equivalence ``A ~ B`` of totally regular structures, or ``None``.

    By default the search runs on skeletons and only tries fully faithful
    ``F`` (the lower matrix of an equivalence is invertible, which forces
    full faithfulness); the witness is lifted back and re-verified.
    ``exhaustive`` searches all map pairs on the original structures.
    """
    _same_base(A, B)
    _require_trs(A, B)
    budget = budget or Budget.from_env()
    counter = budget.counter()
    if exhaustive:
        return _search_equivalence_raw(A, B, counter, prune=False)
    sa, ia, ra = skeleton(A)
    sb, ib, rb = skeleton(B)
    found = _search_equivalence_raw(sa, sb, counter, prune=True)
    if found is None:
        return None
    F = compose_maps(ib, compose_maps(found.F, ra))
    G = compose_maps(ia, compose_maps(found.G, rb))
    if not is_equivalence(F, G):
        raise AssertionError("lifted equivalence failed verification")
    return EquivWitness(F, G)


@dataclass(frozen=True)
class MoritaReport:
    iso: IsoWitness | None
    equivalence: EquivWitness | None

    @property
    def agree(self) -> bool:
        return (self.iso is None) == (self.equivalence is None)


def prop19_check(A: EnrichedStructure, B: EnrichedStructure, budget: Budget | None = None) -> MoritaReport:
    """Isomorphism of ``A`` and ``B`` versus equivalence of their completions."""
    budget = budget or Budget.from_env()
    iso = search_isomorphism(A, B, budget)
    counter = budget.counter()
    acc = cauchy_complete_trs(A, counter=counter).completed
    bcc = cauchy_complete_trs(B, counter=counter).completed
    return MoritaReport(iso, search_equivalence(acc, bcc, budget))


# ---------------------------------------------------------------- isolated objects


@dataclass(frozen=True)
class StripResult:
    stripped: EnrichedStructure
    embedding: ObjectMap
    witness: IsoWitness
    verified: bool


def _integral_base(S: EnrichedStructure) -> bool:
    base = S.base
    return base is q2() or base.name.startswith("trop:")


def strip_isolated(A: EnrichedStructure) -> StripResult:
    """Drop objects whose endo-hom is not above the identity; witness ``(A(i-,-), A(-,i-))``.

    Only over the two-element chain and the truncated tropical chains, where
    the unit is the top element and such objects cannot be reached.
    """
    if not _integral_base(A):
        raise InputError("strip_isolated only applies over q2 and trop:N")
    _require_trs(A)
    base = A.base
    keep = [a for a in range(len(A)) if A.lattice(a, a).leq(base.identity(A.type_of(a)), A.endo(a))]
    sub, incl = full_subgraph(A, keep)
    lower, upper = induced_matrices(incl)
    fwd = SemiDistributor(A, sub, upper)
    bwd = SemiDistributor(sub, A, lower)
    return StripResult(sub, incl, IsoWitness(fwd, bwd), is_inverse_pair(fwd, bwd))


def empty_like(S: EnrichedStructure) -> EnrichedStructure:
    obs = S.obs.subset([])
    return EnrichedStructure(QMatrix(S.base, obs, obs, ()), S.label)
