"""Enriched structures over a base quantaloid and the maps between them.

An :class:`EnrichedStructure` is a square matrix ``hom`` on a typed set of
objects; ``hom[a2][a1]`` is the hom-arrow from ``a1`` to ``a2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

from .errors import InputError
from .matrix import QMatrix, TypedSet, compose, leq_matrix
from .quantaloid import ArrowRef, Quantaloid, is_idempotent


class Flags(NamedTuple):
    semicategory: bool
    regular: bool
    totally_regular: bool
    category: bool
    normal: bool

    def describe(self) -> str:
        return ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in self._asdict().items())


@dataclass(frozen=True)
class EnrichedStructure:
    hom: QMatrix
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.hom.rows != self.hom.cols:
            raise InputError("hom matrix of a structure must be square on its objects")

    @classmethod
    def from_names(
        cls,
        base: Quantaloid,
        objects: Sequence[tuple[str, str]],
        hom: Sequence[Sequence[str]],
        label: str = "",
    ) -> EnrichedStructure:
        """Objects as ``(name, type-object-name)``; ``hom[i][j]`` names the arrow from j to i."""
        obs = TypedSet.of((n, base.object_index(t)) for n, t in objects)
        return cls(QMatrix.from_names(base, obs, obs, hom), label)

    @property
    def base(self) -> Quantaloid:
        return self.hom.base

    @property
    def obs(self) -> TypedSet:
        return self.hom.rows

    def __len__(self) -> int:
        return len(self.obs)

    def type_of(self, a: int) -> int:
        return self.obs.types[a]

    def __call__(self, a2: int, a1: int) -> int:
        """The hom-arrow ``a1 -> a2``."""
        return self.hom.entries[a2][a1]

    def endo(self, a: int) -> int:
        return self.hom.entries[a][a]

    def lattice(self, a2: int, a1: int):
        return self.base.hom(self.obs.types[a1], self.obs.types[a2])

    def index(self, name: str) -> int:
        return self.obs.index(name)

    @cached_property
    def flags(self) -> Flags:
        return classify(self)

    def __str__(self) -> str:
        objs = ", ".join(f"{n}:{self.base.objects[t]}" for n, t in zip(self.obs.names, self.obs.types))
        return f"{self.label or 'structure'}[{objs}] {self.hom}"


def _comp(S: EnrichedStructure, a3: int, a2: int, a1: int, g: int, f: int) -> int:
    t = S.obs.types
    return S.base.compose(t[a1], t[a2], t[a3], g, f)


def classify(S: EnrichedStructure) -> Flags:
    n = len(S)
    H = S.hom
    HH = compose(H, H)
    semicat = leq_matrix(HH, H)
    regular = HH == H
    stable = all(
        _comp(S, a2, a, a, S(a2, a), S(a, a)) == S(a2, a) and _comp(S, a, a, a2, S(a, a), S(a, a2)) == S(a, a2)
        for a in range(n)
        for a2 in range(n)
    )
    total = semicat and stable
    unital = all(S.lattice(a, a).leq(S.base.identity(S.type_of(a)), S.endo(a)) for a in range(n))
    category = semicat and unital
    normal = category and all(S.endo(a) == S.base.identity(S.type_of(a)) for a in range(n))
    return Flags(semicat, regular, total, category, normal)


def star_identity(base: Quantaloid, x: int, name: str = "*") -> EnrichedStructure:
    """The one-object category whose hom is the identity at ``x``."""
    ts = TypedSet((name,), (x,))
    return EnrichedStructure(QMatrix(base, ts, ts, ((base.identity(x),),)), f"*_{base.objects[x]}")


def star_idempotent(base: Quantaloid, e: ArrowRef, name: str = "*") -> EnrichedStructure:
    """The one-object regular semicategory whose hom is the idempotent ``e``."""
    if e.src != e.dst or not is_idempotent(base, e.src, e.elem):
        raise InputError(f"{base.arrow_name(e)} is not an idempotent")
    ts = TypedSet((name,), (e.src,))
    return EnrichedStructure(QMatrix(base, ts, ts, ((e.elem,),)), f"*_{base.arrow_name(e)}")


def star(base: Quantaloid, x: int, elem: int, name: str = "*") -> EnrichedStructure:
    """Any one-object structure; no axioms are imposed."""
    ts = TypedSet((name,), (x,))
    return EnrichedStructure(QMatrix(base, ts, ts, ((elem,),)))


def stable_objects(S: EnrichedStructure) -> list[int]:
    """Objects whose endo-hom absorbs every hom into and out of them."""
    if not S.flags.regular:
        raise InputError("stable objects are defined for regular structures only")
    n = len(S)
    return [
        a
        for a in range(n)
        if all(
            _comp(S, a2, a, a, S(a2, a), S(a, a)) == S(a2, a)
            and _comp(S, a, a, a2, S(a, a), S(a, a2)) == S(a, a2)
            for a2 in range(n)
        )
    ]


def stable_objects_by_definition(S: EnrichedStructure) -> list[int]:
    """Brute force: ``a`` is stable iff some one-object regular structure maps onto it regularly."""
    if not S.flags.regular:
        raise InputError("stable objects are defined for regular structures only")
    out = []
    for a in range(len(S)):
        x = S.type_of(a)
        for elem in S.base.hom(x, x).carrier:
            probe = star(S.base, x, elem)
            if not probe.flags.regular:
                continue
            if check_object_map(ObjectMap(probe, S, (a,))).regular_semifunctor:
                out.append(a)
                break
    return out


# ---------------------------------------------------------------- distributors


@dataclass(frozen=True)
class SemiDistributor:
    """A matrix ``dom -> cod``: rows are ``cod`` objects, columns ``dom`` objects."""

    dom: EnrichedStructure
    cod: EnrichedStructure
    mat: QMatrix

    def __post_init__(self):
        if self.mat.cols != self.dom.obs or self.mat.rows != self.cod.obs:
            raise InputError("semidistributor matrix does not match its domain and codomain")
        if self.mat.base is not self.dom.base or self.mat.base is not self.cod.base:
            raise InputError("semidistributor spans different bases")

    @classmethod
    def from_names(cls, dom, cod, names) -> SemiDistributor:
        return cls(dom, cod, QMatrix.from_names(dom.base, cod.obs, dom.obs, names))

    @classmethod
    def identity(cls, S: EnrichedStructure) -> SemiDistributor:
        return cls(S, S, S.hom)

    def __str__(self) -> str:
        return str(self.mat)


class SemiDistFlags(NamedTuple):
    semidistributor: bool
    regular: bool


def check_semidistributor(phi: SemiDistributor) -> SemiDistFlags:
    """Action inequalities; regular means both actions hold with equality."""
    A, B, M = phi.dom.hom, phi.cod.hom, phi.mat
    left, right = compose(B, M), compose(M, A)
    semi = leq_matrix(left, M) and leq_matrix(right, M)
    regular = left == M and right == M and phi.dom.flags.regular and phi.cod.flags.regular
    return SemiDistFlags(semi, regular)


def regular_by_local_identities(phi: SemiDistributor) -> bool:
    """Regularity test valid between totally regular structures: inequalities plus absorption of endo-homs."""
    if not (phi.dom.flags.totally_regular and phi.cod.flags.totally_regular):
        raise InputError("the local-identity test needs totally regular domain and codomain")
    A, B, M = phi.dom, phi.cod, phi.mat
    base = M.base
    ta, tb = A.obs.types, B.obs.types
    if not check_semidistributor(phi).semidistributor:
        return False
    for b in range(len(B)):
        for a in range(len(A)):
            v = M.entries[b][a]
            if base.compose(ta[a], tb[b], tb[b], B(b, b), v) != v:
                return False
            if base.compose(ta[a], ta[a], tb[b], v, A(a, a)) != v:
                return False
    return True


# ---------------------------------------------------------------- object maps


@dataclass(frozen=True)
class ObjectMap:
    dom: EnrichedStructure
    cod: EnrichedStructure
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != len(self.dom):
            raise InputError("object map must send every domain object somewhere")
        if self.dom.base is not self.cod.base:
            raise InputError("object map spans different bases")
        for a, b in enumerate(self.map):
            if not 0 <= b < len(self.cod):
                raise InputError(f"object map target {b!r} out of range")
            if self.dom.type_of(a) != self.cod.type_of(b):
                raise InputError(
                    f"object map is not type-preserving at {self.dom.obs.names[a]!r} -> {self.cod.obs.names[b]!r}"
                )

    @classmethod
    def from_names(cls, dom, cod, pairs: dict[str, str]) -> ObjectMap:
        return cls(dom, cod, tuple(cod.index(pairs[n]) for n in dom.obs.names))

    def __call__(self, a: int) -> int:
        return self.map[a]

    def describe(self) -> str:
        return ", ".join(
            f"{self.dom.obs.names[a]}->{self.cod.obs.names[b]}" for a, b in enumerate(self.map)
        )


class MapFlags(NamedTuple):
    semifunctor: bool
    functor: bool
    regular_semifunctor: bool


def induced_matrices(F: ObjectMap) -> tuple[QMatrix, QMatrix]:
    """``B(-, F-)`` as a matrix ``A -> B`` and ``B(F-, -)`` as a matrix ``B -> A``."""
    A, B = F.dom, F.cod
    base = A.base
    lower = QMatrix.build(base, B.obs, A.obs, lambda b, a: B(b, F.map[a]))
    upper = QMatrix.build(base, A.obs, B.obs, lambda a, b: B(F.map[a], b))
    return lower, upper


def check_object_map(F: ObjectMap) -> MapFlags:
    A, B = F.dom, F.cod
    semi = all(
        A.lattice(a2, a1).leq(A(a2, a1), B(F.map[a2], F.map[a1]))
        for a1 in range(len(A))
        for a2 in range(len(A))
    )
    functor = semi and A.flags.category and B.flags.category
    regular = False
    if semi and A.flags.regular and B.flags.regular:
        lower, upper = induced_matrices(F)
        regular = (
            check_semidistributor(SemiDistributor(A, B, lower)).regular
            and check_semidistributor(SemiDistributor(B, A, upper)).regular
        )
    return MapFlags(semi, functor, regular)


def regular_map_by_local_identities(F: ObjectMap) -> bool:
    """Regular-semifunctor test valid between totally regular structures."""
    A, B = F.dom, F.cod
    if not (A.flags.totally_regular and B.flags.totally_regular):
        raise InputError("the local-identity test needs totally regular domain and codomain")
    if not check_object_map(F).semifunctor:
        return False
    base = A.base
    for a in range(len(A)):
        fa, x = F.map[a], A.type_of(a)
        for b in range(len(B)):
            y = B.type_of(b)
            if base.compose(x, x, y, B(b, fa), A(a, a)) != B(b, fa):
                return False
            if base.compose(y, x, x, A(a, a), B(fa, b)) != B(fa, b):
                return False
    return True


def induced_pair(F: ObjectMap) -> tuple[SemiDistributor, SemiDistributor]:
    if not check_object_map(F).semifunctor:
        raise InputError("induced pair needs at least a semifunctor")
    lower, upper = induced_matrices(F)
    return SemiDistributor(F.dom, F.cod, lower), SemiDistributor(F.cod, F.dom, upper)


def pointing_map(S: EnrichedStructure, a: int) -> ObjectMap:
    """The map from ``*_{S(a,a)}`` onto the object ``a``."""
    return ObjectMap(star(S.base, S.type_of(a), S.endo(a)), S, (a,))


def constant_functor(S: EnrichedStructure, b: int) -> ObjectMap:
    """The map from ``*_{type b}`` (identity hom) onto ``b``."""
    return ObjectMap(star_identity(S.base, S.type_of(b)), S, (b,))


def compose_maps(G: ObjectMap, F: ObjectMap) -> ObjectMap:
    if F.cod != G.dom:
        raise InputError("object maps are not composable")
    return ObjectMap(F.dom, G.cod, tuple(G.map[b] for b in F.map))


def identity_map(S: EnrichedStructure) -> ObjectMap:
    return ObjectMap(S, S, tuple(range(len(S))))


def map_leq(F: ObjectMap, G: ObjectMap) -> bool:
    """Local order: ``F <= G`` iff ``B(-, F-) <= B(-, G-)``."""
    if F.dom != G.dom or F.cod != G.cod:
        raise InputError("local order compares parallel maps only")
    return leq_matrix(induced_matrices(F)[0], induced_matrices(G)[0])


def maps_equivalent(F: ObjectMap, G: ObjectMap) -> bool:
    return induced_matrices(F)[0] == induced_matrices(G)[0]


def full_subgraph(S: EnrichedStructure, subset: Sequence[int | str]) -> tuple[EnrichedStructure, ObjectMap]:
    idx = [S.index(a) if isinstance(a, str) else int(a) for a in subset]
    if len(set(idx)) != len(idx) or any(not 0 <= i < len(S) for i in idx):
        raise InputError("full subgraph needs distinct objects of the structure")
    sub = EnrichedStructure(S.hom.submatrix(idx, idx), S.label)
    return sub, ObjectMap(sub, S, tuple(idx))
