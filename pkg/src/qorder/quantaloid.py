"""Finite quantaloids given by explicit composition tables.

Arrows are addressed by ``(src, dst, elem)`` where ``elem`` is an element id
of the hom-lattice ``hom(src, dst)``.  ``compose(x, y, z, g, f)`` is
``g o f`` for ``f: x -> y`` and ``g: y -> z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Mapping, NamedTuple, Sequence

from .errors import InputError
from .lattice import FiniteLattice, ValidationReport, validate_lattice


class ArrowRef(NamedTuple):
    src: int
    dst: int
    elem: int


class Quantaloid:
    def __init__(
        self,
        objects: Sequence[str],
        homs: Mapping[tuple[int, int], FiniteLattice],
        comp: Mapping[tuple[int, int, int], Sequence[Sequence[int]]],
        identity: Sequence[int],
        name: str | None = None,
    ):
        self.objects = tuple(str(o) for o in objects)
        if len(set(self.objects)) != len(self.objects):
            raise InputError(f"duplicate object names in {self.objects}")
        k = len(self.objects)
        self._homs = {}
        for x, y in product(range(k), repeat=2):
            if (x, y) not in homs:
                raise InputError(f"missing hom-lattice ({self.objects[x]}, {self.objects[y]})")
            self._homs[x, y] = homs[x, y]
        self._comp = {}
        for x, y, z in product(range(k), repeat=3):
            if (x, y, z) not in comp:
                raise InputError(
                    f"missing composition table for {self.objects[x]} -> {self.objects[y]} -> {self.objects[z]}"
                )
            table = tuple(tuple(int(v) for v in row) for row in comp[x, y, z])
            gs, fs, out = len(self._homs[y, z]), len(self._homs[x, y]), len(self._homs[x, z])
            if len(table) != gs or any(len(row) != fs for row in table):
                raise InputError(f"composition table ({x},{y},{z}) has wrong shape")
            if any(not 0 <= v < out for row in table for v in row):
                raise InputError(f"composition table ({x},{y},{z}) leaves the hom carrier")
            self._comp[x, y, z] = table
        if len(identity) != k:
            raise InputError("one identity element per object required")
        self._identity = tuple(int(i) for i in identity)
        for x in range(k):
            if not 0 <= self._identity[x] < len(self._homs[x, x]):
                raise InputError(f"identity on {self.objects[x]} outside its endo-hom")
        self.name = name or "Q"
        self._obj_index = {o: i for i, o in enumerate(self.objects)}

    def __repr__(self) -> str:
        return f"<Quantaloid {self.name} objects={list(self.objects)}>"

    @classmethod
    def quantale(
        cls,
        lattice: FiniteLattice,
        mult: Callable[[int, int], int],
        unit: int,
        name: str | None = None,
        obj: str = "*",
    ) -> Quantaloid:
        """One-object quantaloid; ``mult(g, f)`` is ``g o f`` on element ids."""
        n = len(lattice)
        table = [[mult(g, f) for f in range(n)] for g in range(n)]
        return cls([obj], {(0, 0): lattice}, {(0, 0, 0): table}, [unit], name=name)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    def object_index(self, name: str) -> int:
        try:
            return self._obj_index[str(name)]
        except KeyError:
            raise InputError(f"{name!r} is not an object of {self.name}") from None

    def hom(self, x: int, y: int) -> FiniteLattice:
        """The hom-lattice of arrows ``x -> y``."""
        try:
            return self._homs[x, y]
        except KeyError:
            raise InputError(f"no hom-lattice for objects ({x}, {y})") from None

    def compose(self, x: int, y: int, z: int, g: int, f: int) -> int:
        return self._comp[x, y, z][g][f]

    def comp_table(self, x: int, y: int, z: int) -> tuple[tuple[int, ...], ...]:
        return self._comp[x, y, z]

    def identity(self, x: int) -> int:
        return self._identity[x]

    def elem(self, x: int, y: int, name: str) -> int:
        return self.hom(x, y).index(name)

    def arrow(self, src: str, dst: str, elem: str) -> ArrowRef:
        x, y = self.object_index(src), self.object_index(dst)
        return ArrowRef(x, y, self.elem(x, y, elem))

    def compose_arrows(self, g: ArrowRef, f: ArrowRef) -> ArrowRef:
        if f.dst != g.src:
            raise InputError(f"cannot compose {g} after {f}")
        return ArrowRef(f.src, g.dst, self.compose(f.src, f.dst, g.dst, g.elem, f.elem))

    def arrow_name(self, a: ArrowRef) -> str:
        return self.hom(a.src, a.dst).name(a.elem)

    def max_hom_size(self) -> int:
        return max(len(L) for L in self._homs.values())


def validate_quantaloid(Q: Quantaloid) -> ValidationReport:
    """Check lattices, associativity, unit laws and join-distribution."""
    report = ValidationReport()
    k = Q.n_objects
    obj = Q.objects
    for (x, y), L in Q._homs.items():
        sub = validate_lattice(L)
        for axiom, witness in sub.violations:
            report.add(f"hom({obj[x]},{obj[y]}) {axiom}", witness)
    if not report.ok:
        return report

    for x, y in product(range(k), repeat=2):
        L = Q.hom(x, y)
        ix, iy = Q.identity(x), Q.identity(y)
        for f in L.carrier:
            if Q.compose(x, y, y, iy, f) != f or Q.compose(x, x, y, f, ix) != f:
                report.add("unit law fails", (obj[x], obj[y], L.name(f)))

    for w, x, y, z in product(range(k), repeat=4):
        Lf, Lg, Lh = Q.hom(w, x), Q.hom(x, y), Q.hom(y, z)
        for h in Lh.carrier:
            for g in Lg.carrier:
                hg = Q.compose(x, y, z, h, g)
                for f in Lf.carrier:
                    left = Q.compose(w, x, z, hg, f)
                    right = Q.compose(w, y, z, h, Q.compose(w, x, y, g, f))
                    if left != right:
                        report.add(
                            "associativity fails",
                            (Lh.name(h), Lg.name(g), Lf.name(f)),
                        )

    # finite joins reduce to the empty join and binary joins
    for x, y, z in product(range(k), repeat=3):
        Lf, Lg, Lout = Q.hom(x, y), Q.hom(y, z), Q.hom(x, z)
        for g in Lg.carrier:
            if Q.compose(x, y, z, g, Lf.bottom) != Lout.bottom:
                report.add("sup-distribution fails (empty join, right argument)", (Lg.name(g),))
            for f1, f2 in product(Lf.carrier, repeat=2):
                lhs = Q.compose(x, y, z, g, Lf.join_table[f1][f2])
                rhs = Lout.join_table[Q.compose(x, y, z, g, f1)][Q.compose(x, y, z, g, f2)]
                if lhs != rhs:
                    report.add(
                        "sup-distribution fails (right argument)",
                        (Lg.name(g), Lf.name(f1), Lf.name(f2)),
                    )
        for f in Lf.carrier:
            if Q.compose(x, y, z, Lg.bottom, f) != Lout.bottom:
                report.add("sup-distribution fails (empty join, left argument)", (Lf.name(f),))
            for g1, g2 in product(Lg.carrier, repeat=2):
                lhs = Q.compose(x, y, z, Lg.join_table[g1][g2], f)
                rhs = Lout.join_table[Q.compose(x, y, z, g1, f)][Q.compose(x, y, z, g2, f)]
                if lhs != rhs:
                    report.add(
                        "sup-distribution fails (left argument)",
                        (Lg.name(g1), Lg.name(g2), Lf.name(f)),
                    )
    return report


def lifting(Q: Quantaloid, f: ArrowRef, h: ArrowRef) -> ArrowRef:
    """``[f, h]``: the largest ``x`` with ``f o x <= h``.

    ``f: A -> B`` and ``h: C -> B`` give ``x: C -> A``.
    """
    if f.dst != h.dst:
        raise InputError("lifting needs f and h with a common target")
    A, B, C = f.src, f.dst, h.src
    L, Lh = Q.hom(C, A), Q.hom(C, B)
    table = Q.comp_table(C, A, B)
    ok = [x for x in L.carrier if Lh.leq(table[f.elem][x], h.elem)]
    return ArrowRef(C, A, L.join(ok))


def extension(Q: Quantaloid, f: ArrowRef, h: ArrowRef) -> ArrowRef:
    """``{f, h}``: the largest ``x`` with ``x o f <= h``.

    ``f: A -> B`` and ``h: A -> C`` give ``x: B -> C``.
    """
    if f.src != h.src:
        raise InputError("extension needs f and h with a common source")
    A, B, C = f.src, f.dst, h.dst
    L, Lh = Q.hom(B, C), Q.hom(A, C)
    table = Q.comp_table(A, B, C)
    ok = [x for x in L.carrier if Lh.leq(table[x][f.elem], h.elem)]
    return ArrowRef(B, C, L.join(ok))


def lift_table(Q: Quantaloid, A: int, B: int, C: int) -> tuple[tuple[int, ...], ...]:
    """``table[f][h] = [f, h]`` for ``f: A -> B``, ``h: C -> B``; memoized per base."""
    cache = Q.__dict__.setdefault("_lift_cache", {})
    key = (A, B, C)
    if key not in cache:
        cache[key] = tuple(
            tuple(lifting(Q, ArrowRef(A, B, f), ArrowRef(C, B, h)).elem for h in Q.hom(C, B).carrier)
            for f in Q.hom(A, B).carrier
        )
    return cache[key]


def extend_table(Q: Quantaloid, A: int, B: int, C: int) -> tuple[tuple[int, ...], ...]:
    """``table[f][h] = {f, h}`` for ``f: A -> B``, ``h: A -> C``; memoized per base."""
    cache = Q.__dict__.setdefault("_extend_cache", {})
    key = (A, B, C)
    if key not in cache:
        cache[key] = tuple(
            tuple(extension(Q, ArrowRef(A, B, f), ArrowRef(A, C, h)).elem for h in Q.hom(A, C).carrier)
            for f in Q.hom(A, B).carrier
        )
    return cache[key]


def is_idempotent(Q: Quantaloid, x: int, e: int) -> bool:
    return Q.compose(x, x, x, e, e) == e


def idempotents(Q: Quantaloid, x: int) -> list[ArrowRef]:
    return [ArrowRef(x, x, e) for e in Q.hom(x, x).carrier if is_idempotent(Q, x, e)]


def all_idempotents(Q: Quantaloid) -> list[ArrowRef]:
    """Idempotents at every object, objects in id order then element ids."""
    return [a for x in range(Q.n_objects) for a in idempotents(Q, x)]


def is_monad(Q: Quantaloid, t: ArrowRef) -> bool:
    if t.src != t.dst:
        return False
    x = t.src
    L = Q.hom(x, x)
    return L.leq(Q.identity(x), t.elem) and L.leq(Q.compose(x, x, x, t.elem, t.elem), t.elem)


def monads(Q: Quantaloid, x: int) -> list[ArrowRef]:
    return [ArrowRef(x, x, t) for t in Q.hom(x, x).carrier if is_monad(Q, ArrowRef(x, x, t))]


@dataclass(frozen=True)
class Splitting:
    """``u o f = t`` and ``f o u = 1`` at ``obj``."""

    monad: ArrowRef
    obj: int
    f: int
    u: int


def split_monad(Q: Quantaloid, t: ArrowRef) -> Splitting | None:
    """First splitting of the monad ``t`` in (object, f, u) scan order."""
    if not is_monad(Q, t):
        raise InputError(f"{Q.arrow_name(t)} is not a monad")
    A = t.src
    for B in range(Q.n_objects):
        one_B = Q.identity(B)
        uf = Q.comp_table(A, B, A)
        fu = Q.comp_table(B, A, B)
        for f in Q.hom(A, B).carrier:
            for u in Q.hom(B, A).carrier:
                if uf[u][f] == t.elem and fu[f][u] == one_B:
                    return Splitting(t, B, f, u)
    return None


class IdmQuantaloid(Quantaloid):
    """Split-idempotent completion; objects are the idempotents ``(X, e)`` of ``base``.

    Hom element ids are local; ``to_base`` and ``from_base`` translate to and
    from element ids of the underlying base hom-lattice.
    """

    base: Quantaloid
    idempotent_objects: tuple[ArrowRef, ...]

    def to_base(self, i: int, j: int, elem: int) -> int:
        return self._embed[i, j][elem]

    def from_base(self, i: int, j: int, base_elem: int) -> int:
        try:
            return self._back[i, j][base_elem]
        except KeyError:
            x, y = self.idempotent_objects[i], self.idempotent_objects[j]
            raise InputError(
                f"{self.base.hom(x.src, y.src).name(base_elem)} is not an arrow "
                f"{self.objects[i]} -> {self.objects[j]} of {self.name}"
            ) from None

    def base_object(self, i: int) -> int:
        return self.idempotent_objects[i].src


@lru_cache(maxsize=None)
def build_idm(Q: Quantaloid) -> IdmQuantaloid:
    """Objects: idempotents of ``Q``; arrows ``e -> f``: ``b`` with ``b o e = b = f o b``."""
    objs = all_idempotents(Q)
    single = Q.n_objects == 1
    names = []
    for a in objs:
        en = Q.hom(a.src, a.src).name(a.elem)
        names.append(en if single else f"{Q.objects[a.src]}:{en}")
    k = len(objs)
    homs, embed, back = {}, {}, {}
    for i, j in product(range(k), repeat=2):
        e, f = objs[i], objs[j]
        X, Y = e.src, f.src
        L = Q.hom(X, Y)
        keep = [
            b
            for b in L.carrier
            if Q.compose(X, X, Y, b, e.elem) == b and Q.compose(X, Y, Y, f.elem, b) == b
        ]
        leq = [[L.leq(p, q) for q in keep] for p in keep]
        homs[i, j] = FiniteLattice([L.name(b) for b in keep], leq)
        embed[i, j] = tuple(keep)
        back[i, j] = {b: n for n, b in enumerate(keep)}
    comp = {}
    for i, j, l in product(range(k), repeat=3):
        X, Y, Z = objs[i].src, objs[j].src, objs[l].src
        base_table = Q.comp_table(X, Y, Z)
        comp[i, j, l] = [
            [back[i, l][base_table[g][f]] for f in embed[i, j]] for g in embed[j, l]
        ]
    identity = [back[i, i][objs[i].elem] for i in range(k)]
    idm = IdmQuantaloid(names, homs, comp, identity, name=f"idm:{Q.name}")
    idm.base = Q
    idm.idempotent_objects = tuple(objs)
    idm._embed = embed
    idm._back = back
    return idm
