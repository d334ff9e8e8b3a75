"""Named base quantaloids.

``q2``  the two-element Boolean algebra, multiplication = meet
``q3``  the three-element chain ``0 < m < 1`` as a locale
``p2``  the powerset of ``{a, b}`` as a locale
``n3``  the chain ``0 < 1 < t`` with unit ``1`` and ``t o t = t``
``trop:N``  ``{0..N}`` ordered by reverse numeric order, ``a o b = min(a + b, N)``,
            unit ``0``; a finite stand-in for the extended non-negative reals
            with ``N`` playing infinity
"""

from __future__ import annotations

from functools import lru_cache

from .errors import InputError
from .lattice import FiniteLattice
from .quantaloid import Quantaloid, build_idm


def _locale(name: str, lattice: FiniteLattice) -> Quantaloid:
    meet = lattice.meet_table
    return Quantaloid.quantale(lattice, lambda g, f: meet[g][f], lattice.top, name=name)


@lru_cache(maxsize=None)
def q2() -> Quantaloid:
    return _locale("q2", FiniteLattice.chain(["0", "1"]))


@lru_cache(maxsize=None)
def q3() -> Quantaloid:
    return _locale("q3", FiniteLattice.chain(["0", "m", "1"]))


@lru_cache(maxsize=None)
def p2() -> Quantaloid:
    L = FiniteLattice.from_relation(
        ["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]
    )
    return _locale("p2", L)


@lru_cache(maxsize=None)
def n3() -> Quantaloid:
    L = FiniteLattice.chain(["0", "1", "t"])

    def mult(g: int, f: int) -> int:
        return 0 if 0 in (g, f) else max(g, f)

    return Quantaloid.quantale(L, mult, 1, name="n3")


@lru_cache(maxsize=None)
def trop(n: int) -> Quantaloid:
    if n < 1:
        raise InputError(f"trop:N needs N >= 1, got {n}")
    names = [str(i) for i in range(n + 1)]
    L = FiniteLattice(names, [[x >= y for y in range(n + 1)] for x in range(n + 1)])
    return Quantaloid.quantale(L, lambda g, f: min(g + f, n), 0, name=f"trop:{n}")


FIXTURES = {"q2": q2, "q3": q3, "p2": p2, "n3": n3}


def fixtures(trop_n: int = 4) -> dict[str, Quantaloid]:
    out = {name: make() for name, make in FIXTURES.items()}
    out[f"trop:{trop_n}"] = trop(trop_n)
    return out


def get_fixture(ref: str) -> Quantaloid:
    """Resolve ``q2``, ``q3``, ``p2``, ``n3``, ``trop:<N>`` and ``idm:<ref>``."""
    ref = ref.strip()
    if ref.startswith("idm:"):
        return build_idm(get_fixture(ref[4:]))
    if ref.startswith("trop:"):
        try:
            n = int(ref[5:])
        except ValueError:
            raise InputError(f"bad tropical fixture {ref!r}") from None
        return trop(n)
    try:
        return FIXTURES[ref]()
    except KeyError:
        raise InputError(f"unknown fixture {ref!r}") from None


def is_fixture_ref(ref: str) -> bool:
    try:
        get_fixture(ref)
    except InputError:
        return False
    return True
