from __future__ import annotations

import time

import pytest

from qorder.errors import InputError
from qorder.fixtures import get_fixture, n3, p2, q2, q3, trop
from qorder.lattice import FiniteLattice
from qorder.quantaloid import (
    ArrowRef,
    Quantaloid,
    build_idm,
    extension,
    idempotents,
    is_monad,
    lifting,
    monads,
    split_monad,
    validate_quantaloid,
)

from conftest import all_bases, arrows, largest


def names(Q, refs):
    return sorted(Q.arrow_name(a) for a in refs)


@pytest.mark.parametrize("Q", all_bases(), ids=lambda Q: Q.name)
def test_fixtures_are_quantaloids(Q):
    assert validate_quantaloid(Q).ok


def test_corrupted_q3_reports_sup_distribution():
    Q = q3()
    table = [list(r) for r in Q.comp_table(0, 0, 0)]
    m, one = Q.elem(0, 0, "m"), Q.elem(0, 0, "1")
    table[m][m] = one
    bad = Quantaloid(["*"], {(0, 0): Q.hom(0, 0)}, {(0, 0, 0): table}, [one])
    rep = validate_quantaloid(bad)
    assert not rep.ok
    assert all(a.startswith("sup-distribution") for a, _ in rep.violations)
    assert ("sup-distribution fails (right argument)", ("m", "m", "1")) in rep.violations


def test_broken_unit_reported():
    L = FiniteLattice.chain(["0", "1"])
    bad = Quantaloid.quantale(L, lambda g, f: min(g, f), 0)
    assert any(a.startswith("unit") for a, _ in validate_quantaloid(bad).violations)


def test_residuation_examples():
    Q = q3()
    a = lambda e: Q.arrow("*", "*", e)
    assert Q.arrow_name(lifting(Q, a("m"), a("0"))) == "0"
    assert Q.arrow_name(extension(Q, a("m"), a("0"))) == "0"
    N = n3()
    b = lambda e: N.arrow("*", "*", e)
    assert N.arrow_name(lifting(N, b("t"), b("1"))) == "0"
    assert N.arrow_name(extension(N, b("t"), b("1"))) == "0"
    for B in all_bases():
        top = B.hom(0, 0).top
        for h in B.hom(0, 0).carrier:
            zero = ArrowRef(0, 0, B.hom(0, 0).bottom)
            assert lifting(B, zero, ArrowRef(0, 0, h)).elem == top
            assert extension(B, zero, ArrowRef(0, 0, h)).elem == top


def _check_adjunctions(Q):
    for A, B, f in arrows(Q):
        for C in range(Q.n_objects):
            for h in Q.hom(C, B).carrier:
                lift = lifting(Q, ArrowRef(A, B, f), ArrowRef(C, B, h)).elem
                L, Lh = Q.hom(C, A), Q.hom(C, B)
                for x in L.carrier:
                    assert Lh.leq(Q.compose(C, A, B, f, x), h) == L.leq(x, lift)
            for h in Q.hom(A, C).carrier:
                ext = extension(Q, ArrowRef(A, B, f), ArrowRef(A, C, h)).elem
                L, Lh = Q.hom(B, C), Q.hom(A, C)
                for x in L.carrier:
                    assert Lh.leq(Q.compose(A, B, C, x, f), h) == L.leq(x, ext)


@pytest.mark.parametrize("Q", all_bases() + [build_idm(q3()), build_idm(n3())], ids=lambda Q: Q.name)
def test_adjunction_laws_exhaustive(Q):
    _check_adjunctions(Q)


def test_residuals_match_brute_force_maximum():
    for Q in all_bases():
        L = Q.hom(0, 0)
        for f in L.carrier:
            for h in L.carrier:
                want = largest(L, lambda x: L.leq(Q.compose(0, 0, 0, f, x), h))
                assert lifting(Q, ArrowRef(0, 0, f), ArrowRef(0, 0, h)).elem == want


def test_idempotents():
    assert names(q3(), idempotents(q3(), 0)) == ["0", "1", "m"]
    assert names(n3(), idempotents(n3(), 0)) == ["0", "1", "t"]
    assert names(trop(4), idempotents(trop(4), 0)) == ["0", "4"]


def test_monads_and_splitting():
    N = n3()
    assert names(N, monads(N, 0)) == ["1", "t"]
    assert split_monad(N, N.arrow("*", "*", "t")) is None
    s = split_monad(N, N.arrow("*", "*", "1"))
    assert s is not None and (s.f, s.u) == (N.identity(0), N.identity(0))
    with pytest.raises(InputError):
        split_monad(N, N.arrow("*", "*", "0"))


def test_idm_n3_splits_t():
    I = build_idm(n3())
    assert I.objects == ("0", "1", "t")
    one, t = I.object_index("1"), I.object_index("t")
    s = split_monad(I, ArrowRef(one, one, I.elem(one, one, "t")))
    assert s.obj == t
    assert I.hom(one, t).name(s.f) == "t" and I.hom(t, one).name(s.u) == "t"


def test_idm_q3_shape():
    I = build_idm(q3())
    assert I.objects == ("0", "m", "1")
    for i, e in enumerate(I.objects):
        for j, f in enumerate(I.objects):
            meet = min(i, j)
            assert list(I.hom(i, j).names) == ["0", "m", "1"][: meet + 1]


def test_idm_q2_shape():
    I = build_idm(q2())
    assert I.objects == ("0", "1")
    assert list(I.hom(1, 1).names) == ["0", "1"]
    for i, j in [(0, 0), (0, 1), (1, 0)]:
        assert list(I.hom(i, j).names) == ["0"]


@pytest.mark.parametrize("Q", [q2(), q3(), p2(), n3(), trop(4)], ids=lambda Q: Q.name)
def test_idm_valid_and_all_monads_split(Q):
    I = build_idm(Q)
    assert validate_quantaloid(I).ok
    for x in range(I.n_objects):
        for t in monads(I, x):
            assert split_monad(I, t) is not None
    # identities of Q embed with their full hom-lattices
    ids = [i for i, e in enumerate(I.idempotent_objects) if e.elem == Q.identity(e.src)]
    for i in ids:
        for j in ids:
            X, Y = I.base_object(i), I.base_object(j)
            assert len(I.hom(i, j)) == len(Q.hom(X, Y))
            for a in I.hom(i, j).carrier:
                for b in I.hom(i, j).carrier:
                    assert I.hom(i, j).leq(a, b) == Q.hom(X, Y).leq(I.to_base(i, j, a), I.to_base(i, j, b))


def test_monads_in_idm_are_idempotent():
    I = build_idm(n3())
    for x in range(I.n_objects):
        for t in monads(I, x):
            assert I.compose(x, x, x, t.elem, t.elem) == t.elem


def test_get_fixture():
    assert get_fixture("q3") is q3()
    assert get_fixture("trop:4") is trop(4)
    assert get_fixture("idm:n3") is build_idm(n3())
    with pytest.raises(InputError):
        get_fixture("nope")
    with pytest.raises(InputError):
        get_fixture("trop:0")


def test_trop_carrier_and_order():
    T = trop(4)
    L = T.hom(0, 0)
    assert L.names == ("0", "1", "2", "3", "4")
    assert T.arrow_name(T.compose_arrows(T.arrow("*", "*", "3"), T.arrow("*", "*", "3"))) == "4"


def test_adjunction_runtime_budget():
    start = time.perf_counter()
    for Q in all_bases():
        _check_adjunctions(Q)
    assert time.perf_counter() - start < 10
