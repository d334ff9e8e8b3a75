from __future__ import annotations

import pytest

from qorder.cauchy import cauchy_complete_trs, is_cauchy_complete_cat, is_cauchy_complete_trs, is_inverse_pair
from qorder.errors import BudgetExceeded, InputError
from qorder.fixtures import q2, q3, trop
from qorder.generate import structures_up_to
from qorder.morita import (
    is_equivalence,
    prop19_check,
    search_equivalence,
    search_isomorphism,
    skeleton,
    strip_isolated,
)
from qorder.search import Budget
from qorder.structures import ObjectMap, SemiDistributor, identity_map

from conftest import one, two


def test_inverse_pair_examples(C1, isolated):
    ident = SemiDistributor.identity(C1)
    assert is_inverse_pair(ident, ident)
    top = SemiDistributor.from_names(isolated, isolated, [["1", "1"], ["1", "1"]])
    assert not is_inverse_pair(top, top)


def test_isolated_point_is_invisible(isolated):
    w = search_isomorphism(isolated, one(q2(), "1"))
    assert w is not None
    assert w.forward.mat.names() == [["1", "0"]]
    assert w.backward.mat.names() == [["1"], ["0"]]


def test_c1_and_sm_are_not_isomorphic(C1, Sm):
    assert search_isomorphism(Sm, C1) is None
    assert search_isomorphism(C1, Sm) is None


def test_indiscrete_pair_collapses():
    indiscrete = two(q2(), [["1", "1"], ["1", "1"]])
    assert search_isomorphism(indiscrete, one(q2(), "1")) is not None
    discrete = two(q2(), [["1", "0"], ["0", "1"]])
    assert search_isomorphism(discrete, one(q2(), "1")) is None


def test_structure_is_isomorphic_to_its_completion(C1):
    assert search_isomorphism(C1, cauchy_complete_trs(C1).completed) is not None


@pytest.mark.parametrize("base", [q2(), q3()], ids=lambda b: b.name)
def test_exhaustive_isomorphism_search_agrees(base):
    corpus = structures_up_to(base, 2, "trs")
    if base is q3():
        corpus = corpus[::3]
    for A in corpus:
        for B in corpus:
            fast = search_isomorphism(A, B) is not None
            assert fast == (search_isomorphism(A, B, exhaustive=True) is not None)


def test_exhaustive_equivalence_search_agrees():
    corpus = structures_up_to(q2(), 2, "trs")
    for A in corpus:
        for B in corpus:
            fast = search_equivalence(A, B)
            slow = search_equivalence(A, B, exhaustive=True)
            assert (fast is None) == (slow is None)
            if fast is not None:
                assert is_equivalence(fast.F, fast.G)


def test_skeleton_of_indiscrete_pair():
    S = two(q3(), [["m", "m"], ["m", "m"]])
    sub, incl, retr = skeleton(S)
    assert len(sub) == 1
    assert retr.map == (0, 0)
    assert is_equivalence(incl, retr)


def test_is_equivalence_rejects_mismatched_maps(C1, Sm):
    with pytest.raises(InputError):
        is_equivalence(identity_map(C1), identity_map(Sm))
    F = ObjectMap(C1, C1, (0,))
    assert is_equivalence(F, F)


def test_iso_vs_equivalence_report(C1, Sm):
    assert prop19_check(C1, C1).agree
    rep = prop19_check(C1, Sm)
    assert rep.agree and rep.iso is None


def test_search_preconditions(C1):
    with pytest.raises(InputError):
        search_isomorphism(C1, one(q2(), "1"))
    with pytest.raises(InputError):
        search_isomorphism(one(trop(4), "2"), one(trop(4), "0"))


def test_budget_limits():
    A = structures_up_to(q2(), 3, "trs")[-1]
    assert len(A) == 3
    with pytest.raises(BudgetExceeded):
        search_isomorphism(A, A, Budget(max_objects=2))
    with pytest.raises(BudgetExceeded):
        search_isomorphism(A, A, Budget(max_nodes=1), exhaustive=True)


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("QORDER_BUDGET", "123")
    assert Budget.from_env().max_nodes == 123
    monkeypatch.setenv("QORDER_BUDGET", "objects=2,nodes=5")
    b = Budget.from_env()
    assert (b.max_objects, b.max_nodes) == (2, 5)
    monkeypatch.setenv("QORDER_BUDGET", "bogus")
    with pytest.raises(InputError):
        Budget.from_env()


def test_strip_isolated_q2(isolated):
    r = strip_isolated(isolated)
    assert r.stripped.obs.names == ("a",)
    assert r.stripped.flags.category and r.verified


def test_strip_isolated_trop4_metrics():
    T = trop(4)
    metric = two(T, [["0", "3"], ["1", "0"]])
    r = strip_isolated(metric)
    assert r.stripped == metric and r.verified
    far = two(T, [["0", "4"], ["4", "4"]])
    r = strip_isolated(far)
    assert r.stripped.obs.names == ("a",) and r.verified
    with pytest.raises(InputError):
        strip_isolated(one(q3(), "1"))


def test_trop4_completeness_facet():
    T = trop(4)
    for B in structures_up_to(T, 2, "trs"):
        has_far_point = any(all(T.hom(0, 0).name(v) == "4" for v in B.hom.row(b) + B.hom.column(b)) for b in range(len(B)))
        expected = has_far_point and is_cauchy_complete_cat(strip_isolated(B).stripped).complete
        assert is_cauchy_complete_trs(B).complete == expected
