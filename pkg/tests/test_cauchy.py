from __future__ import annotations

import pytest

from qorder.cauchy import (
    cauchy_complete_cat,
    cauchy_complete_trs,
    complete_regular,
    converges,
    embedding_pair,
    factor_through_completion,
    factorizations_by_search,
    is_adjoint_pair,
    is_cauchy_complete_by_definition,
    is_cauchy_complete_cat,
    is_cauchy_complete_trs,
    is_inverse_pair,
    is_left_adjoint,
    probes,
    right_adjoint_candidate,
    right_adjoints_by_search,
    yoneda_check,
)
from qorder.errors import InputError
from qorder.fixtures import n3, p2, q2, q3, trop
from qorder.generate import structures, structures_up_to
from qorder.matrix import compose_all, mat_lifting
from qorder.quantaloid import ArrowRef
from qorder.search import object_maps, regular_semidistributors
from qorder.structures import (
    ObjectMap,
    SemiDistributor,
    check_object_map,
    compose_maps,
    constant_functor,
    identity_map,
    induced_pair,
    maps_equivalent,
    pointing_map,
    stable_objects,
)

from conftest import one, two


def sd(A, B, names):
    return SemiDistributor.from_names(A, B, names)


def test_candidate_examples(C1):
    Q = q3()
    Sm = one(Q, "m")
    assert right_adjoint_candidate(sd(Sm, C1, [["m"]])).names() == [["m"]]
    S0 = one(Q, "0")
    bottom = sd(S0, C1, [["0"]])
    assert right_adjoint_candidate(bottom).names() == [["0"]]
    assert is_left_adjoint(bottom) is not None
    for B in structures_up_to(Q, 2, "category"):
        assert right_adjoint_candidate(SemiDistributor.identity(B)) == B.hom


def test_candidate_rejects_non_regular(C1, Sm):
    with pytest.raises(InputError):
        right_adjoint_candidate(sd(Sm, C1, [["1"]]))


def test_left_adjoint_examples(C1, Sm):
    pair = is_left_adjoint(sd(Sm, C1, [["m"]]))
    assert pair.left.mat.names() == pair.right.mat.names() == [["m"]]
    assert is_left_adjoint(sd(Sm, C1, [["1"]])) is None
    for B in structures_up_to(q3(), 2, "category"):
        for b in range(len(B)):
            lower, _ = induced_pair(constant_functor(B, b))
            assert is_left_adjoint(lower) is not None


def test_category_candidate_is_the_plain_lifting():
    for base in (q2(), q3(), n3()):
        cats = structures_up_to(base, 2, "category")
        for A in cats:
            for B in cats:
                for m in regular_semidistributors(A, B):
                    phi = SemiDistributor(A, B, m)
                    lift = mat_lifting(m, B.hom)
                    assert compose_all(A.hom, lift, B.hom) == lift


@pytest.mark.parametrize("base", [q2(), q3(), n3(), trop(4)], ids=lambda b: b.name)
def test_candidate_decides_left_adjointness(base):
    corpus = structures_up_to(base, 2, "regular")
    checked = 0
    for A in corpus:
        for B in corpus:
            if len(A) + len(B) > 3:
                continue
            for m in regular_semidistributors(A, B):
                phi = SemiDistributor(A, B, m)
                found = right_adjoints_by_search(phi)
                pair = is_left_adjoint(phi)
                assert (pair is not None) == bool(found)
                if pair is not None:
                    assert found == [pair.right.mat]
                checked += 1
    assert checked > 0


def test_convergence_examples(C1, Sm):
    for B in structures_up_to(q3(), 2, "trs"):
        for b in stable_objects(B):
            lower, _ = induced_pair(pointing_map(B, b))
            F = converges(lower)
            assert F is not None and maps_equivalent(F, pointing_map(B, b))
    assert converges(sd(Sm, C1, [["m"]])) is None
    assert converges(SemiDistributor.identity(C1)) == identity_map(C1)
    with pytest.raises(InputError):
        converges(sd(Sm, C1, [["1"]]))


def test_c1_separates_the_two_completeness_notions(C1):
    trs = is_cauchy_complete_trs(C1)
    assert not trs.complete
    assert trs.witness.phi.names() == [["m"]]
    assert q3().arrow_name(trs.witness.idempotent) == "m"
    assert [p.phi.names() for p in trs.failures] == [[["0"]], [["m"]]]
    assert is_cauchy_complete_cat(C1).complete


def test_completion_of_c1(C1):
    r = cauchy_complete_trs(C1)
    C = r.completed
    assert C.obs.names == ("<0|0>", "<m|m>", "<1|1>")
    assert C.hom.names() == [["0", "0", "0"], ["0", "m", "m"], ["0", "m", "1"]]
    assert r.embed.map == (2,)
    assert not C.flags.category and C.flags.totally_regular
    assert is_cauchy_complete_trs(C).complete
    assert yoneda_check(C1, r).ok
    assert C(r.embed(0), 1) == q3().elem(0, 0, "m")


def test_bottom_point_over_q2_is_complete():
    assert is_cauchy_complete_trs(one(q2(), "0")).complete


def test_discrete_p2_category_is_not_complete():
    B = two(p2(), [["1", "0"], ["0", "1"]])
    res = is_cauchy_complete_cat(B)
    assert not res.complete
    assert res.witness.phi.names() == [["a"], ["b"]]
    assert [p.phi.names() for p in res.failures] == [[["a"], ["b"]], [["b"], ["a"]]]


def test_categories_complete_after_cat_completion():
    for base in (q2(), q3(), p2()):
        for B in structures_up_to(base, 2, "category"):
            r = cauchy_complete_cat(B)
            assert r.completed.flags.category
            assert is_cauchy_complete_cat(r.completed).complete
            assert yoneda_check(B, r).ok


def test_cat_completions_of_points(C1):
    assert cauchy_complete_cat(C1).completed.hom.names() == [["1"]]
    r = cauchy_complete_cat(one(q2(), "1"))
    assert r.completed.obs.names == ("<1|1>",)


def test_isolated_example_completion(isolated):
    r = cauchy_complete_trs(isolated)
    C = r.completed
    assert C.obs.names == ("<0|0,0>", "<1|1,0>")
    assert C.hom.names() == [["0", "0"], ["0", "1"]]
    assert r.embed.map == (1, 0)
    assert yoneda_check(isolated, r).ok


def test_probe_scan_order():
    B = two(q3(), [["1", "m"], ["m", "1"]])
    seen = [(p.idempotent.elem, p.phi.column(0)) for p in probes(B)]
    assert seen == sorted(seen)


def test_skeletal_completion_has_distinct_profiles():
    from qorder.morita import search_equivalence

    for S in structures_up_to(q3(), 2, "trs"):
        full = cauchy_complete_trs(S).completed
        sk = cauchy_complete_trs(S, skeletal=True).completed
        assert set(sk.obs.names) <= set(full.obs.names)
        prof = {(sk.type_of(i), sk.hom.column(i), sk.hom.row(i)) for i in range(len(sk))}
        assert len(prof) == len(sk)
        assert search_equivalence(full, sk) is not None


def test_regular_recipe_on_non_trs_structures():
    cases = [S for S in structures_up_to(trop(4), 2, "regular") if not S.flags.totally_regular]
    cases += [S for S in structures_up_to(q3(), 2, "regular") if not S.flags.totally_regular]
    assert cases
    for S in cases:
        r = complete_regular(S)
        assert r.completed.flags.totally_regular
        assert not any(True for _ in object_maps(S, r.completed, fully_faithful=True))
        if r.embed is not None:
            assert not yoneda_check(S, r).ok


def test_preconditions():
    with pytest.raises(InputError):
        is_cauchy_complete_trs(one(trop(4), "2"))
    with pytest.raises(InputError):
        is_cauchy_complete_cat(one(q3(), "m"))
    with pytest.raises(InputError):
        cauchy_complete_cat(one(q3(), "m"))
    with pytest.raises(InputError):
        cauchy_complete_trs(one(trop(4), "2"))


def test_embedding_pair_is_inverse(C1):
    r = cauchy_complete_trs(C1)
    lower, upper = embedding_pair(r, C1)
    assert is_inverse_pair(lower, upper)
    assert is_adjoint_pair(lower, upper)


def test_definition_probe_agrees_on_small_instances(C1):
    domains = structures_up_to(q3(), 1, "trs")
    assert not is_cauchy_complete_by_definition(C1, domains)
    assert is_cauchy_complete_by_definition(cauchy_complete_trs(C1).completed, domains)


def test_factor_identity(C1):
    r = cauchy_complete_trs(C1)
    fac = factor_through_completion(r.embed, r)
    assert fac.G.map == (0, 1, 2)
    assert maps_equivalent(fac.G, identity_map(r.completed))
    assert maps_equivalent(compose_maps(fac.G, r.embed), r.embed)


def test_factor_uniqueness_detects_inequivalent_candidate(C1):
    r = cauchy_complete_trs(C1)
    fac = factor_through_completion(r.embed, r)
    H = ObjectMap(r.completed, r.completed, (1, 1, 2))
    assert not maps_equivalent(H, fac.G)
    found = list(factorizations_by_search(r.embed, r))
    assert found and all(maps_equivalent(h, fac.G) for h in found)
    assert H not in found


def test_factor_requires_complete_target(C1, Sm):
    F = identity_map(C1)
    with pytest.raises(InputError):
        factor_through_completion(F)
    with pytest.raises(InputError):
        factor_through_completion(ObjectMap(Sm, C1, (0,)))


def test_factorization_of_sampled_maps():
    for A in structures_up_to(q2(), 2, "trs"):
        B = cauchy_complete_trs(two(q2(), [["1", "1"], ["0", "1"]])).completed
        for F in object_maps(A, B, regular=True):
            fac = factor_through_completion(F)
            assert check_object_map(fac.G).regular_semifunctor
            assert maps_equivalent(compose_maps(fac.G, fac.completion.embed), F)
