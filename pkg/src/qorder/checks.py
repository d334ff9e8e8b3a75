"""Named property suites run by ``qorder prop-check``.

Each suite is exhaustive over small generated structures where that is
cheap, and seeded sampling where it is not.  Suites are deterministic for a
given seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .basechange import check_normalization, normalize_category, verify_prop23
from .cauchy import (
    cauchy_complete_trs,
    embedding_pair,
    factor_through_completion,
    factorizations_by_search,
    is_cauchy_complete_by_definition,
    is_cauchy_complete_trs,
    is_inverse_pair,
    is_left_adjoint,
    converges,
    yoneda_check,
)
from .errors import InputError
from .fixtures import n3, q2, q3
from .generate import structures_up_to
from .morita import prop19_check
from .quantaloid import Quantaloid, build_idm
from .search import Budget, object_maps, regular_semidistributors
from .structures import (
    EnrichedStructure,
    SemiDistributor,
    check_object_map,
    compose_maps,
    maps_equivalent,
    stable_objects,
    stable_objects_by_definition,
)

DEFAULT_SEED = 20240501


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def summary(self) -> str:
        status = "holds" if self.passed else f"FAILS ({len(self.failures)} failures)"
        return f"{self.name}: {status} on {self.cases} cases"


@lru_cache(maxsize=None)
def trs_corpus(base: Quantaloid, max_objects: int = 2) -> tuple[EnrichedStructure, ...]:
    return tuple(structures_up_to(base, max_objects, "trs"))


def suite_lemma4(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Stable objects by formula versus by the one-object-probe definition."""
    res = SuiteResult("lemma4")
    for base in (q2(), q3(), n3()):
        for S in structures_up_to(base, 2, "regular"):
            res.cases += 1
            if stable_objects(S) != stable_objects_by_definition(S):
                res.fail(f"{base.name}: {S}")
    return res


def suite_lemma13(seed: int = DEFAULT_SEED) -> SuiteResult:
    """One-object probes decide completeness exactly as probing with every structure of <= 2 objects."""
    res = SuiteResult("lemma13")
    for base in (q2(), q3()):
        domains = trs_corpus(base)
        instances = list(domains) + [cauchy_complete_trs(S).completed for S in domains]
        for B in instances:
            res.cases += 1
            fast = is_cauchy_complete_trs(B).complete
            slow = is_cauchy_complete_by_definition(B, domains)
            if fast != slow:
                res.fail(f"{base.name}: {B} one-object={fast} full={slow}")
    return res


def _completion_suite(name: str, check: Callable[[EnrichedStructure, object], str | None]) -> SuiteResult:
    res = SuiteResult(name)
    for base in (q2(), q3(), n3()):
        for B in trs_corpus(base):
            res.cases += 1
            msg = check(B, cauchy_complete_trs(B))
            if msg:
                res.fail(f"{base.name}: {B}: {msg}")
    return res


def suite_prop15(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Yoneda equalities and full faithfulness of the embedding."""

    def check(B, r):
        bad = [f"{ax} {w}" for ax, w in yoneda_check(B, r).violations if not ax.startswith("induced pair")]
        return "; ".join(bad) or None

    return _completion_suite("prop15", check)


def suite_prop16(seed: int = DEFAULT_SEED) -> SuiteResult:
    """The embedding's induced pair is an inverse pair."""

    def check(B, r):
        lower, upper = embedding_pair(r, B)
        return None if is_inverse_pair(lower, upper) else "induced pair is not inverse"

    return _completion_suite("prop16", check)


def suite_prop17(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Completions are totally regular and complete."""

    def check(B, r):
        C = r.completed
        if not C.flags.totally_regular:
            return "completion is not totally regular"
        w = is_cauchy_complete_trs(C)
        return None if w.complete else f"probe {w.witness.describe()} does not converge"

    return _completion_suite("prop17", check)


def factorization_samples(seed: int = DEFAULT_SEED, count: int = 60):
    """Seeded sample of regular semifunctors ``F: A -> B`` with ``B`` a completion."""
    pool = []
    for base in (q2(), q3()):
        corpus = trs_corpus(base)
        targets = [cauchy_complete_trs(C).completed for C in corpus]
        for A in corpus:
            for B in targets:
                for F in object_maps(A, B, regular=True):
                    pool.append(F)
    rng = random.Random(seed)
    return rng.sample(pool, min(count, len(pool))), len(pool)


def suite_prop18(seed: int = DEFAULT_SEED, count: int = 60) -> SuiteResult:
    """Factorization through the completion exists and is essentially unique."""
    res = SuiteResult("prop18")
    sample, _ = factorization_samples(seed, count)
    for F in sample:
        res.cases += 1
        fac = factor_through_completion(F)
        G, comp = fac.G, fac.completion
        if not check_object_map(G).regular_semifunctor:
            res.fail(f"{F.describe()}: G is not a regular semifunctor")
            continue
        if not maps_equivalent(compose_maps(G, comp.embed), F):
            res.fail(f"{F.describe()}: G . k is not isomorphic to F")
        for H in factorizations_by_search(F, comp):
            if not maps_equivalent(H, G):
                res.fail(f"{F.describe()}: second factorization {H.describe()}")
                break
    return res


def suite_prop19(seed: int = DEFAULT_SEED, q3_pairs: int | None = None) -> SuiteResult:
    """Isomorphism of structures iff equivalence of completions."""
    res = SuiteResult("prop19")
    budget = Budget()
    rng = random.Random(seed)
    for base in (q2(), q3()):
        corpus = trs_corpus(base)
        pairs = [(A, B) for A in corpus for B in corpus]
        if base is q3() and q3_pairs is not None:
            pairs = rng.sample(pairs, min(q3_pairs, len(pairs)))
        for A, B in pairs:
            res.cases += 1
            rep = prop19_check(A, B, budget)
            if not rep.agree:
                res.fail(f"{base.name}: {A} vs {B}: iso={rep.iso is not None} equiv={rep.equivalence is not None}")
    return res


def suite_prop23(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Reshuffling along Idm(Q) is a structure-preserving bijection; Idm(N3) normalizes."""
    res = SuiteResult("prop23")
    for base in (q2(), q3()):
        res.cases += 1
        rep = verify_prop23(base, trs_corpus(base))
        for ln in rep.lines() if not rep.ok else []:
            res.fail(f"{base.name}: {ln}")
    idm = build_idm(n3())
    for C in structures_up_to(idm, 2, "category"):
        res.cases += 1
        rep = check_normalization(normalize_category(C))
        if not rep.ok:
            res.fail(f"{C}: {rep.lines()}")
    return res


def ideal_relations_converge(A: EnrichedStructure, B: EnrichedStructure) -> list[str]:
    """Left adjoint regular semidistributors between complete structures that fail to converge."""
    bad = []
    for m in regular_semidistributors(A, B):
        phi = SemiDistributor(A, B, m)
        if is_left_adjoint(phi) is not None and converges(phi) is None:
            bad.append(str(m))
    return bad


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "lemma4": suite_lemma4,
    "lemma13": suite_lemma13,
    "prop15": suite_prop15,
    "prop16": suite_prop16,
    "prop17": suite_prop17,
    "prop18": suite_prop18,
    "prop19": suite_prop19,
    "prop23": suite_prop23,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> SuiteResult:
    try:
        suite = SUITES[name]
    except KeyError:
        raise InputError(f"unknown property suite {name!r}; choose from {', '.join(SUITES)}") from None
    return suite(seed=seed)


