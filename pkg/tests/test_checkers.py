import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import posets
from oracles import upsets
from ordkit import config
from ordkit.checkers import (
    EXHAUSTIVE_CU_LIMIT,
    check_cu_representable,
    check_discrete_generator,
    check_filtral_implies,
    check_one_projective,
    check_preservation_lemmas,
    check_projective_copowers,
    check_well_pointed,
    discrete_cover,
    filtral_comparison,
    is_compact_fin,
    is_order_filtral,
    is_projective_fin,
    is_separated_fin,
    lift,
    projectivity_report,
)
from ordkit.errors import SizeLimit
from ordkit.finposet import (
    MonotoneMap,
    antichain,
    chain,
    classify,
    discrete,
    empty,
    hom_poset,
    inclusion,
    terminal,
    vee,
)
from ordkit.generate import random_surjection

C2 = chain(2)
A2 = antichain(2)


# projectivity ------------------------------------------------------------------------


def test_antichain_projective():
    assert is_projective_fin(A2).projective


def test_chain_not_projective():
    res = is_projective_fin(C2)
    assert not res.projective and res.section is None
    assert res.cover.dom.is_discrete() and classify(res.cover).surjection


def test_terminal_projective():
    assert is_projective_fin(terminal()).projective


@given(posets(max_n=5))
def test_projective_iff_discrete(P):
    assert is_projective_fin(P).projective == P.is_discrete()
    assert projectivity_report(P).verdict


@given(st.integers(1, 3), st.randoms(use_true_random=False), posets(min_n=1, max_n=4))
def test_discrete_lifts_along_surjections(k, rng, B):
    P = discrete(range(k))
    q = random_surjection(B, rng.randint(B.n, 5), rng)
    g = MonotoneMap(P, B, tuple(rng.randrange(B.n) for _ in range(k)))
    h = is_projective_fin(P).lift(g, q)
    assert h.then(q) == g


def test_lift_rejects_non_projective():
    with pytest.raises(ValueError):
        is_projective_fin(C2).lift(None, None)


def test_lift_search_finds_nothing_for_chain():
    q = discrete_cover(C2)
    assert lift(MonotoneMap(C2, C2, (0, 1)), q) is None


def test_copowers_of_projectives():
    for S in ("", "s", "st", "stu"):
        assert check_projective_copowers(S, A2).verdict
        assert check_projective_copowers(S, terminal()).verdict
    assert check_projective_copowers("st", C2).verdict  # vacuous


def test_one_projective_when_generator():
    r = check_one_projective()
    assert r.verdict and r.details == {"generator": True, "projective": True}


# generators and points --------------------------------------------------------------------


def test_discrete_generator_on_vee():
    r = check_discrete_generator(vee())
    assert r.verdict and r.details["points"] == 3


def test_discrete_generator_on_empty():
    r = check_discrete_generator(empty())
    assert r.verdict and r.details["points"] == 0


def test_discrete_generator_on_c2():
    r = check_discrete_generator(C2)
    assert r.verdict and r.details["points"] == 2 and not r.details["embedding"]


@given(posets(max_n=5))
def test_well_pointed(X):
    assert check_well_pointed(X).verdict


# filtrality, compactness, separation ---------------------------------------------------------


def test_order_filtral_on_one():
    r = is_order_filtral(terminal())
    assert r.verdict and r.details == {"up": 2, "filters": 2}


def test_order_filtral_on_vee():
    r = is_order_filtral(vee())
    assert r.verdict and r.details == {"up": 5, "filters": 5}


@given(posets(max_n=5))
def test_filtral_comparison_is_iso(X):
    phi, F = filtral_comparison(X)
    assert classify(phi).iso
    assert phi.dom.n == len(upsets(X))


def test_empty_compact_and_separated():
    assert is_compact_fin(empty()).verdict and is_separated_fin(empty()).verdict


@given(posets(max_n=5))
def test_compact_and_separated(X):
    assert is_compact_fin(X).verdict
    assert is_separated_fin(X).verdict
    assert check_filtral_implies(X).verdict


@given(posets(max_n=3))
def test_compact_exhaustive_agrees(X):
    assert is_compact_fin(X, exhaustive=True).verdict == is_compact_fin(X).verdict


def test_compact_exhaustive_refuses_large_cu():
    X = discrete(range(4))  # 16 upsets
    assert len(upsets(X)) > EXHAUSTIVE_CU_LIMIT
    with pytest.raises(SizeLimit):
        is_compact_fin(X, exhaustive=True)


# representability ----------------------------------------------------------------------------


def test_cu_rep_examples():
    for X, n in ((vee(), 5), (terminal(), 2), (A2, 4)):
        r = check_cu_representable(X)
        assert r.verdict and r.details == {"maps": n, "cu": n}
        assert len(hom_poset(X, C2)) == n


@given(posets(max_n=5))
def test_cu_rep_random(X):
    assert check_cu_representable(X).verdict


def test_cu_rep_size_cap():
    with config.caps(size=3):
        with pytest.raises(SizeLimit):
            check_cu_representable(chain(4))


# preservation lemmas --------------------------------------------------------------------------


def test_lemmas_on_bijection():
    r = check_preservation_lemmas(MonotoneMap.from_dict(A2, C2, {"a": 0, "b": 1}))
    assert r.verdict and r.details["compact_codomain"]


def test_lemmas_on_inclusion():
    r = check_preservation_lemmas(inclusion(C2, 0b01))
    assert r.verdict and r.details["separated_domain"]
