import itertools

import pytest

from oracles import isomorphic, monotone_maps
from ordkit.errors import HypothesisFailure
from ordkit.finposet import antichain, chain, discrete, hom_poset, terminal, vee
from ordkit.presheaf import (
    check_cover_hypotheses,
    check_essential_image,
    check_nerve_fully_faithful,
    check_nerve_preserves_product,
    check_nerve_preserves_surjections,
    full_subcategory_of_finpos,
    natural_transformations,
    nerve,
    nerve_of_map,
)

ONE, C2, A2 = terminal(), chain(2), antichain(2)


@pytest.fixture(scope="module")
def demo():
    return full_subcategory_of_finpos([ONE, C2, A2], ["1", "C2", "A2"])


def test_two_objects():
    A = full_subcategory_of_finpos([ONE, A2], ["1", "A2"])
    assert len(A.objects) == 2
    assert len(A.hom[(1, 1)]) == 4


def test_terminal_category():
    A = full_subcategory_of_finpos([ONE])
    assert len(A.hom[(0, 0)]) == 1 and A.id(0) == 0
    assert A.check_laws().verdict


def test_demo_category_laws(demo):
    assert demo.check_laws().verdict


def test_nerve_values(demo):
    N = nerve(demo, [0, 2], 1)
    assert isomorphic(N.obj[0], C2)
    assert N.obj[2].n == 4
    assert N.check_functorial().verdict


def test_nerve_of_terminal_is_constant_point(demo):
    N = nerve(demo, [0, 1, 2], 0)
    assert all(N.obj[P].n == 1 for P in (0, 1, 2))


def test_representable_presheaf(demo):
    # X in Ps: N(X) is hom(-, X) on the base
    N = nerve(demo, [0, 2], 2)
    for P in (0, 2):
        assert N.obj[P] == demo.hom[(P, 2)].poset


def _brute_nats(F, G):
    """Every family of monotone components, kept when all squares commute."""
    A = F.category
    comps = [monotone_maps(F.obj[P], G.obj[P]) for P in F.base]
    out = []
    for fam in itertools.product(*comps):
        alpha = dict(zip(F.base, fam))
        ok = all(
            tuple(alpha[P][i] for i in F.action(P, Q, u).images)
            == tuple(G.action(P, Q, u).images[j] for j in alpha[Q])
            for P in F.base for Q in F.base for u in range(len(A.hom[(P, Q)]))
        )
        if ok:
            out.append(fam)
    return out


def test_natural_transformations_match_brute_force(demo):
    Ps = [0, 2]
    for X in range(3):
        for Y in range(3):
            F, G = nerve(demo, Ps, X), nerve(demo, Ps, Y)
            found = {tuple(a[P] for P in Ps) for a in natural_transformations(F, G)}
            assert found == set(_brute_nats(F, G))


def test_fully_faithful_on_demo(demo):
    r = check_nerve_fully_faithful(demo, [0, 2])
    assert r.verdict
    assert r.details["hom_vs_natural"]["C2->C2"] == [3, 3]


def test_uncovered_object_fails():
    A = full_subcategory_of_finpos([ONE, A2], ["1", "A2"])
    with pytest.raises(HypothesisFailure) as exc:
        check_nerve_fully_faithful(A, [0])
    assert exc.value.witness == "A2"


def test_non_projective_cover_fails(demo):
    with pytest.raises(HypothesisFailure) as exc:
        check_cover_hypotheses(demo, [1])
    assert exc.value.witness == "C2"


def test_yoneda_case():
    A = full_subcategory_of_finpos([ONE, A2, discrete(range(3))], ["1", "A2", "D3"])
    assert check_nerve_fully_faithful(A, [0, 1, 2]).verdict


def test_nerve_preserves_surjections(demo):
    r = check_nerve_preserves_surjections(demo, [0, 2])
    assert r.verdict and r.details["projective"]


def test_nerve_of_surjection_componentwise(demo):
    # A2 -> C2, a -> 0, b -> 1 is surjective; so are its components
    f = next(k for k, m in enumerate(demo.hom[(2, 1)].maps) if m.images == (0, 1))
    comps = nerve_of_map(demo, [0, 2], 2, 1, f)
    for P, c in comps.items():
        assert set(c) == set(range(len(demo.hom[(P, 1)])))


def test_nerve_preserves_products(demo):
    assert check_nerve_preserves_product(demo, [0, 2], C2, vee()).verdict


def test_essential_image(demo):
    for X in range(3):
        assert check_essential_image(demo, [0, 2], X).verdict


def test_faithfulness_reflects_order(demo):
    Ps = [0, 2]
    H = demo.hom[(2, 1)]
    for f, g in itertools.product(range(len(H)), repeat=2):
        nf, ng = nerve_of_map(demo, Ps, 2, 1, f), nerve_of_map(demo, Ps, 2, 1, g)
        below = all(demo.hom[(P, 1)].poset.leq(a, b)
                    for P in Ps for a, b in zip(nf[P], ng[P]))
        assert below == H.poset.leq(f, g)


def test_hom_counts_in_demo(demo):
    assert len(demo.hom[(1, 2)]) == len(hom_poset(C2, A2)) == 2
