import itertools

import pytest
from hypothesis import given

from conftest import posets
from oracles import isomorphic
from ordkit.errors import NotALattice
from ordkit.finposet import antichain, chain, classify, empty, terminal, vee
from ordkit.generate import posets_up_to_iso
from ordkit.lattice import DistLattice, lattice_from_json, lattice_to_json
from ordkit.duality import (
    birkhoff_dual,
    classifying_map,
    downset_dl,
    filter_masks,
    filters,
    irreducible_to_prime_filter,
    join_irreducibles,
    lattice_roundtrip,
    nachbin_fin,
    poset_roundtrip,
    prime_filters,
    two_tensor_one,
    ultrafilters_fin,
    upset_dl,
    xi_fin,
)
from ordkit.subobjects import Subobject, inverse_image

C2 = chain(2)
A2 = antichain(2)


def brute_filters(L, prime=False):
    P = L.carrier
    out = []
    for s in range(1, 1 << L.n):
        mem = [i for i in range(L.n) if (s >> i) & 1]
        if not all((s >> j) & 1 for i in mem for j in range(L.n) if P.leq(i, j)):
            continue
        if not all((s >> L.meet[a][b]) & 1 for a in mem for b in mem):
            continue
        if prime:
            if (s >> L.bottom) & 1:
                continue
            if any((s >> L.join[a][b]) & 1 and not ((s >> a) & 1 or (s >> b) & 1)
                   for a in range(L.n) for b in range(L.n)):
                continue
        out.append(s)
    return out


# lattices --------------------------------------------------------------------------------


def test_upset_dl_examples():
    assert len(upset_dl(A2)) == 4
    assert len(upset_dl(A2).carrier.pairs()) == 9
    L = upset_dl(C2)
    assert isomorphic(L.carrier, chain(3))
    assert len(upset_dl(empty())) == 1


def test_downset_dl_is_dual_of_upsets():
    for P in (C2, vee(), A2):
        assert isomorphic(downset_dl(P).carrier, upset_dl(P).carrier.dual())


def test_non_distributive_rejected():
    from ordkit.finposet import make_poset

    # the diamond M3
    M3 = make_poset("0abc1", [("0", "a"), ("0", "b"), ("0", "c"),
                              ("a", "1"), ("b", "1"), ("c", "1")])
    with pytest.raises(NotALattice):
        DistLattice.from_poset(M3)


def test_non_lattice_rejected():
    with pytest.raises(NotALattice):
        DistLattice.from_poset(A2)


def test_lattice_json_roundtrip():
    L = upset_dl(vee())
    M = lattice_from_json(lattice_to_json(L))
    assert isomorphic(L.carrier, M.carrier)


# filters -------------------------------------------------------------------------------


def test_filters_of_three_chain():
    L = DistLattice.from_poset(chain(3))
    F, principal = filters(L)
    assert isomorphic(F, chain(3))
    assert classify(principal).iso


def test_filters_of_boolean_square():
    L = upset_dl(A2)
    F, _ = filters(L)
    assert isomorphic(F, L.carrier)


def test_filters_of_one_element_lattice():
    F, _ = filters(upset_dl(empty()))
    assert F.n == 1


@pytest.mark.parametrize("P", [P for n in range(5) for P in posets_up_to_iso(n)])
def test_filter_search_matches_brute_force(P):
    L = upset_dl(P)
    assert sorted(filter_masks(L)) == sorted(brute_filters(L))
    assert sorted(filter_masks(L, prime=True)) == sorted(brute_filters(L, prime=True))


def test_prime_filters_examples():
    assert isomorphic(prime_filters(upset_dl(vee())), vee())
    assert isomorphic(prime_filters(DistLattice.from_poset(chain(3))), C2)
    assert prime_filters(DistLattice.from_poset(C2)).n == 1


# Birkhoff round trips ---------------------------------------------------------------------


def test_nachbin_examples():
    for P in (vee(), terminal(), chain(3)):
        PF, unit = nachbin_fin(P)
        assert isomorphic(PF, P) and classify(unit).iso


def test_birkhoff_dual_orientation():
    # join-irreducibles of Up(V) are {z}, {x,z}, {y,z}; reversed inclusion gives V back
    J = join_irreducibles(upset_dl(vee()))
    assert isomorphic(J, vee().dual())
    assert isomorphic(birkhoff_dual(upset_dl(vee())), vee())


@given(posets(max_n=5))
def test_poset_roundtrip(P):
    assert poset_roundtrip(P).verdict
    assert isomorphic(prime_filters(upset_dl(P)), P)


@given(posets(min_n=1, max_n=5))
def test_lattice_roundtrip_on_carrier_lattices(P):
    # finite distributive lattices are the ones whose carrier has this form
    L = upset_dl(P)
    assert lattice_roundtrip(L).verdict
    assert classify(irreducible_to_prime_filter(L)).iso


@pytest.mark.parametrize("n", range(1, 6))
def test_chain_lattices(n):
    L = DistLattice.from_poset(chain(n))
    assert lattice_roundtrip(L).verdict
    assert isomorphic(birkhoff_dual(L), chain(n - 1))


# ultrafilters and xi --------------------------------------------------------------------------


def test_ultrafilters_examples():
    ufs, principal = ultrafilters_fin("abc")
    assert len(ufs) == 3 and set(principal.values()) == set(ufs)
    assert ultrafilters_fin([]) == ([], {})
    assert len(ultrafilters_fin("a")[0]) == 1


def test_classifying_map_recovers_subobject():
    X = vee()
    U = Subobject.of(X, ["x", "z"])
    chi = classifying_map(U, U.complement())
    assert chi.cod == two_tensor_one()
    assert inverse_image(chi, Subobject(chi.cod, 0b10)) == U


def test_xi_two_points():
    xi, bijective = xi_fin("ab")
    assert bijective
    assert xi[("a", ())] == frozenset({frozenset("a"), frozenset("ab")})
    assert xi[("b", ())] == frozenset({frozenset("b"), frozenset("ab")})


def test_xi_one_point():
    xi, bijective = xi_fin("a")
    assert bijective and len(xi) == 1


def test_xi_five_points():
    xi, bijective = xi_fin(range(5))
    assert bijective
    for s in range(5):
        members = xi[(s, ())]
        assert members == frozenset(T for T in (frozenset(c) for k in range(6)
                                                for c in itertools.combinations(range(5), k))
                                    if s in T)
