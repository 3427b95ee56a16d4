"""Finite Birkhoff/Priestley duality: upset lattices, filters, prime filters.

Finite Priestley spaces are just finite posets, so no topology is stored.
The comparison map from points of ``S.1`` to ultrafilters of ``P(S)`` is
built by going through classifying maps into ``2.1``.
"""

from __future__ import annotations

from . import config
from .errors import HypothesisFailure, SizeLimit
from .finposet import (
    FinPoset,
    MonotoneMap,
    bits,
    chain,
    discrete,
    find_isomorphism,
    is_order_isomorphism,
    points,
    tensor,
    terminal,
)
from .lattice import DistLattice
from .report import Report
from .subobjects import Relation, Subobject, inverse_image, relation_to_morphism, up_lattice


def upset_dl(P: FinPoset) -> DistLattice:
    """Up-closed subsets of ``P`` under intersection and union."""
    return up_lattice(P)


def downset_dl(P: FinPoset) -> DistLattice:
    config.check_size(P.n, "Down(P) ambient")
    full = P.full_mask
    from .generate import upset_masks

    return DistLattice.of_sets(P, [full & ~m for m in upset_masks(P)])


# filters ------------------------------------------------------------------------------


def filter_masks(L: DistLattice, prime: bool = False) -> list:
    """Every non-empty filter of ``L`` (as a bitmask), found by search.

    Elements are decided from the top down; an element may only enter once
    everything above it has, and meets of members are recorded as
    obligations so that a branch dies as soon as one is refused. With
    ``prime`` only proper prime filters are kept.
    """
    if L.n > 1 << config.size_cap():
        raise SizeLimit(f"filter search on a lattice of {L.n} elements")
    P = L.carrier
    order = P.linear_extension[::-1]
    up, meet = P.up, L.meet
    out = []

    def rec(k, chosen, required):
        if k == len(order):
            if chosen:
                out.append(chosen)
            return
        x = order[k]
        bit = 1 << x
        above = up[x] & ~bit
        if above & ~chosen == 0:
            need = required
            for y in bits(chosen):
                need |= 1 << meet[x][y]
            rec(k + 1, chosen | bit, need)
        if not required & bit:
            rec(k + 1, chosen, required)

    rec(0, 0, 0)
    if prime:
        out = [m for m in out if is_prime_filter(L, m)]
    return out


def is_prime_filter(L: DistLattice, mask: int) -> bool:
    if (mask >> L.bottom) & 1:
        return False
    for a in range(L.n):
        for b in range(L.n):
            if (mask >> L.join[a][b]) & 1 and not ((mask >> a) & 1 or (mask >> b) & 1):
                return False
    return True


def _family_poset(L: DistLattice, masks, reverse: bool) -> FinPoset:
    names = tuple(frozenset(L.elements[i] for i in bits(m)) for m in masks)
    up = []
    for m in masks:
        row = 0
        for k, m2 in enumerate(masks):
            below = (m2 & ~m == 0) if reverse else (m & ~m2 == 0)
            if below:
                row |= 1 << k
        up.append(row)
    return FinPoset(names, tuple(up))


def filters(L: DistLattice) -> tuple:
    """``(Filt(L), principal)``: filters under reverse inclusion and ``a -> up(a)``.

    ``principal`` is checked to be an order-isomorphism; a failure raises.
    """
    masks = sorted(filter_masks(L), key=lambda m: (-m.bit_count(), m))
    F = _family_poset(L, masks, reverse=True)
    pos = {m: k for k, m in enumerate(masks)}
    principal = MonotoneMap(L.carrier, F, tuple(pos[L.carrier.up[a]] for a in range(L.n)))
    if not is_order_isomorphism(principal):
        raise HypothesisFailure("principal filters do not exhaust the filters", principal)
    return F, principal


def prime_filters(L: DistLattice) -> FinPoset:
    """Proper prime filters ordered by inclusion."""
    masks = sorted(filter_masks(L, prime=True), key=lambda m: (m.bit_count(), m))
    return _family_poset(L, masks, reverse=False)


def join_irreducibles(L: DistLattice) -> FinPoset:
    """Elements with a unique lower cover, with the induced order."""
    P = L.carrier
    return P.restrict(sum(1 << i for i in L.join_irreducible_indices))


def birkhoff_dual(L: DistLattice) -> FinPoset:
    """Join-irreducibles with the reversed order; ``j -> up(j)`` matches the prime filters."""
    return join_irreducibles(L).dual()


def irreducible_to_prime_filter(L: DistLattice) -> MonotoneMap:
    """``j -> up(j)`` from :func:`birkhoff_dual` to :func:`prime_filters`."""
    J = birkhoff_dual(L)
    PF = prime_filters(L)
    images = []
    for j in J.elements:
        name = frozenset(L.elements[i] for i in bits(L.carrier.up[L.carrier.index(j)]))
        images.append(PF.index(name))
    return MonotoneMap(J, PF, tuple(images))


# round trips ------------------------------------------------------------------------------


def nachbin_fin(P: FinPoset) -> tuple:
    """``(prime_filters(Up(P)), unit)`` with ``unit(p) = {U : p in U}``.

    The unit is checked to be an order-isomorphism.
    """
    L = upset_dl(P)
    PF = prime_filters(L)
    images = []
    for p in range(P.n):
        name = frozenset(L.elements[i] for i in range(L.n) if (L.mask(i) >> p) & 1)
        images.append(PF.index(name))
    unit = MonotoneMap(P, PF, tuple(images))
    if not is_order_isomorphism(unit):
        raise HypothesisFailure("Nachbin unit is not an isomorphism", P)
    return PF, unit


def poset_roundtrip(P: FinPoset) -> Report:
    """``P`` against ``prime_filters(upset_dl(P))``, with the explicit unit."""
    try:
        nachbin_fin(P)
    except HypothesisFailure:
        return Report("birkhoff-poset", "prime-filters-of-upsets", P, False)
    return Report("birkhoff-poset", "prime-filters-of-upsets", P, True)


def lattice_roundtrip(L: DistLattice) -> Report:
    """``L`` against ``upset_dl(birkhoff_dual(L))`` and prime filters against irreducibles."""
    J = birkhoff_dual(L)
    iso = find_isomorphism(L.carrier, upset_dl(J).carrier)
    pf = irreducible_to_prime_filter(L)
    ok = iso is not None and is_order_isomorphism(pf)
    details = {"irreducibles": J.n, "lattice_iso": iso is not None,
               "prime_filter_iso": is_order_isomorphism(pf)}
    return Report("birkhoff-lattice", "upsets-of-irreducibles", L.carrier, ok, details=details)


# ultrafilters and the comparison map -------------------------------------------------------


def powerset_lattice(S) -> DistLattice:
    D = discrete(list(S))
    return DistLattice.of_sets(D, range(1 << D.n))


def ultrafilters_fin(S) -> tuple:
    """``(ultrafilters, principal)``: ultrafilters of ``P(S)`` as sets of frozensets.

    Found by the general prime-filter search on the powerset lattice, then
    matched with the principal ones; ``principal`` maps each ``s`` to its
    ultrafilter and is checked to be a bijection.
    """
    S = list(S)
    if not S:
        return [], {}
    L = powerset_lattice(S)
    ufs = [frozenset(L.elements[i] for i in bits(m)) for m in filter_masks(L, prime=True)]
    principal = {s: frozenset(T for T in L.elements if s in T) for s in S}
    if set(principal.values()) != set(ufs) or len(set(ufs)) != len(ufs):
        raise HypothesisFailure("ultrafilters are not the principal ones", S)
    return ufs, principal


def two_tensor_one() -> FinPoset:
    """``2.1``: the tensor of the two-element chain with the terminal poset."""
    return tensor(chain(2), terminal())


def classifying_map(U: Subobject, D: Subobject, two: FinPoset | None = None) -> MonotoneMap:
    """The map ``X -> 2.1`` with ``f^-1(1) = U``, given the complement ``D`` of ``U``.

    Built from the relation ``{(x, 1) : x in U} + {(x, 0) : x in D}``.
    """
    two = two if two is not None else two_tensor_one()
    X = U.ambient
    pairs = frozenset([(x, 1) for x in bits(U.mask)] + [(x, 0) for x in bits(D.mask)])
    return relation_to_morphism(Relation(X, two, pairs))


def xi_fin(S) -> tuple:
    """``(xi, bijective)``: ``xi`` maps each point ``p: 1 -> S.1`` to an ultrafilter.

    ``xi(p) = {T : p in chi_T^-1(1)}`` where ``chi_T: S.1 -> 2.1`` classifies
    the image of ``T``. Each value is checked to be an ultrafilter of ``P(S)``.
    """
    S = list(S)
    X = tensor(discrete(S), terminal())
    two = two_tensor_one()
    one_sub = Subobject(two, 1 << 1)
    subsets = [frozenset(S[i] for i in bits(m)) for m in range(1 << len(S))]
    classifiers = {}
    for T in subsets:
        U = Subobject.of(X, [(s, ()) for s in T])
        D = U.complement()
        chi = classifying_map(U, D, two)
        if inverse_image(chi, one_sub) != U:
            raise HypothesisFailure("classifying map does not recover its subobject", sorted(T))
        classifiers[T] = chi
    xi = {}
    for p in points(X):
        x = p.images[0]
        F = frozenset(T for T, chi in classifiers.items() if chi.images[x] == 1)
        xi[X.elements[x]] = F
    ufs, _ = ultrafilters_fin(S)
    bijective = len(set(xi.values())) == len(xi) and set(xi.values()) == set(ufs)
    return xi, bijective
