"""Finite poset-enriched categories, poset-valued presheaves and the nerve.

Bases are full subcategories of finite posets. The nerve of ``X`` relative
to a family ``Ps`` of objects sends ``P`` to the hom-poset ``A(P, X)`` and
acts by precomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .colimits import quotient
from .errors import HypothesisFailure, TypeMismatch
from .finposet import (
    FinPoset,
    MonotoneMap,
    bits,
    classify,
    find_isomorphism,
    hom_poset,
    identity,
    is_order_isomorphism,
    pairing,
    product,
    projection,
)
from .checkers import is_projective_fin
from .limits import lax_kernel
from .report import Report


@dataclass(eq=False)
class FinEnrichedCategory:
    """Objects are finite posets; ``hom[(i, j)]`` is the hom-poset ``A(i, j)``."""

    objects: tuple
    names: tuple
    hom: dict
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for (i, j), H in self.hom.items():
            self._index[(i, j)] = {f: k for k, f in enumerate(H.maps)}

    def id(self, i: int) -> int:
        return self._index[(i, i)][identity(self.objects[i])]

    def compose(self, i: int, j: int, k: int, f: int, g: int) -> int:
        """Index of ``f;g`` for ``f`` in ``A(i, j)`` and ``g`` in ``A(j, k)``."""
        h = self.hom[(i, j)].maps[f].then(self.hom[(j, k)].maps[g])
        return self._index[(i, k)][h]

    def index_of(self, i: int, j: int, f: MonotoneMap) -> int:
        return self._index[(i, j)][f]

    def check_laws(self) -> Report:
        """Associativity, units and monotonicity of composition."""
        n = len(self.objects)
        for i in range(n):
            for j in range(n):
                Hij = self.hom[(i, j)]
                for f in range(len(Hij)):
                    if self.compose(i, i, j, self.id(i), f) != f or self.compose(i, j, j, f, self.id(j)) != f:
                        return Report("enriched-category", "enriched-category", self.names, False,
                                      ("unit", i, j, f))
                for k in range(n):
                    Hjk = self.hom[(j, k)]
                    Hik = self.hom[(i, k)].poset
                    for f in range(len(Hij)):
                        for f2 in bits(Hij.poset.up[f]):
                            for g in range(len(Hjk)):
                                for g2 in bits(Hjk.poset.up[g]):
                                    a = self.compose(i, j, k, f, g)
                                    b = self.compose(i, j, k, f2, g2)
                                    if not Hik.leq(a, b):
                                        return Report("enriched-category", "enriched-category",
                                                      self.names, False, ("monotone", i, j, k))
                    for l in range(n):
                        Hkl = self.hom[(k, l)]
                        for f in range(len(Hij)):
                            for g in range(len(Hjk)):
                                fg = self.compose(i, j, k, f, g)
                                for h in range(len(Hkl)):
                                    if self.compose(i, k, l, fg, h) != self.compose(
                                            i, j, l, f, self.compose(j, k, l, g, h)):
                                        return Report("enriched-category", "enriched-category",
                                                      self.names, False, ("assoc", i, j, k, l))
        return Report("enriched-category", "enriched-category", self.names, True)


def full_subcategory_of_finpos(posets, names=None) -> FinEnrichedCategory:
    posets = tuple(posets)
    names = tuple(names) if names is not None else tuple(f"X{k}" for k in range(len(posets)))
    hom = {(i, j): hom_poset(P, Q) for i, P in enumerate(posets) for j, Q in enumerate(posets)}
    return FinEnrichedCategory(posets, names, hom)


@dataclass(frozen=True)
class Presheaf:
    """A functor ``B^op -> FinPos`` on the full subcategory of ``A`` on ``base``.

    ``obj[P]`` is a poset and ``action(P, Q, u)`` is the monotone map
    ``F(Q) -> F(P)`` for ``u`` in ``A(P, Q)``.
    """

    category: FinEnrichedCategory
    base: tuple  # object indices of A
    obj: dict
    act: object  # (P, Q, u) -> MonotoneMap F(Q) -> F(P)

    def action(self, P: int, Q: int, u: int) -> MonotoneMap:
        return self.act(P, Q, u)

    def check_functorial(self) -> Report:
        A = self.category
        for P in self.base:
            if self.action(P, P, A.id(P)) != identity(self.obj[P]):
                return Report("presheaf-functorial", "presheaf", P, False, "identity")
            for Q in self.base:
                for R in self.base:
                    for u in range(len(A.hom[(P, Q)])):
                        for v in range(len(A.hom[(Q, R)])):
                            uv = A.compose(P, Q, R, u, v)
                            lhs = self.action(P, R, uv)
                            rhs = self.action(Q, R, v).then(self.action(P, Q, u))
                            if lhs != rhs:
                                return Report("presheaf-functorial", "presheaf", (P, Q, R), False)
                    # the action is monotone in the arrow
                    H = A.hom[(P, Q)].poset
                    for u in range(H.n):
                        for u2 in bits(H.up[u]):
                            if not self.action(P, Q, u).pointwise_le(self.action(P, Q, u2)):
                                return Report("presheaf-functorial", "presheaf", (P, Q), False,
                                              "action not monotone")
        return Report("presheaf-functorial", "presheaf", self.base, True)


def nerve(A: FinEnrichedCategory, Ps, X: int) -> Presheaf:
    """``N(X)(P) = A(P, X)``; an arrow ``u: P -> Q`` acts by ``h -> u;h``."""
    Ps = tuple(Ps)
    obj = {P: A.hom[(P, X)].poset for P in Ps}

    def act(P, Q, u):
        return MonotoneMap(obj[Q], obj[P],
                           tuple(A.compose(P, Q, X, u, h) for h in range(obj[Q].n)))

    return Presheaf(A, Ps, obj, act)


def nerve_of_map(A: FinEnrichedCategory, Ps, X: int, Y: int, f: int) -> dict:
    """Components ``h -> h;f`` of ``N(f): N(X) -> N(Y)`` as index tuples."""
    return {P: tuple(A.compose(P, X, Y, h, f) for h in range(len(A.hom[(P, X)]))) for P in Ps}


def natural_transformations(F: Presheaf, G: Presheaf) -> list:
    """All natural transformations ``F -> G`` with monotone components.

    Each is a dict ``P -> tuple of indices``. Variables ``(P, x)`` are
    assigned component by component (smallest objects first, each along a
    linear extension) and every monotonicity or naturality constraint is
    checked as soon as both of its ends are known.
    """
    if F.category is not G.category or F.base != G.base:
        raise TypeMismatch("presheaves over different bases")
    A = F.category
    Ps = sorted(F.base, key=lambda P: (A.objects[P].n, P))
    variables = [(P, x) for P in Ps for x in F.obj[P].linear_extension]
    pos = {v: k for k, v in enumerate(variables)}
    # constraints attached to the later variable
    mono = [[] for _ in variables]  # (other, other_is_lower)
    nat = [[] for _ in variables]  # (a, b, images of G(u)): val[a] == G(u)(val[b])
    for P in Ps:
        FP = F.obj[P]
        for x in range(FP.n):
            for y in bits(FP.up[x] & ~(1 << x)):
                a, b = pos[(P, x)], pos[(P, y)]
                if a < b:
                    mono[b].append((a, True))
                else:
                    mono[a].append((b, False))
    for P in Ps:
        for Q in Ps:
            for u in range(len(A.hom[(P, Q)])):
                Fu = F.action(P, Q, u)
                Gu = G.action(P, Q, u)
                for x in range(F.obj[Q].n):
                    a, b = pos[(P, Fu.images[x])], pos[(Q, x)]
                    nat[max(a, b)].append((a, b, Gu.images))
    val = [None] * len(variables)
    out = []

    def ok(k):
        v = val[k]
        P = variables[k][0]
        GP = G.obj[P]
        for j, lower in mono[k]:
            if lower:
                if not GP.leq(val[j], v):
                    return False
            elif not GP.leq(v, val[j]):
                return False
        for a, b, gimg in nat[k]:
            if val[a] != gimg[val[b]]:
                return False
        return True

    def rec(k):
        if k == len(variables):
            comps = {P: [None] * F.obj[P].n for P in Ps}
            for (P, x), v in zip(variables, val):
                comps[P][x] = v
            out.append({P: tuple(c) for P, c in comps.items()})
            return
        P = variables[k][0]
        for v in range(G.obj[P].n):
            val[k] = v
            if ok(k):
                rec(k + 1)
        val[k] = None

    rec(0)
    return out


def _nat_le(alpha, beta, G: Presheaf) -> bool:
    return all(G.obj[P].leq(a, b) for P in alpha for a, b in zip(alpha[P], beta[P]))


def check_cover_hypotheses(A: FinEnrichedCategory, Ps) -> None:
    """Members of ``Ps`` are projective and every object receives a surjection from one."""
    for P in Ps:
        if not is_projective_fin(A.objects[P]).projective:
            raise HypothesisFailure(f"{A.names[P]} is not projective", A.names[P])
    for X in range(len(A.objects)):
        if not any(classify(f).surjection for P in Ps for f in A.hom[(P, X)].maps):
            raise HypothesisFailure(f"{A.names[X]} is not covered by the chosen objects", A.names[X])


def check_nerve_fully_faithful(A: FinEnrichedCategory, Ps) -> Report:
    """``A(X, Y) -> Nat(N X, N Y)`` is an order-isomorphism for every pair."""
    Ps = tuple(Ps)
    check_cover_hypotheses(A, Ps)
    n = len(A.objects)
    nerves = [nerve(A, Ps, X) for X in range(n)]
    counts = {}
    for X in range(n):
        for Y in range(n):
            nats = natural_transformations(nerves[X], nerves[Y])
            H = A.hom[(X, Y)]
            induced = [nerve_of_map(A, Ps, X, Y, f) for f in range(len(H))]
            keyed = [tuple(a[P] for P in Ps) for a in induced]
            all_keys = {tuple(a[P] for P in Ps) for a in nats}
            counts[f"{A.names[X]}->{A.names[Y]}"] = [len(H), len(nats)]
            if len(set(keyed)) != len(keyed):
                return Report("nerve-fully-faithful", "presheaf-embedding", A.names, False,
                              (A.names[X], A.names[Y]), {"reason": "not faithful"})
            if set(keyed) != all_keys:
                return Report("nerve-fully-faithful", "presheaf-embedding", A.names, False,
                              (A.names[X], A.names[Y]), {"reason": "not full",
                                                         "maps": len(H), "natural": len(nats)})
            for f in range(len(H)):
                for g in range(len(H)):
                    if H.poset.leq(f, g) != _nat_le(induced[f], induced[g], nerves[Y]):
                        return Report("nerve-fully-faithful", "presheaf-embedding", A.names,
                                      False, (A.names[X], A.names[Y]),
                                      {"reason": "order not reflected", "pair": [f, g]})
    return Report("nerve-fully-faithful", "presheaf-embedding", A.names, True,
                  details={"hom_vs_natural": counts})


def check_nerve_preserves_surjections(A: FinEnrichedCategory, Ps) -> Report:
    """Surjections go to componentwise surjections when ``Ps`` is projective."""
    Ps = tuple(Ps)
    proj = all(is_projective_fin(A.objects[P]).projective for P in Ps)
    for X in range(len(A.objects)):
        for Y in range(len(A.objects)):
            for f, fm in enumerate(A.hom[(X, Y)].maps):
                if not classify(fm).surjection:
                    continue
                comps = nerve_of_map(A, Ps, X, Y, f)
                for P, c in comps.items():
                    if len(set(c)) != len(A.hom[(P, Y)]) and proj:
                        return Report("nerve-preserves-surjections", "presheaf-embedding",
                                      A.names, False, (A.names[X], A.names[Y], A.names[P]))
    return Report("nerve-preserves-surjections", "presheaf-embedding", A.names, True,
                  details={"projective": proj})


def check_nerve_preserves_product(A: FinEnrichedCategory, Ps, X: FinPoset, Y: FinPoset) -> Report:
    """``hom(P, X x Y) ~ hom(P, X) x hom(P, Y)`` via pairing, for each ``P`` in ``Ps``."""
    XY = product(X, Y)
    p1, p2 = projection((X, Y), 0, XY), projection((X, Y), 1, XY)
    for P in Ps:
        T = A.objects[P]
        H, HX, HY = hom_poset(T, XY), hom_poset(T, X), hom_poset(T, Y)
        ix = {f: k for k, f in enumerate(HX.maps)}
        iy = {f: k for k, f in enumerate(HY.maps)}
        prod = product(HX.poset, HY.poset)
        comparison = pairing([
            MonotoneMap(H.poset, HX.poset, tuple(ix[h.then(p1)] for h in H.maps)),
            MonotoneMap(H.poset, HY.poset, tuple(iy[h.then(p2)] for h in H.maps)),
        ], cod=prod)
        if not is_order_isomorphism(comparison):
            return Report("nerve-preserves-products", "presheaf-embedding", A.names, False,
                          A.names[P])
    return Report("nerve-preserves-products", "presheaf-embedding", A.names, True)


def check_essential_image(A: FinEnrichedCategory, Ps, X: int) -> Report:
    """``N(X)`` as a quotient of a representable by a congruence.

    Picks a surjection ``e: P -> X`` from ``Ps``; componentwise, ``N(X)(Q)``
    must be the quotient of ``A(Q, P)`` by the lax kernel of ``N(e)_Q``.
    Only this one cover is examined, so the check is partial.
    """
    for P in Ps:
        for e, em in enumerate(A.hom[(P, X)].maps):
            if classify(em).surjection:
                break
        else:
            continue
        comps = nerve_of_map(A, Ps, P, X, e)
        for Q in Ps:
            src, tgt = A.hom[(Q, P)].poset, A.hom[(Q, X)].poset
            ne = MonotoneMap(src, tgt, comps[Q])
            if not classify(ne).surjection:
                return Report("nerve-essential-image", "presheaf-embedding", A.names, False,
                              (A.names[X], A.names[Q]), {"reason": "component not surjective"})
            q = quotient(src, lax_kernel(ne))
            if find_isomorphism(q.poset, tgt) is None:
                return Report("nerve-essential-image", "presheaf-embedding", A.names, False,
                              (A.names[X], A.names[Q]))
        return Report("nerve-essential-image", "presheaf-embedding", A.names[X], True,
                      details={"cover": A.names[P]})
    raise HypothesisFailure(f"{A.names[X]} is not covered by the chosen objects", A.names[X])
