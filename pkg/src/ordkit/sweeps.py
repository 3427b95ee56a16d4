"""Instance generators and per-instance law checks used by sweeps.

Each ``check_*`` returns a :class:`~ordkit.report.Report`; each
``*_instance`` draws one random instance from a seeded ``random.Random``.
"""

from __future__ import annotations

import random

from .colimits import quotient, verify_represents
from .finposet import (
    FinPoset,
    MonotoneMap,
    bits,
    hom_poset,
    verify_tensor,
)
from .generate import (
    labeled_posets,
    posets_up_to_iso,
    random_embedding,
    random_monotone_map,
    random_poset,
    random_surjection,
)
from .limits import lax_kernel
from .logic.sampling import random_context, random_formula, random_signature, random_term
from .logic.semantics import interpret_formula, substitution_pullback
from .logic.syntax import substitute
from .report import Report
from .subobjects import (
    all_diagonal_fillers,
    canonical_pullback,
    check_beck_chevalley,
    check_frobenius,
    diagonal_filler,
)


def posets_upto(max_n: int, min_n: int = 0):
    """One poset per isomorphism class, sizes ``min_n..max_n``."""
    for n in range(min_n, max_n + 1):
        yield from posets_up_to_iso(n)


def labeled_posets_upto(max_n: int):
    for n in range(max_n + 1):
        yield from labeled_posets(n)


def random_posets(rng: random.Random, max_n: int, trials: int, min_n: int = 0):
    for _ in range(trials):
        yield random_poset(rng.randint(min_n, max_n), rng)


# quotients -----------------------------------------------------------------------------


def check_quotient_law(X: FinPoset, C, apexes) -> Report:
    """The quotient map's lax kernel is ``C`` and it represents ``C``-inverting maps."""
    q = quotient(X, C)
    kernel = lax_kernel(q.map)
    if kernel.pairs != C.pairs.pairs:
        return Report("quotient-law", "quotient-represents-congruence", (X, C.pairs), False,
                      details={"reason": "lax kernel differs from the congruence"})
    rep = verify_represents(q.map, C.pairs, apexes)
    return Report("quotient-law", "quotient-represents-congruence", (X, C.pairs), rep.verdict,
                  rep.witness, rep.details)


# orthogonality -----------------------------------------------------------------------------


def orthogonality_instance(rng: random.Random, max_size: int = 5) -> tuple:
    """``(f, i, u, v)``: surjection ``f: A -> B``, embedding ``i: X -> Y``, ``f;v = u;i``.

    ``v`` is random and ``X`` is a random sub-poset of ``Y`` containing the
    image of ``v``, so the square commutes.
    """
    B = random_poset(rng.randint(1, max_size), rng)
    f = random_surjection(B, rng.randint(B.n, max_size), rng)
    Y = random_poset(rng.randint(1, max_size), rng)
    v = random_monotone_map(B, Y, rng)
    mask = v.image_mask() | rng.getrandbits(Y.n)
    keep = list(bits(mask))
    X = Y.restrict(mask).relabel([f"s{k}" for k in range(len(keep))])
    i = MonotoneMap(X, Y, tuple(keep))
    pos = {y: k for k, y in enumerate(keep)}
    u = MonotoneMap(f.dom, X, tuple(pos[v.images[b]] for b in f.images))
    return f, i, u, v


def check_orthogonality(f: MonotoneMap, i: MonotoneMap, u: MonotoneMap, v: MonotoneMap) -> Report:
    """Exactly one diagonal, and diagonals grow with the square."""
    fillers = all_diagonal_fillers(f, i, u, v)
    inst = {"f": f, "i": i}
    if len(fillers) != 1:
        return Report("orthogonality", "surjection-embedding-orthogonal", inst, False,
                      details={"fillers": len(fillers)})
    w = diagonal_filler(f, i, u, v)
    if w != fillers[0]:
        return Report("orthogonality", "surjection-embedding-orthogonal", inst, False,
                      details={"reason": "constructed diagonal differs"})
    # every larger commuting square on the same f, i has a larger diagonal
    X, Y = i.dom, i.cod
    pos = {y: k for k, y in enumerate(i.images)}
    for v2 in hom_poset(f.cod, Y).maps:
        if not v.pointwise_le(v2) or any(y not in pos for y in v2.images):
            continue
        u2 = MonotoneMap(f.dom, X, tuple(pos[v2.images[b]] for b in f.images))
        if not w.pointwise_le(diagonal_filler(f, i, u2, v2)):
            return Report("orthogonality", "surjection-embedding-orthogonal", inst, False,
                          v2, {"reason": "diagonal not monotone in the square"})
    return Report("orthogonality", "surjection-embedding-orthogonal", inst, True)


# pullback laws ---------------------------------------------------------------------------------


def pullback_instance(rng: random.Random, max_size: int = 4) -> tuple:
    """``(u, v, f, g)``: a random cospan ``f, g`` and its canonical pullback."""
    Y = random_poset(rng.randint(1, max_size), rng)
    X = random_poset(rng.randint(1, max_size), rng)
    Z = random_poset(rng.randint(1, max_size), rng)
    f = random_monotone_map(X, Y, rng)
    g = random_monotone_map(Z, Y, rng)
    _, u, v = canonical_pullback(f, g)
    return u, v, f, g


def check_pullback_laws(u, v, f, g) -> Report:
    bc = check_beck_chevalley(u, v, f, g)
    fr_f = check_frobenius(f)
    fr_g = check_frobenius(g)
    ok = bc.verdict and fr_f.verdict and fr_g.verdict
    witness = next((r.details for r in (bc, fr_f, fr_g) if not r.verdict), None)
    return Report("beck-chevalley-frobenius", "beck-chevalley-frobenius", {"f": f, "g": g}, ok,
                  witness, {"beck_chevalley": bc.verdict,
                            "frobenius": fr_f.verdict and fr_g.verdict})


# substitution --------------------------------------------------------------------------------


def substitution_instance(rng: random.Random, max_size: int = 3) -> tuple:
    """``(sig, phi, ctx, bindings, new_ctx)`` with every binding well sorted.

    The new context reuses the name ``b0``, which random formulas also use
    as a binder, so capture avoidance is exercised.
    """
    while True:
        sig = random_signature(rng, n_sorts=2, max_size=max_size)
        ctx = random_context(rng, sig, ["x", "y"])
        phi = random_formula(rng, sig, ctx)
        new_ctx = random_context(rng, sig, ["b0", "z"])
        bindings = {x: random_term(rng, sig, new_ctx, s, 2) for x, s in ctx}
        if all(t is not None for t in bindings.values()):
            return sig, phi, ctx, bindings, new_ctx


def check_substitution(sig, phi, ctx, bindings, new_ctx) -> Report:
    """Evaluating ``phi[t/x]`` equals pulling ``[[phi]]`` back along ``<[[t]]>``."""
    lhs = interpret_formula(substitute(phi, bindings), new_ctx, sig)
    rhs = substitution_pullback(phi, ctx, bindings, new_ctx, sig)
    inst = {"formula": str(phi), "bindings": {k: str(t) for k, t in bindings.items()}}
    if lhs != rhs:
        return Report("substitution-pullback", "substitution-as-pullback", inst, False,
                      details={"substituted": lhs.members(), "pullback": rhs.members()})
    return Report("substitution-pullback", "substitution-as-pullback", inst, True)


# maps for closure lemmas --------------------------------------------------------------------------


def map_instance(rng: random.Random, max_size: int = 5) -> MonotoneMap:
    """A random map; a third are surjections and a third embeddings."""
    kind = rng.randrange(3)
    if kind == 0:
        Y = random_poset(rng.randint(0, max_size), rng)
        m = rng.randint(Y.n, max_size) if Y.n else 0
        return random_surjection(Y, m, rng)
    if kind == 1:
        Y = random_poset(rng.randint(1, max_size), rng)
        return random_embedding(Y, rng)
    X = random_poset(rng.randint(0, max_size), rng)
    Y = random_poset(rng.randint(1, max_size), rng)
    return random_monotone_map(X, Y, rng)


def check_tensor(P: FinPoset, X: FinPoset, Y: FinPoset) -> Report:
    ok = verify_tensor(P, X, Y)
    return Report("tensor-universal", "tensor", (P, X, Y), ok)
