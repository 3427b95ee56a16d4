"""Exhaustive and random generation of finite posets and maps."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .finposet import (
    FinPoset,
    MonotoneMap,
    bits,
    canonical_form,
    make_poset,
)


def upset_masks(P: FinPoset):
    """Yield every up-closed subset of ``P`` as a bitmask."""
    order = P.linear_extension[::-1]
    n = P.n
    up = P.up

    def rec(k, chosen):
        if k == n:
            yield chosen
            return
        x = order[k]
        yield from rec(k + 1, chosen)
        if up[x] & ~chosen == 1 << x:
            yield from rec(k + 1, chosen | (1 << x))

    yield from rec(0, 0)


def downset_masks(P: FinPoset):
    full = P.full_mask
    for m in upset_masks(P):
        yield full & ~m


@lru_cache(maxsize=None)
def posets_up_to_iso(n: int) -> tuple:
    """One representative per isomorphism class of ``n``-element posets.

    Elements are ``0..n-1``.  Every poset arises from a smaller one by
    adding a maximal element above some down-set.
    """
    if n == 0:
        return (FinPoset((), ()),)
    seen = {}
    for P in posets_up_to_iso(n - 1):
        for below in downset_masks(P):
            up = [m | ((1 << (n - 1)) if (below >> i) & 1 else 0) for i, m in enumerate(P.up)]
            up.append(1 << (n - 1))
            Q = FinPoset(tuple(range(n)), tuple(up))
            key = canonical_form(Q)
            if key not in seen:
                seen[key] = Q
    return tuple(seen[k] for k in sorted(seen))


def all_posets_up_to_iso(max_n: int):
    for n in range(max_n + 1):
        yield from posets_up_to_iso(n)


@lru_cache(maxsize=None)
def labeled_posets(n: int) -> tuple:
    """Every partial order on ``0..n-1``."""
    out = set()
    for P in posets_up_to_iso(n):
        for perm in itertools.permutations(range(n)):
            up = [0] * n
            for i in range(n):
                m = 0
                for j in bits(P.up[i]):
                    m |= 1 << perm[j]
                up[perm[i]] = m
            out.add(tuple(up))
    return tuple(FinPoset(tuple(range(n)), up) for up in sorted(out))


def random_poset(n: int, rng: random.Random, density: float = 0.35, names=None) -> FinPoset:
    names = list(names) if names is not None else list(range(n))
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [
        (names[perm[i]], names[perm[j]])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    ]
    return make_poset(names, pairs)


def random_monotone_map(X: FinPoset, Y: FinPoset, rng: random.Random) -> MonotoneMap:
    """A random monotone map (not uniformly distributed)."""
    if Y.n == 0 and X.n > 0:
        raise ValueError("no maps into the empty poset")
    order = X.linear_extension
    lower = X.lower_cover_masks
    img = [0] * X.n

    def rec(k):
        if k == X.n:
            return True
        x = order[k]
        allowed = Y.full_mask
        for z in bits(lower[x]):
            allowed &= Y.up[img[z]]
        cands = list(bits(allowed))
        rng.shuffle(cands)
        for y in cands:
            img[x] = y
            if rec(k + 1):
                return True
        return False

    rec(0)
    return MonotoneMap(X, Y, tuple(img))


def random_surjection(Y: FinPoset, m: int, rng: random.Random, density: float = 0.4) -> MonotoneMap:
    """A random monotone surjection from a fresh ``m``-element poset onto ``Y``."""
    if m < Y.n:
        raise ValueError("domain too small for a surjection")
    if Y.n == 0 and m > 0:
        raise ValueError("no maps into the empty poset")
    labels = list(range(Y.n)) + [rng.randrange(Y.n) for _ in range(m - Y.n)] if Y.n else []
    rng.shuffle(labels)
    pairs = []
    for a in range(m):
        for b in range(m):
            if a == b:
                continue
            ca, cb = labels[a], labels[b]
            if ca == cb and a > b:
                continue
            if Y.leq(ca, cb) and rng.random() < density:
                pairs.append((a, b))
    X = make_poset(range(m), pairs)
    return MonotoneMap(X, Y, tuple(labels))


def random_embedding(Y: FinPoset, rng: random.Random) -> MonotoneMap:
    """Inclusion of a random non-empty induced sub-poset, relabelled."""
    mask = 0
    while Y.n and mask == 0:
        mask = rng.getrandbits(Y.n)
    keep = list(bits(mask))
    X = Y.restrict(mask).relabel([f"s{i}" for i in range(len(keep))])
    return MonotoneMap(X, Y, tuple(keep))
