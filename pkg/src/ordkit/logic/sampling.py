"""Random signatures, terms and formulas for property sweeps."""

from __future__ import annotations

import random

from ..finposet import product
from ..generate import random_monotone_map, random_poset
from ..subobjects import Subobject
from .syntax import And, App, Bot, Eq, Exists, Le, Or, Pred, Signature, Top, Var


def random_signature(rng: random.Random, n_sorts: int = 2, max_size: int = 3) -> Signature:
    """A few small sorts with unary and binary operations, constants and predicates."""
    sig = Signature()
    names = [f"S{k}" for k in range(n_sorts)]
    for s in names:
        sig.add_sort(s, random_poset(rng.randint(1, max_size), rng))
    k = 0
    for s in names:
        for t in names:
            if rng.random() < 0.7:
                f = random_monotone_map(sig.sort(s), sig.sort(t), rng)
                sig.add_operation(f"f{k}", (s,), t, f)
                k += 1
    for _ in range(2):
        s, t, u = (rng.choice(names) for _ in range(3))
        f = random_monotone_map(sig.arg_product((s, t)), sig.sort(u), rng)
        sig.add_operation(f"f{k}", (s, t), u, f)
        k += 1
    for j, s in enumerate(names):
        P = sig.sort(s)
        sig.add_constant(f"c{j}", s, P.elements[rng.randrange(P.n)])
    for j in range(2):
        sorts = tuple(rng.choice(names) for _ in range(rng.randint(1, 2)))
        amb = product(*(sig.sort(s) for s in sorts))
        sig.add_predicate(f"p{j}", sorts, Subobject(amb, rng.getrandbits(amb.n)))
    return sig


def random_term(rng: random.Random, sig: Signature, ctx, sort: str, depth: int = 2):
    """A random term of the given sort; None if none can be built."""
    vars_here = [x for x, s in ctx if s == sort]
    ops = [(name, dom) for name, (dom, cod, _) in sig.operations.items() if cod == sort]
    if vars_here and (depth == 0 or rng.random() < 0.4):
        return Var(rng.choice(vars_here))
    rng.shuffle(ops)
    for name, dom in ops:
        if depth == 0 and dom:
            continue
        args = [random_term(rng, sig, ctx, s, depth - 1) for s in dom]
        if all(a is not None for a in args):
            return App(name, tuple(args))
    return Var(rng.choice(vars_here)) if vars_here else None


def random_formula(rng: random.Random, sig: Signature, ctx, depth: int = 3, fresh=None):
    """A random coherent formula whose free variables lie in ``ctx``."""
    fresh = fresh if fresh is not None else iter(f"b{k}" for k in range(10**6))
    sorts = list(sig.sorts)
    if depth == 0 or rng.random() < 0.3:
        kind = rng.choice(["eq", "le", "le", "pred", "top", "bot"])
        if kind == "top":
            return Top()
        if kind == "bot":
            return Bot()
        if kind == "pred" and sig.predicates:
            name = rng.choice(sorted(sig.predicates))
            args = [random_term(rng, sig, ctx, s, 1) for s in sig.predicates[name][0]]
            if all(a is not None for a in args):
                return Pred(name, tuple(args))
        s = rng.choice(sorts)
        a, b = random_term(rng, sig, ctx, s, 1), random_term(rng, sig, ctx, s, 1)
        if a is None or b is None:
            return Top()
        return Eq(a, b) if kind == "eq" else Le(a, b)
    kind = rng.choice(["and", "or", "exists"])
    if kind == "exists":
        var, s = next(fresh), rng.choice(sorts)
        return Exists(var, s, random_formula(rng, sig, tuple(ctx) + ((var, s),), depth - 1, fresh))
    left = random_formula(rng, sig, ctx, depth - 1, fresh)
    right = random_formula(rng, sig, ctx, depth - 1, fresh)
    return And(left, right) if kind == "and" else Or(left, right)


def random_context(rng: random.Random, sig: Signature, names) -> tuple:
    return tuple((x, rng.choice(sorted(sig.sorts))) for x in names)
