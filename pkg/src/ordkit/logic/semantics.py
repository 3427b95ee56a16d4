"""Interpretation of terms and formulas as monotone maps and subobjects.

A context ``x1:X1, ..., xn:Xn`` is interpreted as the product
``X1 x ... x Xn`` built left to right. Terms become maps out of that
product and formulas become subobjects of it.
"""

from __future__ import annotations

from ..finposet import FinPoset, MonotoneMap, pairing, product, projection
from ..subobjects import Subobject, direct_image, inverse_image
from .syntax import (
    And,
    App,
    Bot,
    Eq,
    Exists,
    Le,
    Or,
    Pred,
    Sequent,
    Signature,
    SortMismatch,
    Top,
    Var,
    free_vars,
    fresh_name,
    substitute,
    term_vars,
)


def context_product(ctx, sig: Signature) -> FinPoset:
    return product(*(sig.sort(s) for _, s in ctx))


def _check_context(ctx):
    names = [x for x, _ in ctx]
    if len(set(names)) != len(names):
        raise SortMismatch(f"context repeats a variable: {names}")


def interpret_term(t, ctx, sig: Signature, prod: FinPoset | None = None) -> MonotoneMap:
    """``[[t]]: [[ctx]] -> sort(t)``."""
    _check_context(ctx)
    sorts = [sig.sort(s) for _, s in ctx]
    prod = prod if prod is not None else product(*sorts)
    names = [x for x, _ in ctx]

    def go(t):
        if isinstance(t, Var):
            if t.name not in names:
                raise SortMismatch(f"variable {t.name} is not in the context")
            return projection(sorts, names.index(t.name), prod)
        dom, cod, op = sig.operations[t.op]
        if len(dom) != len(t.args):
            raise SortMismatch(f"{t.op} takes {len(dom)} arguments, got {len(t.args)}")
        args = [go(a) for a in t.args]
        for a, m, s in zip(t.args, args, dom):
            if m.cod != sig.sort(s):
                raise SortMismatch(f"argument {a} of {t.op} should have sort {s}")
        return pairing(args, dom=prod, cod=op.dom).then(op)

    return go(t)


def diagonal(X: FinPoset) -> Subobject:
    XX = product(X, X)
    return Subobject(XX, sum(1 << (i * X.n + i) for i in range(X.n)))


def _order(X: FinPoset) -> Subobject:
    XX = product(X, X)
    m = 0
    for i, j in X.pairs():
        m |= 1 << (i * X.n + j)
    return Subobject(XX, m)


def interpret_formula(phi, ctx, sig: Signature, prod: FinPoset | None = None) -> Subobject:
    """``[[phi]]`` as a subobject of ``[[ctx]]``, computed structurally."""
    _check_context(ctx)
    prod = prod if prod is not None else context_product(ctx, sig)

    if isinstance(phi, Top):
        return Subobject.top(prod)
    if isinstance(phi, Bot):
        return Subobject.bottom(prod)
    if isinstance(phi, And):
        return interpret_formula(phi.left, ctx, sig, prod) & interpret_formula(phi.right, ctx, sig, prod)
    if isinstance(phi, Or):
        return interpret_formula(phi.left, ctx, sig, prod) | interpret_formula(phi.right, ctx, sig, prod)
    if isinstance(phi, (Eq, Le)):
        a = interpret_term(phi.lhs, ctx, sig, prod)
        b = interpret_term(phi.rhs, ctx, sig, prod)
        if a.cod != b.cod:
            raise SortMismatch(f"{phi.lhs} and {phi.rhs} have different sorts")
        rel = diagonal(a.cod) if isinstance(phi, Eq) else _order(a.cod)
        return inverse_image(pairing([a, b], dom=prod, cod=rel.ambient), rel)
    if isinstance(phi, Pred):
        sorts, sub = sig.predicates[phi.name]
        if len(sorts) != len(phi.args):
            raise SortMismatch(f"{phi.name} takes {len(sorts)} arguments, got {len(phi.args)}")
        args = [interpret_term(a, ctx, sig, prod) for a in phi.args]
        for a, m, s in zip(phi.args, args, sorts):
            if m.cod != sig.sort(s):
                raise SortMismatch(f"argument {a} of {phi.name} should have sort {s}")
        return inverse_image(pairing(args, dom=prod, cod=sub.ambient), sub)
    if isinstance(phi, Exists):
        if phi.var in (x for x, _ in ctx):
            # rename a binder that shadows a context variable
            new = fresh_name(phi.var, [x for x, _ in ctx] + free_vars(phi.body))
            phi = Exists(new, phi.sort, substitute(phi.body, {phi.var: Var(new)}))
        ext = tuple(ctx) + ((phi.var, phi.sort),)
        sorts = [sig.sort(s) for _, s in ext]
        ext_prod = product(*sorts)
        body = interpret_formula(phi.body, ext, sig, ext_prod)
        pi = pairing([projection(sorts, k, ext_prod) for k in range(len(ctx))],
                     dom=ext_prod, cod=prod)
        return direct_image(pi, body)
    raise TypeError(f"not a formula: {phi!r}")


def interpret(j, sig: Signature):
    """Interpret a parsed judgement: a map for a term, a subobject for a formula."""
    if isinstance(j.node, (Var, App)):
        return interpret_term(j.node, j.context, sig)
    return interpret_formula(j.node, j.context, sig)


def entails(s: Sequent, sig: Signature) -> tuple:
    """``(holds, witness)``; the witness is the least context tuple in lhs but not rhs."""
    prod = context_product(s.context, sig)
    lhs = interpret_formula(s.lhs, s.context, sig, prod)
    rhs = interpret_formula(s.rhs, s.context, sig, prod)
    bad = lhs.mask & ~rhs.mask
    if not bad:
        return True, None
    return False, prod.elements[(bad & -bad).bit_length() - 1]


def substitution_pullback(phi, ctx, bindings: dict, new_ctx, sig: Signature) -> Subobject:
    """``[[phi]]`` pulled back along the tuple of ``[[t]]`` for the bindings.

    Variables of ``ctx`` without a binding are sent to themselves, so they
    must also occur in ``new_ctx``.
    """
    new_prod = context_product(new_ctx, sig)
    maps = []
    for x, s in ctx:
        t = bindings.get(x, Var(x))
        m = interpret_term(t, new_ctx, sig, new_prod)
        if m.cod != sig.sort(s):
            raise SortMismatch(f"{t} does not have sort {s}")
        maps.append(m)
    target = context_product(ctx, sig)
    return inverse_image(pairing(maps, dom=new_prod, cod=target),
                         interpret_formula(phi, ctx, sig, target))


def is_surjective_by_logic(f: MonotoneMap) -> bool:
    """Decide surjectivity of ``f`` through ``|- exists x. f(x) = y``."""
    sig = Signature()
    sig.add_sort("X", f.dom).add_sort("Y", f.cod).add_operation("f", ("X",), "Y", f)
    seq = Sequent(Top(), Exists("x", "X", Eq(App("f", (Var("x"),)), Var("y"))), (("y", "Y"),))
    return entails(seq, sig)[0]


def well_formed_context(node, ctx) -> bool:
    """Does the context mention every free variable of ``node``?"""
    names = {x for x, _ in ctx}
    used = term_vars(node) if isinstance(node, (Var, App)) else free_vars(node)
    return set(used) <= names

