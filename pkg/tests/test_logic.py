import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import poset_maps, posets
from ordkit.colimits import disjoint_union
from ordkit.finposet import (
    MonotoneMap,
    chain,
    classify,
    identity,
    product,
    projection,
    tensor,
    terminal,
    vee,
)
from ordkit.limits import epi_diagonal
from ordkit.logic import (
    And,
    App,
    Bot,
    Eq,
    Exists,
    Le,
    LogicSyntaxError,
    Or,
    Pred,
    Sequent,
    Signature,
    SortMismatch,
    Top,
    UnknownSymbol,
    Var,
    entails,
    free_vars,
    interpret,
    interpret_formula,
    interpret_term,
    is_surjective_by_logic,
    parse,
    parse_context,
    parse_formula,
    parse_sequent,
    parse_term,
    substitute,
)
from ordkit.logic.sampling import random_context, random_formula, random_signature
from ordkit.sweeps import check_substitution, substitution_instance

C2 = chain(2)


def c2_sig():
    return Signature().add_sort("C2", C2)


def two_one_sig():
    T = tensor(C2, terminal())
    return (Signature().add_sort("T", T)
            .add_constant("0", "T", (0, ())).add_constant("1", "T", (1, ())))


# a pointwise evaluator used as the reference semantics ------------------------------


def _term(t, env, ctx_sorts, sig):
    if isinstance(t, Var):
        return ctx_sorts[t.name], env[t.name]
    dom, cod, fmap = sig.operations[t.op]
    args = tuple(_term(a, env, ctx_sorts, sig)[1] for a in t.args)
    return cod, fmap.cod.elements[fmap.images[fmap.dom.index(args)]]


def holds(phi, env, ctx_sorts, sig):
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Bot):
        return False
    if isinstance(phi, And):
        return holds(phi.left, env, ctx_sorts, sig) and holds(phi.right, env, ctx_sorts, sig)
    if isinstance(phi, Or):
        return holds(phi.left, env, ctx_sorts, sig) or holds(phi.right, env, ctx_sorts, sig)
    if isinstance(phi, (Eq, Le)):
        s, a = _term(phi.lhs, env, ctx_sorts, sig)
        _, b = _term(phi.rhs, env, ctx_sorts, sig)
        return a == b if isinstance(phi, Eq) else sig.sort(s).le(a, b)
    if isinstance(phi, Pred):
        _, sub = sig.predicates[phi.name]
        return tuple(_term(a, env, ctx_sorts, sig)[1] for a in phi.args) in sub
    if isinstance(phi, Exists):
        inner = dict(ctx_sorts, **{phi.var: phi.sort})
        return any(holds(phi.body, dict(env, **{phi.var: e}), inner, sig)
                   for e in sig.sort(phi.sort).elements)
    raise TypeError(phi)


def extension(phi, ctx, sig):
    names = [x for x, _ in ctx]
    sorts = dict(ctx)
    return [
        vals for vals in itertools.product(*(sig.sort(s).elements for _, s in ctx))
        if holds(phi, dict(zip(names, vals)), sorts, sig)
    ]


# parsing ------------------------------------------------------------------------------


def test_parse_antisymmetry_sequent():
    s = parse("x <= y /\\ y <= x |- x = y", c2_sig())
    assert isinstance(s, Sequent)
    assert s.context == (("x", "C2"), ("y", "C2"))
    assert s.lhs == And(Le(Var("x"), Var("y")), Le(Var("y"), Var("x")))
    assert s.rhs == Eq(Var("x"), Var("y"))


def test_parse_exists_with_predicate():
    sig = c2_sig().add_sort("U", vee()).add_predicate("le", ("U", "C2"), [("x", 1)])
    j = parse("exists u:U. le(u,x)", sig)
    assert isinstance(j.node, Exists) and j.node.var == "u"
    assert free_vars(j.node) == ["x"]


def test_undeclared_operation():
    with pytest.raises(UnknownSymbol):
        parse("f(x) = y \\/ top", c2_sig())


def test_syntax_error_position():
    with pytest.raises(LogicSyntaxError) as exc:
        parse("x <= y /\\\n   <= z", c2_sig())
    assert (exc.value.line, exc.value.col) == (2, 4)


def test_unbalanced_parenthesis():
    with pytest.raises(LogicSyntaxError):
        parse_formula("(x <= y", c2_sig())


def test_unknown_sort_in_binder():
    with pytest.raises(UnknownSymbol):
        parse_formula("exists u:Nope. u = u", c2_sig())


def test_sort_mismatch():
    sig = c2_sig().add_sort("V", vee())
    with pytest.raises(SortMismatch):
        parse_formula("x <= y", sig, parse_context("x:C2, y:V"))


def test_unicode_connectives():
    a = parse_sequent("x ≤ y ∧ y ≤ x ⊢ x = y", c2_sig())
    b = parse_sequent("x <= y /\\ y <= x |- x = y", c2_sig())
    assert a == b


def test_empty_left_side_is_top():
    s = parse_sequent("|- x = x", c2_sig())
    assert s.lhs == Top()


def test_constants_are_not_variables():
    j = parse_formula("x = 0", two_one_sig())
    assert j.node.rhs == App("0")
    assert j.context == (("x", "T"),)


def test_parse_term():
    sig = c2_sig().add_operation("f", ("C2",), "C2", {(0,): 1, (1,): 1})
    j = parse_term("f(f(x))", sig)
    assert j.node == App("f", (App("f", (Var("x"),)),))


# term interpretation ----------------------------------------------------------------------


def test_variable_is_identity():
    sig = c2_sig()
    assert interpret_term(Var("x"), (("x", "C2"),), sig).images == (0, 1)


def test_variable_is_projection():
    sig = c2_sig()
    ctx = (("x", "C2"), ("y", "C2"))
    m = interpret_term(Var("x"), ctx, sig)
    assert m == projection((C2, C2), 0)


def test_application_is_composite():
    V = vee()
    g = MonotoneMap.from_dict(C2, V, {0: "x", 1: "z"})
    f = MonotoneMap.from_dict(V, C2, {"x": 0, "y": 0, "z": 1})
    sig = (Signature().add_sort("C2", C2).add_sort("V", V)
           .add_operation("g", ("C2",), "V", g).add_operation("f", ("V",), "C2", f))
    j = parse_term("f(g(x))", sig)
    assert j.context == (("x", "C2"),)
    m = interpret_term(j.node, j.context, sig)
    assert m.images == g.then(f).images


# formula interpretation --------------------------------------------------------------------


def test_order_atom_is_epi_diagonal():
    sig = c2_sig()
    sub = interpret(parse_formula("x <= y", sig), sig)
    assert sub.members() == [(0, 0), (0, 1), (1, 1)]
    assert sub.mask == epi_diagonal(C2).mask


def test_top_and_bot():
    sig = c2_sig()
    ctx = parse_context("x:C2, y:C2")
    assert len(interpret_formula(Top(), ctx, sig)) == 4
    assert len(interpret_formula(Bot(), ctx, sig)) == 0


def test_exists_upper_bound_is_full():
    sig = c2_sig()
    j = parse_formula("exists y:C2. x <= y", sig, parse_context("x:C2"))
    assert interpret(j, sig).members() == [(0,), (1,)]


@given(st.randoms(use_true_random=False))
def test_interpretation_matches_pointwise_semantics(rng):
    sig = random_signature(rng, n_sorts=2, max_size=3)
    ctx = random_context(rng, sig, ["x", "y"])
    phi = random_formula(rng, sig, ctx)
    assert interpret_formula(phi, ctx, sig).members() == extension(phi, ctx, sig)


# entailment -----------------------------------------------------------------------------


def test_antisymmetry_entailed():
    for P in (C2, vee(), chain(3)):
        sig = Signature().add_sort("S", P)
        assert entails(parse_sequent("x <= y /\\ y <= x |- x = y", sig), sig) == (True, None)


def test_failed_entailment_witness():
    sig = c2_sig()
    assert entails(parse_sequent("top |- x <= y", sig), sig) == (False, (1, 0))


def test_two_constants_cover_two_dot_one():
    sig = two_one_sig()
    assert entails(parse_sequent("|- x = 0 \\/ x = 1", sig), sig)[0]


@given(poset_maps(max_n=4))
def test_surjectivity_by_logic(f):
    assert is_surjective_by_logic(f) == classify(f).surjection


@given(posets(max_n=3), posets(max_n=3))
def test_disjoint_union_axioms_hold_internally(A, B):
    S, ia, ib = disjoint_union(A, B)
    sig = (Signature().add_sort("A", A).add_sort("B", B).add_sort("S", S)
           .add_operation("ia", ("A",), "S", ia).add_operation("ib", ("B",), "S", ib))
    ctx = parse_context("a:A, b:B, s:S")
    for text in ("|- (exists u:A. ia(u) = s) \\/ (exists v:B. ib(v) = s)",
                 "ia(a) <= ib(b) |- bot",
                 "ib(b) <= ia(a) |- bot"):
        assert entails(parse_sequent(text, sig, ctx), sig)[0]


# substitution -----------------------------------------------------------------------------


def test_substitute_reflexivity():
    sig = c2_sig()
    phi = parse_formula("x <= y", sig).node
    psi = substitute(phi, {"y": Var("x")})
    assert len(interpret_formula(psi, (("x", "C2"),), sig)) == 2


def test_substitute_constant_bottom():
    sig = c2_sig().add_constant("zero", "C2", 0)
    phi = parse_formula("x <= y", sig).node
    psi = substitute(phi, {"x": App("zero")})
    assert interpret_formula(psi, (("y", "C2"),), sig).members() == [(0,), (1,)]


def test_substitution_avoids_capture():
    sig = c2_sig()
    phi = parse_formula("exists y:C2. y <= x", sig, parse_context("x:C2")).node
    psi = substitute(phi, {"x": Var("y")})
    assert isinstance(psi, Exists) and psi.var != "y"
    assert free_vars(psi) == ["y"]
    # still "something is below y", true everywhere
    assert len(interpret_formula(psi, (("y", "C2"),), sig)) == 2


def test_substitution_respects_shadowing():
    phi = Exists("x", "C2", Le(Var("x"), Var("y")))
    assert substitute(phi, {"x": Var("z")}) == phi


def test_substitution_sort_mismatch():
    from ordkit.logic import substitution_pullback

    sig = c2_sig().add_sort("V", vee())
    phi = parse_formula("x <= x", sig, parse_context("x:C2")).node
    with pytest.raises(SortMismatch):
        substitution_pullback(phi, (("x", "C2"),), {"x": Var("v")}, (("v", "V"),), sig)


@given(st.randoms(use_true_random=False))
def test_substitution_is_pullback(rng):
    assert check_substitution(*substitution_instance(rng, max_size=3)).verdict


# small regressions --------------------------------------------------------------------------


def test_context_product_order():
    sig = Signature().add_sort("A", C2).add_sort("B", vee())
    j = parse_formula("x = x /\\ y = y", sig, parse_context("y:B, x:A"))
    assert interpret(j, sig).ambient == product(vee(), C2)


def test_interpret_identity_operation():
    sig = c2_sig().add_operation("id", ("C2",), "C2", identity(C2))
    sig_entails = entails(parse_sequent("|- id(x) = x", sig), sig)
    assert sig_entails == (True, None)
