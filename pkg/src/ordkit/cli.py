"""Command-line interface.

Reports are JSON lines ``{claim, ref, instance, verdict, witness?, details?}``.
Exit status: 0 on success, 1 when a checked property fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import checkers, config, sweeps
from .colimits import (
    coinserter,
    congruence_closure,
    disjoint_union,
    lax_pushout,
    quotient,
)
from .duality import lattice_roundtrip, poset_roundtrip, upset_dl, xi_fin
from .errors import HypothesisFailure, OrdkitError
from .finposet import (
    antichain,
    chain,
    discrete,
    map_from_json,
    map_to_json,
    poset_from_json,
    poset_to_json,
    terminal,
    to_dot,
    vee,
)
from .lattice import DistLattice, lattice_from_json
from .limits import FiniteDiagram, Weight, conical_weight, verify_weighted_limit, weighted_limit
from .logic import Signature, entails, interpret, parse, parse_context
from .logic.syntax import Sequent
from .presheaf import check_nerve_fully_faithful, full_subcategory_of_finpos
from .report import Report
from .subobjects import Relation


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _emit(args, obj) -> None:
    if isinstance(obj, Report):
        if args.format == "text":
            verdict = "PASS" if obj.verdict else "FAIL"
            print(f"{verdict} {obj.claim} {json.dumps(obj.to_json().get('details', {}))}")
        else:
            print(obj.to_line())
    else:
        print(json.dumps(obj, sort_keys=True))


# eval -------------------------------------------------------------------------------------


def cmd_eval(args) -> int:
    sig = Signature.from_json(_load(args.sig))
    context = parse_context(args.context) if args.context else ()
    source = args.sequent or args.formula or args.term
    if source is None:
        raise UsageError("eval needs --sequent, --formula or --term")
    j = parse(source, sig, context)
    if isinstance(j, Sequent):
        holds, witness = entails(j, sig)
        _emit(args, Report("entailment", "entailment", str(j), holds, witness,
                           {"context": [list(c) for c in j.context]}))
        return 0 if holds else 1
    value = interpret(j, sig)
    if hasattr(value, "members"):
        _emit(args, {"judgement": str(j), "members": [list(m) for m in value.members()]})
    else:
        _emit(args, {"judgement": str(j), "map": map_to_json(value)})
    return 0


# limits and colimits ------------------------------------------------------------------------


def _diagram(data) -> tuple:
    nodes = {k: poset_from_json(v) for k, v in data["nodes"].items()}
    edges = tuple(
        (e["src"], e["dst"], map_from_json(e, nodes[e["src"]], nodes[e["dst"]]))
        for e in data.get("edges", [])
    )
    D = FiniteDiagram(nodes, edges)
    if "weight" not in data:
        return D, conical_weight(D)
    w = data["weight"]
    wnodes = {k: poset_from_json(v) for k, v in w["nodes"].items()}
    wedges = tuple(
        map_from_json(we, wnodes[e["src"]], wnodes[e["dst"]])
        for we, e in zip(w.get("edges", []), data.get("edges", []))
    )
    return D, Weight(wnodes, wedges)


def cmd_limit(args) -> int:
    D, W = _diagram(_load(args.diagram))
    lim = weighted_limit(D, W)
    out = {"limit": poset_to_json(lim.poset),
           "coordinates": [[str(i), w] for i, w in lim.coords]}
    if args.verify is not None:
        apexes = list(sweeps.posets_upto(args.verify))
        rep = verify_weighted_limit(D, W, lim, apexes)
        out["universal"] = rep.verdict
        _emit(args, out)
        return 0 if rep.verdict else 1
    _emit(args, out)
    return 0


def cmd_colimit(args) -> int:
    if args.kind == "coproduct":
        if not (args.a and args.b):
            raise UsageError("coproduct needs --a and --b")
        S, ia, ib = disjoint_union(poset_from_json(_load(args.a)), poset_from_json(_load(args.b)))
        _emit(args, {"coproduct": poset_to_json(S)})
        return 0
    if not (args.f and args.g):
        raise UsageError(f"{args.kind} needs --f and --g")
    f, g = map_from_json(_load(args.f)), map_from_json(_load(args.g))
    if args.kind == "coinserter":
        q = coinserter(f, g)
        _emit(args, {"coinserter": poset_to_json(q.poset), "map": map_to_json(q.map)})
        return 0
    lp = lax_pushout(f, g)
    _emit(args, {"lax_pushout": poset_to_json(lp.poset), "conditions": lp.conditions})
    return 0


def cmd_quotient(args) -> int:
    X = poset_from_json(_load(args.poset))
    R = Relation.from_json(_load(args.relation), src=X, dst=X)
    C = congruence_closure(X, R)
    q = quotient(X, C)
    _emit(args, {"quotient": poset_to_json(q.poset), "map": map_to_json(q.map),
                 "congruence_pairs": len(C.pairs)})
    return 0


# sweeps -------------------------------------------------------------------------------------------


def _instances(args):
    if args.exhaustive:
        return list(sweeps.posets_upto(args.size))
    rng = random.Random(args.seed)
    return list(sweeps.random_posets(rng, args.size, args.trials))


def _summarize(args, claim: str, reports: list) -> int:
    failures = [r for r in reports if not r.verdict]
    for r in failures:
        _emit(args, r)
    summary = Report(claim, "sweep", {"size": args.size, "count": len(reports),
                                      "exhaustive": args.exhaustive, "seed": args.seed},
                     not failures, details={"passed": len(reports) - len(failures),
                                            "failed": len(failures)})
    _emit(args, summary)
    return 0 if not failures else 1


def cmd_check(args) -> int:
    what = args.property
    rng = random.Random(args.seed)
    if what in ("filtral", "compact", "separated", "cu-rep", "well-pointed", "projective"):
        fn = {
            "filtral": checkers.check_filtral_implies,
            "compact": lambda X: checkers.is_compact_fin(
                X, exhaustive=args.exhaustive and _small_cu(X)),
            "separated": checkers.is_separated_fin,
            "cu-rep": checkers.check_cu_representable,
            "well-pointed": checkers.check_well_pointed,
            "projective": checkers.projectivity_report,
        }[what]
        if what == "filtral":
            reports = []
            for X in _instances(args):
                r = checkers.is_order_filtral(X)
                reports.append(r if not r.verdict else fn(X))
        else:
            reports = [fn(X) for X in _instances(args)]
    elif what == "lemmas":
        reports = [checkers.check_preservation_lemmas(sweeps.map_instance(rng, args.size))
                   for _ in range(args.trials)]
    elif what in ("beck-chevalley", "frobenius"):
        reports = [sweeps.check_pullback_laws(*sweeps.pullback_instance(rng, args.size))
                   for _ in range(args.trials)]
    elif what == "orthogonality":
        reports = [sweeps.check_orthogonality(*sweeps.orthogonality_instance(rng, args.size))
                   for _ in range(args.trials)]
    elif what == "substitution":
        reports = [sweeps.check_substitution(*sweeps.substitution_instance(rng, min(args.size, 3)))
                   for _ in range(args.trials)]
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown property {what}")
    return _summarize(args, what, reports)


def _small_cu(X) -> bool:
    from .generate import upset_masks

    return sum(1 for _ in upset_masks(X)) <= checkers.EXHAUSTIVE_CU_LIMIT


# duality ---------------------------------------------------------------------------------------


def cmd_duality(args) -> int:
    if args.action == "xi":
        reports = []
        for n in range(args.size + 1):
            xi, ok = xi_fin(range(n))
            reports.append(Report("xi-bijective", "xi-bijection", n, ok,
                                  details={"points": len(xi)}))
        return _summarize(args, "xi-bijective", reports)
    if args.poset:
        P = poset_from_json(_load(args.poset))
        rep = poset_roundtrip(P)
        lat = lattice_roundtrip(upset_dl(P))
        _emit(args, rep)
        _emit(args, lat)
        return 0 if rep.verdict and lat.verdict else 1
    if args.lattice:
        L = lattice_from_json(_load(args.lattice))
        rep = lattice_roundtrip(L)
        _emit(args, rep)
        return 0 if rep.verdict else 1
    reports = []
    for P in sweeps.posets_upto(args.size):
        reports.append(poset_roundtrip(P))
        try:
            L = DistLattice.from_poset(P)
        except OrdkitError:
            continue
        reports.append(lattice_roundtrip(L))
    return _summarize(args, "duality-roundtrip", reports)


# nerve ------------------------------------------------------------------------------------------


DEMO_OBJECTS = {
    "1": terminal,
    "A2": lambda: antichain(2),
    "C2": lambda: chain(2),
    "V": vee,
    "D3": lambda: discrete(range(3)),
}


def cmd_nerve(args) -> int:
    if args.objects:
        posets = [poset_from_json(_load(p)) for p in args.objects]
        names = [f"X{k}" for k in range(len(posets))]
    else:
        names = list(DEMO_OBJECTS)
        posets = [DEMO_OBJECTS[k]() for k in names]
    if args.cover_by:
        try:
            cover = [int(i) for i in args.cover_by.split(",")]
        except ValueError:
            raise UsageError("--cover-by takes comma-separated object indices") from None
        if any(not 0 <= i < len(posets) for i in cover):
            raise UsageError("--cover-by index out of range")
    else:
        cover = [k for k, P in enumerate(posets) if P.is_discrete()]
    A = full_subcategory_of_finpos(posets, names)
    try:
        rep = check_nerve_fully_faithful(A, cover)
    except HypothesisFailure as exc:
        rep = Report("nerve-fully-faithful", "presheaf-embedding", names, False, exc.witness,
                     {"hypothesis": str(exc)})
    _emit(args, rep)
    return 0 if rep.verdict else 1


def cmd_export_dot(args) -> int:
    data = _load(args.poset)
    if "meet" in data:
        P = lattice_from_json(data).carrier
    else:
        P = poset_from_json(data)
    if args.format == "json":
        print(json.dumps(poset_to_json(P), sort_keys=True))
    else:
        sys.stdout.write(to_dot(P))
    return 0


# wiring -------------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--size", type=int, default=4, help="largest instance size")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--exhaustive", action="store_true",
                        help="enumerate all posets up to isomorphism instead of sampling")
    common.add_argument("--cap", type=int, default=None, help="override the enumeration size cap")
    common.add_argument("--format", choices=["json", "text", "dot"], default="json")

    p = argparse.ArgumentParser(prog="ordkit", description="Finite poset-enriched category toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate a sequent, formula or term")
    e.add_argument("--sig", required=True, help="signature JSON file")
    g = e.add_mutually_exclusive_group()
    g.add_argument("--sequent")
    g.add_argument("--formula")
    g.add_argument("--term")
    e.add_argument("--context", help='ordered context, e.g. "x:C2, y:C2"')
    e.set_defaults(func=cmd_eval)

    lm = sub.add_parser("limit", parents=[common], help="weighted limit of a diagram")
    lm.add_argument("--diagram", required=True)
    lm.add_argument("--verify", type=int, metavar="K",
                    help="check the universal property against all apexes of size <= K")
    lm.set_defaults(func=cmd_limit)

    c = sub.add_parser("colimit", parents=[common], help="coinserter, coproduct or lax pushout")
    c.add_argument("--kind", choices=["coinserter", "coproduct", "lax-pushout"], required=True)
    c.add_argument("--f")
    c.add_argument("--g")
    c.add_argument("--a")
    c.add_argument("--b")
    c.set_defaults(func=cmd_colimit)

    q = sub.add_parser("quotient", parents=[common], help="quotient by a generated congruence")
    q.add_argument("--poset", required=True)
    q.add_argument("--relation", required=True)
    q.set_defaults(func=cmd_quotient)

    ck = sub.add_parser("check", parents=[common], help="property sweeps")
    ck.add_argument("property", choices=[
        "filtral", "compact", "separated", "cu-rep", "lemmas", "beck-chevalley", "frobenius",
        "orthogonality", "substitution", "well-pointed", "projective",
    ])
    ck.set_defaults(func=cmd_check)

    d = sub.add_parser("duality", parents=[common], help="Birkhoff round trips and xi")
    d.add_argument("action", choices=["roundtrip", "xi"])
    d.add_argument("--poset")
    d.add_argument("--lattice")
    d.set_defaults(func=cmd_duality)

    n = sub.add_parser("nerve-demo", parents=[common], help="nerve full-faithfulness demo")
    n.add_argument("--objects", nargs="*")
    n.add_argument("--cover-by", help="comma-separated indices of the covering objects")
    n.set_defaults(func=cmd_nerve)

    x = sub.add_parser("export-dot", parents=[common], help="Hasse diagram of a poset or lattice")
    x.add_argument("--poset", required=True)
    x.set_defaults(func=cmd_export_dot, format="dot")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with config.caps(size=args.cap):
            return args.func(args)
    except UsageError as exc:
        print(f"ordkit: error: {exc}", file=sys.stderr)
        return 2
    except OrdkitError as exc:
        print(f"ordkit: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (KeyError, ValueError, TypeError) as exc:
        print(f"ordkit: error: malformed input: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
