"""Command line front end: JSON documents in, JSON reports out."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import jsonschema

from . import arith, core, decomp, digraph, fincat, poset, topology
from .digraph import GraphError, ReflexiveDigraph
from .fincat import CategoryError, FinCategory
from .poset import Poset, PosetError

_STR = {"type": "string"}

SCHEMAS = {
    "poset": {
        "type": "object",
        "required": ["kind", "elements", "relations"],
        "properties": {
            "kind": {"const": "poset"},
            "elements": {"type": "array", "items": _STR},
            "relations": {"type": "array",
                          "items": {"type": "array", "items": _STR, "minItems": 2, "maxItems": 2}},
            "mode": {"enum": ["cover", "full"]},
        },
        "additionalProperties": False,
    },
    "digraph": {
        "type": "object",
        "required": ["kind", "vertices", "edges"],
        "properties": {
            "kind": {"const": "digraph"},
            "vertices": {"type": "array", "items": _STR},
            "edges": {"type": "array", "items": {
                "type": "object", "required": ["id", "src", "tgt"],
                "properties": {"id": _STR, "src": _STR, "tgt": _STR},
                "additionalProperties": False}},
        },
        "additionalProperties": False,
    },
    "category": {
        "type": "object",
        "required": ["kind", "objects", "morphisms", "identities", "compose"],
        "properties": {
            "kind": {"const": "category"},
            "objects": {"type": "array", "items": _STR},
            "morphisms": {"type": "array", "items": {
                "type": "object", "required": ["id", "src", "tgt"],
                "properties": {"id": _STR, "src": _STR, "tgt": _STR},
                "additionalProperties": False}},
            "identities": {"type": "object", "additionalProperties": _STR},
            "compose": {"type": "array",
                        "items": {"type": "array", "items": _STR, "minItems": 3, "maxItems": 3}},
        },
        "additionalProperties": False,
    },
}


class SchemaError(ValueError):
    def __init__(self, path, msg):
        self.path = path
        super().__init__(f"{path}: {msg}")


DOMAIN_ERRORS = (PosetError, GraphError, CategoryError, core.NotInvertibleError,
                 core.NotTriangularError, SchemaError)


@dataclass
class Document:
    kind: str
    data: dict
    obj: object


def _path(parts) -> str:
    return "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in parts)


def parse_document(raw) -> Document:
    if isinstance(raw, (bytes, bytearray)):
        raw = raw.decode("utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise SchemaError("$", f"invalid JSON ({e.msg} at line {e.lineno})") from None
    if not isinstance(data, dict):
        raise SchemaError("$", "document must be a JSON object")
    kind = data.get("kind")
    if kind not in SCHEMAS:
        raise SchemaError("$.kind", f"expected one of {sorted(SCHEMAS)}")
    err = jsonschema.exceptions.best_match(jsonschema.Draft202012Validator(SCHEMAS[kind]).iter_errors(data))
    if err is not None:
        raise SchemaError(_path(err.absolute_path), err.message)
    return Document(kind, data, build(kind, data))


def build(kind, data):
    if kind == "poset":
        return poset.build_poset(data["elements"], [tuple(r) for r in data["relations"]],
                                 data.get("mode", "cover"))
    if kind == "digraph":
        return ReflexiveDigraph(data["vertices"], [(e["id"], e["src"], e["tgt"]) for e in data["edges"]])
    return FinCategory(data["objects"], [(m["id"], m["src"], m["tgt"]) for m in data["morphisms"]],
                       data["identities"], [tuple(t) for t in data["compose"]])


def serialize(obj) -> dict:
    if isinstance(obj, Poset):
        return {"kind": "poset", "elements": [str(e) for e in obj.elements],
                "relations": [[str(a), str(b)] for a, b in obj.covers()], "mode": "cover"}
    if isinstance(obj, ReflexiveDigraph):
        return {"kind": "digraph", "vertices": [str(v) for v in obj.vertices],
                "edges": [{"id": str(e.id), "src": str(e.src), "tgt": str(e.tgt)} for e in obj.edges]}
    if isinstance(obj, FinCategory):
        return {"kind": "category", "objects": [str(x) for x in obj.objects],
                "morphisms": [{"id": str(m.id), "src": str(m.src), "tgt": str(m.tgt)} for m in obj.morphisms],
                "identities": {str(x): str(obj.identities[x]) for x in obj.objects},
                "compose": [[str(g), str(f), str(h)] for (g, f), h in obj.compose_table.items()]}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def q(x) -> str:
    return str(Fraction(x))


def _table(elem: core.IncidenceElement, cells):
    return [[str(a), str(b), q(elem[(a, b)])] for a, b in cells]


def _relabel(p: Poset, name) -> Poset:
    return poset.build_poset([name(e) for e in p.elements],
                             [(name(a), name(b)) for a, b in p.covers()], "cover")


def _name(e):
    if isinstance(e, frozenset):
        return "{" + ",".join(map(str, sorted(e))) + "}"
    if isinstance(e, tuple):
        return "|".join("".join(map(str, sorted(b))) for b in e)
    return str(e)


# commands

def cmd_poset(args, doc):
    p = doc.obj
    if args.pair:
        x, y = args.pair
        for v in (x, y):
            p.index(v)
    if args.mobius:
        mu = poset.mobius(p)
        if args.pair:
            return {"mu": q(mu[tuple(args.pair)])}
        return {"mobius": _table(mu, p.intervals())}
    if args.homology:
        if args.pair:
            x, y = args.pair
            cx = topology.open_interval_complex(p, x, y)
            return {"reduced_homology": {str(n): r for n, r in topology.homology_ranks(cx).items()}}
        return topology.homology_report(p)
    if args.gauss_bonnet:
        gb = topology.gauss_bonnet(p)
        return {"chi": gb.chi, "chi_reduced": gb.chi_reduced, "integral_e": q(gb.integral_e),
                "integral_e_reduced": q(gb.integral_e_reduced), "mobius_sum": q(gb.mobius_sum),
                "holds": gb.holds()}
    if args.antipode:
        if not args.pair:
            raise SystemExit("--antipode needs --pair")
        return {"antipode": q(poset.antipode_eval(p, *args.pair))}
    if args.reduced:
        classes, _ = poset.interval_classes(p)
        rmu = poset.reduced_mobius(p)
        ctx = poset.reduced_context(p)
        return {"classes": [{"index": c.index, "representative": [str(v) for v in c.representative],
                             "size": len(c.members), "mu": q(rmu[ctx.cells[c.index]])}
                            for c in classes]}
    raise SystemExit("poset: choose one of --mobius --homology --gauss-bonnet --antipode --reduced")


def cmd_digraph(args, doc):
    g = doc.obj
    if args.check:
        return {"locally_finite": digraph.is_locally_finite(g), **_digraph_checks(g)}
    mu = digraph.graph_mobius(g)
    return {"mobius": _table(mu, digraph.induced_poset(g).intervals())}


def _digraph_checks(g):
    p = digraph.induced_poset(g)
    mu = digraph.graph_mobius(g)
    walks = digraph.graph_mobius_walks(g)
    trips = []
    for base in p.elements:
        f = {x: i + 1 for i, x in enumerate(p.up_set(base))}
        trips.append(digraph.graph_inversion_check(g, base, f)["round_trip"])
    return {"walk_sum_agrees": mu == walks, "inversion_round_trips": all(trips)}


def cmd_cat(args, doc):
    c = doc.obj
    if args.check:
        return _cat_properties(c)
    if args.mobius:
        if fincat.is_locally_finite_cat(c):
            mu = fincat.cat_mobius(c)
            out = {"mobius": _table(mu, fincat.object_poset(c).intervals())}
        else:
            mu = fincat.essential_mobius(c)
            out = {"essential_mobius": _table(mu, fincat.quotient_poset(c).intervals())}
        if decomp.is_mobius_category(c):
            m = decomp.morphism_mobius(c)
            out["morphism_mobius"] = {str(f.id): q(m[f.id]) for f in c.morphisms}
        return out
    if args.mu_g:
        xg, mg = fincat.xi_g_mu_g(c)
        cells = fincat.quotient_poset(c).intervals()
        return {"xi_g": _table(xg, cells), "mu_g": _table(mg, cells)}
    if args.decomp is not None:
        f = args.decomp
        c.morphism(f)
        n = args.max_n
        out = {"morphism": f, "D": [decomp.count_Dn(c, f, k) for k in range(1, n + 1)],
               "PD": [decomp.count_PDn(c, f, k) for k in range(1, n + 1)]}
        if decomp.is_mobius_category(c):
            out["mu"] = q(decomp.mobius_by_pd(c, f))
            out["bar_homology"] = {str(k): r for k, r in decomp.bar_homology_ranks(c, f).items()}
        return out
    if args.iso_classes:
        classes, rep = c.object_classes()
        mclasses, _ = c.morphism_classes()
        return {"object_classes": [[str(x) for x in cl] for cl in classes],
                "morphism_classes": [[str(f) for f in cl] for cl in mclasses]}
    raise SystemExit("cat: choose one of --check --mobius --mu-g --decomp --iso-classes")


def _cat_properties(c):
    return {"valid": not fincat.validate(c),
            "locally_finite": fincat.is_locally_finite_cat(c),
            "essentially_locally_finite": fincat.is_essentially_locally_finite(c),
            "isocyclic": fincat.is_isocyclic(c),
            "groupoid": fincat.is_groupoid(c),
            "mobius_category": decomp.is_mobius_category(c),
            "isomorphism_filling": decomp.is_isomorphism_filling(c),
            "class_algebra_associative": (fincat.is_essentially_locally_finite(c)
                                          and fincat.is_isocyclic(c)
                                          and not decomp.class_associativity_defects(c))}


def cmd_arith(args):
    if args.mu is not None:
        return {"mu": q(arith.classical_mobius(args.mu))}
    if args.mertens is not None:
        return {"mertens": arith.mertens(args.mertens)}
    if args.invert is not None:
        data = json.loads(Path(args.invert).read_text())
        if not isinstance(data, list) or not data:
            raise SchemaError("$", "expected a nonempty array of rationals")
        try:
            f = arith.TruncatedDirichlet(data)
        except (ValueError, ZeroDivisionError, TypeError) as e:
            raise SchemaError("$", f"bad coefficient ({e})") from None
        return {"inverse": [q(v) for v in arith.dirichlet_invert(f).coeffs]}
    raise SystemExit("arith: choose one of --mu --mertens --invert")


def cmd_gen(args):
    k = args.param
    if args.family == "injections":
        return serialize(fincat.injection_category(k))
    p = poset.family(args.family, k)
    return serialize(_relabel(p, _name))


# verification harness

class VerifyFailure(AssertionError):
    pass


def _run_checks(checks):
    report = []
    for name, fn in checks:
        try:
            ok = fn()
        except DOMAIN_ERRORS as e:
            report.append({"name": name, "status": "skipped", "detail": str(e)})
            continue
        if ok is None:
            report.append({"name": name, "status": "skipped"})
            continue
        report.append({"name": name, "status": "ok" if ok else "fail"})
        if not ok:
            raise VerifyFailure(report)
    return report


def poset_checks(p: Poset):
    def laws():
        ctx = poset.incidence_context(p)
        mu = poset.mobius(p)
        return (not ctx.coassociativity_defects() and not ctx.counit_defects()
                and core.convolve(ctx, ctx.zeta(), mu) == ctx.epsilon()
                and core.convolve(ctx, mu, ctx.zeta()) == ctx.epsilon())

    def chains():
        mu = poset.mobius(p)
        return all(mu[c] == poset.mobius_by_chains(p, *c) for c in p.intervals())

    def hall():
        mu = poset.mobius(p)
        return all(mu[(x, y)] == topology.hall_mobius(p, x, y) == topology.hall_mobius_homology(p, x, y)
                   for x, y in p.intervals() if x != y)

    def reduced():
        return poset.lift_reduced(p, poset.reduced_mobius(p)) == poset.mobius(p)

    def antipode():
        mu = poset.mobius(p)
        return all(poset.antipode_eval(p, *c) == mu[c] for c in p.intervals() if c[0] != c[1])

    def leinster():
        z = poset.embed_to_matrix(p, poset.zeta(p))
        inv = poset.matrix_inverse(z)
        return poset.matrix_to_element(p, inv) == poset.mobius(p)

    def eta():
        ctx = poset.incidence_context(p)
        inv = core.invert(ctx, poset.eta_element(p))
        return all(inv[c] == poset.maximal_chain_count(p, *c) for c in ctx.cells)

    def module():
        for base in p.elements:
            g = {x: i + 1 for i, x in enumerate(p.up_set(base))}
            f = poset.module_inversion(p, base, g, "by_xi")
            if poset.module_inversion(p, base, f, "by_mu") != {x: Fraction(v) for x, v in g.items()}:
                return False
        return True

    return [("incidence algebra laws", laws), ("mobius equals alternating chain count", chains),
            ("mobius equals reduced euler characteristic and homology", hall),
            ("gauss-bonnet", lambda: topology.gauss_bonnet(p).holds()),
            ("reduced incidence algebra lifts to mobius", reduced),
            ("antipode at one equals mobius", antipode),
            ("matrix inverse of zeta equals mobius", leinster),
            ("inverse of eta counts maximal chains", eta),
            ("module inversion round trip", module)]


def digraph_checks(g: ReflexiveDigraph):
    def walk():
        return digraph.graph_mobius(g) == digraph.graph_mobius_walks(g)

    def inversion():
        return _digraph_checks(g)["inversion_round_trips"]

    def simple():
        p = digraph.induced_poset(g)
        if any(g.count(x, y) > 1 for x in g.vertices for y in g.vertices):
            return None
        if any(g.count(x, y) == 0 for x, y in p.relation()):
            return None
        return digraph.graph_mobius(g).values == poset.mobius(p).values

    return [("graph mobius equals walk sum", walk), ("graph mobius inversion round trip", inversion),
            ("simple graph agrees with poset mobius", simple)]


def category_checks(c: FinCategory):
    def lf():
        if not fincat.is_locally_finite_cat(c):
            return None
        return fincat.cat_mobius(c) == fincat.cat_mobius_closed_form(c)

    def elf():
        if not fincat.is_essentially_locally_finite(c):
            return None
        return fincat.essential_mobius(c) == fincat.essential_mobius_closed_form(c)

    def reps():
        if not fincat.is_essentially_locally_finite(c):
            return None
        return fincat.representative_independent(c)

    def chi_g():
        if not (fincat.is_essentially_locally_finite(c) and fincat.is_isocyclic(c)):
            return None
        mu = fincat.essential_mobius(c)
        p = fincat.quotient_poset(c)
        return all(fincat.simplicial_euler_chi_g(c, x, y) == mu[(x, y)]
                   for x, y in p.relation() if x != y)

    def mu_g():
        if not (fincat.is_essentially_locally_finite(c) and fincat.is_isocyclic(c)):
            return None
        xg = fincat.xi_g(c)
        return core.invert(xg.context, xg) == fincat.mu_g_closed_form(c)

    def mobius3():
        if not decomp.is_mobius_category(c):
            return None
        mu = decomp.morphism_mobius(c)
        return all(mu[f.id] == decomp.mobius_by_pd(c, f.id) == decomp.bar_euler(c, f.id)
                   for f in c.morphisms)

    def leroux():
        return decomp.is_mobius_category(c) == decomp.is_locally_finite_one_way(c)

    def binomial():
        return all(all(decomp.binomial_transform_check(c, f.id, 4)[k] for k in ("forward", "inverse"))
                   for f in c.morphisms)

    def embedding():
        if not decomp.is_mobius_category(c) or not decomp.is_right_cancellative(c):
            return None
        r = decomp.morphism_order_and_embedding(c)
        return r["shift_invariant"] and r["injective"] and r["homomorphism"]

    def efd():
        return fincat.is_essentially_locally_finite(c) and fincat.is_isocyclic(c)

    def class_mu():
        if not efd() or decomp.class_associativity_defects(c):
            return None
        ctx = decomp.class_context(c)
        mu = decomp.essential_morphism_mobius(c, check=False)
        return all(mu[x] == decomp.class_mobius_by_counts(c, x) for x in ctx.cells)

    def decomposition_sums():
        if not efd():
            return None
        mu = fincat.essential_mobius(c)
        return all(mu[k] == v for k, v in decomp.groupoid_decomposition_sums(c).items())

    def class_assoc():
        # associativity is only guaranteed under literal filling
        if not efd():
            return None
        ok = not decomp.class_associativity_defects(c)
        return True if ok else (None if not decomp.is_isomorphism_filling(c) else False)

    return [("composition laws", lambda: not fincat.validate(c)),
            ("category mobius equals chain formula", lf),
            ("essential mobius equals chain formula", elf),
            ("essential mobius independent of representatives", reps),
            ("essential mobius equals groupoid euler characteristic", chi_g),
            ("mu_g closed form equals inverse of xi_g", mu_g),
            ("morphism mobius: inverse, proper counts, bar complex", mobius3),
            ("leroux criterion equals locally finite and one way", leroux),
            ("binomial transform of decomposition counts", binomial),
            ("cancellative embedding is a homomorphism", embedding),
            ("class mobius equals alternating class counts", class_mu),
            ("groupoid decomposition sum equals essential mobius", decomposition_sums),
            ("class algebra associativity census", class_assoc)]


def cmd_verify(doc):
    checks = {"poset": poset_checks, "digraph": digraph_checks, "category": category_checks}[doc.kind](doc.obj)
    return {"kind": doc.kind, "checks": _run_checks(checks)}


def make_parser():
    ap = argparse.ArgumentParser(prog="mobius", description="Exact Möbius functions of posets, graphs and categories")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("poset")
    sp.add_argument("file")
    g = sp.add_mutually_exclusive_group(required=True)
    for flag in ("--mobius", "--homology", "--gauss-bonnet", "--antipode", "--reduced"):
        g.add_argument(flag, action="store_true")
    sp.add_argument("--pair", nargs=2, metavar=("X", "Y"))

    sd = sub.add_parser("digraph")
    sd.add_argument("file")
    g = sd.add_mutually_exclusive_group(required=True)
    g.add_argument("--mobius", action="store_true")
    g.add_argument("--check", action="store_true")

    sc = sub.add_parser("cat")
    sc.add_argument("file")
    g = sc.add_mutually_exclusive_group(required=True)
    g.add_argument("--check", action="store_true")
    g.add_argument("--mobius", action="store_true")
    g.add_argument("--mu-g", action="store_true")
    g.add_argument("--decomp", metavar="MORPHISM")
    g.add_argument("--iso-classes", action="store_true")
    sc.add_argument("--max-n", type=int, default=4)

    sa = sub.add_parser("arith")
    g = sa.add_mutually_exclusive_group(required=True)
    g.add_argument("--mu", type=int)
    g.add_argument("--invert", metavar="FILE")
    g.add_argument("--mertens", type=int)

    sv = sub.add_parser("verify")
    sv.add_argument("file")

    sg = sub.add_parser("gen")
    sg.add_argument("--family", required=True,
                    choices=["chain", "boolean", "divisors", "partitions", "injections"])
    sg.add_argument("--param", type=int, required=True)
    return ap


def _load(path):
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise SchemaError("$", f"cannot read {path}: {e.strerror}") from None
    return parse_document(raw)


def run_command(argv, out=None) -> int:
    out = out or sys.stdout
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "arith":
            report = cmd_arith(args)
        elif args.command == "gen":
            report = cmd_gen(args)
        else:
            doc = _load(args.file)
            expected = {"poset": "poset", "digraph": "digraph", "cat": "category"}.get(args.command)
            if expected and doc.kind != expected:
                raise SchemaError("$.kind", f"expected a {expected} document")
            if args.command == "verify":
                report = cmd_verify(doc)
            else:
                report = {"poset": cmd_poset, "digraph": cmd_digraph, "cat": cmd_cat}[args.command](args, doc)
    except VerifyFailure as e:
        json.dump({"status": "fail", "checks": e.args[0]}, out, indent=1)
        out.write("\n")
        return 1
    except SystemExit as e:
        print(str(e.code), file=sys.stderr)
        return 2
    except (DOMAIN_ERRORS + (ValueError, KeyError)) as e:
        err = {"error": type(e).__name__, "message": str(e)}
        if isinstance(e, SchemaError):
            err["path"] = e.path
        json.dump(err, sys.stderr)
        sys.stderr.write("\n")
        return 1
    json.dump(report, out, indent=1)
    out.write("\n")
    return 0


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
