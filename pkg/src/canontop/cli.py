"""Command-line front end.

Every subcommand prints a JSON report (or text with ``--pretty``) that embeds
the configuration used.  Exit codes: 0 the property holds, 1 it fails (the
report carries a witness), 2 input error, 3 a resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ._util import DEFAULT_DIM, DEFAULT_GENSIEVE_OBJECTS, DEFAULT_PROBE, DEFAULT_SIEVE_ARROWS, jsonable, show
from .catalog import CATEGORIES
from .errors import AmbientTooLarge, CategoryError, InputError
from .fincat import FinCategory, FinFunctor, NatTrans, validate_category

EXIT_HOLDS, EXIT_FAILS, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    inputs: list = field(default_factory=list)
    probe: int = DEFAULT_PROBE
    dim: int = DEFAULT_DIM
    guard: int = DEFAULT_SIEVE_ARROWS
    gensieve_guard: int = DEFAULT_GENSIEVE_OBJECTS
    output_format: str = "json"

    def __post_init__(self):
        for name in ("probe", "dim", "guard", "gensieve_guard"):
            if getattr(self, name) < 1:
                raise InputError(f"--{name.replace('_', '-')} must be positive")


# -- input helpers ---------------------------------------------------------------------

def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def load_category(spec) -> FinCategory:
    """A JSON file path, an inline document, or a built-in name."""
    if isinstance(spec, dict):
        return validate_category(spec)
    if isinstance(spec, str) and not Path(spec).exists() and spec in CATEGORIES:
        return CATEGORIES[spec]()
    return validate_category(read_json(spec))


def _resolve(C: FinCategory, token, kind="object"):
    pool = C.objects if kind == "object" else C.morphisms
    for x in pool:
        if x == token or show(x) == token:
            return x
    raise InputError(f"unknown {kind} {token!r}")


def _functor_from_document(C, D, doc) -> FinFunctor:
    try:
        ob = {x: _resolve(D, doc["ob"][show(x)]) for x in C.objects}
        mor = {}
        for m in C.morphisms:
            if show(m) in doc.get("mor", {}):
                mor[m] = _resolve(D, doc["mor"][show(m)], "morphism")
            elif C.is_identity(m):
                mor[m] = D.identity(ob[C.src(m)])
            else:
                raise InputError(f"functor undefined on {show(m)!r}")
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed functor document: {exc!r}") from exc
    return FinFunctor(C, D, ob, mor)


# -- commands ----------------------------------------------------------------------------

def cmd_category(args, cfg):
    try:
        raw = read_json(args.path)
    except InputError:
        raise
    try:
        C = validate_category(raw)
    except CategoryError as exc:
        loc = getattr(exc, "triple", None) or getattr(exc, "pair", None)
        return {"valid": False, "error": type(exc).__name__, "message": str(exc),
                "location": list(loc) if loc else None}, False
    return {"valid": True, "objects": len(C.objects), "morphisms": len(C.morphisms)}, True


def _sieve_from_args(args, C):
    from .sieves import ExplicitSieve, generate_sieve

    X = _resolve(C, args.apex)
    if args.members is not None:
        return ExplicitSieve(C, X, [_resolve(C, m, "morphism") for m in args.members])
    seeds = [_resolve(C, m, "morphism") for m in (args.seeds or [])]
    return generate_sieve(C, X, seeds)


def _generated_from_document(doc):
    from . import finset as fset
    from .sieves import GeneratedSieve

    try:
        apex = fset.set_from_document(doc["apex"]) if isinstance(doc["apex"], dict) \
            else fset.FinSetObject(doc["apex"])
        gens = [fset.function_from_document({**g, "cod": g.get("cod", list(apex.elements))})
                for g in doc["generators"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed generated sieve document: {exc!r}") from exc
    return GeneratedSieve(apex, gens)


def cmd_sieve(args, cfg):
    from .sieves import is_colim_sieve, is_universal_colim_sieve

    if args.generated:
        S = _generated_from_document(read_json(args.generated))
        report = {"kind": "generated", "generators": len(S.generators)}
    else:
        if not args.category or args.apex is None:
            raise InputError("give a category and --apex, or --generated FILE")
        C = load_category(args.category)
        S = _sieve_from_args(args, C)
        report = {"kind": "explicit", "apex": show(S.apex), "members": [show(m) for m in S.sorted()]}
    d = is_colim_sieve(S)
    report["colim_sieve"] = d.holds
    report["method"] = d.method
    if not d.holds:
        report["witness"] = jsonable(d.witness)
    holds = d.holds
    if args.universal:
        u = is_universal_colim_sieve(S, probe=cfg.probe)
        report["universal_colim_sieve"] = u.holds
        report["universal_method"] = u.method
        report["universal_witness"] = jsonable(u.witness)
        holds = u.holds
    return report, holds


def cmd_topology(args, cfg):
    from .topology import canonical_topology, topology_from_document, verify_topology_axioms

    C = load_category(args.category)
    if args.verify:
        J = topology_from_document(C, read_json(args.verify))
    else:
        J = canonical_topology(C, guard=cfg.guard)
    report = {"category": C.name or args.category, "topology": J.to_document()}
    if args.verify:
        v = verify_topology_axioms(J, guard=cfg.guard)
        report["axioms"] = {k: v[k] for k in ("maximality", "stability", "transitivity")}
        report["witnesses"] = jsonable(v["witnesses"])
        failing = [k for k in ("maximality", "stability", "transitivity") if not v[k]]
        report["failing_axioms"] = failing
        return report, v["holds"]
    return report, True


def cmd_sheaf(args, cfg):
    from .topology import (
        canonical_topology,
        is_sheaf,
        presheaf_from_document,
        representable_presheaf,
        topology_from_document,
    )

    C = load_category(args.category)
    J = topology_from_document(C, read_json(args.topology)) if args.topology \
        else canonical_topology(C, guard=cfg.guard)
    if args.representable:
        targets = list(C.objects) if args.representable == "all" else [_resolve(C, args.representable)]
        presheaves = [(f"y({show(M)})", representable_presheaf(C, M)) for M in targets]
    elif args.presheaf:
        presheaves = [("presheaf", presheaf_from_document(C, read_json(args.presheaf)))]
    else:
        raise InputError("give --presheaf FILE or --representable M")
    results = []
    for name, F in presheaves:
        d = is_sheaf(F, J)
        row = {"presheaf": name, "sheaf": d.holds}
        if not d.holds:
            row["failure"] = jsonable(d.witness)
        results.append(row)
    return {"results": results}, all(r["sheaf"] for r in results)


def _homology_rows(X):
    from .homology import homology

    return homology(X).report()


def cmd_hocolim(args, cfg):
    from . import homology as hom
    from . import simplicial as S

    report = {"note": hom.PROXY_NOTE}
    if args.diagram:
        doc = read_json(args.diagram)
        shape = load_category(doc.get("shape"))
        D = S.diagram_from_document(shape, doc, cfg.dim)
        H = S.hocolim(D)
        report.update(mode="diagram", levels=H.counts(), homology=_homology_rows(H))
        return report, True
    if args.cech:
        doc = read_json(args.cech)
        X = S.sset_from_document({**doc["space"], "dim": doc["space"].get("dim", cfg.dim)})
        cover = S.cech_cover(X, doc["parts"])
        iso = hom.is_homology_isomorphism(cover.comparison)
        report.update(mode="cech", levels=cover.hocolim.counts(), homology=_homology_rows(cover.hocolim),
                      space=_homology_rows(X), comparison_isomorphism=iso["isomorphism"],
                      iso_range=iso["iso_range"])
        return report, iso["isomorphism"]
    if args.simplices:
        doc = read_json(args.simplices)
        X = S.sset_from_document({**doc, "dim": doc.get("dim", cfg.dim)})
        D = S.simplex_category(X)
        H = S.hocolim(D)
        iso = hom.is_homology_isomorphism(S.simplex_comparison(X, D))
        report.update(mode="simplices", objects=len(D.shape.objects), levels=H.counts(),
                      homology=_homology_rows(H), space=_homology_rows(X),
                      comparison_isomorphism=iso["isomorphism"], iso_range=iso["iso_range"])
        return report, iso["isomorphism"]
    if args.cech_map:
        from . import finset as fset

        doc = read_json(args.cech_map)
        if "source" in doc:
            Y = S.sset_from_document({**doc["source"], "dim": doc["source"].get("dim", cfg.dim)})
            X = S.sset_from_document({**doc["target"], "dim": doc["target"].get("dim", cfg.dim)})
            f = S.map_from_document(Y, X, doc["map"])
            aug = S.cech_augmentation(f)
            iso = hom.is_homology_isomorphism(aug)
            report.update(mode="cech-map", levels=aug.source.counts(), homology=_homology_rows(aug.source),
                          base=_homology_rows(X), comparison_isomorphism=iso["isomorphism"],
                          iso_range=iso["iso_range"])
            return report, iso["isomorphism"]
        f = fset.function_from_document(doc)
        Cf = S.cech_map(f, cfg.dim)
        report.update(mode="cech-map", levels=Cf.counts(), homology=_homology_rows(Cf))
        return report, True
    raise InputError("give one of --diagram, --cech, --simplices, --cech-map")


def cmd_cylinder(args, cfg):
    from . import simplicial as S

    doc = read_json(args.spec)
    dim = int(doc.get("dim", cfg.dim))
    C = load_category(doc["source_category"])
    D = load_category(doc["target_category"])
    F = S.diagram_from_document(D, doc["diagram"], dim)
    alpha = _functor_from_document(C, D, doc["alpha"])
    beta = _functor_from_document(C, D, doc["beta"])
    try:
        comps = {x: _resolve(D, doc["theta"][show(x)], "morphism") for x in C.objects}
    except KeyError as exc:
        raise InputError(f"theta has no component at {exc}") from exc
    theta = NatTrans(alpha, beta, comps)
    cyl = S.cylinder_homotopy_H(F, alpha, beta, theta)
    simplicial_ok = cyl.check_simplicial()
    ends = cyl.endpoint_checks()
    po = S.cylinder_pushout(cyl)
    proxy = cyl.homology_proxy()
    report = {"dim": dim, "simplicial_map": simplicial_ok, **ends,
              "pushout": {k: v for k, v in po.items() if isinstance(v, bool)},
              "homology_proxy": proxy,
              "levels": [[len(cyl.source.level(n, m)) for m in range(dim + 1)] for n in range(dim + 1)]}
    holds = simplicial_ok and all(ends.values()) and all(report["pushout"].values()) and proxy["equal"]
    return report, holds


def cmd_gensieve(args, cfg):
    from .gensieve import (
        GeneralizedSieve,
        diagram_one,
        diagram_two,
        grothendieck_presentation_isomorphism,
        transitivity_argument,
    )
    from .sieves import generate_sieve

    C = load_category(args.category)
    X = _resolve(C, args.apex)
    R = generate_sieve(C, X, [_resolve(C, m, "morphism") for m in args.R])
    S = generate_sieve(C, X, [_resolve(C, m, "morphism") for m in args.S])
    ys = [_resolve(C, args.Y)] if args.Y else list(C.objects)
    D1 = diagram_one(R, S, guard=cfg.gensieve_guard)
    rows = []
    ok = D1.upper_right_commutes()
    for Y in ys:
        d2 = diagram_two(D1, Y)
        t = transitivity_argument(R, S, Y, D1)
        row = {"Y": show(Y), "diagram_two": {"upper_right": d2["upper_right"], "lower_left": d2["lower_left"]},
               **{k: v for k, v in t.items() if isinstance(v, bool)}}
        ok = ok and d2["upper_right"] and d2["lower_left"] and \
            t.get("phi_R_bijective_deduced") == t.get("phi_R_bijective_direct")
        rows.append(row)
    rem = {}
    for name, sieves in (("X[R]", [R]), ("X[S R]", [S, R]), ("X[R S R]", [R, S, R])):
        GS = GeneralizedSieve(C, X, sieves, guard=cfg.gensieve_guard)
        d = grothendieck_presentation_isomorphism(GS)
        rem[name] = {"objects": len(GS.category.objects), "isomorphism": d.holds}
        ok = ok and d.holds
    report = {"apex": show(X), "R": [show(m) for m in R.sorted()], "S": [show(m) for m in S.sorted()],
              "diagram_one_upper_right": D1.upper_right_commutes(), "per_Y": rows, "grothendieck_presentation": rem}
    return report, ok


COMMANDS = {
    "category": cmd_category,
    "sieve": cmd_sieve,
    "topology": cmd_topology,
    "sheaf": cmd_sheaf,
    "hocolim": cmd_hocolim,
    "cylinder": cmd_cylinder,
    "gensieve": cmd_gensieve,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--probe", type=int, default=DEFAULT_PROBE, help="probe bound k for bounded checks")
    common.add_argument("--dim", type=int, default=DEFAULT_DIM, help="simplicial truncation N")
    common.add_argument("--guard", type=int, default=DEFAULT_SIEVE_ARROWS,
                        help="largest number of arrows into an object for sieve enumeration")
    common.add_argument("--gensieve-guard", type=int, default=DEFAULT_GENSIEVE_OBJECTS,
                        help="largest generalized sieve object count")
    common.add_argument("--pretty", action="store_true", help="human-readable text instead of JSON")
    common.add_argument("--output", help="write the report to this file")
    common.add_argument("--figures", metavar="DIR", help="also render figures into DIR")

    p = argparse.ArgumentParser(prog="canontop", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("category", parents=[common], help="validate a category document")
    s.add_argument("path")

    s = sub.add_parser("sieve", parents=[common], help="colim / universal colim sieve decisions")
    s.add_argument("category", nargs="?")
    s.add_argument("--apex")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--seeds", nargs="*", help="generate the sieve from these arrows")
    g.add_argument("--members", nargs="*", help="explicit (closed) member list")
    g.add_argument("--generated", help="generated sieve in finite sets (JSON)")
    s.add_argument("--universal", action="store_true")

    s = sub.add_parser("topology", parents=[common], help="canonical topology or axiom verification")
    s.add_argument("category")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--canonical", action="store_true")
    g.add_argument("--verify", metavar="J")

    s = sub.add_parser("sheaf", parents=[common], help="sheaf condition for a presheaf")
    s.add_argument("category")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--presheaf")
    g.add_argument("--representable", metavar="M", help="an object, or 'all'")
    s.add_argument("--topology", help="topology document (default: canonical)")

    s = sub.add_parser("hocolim", parents=[common], help="homotopy colimit homology")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--diagram")
    g.add_argument("--cech", metavar="COVER")
    g.add_argument("--simplices", metavar="X")
    g.add_argument("--cech-map", metavar="F")

    s = sub.add_parser("cylinder", parents=[common], help="check the cylinder homotopy")
    s.add_argument("spec")

    s = sub.add_parser("gensieve", parents=[common], help="generalized sieve engine checks")
    s.add_argument("category")
    s.add_argument("--apex", required=True)
    s.add_argument("--R", nargs="+", required=True, help="seeds of R")
    s.add_argument("--S", nargs="+", required=True, help="seeds of S")
    s.add_argument("--Y", help="restrict the hom-set diagram to this object")
    return p


def _text(report, indent=0) -> str:
    lines = []
    pad = "  " * indent
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for row in v:
                lines.append(_text(row, indent + 1))
                lines.append(f"{pad}  --")
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(l for l in lines if l)


def emit(report, cfg, output=None):
    text = _text(report) if cfg.output_format == "text" else json.dumps(jsonable(report), indent=2)
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {"command": args.command}
    try:
        cfg = RunConfig(args.command, [v for k, v in vars(args).items()
                                       if k in ("path", "category", "spec", "diagram", "cech", "simplices",
                                                "cech_map", "generated", "verify", "presheaf", "topology")
                                       and isinstance(v, str)],
                        args.probe, args.dim, args.guard, args.gensieve_guard,
                        "text" if args.pretty else "json")
        body, holds = COMMANDS[args.command](args, cfg)
        report.update(body)
        report["holds"] = holds
        report["config"] = asdict(cfg)
        code = EXIT_HOLDS if holds else EXIT_FAILS
        if args.figures:
            from .plotting import render_report

            report["figures"] = render_report(args.command, report, Path(args.figures))
    except AmbientTooLarge as exc:
        report.update(error=type(exc).__name__, message=str(exc))
        code = EXIT_GUARD
        cfg = RunConfig(args.command, output_format="text" if args.pretty else "json")
    except InputError as exc:
        report.update(error=type(exc).__name__, message=str(exc))
        code = EXIT_INPUT
        cfg = RunConfig(args.command, output_format="text" if args.pretty else "json")
    report["exit_code"] = code
    emit(report, cfg, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
