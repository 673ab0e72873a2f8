"""Command-line front end.

All subcommands read JSON files and print one JSON object with sorted keys
(byte-stable across runs).  Exit codes: 0 success, 1 input or usage error,
2 guard refusal (large uniform minor, oracle budget).

File formats
    matroid    {"n": 5, "rank": 3, "bases": [[1,2,3], ...]}   (1-indexed)
    matrix     {"field": 3, "rows": [[1,0,2], ...]}
    chirotope  {"matroid": {...}, "signs": {"1,2,3": 1, ...}}
"""

from __future__ import annotations

import argparse
import json
import sys

from . import matroids, oracle, pastures
from .foundation import (
    FoundationDecomposition,
    check_positive_orientation,
    classify,
    classify_decomposition,
    decomposition_admits,
    foundation,
    hom_count,
    lift_orientation,
)
from .crossratio import Chirotope, build_hexagons, eval_cross_ratio, gp_from_matrix
from .errors import GuardError, IntegrityError
from .smallfield import make_field


def _load(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _matroid_from_file(path: str) -> matroids.Matroid:
    return matroids.from_json(_load(path))


def _decomposition_json(dec: FoundationDecomposition) -> dict:
    cls = classify_decomposition(dec)
    return {
        "head": dec.head,
        "factors": dec.factors,
        "class": cls.id,
        "field_representable": cls.field_representable,
        "fano": dec.fano,
        "components": [
            {
                "order": c.order,
                "hexagons": sorted(c.hexagons),
                "monodromy": sorted(g.perm for g in c.monodromy),
            }
            for c in dec.components
        ],
    }


def _cmd_foundation(args) -> int:
    dec = foundation(_matroid_from_file(args.file), seed=args.seed)
    _emit(_decomposition_json(dec))
    return 0


def _cmd_classify(args) -> int:
    cls = classify(_matroid_from_file(args.file))
    _emit({"class": cls.id, "field_representable": cls.field_representable})
    return 0


def _cmd_representable(args) -> int:
    dec = foundation(_matroid_from_file(args.file))
    result = {}
    for name in args.over.split(","):
        target = pastures.resolve_target(name.strip())
        result[name.strip()] = decomposition_admits(dec, target)
    _emit({"representable": result})
    return 0


def _cmd_hom_count(args) -> int:
    target = pastures.resolve_target(args.over)
    if isinstance(target, pastures.InfiniteTarget):
        raise ValueError(f"hom-count needs a finite target, not {args.over}")
    count = hom_count(_matroid_from_file(args.file), target)
    _emit({"count": count})
    return 0


def _cmd_guard(args) -> int:
    m = _matroid_from_file(args.file)
    large = m.has_large_uniform_minor()
    fano = matroids.fano_minor_presence(m)
    _emit({"large_uniform_minor": large, "fano": fano})
    return 0


def _cmd_cross_ratios(args) -> int:
    obj = _load(args.file)
    if "rows" in obj:
        gp = gp_from_matrix(make_field(int(obj["field"])), obj["rows"])
        m = gp.matroid
    else:
        gp, m = None, matroids.from_json(obj)
    sites = []
    for hexagon in build_hexagons(m):
        entry = {
            "contracted": list(hexagon.contracted),
            "residual": list(hexagon.residual),
        }
        if gp is not None:
            entry["values"] = {
                slot_name: eval_cross_ratio(gp, hexagon.contracted, hexagon.slot_quad(s))
                for s, slot_name in enumerate(("x", "y", "1/y", "-x/y", "-y/x", "1/x"))
            }
        sites.append(entry)
    _emit({"field": obj.get("field"), "sites": sites})
    return 0


def _cmd_lift(args) -> int:
    obj = _load(args.file)
    chi = Chirotope.from_json(obj)
    lift = lift_orientation(chi.matroid, chi)
    _emit({"components": lift.components})
    return 0


def _cmd_positive(args) -> int:
    m = _matroid_from_file(args.file)
    report = check_positive_orientation(m, Chirotope.all_positive(m))
    _emit(
        {
            "r": report.r,
            "near_regular": report.near_regular,
            "lifts_to_U": report.lifts_to_U,
        }
    )
    return 0


def _cmd_oracle(args) -> int:
    m = _matroid_from_file(args.file)
    target = pastures.resolve_target(args.over)
    if isinstance(target, pastures.InfiniteTarget):
        raise ValueError(f"the oracle needs a finite target, not {args.over}")
    out = {"representations": oracle.enumerate_representations(m, target)}
    if not args.reps_only:
        out["rescaling_classes"] = oracle.rescaling_classes(m, target)
    _emit(out)
    return 0


def _pasture_json(p: pastures.FinitePasture) -> dict:
    return p.to_json()


def _cmd_pasture(args) -> int:
    op = args.op
    names = args.names
    if op == "info":
        _emit(_pasture_json(pastures.named_pasture(names[0])))
        return 0
    if op in ("product", "tensor"):
        if len(names) != 2:
            raise ValueError(f"{op} needs exactly two pasture names")
        f = pastures.product if op == "product" else pastures.tensor
        result = f(pastures.named_pasture(names[0]), pastures.named_pasture(names[1]))
        out = _pasture_json(result)
        if args.iso:
            out["isomorphic_to"] = {
                args.iso: pastures.is_isomorphic(result, pastures.named_pasture(args.iso))
            }
        _emit(out)
        return 0
    if op == "iso":
        if len(names) != 2:
            raise ValueError("iso needs exactly two pasture names")
        a, b = (pastures.named_pasture(n) for n in names)
        _emit({"isomorphic": pastures.is_isomorphic(a, b)})
        return 0
    if op == "quotient":
        if len(names) < 1:
            raise ValueError("quotient needs a pasture name and relation triples")
        p = pastures.named_pasture(names[0])
        triples = [tuple(int(x) for x in t.split(",")) for t in names[1:]]
        _emit(_pasture_json(pastures.quotient(p, triples)))
        return 0
    raise ValueError(f"unknown pasture operation {op!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matfound",
        description="matroid foundation decomposition, representability "
        "queries, and the brute-force oracle",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("foundation", help="tensor decomposition of a matroid")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=None,
                   help="shuffle harvested edges (determinism check)")
    p.set_defaults(func=_cmd_foundation)

    p = sub.add_parser("classify", help="one of the 12 representation classes")
    p.add_argument("file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("representable", help="representability over targets")
    p.add_argument("file")
    p.add_argument("--over", required=True, help="comma-separated target names")
    p.set_defaults(func=_cmd_representable)

    p = sub.add_parser("hom-count", help="rescaling-class count over a finite target")
    p.add_argument("file")
    p.add_argument("--over", required=True)
    p.set_defaults(func=_cmd_hom_count)

    p = sub.add_parser("cross-ratios", help="hexagon sites, with values for matrices")
    p.add_argument("file")
    p.set_defaults(func=_cmd_cross_ratios)

    p = sub.add_parser("guard", help="large-uniform and Fano minor findings")
    p.add_argument("file")
    p.set_defaults(func=_cmd_guard)

    p = sub.add_parser("lift", help="dyadic lift of a chirotope")
    p.add_argument("file")
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("positive", help="positive-orientation report (all-ones signs)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_positive)

    p = sub.add_parser("oracle", help="brute-force representation counts")
    p.add_argument("file")
    p.add_argument("--over", required=True)
    p.add_argument("--reps-only", action="store_true",
                   help="skip the rescaling-orbit count")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("pasture", help="pasture algebra on catalog entries")
    p.add_argument("op", choices=("info", "product", "tensor", "quotient", "iso"))
    p.add_argument("names", nargs="+")
    p.add_argument("--iso", default=None,
                   help="also test isomorphism of the result against this name")
    p.set_defaults(func=_cmd_pasture)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except GuardError as exc:
        out = {"error": exc.code}
        if exc.detail:
            out["detail"] = exc.detail
        _emit(out)
        return 2
    except IntegrityError as exc:
        _emit({"error": "integrity", "detail": str(exc)})
        return 1
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        _emit({"error": "input", "detail": str(exc)})
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
