"""Command line front end.

Exit codes: 0 when the requested check or construction succeeded, 1 when a
mathematical claim failed (a verification mismatch, a map outside the
classified family, an element without the requested decomposition), 2 for
requests outside the supported regimes or budgets.
"""

import argparse
import json
import pathlib
import sys

from .algebra import diagonal_part, from_triples
from .classify import classify_preserver
from .errors import (BudgetExceeded, ClaimFailed, DisconnectedPoset,
                     IncalgError, NoPrimitiveRoot, UnsupportedField,
                     UnsupportedRegime)
from .field import field_from_flag
from .harness.demos import DEMO_NAMES, run_all_demos, run_demo
from .harness.verify import THEOREMS, verify_theorem
from .linmaps import parse_linmap
from .poset import antichain, chain, parse_poset
from .potents import (DEFAULT_BUDGET, conjugate_to_diagonal,
                      enumerate_k_potents, spectral_decompose)

USAGE_ERRORS = (UnsupportedRegime, UnsupportedField, NoPrimitiveRoot,
                DisconnectedPoset, ValueError)


def _load_poset(spec):
    if spec.startswith("chain:"):
        return chain(int(spec.split(":", 1)[1]))
    if spec.startswith("antichain:"):
        return antichain(int(spec.split(":", 1)[1]))
    path = pathlib.Path(spec)
    if path.exists():
        return parse_poset(path.read_text())
    # a literal is a bare element count, JSON, or multi-line relation text;
    # anything else without a newline was meant as a file path
    if ("\n" not in spec and not spec.lstrip().startswith(("{", "["))
            and not spec.strip().isdigit()):
        raise FileNotFoundError(f"poset file {spec!r} not found")
    return parse_poset(spec)


def _read_source(path):
    if path == "-":
        return sys.stdin.read()
    # literal content: a JSON list/object or embedded newlines, never a path
    if path.lstrip().startswith(("[", "{")) or "\n" in path:
        return path
    return pathlib.Path(path).read_text()


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _fail(e, code):
    _emit({"error": type(e).__name__, "message": str(e)})
    return code


def _element_triples(f):
    F = f.field
    return [[x, y, F.format(v)] for x, y, v in f.to_triples()]


def cmd_verify(args):
    P = _load_poset(args.poset)
    F = field_from_flag(args.field)
    try:
        report = verify_theorem(args.theorem, P, F, k=args.k,
                                workers=args.workers, backend=args.backend,
                                budget=args.budget, spot=args.spot)
    except BudgetExceeded as e:
        return _fail(e, 2)
    except USAGE_ERRORS as e:
        return _fail(e, 2)
    _emit(report.to_jsonable())
    return 0 if report.match else 1


def cmd_decompose(args):
    P = _load_poset(args.poset)
    F = field_from_flag(args.field)
    phi = parse_linmap(P, F, _read_source(args.map))
    try:
        report = classify_preserver(phi, args.k, budget=args.budget)
    except BudgetExceeded as e:
        return _fail(e, 2)
    except USAGE_ERRORS as e:
        return _fail(e, 2)
    except IncalgError as e:
        return _fail(e, 1)
    _emit(report.to_jsonable())
    return 0


def cmd_spectral(args):
    P = _load_poset(args.poset)
    F = field_from_flag(args.field)
    f = from_triples(P, F, [tuple(t) for t in json.loads(_read_source(args.element))])
    try:
        spec = spectral_decompose(f, args.k)
        sigma = conjugate_to_diagonal(f, args.k)
    except USAGE_ERRORS as e:
        return _fail(e, 2)
    except IncalgError as e:
        return _fail(e, 1)
    _emit({
        "k": args.k,
        "field": F.flag(),
        "element": _element_triples(f),
        "epsilon": F.format(spec.epsilon.value),
        "idempotents": [_element_triples(b) for b in spec.idempotents],
        "conjugator": _element_triples(sigma),
        "diagonal_form": _element_triples(diagonal_part(f)),
    })
    return 0


def cmd_demo(args):
    try:
        if args.name == "all":
            reports = run_all_demos()
        else:
            reports = [run_demo(args.name)]
    except ClaimFailed as e:
        _emit({"error": "ClaimFailed", "message": str(e), "claims": e.claims})
        return 1
    except ValueError as e:
        return _fail(e, 2)
    _emit(reports if args.name == "all" else reports[0])
    return 0


def cmd_enumerate_potents(args):
    P = _load_poset(args.poset)
    F = field_from_flag(args.field)
    budget = args.budget
    try:
        elems = enumerate_k_potents(P, F, args.k, budget=budget)
    except BudgetExceeded as e:
        if not args.force or e.required is None:
            return _fail(e, 2)
        elems = enumerate_k_potents(P, F, args.k, budget=e.required)
    except USAGE_ERRORS as e:
        return _fail(e, 2)
    out = {"poset": {"labels": list(P.labels)}, "field": F.flag(),
           "k": args.k, "count": len(elems)}
    if not args.count_only:
        out["elements"] = [_element_triples(f) for f in elems]
    _emit(out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="incalg",
        description="exact incidence-algebra arithmetic and exhaustive "
                    "verification of potent-preserver factorizations")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--poset", required=True,
                       help="file, literal text/JSON, or chain:N / antichain:N")
        p.add_argument("--field", required=True,
                       help="field flag: a prime power like 2, 3, 4, or Q")

    p = sub.add_parser("verify", help="sweep every bijective map and compare "
                                      "the preservers with the predicted family")
    add_common(p)
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--k", type=int, default=None,
                   help="potency degree (kpotent only; others fix it)")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--backend", choices=("numba", "numpy"), default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--spot", type=int, default=24,
                   help="how many preservers to push through the factorization")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="factor one map through the "
                                         "classification pipelines")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--map", default="-",
                   help="map file (header 'field dim', one line per column); "
                        "- reads stdin")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("spectral", help="split a k-potent into orthogonal "
                                        "idempotents and diagonalize it")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--element", default="-",
                   help="JSON list of [x, y, value] triples, inline or a "
                        "file; - reads stdin")
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("demo", help="run a worked demonstration")
    p.add_argument("name", choices=DEMO_NAMES + ("all",))
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("enumerate-potents", help="list every k-potent element")
    add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--force", action="store_true",
                   help="retry with the budget the enumeration reports needing")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate_potents)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (IncalgError, ValueError) as e:
        return _fail(e, 2)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
