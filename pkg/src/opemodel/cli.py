"""Command-line front end.

Every subcommand prints a JSON report on stdout and a one-line summary on
stderr.  Exit status: 0 for success or a positive answer, 1 for a negative
answer, 2 for errors.
"""
from __future__ import annotations

import argparse
import os
import re
import sys

from . import generators as gen
from .categories import j_lower, slice_from_cat, slice_to_cat, walking_arrow, walking_iso_category
from .core import FiniteOperad, validate
from .errors import OperadError, SemanticError
from .factorization import factor_cof_trivfib, factor_trivcof_fib
from .functors import (
    OperadFunctor,
    classify,
    is_cofibration,
    is_fibration,
    is_trivial_cofibration,
    is_trivial_fibration,
    validate_functor,
)
from .lifting import LiftingSquare, find_lift, rlp_counterexample, solve_lift_trivcof, solve_lift_trivfib
from .presented import bv_presentation, decide_equal, presentation_of, realize_unary
from .presented.presentation import Presentation
from .presented.pushout import corner_map_essentially_surjective, corner_map_object_check, corner_map_objects
from .search import Budget, default_budget
from .serialize import (
    category_from_json,
    dumps,
    from_json,
    functor_from_json,
    load_path,
    loads_json,
    operad_from_json,
    term_from_json,
    to_json,
)


class _Negative(Exception):
    """Carries a report whose answer is negative (exit 1)."""

    def __init__(self, report, summary):
        self.report = report
        self.summary = summary


# builtins ----------------------------------------------------------------------


def _builtin_functor(name: str, symmetric: bool):
    fixed = {
        "star-to-H": lambda: gen.star_to_h("a", symmetric),
        "star-to-H-a": lambda: gen.star_to_h("a", symmetric),
        "star-to-H-b": lambda: gen.star_to_h("b", symmetric),
        "H-to-star": lambda: gen.h_to_star(symmetric),
        "empty-to-star": lambda: gen.empty_to_star(symmetric),
    }
    if name in fixed:
        return fixed[name]()
    m = re.fullmatch(r"(boundary|par)-(\d+)", name)
    if m:
        n = int(m.group(2))
        return gen.boundary_inclusion(n, symmetric) if m.group(1) == "boundary" else gen.par_collapse(n, symmetric)
    return None


def _builtin_operad(name: str, symmetric: bool):
    fixed = {
        "star": lambda: gen.star(symmetric),
        "empty": lambda: gen.empty(symmetric),
        "H": lambda: gen.walking_iso(symmetric),
        "walking-arrow": lambda: j_lower(walking_arrow(), symmetric),
        "walking-iso": lambda: j_lower(walking_iso_category(), symmetric),
    }
    if name in fixed:
        return fixed[name]()
    m = re.fullmatch(r"(ar|boundary-ar|par)-(\d+)", name)
    if m:
        make = {"ar": gen.ar, "boundary-ar": gen.boundary_ar, "par": gen.par}[m.group(1)]
        return make(int(m.group(2)), symmetric)
    return None


def _load(path: str):
    if not os.path.exists(path):
        raise SemanticError(f"no such file: {path}")
    return load_path(path)


def _functor_arg(arg: str, symmetric: bool = False) -> OperadFunctor:
    if not os.path.exists(arg):
        F = _builtin_functor(arg, symmetric)
        if F is not None:
            return F
    F = _load(arg)
    if not isinstance(F, OperadFunctor):
        raise SemanticError(f"{arg} does not hold a functor")
    return F


def _operad_arg(arg: str, symmetric: bool = True) -> FiniteOperad:
    if not os.path.exists(arg):
        P = _builtin_operad(arg, symmetric)
        if P is not None:
            return P
    P = _load(arg)
    if not isinstance(P, FiniteOperad):
        raise SemanticError(f"{arg} does not hold an operad")
    return P


def _symmetric_hint(*args) -> bool:
    for a in args:
        if os.path.exists(a):
            obj = load_path(a)
            src = obj.source if isinstance(obj, OperadFunctor) else obj
            return bool(getattr(src, "symmetric", False))
    return False


# subcommands --------------------------------------------------------------------


def cmd_validate(args):
    with open(args.file, encoding="utf-8") as fh:
        data = loads_json(fh.read())
    kind = data.get("kind", "operad") if isinstance(data, dict) else None
    base = os.path.dirname(os.path.abspath(args.file))
    if kind == "operad":
        report = validate(operad_from_json(data, check=False))
    elif kind == "functor":
        report = validate_functor(functor_from_json(data, base, check=False))
    elif kind == "category":
        report = category_from_json(data, check=False).validate()
    else:
        from_json(data, base)
        return {"kind": "validation", "ok": True, "violations": []}, f"valid {kind}"
    out = {"kind": "validation", "ok": report.ok, "violations": [str(v) for v in report.violations]}
    if not report.ok:
        raise _Negative(out, f"invalid {kind}: {report.violations[0]}")
    return out, f"valid {kind}"


def cmd_classify(args):
    F = _functor_arg(args.file)
    c = classify(F)
    out = {"kind": "classification", **c}
    names = [k for k in ("cofibration", "fibration", "weak_equivalence") if c[k]]
    return out, "classes: " + (", ".join(names) if names else "none")


def cmd_factor(args):
    F = _functor_arg(args.file)
    fac = factor_trivcof_fib(F) if args.mode == "trivcof-fib" else factor_cof_trivfib(F)
    out = {
        "kind": "factorization",
        "mode": args.mode,
        "first": to_json(fac.first),
        "second": to_json(fac.second),
    }
    return out, f"factored through a middle operad with {len(fac.middle.colors)} colors"


def cmd_lift(args):
    sq = _load(args.file)
    if not isinstance(sq, LiftingSquare):
        raise SemanticError(f"{args.file} does not hold a square")
    sq.check()
    if is_cofibration(sq.left) and is_trivial_fibration(sq.right):
        H, how = solve_lift_trivfib(sq), "cofibration against trivial fibration"
    elif is_trivial_cofibration(sq.left) and is_fibration(sq.right):
        H, how = solve_lift_trivcof(sq), "trivial cofibration against fibration"
    else:
        H, how = find_lift(sq, Budget(args.budget)), "exhaustive search"
        if H is None:
            raise _Negative({"kind": "lift", "exists": False, "method": how}, "no lift exists")
    return {"kind": "lift", "exists": True, "method": how, "lift": to_json(H)}, f"lift found by {how}"


def cmd_rlp(args):
    sym = _symmetric_hint(args.left, args.right)
    G = _functor_arg(args.left, sym)
    F = _functor_arg(args.right, sym)
    sq = rlp_counterexample(G, F, args.budget)
    if sq is None:
        return {"kind": "rlp", "holds": True}, "right lifting property holds"
    report = {"kind": "rlp", "holds": False, "counterexample": to_json(sq)}
    raise _Negative(report, "right lifting property fails")


def cmd_bv(args):
    P = _operad_arg(args.p)
    Q = _operad_arg(args.q)
    pres = bv_presentation(P, Q)
    counts = {}
    for label in pres.labels:
        counts[label] = counts.get(label, 0) + 1
    out = {
        "kind": "bv",
        "presentation": to_json(pres),
        "generators": len(pres.generators),
        "relations": dict(sorted(counts.items())),
    }
    summary = f"{len(pres.generators)} generators, {len(pres.relations)} relations"
    if all(g.arity == 1 for g in pres.generators):
        try:
            C = realize_unary(pres, args.bound)
            out["realization"] = to_json(C)
            summary += f"; realizes a category with {len(C.arrows)} arrows"
        except OperadError as e:
            out["realization"] = None
            out["realization_error"] = str(e)
            summary += f"; no stable realization at bound {args.bound}"
    return out, summary


def _term_arg(arg, pres: Presentation):
    text = arg
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    return term_from_json(loads_json(text), list(pres.generators))


def cmd_eq(args):
    obj = _load(args.pres)
    if isinstance(obj, FiniteOperad):
        obj = presentation_of(obj)
    if not isinstance(obj, Presentation):
        raise SemanticError(f"{args.pres} does not hold a presentation or an operad")
    t1, t2 = _term_arg(args.t1, obj), _term_arg(args.t2, obj)
    d = decide_equal(obj, t1, t2, args.bound)
    out = {"kind": "equality", "verdict": d.verdict.value, "bound": d.bound, "steps": d.steps, "reason": d.reason}
    summary = f"{d.verdict.value} ({d.reason})"
    if not d:
        raise _Negative(out, summary)
    return out, summary


def cmd_slice(args):
    if args.direction == "to-cat":
        F = _functor_arg(args.file)
        C = slice_to_cat(F)
        return to_json(C), f"category with {len(C.objects)} objects and {len(C.arrows)} arrows"
    C = _load(args.file)
    if isinstance(C, FiniteOperad) or not hasattr(C, "arrows"):
        raise SemanticError(f"{args.file} does not hold a category")
    F = slice_from_cat(C, args.symmetric)
    return to_json(F), f"unary operad with {len(F.source.colors)} colors over the one-morphism operad"


def cmd_gens(args):
    cofs = gen.generating_cofibrations(args.max_arity, args.symmetric)
    trivs = gen.generating_trivial_cofibrations(args.symmetric)
    out = {
        "kind": "generators",
        "cofibrations": [to_json(F) for F in cofs],
        "trivial_cofibrations": [to_json(F) for F in trivs],
    }
    return out, f"{len(cofs)} generating cofibrations, {len(trivs)} generating trivial cofibration"


def cmd_corner(args):
    sym = True
    F = _functor_arg(args.f, sym)
    G = _functor_arg(args.g, sym)
    ok = corner_map_object_check(F, G)
    classes, corner = corner_map_objects(F, G)
    out = {
        "kind": "corner",
        "injective": ok,
        "pushout_objects": len(corner),
        "target_objects": len(F.target.colors) * len(G.target.colors),
        "essentially_surjective": corner_map_essentially_surjective(F, G),
    }
    if not ok:
        raise _Negative(out, "corner map is not injective on objects")
    return out, f"corner map injective on {len(corner)} pushout objects"


# driver ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opemodel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the axioms of a document")
    s.add_argument("file")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("classify", help="model-structure classes of a functor")
    s.add_argument("file")
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("factor", help="factor a functor")
    s.add_argument("--mode", choices=("trivcof-fib", "cof-trivfib"), required=True)
    s.add_argument("file")
    s.set_defaults(run=cmd_factor)

    s = sub.add_parser("lift", help="solve a lifting square")
    s.add_argument("file")
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(run=cmd_lift)

    s = sub.add_parser("rlp", help="decide a right lifting property")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--budget", type=int, default=None)
    s.set_defaults(run=cmd_rlp)

    s = sub.add_parser("bv", help="Boardman-Vogt tensor product presentation")
    s.add_argument("p")
    s.add_argument("q")
    s.add_argument("--bound", type=int, default=4)
    s.set_defaults(run=cmd_bv)

    s = sub.add_parser("eq", help="bounded equality of two terms")
    s.add_argument("pres")
    s.add_argument("t1")
    s.add_argument("t2")
    s.add_argument("--bound", type=int, required=True)
    s.set_defaults(run=cmd_eq)

    s = sub.add_parser("slice", help="slice over the one-morphism operad")
    s.add_argument("direction", choices=("to-cat", "from-cat"))
    s.add_argument("file")
    s.add_argument("--symmetric", action="store_true")
    s.set_defaults(run=cmd_slice)

    s = sub.add_parser("gens", help="generating (trivial) cofibrations")
    s.add_argument("--max-arity", type=int, default=2)
    s.add_argument("--symmetric", action="store_true")
    s.set_defaults(run=cmd_gens)

    s = sub.add_parser("corner", help="object-level pushout-product corner map")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(run=cmd_corner)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    if getattr(args, "budget", None) is None and hasattr(args, "budget"):
        args.budget = default_budget()
    try:
        report, summary = args.run(args)
        code = 0
    except _Negative as neg:
        report, summary, code = neg.report, neg.summary, 1
    except (OperadError, OSError, ValueError) as e:
        report = {"kind": "error", "error": type(e).__name__, "message": str(e)}
        summary, code = f"error: {type(e).__name__}: {e}", 2
    out.write(dumps(report))
    err.write(summary + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
