"""Command-line interface.

Exit codes: 0 on success (all requested checks passed), 1 when a
verification fails, 2 on usage or input-syntax errors.  Every command
accepts --json, which wraps the output in the envelope

    {"command": ..., "inputs": ..., "result": ..., "checks": [...]}

All output is byte-deterministic for identical inputs and --seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .autgroup import decompose, group_structure
from .cancellation import build_witness, verify_witness
from .errors import AlgebraError, ParseError
from .expmaps import (
    build_exponential,
    degree,
    derivation,
    verify_exponential,
)
from .grading import homogenize
from .ioformats import (
    format_aut_word,
    format_generator_map,
    format_relem,
    format_ring_spec,
    format_scalar,
    parse_aut_word,
    parse_generator_map,
    parse_poly,
    parse_ring_spec,
    parse_weights,
)
from .isoclass import classify, witness
from .scalars import FieldSpec
from .surface import RingSpec, normal_form


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="dansurf", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON envelope")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--scan-bound", type=int, default=10**4,
                        help="bound for F_p root scans")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normal-form", parents=[common])
    p.add_argument("--ring", required=True)
    p.add_argument("--expr", required=True)

    p = sub.add_parser("exp-build", parents=[common])
    p.add_argument("--ring", required=True)
    p.add_argument("--coeff", action="append", required=True,
                   metavar="E:POLY", help="one F-term, e.g. 1:1+x (repeatable)")

    p = sub.add_parser("exp-verify", parents=[common])
    p.add_argument("--ring", required=True)
    p.add_argument("--map", required=True)

    p = sub.add_parser("exp-degree", parents=[common])
    p.add_argument("--ring", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--expr", required=True)

    p = sub.add_parser("derive", parents=[common])
    p.add_argument("--ring", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--expr", required=True)
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("homogenize", parents=[common])
    p.add_argument("--ring", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--target", default=None)

    p = sub.add_parser("aut-apply", parents=[common])
    p.add_argument("--ring", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--expr", required=True)

    p = sub.add_parser("aut-compose", parents=[common])
    p.add_argument("--ring", required=True)
    p.add_argument("--word", required=True)

    p = sub.add_parser("aut-decompose", parents=[common])
    p.add_argument("--ring", required=True)
    p.add_argument("--word", required=True)

    p = sub.add_parser("aut-structure", parents=[common])
    p.add_argument("--ring", required=True)

    p = sub.add_parser("iso-check", parents=[common])
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = sub.add_parser("cancel-verify", parents=[common])
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--field", default="Q")

    return parser


def _envelope(command, inputs, result, checks):
    return json.dumps(
        {"command": command, "inputs": inputs, "result": result, "checks": checks}
    )


def _build_map(args, spec: RingSpec):
    return parse_generator_map(args.map, spec)


def _cmd_normal_form(args):
    spec = parse_ring_spec(args.ring)
    elem = normal_form(spec, parse_poly(args.expr, spec.field))
    text = format_relem(elem)
    if args.json:
        return 0, _envelope("normal-form",
                            {"ring": format_ring_spec(spec), "expr": args.expr},
                            text, [])
    return 0, text


def _cmd_exp_build(args):
    spec = parse_ring_spec(args.ring)
    coeffs = []
    for item in args.coeff:
        e_text, colon, poly_text = item.partition(":")
        if not colon:
            raise ParseError(f"coefficient {item!r} must look like E:POLY", 0)
        coeffs.append((int(e_text), parse_poly(poly_text, spec.field)))
    phi = build_exponential(spec, coeffs)
    text = format_generator_map(phi.images)
    if args.json:
        return 0, _envelope("exp-build",
                            {"ring": format_ring_spec(spec), "coeff": args.coeff},
                            text, [])
    return 0, text


def _cmd_exp_verify(args):
    spec = parse_ring_spec(args.ring)
    images = _build_map(args, spec)
    report = verify_exponential(spec, images)
    checks = [
        {"name": c.name, "pass": c.passed, "detail": c.detail} for c in report.checks
    ]
    code = 0 if report.passed else 1
    if args.json:
        return code, _envelope("exp-verify",
                               {"ring": format_ring_spec(spec), "map": args.map},
                               "verified" if report.passed else "failed", checks)
    lines = [f"{c.name}: {'PASS' if c.passed else 'FAIL ' + c.detail}" for c in report.checks]
    lines.append("verified" if report.passed else "failed")
    return code, "\n".join(lines)


def _cmd_exp_degree(args):
    spec = parse_ring_spec(args.ring)
    images = _build_map(args, spec)
    phi = _verified_map(spec, images)
    a = normal_form(spec, parse_poly(args.expr, spec.field))
    d = degree(phi, a)
    text = "-inf" if d == float("-inf") else str(int(d))
    if args.json:
        return 0, _envelope("exp-degree",
                            {"ring": format_ring_spec(spec), "map": args.map,
                             "expr": args.expr}, text, [])
    return 0, text


def _verified_map(spec, images):
    from .expmaps import make_exponential

    return make_exponential(spec, images)


def _cmd_derive(args):
    spec = parse_ring_spec(args.ring)
    images = _build_map(args, spec)
    phi = _verified_map(spec, images)
    a = normal_form(spec, parse_poly(args.expr, spec.field))
    result = derivation(phi, args.order, a)
    text = format_relem(result)
    if args.json:
        return 0, _envelope("derive",
                            {"ring": format_ring_spec(spec), "map": args.map,
                             "expr": args.expr, "order": args.order}, text, [])
    return 0, text


def _cmd_homogenize(args):
    spec = parse_ring_spec(args.ring)
    images = _build_map(args, spec)
    phi = _verified_map(spec, images)
    w = parse_weights(args.weights)
    if args.target is not None:
        target = parse_ring_spec(args.target)
    elif spec.free:
        target = spec
    else:
        from .polyring import Poly

        target = RingSpec(spec.field, spec.n, Poly.zero(spec.field), graded=True)
    result = homogenize(phi, w, target)
    lines = [
        f"grdeg(U) = {result.parameter_weight}",
        f"target = {format_ring_spec(target)}",
        f"bar map: {format_generator_map(result.bar.images)}",
    ]
    for g in sorted(result.s_sets):
        lines.append(f"S({g}) = {{{', '.join(str(i) for i in result.s_sets[g])}}}")
    if args.json:
        return 0, _envelope(
            "homogenize",
            {"ring": format_ring_spec(spec), "map": args.map,
             "weights": args.weights, "target": format_ring_spec(target)},
            {"parameter_weight": str(result.parameter_weight),
             "bar_map": format_generator_map(result.bar.images),
             "s_sets": {g: list(v) for g, v in sorted(result.s_sets.items())}},
            [])
    return 0, "\n".join(lines)


def _cmd_aut_apply(args):
    spec = parse_ring_spec(args.ring)
    word = parse_aut_word(args.word, spec)
    a = normal_form(spec, parse_poly(args.expr, spec.field))
    text = format_relem(word.apply(a))
    if args.json:
        return 0, _envelope("aut-apply",
                            {"ring": format_ring_spec(spec), "word": args.word,
                             "expr": args.expr}, text, [])
    return 0, text


def _cmd_aut_compose(args):
    spec = parse_ring_spec(args.ring)
    word = parse_aut_word(args.word, spec)
    text = str(word)
    if args.json:
        return 0, _envelope("aut-compose",
                            {"ring": format_ring_spec(spec), "word": args.word},
                            text, [])
    return 0, text


def _cmd_aut_decompose(args):
    spec = parse_ring_spec(args.ring)
    word = parse_aut_word(args.word, spec)
    mu, eps, g = decompose(word)
    text = format_aut_word(mu, eps, g)
    if args.json:
        return 0, _envelope("aut-decompose",
                            {"ring": format_ring_spec(spec), "word": args.word},
                            text, [])
    return 0, text


def _cmd_aut_structure(args):
    spec = parse_ring_spec(args.ring)
    gs = group_structure(spec, args.scan_bound)
    lines = [
        f"m = {gs.m}",
        f"L = {gs.l_description}"
        + (f" (order {gs.l_order})" if gs.l_order is not None else ""),
        f"H = {gs.h_description}",
        f"N = {gs.n_description}",
    ]
    if args.json:
        return 0, _envelope("aut-structure", {"ring": format_ring_spec(spec)},
                            {"m": gs.m, "l_order": gs.l_order,
                             "l": gs.l_description, "h": gs.h_description,
                             "n": gs.n_description}, [])
    return 0, "\n".join(lines)


def _verdict_json(verdict):
    return {
        "isomorphic": verdict.isomorphic,
        "eta": format_scalar(verdict.eta) if verdict.eta is not None else None,
        "mu": format_scalar(verdict.mu) if verdict.mu is not None else None,
        "reason": verdict.reason,
    }


def _cmd_iso_check(args):
    left = parse_ring_spec(args.left)
    right = parse_ring_spec(args.right)
    verdict = classify(left, right, args.scan_bound)
    payload = _verdict_json(verdict)
    checks = []
    if verdict.isomorphic:
        images = witness(left, right, verdict)
        checks.append({"name": "witness_relation", "pass": True,
                       "detail": format_generator_map(images)})
    if args.json:
        return 0, _envelope("iso-check",
                            {"left": format_ring_spec(left),
                             "right": format_ring_spec(right)},
                            payload, checks)
    return 0, json.dumps(payload)


def _cmd_cancel_verify(args):
    field = FieldSpec.parse(args.field)
    w = build_witness(field, args.n1, args.n2)
    report = verify_witness(w)
    checks = [
        {"name": e.name, "pass": e.passed, "detail": e.detail} for e in report.entries
    ]
    code = 0 if report.passed else 1
    if args.json:
        return code, _envelope("cancel-verify",
                               {"n1": args.n1, "n2": args.n2, "field": field.label},
                               {"passed": report.passed, "s": format_relem(w.s)},
                               checks)
    lines = [f"{e.name}: {'PASS' if e.passed else 'FAIL ' + e.detail}"
             for e in report.entries]
    lines.append(f"s = {format_relem(w.s)}")
    return code, "\n".join(lines)


_HANDLERS = {
    "normal-form": _cmd_normal_form,
    "exp-build": _cmd_exp_build,
    "exp-verify": _cmd_exp_verify,
    "exp-degree": _cmd_exp_degree,
    "derive": _cmd_derive,
    "homogenize": _cmd_homogenize,
    "aut-apply": _cmd_aut_apply,
    "aut-compose": _cmd_aut_compose,
    "aut-decompose": _cmd_aut_decompose,
    "aut-structure": _cmd_aut_structure,
    "iso-check": _cmd_iso_check,
    "cancel-verify": _cmd_cancel_verify,
}


def dispatch(argv) -> tuple:
    """Run one CLI invocation; returns (exit_code, output_text)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return 2, f"usage error: {exc}"
    random.seed(args.seed)
    try:
        return _HANDLERS[args.command](args)
    except ParseError as exc:
        return 2, f"input error: {exc}"
    except AlgebraError as exc:
        return 1, f"error: {exc}"


def main(argv=None) -> int:
    code, text = dispatch(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code == 0 else sys.stderr
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
