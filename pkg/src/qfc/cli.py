"""Command-line surface.

Exit codes: 0 success, 1 parse error, 2 domain error, 3 bound exhausted
(an equivalence search returned unknown).  Reports go to stdout; the json
format is canonical (sorted keys, compact).
"""

import argparse
import json
import os
import sys

from . import serialize
from .base_field import REGISTRY, field
from .correspondence import (
    compose,
    identity_form,
    inverse_form,
    ocl_structure_q,
    phi,
    psi,
    tpd_sign_check,
)
from .base_field import is_fundamental
from .errors import DomainError, ParseError
from .extension import make_extension
from .forms import enumerate_classes_q, reduce_form_q
from .ideals import UNKNOWN, ideal_mul

DEFAULT_BOUND = 1000


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="qfc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_d=True):
        p.add_argument("--base", required=True, choices=sorted(REGISTRY))
        if need_d:
            p.add_argument("--d", required=True, help="discriminant, c0+c1w syntax")
        p.add_argument("--bound", type=int, default=None)
        p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("phi", help="oriented ideal -> quadratic form")
    common(p)
    p.add_argument("--ideal", required=True, help="JSON object or @file")

    p = sub.add_parser("psi", help="quadratic form -> oriented ideal")
    common(p, need_d=False)
    p.add_argument("--form", required=True, help="a,b,c")

    p = sub.add_parser("compose", help="compose two forms")
    common(p, need_d=False)
    p.add_argument("--d", required=False, default=None, help="cross-check orbit")
    p.add_argument("--f1", required=True)
    p.add_argument("--f2", required=True)

    p = sub.add_parser("identity", help="identity form of the extension")
    common(p)

    p = sub.add_parser("inverse", help="inverse form (a, -b, c)")
    common(p, need_d=False)
    p.add_argument("--form", required=True)

    p = sub.add_parser("classtable", help="reduced classes over Q, d < 0")
    common(p)

    p = sub.add_parser("oclcheck", help="oriented class group structure over Q")
    common(p)

    p = sub.add_parser("tpdcheck", help="positivity sign conditions of an ideal")
    common(p)
    p.add_argument("--ideal", required=True)

    p = sub.add_parser("fundcheck", help="fundamental-element test")
    common(p)
    return parser


def _load_ideal_arg(text: str):
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad ideal JSON: {exc}") from exc


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(serialize.canonical_dumps(report))
        return
    for key, value in report.items():
        if isinstance(value, (dict, list)):
            value = serialize.canonical_dumps(value)
        print(f"{key}: {value}")


def _form_report(q) -> dict:
    return {"form": serialize.form_to_json(q), "text": serialize.form_to_text(q)}


def _run(args) -> tuple[int, dict]:
    base = field(args.base)
    bound = args.bound
    if bound is None:
        bound = int(os.environ.get("QFC_BOUND", DEFAULT_BOUND))

    if args.command == "phi":
        ext = make_extension(base, serialize.parse_k_coord(base, args.d))
        ideal = serialize.ideal_from_json(ext, _load_ideal_arg(args.ideal))
        q = phi(ideal.align())
        return 0, _form_report(q)

    if args.command == "psi":
        q = serialize.parse_form_text(base, args.form)
        ideal = psi(q)
        return 0, {
            "extension": serialize.extension_to_json(ideal.ext),
            "ideal": serialize.ideal_to_json(ideal),
        }

    if args.command == "compose":
        q1 = serialize.parse_form_text(base, args.f1)
        q2 = serialize.parse_form_text(base, args.f2)
        if args.d is not None:
            d = serialize.parse_k_coord(base, args.d)
            ext = make_extension(base, d)
            result = phi(ideal_mul(psi(q1, ext), psi(q2, ext)))
        else:
            result = compose(q1, q2)
        report = _form_report(result)
        if base.is_rational and int(result.disc().c0) < 0:
            report["reduced"] = serialize.form_to_text(reduce_form_q(result))
        return 0, report

    if args.command == "identity":
        ext = make_extension(base, serialize.parse_k_coord(base, args.d))
        return 0, _form_report(identity_form(ext))

    if args.command == "inverse":
        q = serialize.parse_form_text(base, args.form)
        return 0, _form_report(inverse_form(q))

    if args.command == "classtable":
        d = serialize.parse_k_coord(base, args.d)
        classes = enumerate_classes_q(d)
        return 0, {
            "d": serialize.kelement_to_json(d),
            "count": len(classes),
            "classes": [serialize.form_to_text(q) for q in classes],
        }

    if args.command == "oclcheck":
        d = serialize.parse_k_coord(base, args.d)
        rep = ocl_structure_q(d)
        report = {"case": rep.case, "h": rep.h, "ocl_order": rep.ocl_order}
        if rep.unit is not None:
            report["fundamental_unit"] = serialize.lelement_to_json(rep.unit)
            report["unit_norm"] = rep.unit_norm
        return 0, report

    if args.command == "tpdcheck":
        ext = make_extension(base, serialize.parse_k_coord(base, args.d))
        ideal = serialize.ideal_from_json(ext, _load_ideal_arg(args.ideal))
        triples = [list(tpd_sign_check(ideal, i)) for i in range(base.r)]
        q = phi(ideal.align())
        return 0, {
            "embeddings": triples,
            "consistent": all(len(set(t)) == 1 for t in triples),
            "is_tpd": q.is_tpd(),
            "eps": list(ideal.eps),
        }

    if args.command == "fundcheck":
        d = serialize.parse_k_coord(base, args.d)
        return 0, {
            "d": serialize.kelement_to_json(d),
            "fundamental": is_fundamental(d),
        }

    raise ParseError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code, report = _run(args)
    except ParseError as exc:
        print(serialize.canonical_dumps({"error": "parse_error", "message": str(exc)}))
        return 1
    except DomainError as exc:
        print(
            serialize.canonical_dumps(
                {"error": exc.code, "message": str(exc)}
            )
        )
        return 2
    fmt = getattr(args, "format", "text")
    if report.get("status") == UNKNOWN:
        _emit(report, fmt)
        return 3
    _emit(report, fmt)
    return code


if __name__ == "__main__":
    sys.exit(main())
