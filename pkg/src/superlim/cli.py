"""Command-line interface.

Exit codes: 0 when everything verified, 1 on a verification failure, 2 on
usage errors (bad arguments, unknown names, unparsable input).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from .catalog import CLASS_LABEL, contraction_spec, covariant_sextic, potential, system_id
from .contraction import A_TO_O_RESCALING, default_grid, diagram_dot, potential_limit_check, run_all, run_contraction
from .errors import ParseError, SuperlimError, UnsupportedFormat, UnsupportedPoint
from .invariants import classify, system_label
from .mobius import stereographic
from .recovery import assemble_q, recover, recover_qsr, weight_vectors
from .series import DEFAULT_TRUNC
from .sextic import CLUSTER_RADIUS, Sextic, roots

SCHEMA = "superlim/1"
MIN_TRUNC = 24

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(SuperlimError):
    pass


def parse_complex(text: str) -> complex:
    """``"2"``, ``"-i"``, ``"1+2i"``, ``"0.5-3.5i"``."""
    s = text.strip().replace(" ", "").replace("I", "i").replace("j", "i")
    if not s:
        raise ParseError("empty number")
    s = re.sub(r"(^|[+-])i", r"\g<1>1i", s)
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise ParseError(f"cannot parse {text!r} as a complex number") from None


def parse_point(text: str) -> tuple:
    """Three coordinates: ``"x1,x2,x3"``, ``"a+bi;c+di;e+fi"`` or ``"re,im;re,im;re,im"``."""
    if ";" in text:
        parts = text.split(";")
        vals = []
        for p in parts:
            if "," in p:
                re_, im_ = (float(v) for v in p.split(","))
                vals.append(complex(re_, im_))
            else:
                vals.append(parse_complex(p))
    else:
        vals = [parse_complex(p) for p in text.split(",")]
    if len(vals) != 3:
        raise ParseError(f"a point needs 3 coordinates, got {len(vals)} in {text!r}")
    return tuple(vals)


def parse_floats(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ParseError(f"cannot parse {text!r} as a list of numbers") from None


def truncation(args) -> int:
    trunc = args.trunc
    if trunc is None:
        env = os.environ.get("SUPERLIM_TRUNC")
        trunc = int(env) if env else DEFAULT_TRUNC
    if trunc < MIN_TRUNC:
        raise UsageError(f"truncation order must be at least {MIN_TRUNC}, got {trunc}")
    return trunc


def _cx(z) -> list:
    return [complex(z).real, complex(z).imag]


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        out = json.dumps({"schema": SCHEMA, **payload}, indent=2) + "\n"
    else:
        out = text.rstrip("\n") + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


# ---------------------------------------------------------------------------
# commands

def cmd_classify(args) -> int:
    if args.poly:
        try:
            data = json.loads(Path(args.poly).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read polynomial {args.poly}: {exc}") from None
        q = Sextic.from_json(data)
        source = {"poly": args.poly}
        sys_lab = None
    elif args.system:
        sid = system_id(args.system)
        x0 = parse_point(args.point) if args.point else potential(sid).default_point
        try:
            q = covariant_sextic(sid, x0)
        except UnsupportedPoint:
            q = assemble_q(weight_vectors(recover_qsr(sid, x0)[0]))
        source = {"system": sid.value, "point": [_cx(v) for v in x0]}
        sys_lab = system_label(sid, x0)
    else:
        raise UsageError("classify needs --poly or --system")
    label = classify(q, args.radius)
    clusters = [] if q.is_zero() else roots(q, args.radius)
    root_list = [
        {
            "value": "inf" if c.at_infinity else _cx(c.value),
            "multiplicity": c.multiplicity,
            "sphere": list(stereographic(c.value)),
        }
        for c in clusters
    ]
    payload = {**source, "coeffs": q.to_json()["coeffs"], "label": label.to_json(), "roots": root_list}
    lines = [f"{label}, roots: " + ", ".join(str(c) for c in clusters) if clusters else f"{label}"]
    if sys_lab is not None:
        payload["system_label"] = sys_lab.to_json()
        lines.append(f"system class: {sys_lab.bracket} (catalog {CLASS_LABEL[sid]})")
    for c in clusters:
        X, Y, Z = stereographic(c.value)
        lines.append(f"  {c}  sphere ({X:+.6f}, {Y:+.6f}, {Z:+.6f})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _report_text(r) -> str:
    s = "-" if r.match_scalar is None else f"{r.match_scalar.real:.12g}{r.match_scalar.imag:+.3g}i"
    d = "-" if r.defect is None else f"{r.defect:.2e}"
    line = f"{r.status.upper():9s} {r.name:20s} {r.source_label:>10s} -> {r.target_label:<10s} scalar {s}  defect {d}"
    if r.limit is not None:
        line += f"\n          limit: {r.limit}"
    if r.detail:
        line += f"\n          {r.detail}"
    return line


def cmd_contract(args) -> int:
    trunc = truncation(args)
    if args.all:
        reports = run_all(trunc)
    elif args.name:
        reports = [run_contraction(contraction_spec(args.name), trunc)]
    else:
        raise UsageError("contract needs --name or --all")
    ok = all(r.passed for r in reports)
    payload = {"truncation": trunc, "all_pass": ok, "reports": [r.to_json() for r in reports]}
    text = "\n".join(_report_text(r) for r in reports)
    text += f"\n{sum(r.passed for r in reports)}/{len(reports)} pass"
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_all(args) -> int:
    args.all, args.name = True, None
    return cmd_contract(args)


def cmd_recover(args) -> int:
    sid = system_id(args.system)
    x0 = parse_point(args.point) if args.point else potential(sid).default_point
    rep = recover(sid, x0)
    ok = rep.residual <= args.tol and (rep.defect is None or rep.defect <= args.tol)
    lines = [
        f"system {rep.system} at {tuple(rep.point)}",
        f"residual {rep.residual:.3e}",
        f"assembled q: {rep.assembled}",
    ]
    if rep.catalog is not None:
        lines.append(f"catalog q:   {rep.catalog}")
        lines.append(f"match scalar {rep.match_scalar:.12g}  defect {rep.defect:.3e}")
    else:
        lines.append("no closed-form catalog sextic at this point")
    _emit(args, {**rep.to_json(), "pass": ok}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_potential_limit(args) -> int:
    rescaling = parse_floats(args.rescaling) if args.rescaling else list(A_TO_O_RESCALING)
    if len(rescaling) != 5:
        raise UsageError("rescaling needs five exponents")
    rescaling = [int(r) if float(r).is_integer() else r for r in rescaling]
    eps = parse_floats(args.eps)
    rep = potential_limit_check(args.name, rescaling, eps, default_grid(args.grid_n), trunc=truncation(args))
    lines = [f"{rep['name']} rescaling {rep['rescaling']}"]
    for e, d in zip(rep["eps"], rep["deviations"]):
        lines.append(f"  eps {e:g}: max deviation {d:.6e}")
    lines.append("  ratios " + ", ".join(f"{r:.4g}" for r in rep["ratios"]))
    lines.append(f"  exact limit deviation {rep['exact_limit_deviation']:.3e}")
    lines.append(rep["status"].upper())
    _emit(args, rep, "\n".join(lines))
    return EXIT_OK if rep["status"] == "pass" else EXIT_FAIL


def cmd_diagram(args) -> int:
    if args.format != "dot":
        raise UnsupportedFormat(f"diagram format {args.format!r} is not supported (only dot)")
    text = diagram_dot()
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superlim", description="Classify and verify contractions of superintegrable systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=True):
        if fmt:
            sp.add_argument("--format", choices=["text", "json"], default="text")
        sp.add_argument("--out", help="write the report to a file instead of stdout")

    sp = sub.add_parser("classify", help="root structure of a sextic")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help='JSON file {"coeffs": [[re, im] x 7]}')
    src.add_argument("--system", help="catalog system id")
    sp.add_argument("--point", help='"x1,x2,x3" or "a+bi;c+di;e+fi"')
    sp.add_argument("--radius", type=float, default=CLUSTER_RADIUS, help="chordal clustering radius")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    for name, func in (("contract", cmd_contract), ("verify-all", cmd_verify_all)):
        sp = sub.add_parser(name, help="run contraction records")
        if name == "contract":
            g = sp.add_mutually_exclusive_group(required=True)
            g.add_argument("--name", help="record name, e.g. VII-to-A")
            g.add_argument("--all", action="store_true")
        sp.add_argument("--trunc", type=int, help="series truncation order in delta = eps^(1/12)")
        common(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("recover-q", help="recover the covariant sextic from the potential")
    sp.add_argument("--system", required=True)
    sp.add_argument("--point")
    sp.add_argument("--tol", type=float, default=1e-8)
    common(sp)
    sp.set_defaults(func=cmd_recover)

    sp = sub.add_parser("potential-limit", help="potential-level limit check")
    sp.add_argument("--name", default="A-to-O")
    sp.add_argument("--rescaling", help="five eps exponents, default 4,3,3,3,2")
    sp.add_argument("--eps", default="1e-2,1e-3")
    sp.add_argument("--grid-n", type=int, default=5)
    sp.add_argument("--trunc", type=int)
    common(sp)
    sp.set_defaults(func=cmd_potential_limit)

    sp = sub.add_parser("diagram", help="emit the limiting diagram")
    sp.add_argument("--format", default="dot")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_diagram)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "radius", 1.0) <= 0:
        parser.error("--radius must be positive")
    try:
        return args.func(args)
    except (SuperlimError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
