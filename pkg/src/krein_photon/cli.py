"""``krein-photon`` command line.

Exit codes: 0 success, 1 a verification check failed, 2 input could not be
parsed, 3 an input lies outside the domain (pole, ``r ≤ 0``, off-cone,
singular group element), 4 a strict-mode quadrature accuracy violation.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from pathlib import Path

import numpy as np

from . import cone, field, krein, sl2c, transversal, verify
from .errors import (
    DegenerateCoordinatesError,
    DomainError,
    NotUnimodularError,
    QuadratureAccuracyError,
    QuadratureAccuracyWarning,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DOMAIN, EXIT_ACCURACY = 0, 1, 2, 3, 4
SCHEMA = 1
OBJECTS = ("beta", "V", "B", "sqrtB", "frame", "Jp", "theta", "wigner")
PRODUCTS = ("krein", "hilbert", "position-krein")
CROSS_CHECK_TOL = 1e-3


class UsageError(ValueError):
    """Malformed command-line input (exit code 2)."""


# ------------------------------------------------------------------ parsing


def _floats(text: str, what: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}: expected comma-separated reals") from None
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{what} must be finite")
    return vals


def parse_momentum(text: str) -> np.ndarray:
    """``p0,p1,p2,p3`` (checked against the cone) or spatial ``p1,p2,p3`` (lifted)."""
    vals = _floats(text, "momentum")
    if len(vals) == 3:
        return cone.cone_point(np.array(vals))
    if len(vals) == 4:
        return cone.validate_cone(np.array(vals))
    raise UsageError(f"momentum needs 3 or 4 components, got {len(vals)}")


def parse_spacetime(text: str) -> np.ndarray:
    vals = _floats(text, "spacetime point")
    if len(vals) != 4:
        raise UsageError(f"spacetime point needs 4 components t,x,y,z, got {len(vals)}")
    return np.array(vals)


_ONE_PARAM = {
    "rot12": sl2c.alpha12,
    "rot13": sl2c.alpha13,
    "rot23": sl2c.alpha23,
    "boost03": sl2c.alpha03,
}


def parse_alpha(text: str) -> tuple[np.ndarray, dict]:
    """Group element from ``kind:params``; returns the matrix and parse metadata.

    ``raw`` takes the entries ``a, b, c, d`` of ``[[a, b], [c, d]]`` either as
    eight reals (re, im pairs) or as four Python complex literals. The matrix
    is rescaled to unit determinant and the size of that change is reported.
    """
    kind, sep, body = text.partition(":")
    if not sep:
        raise UsageError(f"group element {text!r} must look like kind:params")
    meta = {"kind": kind}
    if kind in _ONE_PARAM:
        vals = _floats(body, kind)
        if len(vals) != 1:
            raise UsageError(f"{kind} takes one parameter")
        return _ONE_PARAM[kind](vals[0]), meta
    if kind == "little":
        vals = _floats(body, kind)
        if len(vals) != 3:
            raise UsageError("little takes z_re,z_im,phi")
        return sl2c.little_group_element(complex(vals[0], vals[1]), vals[2]), meta
    if kind == "raw":
        parts = [v.strip() for v in body.split(",") if v.strip()]
        try:
            if len(parts) == 8:
                re_im = [float(v) for v in parts]
                entries = [complex(re_im[2 * k], re_im[2 * k + 1]) for k in range(4)]
            elif len(parts) == 4:
                entries = [complex(v) for v in parts]
            else:
                raise UsageError("raw takes 8 reals or 4 complex entries")
        except ValueError:
            raise UsageError(f"cannot parse raw entries {body!r}") from None
        a = np.array(entries, dtype=complex).reshape(2, 2)
        if not np.all(np.isfinite(a)):
            raise UsageError("raw entries must be finite")
        proj = sl2c.project_unimodular(a)
        meta["det_before"] = _jsonable(np.linalg.det(a))
        meta["correction"] = float(np.max(np.abs(proj - a)))
        return proj, meta
    raise UsageError(f"unknown group element kind {kind!r} (rot12, rot13, rot23, boost03, little, raw)")


def _load_packet(path: str) -> field.PacketSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read packet file {path!r}: {exc.strerror}") from None
    try:
        return field.PacketSpec.from_json(text)
    except (DomainError, DegenerateCoordinatesError):
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad packet file {path!r}: {exc}") from None


# ------------------------------------------------------------------ output


def _round(x: float, precision: int | None) -> float:
    return x if precision is None else float(f"{x:.{precision}g}")


def _jsonable(x, precision: int | None = None):
    """Nested lists with complex numbers as ``[re, im]`` (real arrays stay real)."""
    a = np.asarray(x)
    if np.iscomplexobj(a):
        if a.ndim == 0:
            z = complex(a)
            return [_round(z.real, precision), _round(z.imag, precision)]
        return [_jsonable(v, precision) for v in a]
    if a.ndim == 0:
        return _round(float(a), precision)
    return [_jsonable(v, precision) for v in a]


def _emit(doc: dict, out: str | None = None) -> None:
    text = json.dumps({"schema": SCHEMA, **doc}, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


# -------------------------------------------------------------------- eval


def _eval_object(name: str, p: np.ndarray, alpha, precision: int) -> dict:
    def need_alpha():
        if alpha is None:
            raise UsageError(f"eval {name} needs --alpha")
        return alpha

    meta: dict = {}
    if name == "beta":
        value = cone.section(p)
    elif name == "V":
        value = sl2c.lorentz_of(need_alpha())
    elif name == "B":
        value = krein.gram(p)
        meta["eigenvalues"] = _jsonable(krein.frame(p, pole_fallback=True).eigenvalues(), precision)
    elif name == "sqrtB":
        value = krein.gram_sqrt(p)
        meta["eigenvalues"] = _jsonable(np.sqrt(krein.frame(p, pole_fallback=True).eigenvalues()), precision)
    elif name == "frame":
        f = krein.frame(p)
        value = f.matrix()
        meta["columns"] = list(krein.FRAME_LABELS)
        meta["eigenvalues"] = _jsonable(f.eigenvalues(), precision)
    elif name == "Jp":
        value = krein.fiber_symmetry(p)
    elif name == "theta":
        t = transversal.theta(need_alpha(), p)
        value = np.array([float(t.cos), float(t.sin)])
        meta["cos"] = _round(float(t.cos), precision)
        meta["sin"] = _round(float(t.sin), precision)
        meta["theta"] = _round(math.atan2(float(t.sin), float(t.cos)), precision)
    elif name == "wigner":
        value = cone.wigner_element(need_alpha(), p)
        z, phi = sl2c.little_group_params(value)
        meta["z"] = _jsonable(z, precision)
        meta["phi"] = _round(float(phi), precision)
    else:  # argparse restricts the choices
        raise UsageError(f"unknown object {name!r}")
    return {"value": value, "meta": meta}


def cmd_eval(args) -> int:
    p = parse_momentum(args.p)
    alpha, alpha_meta = parse_alpha(args.alpha) if args.alpha else (None, None)
    res = _eval_object(args.object, p, alpha, args.precision)
    if args.json:
        doc = {"command": "eval", "object": args.object, "p": _jsonable(p), "value": _jsonable(res["value"], args.precision), "meta": res["meta"]}
        if alpha_meta is not None:
            doc["alpha"] = {**alpha_meta, "matrix": _jsonable(alpha, args.precision)}
        _emit(doc)
        return EXIT_OK
    with np.printoptions(precision=args.precision, suppress=True, linewidth=120):
        print(f"{args.object} at p = {np.array2string(p)}")
        if alpha_meta and "correction" in alpha_meta:
            print(f"raw alpha projected to det 1, |correction| = {alpha_meta['correction']:.3e}")
        print(np.array2string(np.asarray(res["value"])))
    for key, val in res["meta"].items():
        print(f"{key}: {val}")
    return EXIT_OK


# ------------------------------------------------------------------ verify


def cmd_verify(args) -> int:
    if args.samples is not None and args.samples < 0:
        raise UsageError("--samples must be non-negative")
    report = verify.run(args.suite, seed=args.seed, samples=args.samples, timing=args.timing)
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    for note in report.warnings:
        print(f"warning: {note}", file=sys.stderr)
    if not report.passed:
        for name in report.failing():
            print(f"FAILED: {name}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ----------------------------------------------------------------- product


def _quad_meta(q: field.ConeQuadrature) -> dict:
    return {"scheme": q.scheme, "nodes": len(q), **{k: v for k, v in q.config.items() if k != "scheme"}}


def _position_product(spec_a, spec_b, t: float, strict: bool) -> tuple[complex, dict]:
    desk = field.packet_desk(spec_a, spec_b, t=t)
    box = desk["momentum_box"]
    q = field.ConeQuadrature.cartesian(box["center"], box["half_width"], box["n"])
    pa = field.to_position(spec_a.build(), q, strict=strict)
    pb = field.to_position(spec_b.build(), q, strict=strict)
    val = field.position_krein_product(pa, pb, t, desk["xgrid"], strict=strict)
    xs = desk["xgrid"][0]
    meta = {
        "momentum": _quad_meta(q),
        "position": {"t": t, "points_per_axis": len(xs), "spacing": float(xs[1] - xs[0]), "extent": [float(xs[0]), float(xs[-1])]},
    }
    return val, meta


def cmd_product(args) -> int:
    spec_a, spec_b = _load_packet(args.a), _load_packet(args.b)
    doc: dict = {"command": "product", "kind": args.kind}
    status = EXIT_OK
    if args.kind == "position-krein":
        val, meta = _position_product(spec_a, spec_b, args.t, args.strict)
    else:
        a, b = spec_a.build(), spec_b.build()
        q = field.ConeQuadrature.covering(a, b)
        fn = field.krein_product if args.kind == "krein" else field.hilbert_product
        val = fn(a, b, q, strict=args.strict)
        meta = {"momentum": _quad_meta(q)}
    doc["value"] = _jsonable(complex(val))
    doc["quadrature"] = meta
    if args.cross_check:
        a, b = spec_a.build(), spec_b.build()
        desk = field.packet_desk(spec_a, spec_b, t=args.t)
        box = desk["momentum_box"]
        q = field.ConeQuadrature.cartesian(box["center"], box["half_width"], box["n"])
        mom = field.krein_product(a, b, q, strict=args.strict)
        pos, _ = _position_product(spec_a, spec_b, args.t, args.strict)
        scale = math.sqrt(field.hilbert_product(a, a, q).real * field.hilbert_product(b, b, q).real)
        rel = abs(pos - mom) / scale
        doc["cross_check"] = {
            "momentum": _jsonable(complex(mom)),
            "position": _jsonable(complex(pos)),
            "relative_discrepancy": rel,
            "tolerance": CROSS_CHECK_TOL,
            "passed": bool(rel <= CROSS_CHECK_TOL),
        }
        if rel > CROSS_CHECK_TOL:
            status = EXIT_FAIL
    if args.json:
        _emit(doc)
    else:
        z = complex(val)
        print(f"{args.kind} product = {z.real:.{args.precision}g} {z.imag:+.{args.precision}g}j")
        print(json.dumps(meta, sort_keys=True))
        if "cross_check" in doc:
            cc = doc["cross_check"]
            print(f"momentum/position relative discrepancy = {cc['relative_discrepancy']:.3e} (tol {CROSS_CHECK_TOL:g})")
    return status


# --------------------------------------------------------------- transform


def cmd_transform(args) -> int:
    spec = _load_packet(args.packet)
    phi = spec.build()
    if not args.x:
        raise UsageError("transform needs at least one --x t,x,y,z")
    xs = np.array([parse_spacetime(x) for x in args.x])
    q = field.ConeQuadrature.covering(phi)
    pos = field.to_position(phi, q, strict=args.strict)
    vals = pos(xs)
    if args.json:
        _emit({"command": "transform", "points": _jsonable(xs), "values": _jsonable(vals, args.precision), "quadrature": _quad_meta(q)})
        return EXIT_OK
    with np.printoptions(precision=args.precision, suppress=True, linewidth=160):
        for x, v in zip(xs, vals):
            print(f"{np.array2string(x)} -> {np.array2string(v)}")
    return EXIT_OK


# -------------------------------------------------------------------- main


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="krein-photon", description="Krein-space single-photon toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate a closed-form object at a cone point")
    e.add_argument("object", choices=OBJECTS)
    e.add_argument("--p", required=True, help="cone point p0,p1,p2,p3 or spatial p1,p2,p3")
    e.add_argument("--alpha", help="group element: rot12:θ rot13:θ rot23:θ boost03:λ little:zr,zi,φ raw:...")
    e.add_argument("--precision", type=int, default=10)
    e.add_argument("--json", action="store_true", help="emit a JSON document")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run a seeded verification suite")
    v.add_argument("suite", choices=(*verify.SUITES, "all"))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=None, help="draws per randomized check (suite default if omitted)")
    v.add_argument("--timing", action="store_true", help="include wall time (makes output run-dependent)")
    v.add_argument("--out", help="write the JSON report here instead of stdout")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("product", help="inner products of two packets given as JSON files")
    p.add_argument("kind", choices=PRODUCTS)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--strict", action="store_true", help="quadrature accuracy problems are errors (exit 4)")
    p.add_argument("--cross-check", action="store_true", help="also compare momentum and position Krein products")
    p.add_argument("--t", type=float, default=0.0, help="time slice for position products")
    p.add_argument("--precision", type=int, default=12)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_product)

    t = sub.add_parser("transform", help="evaluate a packet in position space")
    t.add_argument("packet")
    t.add_argument("--x", action="append", help="spacetime point t,x,y,z (repeatable)")
    t.add_argument("--strict", action="store_true")
    t.add_argument("--precision", type=int, default=8)
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_transform)
    return ap


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "precision", 1) is not None and getattr(args, "precision", 1) < 1:
            raise UsageError("--precision must be at least 1")
        with warnings.catch_warnings():
            warnings.simplefilter("default", QuadratureAccuracyWarning)
            return args.func(args)
    except UsageError as exc:
        print(f"krein-photon: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, DegenerateCoordinatesError, NotUnimodularError) as exc:
        print(f"krein-photon: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except QuadratureAccuracyError as exc:
        print(f"krein-photon: accuracy error: {exc}", file=sys.stderr)
        return EXIT_ACCURACY


if __name__ == "__main__":
    sys.exit(main())
