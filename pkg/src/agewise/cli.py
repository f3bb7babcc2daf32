"""Command-line front end.

::

    agewise classify --model weibull:lambda=1,k=0.5 [--transform dus] [--out hazard.csv]
    agewise fit      --family dus-ew --data x.csv
    agewise sample   --model exponential:theta=1 --n 100 --seed 1 [--out x.csv]
    agewise ttt      (--data x.csv | --model SPEC) [--out ttt.csv] [--report r.json]
    agewise hazard   --model nadarajah-gl:alpha=2,lambda=1 [--out h.csv]
    agewise catalog  (NAME | --list)
    agewise preserve [--class IFR] [--operation convolution] [--out table.csv]

``--out`` receives the CSV curve or table (stdout when omitted, except for
``classify`` and ``ttt`` whose JSON report goes to stdout or ``--report``).
Exit status is 0 on success, 1 on a domain error and 2 on a usage error;
errors are printed to stderr as one line of JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import _numerics as num
from .exceptions import AgewiseError

VERBS = ("classify", "fit", "sample", "ttt", "hazard", "catalog", "preserve")


class UsageError(Exception):
    """Bad command line: unknown verb or flag, malformed model spec."""


# -- model specs -------------------------------------------------------------

@dataclass(frozen=True)
class ModelSpec:
    family: str
    params: dict
    kind: str  # fittable | catalog
    variant: str | None = None


def _parse_assignments(text: str, where: str) -> dict:
    params = {}
    if not text:
        return params
    for token in text.split(","):
        if "=" not in token:
            raise UsageError(f"malformed {where} token {token!r}: expected name=value")
        name, _, raw = token.partition("=")
        name = name.strip()
        if not name:
            raise UsageError(f"malformed {where} token {token!r}: empty parameter name")
        if name in params:
            raise UsageError(f"duplicate parameter {name!r} in {where}")
        try:
            params[name] = float(raw)
        except ValueError:
            raise UsageError(f"parameter {name!r} in {where} has non-numeric value {raw!r}") from None
    return params


def parse_model_spec(text: str, variant: str | None = None) -> ModelSpec:
    """Parse ``family:name=value,...`` for a fittable family or a catalog entry."""
    from .catalog import catalog_names, get_entry
    from .inference import family_param_names

    family, sep, rest = text.partition(":")
    family = family.strip()
    if not family:
        raise UsageError(f"malformed model spec {text!r}: missing family")
    params = _parse_assignments(rest, f"model spec {text!r}")
    try:
        names = family_param_names(family)
        kind = "fittable"
    except AgewiseError:
        if family not in catalog_names():
            raise UsageError(f"unknown family {family!r} in model spec {text!r}") from None
        entry = get_entry(family)
        if not entry.has_formula:
            raise UsageError(f"catalog entry {family!r} has no hazard formula")
        if variant is not None and variant != "printed" and variant not in entry.variants:
            raise UsageError(f"{family} has no variant {variant!r}; known: {sorted(entry.variants) or ['printed']}")
        names = entry.params + (("Theta",) if variant == "Theta" else ())
        kind = "catalog"
    if kind == "fittable" and variant is not None:
        raise UsageError("--variant applies to catalog entries only")
    for name in params:
        if name not in names:
            raise UsageError(f"unknown parameter {name!r} for {family}; expected {list(names)}")
    missing = [n for n in names if n not in params]
    if missing:
        raise UsageError(f"missing parameter {missing[0]!r} for {family}; expected {list(names)}")
    return ModelSpec(family, params, kind, variant)


@dataclass(frozen=True)
class TransformSpec:
    name: str
    params: dict


def parse_transform(text: str) -> TransformSpec:
    name, _, rest = text.partition(":")
    name = name.strip().lower()
    params = _parse_assignments(rest, f"transform {text!r}")
    if name == "dus":
        if params:
            raise UsageError(f"transform 'dus' takes no parameters, got {sorted(params)}")
    elif name == "gdus":
        if set(params) != {"alpha"}:
            raise UsageError(f"transform 'gdus' needs exactly alpha=..., got {text!r}")
    else:
        raise UsageError(f"unknown transform {name!r}; known: dus, gdus:alpha=<value>")
    return TransformSpec(name, params)


def build(spec: ModelSpec, transforms=()):
    from .catalog import catalog_model
    from .inference import build_model
    from .transforms import dus, gdus

    if spec.kind == "catalog":
        model = catalog_model(spec.family, spec.params, variant=spec.variant)
    else:
        model = build_model(spec.family, spec.params)
    for t in transforms:
        model = dus(model) if t.name == "dus" else gdus(model, t.params["alpha"])
    return model


# -- request -------------------------------------------------------------------

@dataclass(frozen=True)
class CommandRequest:
    verb: str
    model: ModelSpec | None = None
    transforms: tuple = ()
    options: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}; verbs: {', '.join(VERBS)}")

    def exit(self, status=0, message=None):
        if status:
            raise UsageError((message or "").strip())
        if message:
            sys.stdout.write(message)
        raise SystemExit(0)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="agewise", description="Lifetime-distribution ageing analysis.")
    sub = parser.add_subparsers(dest="verb", parser_class=_Parser, metavar="verb")

    def model_flags(p, required=True):
        p.add_argument("--model", required=required, help="family:name=value,... (baseline, dus-*, gdus-*, dus-ew or catalog entry)")
        p.add_argument("--variant", help="catalog formula variant")
        p.add_argument("--transform", action="append", default=[], help="dus or gdus:alpha=<value>; repeatable, applied left to right")

    def grid_flags(p):
        p.add_argument("--grid-points", type=int, help="grid size (default from AGEWISE_GRID_POINTS, else 512)")

    def out_flags(p, report=False):
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--svg", help="also write the emitted curve as an SVG polyline")
        if report:
            p.add_argument("--report", help="JSON report path (default stdout)")

    p = sub.add_parser("classify", help="classify the hazard shape")
    model_flags(p)
    grid_flags(p)
    out_flags(p, report=True)
    p.add_argument("--style", choices=("mi", "mitra-basu"), default="mi", help="change-point reporting convention")

    p = sub.add_parser("fit", help="maximum-likelihood fit")
    p.add_argument("--family", required=True)
    p.add_argument("--data", required=True, help="single-column CSV of positive reals")
    p.add_argument("--init", help="name=value,... starting parameters")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("sample", help="inverse-transform sampling")
    model_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("ttt", help="scaled TTT curve and ageing-class tests")
    model_flags(p, required=False)
    p.add_argument("--data", help="single-column CSV of positive reals")
    p.add_argument("--hnbue", choices=("standard", "printed"), default="standard")
    out_flags(p, report=True)

    p = sub.add_parser("hazard", help="hazard curve")
    model_flags(p)
    grid_flags(p)
    out_flags(p)

    p = sub.add_parser("catalog", help="catalog reference")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true", help="list entry names")
    p.add_argument("--out")

    p = sub.add_parser("preserve", help="preservation verdict table")
    p.add_argument("--class", dest="class_label")
    p.add_argument("--operation", choices=("coherent", "convolution", "mixture"))
    p.add_argument("--out")
    return parser


def parse_args(argv) -> CommandRequest:
    """Validate ``argv`` into a :class:`CommandRequest` (raises :class:`UsageError`)."""
    argv = list(argv)
    if not argv:
        raise UsageError(f"missing verb; verbs: {', '.join(VERBS)}")
    if not argv[0].startswith("-") and argv[0] not in VERBS:
        raise UsageError(f"unknown verb {argv[0]!r}; verbs: {', '.join(VERBS)}")
    ns = _build_parser().parse_args(argv)
    if ns.verb is None:
        raise UsageError(f"missing verb; verbs: {', '.join(VERBS)}")
    opts = {k: v for k, v in vars(ns).items() if k not in ("verb", "model", "transform", "variant")}
    model = None
    transforms = ()
    if getattr(ns, "model", None) is not None:
        model = parse_model_spec(ns.model, getattr(ns, "variant", None))
        transforms = tuple(parse_transform(t) for t in ns.transform)
    elif getattr(ns, "transform", None):
        raise UsageError("--transform needs --model")
    if ns.verb == "ttt" and (ns.model is None) == (ns.data is None):
        raise UsageError("ttt needs exactly one of --data or --model")
    if ns.verb == "catalog" and not ns.list and not ns.name:
        raise UsageError("catalog needs an entry name or --list")
    if ns.verb == "fit":
        from .inference import family_param_names

        try:
            names = family_param_names(ns.family)
        except AgewiseError as exc:
            raise UsageError(str(exc)) from None
        if ns.init is not None:
            init = _parse_assignments(ns.init, "--init")
            missing = [n for n in names if n not in init]
            if missing or set(init) - set(names):
                raise UsageError(f"--init must set exactly {list(names)}")
            opts["init"] = [init[n] for n in names]
    if ns.verb == "sample" and ns.n < 1:
        raise UsageError(f"--n must be >= 1, got {ns.n}")
    if getattr(ns, "grid_points", None) is not None and ns.grid_points < 16:
        raise UsageError(f"--grid-points must be >= 16, got {ns.grid_points}")
    return CommandRequest(ns.verb, model, transforms, opts)


# -- output helpers --------------------------------------------------------------

def _fmt(v) -> str:
    v = float(v)
    return repr(v) if math.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")


def csv_text(header, rows, comment=None) -> str:
    buf = io.StringIO(newline="")
    if comment:
        buf.write(f"# {comment}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) if isinstance(v, (float, int, np.floating, np.integer)) else str(v) for v in row) + "\n")
    return buf.getvalue()


def svg_polyline(x, y, width=640, height=400, pad=20) -> str:
    """Minimal standalone SVG of one curve (finite points only)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ok = np.isfinite(x) & np.isfinite(y)
    x, y = x[ok], y[ok]
    if x.size == 0:
        pts = ""
    else:
        x0, x1 = float(x.min()), float(x.max())
        y0, y1 = float(y.min()), float(y.max())
        sx = (width - 2 * pad) / (x1 - x0 if x1 > x0 else 1.0)
        sy = (height - 2 * pad) / (y1 - y0 if y1 > y0 else 1.0)
        pts = " ".join(f"{pad + (a - x0) * sx:.3f},{height - pad - (b - y0) * sy:.3f}" for a, b in zip(x, y))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<polyline fill="none" stroke="black" stroke-width="1" points="{pts}"/>\n</svg>\n'
    )


def _write(path, text, stdout):
    if path is None:
        stdout.write(text)
    else:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, allow_nan=True) + "\n"


def read_data(path) -> np.ndarray:
    """Single-column CSV of positive reals; an optional header row and ``#`` comments are skipped."""
    values = []
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or not row[0].strip() or row[0].lstrip().startswith("#"):
                continue
            if len(row) != 1:
                raise UsageError(f"{path}:{lineno}: expected a single column, got {len(row)}")
            try:
                values.append(float(row[0]))
            except ValueError:
                if values or lineno > 1:
                    raise UsageError(f"{path}:{lineno}: non-numeric value {row[0]!r}") from None
    if not values:
        raise UsageError(f"{path}: no data")
    return np.asarray(values, dtype=float)


# -- verbs -----------------------------------------------------------------------

def _grid(model, opts):
    n = opts.get("grid_points")
    return model.grid(n if n is not None else num.default_grid_points())


def _classify(req, stdout):
    from .ageing import classify_shape

    model = build(req.model, req.transforms)
    report = classify_shape(model, _grid(model, req.options))
    curve = report.grid
    doc = report.to_dict(req.options["style"])
    doc["model"] = model.name
    _write(req.options.get("report"), _dump(doc), stdout)
    if req.options.get("out"):
        _write(req.options["out"], csv_text(("t", "hazard"), curve.rows()), stdout)
    if req.options.get("svg"):
        _write(req.options["svg"], svg_polyline(curve.abscissae, curve.values), stdout)


def _fit(req, stdout):
    from .inference import fit_mle

    data = read_data(req.options["data"])
    res = fit_mle(req.options["family"], data, init=req.options.get("init"), seed=req.options["seed"])
    _write(req.options.get("out"), _dump(res.to_dict()), stdout)


def _sample(req, stdout):
    from .inference import sample

    model = build(req.model, req.transforms)
    x = sample(model, req.options["n"], req.options["seed"])
    _write(req.options.get("out"), csv_text(("x",), ((v,) for v in x.tolist())), stdout)


def _ttt(req, stdout):
    from .ttt import empirical_ttt, scaled_ttt, ttt_class_tests

    if req.model is not None:
        curve = scaled_ttt(build(req.model, req.transforms))
    else:
        curve = empirical_ttt(read_data(req.options["data"]))
    report = ttt_class_tests(curve, hnbue=req.options["hnbue"])
    doc = report.to_dict()
    doc["source"] = curve.source
    doc["mu"] = curve.mu
    if req.options.get("out"):
        _write(req.options["out"], curve.to_csv(), stdout)
    if req.options.get("svg"):
        _write(req.options["svg"], svg_polyline(curve.p, curve.phi), stdout)
    _write(req.options.get("report"), _dump(doc), stdout)


def _hazard(req, stdout):
    model = build(req.model, req.transforms)
    g = _grid(model, req.options)
    h = model.hazard(g)
    _write(req.options.get("out"), csv_text(("t", "hazard"), zip(g.tolist(), np.asarray(h).tolist()),
                                            comment=f"model={model.name}"), stdout)
    if req.options.get("svg"):
        _write(req.options["svg"], svg_polyline(g, h), stdout)


def _catalog(req, stdout):
    from .catalog import catalog_names, catalog_reference

    if req.options.get("list"):
        text = "".join(n + "\n" for n in catalog_names())
    else:
        text = _dump(catalog_reference(req.options["name"]))
    _write(req.options.get("out"), text, stdout)


def _preserve(req, stdout):
    from .preservation import preservation_report

    table = preservation_report(req.options.get("class_label"), req.options.get("operation"))
    _write(req.options.get("out"), table.to_csv(), stdout)


_DISPATCH = {
    "classify": _classify,
    "fit": _fit,
    "sample": _sample,
    "ttt": _ttt,
    "hazard": _hazard,
    "catalog": _catalog,
    "preserve": _preserve,
}


def run(request: CommandRequest, stdout=None) -> int:
    """Execute a parsed request; returns the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    _DISPATCH[request.verb](request, stdout)
    return 0


def _error_line(kind: str, exc: Exception) -> str:
    doc = {"error": kind, "type": type(exc).__name__, "message": str(exc)}
    for attr in ("name", "index"):
        value = getattr(exc, attr, None)
        if value is not None:
            doc[attr] = value
    return json.dumps(doc, sort_keys=True) + "\n"


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = sys.argv[1:] if argv is None else argv
    try:
        request = parse_args(argv)
    except UsageError as exc:
        stderr.write(_error_line("usage", exc))
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return run(request, stdout)
    except UsageError as exc:
        stderr.write(_error_line("usage", exc))
        return 2
    except (AgewiseError, ValueError, ArithmeticError, OSError) as exc:
        stderr.write(_error_line("domain", exc))
        return 1


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
