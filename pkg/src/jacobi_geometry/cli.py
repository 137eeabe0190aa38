"""Command-line entry point: ``jacobi-geometry run SUITE`` and ``jacobi-geometry emit WHAT``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

import numpy as np

from . import contact_lab, geodesic_lab, metric_lab, moving_frame
from .group_atlas import ChartPoint, MetricParams, OutOfDomain
from .suites import SUITES, RunConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

COORD_LABELS = {
    "H1": ("lambda", "mu", "kappa"),
    "SL2R": ("x", "y", "theta"),
    "X1": ("x", "y"),
    "XJ1": ("x", "y", "p", "q"),
    "ExtXJ1": ("x", "y", "p", "q", "kappa"),
    "GJ1": ("x", "y", "theta", "p", "q", "kappa"),
}
DEFAULT_POINT = {
    "H1": (0.0, 0.0, 0.0),
    "SL2R": (0.0, 1.0, 0.0),
    "X1": (0.0, 1.0),
    "XJ1": (0.0, 1.0, 0.0, 0.0),
    "ExtXJ1": (0.0, 1.0, 0.0, 0.0, 0.0),
    "GJ1": (0.0, 1.0, 0.0, 0.0, 0.0, 0.0),
}


class ConfigError(ValueError):
    pass


def parse_params(text: str | None) -> MetricParams | None:
    if not text:
        return None
    values = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in MetricParams.NAMES:
            raise ConfigError(f"bad parameter {item!r}; use alpha=..,beta=..,gamma=..,delta=..")
        try:
            values[name] = float(value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {name}: {value!r}") from exc
    return MetricParams(**values)


def parse_vector(text: str | None) -> tuple[float, ...] | None:
    if text is None:
        return None
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad coordinate list {text!r}") from exc


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _output_path(args, path: str | None) -> str | None:
    if path is None:
        return None
    if args.out_dir and not os.path.isabs(path):
        return os.path.join(args.out_dir, path)
    return path


def _deliver(args, text: str, path: str | None = None) -> None:
    path = _output_path(args, path if path is not None else args.out)
    if path is None:
        sys.stdout.write(text)
    else:
        write_atomic(path, text)


def _space_params(args, space: str) -> MetricParams:
    params = parse_params(args.params)
    if space == "H1":
        if params is not None and params.active():
            raise ConfigError("H1 takes no metric parameters")
        return MetricParams()
    if params is None:
        params = MetricParams.unit().restrict(space)
    return params.require(space)


def _point(args, space: str) -> tuple[float, ...]:
    point = parse_vector(args.point) or DEFAULT_POINT[space]
    if len(point) != len(COORD_LABELS[space]):
        raise ConfigError(f"{space} points have {len(COORD_LABELS[space])} coordinates")
    return point


def _require_space(args) -> str:
    if args.space is None:
        raise ConfigError("this target needs --space")
    if args.space not in moving_frame.SPACES:
        raise ConfigError(f"unknown space {args.space!r}")
    return args.space


# emit targets


def emit_metric(args) -> str:
    space = _require_space(args)
    params = _space_params(args, space)
    m = metric_lab.metric_at(space, params, _point(args, space)).matrix
    return json.dumps(m.tolist()) + "\n"


def emit_frame(args) -> str:
    space = _require_space(args)
    params = _space_params(args, space)
    packet = moving_frame.closed_coframe(space, _point(args, space), None if space == "H1" else params)
    return json.dumps({
        "space": space,
        "point": list(packet.point.coords),
        "labels": list(moving_frame.FRAME_LABELS[space]),
        "coframe": packet.coframe.tolist(),
        "frame": packet.frame.tolist(),
    }, indent=2) + "\n"


def svg_polyline(xs, ys, width: int = 480, height: int = 360, pad: int = 20) -> str:
    xs, ys = np.asarray(xs, float), np.asarray(ys, float)
    span_x = max(xs.max() - xs.min(), 1e-12)
    span_y = max(ys.max() - ys.min(), 1e-12)
    px = pad + (xs - xs.min()) / span_x * (width - 2 * pad)
    py = height - pad - (ys - ys.min()) / span_y * (height - 2 * pad)
    pts = " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(px, py))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        f'<polyline fill="none" stroke="black" stroke-width="1.5" points="{pts}"/>\n'
        "</svg>\n"
    )


def emit_geodesic(args) -> str:
    space = _require_space(args)
    params = _space_params(args, space)
    start = _point(args, space)
    velocity = parse_vector(args.velocity)
    if velocity is None:
        raise ConfigError("geodesics need --velocity")
    if len(velocity) != len(start):
        raise ConfigError("velocity and point have different lengths")
    path = geodesic_lab.integrate_geodesic(space, params, start, velocity, args.t_max, args.steps)
    if args.svg:
        write_atomic(_output_path(args, args.svg), svg_polyline(path.points[:, 0], path.points[:, 1]))
    if args.format == "svg":
        return svg_polyline(path.points[:, 0], path.points[:, 1])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("t",) + COORD_LABELS[space] + ("energy",))
    for t, p, e in zip(path.times, path.points, path.energies):
        writer.writerow([repr(float(t))] + [repr(float(c)) for c in p] + [repr(float(e))])
    return buf.getvalue()


def emit_geovec_table(args) -> str:
    given = parse_params(args.params) or MetricParams(1.0, 1.0)
    params = MetricParams(alpha=given.get("alpha"), beta=given.get("beta"))
    rng = np.random.default_rng(args.seed)
    rows = []
    for row in range(1, 6):
        x = geodesic_lab.random_table1(rng, row, params)
        rec = {"row": row, **dict(zip("abcdef", x.as_array().tolist()))}
        res = geodesic_lab.geodesic_vector_residual(x, params)
        rec.update({f"residual_{i + 1}": float(v) for i, v in enumerate(res)})
        if args.with_lemma:
            lemma = geodesic_lab.geodesic_lemma_residual(x, params)
            rec.update({f"lemma_{i + 1}": float(v) for i, v in enumerate(lemma)})
        rows.append(rec)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for rec in rows:
            writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in rec.items()})
        return buf.getvalue()
    return json.dumps({"params": params.as_dict(), "rows": rows}, indent=2) + "\n"


def emit_contact_report(args) -> str:
    spaces = [args.space] if args.space else ["SL2R", "ExtXJ1"]
    out = {}
    rng = np.random.default_rng(args.seed)
    for space in spaces:
        if space not in ("SL2R", "ExtXJ1"):
            raise ConfigError("contact reports exist for SL2R and ExtXJ1")
        given = parse_params(args.params)
        params = given.require(space) if given else MetricParams.unit().restrict(space)
        chart = moving_frame.SPACE_CHART[space]
        from .group_atlas import random_point

        pts = [random_point(rng, chart).coords for _ in range(args.samples if args.samples < 20 else 20)]
        rep = contact_lab.sasaki_report(space, params, pts)
        out[space] = {"verdict": rep.verdict, "reason": rep.reason,
                      "residuals": {k: float(v) for k, v in rep.residuals.items()}}
    return json.dumps(out, indent=2) + "\n"


EMITTERS = {
    "metric": emit_metric,
    "frame": emit_frame,
    "geodesic": emit_geodesic,
    "geovec-table": emit_geovec_table,
    "contact-report": emit_contact_report,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", choices=moving_frame.SPACES)
    common.add_argument("--params", help="alpha=..,beta=..,gamma=..,delta=..")
    common.add_argument("--point", help="comma-separated chart coordinates")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, help="override every check tolerance")
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--out", help="output file (default: standard output)")
    common.add_argument("--out-dir", help="directory for relative output paths")
    common.add_argument("--format", choices=("json", "csv", "svg", "text"))

    parser = argparse.ArgumentParser(prog="jacobi-geometry", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", parents=[common], help="run a verification suite")
    run.add_argument("suite", choices=SUITES + ("all",))
    emit = sub.add_parser("emit", parents=[common], help="write a metric, frame, geodesic or table")
    emit.add_argument("what", choices=tuple(EMITTERS))
    emit.add_argument("--velocity", help="initial velocity for geodesics")
    emit.add_argument("--t-max", type=float, default=1.0)
    emit.add_argument("--steps", type=int, default=1000)
    emit.add_argument("--svg", help="also write an SVG projection of a geodesic onto its first two coordinates")
    emit.add_argument("--with-lemma", action="store_true", help="add geodesic-lemma residuals to the table")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.samples < 1:
            raise ConfigError("--samples must be at least 1")
        if args.command == "run":
            if args.format not in (None, "json", "text"):
                raise ConfigError("suite reports are json or text")
            cfg = RunConfig(args.space, parse_params(args.params), args.seed, args.tol, args.samples, args.out,
                            args.format or "json")
            report = run_suite(cfg, args.suite)
            _deliver(args, report.to_text() if args.format == "text" else report.to_json())
            if args.out is not None:
                sys.stderr.write(report.to_text().splitlines()[-1] + "\n")
            return EXIT_OK if report.passed else EXIT_FAIL
        if args.what == "geodesic" and args.format not in (None, "csv", "svg"):
            raise ConfigError("geodesics are written as csv or svg")
        if args.what in ("metric", "frame", "contact-report") and args.format not in (None, "json"):
            raise ConfigError(f"{args.what} is written as json")
        if args.what == "geovec-table" and args.format not in (None, "json", "csv"):
            raise ConfigError("the table is written as json or csv")
        _deliver(args, EMITTERS[args.what](args))
        return EXIT_OK
    except (ConfigError, OutOfDomain, ValueError) as exc:
        sys.stderr.write(f"jacobi-geometry: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
