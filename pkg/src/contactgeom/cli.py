"""Command-line front end.

Usage::

    geom list-surfaces
    geom angles --surface clifford --grid 16 --format csv --out angles.csv
    geom verify --surface generalized-clifford --grid 64 --format json
    geom export-frames --surface my_surface.txt --grid 8 --format csv

Exit codes: 0 success, 1 identity outside tolerance, 2 configuration error,
3 immersion validation failure.
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click
import numpy as np

from . import __version__
from ._validation import check_grid_size, check_identities, resolve_surface
from .dsl import DSLError
from .geometry import SurfaceSampling
from .identities import IDENTITIES, verify
from .surface import BUILTINS, validate_immersion

SCHEMA = "1"
EXIT_OK, EXIT_TOLERANCE, EXIT_CONFIG, EXIT_INVALID = 0, 1, 2, 3


class CliExit(Exception):
    def __init__(self, code, message):
        self.code, self.message = code, message
        super().__init__(message)


def fmt(x) -> str:
    """Locale-independent, fixed 12 significant digits; blank for undefined."""
    if x is None or (isinstance(x, float) and np.isnan(x)):
        return ""
    return f"{float(x):.11e}"


def _json_float(x):
    if x is None:
        return None
    x = float(x)
    return None if np.isnan(x) else x


def _load(surface, grid):
    try:
        size = check_grid_size(grid)
    except ValueError as exc:
        raise CliExit(EXIT_CONFIG, str(exc)) from None
    try:
        imm = resolve_surface(surface)
    except (ValueError, DSLError) as exc:
        raise CliExit(EXIT_CONFIG, str(exc)) from None
    report = validate_immersion(imm, size)
    if not report.passed:
        raise CliExit(EXIT_INVALID, report.failures()[0])
    return imm, SurfaceSampling(imm, size)


def _emit(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv(header, rows, trailer=()):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    for line in trailer:
        buf.write(line + "\n")
    return buf.getvalue()


def _json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def _config(**kw):
    return {k: v for k, v in kw.items()}


def _run(fn, **kw):
    try:
        code = fn(**kw)
    except CliExit as exc:
        click.echo(f"error: {exc.message}", err=True)
        sys.exit(exc.code)
    sys.exit(code)


# -- commands ----------------------------------------------------------------

def angles_command(surface, grid, fmt_name, out, degrees):
    imm, s = _load(surface, grid)
    u1, u2 = s.grid.u1.ravel(), s.grid.u2.ravel()
    beta, alpha = s.frames.beta.ravel(), s.frames.alpha.ravel()
    scale = (180.0 / np.pi) if degrees else 1.0
    unit = "deg" if degrees else "rad"

    def stats(values):
        ok = values[~np.isnan(values)]
        if ok.size == 0:
            return {"min": None, "max": None, "mean": None, "defined": 0}
        return {"min": float(ok.min()), "max": float(ok.max()), "mean": float(ok.mean()), "defined": int(ok.size)}

    summary = {"beta": stats(beta * scale), "alpha": stats(alpha * scale)}
    if fmt_name == "csv":
        rows = [(fmt(a), fmt(b), fmt(c * scale), fmt(d * scale)) for a, b, c, d in zip(u1, u2, beta, alpha)]
        trailer = ["# summary,quantity,min,max,mean,defined"]
        for q, st in summary.items():
            trailer.append(f"# summary,{q},{fmt(st['min'])},{fmt(st['max'])},{fmt(st['mean'])},{st['defined']}")
        text = _csv(["u1", "u2", f"beta_{unit}", f"alpha_{unit}"], rows, trailer)
    else:
        text = _json({
            "schema": SCHEMA,
            "version": __version__,
            "config": _config(command="angles", surface=str(surface), grid=s.size, format=fmt_name, degrees=degrees),
            "unit": unit,
            "cells": [
                {"u1": float(a), "u2": float(b), "beta": _json_float(c * scale), "alpha": _json_float(d * scale)}
                for a, b, c, d in zip(u1, u2, beta, alpha)
            ],
            "summary": summary,
        })
    _emit(text, out)
    return EXIT_OK


def verify_command(surface, grid, fmt_name, out, identities, tolerance):
    try:
        names = check_identities(identities, IDENTITIES)
    except ValueError as exc:
        raise CliExit(EXIT_CONFIG, str(exc)) from None
    imm, s = _load(surface, grid)
    reports = verify(s, identities=names, tolerance=tolerance)
    passed = all(r.passed for r in reports)
    vacuous = [r.identity for r in reports if r.vacuous]
    if fmt_name == "csv":
        header = ["identity", "resolution", "evaluated", "skipped", "max_abs", "mean_abs", "rms",
                  "tolerance", "passed", "vacuous"]
        rows = [
            (r.identity, r.resolution, r.evaluated,
             ";".join(f"{k}={v}" for k, v in r.skipped.items() if v),
             fmt(r.max_abs), fmt(r.mean_abs), fmt(r.rms), fmt(r.tolerance),
             str(r.passed).lower(), str(r.vacuous).lower())
            for r in reports
        ]
        text = _csv(header, rows, [f"# summary,passed={str(passed).lower()},vacuous={';'.join(vacuous)}"])
    else:
        text = _json({
            "schema": SCHEMA,
            "version": __version__,
            "config": _config(command="verify", surface=str(surface), grid=s.size, format=fmt_name,
                              identities=names, tolerance=tolerance),
            "reports": [r.to_dict() for r in reports],
            "summary": {"passed": passed, "vacuous": vacuous},
        })
    _emit(text, out)
    for r in reports:
        if r.vacuous:
            click.echo(f"{r.identity}: vacuous (all {r.resolution ** 2} cells skipped)", err=True)
        elif not r.passed:
            click.echo(f"{r.identity}: FAILED max_abs={r.max_abs:.3e} > tol={r.tolerance:.3e}", err=True)
    return EXIT_OK if passed else EXIT_TOLERANCE


def frame_columns(n: int) -> list:
    cols = ["u1", "u2", "beta", "alpha", "legendrian", "mode"]
    for k in range(1, 2 * n + 2):
        for c in range(1, n + 2):
            cols += [f"e{k}_{c}_re", f"e{k}_{c}_im"]
    return cols


def export_frames_command(surface, grid, fmt_name, out, degrees):
    from .frames import MODE_NAMES

    imm, s = _load(surface, grid)
    fr = s.frames
    scale = (180.0 / np.pi) if degrees else 1.0
    N2 = s.size * s.size
    darboux = [np.asarray(e).reshape(N2, -1) for e in fr.darboux]
    u1, u2 = s.grid.u1.ravel(), s.grid.u2.ravel()
    beta, alpha = fr.beta.ravel() * scale, fr.alpha.ravel() * scale
    leg, mode = fr.legendrian.ravel(), fr.mode.ravel()
    cols = frame_columns(imm.n)
    records = []
    for i in range(N2):
        comps = []
        for e in darboux:
            for z in e[i]:
                comps += [z.real, z.imag]
        records.append((u1[i], u2[i], beta[i], alpha[i], bool(leg[i]), MODE_NAMES[int(mode[i])], comps))
    if fmt_name == "csv":
        rows = [
            [fmt(a), fmt(b), fmt(c), fmt(d), str(e).lower(), m] + [fmt(x) for x in comps]
            for a, b, c, d, e, m, comps in records
        ]
        text = _csv(cols, rows)
    else:
        rows = []
        for a, b, c, d, e, m, comps in records:
            row = dict(zip(cols[:6], [float(a), float(b), _json_float(c), _json_float(d), e, m]))
            row.update(zip(cols[6:], [_json_float(x) for x in comps]))
            rows.append(row)
        text = _json({
            "schema": SCHEMA,
            "version": __version__,
            "config": _config(command="export-frames", surface=str(surface), grid=s.size, format=fmt_name,
                              degrees=degrees),
            "columns": cols,
            "rows": rows,
        })
    _emit(text, out)
    return EXIT_OK


# -- click wiring ------------------------------------------------------------

def _common(f):
    f = click.option("--out", default="-", show_default=True, help="Output path ('-' for stdout).")(f)
    f = click.option("--format", "fmt_name", type=click.Choice(["csv", "json"]), default="csv", show_default=True)(f)
    f = click.option("--grid", default=64, type=int, show_default=True, help="Grid resolution N (8..4096).")(f)
    f = click.option("--surface", required=True, help="Built-in name or path to a surface file.")(f)
    return f


@click.group()
@click.version_option(__version__, prog_name="geom")
def cli():
    """Contact angle, Kähler angle and curvature identities for surfaces in S^{2n+1}."""


@cli.command("list-surfaces")
def list_surfaces():
    """List the built-in surfaces."""
    for name, builder in BUILTINS.items():
        doc = (builder.__doc__ or "").strip().splitlines()[0].replace("``", "")
        click.echo(f"{name}\t{doc}")


@cli.command("angles")
@_common
@click.option("--degrees", is_flag=True, help="Write angles in degrees.")
def angles(surface, grid, fmt_name, out, degrees):
    """Contact and Kähler angles on every grid cell."""
    _run(angles_command, surface=surface, grid=grid, fmt_name=fmt_name, out=out, degrees=degrees)


@cli.command("verify")
@_common
@click.option("--identities", default=None, help=f"Comma-separated subset of: {', '.join(IDENTITIES)}.")
@click.option("--tolerance", type=float, default=None, help="Override every identity's tolerance.")
@click.option("--degrees", is_flag=True, hidden=True)
def verify_cmd(surface, grid, fmt_name, out, identities, tolerance, degrees):
    """Evaluate identity residuals; exit 1 if any exceeds its tolerance."""
    _run(verify_command, surface=surface, grid=grid, fmt_name=fmt_name, out=out,
         identities=identities, tolerance=tolerance)


@cli.command("export-frames")
@_common
@click.option("--degrees", is_flag=True, help="Write angles in degrees.")
def export_frames(surface, grid, fmt_name, out, degrees):
    """Dump the Darboux frame, angles and flags of every grid cell."""
    _run(export_frames_command, surface=surface, grid=grid, fmt_name=fmt_name, out=out, degrees=degrees)


def main(argv=None):
    cli.main(args=argv, prog_name="geom")


if __name__ == "__main__":
    main()
