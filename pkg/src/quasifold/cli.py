"""Command-line interface.

Usage:
    quasifold sample-orbit --space quasi --st 1,golden --n 1000 --theta-max 50
    quasifold gaps --x sqrt2 --k 1000 --format json
    quasifold check-equal --space orbi --pq 2,3 --a polar:1,0.1,0.2 --b polar:1,0.3,0.5
    quasifold chart-roundtrip --space quasi --st 1,golden --n 500
    quasifold hopf-fiber --point 1,0,0 --n 64
    quasifold witness --space quasi --st 1,golden --a polar:1,0.1,0.2 --b polar:1,0.7,0.9 --eps 1e-5

Exit status: 0 success / Equal, 1 NotEqual / failed check, 2 Undetermined,
64 usage error. Output formats are described in docs/formats.md.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path

import click

from . import lab
from .lab import EXIT_USAGE, CommandResult, RunConfig, UsageError

__all__ = ["cli", "main", "render"]


def _fmt_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, (list, tuple)):
        return ";".join(_fmt_cell(x) for x in v)
    return str(v)


def _json_safe(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_safe(x) for x in v]
    return v


def render(result: CommandResult, cfg: RunConfig) -> str:
    """Serialize a command result in the configured format."""
    if cfg.fmt == "json":
        return json.dumps(_json_safe(result.document(cfg)), indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if result.columns:
        writer.writerow(result.columns)
        for row in result.rows:
            writer.writerow([_fmt_cell(v) for v in row])
    else:
        writer.writerow(["key", "value"])
        for k, v in (result.report or {}).items():
            writer.writerow([k, _fmt_cell(v)])
    return buf.getvalue()


def _emit(result: CommandResult, cfg: RunConfig, out: str | None):
    text = render(result, cfg)
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        click.echo(text, nl=False)
    sys.exit(result.exit_code)


def common_options(f):
    opts = [
        click.option("--space", type=click.Choice(["sphere", "orbi", "quasi"]), default="sphere", show_default=True),
        click.option("--pq", help="Orbisphere weights P,Q (coprime integers)."),
        click.option("--st", help="Quasisphere weights S,T: decimals or golden|sqrt2|sqrt3|plastic."),
        click.option("--eps", type=float, default=1e-9, show_default=True, help="Absolute tolerance."),
        click.option("--search-bound", type=int, default=100, show_default=True, help="Integer search bound K."),
        click.option("--seed", type=int, default=0, show_default=True),
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True),
        click.option("--out", type=click.Path(dir_okay=False), help="Output file (default stdout)."),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


def _config(space, pq, st, eps, search_bound, seed, fmt) -> RunConfig:
    return RunConfig.build(space, pq, st, eps, search_bound, seed, fmt)


@click.group()
@click.version_option(package_name="artifact", prog_name="quasifold")
def cli():
    """Orbits, charts and quotient diagnostics for sphere, orbisphere and quasisphere."""


@cli.command("sample-orbit")
@common_options
@click.option("--theta-max", type=float, default=1.0, show_default=True)
@click.option("--n", type=int, default=100, show_default=True)
@click.option("--start", help="Start point ZRE,ZIM,WRE,WIM or polar:MODZ,ARGZ,ARGW (default: seeded sample).")
def sample_orbit(space, pq, st, eps, search_bound, seed, fmt, out, theta_max, n, start):
    """Evenly spaced points along one orbit."""
    cfg = _config(space, pq, st, eps, search_bound, seed, fmt)
    _emit(lab.cmd_sample_orbit(cfg, theta_max, n, start), cfg, out)


@cli.command("gaps")
@common_options
@click.option("--k", "K", type=int, default=100, show_default=True)
@click.option("--x", "x_text", help="Rotation number (default s/t from --st).")
def gaps(space, pq, st, eps, search_bound, seed, fmt, out, K, x_text):
    """Gap lengths of frac(k*x), k = 1..K."""
    cfg = _config(space, pq, st, eps, search_bound, seed, fmt)
    x = lab.parse_real(x_text) if x_text is not None else None
    _emit(lab.cmd_gaps(cfg, K, x), cfg, out)


@cli.command("check-equal")
@common_options
@click.option("--a", "point_a", required=True)
@click.option("--b", "point_b", required=True)
def check_equal(space, pq, st, eps, search_bound, seed, fmt, out, point_a, point_b):
    """Decide whether two points lie on the same orbit."""
    cfg = _config(space, pq, st, eps, search_bound, seed, fmt)
    _emit(lab.cmd_check_equal(cfg, point_a, point_b), cfg, out)


@cli.command("chart-roundtrip")
@common_options
@click.option("--n", type=int, default=500, show_default=True)
def chart_roundtrip(space, pq, st, eps, search_bound, seed, fmt, out, n):
    """Round-trip errors of both charts and both transitions."""
    cfg = _config(space, pq, st, eps, search_bound, seed, fmt)
    _emit(lab.cmd_chart_roundtrip(cfg, n), cfg, out)


@cli.command("hopf-fiber")
@common_options
@click.option("--point", "s2_point", required=True, help="Point ZRE,ZIM,X on S^2.")
@click.option("--n", type=int, default=64, show_default=True)
def hopf_fiber(space, pq, st, eps, search_bound, seed, fmt, out, s2_point, n):
    """Sample the Hopf fiber over a point of S^2."""
    cfg = _config(space, pq, st, eps, search_bound, seed, fmt)
    _emit(lab.cmd_hopf_fiber(cfg, s2_point, n), cfg, out)


@cli.command("witness")
@common_options
@click.option("--a", "point_a", required=True)
@click.option("--b", "point_b", required=True)
def witness(space, pq, st, eps, search_bound, seed, fmt, out, point_a, point_b):
    """Flow parameter bringing orbit a within eps of point b (quasisphere)."""
    cfg = _config(space, pq, st, eps, search_bound, seed, fmt)
    _emit(lab.cmd_witness(cfg, point_a, point_b), cfg, out)


def main(argv=None):
    try:
        rv = cli.main(args=argv, prog_name="quasifold", standalone_mode=False)
    except UsageError as exc:
        click.echo(f"Error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    sys.exit(rv or 0)


if __name__ == "__main__":
    main()
