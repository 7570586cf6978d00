"""Command-line front end.

Usage:
    onsfourier mn --sys cosine --n 1..256 --x-grid 101
    onsfourier sums --sys haar --f cube --x 0.3 --n 1..512
    onsfourier coeffs --sys cosine --f cos4pi-shift --n 1..8
    onsfourier check abel lemma4
    onsfourier sharpness --sys haar --n 2 --t 0.3
    onsfourier doubled --base cosine --n-max 32

Tables go to ``--out`` (or stdout) as CSV or JSON; summaries go to stderr.
Floats are written with 17 significant digits so identical runs give
byte-identical files.
"""

from __future__ import annotations

import json
import sys as _sys

import click
import numpy as np

from .functions import CATALOG, get_function
from .kernels import KernelContext, coefficients, mn_values, partial_sum_trace
from .quadrature import QuadratureSpec
from .sharpness import sharpness_summary, theorem4_demo
from .systems import parse_system
from .verify import SUITES, run_suite

__all__ = ["cli", "main", "parse_range", "fmt"]

COSINE_BOUND = 1.0 / 6.0
HAAR_BOUND = 2.0
MAX_EXIT = 125


def fmt(v) -> str:
    return f"{float(v):.17g}"


def parse_range(text: str) -> list[int]:
    """``"a..b"``, ``"a..b:step"`` or a single integer, inclusive."""
    text = text.strip()
    if ".." not in text:
        values = [int(text)]
    else:
        start, rest = text.split("..", 1)
        stop, _, step = rest.partition(":")
        values = list(range(int(start), int(stop) + 1, int(step or 1)))
    if not values or min(values) < 1:
        raise ValueError(f"empty or non-positive n range {text!r}")
    return values


def _x_values(x: str | None, x_grid: int | None, default: str) -> list[float]:
    if x is not None:
        xs = [float(v) for v in x.split(",")]
    elif x_grid is not None:
        xs = list(np.linspace(0.0, 1.0, x_grid))
    else:
        xs = [float(v) for v in default.split(",")]
    if any(not 0.0 <= v <= 1.0 for v in xs):
        raise click.BadParameter("x values must lie in [0, 1]")
    return xs


def _load_config(ctx, param, path):
    if path is None:
        return None
    flat = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise click.BadParameter(f"bad config line {line!r}", param=param)
            flat[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    ctx.default_map = {name: _defaults_for(cmd, flat) for name, cmd in cli.commands.items()}
    return path


def _defaults_for(cmd, flat):
    """Translate flag names from a config file to the command's parameter names."""
    out = {}
    for param in cmd.params:
        for opt in getattr(param, "opts", ()):
            key = opt.lstrip("-").replace("-", "_")
            if key in flat:
                out[param.name] = flat[key]
    return out


def _system(name):
    try:
        return parse_system(name)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--sys") from None


def _n_range(text, system):
    try:
        values = parse_range(text)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--n") from None
    if max(values) > system.max_index:
        raise click.BadParameter(f"n exceeds max_index {system.max_index}", param_hint="--n")
    return values


def _quad(tol, nodes):
    return QuadratureSpec(nodes_per_panel=nodes, target_tol=tol)


def _write(out, fmt_name, header, rows):
    if fmt_name == "csv":
        text = ",".join(header) + "\n" + "".join(",".join(r) + "\n" for r in rows)
    else:
        text = json.dumps([dict(zip(header, r)) for r in rows], indent=1) + "\n"
    _emit(out, text)


def _emit(out, text):
    if out is None or out == "-":
        click.echo(text, nl=False)
        return
    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise click.FileError(out, str(exc)) from None


def _json_reports(reports):
    return json.dumps([r.to_dict() for r in reports], indent=1, sort_keys=True) + "\n"


def _failures(reports):
    return min(sum(not r.passed for r in reports), MAX_EXIT)


sys_opt = click.option("--sys", "sys_name", default="cosine", show_default=True,
                       help="cosine, haar or doubled:<sys>")
n_opt = click.option("--n", "n_text", default="1..64", show_default=True,
                     help="n range a..b[:step] or a single n")
x_opt = click.option("--x", "x_text", default=None, help="comma-separated x values")
grid_opt = click.option("--x-grid", type=int, default=None, help="equispaced x count on [0, 1]")
tol_opt = click.option("--quad-tol", type=float, default=1e-11, show_default=True)
nodes_opt = click.option("--quad-nodes", type=int, default=32, show_default=True)
out_opt = click.option("--out", default=None, help="output path (default stdout)")
format_opt = click.option("--format", "fmt_name", type=click.Choice(["csv", "json"]),
                          default="csv", show_default=True)


@click.group()
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
              callback=_load_config, is_eager=True, expose_value=False,
              help="flat key=value file mirroring flags; flags win")
def cli():
    """Kernels, partial sums and checks for general orthonormal Fourier series."""


@cli.command()
@sys_opt
@n_opt
@x_opt
@grid_opt
@out_opt
@format_opt
def mn(sys_name, n_text, x_text, x_grid, out, fmt_name):
    """Sweep M_n(x) over an n range and x grid."""
    system = _system(sys_name)
    ns = _n_range(n_text, system)
    xs = _x_values(x_text, x_grid, "0.3")
    table = np.array([mn_values(system, n, xs) for n in ns])  # (n, x)
    rows = [(system.name, fmt(x), str(n), fmt(table[a, b]))
            for b, x in enumerate(xs) for a, n in enumerate(ns)]
    _write(out, fmt_name, ("sys", "x", "n", "Mn"), rows)
    peak = float(table.max())
    click.echo(f"max M_n = {fmt(peak)}", err=True)
    bound = {"cosine": COSINE_BOUND, "haar": HAAR_BOUND}.get(system.name)
    if bound is not None:
        ok = peak < bound if system.name == "cosine" else peak <= bound
        click.echo(f"{system.name} bound {fmt(bound)}: {'ok' if ok else 'EXCEEDED'}", err=True)
        if not ok:
            _sys.exit(1)


@cli.command()
@sys_opt
@n_opt
@x_opt
@grid_opt
@click.option("--f", "f_name", default="cube", show_default=True,
              type=click.Choice(sorted(CATALOG)))
@tol_opt
@nodes_opt
@out_opt
@format_opt
def sums(sys_name, n_text, x_text, x_grid, f_name, quad_tol, quad_nodes, out, fmt_name):
    """Partial sums S_n(x, f) with running maxima of |S_n|."""
    system = _system(sys_name)
    ns = _n_range(n_text, system)
    xs = _x_values(x_text, x_grid, "0.3")
    f = get_function(f_name)
    quad = _quad(quad_tol, quad_nodes)
    rows = []
    for x in xs:
        tr = partial_sum_trace(system, f.value, x, max(ns), quad)
        vals = np.asarray(tr.values)
        running = tr.running_max
        for n in ns:
            rows.append((system.name, fmt(x), str(n), fmt(vals[n - 1]), fmt(running[n - 1])))
    _write(out, fmt_name, ("sys", "x", "n", "Sn", "running_max"), rows)


@cli.command()
@sys_opt
@n_opt
@click.option("--f", "f_name", default="cube", show_default=True,
              type=click.Choice(sorted(CATALOG)))
@tol_opt
@nodes_opt
@out_opt
@format_opt
def coeffs(sys_name, n_text, f_name, quad_tol, quad_nodes, out, fmt_name):
    """Fourier coefficients C_k(f)."""
    system = _system(sys_name)
    ks = _n_range(n_text, system)
    f = get_function(f_name)
    c = coefficients(system, f.value, max(ks), _quad(quad_tol, quad_nodes))
    rows = [(system.name, f_name, str(k), fmt(c[k - 1])) for k in ks]
    _write(out, fmt_name, ("sys", "f", "k", "Ck"), rows)


@cli.command()
@click.argument("suites", nargs=-1, type=click.Choice(sorted(SUITES) + ["all"]))
@tol_opt
@nodes_opt
@out_opt
def check(suites, quad_tol, quad_nodes, out):
    """Run named check suites; exit code is the number of failures (max 125)."""
    quad = _quad(quad_tol, quad_nodes)
    reports = [r for name in (suites or ("all",)) for r in run_suite(name, quad)]
    _emit(out, _json_reports(reports))
    failed = _failures(reports)
    click.echo(f"{len(reports)} reports, {failed} failed", err=True)
    _sys.exit(failed)


@cli.command()
@sys_opt
@click.option("--n", "n", type=int, default=8, show_default=True)
@click.option("--t", "t", type=float, default=0.3, show_default=True)
@tol_opt
@nodes_opt
@out_opt
def sharpness(sys_name, n, t, quad_tol, quad_nodes, out):
    """Extremal f_n, its S1 + S2 + S3 split and the D_n indices at t."""
    system = _system(sys_name)
    if not 1 <= n <= system.max_index or not 0.0 <= t <= 1.0:
        raise click.BadParameter("need 1 <= n <= max_index and t in [0, 1]")
    summary = sharpness_summary(system, n, t, _quad(quad_tol, quad_nodes))
    _emit(out, json.dumps(summary, indent=1, sort_keys=True) + "\n")
    ok = summary["residual"] <= 1e-8 and summary["per_term_residual"] <= 1e-10
    _sys.exit(0 if ok else 1)


@cli.command()
@click.option("--base", "base_name", default="cosine", show_default=True)
@click.option("--n-max", type=int, default=32, show_default=True)
@tol_opt
@nodes_opt
@out_opt
def doubled(base_name, n_max, quad_tol, quad_nodes, out):
    """Moment and coefficient-halving checks for the doubled systems."""
    base = _system(base_name)
    reports = theorem4_demo(base, n_max, _quad(quad_tol, quad_nodes))
    _emit(out, _json_reports(reports))
    failed = _failures(reports)
    click.echo(f"{len(reports)} reports, {failed} failed", err=True)
    _sys.exit(failed)


def main():
    cli()


if __name__ == "__main__":
    main()
