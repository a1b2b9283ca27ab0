"""Command-line interface.

All lengths on the command line are in units of L; ``--L`` only rescales
the printed lengths (and the invariants, which carry inverse lengths).

Usage:
    bigravity constants --json
    bigravity tabulate --branch iv --rg 1 --r-from 1 --r-to 100 --samples 5
    bigravity horizon --rg 1000
    bigravity invariants --rg 0.1 --r-from 0.2 --r-to 2 --samples 10
    bigravity potential --rg 1e-15 --r-from 1e-4 --r-to 1e-2 --samples 20 --log
    bigravity bubble

Exit codes: 0 success, 2 convergence failure, 3 domain error, 4 bad flags.
"""
import csv
import json
import math
import sys
from importlib.metadata import PackageNotFoundError, version

import click

from . import analysis, curvature, metric
from . import radial_map as rm
from .errors import ConvergenceError, DomainError, OutOfRange

EXIT_CONVERGENCE = 2
EXIT_DOMAIN = 3
EXIT_USAGE = 4


def _fmt(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return format(x, ".17g")


def _json_value(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def _emit_json(obj):
    click.echo(json.dumps(obj, indent=2, allow_nan=False))


def _emit_csv(header, rows):
    out = click.get_text_stream("stdout")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _emit_table(fmt, header, rows, meta=None):
    if fmt == "json":
        doc = dict(meta or {})
        doc["rows"] = [{k: _json_value(v) for k, v in zip(header, row)} for row in rows]
        _emit_json(doc)
    else:
        _emit_csv(header, rows)


def _radii(r_from, r_to, samples, log):
    if samples < 1:
        raise click.BadParameter("must be >= 1", param_hint="--samples")
    if not (r_from > 0.0 and r_to >= r_from):
        raise click.BadParameter("need 0 < r-from <= r-to", param_hint="--r-from/--r-to")
    if samples == 1:
        return [r_from]
    if log:
        a, b = math.log(r_from), math.log(r_to)
        return [math.exp(a + (b - a) * i / (samples - 1)) for i in range(samples)]
    return [r_from + (r_to - r_from) * i / (samples - 1) for i in range(samples)]


def _params(rg, rstar, branch="iv"):
    if (rg is None) == (rstar is None):
        raise click.UsageError("give exactly one of --rg / --rstar")
    return metric.ModelParams(L=1.0, r_g=rg, r_star=rstar, branch=branch)


def _branch_range_message(params, scale):
    lo, hi = rm.branch_image(params.branch)
    return (f"radius outside branch {params.branch.value.upper()}: valid interval "
            f"[{_fmt(lo * params.r_star * scale)}, {_fmt(hi * params.r_star * scale)}]")


def _r_option(f):
    f = click.option("--samples", type=int, default=10, show_default=True)(f)
    f = click.option("--log", "log_spacing", is_flag=True, help="Geometric spacing in r.")(f)
    f = click.option("--r-to", "r_to", type=float, required=True)(f)
    f = click.option("--r-from", "r_from", type=float, required=True)(f)
    return f


_format_option = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                              default="csv", show_default=True)


@click.group()
@click.option("--L", "L", type=float, default=1.0, show_default=True,
              help="Value of L used to rescale printed lengths.")
@click.pass_context
def cli(ctx, L):
    """Static spherically symmetric Born-Infeld gravity solutions."""
    if not (L > 0.0 and math.isfinite(L)):
        raise click.BadParameter("must be positive", param_hint="--L")
    ctx.obj = {"L": L}


@cli.command()
@click.option("--json", "as_json", is_flag=True)
@click.pass_obj
def constants(obj, as_json):
    """Critical constants of the solution family and the bubble solution."""
    L = obj["L"]
    cc = rm.critical_constants()
    bp = metric.bubble_params()
    pre = metric.boundary_prefactors()
    r_i = rm.branch_image("i")[1]
    r_v = rm.branch_image("v")[0]
    doc = {
        "m0": cc.m0,
        "m_min": cc.m_min,
        "A": cc.A,
        "B": cc.B,
        "p1": cc.p1,
        "q0": cc.q0,
        "rg_threshold": cc.rg_over_L_threshold,
        "bubble": {
            "m0": bp.m0,
            "alpha1_m0": bp.alpha1_m0,
            "r0": bp.r0 * L,
            "volume": bp.volume * L ** 3,
        },
        "boundary": {"c00": pre.c00, "c11": pre.c11, "g00_scale": pre.g00_scale},
        "branch_edges": {"rho_I_max": r_i, "rho_V_inf": r_v},
    }
    if as_json:
        _emit_json(doc)
        return
    flat = []
    for key, val in doc.items():
        if isinstance(val, dict):
            flat += [(f"{key}.{k}", v) for k, v in val.items()]
        else:
            flat.append((key, val))
    width = max(len(k) for k, _ in flat)
    for key, val in flat:
        click.echo(f"{key:<{width}}  {_fmt(val)}")


@cli.command()
@click.option("--branch", type=click.Choice(["i", "ii", "iii", "iv", "v"], case_sensitive=False),
              default="iv", show_default=True)
@click.option("--rg", type=float, default=None, help="Schwarzschild radius (units of L).")
@click.option("--rstar", type=float, default=None, help="Raw integration constant r_star.")
@_r_option
@_format_option
@click.pass_obj
def tabulate(obj, branch, rg, rstar, r_from, r_to, samples, log_spacing, fmt):
    """Exact metric components over a range of r on one branch."""
    L = obj["L"]
    params = _params(rg, rstar, branch)
    rows = []
    for r in _radii(r_from, r_to, samples, log_spacing):
        try:
            s = metric.metric_at_r(params, r)
        except OutOfRange as exc:
            raise OutOfRange(_branch_range_message(params, L)) from exc
        rows.append((s.r * L, s.m, s.g00, s.g11, s.f, s.valid_signature, s.source))
    rows.sort(key=lambda row: row[0])
    meta = {"branch": params.branch.value, "r_star": params.r_star * L}
    _emit_table(fmt, ["r", "m", "g00", "g11", "f", "valid", "source"], rows, meta)


@cli.command()
@click.option("--rg", type=float, required=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_obj
def horizon(obj, rg, as_json):
    """Horizon radius on the exterior branch, or null when none forms."""
    L = obj["L"]
    params = _params(rg, None)
    r_h = metric.find_horizon(params)
    doc = {
        "rg": rg * L,
        "horizon": None if r_h is None else r_h * L,
        "r_min": metric.boundary_radius(params) * L,
        "f_at_boundary": metric.f_at_boundary(params),
        "shift_estimate": (params.r_corr ** 6 / rg ** 5 * L) if rg > 0 else 0.0,
    }
    if as_json:
        _emit_json(doc)
        return
    for key, val in doc.items():
        click.echo(f"{key}: {'null' if val is None else _fmt(val)}")


@cli.command()
@click.option("--rg", type=float, required=True)
@_r_option
@_format_option
@click.pass_obj
def invariants(obj, rg, r_from, r_to, samples, log_spacing, fmt):
    """Kretschmann and cubic curvature invariants along branch IV."""
    L = obj["L"]
    params = _params(rg, None)
    try:
        out = curvature.invariants_along_ray(params, _radii(r_from, r_to, samples, log_spacing))
    except OutOfRange as exc:
        raise OutOfRange(_branch_range_message(params, L)) from exc
    rows = [(s.r * L, s.kretschmann / L ** 4, s.cubic_invariant / L ** 6) for s in out]
    _emit_table(fmt, ["r", "kretschmann", "cubic_invariant"], rows)


@cli.command()
@click.option("--rg", type=float, required=True)
@_r_option
@_format_option
@click.pass_obj
def potential(obj, rg, r_from, r_to, samples, log_spacing, fmt):
    """Weak-field potential V(r) = 3 r_*^6/r^6 - r_g/r."""
    L = obj["L"]
    params = _params(rg, None)
    rows = [(r * L, analysis.effective_potential(params, r))
            for r in _radii(r_from, r_to, samples, log_spacing)]
    meta = {"r_eq": analysis.equilibrium_radius(params) * L, "r_corr": params.r_corr * L}
    _emit_table(fmt, ["r", "V"], rows, meta)


@cli.command()
@click.option("--samples", type=int, default=0, show_default=True,
              help="Also tabulate the metric at this many radii in [0, r0).")
@click.option("--json", "as_json", is_flag=True)
@click.pass_obj
def bubble(obj, samples, as_json):
    """Constant-m closed-space solution."""
    L = obj["L"]
    bp = metric.bubble_params()
    doc = {"m0": bp.m0, "alpha1_m0": bp.alpha1_m0, "r0": bp.r0 * L, "volume": bp.volume * L ** 3}
    rows = []
    for i in range(max(samples, 0)):
        r = bp.r0 * i / samples
        s = metric.bubble_metric(r)
        rows.append((s.r * L, s.m, s.g00, s.g11, s.f, s.valid_signature, s.source))
    header = ["r", "m", "g00", "g11", "f", "valid", "source"]
    if as_json:
        if rows:
            doc["rows"] = [dict(zip(header, row)) for row in rows]
        _emit_json(doc)
        return
    if rows:
        _emit_csv(header, rows)
        return
    for key, val in doc.items():
        click.echo(f"{key}: {_fmt(val)}")


def _version():
    try:
        return version("bigravity")
    except PackageNotFoundError:  # pragma: no cover
        return "unknown"


def main(argv=None):
    click.echo(f"bigravity {_version()}", err=True)
    try:
        code = cli.main(args=argv, prog_name="bigravity", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except ConvergenceError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_CONVERGENCE
    except DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_DOMAIN
    return code if isinstance(code, int) else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
