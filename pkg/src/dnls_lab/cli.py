"""Command-line front end: ``dnls-lab <subcommand> [flags]``.

Exit status: 0 success, 1 domain error (no solitary wave, not in K+, blow-up
of the integrator, ...), 2 I/O error, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import fieldio
from .classify import certify_global, classify
from .errors import DomainError
from .evolve import EquationForm, EvolutionConfig, convergence_study, evolve
from .functionals import report
from .gauge import gauge_transform, left_tail_mass, to_v_form
from .grid import DEFAULT_HALF_WIDTH, DEFAULT_N, Field, GridSpec, Params, norms
from .soliton import soliton_mass, soliton_threshold, traveling_wave, varphi_profile
from .variational import MinimizationOptions, minimize_threshold

EXIT_OK, EXIT_DOMAIN, EXIT_IO, EXIT_USAGE = 0, 1, 2, 64

REPORT_COLUMNS = (
    "index", "t", "mass", "momentum", "energy", "action", "nehari",
    "quadratic_part", "nonlinear_part", "positive_part",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _on_off(text: str) -> bool:
    if text not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return text == "on"


def _emit(obj) -> None:
    sys.stdout.write(fieldio.dumps(obj) + "\n")


def _grid(args) -> GridSpec:
    return GridSpec(args.n, args.half_width)


def _params(args) -> Params:
    return Params(args.omega, args.c)


def _input_field(args) -> Field:
    if args.input is None:
        raise UsageError("--in is required")
    return fieldio.read_field(args.input)


# ---------------------------------------------------------------------------
# subcommands


def cmd_soliton(args):
    params = _params(args)
    params.require_admissible()
    f = varphi_profile(params, _grid(args))
    if args.out:
        fieldio.write_field(args.out, f)
    _emit({
        "omega": params.omega,
        "c": params.c,
        "regime": params.regime.value,
        "n_points": f.grid.n_points,
        "half_width": f.grid.half_width,
        # squared L2 norm of the exact profile (closed form, subcritical only)
        "mass": soliton_mass(params) if not params.is_critical else None,
        "l2_sq": norms(f).l2_sq,
        "threshold": soliton_threshold(params),
        "functionals": report(f, params).to_dict(),
    })


def cmd_functionals(args):
    f = _input_field(args)
    _emit(report(f, _params(args)).to_dict())


def cmd_gauge(args):
    v = _input_field(args)
    u = gauge_transform(v, args.a)
    if args.out:
        fieldio.write_field(args.out, u)
    tail = left_tail_mass(v)
    _emit({
        "a": args.a,
        "l2_sq_in": norms(v).l2_sq,
        "l2_sq_out": norms(u).l2_sq,
        "left_tail_mass": tail,
        "phase_error_estimate": abs(args.a) * tail,
    })


def _minimize_one(job):
    omega, c, n, half_width = job
    res = minimize_threshold(Params(omega, c), MinimizationOptions(grid=GridSpec(n, half_width)))
    return omega, c, res


def _sweep_path(out: str, omega: float, c: float) -> str:
    root, ext = os.path.splitext(out)
    return f"{root}_w{fieldio.fmt(omega)}_c{fieldio.fmt(c)}{ext or '.csv'}"


def cmd_minimize(args):
    pairs = list(itertools.product(args.omega, args.c))
    for w, c in pairs:
        Params(w, c).require_admissible()
    jobs = [(w, c, args.n, args.half_width) for w, c in pairs]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_minimize_one, jobs))
    else:
        results = [_minimize_one(j) for j in jobs]
    out = []
    for w, c, res in results:
        if args.out:
            path = args.out if len(results) == 1 else _sweep_path(args.out, w, c)
            fieldio.write_field(path, res.minimizer)
        d = res.to_dict()
        d.update(omega=w, c=c, threshold=soliton_threshold(Params(w, c)))
        out.append(d)
    _emit(out[0] if len(out) == 1 else out)


def cmd_classify(args):
    f = _input_field(args)
    _emit(classify(f, _params(args), args.threshold).to_dict())


def cmd_certify(args):
    _emit(certify_global(_input_field(args)).to_dict())


def _initial_state(args, form: EquationForm) -> Field:
    """``--in`` as given, or the solitary wave at ``(omega, c)`` in the
    requested equation form."""
    if args.input is not None:
        return fieldio.read_field(args.input)
    u0 = varphi_profile(_params(args), _grid(args))
    return to_v_form(u0) if form is EquationForm.V else u0


def _write_trace(outdir: str, trace, cfg: EvolutionConfig, params: Params) -> None:
    os.makedirs(outdir, exist_ok=True)
    for i, f in enumerate(trace.snapshots):
        fieldio.write_field(os.path.join(outdir, f"t_{i}.csv"), f)
    with open(os.path.join(outdir, "reports.csv"), "w", encoding="ascii", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for i, (t, rep) in enumerate(zip(trace.times, trace.reports)):
            d = rep.to_dict()
            row = [str(i), fieldio.fmt(t)]
            for name in REPORT_COLUMNS[2:]:
                row.append("" if d[name] is None else fieldio.fmt(d[name]))
            w.writerow(row)
    meta = {
        "config": {
            "t_end": cfg.t_end,
            "dt": cfg.dt,
            "effective_dt": cfg.effective_dt,
            "n_steps": cfg.n_steps,
            "dealias": cfg.dealias,
            "snapshot_stride": cfg.snapshot_stride,
            "equation_form": cfg.equation_form.value,
        },
        "params": {"omega": params.omega, "c": params.c, "regime": params.regime.value},
        "grid": {"n_points": trace.snapshots[0].grid.n_points,
                 "half_width": trace.snapshots[0].grid.half_width},
        "max_drift": trace.max_drift,
        "status": trace.status,
        "n_snapshots": len(trace.snapshots),
    }
    with open(os.path.join(outdir, "meta.json"), "w", encoding="ascii", newline="\n") as fh:
        fh.write(fieldio.dumps(meta) + "\n")


def cmd_evolve(args):
    form = EquationForm(args.form)
    cfg = EvolutionConfig(args.t_end, args.dt, args.dealias, args.stride, form)
    params = _params(args)
    u0 = _initial_state(args, form)
    outdir = args.out or "trace"
    try:
        trace = evolve(u0, cfg, params)
    except DomainError as exc:
        if getattr(exc, "trace", None) is not None:
            _write_trace(outdir, exc.trace, cfg, params)
        raise
    _write_trace(outdir, trace, cfg, params)
    _emit({"trace": outdir, "max_drift": trace.max_drift, "status": trace.status,
           "n_snapshots": len(trace.snapshots)})


def cmd_converge(args):
    form = EquationForm(args.form)
    if args.input is not None:
        u0 = fieldio.read_field(args.input)
        exact = None
    else:
        if form is EquationForm.V:
            raise UsageError("converge against the exact wave needs --form u (or pass --in)")
        params = _params(args)
        u0 = varphi_profile(params, _grid(args))
        exact = traveling_wave(params, u0.grid, args.t_end)
    table = convergence_study(u0, args.dt, args.levels, args.t_end, exact, args.dealias, form)
    _emit(table.to_dict())


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dnls-lab", description="Numerical laboratory for the derivative NLS")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def grid_flags(p):
        p.add_argument("--n", type=int, default=DEFAULT_N, help="grid points (default 4096)")
        p.add_argument("--half-width", type=float, default=DEFAULT_HALF_WIDTH,
                       help="box is [-L, L) (default 40)")

    def param_flags(p, required=True):
        p.add_argument("--omega", type=float, required=required, default=1.0)
        p.add_argument("--c", type=float, required=required, default=0.0)

    def io_flags(p, need_in=True, out=True):
        p.add_argument("--in", dest="input", required=need_in, help="field-csv input")
        if out:
            p.add_argument("--out", help="output path")

    p = sub.add_parser("soliton", help="sample the solitary wave")
    param_flags(p)
    grid_flags(p)
    p.add_argument("--out", help="field-csv output")
    p.set_defaults(func=cmd_soliton)

    p = sub.add_parser("functionals", help="all functionals of a field")
    param_flags(p)
    io_flags(p, out=False)
    p.set_defaults(func=cmd_functionals)

    p = sub.add_parser("gauge", help="apply exp(i a int |v|^2) to a field")
    io_flags(p)
    p.add_argument("--a", type=float, default=0.75, help="gauge exponent (default 3/4)")
    p.set_defaults(func=cmd_gauge)

    p = sub.add_parser("minimize", help="reproduce the threshold by constrained minimization")
    p.add_argument("--omega", type=float, nargs="+", required=True)
    p.add_argument("--c", type=float, nargs="+", required=True)
    grid_flags(p)
    p.add_argument("--out", help="minimizer field-csv (suffixed per pair in sweeps)")
    p.add_argument("--jobs", type=int, default=1, help="parallel runs for parameter sweeps")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("classify", help="K+ / K- membership")
    param_flags(p)
    io_flags(p, out=False)
    p.add_argument("--threshold", type=float, default=None,
                   help="override J0 (default: exact solitary-wave action)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("certify", help="global-existence certificate")
    io_flags(p, out=False)
    p.set_defaults(func=cmd_certify)

    for name, func, helptext in (("evolve", cmd_evolve, "time integration with trace output"),
                                 ("converge", cmd_converge, "time-step convergence study")):
        p = sub.add_parser(name, help=helptext)
        param_flags(p, required=False)
        grid_flags(p)
        io_flags(p, need_in=False, out=(name == "evolve"))
        p.add_argument("--t-end", type=float, default=1.0)
        p.add_argument("--dt", type=float, default=1e-3)
        p.add_argument("--dealias", type=_on_off, default=True, metavar="{on,off}")
        p.add_argument("--form", choices=("u", "v"), default="u")
        if name == "evolve":
            p.add_argument("--stride", type=int, default=100)
        else:
            p.add_argument("--levels", type=int, default=3)
        p.set_defaults(func=func)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be >= 1")
        args.func(args)
        return EXIT_OK
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"dnls-lab: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"dnls-lab: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"dnls-lab: invalid argument: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
