"""Command-line surface: evaluate fields on grids, scan spectra, run PDE
verification suites, integrate gradient flows, and query the special-function
machinery.

Output goes to stdout as CSV (comma, LF, header row) or JSON (array of row
objects with the same columns); diagnostics and logging go to stderr only.
Exit codes: 0 success, 2 bad usage/spec, 3 domain error, 4 verification
failure.  Identical invocations produce byte-identical output.
"""

import argparse
import json
import logging
import math
import os
import random
import sys

from .errors import MeridianError
from .quaternion import Quaternion
from .holomorphic import elementary, moebius_potential
from .fields import (
    RHO_MIN,
    SeparableParams,
    from_holomorphic_potential,
    from_separable,
    lift_to_r4,
    verify_epd,
    verify_stokes_beltrami,
    verify_weinstein,
    verify_axial_hyperbolic,
    verify_general_system,
    criterion_check,
    axial_symmetry_check,
)
from .spectral import eigen_closed, eigen_numeric, jacobian
from .dynsys import flow
from .specfun import bessel_j, bessel_y, bessel_j_quat
from .transforms import (
    DEFAULT_TOL,
    bessel_integral_rep,
    cheb_original,
    chebyshev_kernel,
    exp_decay_original,
    ff_cos,
    ff_sin,
    laplace_fueter,
    transform_field,
    unit_original,
)

log = logging.getLogger("meridian4.cli")

EVAL_HEADER = "x0,rho,V0,Vrho,dVrho_dx0,dVrho_drho"
FLOW_HEADER = "t,x0,x1,x2,x3,h"

SUITE_TOL = {
    "epd": 1e-10,
    "stokes": 1e-7,
    "system": 1e-6,
    "criterion": 1e-7,
    "symmetry": 1e-12,
    "weinstein": 2e-6,
    "axial": 1e-6,
}


class SpecError(ValueError):
    """A field/grid/potential spec string that does not parse."""


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def _norm(v):
    """Plain float with negative zero flushed, for stable shortest-round-trip repr."""
    return float(v) + 0.0


def _fmt(v) -> str:
    return repr(_norm(v))


def _emit(lines):
    sys.stdout.write("\n".join(lines) + "\n")


def _emit_json(obj):
    sys.stdout.write(json.dumps(obj) + "\n")


# ---------------------------------------------------------------------------
# spec parsing
# ---------------------------------------------------------------------------

def _kv_pairs(body: str) -> dict:
    out = {}
    if not body:
        return out
    for chunk in body.split(","):
        key, eq, val = chunk.partition("=")
        key = key.strip()
        if not eq or not key or not val.strip():
            raise SpecError(f"malformed parameter {chunk!r} (want key=value)")
        if key in out:
            raise SpecError(f"duplicate parameter {key!r}")
        out[key] = val.strip()
    return out


def _take(params: dict, key: str, conv, default=None, required=False):
    if key not in params:
        if required:
            raise SpecError(f"missing required parameter {key!r}")
        return default
    raw = params.pop(key)
    try:
        return conv(raw)
    except (TypeError, ValueError):
        raise SpecError(f"parameter {key}={raw!r} is not a valid {conv.__name__}")


def _reject_extras(params: dict, kind: str):
    if params:
        raise SpecError(f"unknown parameter(s) for {kind}: {', '.join(sorted(params))}")


def parse_original(name: str, rate: float):
    """Original-function registry: unit | exp | cheb<n> | kernel<k>."""
    if name == "unit":
        return unit_original()
    if name == "exp":
        return exp_decay_original(rate)
    if name.startswith("cheb"):
        try:
            return cheb_original(int(name[4:]))
        except ValueError:
            raise SpecError(f"bad Chebyshev original {name!r} (want cheb<n>)")
    if name.startswith("kernel"):
        try:
            return chebyshev_kernel(int(name[6:]))
        except ValueError:
            raise SpecError(f"bad Chebyshev kernel {name!r} (want kernel<k>)")
    raise SpecError(f"unknown original {name!r} (unit, exp, cheb<n>, kernel<k>)")


def parse_field_spec(text: str):
    """Build a MeridionalField from a kind:key=val,... spec string."""
    kind, _, body = text.partition(":")
    params = _kv_pairs(body)

    if kind == "holo":
        name = _take(params, "name", str, required=True)
        n = _take(params, "n", float)
        coeff = _take(params, "coeff", float, default=1.0)
        _reject_extras(params, kind)
        pot = elementary(name, n)
        if coeff != 1.0:
            pot = coeff * pot
        return from_holomorphic_potential(pot)

    if kind == "moebius":
        a = _take(params, "a", float, default=0.0)
        d = _take(params, "d", float, default=0.0)
        _reject_extras(params, kind)
        return from_holomorphic_potential(moebius_potential(a, d))

    if kind == "separable":
        alpha = _take(params, "alpha", float, required=True)
        beta = _take(params, "beta", float, required=True)
        a1 = _take(params, "a1", float, default=1.0)
        a2 = _take(params, "a2", float, default=0.0)
        b1 = _take(params, "b1", float, default=1.0)
        b2 = _take(params, "b2", float, default=0.0)
        _reject_extras(params, kind)
        return from_separable(SeparableParams(alpha, beta, a1, a2, b1, b2))

    if kind == "transform":
        tkind = _take(params, "kind", str, required=True)
        original = _take(params, "original", str, required=True)
        rate = _take(params, "rate", float, default=1.0)
        tol = _take(params, "tol", float, default=DEFAULT_TOL)
        _reject_extras(params, kind)
        if tkind not in ("ffc", "ffs"):
            raise SpecError(f"transform kind must be ffc or ffs, got {tkind!r}")
        return transform_field(tkind, parse_original(original, rate), tol)

    raise SpecError(
        f"unknown field kind {kind!r} (holo, separable, transform, moebius)")


def parse_potential_spec(text: str, default_alpha: float):
    """Scalar potentials h: R^4 -> R for the verification suites.

    x3pow[:alpha=A] -> x3^(1+A); rhopow:e=E -> rho^E;
    rho3 -> (x1^2+x2^2+x3^2)^{3/2}; x0sq-x3sq -> x0^2 - x3^2.
    """
    name, _, body = text.partition(":")
    params = _kv_pairs(body)

    if name == "x3pow":
        alpha = _take(params, "alpha", float, default=default_alpha)
        _reject_extras(params, name)
        expo = 1.0 + alpha

        def h(x, _e=expo):
            try:
                return math.pow(x.x3, _e)
            except ValueError:
                raise MeridianError(
                    f"x3^{_e:g} needs x3 >= 0 at non-integer exponents")
        return h

    if name == "rhopow":
        expo = _take(params, "e", float, required=True)
        _reject_extras(params, name)
        return lambda x, _e=expo: (x.x1 ** 2 + x.x2 ** 2 + x.x3 ** 2) ** (0.5 * _e)

    if name == "rho3":
        _reject_extras(params, name)
        return lambda x: (x.x1 ** 2 + x.x2 ** 2 + x.x3 ** 2) ** 1.5

    if name == "x0sq-x3sq":
        _reject_extras(params, name)
        return lambda x: x.x0 ** 2 - x.x3 ** 2

    raise SpecError(f"unknown potential {name!r} (x3pow, rho3, x0sq-x3sq)")


def parse_grid(text: str):
    """Grid spec x0lo:x0hi:nx,rholo:rhohi:nr -> (x0 samples, rho samples)."""
    parts = text.split(",")
    if len(parts) != 2:
        raise SpecError("grid wants x0lo:x0hi:nx,rholo:rhohi:nr")

    def axis(part, label):
        bits = part.split(":")
        if len(bits) != 3:
            raise SpecError(f"{label} axis wants lo:hi:n, got {part!r}")
        try:
            lo, hi, n = float(bits[0]), float(bits[1]), int(bits[2])
        except ValueError:
            raise SpecError(f"{label} axis {part!r} has non-numeric entries")
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise SpecError(f"{label} axis bounds must be finite")
        if n < 2:
            raise SpecError(f"{label} axis needs n >= 2, got {n}")
        if not lo < hi:
            raise SpecError(f"{label} axis needs lo < hi")
        return [lo + i * (hi - lo) / (n - 1) for i in range(n)]

    x0s = axis(parts[0], "x0")
    rhos = axis(parts[1], "rho")
    if rhos[0] < RHO_MIN:
        raise SpecError(f"rho axis starts below the domain floor {RHO_MIN:g}")
    return x0s, rhos


def _parse_point(text: str, count: int, label: str):
    bits = text.split(",")
    if len(bits) != count:
        raise SpecError(f"{label} wants {count} comma-separated reals")
    try:
        vals = [float(b) for b in bits]
    except ValueError:
        raise SpecError(f"{label} has non-numeric entries: {text!r}")
    if not all(math.isfinite(v) for v in vals):
        raise SpecError(f"{label} must be finite")
    return vals


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    field = parse_field_spec(args.field)
    x0s, rhos = parse_grid(args.grid)
    log.info("eval: %d x %d grid on %s", len(x0s), len(rhos), args.field)

    rows = []
    for x0 in x0s:
        for rho in rhos:
            rows.append({
                "x0": _norm(x0),
                "rho": _norm(rho),
                "V0": _norm(field.V0(x0, rho)),
                "Vrho": _norm(field.Vrho(x0, rho)),
                "dVrho_dx0": _norm(field.dVrho_dx0(x0, rho)),
                "dVrho_drho": _norm(field.dVrho_drho(x0, rho)),
            })

    if args.format == "json":
        _emit_json(rows)
    else:
        lines = [EVAL_HEADER]
        for r in rows:
            lines.append(",".join(_fmt(r[k]) for k in EVAL_HEADER.split(",")))
        _emit(lines)
    return 0


SPECTRUM_COLS = ["x0", "rho", "l0", "l1", "l2", "l3",
                 "I", "II", "III", "IV", "degenerate", "method"]
ORACLE_COLS = ["n0", "n1", "n2", "n3", "deviation"]


def cmd_spectrum(args) -> int:
    field = parse_field_spec(args.field)
    x0s, rhos = parse_grid(args.grid)
    log.info("spectrum: %d x %d grid on %s (oracle=%s)",
             len(x0s), len(rhos), args.field, args.oracle)

    cols = SPECTRUM_COLS + (ORACLE_COLS if args.oracle else [])
    rows = []
    for x0 in x0s:
        for rho in rhos:
            x = Quaternion(x0, rho, 0.0, 0.0)
            rep = eigen_closed(field, x)
            row = {"x0": _norm(x0), "rho": _norm(rho)}
            for i, lam in enumerate(rep.lambdas):
                row[f"l{i}"] = _norm(lam)
            for key, val in zip(("I", "II", "III", "IV"), rep.invariants):
                row[key] = _norm(val)
            row["degenerate"] = rep.degenerate
            row["method"] = rep.method
            if args.oracle:
                num = eigen_numeric(jacobian(field, x))
                for i, lam in enumerate(num.lambdas):
                    row[f"n{i}"] = _norm(lam)
                row["deviation"] = _norm(max(
                    abs(a - b) for a, b in zip(rep.lambdas, num.lambdas)))
            rows.append(row)

    if args.format == "json":
        _emit_json(rows)
    else:
        def cell(v):
            if isinstance(v, bool):
                return "true" if v else "false"
            if isinstance(v, str):
                return v
            return _fmt(v)
        lines = [",".join(cols)]
        for r in rows:
            lines.append(",".join(cell(r[k]) for k in cols))
        _emit(lines)
    return 0


def _sample_plane(rng):
    return rng.uniform(-2.0, 2.0), rng.uniform(0.1, 2.0)


def _sample_space(rng, min_rho=0.1, x3_window=None, min_s2=0.0):
    while True:
        x0 = rng.uniform(-2.0, 2.0)
        x1 = rng.uniform(-1.5, 1.5)
        x2 = rng.uniform(-1.5, 1.5)
        if x3_window is not None:
            x3 = rng.uniform(*x3_window)
        else:
            x3 = rng.uniform(-1.5, 1.5)
        x = Quaternion(x0, x1, x2, x3)
        if x.rho() < min_rho:
            continue
        if x2 * x2 + x3 * x3 < min_s2:
            continue
        return x


def _run_suite(args):
    """Max residual per named check over the seeded sample set."""
    suite = args.suite
    rng = random.Random(args.seed)
    n = args.samples

    field_suites = {"epd", "stokes", "system", "symmetry"}
    if suite in field_suites and args.field is None:
        raise SpecError(f"suite {suite!r} needs --field")
    if suite in ("weinstein", "axial") and args.potential is None:
        raise SpecError(f"suite {suite!r} needs --potential")
    if suite == "criterion" and args.field is None and args.potential is None:
        raise SpecError("suite 'criterion' needs --field or --potential")

    field = parse_field_spec(args.field) if args.field is not None else None

    if suite == "epd":
        worst = 0.0
        for _ in range(n):
            x0, rho = _sample_plane(rng)
            worst = max(worst, verify_epd(field, x0, rho))
        return [("epd", worst)]

    if suite == "stokes":
        w1 = w2 = 0.0
        for _ in range(n):
            x0, rho = _sample_plane(rng)
            r1, r2 = verify_stokes_beltrami(field, x0, rho)
            w1, w2 = max(w1, r1), max(w2, r2)
        return [("r1", w1), ("r2", w2)]

    if suite == "system":
        alpha = field.alpha

        def u(x):
            v = lift_to_r4(field, x)
            return (v.x0, -v.x1, -v.x2, -v.x3)

        def phi(x, _a=alpha):
            return x.rho() ** (-_a)

        names = ["continuity", "sym1", "sym2", "sym3",
                 "curl12", "curl13", "curl23"]
        worst = [0.0] * 7
        for _ in range(n):
            x = _sample_space(rng)
            res = verify_general_system(u, phi, x)
            worst = [max(w, r) for w, r in zip(worst, res)]
        return list(zip(names, worst))

    if suite == "symmetry":
        def u(x):
            return lift_to_r4(field, x).components()
        names = ["pair12", "pair13", "pair23"]
        worst = [0.0] * 3
        for _ in range(n):
            x = _sample_space(rng)
            res = axial_symmetry_check(u, x)
            worst = [max(w, r) for w, r in zip(worst, res)]
        return list(zip(names, worst))

    if suite == "criterion":
        if field is not None:
            def h(x, _f=field):
                return _f.g(x.x0, x.rho())
        else:
            h = parse_potential_spec(args.potential, args.alpha)
        names = ["cart12", "cart13", "cart23", "dtheta", "dpsi"]
        worst = [0.0] * 5
        for _ in range(n):
            x = _sample_space(rng, min_s2=0.01)
            cart, ang = criterion_check(h, x)
            res = cart + ang
            worst = [max(w, r) for w, r in zip(worst, res)]
        return list(zip(names, worst))

    if suite in ("weinstein", "axial"):
        h = parse_potential_spec(args.potential, args.alpha)
        if suite == "weinstein":
            check, step = verify_weinstein, None
        else:
            # the rho^2 weight amplifies second-difference roundoff; a wider
            # step keeps exact solutions well under the suite tolerance
            check, step = verify_axial_hyperbolic, 1e-3
        worst = 0.0
        for _ in range(n):
            x = _sample_space(rng, x3_window=(0.1, 2.0))
            worst = max(worst, check(h, args.alpha, x, fd_step=step))
        return [(suite, worst)]

    raise SpecError(f"unknown suite {suite!r}")


def cmd_verify(args) -> int:
    tol = SUITE_TOL[args.suite]
    results = _run_suite(args)
    log.info("verify %s: %d samples, seed %d", args.suite, args.samples, args.seed)

    checks = [{"check": name, "max": _norm(worst), "tol": tol,
               "status": "pass" if worst <= tol else "fail"}
              for name, worst in results]
    ok = all(c["status"] == "pass" for c in checks)

    target = args.field if args.field is not None else args.potential
    if args.format == "json":
        _emit_json({"suite": args.suite, "target": target,
                    "samples": args.samples, "seed": args.seed,
                    "checks": checks, "result": "pass" if ok else "fail"})
    else:
        lines = [f"suite={args.suite}", f"target={target}",
                 f"samples={args.samples}", f"seed={args.seed}"]
        for c in checks:
            lines.append(f"check={c['check']} max={_fmt(c['max'])} "
                         f"tol={_fmt(c['tol'])} status={c['status']}")
        lines.append(f"result={'pass' if ok else 'fail'}")
        _emit(lines)
    return 0 if ok else 4


def cmd_flow(args) -> int:
    field = parse_field_spec(args.field)
    start = _parse_point(args.start, 4, "--start")
    traj = flow(field, Quaternion(*start), args.dt, args.horizon)
    log.info("flow: %d steps, termination %s", len(traj.times) - 1, traj.termination)

    rows = [{"t": _norm(t), "x0": _norm(p.x0), "x1": _norm(p.x1),
             "x2": _norm(p.x2), "x3": _norm(p.x3), "h": _norm(h)}
            for t, p, h in traj.samples()]

    if args.format == "json":
        _emit_json({"rows": rows, "termination": traj.termination})
    else:
        lines = [FLOW_HEADER]
        for r in rows:
            lines.append(",".join(_fmt(r[k]) for k in FLOW_HEADER.split(",")))
        _emit(lines)
        print(f"termination: {traj.termination}", file=sys.stderr)
    return 0


def _quat_kv(x: Quaternion):
    return [("x0", x.x0), ("x1", x.x1), ("x2", x.x2), ("x3", x.x3)]


def cmd_special(args) -> int:
    pairs = []
    if args.query == "bessel":
        fn = bessel_y if args.kind == "y" else bessel_j
        pairs = [("value", fn(args.nu, args.z))]
    elif args.query == "besselq":
        x = Quaternion(*_parse_point(args.at, 4, "--at"))
        pairs = _quat_kv(bessel_j_quat(args.n, x))
    elif args.query == "transform":
        x = Quaternion(*_parse_point(args.at, 4, "--at"))
        eta = parse_original(args.original, args.rate)
        op = {"lf": laplace_fueter, "ffc": ff_cos, "ffs": ff_sin}[args.kind]
        pairs = _quat_kv(op(eta, x, args.tol))
    elif args.query == "besselrep":
        x = Quaternion(*_parse_point(args.at, 4, "--at"))
        rep = bessel_integral_rep(args.n, args.parity, x, args.tol)
        order = 2 * args.n if args.parity == "even" else 2 * args.n + 1
        series = bessel_j_quat(order, x)
        pairs = _quat_kv(rep)
        pairs.append(("discrepancy", (rep - series).norm()))

    if args.format == "json":
        _emit_json({k: _norm(v) for k, v in pairs})
    else:
        _emit([f"{k}={_fmt(v)}" for k, v in pairs])
    return 0


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meridian4",
        description="Meridional vector fields in R^4 from quaternionic "
                    "function theory: evaluation, spectra, verification, flows.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("eval", help="evaluate a field on a meridian half-plane grid")
    p.add_argument("--field", required=True,
                   help="kind:key=val,... e.g. holo:name=qpow,n=2,coeff=0.5")
    p.add_argument("--grid", required=True, help="x0lo:x0hi:nx,rholo:rhohi:nr")
    add_format(p)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("spectrum", help="closed-form Jacobian spectrum on a grid")
    p.add_argument("--field", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--oracle", action="store_true",
                   help="add Jacobi-eigensolver columns and max deviation")
    add_format(p)
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("verify", help="seeded residual suites; exit 4 on failure")
    p.add_argument("suite", choices=sorted(SUITE_TOL))
    p.add_argument("--field", help="field spec (epd, stokes, system, symmetry, criterion)")
    p.add_argument("--potential",
                   help="scalar potential spec (weinstein, axial, criterion): "
                        "x3pow[:alpha=A] | rho3 | x0sq-x3sq")
    p.add_argument("--alpha", type=float, default=2.0,
                   help="operator parameter for weinstein/axial (default 2)")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    add_format(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("flow", help="integrate the gradient flow from a start point")
    p.add_argument("--field", required=True)
    p.add_argument("--start", required=True, help="x0,x1,x2,x3")
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--horizon", type=float, required=True)
    add_format(p)
    p.set_defaults(fn=cmd_flow)

    p = sub.add_parser("special", help="Bessel and transform queries")
    q = p.add_subparsers(dest="query", required=True)

    b = q.add_parser("bessel", help="J_nu(z) or Y_nu(z) on the real half-line")
    b.add_argument("--nu", type=float, required=True)
    b.add_argument("--z", type=float, required=True)
    b.add_argument("--kind", choices=("j", "y"), default="j")
    add_format(b)

    b = q.add_parser("besselq", help="J_n at a quaternion argument")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--at", required=True, help="x0,x1,x2,x3")
    add_format(b)

    b = q.add_parser("transform", help="Laplace/Fourier-Fueter transform values")
    b.add_argument("--kind", choices=("lf", "ffc", "ffs"), required=True)
    b.add_argument("--original", required=True,
                   help="unit | exp | cheb<n> | kernel<k>")
    b.add_argument("--rate", type=float, default=1.0)
    b.add_argument("--at", required=True, help="x0,x1,x2,x3")
    b.add_argument("--tol", type=float, default=DEFAULT_TOL)
    add_format(b)

    b = q.add_parser("besselrep", help="integral representation vs series")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--parity", choices=("even", "odd"), required=True)
    b.add_argument("--at", required=True, help="x0,x1,x2,x3")
    b.add_argument("--tol", type=float, default=DEFAULT_TOL)
    add_format(b)

    p.set_defaults(fn=cmd_special)
    return parser


def _setup_logging():
    name = os.environ.get("MERIDIAN4_LOG", "error").strip().lower()
    level = {"error": logging.ERROR, "info": logging.INFO,
             "debug": logging.DEBUG}.get(name, logging.ERROR)
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MeridianError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except BrokenPipeError:
        # downstream consumer (head, ...) closed stdout; not our error
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
