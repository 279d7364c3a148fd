"""Command-line front end.

Machine-readable JSON (or CSV for ascent traces) goes to stdout; diagnostics
go to stderr.  Exit codes: 0 success, 2 invalid input, 3 numeric failure
(degenerate or unbounded geometry), 4 statistical check failed (|z| > 4).
Numbers are printed with 17 significant digits so output is byte-stable and
round-trip safe.
"""

import argparse
import math
import os
import sys

import numpy as np

from . import bodies, optimize
from .errors import (
    DegenerateHyperplane,
    DegenerateInput,
    DegenerateResult,
    DegenerateSimplex,
    InvalidInput,
    InvalidPolytope,
    NotARidge,
    NotIsotropic,
    NotPositiveDefinite,
    NotSymmetric,
    NotSymmetricAboutHyperplane,
    OutsideProjection,
    ProjectionNotSimplex,
    SingularMatrix,
    UnboundedOrEmpty,
    UnboundedResult,
)
from .extremality import HingeSpec, foc_residuals, foc_threshold, hinge_derivative, hinge_derivative_fd
from .isotropy import (
    isotropic_constant,
    isotropic_constant_pow2d,
    isotropic_position,
    m2_identity_lhs,
    regular_simplex_isotropic,
)
from .polytope import load_polytope_json, moments, polytope_to_obj, validate
from .sample import RngSeed, m2_estimate, sample_facet_density, sample_uniform
from .symmetry import shake

_INPUT_ERRORS = (InvalidInput, InvalidPolytope, ValueError, KeyError, OSError)
_NUMERIC_ERRORS = (
    DegenerateSimplex,
    DegenerateInput,
    DegenerateResult,
    DegenerateHyperplane,
    OutsideProjection,
    UnboundedOrEmpty,
    UnboundedResult,
    NotPositiveDefinite,
    NotSymmetric,
    NotIsotropic,
    NotARidge,
    NotSymmetricAboutHyperplane,
    ProjectionNotSimplex,
    SingularMatrix,
)


def _fmt(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def dumps(obj, indent=0):
    """Deterministic JSON with 17-significant-digit floats."""
    pad = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(obj, (bool, int, float, np.integer, np.floating)):
        return _fmt(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        inner = ", ".join(dumps(v, indent) for v in obj)
        return "[" + inner + "]"
    if isinstance(obj, dict):
        items = ",\n".join(
            f'{pad}  "{k}": {dumps(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj)}")


def _emit(obj):
    sys.stdout.write(dumps(obj) + "\n")


def _read_body(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path) as fh:
            text = fh.read()
    body = load_polytope_json(text)
    rep = validate(body)
    if not rep.ok:
        raise InvalidPolytope(f"input body invalid: {rep.violations[:3]}")
    return body


def _write_body(body, path):
    with open(path, "w") as fh:
        fh.write(dumps(polytope_to_obj(body)) + "\n")


def _seed_from(args):
    ci = os.environ.get("ISOPTOPE_CI") == "1"
    if args.seed is None:
        if ci:
            raise InvalidInput("ISOPTOPE_CI=1 requires an explicit --seed")
        env = os.environ.get("ISOPTOPE_SEED")
        seed = int(env) if env else 0
    else:
        seed = args.seed
    return RngSeed(seed, getattr(args, "stream", 0) or 0)


def _moment_obj(md):
    return {
        "volume": md.volume,
        "centroid": md.centroid,
        "raw_second": md.raw_second,
        "covariance": md.covariance,
    }


def cmd_moments(args):
    body = _read_body(args.file)
    md = moments(body)
    _emit({"dim": body.dim, **_moment_obj(md)})
    return 0


def cmd_isotropic(args):
    body = _read_body(args.file)
    rep = isotropic_position(body)
    _emit(
        {
            "dim": body.dim,
            "transform_linear": rep.transform_linear,
            "transform_shift": rep.transform_shift,
            "centroid_residual": rep.centroid_residual,
            "covariance_residual": rep.covariance_residual,
            "L": rep.L,
        }
    )
    if args.out:
        _write_body(rep.body, args.out)
    return 0


def cmd_lconst(args):
    body = _read_body(args.file)
    md = moments(body)
    _emit(
        {
            "L": isotropic_constant(body, md),
            "L_pow_2d": isotropic_constant_pow2d(body, md),
        }
    )
    return 0


def cmd_foc(args):
    body = _read_body(args.file)
    iso = isotropic_position(body).body
    focs = foc_residuals(iso)
    thr = foc_threshold(body.dim)
    _emit(
        {
            "dim": body.dim,
            "threshold": thr,
            "max_abs_residual": max(f.max_abs for f in focs),
            "facets": [
                {
                    "facet_index": f.facet_index,
                    "residuals": f.per_vertex,
                    "relative_residuals": f.per_vertex / thr,
                }
                for f in focs
            ],
        }
    )
    return 0


def cmd_hinge(args):
    body = _read_body(args.file)
    iso = isotropic_position(body).body
    spec = HingeSpec(args.facet, args.apex)
    rep = hinge_derivative(iso, spec)
    out = {
        "facet_index": args.facet,
        "apex_index": args.apex,
        "dvol_dt": rep.dvol_dt,
        "facet_second_moment": rep.facet_second_moment,
        "dL2d_dt": rep.dL2d_dt,
    }
    if args.fd:
        fd = hinge_derivative_fd(iso, spec, t=args.t, richardson=args.richardson)
        denom = max(abs(fd), abs(rep.dL2d_dt), 1e-300)
        out["finite_difference"] = {
            "t": args.t,
            "estimate": fd,
            "relative_error": abs(fd - rep.dL2d_dt) / denom,
        }
    _emit(out)
    return 0


def cmd_shake(args):
    body = _read_body(args.file)
    direction = np.array([float(x) for x in args.dir.split(",")])
    res = shake(body, direction)
    _emit(
        {
            "direction": direction,
            "direction_axis": res.direction_axis,
            "L_before": res.L_before,
            "L_after": res.L_after,
            "volume_before": moments(body).volume,
            "volume_after": moments(res.body).volume,
        }
    )
    if args.out:
        _write_body(res.body, args.out)
    return 0


def cmd_symmetry(args):
    body = _read_body(args.file)
    _emit(optimize.report_extremality(body))
    return 0


def cmd_mc(args):
    body = _read_body(args.file)
    seed = _seed_from(args)
    n = args.n
    if args.check == "m2":
        est = m2_estimate(body, n, seed)
        exact = m2_identity_lhs(body)
        z = est.z(exact)
        _emit(
            {
                "check": "m2",
                "n": n,
                "seed": seed.seed,
                "estimate": {"mean": est.mean, "std_error": est.std_error, "n": est.n},
                "exact": exact,
                "z": z,
            }
        )
        return 0 if abs(z) <= 4.0 else 4
    if args.check == "facet":
        from .extremality import facet_second_moment

        iso = isotropic_position(body).body
        fv = iso.vertices[list(iso.facets[args.facet])]
        pts = sample_facet_density(fv, args.apex, n, seed)
        vals = (pts**2).sum(axis=1)
        mean = float(vals.mean())
        se = float(vals.std(ddof=1) / math.sqrt(n))
        exact = facet_second_moment(fv, args.apex)
        z = (mean - exact) / se
        _emit(
            {
                "check": "facet",
                "facet_index": args.facet,
                "apex_index": args.apex,
                "n": n,
                "seed": seed.seed,
                "estimate": {"mean": mean, "std_error": se, "n": n},
                "exact": exact,
                "z": z,
            }
        )
        return 0 if abs(z) <= 4.0 else 4
    # moments: compare sample mean and covariance entrywise
    md = moments(body)
    pts = sample_uniform(body, n, seed)
    zs = []
    for i in range(body.dim):
        se = pts[:, i].std(ddof=1) / math.sqrt(n)
        zs.append((pts[:, i].mean() - md.centroid[i]) / se)
    centered = pts - pts.mean(axis=0)
    for i in range(body.dim):
        for j in range(i, body.dim):
            prod = centered[:, i] * centered[:, j]
            se = prod.std(ddof=1) / math.sqrt(n)
            zs.append((prod.mean() - md.covariance[i, j]) / se)
    zmax = float(np.abs(zs).max())
    _emit(
        {
            "check": "moments",
            "n": n,
            "seed": seed.seed,
            "max_abs_z": zmax,
            "z_scores": zs,
        }
    )
    return 0 if zmax <= 4.0 else 4


def cmd_ascend(args):
    body = _read_body(args.file)
    seed = _seed_from(args)
    cfg = optimize.AscentConfig(
        step_init=args.step,
        max_iters=args.iters,
        foc_tol=args.foc_tol,
        seed=seed,
        mode=args.mode,
    )
    trace = optimize.ascend(body, cfg)
    lines = ["iter,L,max_foc,max_refl_defect,volume,accepted"]
    for r in trace.rows:
        lines.append(
            f"{r.iteration},{_fmt(r.L)},{_fmt(r.max_foc)},"
            f"{_fmt(r.max_refl_defect)},{_fmt(r.volume)},{r.accepted}"
        )
    csv_text = "\n".join(lines) + "\n"
    sys.stdout.write(csv_text)
    if args.out:
        _write_body(trace.body, args.out)
    if args.plot_dir:
        from . import plots  # defer matplotlib import to the one path that needs it

        os.makedirs(args.plot_dir, exist_ok=True)
        with open(os.path.join(args.plot_dir, "trace.csv"), "w") as fh:
            fh.write(csv_text)
        plots.render_trace_figures(trace.rows, args.plot_dir)
        plots.render_body_figure(trace.body, args.plot_dir, "final_body.png")
    return 0


def cmd_gen(args):
    if args.kind == "simplex":
        body = regular_simplex_isotropic(args.dim)
    elif args.kind == "cube":
        body = bodies.cube(args.dim)
    else:
        seed = _seed_from(args)
        n = args.points or 2 * (args.dim + 1)
        body = bodies.random_simplicial(args.dim, n, seed)
    _emit(polytope_to_obj(body))
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="isoptope",
        description="isotropic-constant analysis of simplicial polytopes",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def body_cmd(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("file", nargs="?", default="-", help="polytope JSON ('-' = stdin)")
        p.set_defaults(fn=fn)
        return p

    body_cmd("moments", cmd_moments, help="exact volume, centroid, covariance")
    p = body_cmd("isotropic", cmd_isotropic, help="map to isotropic position")
    p.add_argument("--out", help="write the isotropic image body to this path")
    body_cmd("lconst", cmd_lconst, help="isotropic constant L and L^(2d)")
    body_cmd("foc", cmd_foc, help="first-order residual table (isotropized first)")

    p = body_cmd("hinge", cmd_hinge, help="hinge derivative for one facet/apex")
    p.add_argument("--facet", type=int, required=True)
    p.add_argument("--apex", type=int, required=True)
    p.add_argument("--t", type=float, default=1e-4, help="finite-difference step")
    p.add_argument("--fd", action="store_true", help="add finite-difference comparison")
    p.add_argument("--richardson", action="store_true")

    p = body_cmd("shake", cmd_shake, help="Blaschke shaking along a direction")
    p.add_argument("--dir", required=True, help="comma-separated direction")
    p.add_argument("--out", help="write the shaken body to this path")

    body_cmd("symmetry", cmd_symmetry, help="extremality report")

    p = body_cmd("mc", cmd_mc, help="Monte Carlo cross-check against exact values")
    p.add_argument("--check", choices=["moments", "m2", "facet"], required=True)
    p.add_argument("--n", type=int, default=100000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--facet", type=int, default=0)
    p.add_argument("--apex", type=int, default=0)

    p = body_cmd("ascend", cmd_ascend, help="local ascent of L; prints a CSV trace")
    p.add_argument("--mode", choices=list(optimize.MODES), default="HINGE_ASCENT")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--foc-tol", type=float, default=1e-7)
    p.add_argument("--out", help="write the final body to this path")
    p.add_argument("--plot-dir", help="also write trace.csv and figures here")

    p = sub.add_parser("gen", help="generate a fixture body")
    p.add_argument("kind", choices=["simplex", "cube", "random-simplicial"])
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--points", type=int, default=None)
    p.set_defaults(fn=cmd_gen)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except _NUMERIC_ERRORS as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except _INPUT_ERRORS as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
