"""Command-line front end.

Subcommands:

    eval        evaluate a named kernel on a rectangular grid, write CSV/JSON
    apply       apply the twisted heat kernel to a sampled function
    verify      run one of the verification suites, write a JSON report
    identities  check the cosh/sinh simplification identities and the
                twist factorization over a parameter sweep

Exit codes: 0 success, 1 verification failure, 2 flag validation failure,
3 I/O failure.  Output files are written to a temporary name and renamed on
success, so no partial files survive a failure.  All default panels are
fixed; randomness enters only through an explicit --seed flag.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import tempfile

import numpy as np

from . import verify
from .kernels import (
    KERNEL_NAMES,
    FieldSample,
    GridAxis,
    GridMismatchError,
    GridSpec,
    KernelParams,
    evaluate_on_grid,
    heat_kernel_h,
    rho_tilde,
    simplification_identities,
)

OUTPUT_DIR_ENV = "HEISENHEAT_OUTPUT_DIR"

EXIT_OK = 0
EXIT_SUITE_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3

IDENTITY_TOLERANCE = 1e-12

# fixed default panel for the twist-factorization check (no RNG by default)
_TWIST_POINTS = (
    (1.0, 1.0, (0.3, -0.4), (1.2, 0.8)),
    (0.5, -2.0, (-1.6, 0.4), (0.7, -1.3)),
    (2.0, 0.5, (0.0, 0.0), (1.9, -0.7)),
    (1.5, -0.5, (0.5, 0.5), (-0.5, 1.1)),
    (0.25, 3.0, (-0.8, 1.3), (0.6, 0.2)),
)


class CliError(Exception):
    """Flag/validation failure mapped to exit code 2."""


def _parse_gamma(text: str) -> complex:
    """Parse gamma in a+bi form (also plain reals, bare 'i', '1+i', '-i')."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    # complex() wants an explicit coefficient on the imaginary unit
    cleaned = re.sub(r"(?<![\d.])j", "1j", cleaned)
    try:
        return complex(cleaned)
    except ValueError as exc:
        raise CliError(f"cannot parse gamma {text!r}; expected a+bi form") from exc


def _parse_axis(text: str) -> GridAxis:
    parts = text.split(":")
    if len(parts) != 4:
        raise CliError(f"axis {text!r} must have the form name:min:max:count")
    name, lo, hi, count = parts
    try:
        return GridAxis(name=name, lo=float(lo), hi=float(hi), count=int(count))
    except ValueError as exc:
        raise CliError(f"bad axis {text!r}: {exc}") from exc


def _params_from_args(args) -> KernelParams:
    gamma = _parse_gamma(args.gamma)
    if args.boxb_q is not None:
        if args.gamma != "0":
            raise CliError("--gamma and --boxb-q are mutually exclusive")
        gamma = complex(args.n - 2 * args.boxb_q)
    try:
        return KernelParams(s=args.s, tau=args.tau, gamma=gamma, n=args.n)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _output_dir() -> str:
    return os.environ.get(OUTPUT_DIR_ENV, ".")


def _resolve_output(path: str | None, default_name: str) -> str:
    if path is None:
        return os.path.join(_output_dir(), default_name)
    return path


def _atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".heisenheat-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_field(sample: FieldSample, path: str, fmt: str) -> None:
    text = sample.to_json_text() if fmt == "json" else sample.to_csv_text()
    _atomic_write_text(path, text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_eval(args) -> int:
    params = _params_from_args(args)
    if not args.axis:
        raise CliError("eval requires at least one --axis flag")
    grid = GridSpec(tuple(_parse_axis(a) for a in args.axis))
    try:
        sample = evaluate_on_grid(args.kernel, params, grid)
    except (GridMismatchError, ValueError) as exc:
        raise CliError(str(exc)) from exc
    out = _resolve_output(args.output, f"{args.kernel}.{args.format}")
    try:
        _write_field(sample, out, args.format)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    moduli = np.abs(sample.values)
    shape = "x".join(str(ax.count) for ax in grid.axes)
    print(
        f"{args.kernel}: {shape} grid ({grid.size} points), "
        f"|value| in [{moduli.min():.6e}, {moduli.max():.6e}] -> {out}"
    )
    return EXIT_OK


def _load_field(path: str) -> FieldSample:
    if not os.path.exists(path):
        raise CliError(f"input field {path!r} does not exist")
    try:
        if path.endswith(".csv"):
            return FieldSample.from_csv(path)
        return FieldSample.from_json(path)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot load field sample {path!r}: {exc}") from exc


def _trapezoid_weights(points: np.ndarray) -> np.ndarray:
    if len(points) < 2:
        raise CliError("apply requires at least 2 points per input axis")
    steps = np.diff(points)
    if not np.allclose(steps, steps[0], rtol=1e-12, atol=0.0):
        raise CliError("apply requires a uniform input grid")
    w = np.full(len(points), steps[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def _cmd_apply(args) -> int:
    params = _params_from_args(args)
    if params.s <= 0:
        raise CliError("apply requires s > 0")
    field_in = _load_field(args.input)
    names = [ax.name for ax in field_in.grid.axes]
    comp_x = ["x"] if params.n == 1 else [f"x{j}" for j in range(1, params.n + 1)]
    comp_y = ["y"] if params.n == 1 else [f"y{j}" for j in range(1, params.n + 1)]
    if names != comp_x + comp_y:
        raise CliError(
            f"input grid axes {names} do not match the expected {comp_x + comp_y}"
        )
    if not args.axis:
        raise CliError("apply requires output --axis flags")
    out_grid = GridSpec(tuple(_parse_axis(a) for a in args.axis))
    for ax in out_grid.axes:
        if ax.name not in names:
            raise CliError(f"output axis {ax.name!r} not in {names}")

    axis_points = [ax.points() for ax in field_in.grid.axes]
    weights = [_trapezoid_weights(p) for p in axis_points]
    meshes = np.meshgrid(*axis_points, indexing="ij")
    wmesh = np.ones_like(meshes[0])
    for k, w in enumerate(weights):
        shape = [1] * len(weights)
        shape[k] = len(w)
        wmesh = wmesh * w.reshape(shape)
    f_vals = field_in.values.reshape(wmesh.shape)
    src = {name: mesh.ravel() for name, mesh in zip(names, meshes)}
    wf = (wmesh.ravel() * f_vals.ravel())

    xp = np.stack([src[name] for name in comp_x], axis=-1)
    yp = np.stack([src[name] for name in comp_y], axis=-1)

    out_coords = out_grid.coordinates()
    out_vals = np.empty(out_grid.size, dtype=complex)
    for i in range(out_grid.size):
        x_pt = np.array([out_coords.get(nm, np.zeros(out_grid.size))[i] for nm in comp_x])
        y_pt = np.array([out_coords.get(nm, np.zeros(out_grid.size))[i] for nm in comp_y])
        kern = heat_kernel_h(params, xp, yp, x_pt, y_pt)
        out_vals[i] = np.sum(wf * kern)
    sample = FieldSample(grid=out_grid, values=out_vals, kernel="heat-kernel-apply", params=params)
    out = _resolve_output(args.output, f"apply.{args.format}")
    try:
        _write_field(sample, out, args.format)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    moduli = np.abs(sample.values)
    print(
        f"heat-kernel-apply: {out_grid.size} points, "
        f"|value| in [{moduli.min():.6e}, {moduli.max():.6e}] -> {out}"
    )
    return EXIT_OK


def _json_default(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _cmd_verify(args) -> int:
    report = verify.run_suite(args.suite)
    for check in report["checks"]:
        status = "pass" if check["passed"] else "FAIL"
        print(f"[{status}] {check['check']}: worst={check['worst']} tolerance={check['tolerance']}")
    out = _resolve_output(args.report, f"verify_{args.suite}.json")
    try:
        _atomic_write_text(out, json.dumps(report, indent=2, default=_json_default) + "\n")
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"suite {args.suite}: {'pass' if report['passed'] else 'FAIL'} -> {out}")
    return EXIT_OK if report["passed"] else EXIT_SUITE_FAILURE


def _identities_sweep() -> dict:
    """Max relative deviation of the two identities over s in (0, 10], |tau| <= 10."""
    s_vals = 10.0 * (np.arange(32) + 1) / 32.0
    tau_vals = np.concatenate([-10.0 * (np.arange(16) + 1) / 16.0, 10.0 * (np.arange(16) + 1) / 16.0])
    worst_b = 0.0
    worst_ab = 0.0
    for s in map(float, s_vals):
        for tau in map(float, tau_vals):
            ratio_b, ratio_ab = simplification_identities(s, tau)
            expect_b = tau / 2.0
            expect_ab = math.cosh(s * tau / 4.0) / math.sinh(s * tau / 4.0)
            worst_b = max(worst_b, abs(ratio_b - expect_b) / abs(expect_b))
            worst_ab = max(worst_ab, abs(ratio_ab - expect_ab) / abs(expect_ab))
    return {"ratio_b_vs_half_tau": worst_b, "ratio_ab_vs_coth": worst_ab}


def _twist_factorization(points) -> float:
    worst = 0.0
    for s, tau, (xp, yp), (x, y) in points:
        params = KernelParams(s=s, tau=tau, gamma=0.3 + 0.1j, n=1)
        lhs = heat_kernel_h(params, xp, yp, x, y)
        rhs = rho_tilde(params, x - xp, y - yp) * np.exp(-1j * tau * (x - xp) * yp)
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return worst


def _cmd_identities(args) -> int:
    sweep = _identities_sweep()
    points = _TWIST_POINTS
    if args.seed is not None:
        rng = np.random.default_rng(args.seed)
        points = tuple(
            (
                float(rng.uniform(0.1, 4.0)),
                float(rng.uniform(-3.0, 3.0)) or 0.5,
                (float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2))),
                (float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2))),
            )
            for _ in range(args.points)
        )
    twist = float(_twist_factorization(points))
    results = {
        "identities": sweep,
        "twist_factorization": twist,
        "tolerance": IDENTITY_TOLERANCE,
    }
    passed = bool(max(sweep.values()) < IDENTITY_TOLERANCE and twist < IDENTITY_TOLERANCE)
    results["passed"] = passed
    for key, val in sweep.items():
        print(f"[{'pass' if val < IDENTITY_TOLERANCE else 'FAIL'}] {key}: {val:.3e}")
    print(f"[{'pass' if twist < IDENTITY_TOLERANCE else 'FAIL'}] twist-factorization: {twist:.3e}")
    if args.report is not None:
        try:
            _atomic_write_text(args.report, json.dumps(results, indent=2) + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.report}: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK if passed else EXIT_SUITE_FAILURE


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_param_flags(parser, require_s=True):
    parser.add_argument("--s", type=float, required=require_s, help="heat time s")
    parser.add_argument("--tau", type=float, default=0.0, help="dual frequency tau")
    parser.add_argument("--gamma", type=str, default="0", help="complex parameter, a+bi form")
    parser.add_argument("--n", type=int, default=1, help="complex dimension n")
    parser.add_argument(
        "--boxb-q",
        type=int,
        default=None,
        help="set gamma = n - 2q (Kohn Laplacian on (0,q)-forms)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heisenheat",
        description="Evaluate Heisenberg-group heat kernels and run their verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a kernel on a grid")
    p_eval.add_argument("--kernel", required=True, choices=KERNEL_NAMES)
    _add_param_flags(p_eval)
    p_eval.add_argument("--axis", action="append", default=[], metavar="NAME:MIN:MAX:COUNT")
    p_eval.add_argument("--output", default=None, help="output path (default from env dir)")
    p_eval.add_argument("--format", choices=("csv", "json"), default="json")
    p_eval.set_defaults(func=_cmd_eval)

    p_apply = sub.add_parser("apply", help="apply the heat kernel to a sampled function")
    p_apply.add_argument("--input", required=True, help="FieldSample path (json or csv)")
    _add_param_flags(p_apply)
    p_apply.add_argument("--axis", action="append", default=[], metavar="NAME:MIN:MAX:COUNT")
    p_apply.add_argument("--output", default=None)
    p_apply.add_argument("--format", choices=("csv", "json"), default="json")
    p_apply.set_defaults(func=_cmd_apply)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", required=True, choices=verify.SUITE_NAMES)
    p_verify.add_argument("--report", default=None, help="JSON report path")
    p_verify.set_defaults(func=_cmd_verify)

    p_ident = sub.add_parser("identities", help="check the simplification identities")
    p_ident.add_argument("--seed", type=int, default=None, help="randomize the twist panel")
    p_ident.add_argument("--points", type=int, default=16, help="random twist points with --seed")
    p_ident.add_argument("--report", default=None, help="optional JSON report path")
    p_ident.set_defaults(func=_cmd_identities)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
