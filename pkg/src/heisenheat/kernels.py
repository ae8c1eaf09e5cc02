"""Closed-form heat kernels in transform space.

Three kernels are implemented, all parameterized by heat time s >= 0, the
dual frequency tau of the group's central direction, a complex operator
parameter gamma, and the complex dimension n:

``rho_hat``
    full spatial Fourier transform of the fundamental solution,

        e**(-gamma*s*tau/4) * cosh(s*tau/2)**(-n/2)
            * exp(-A*(|alpha|^2+|beta|^2)/2 + i*B*alpha.beta)

``rho_tilde``
    kernel after transforming only the central variable (Gaussian inversion
    of rho_hat in (alpha, beta)),

``heat_kernel_h``
    the twisted two-point kernel H(s, x', y', x, y) =
    rho_tilde(s, x-x', y-y') * exp(-i*tau*(x-x').y') driving the weighted
    dbar heat semigroup.

The coefficient pair

    A = sinh(s*tau/2) / (tau*cosh(s*tau/2))
    B = 2*sinh(s*tau/4)**2 / (tau*cosh(s*tau/2))

has a removable singularity at tau = 0 (A -> s/2, B -> 0).  Every
coefficient function switches to a Taylor expansion in z = s*tau, truncated
at z**6, once |z| < TAYLOR_BRANCH_THRESHOLD; at the threshold both branches
agree to ~1e-15 relative.  Exponents are assembled in log space and
exponentiated once, so large |s*tau|*n underflows gracefully to 0 and the
real power cosh(s*tau/2)**(n/2) never touches a complex branch cut (gamma
enters only through the exponential).

Spatial arguments are length-n vectors; every kernel also broadcasts over
leading axes of inputs shaped (..., n), and for n == 1 plain scalars or
arrays of any shape are taken elementwise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "TAYLOR_BRANCH_THRESHOLD",
    "KERNEL_NAMES",
    "KernelParams",
    "CoefficientsAB",
    "GridAxis",
    "GridSpec",
    "FieldSample",
    "GridMismatchError",
    "coefficients_ab",
    "rho_hat",
    "rho_hat_product",
    "rho_tilde",
    "heat_kernel_h",
    "simplification_identities",
    "evaluate_on_grid",
]

# |s*tau| below which the Taylor branch is used; chosen so both branches
# carry < 1e-14 relative error (series truncated at (s*tau)**6).
TAYLOR_BRANCH_THRESHOLD = 1e-4

_LOG_2 = math.log(2.0)
_LOG_2PI = math.log(2.0 * math.pi)
_LOG_4PI = math.log(4.0 * math.pi)

KERNEL_NAMES = ("rho-hat", "rho-hat-product", "rho-tilde", "heat-kernel")


class GridMismatchError(ValueError):
    """Grid axes are inconsistent with the requested kernel."""


@dataclass(frozen=True)
class KernelParams:
    """Parameter tuple shared by all kernel evaluations.

    gamma may be any complex number; gamma = n - 2q is the value where the
    operator family coincides with the Kohn Laplacian on (0,q)-forms, see
    :meth:`for_box_b`.
    """

    s: float
    tau: float
    gamma: complex = 0.0
    n: int = 1

    def __post_init__(self):
        if self.s < 0:
            raise ValueError(f"heat time s must be >= 0, got {self.s}")
        if self.n < 1:
            raise ValueError(f"dimension n must be >= 1, got {self.n}")

    @classmethod
    def for_box_b(cls, s: float, tau: float, n: int, q: int) -> "KernelParams":
        """Convenience constructor with gamma = n - 2q (Kohn Laplacian on (0,q)-forms)."""
        if not 0 <= q <= n:
            raise ValueError(f"form degree q must satisfy 0 <= q <= n, got q={q}, n={n}")
        return cls(s=s, tau=tau, gamma=complex(n - 2 * q), n=n)


@dataclass(frozen=True)
class CoefficientsAB:
    """The coefficient pair (A, B); both carry units of time."""

    a_coef: float
    b_coef: float


# ---------------------------------------------------------------------------
# coefficient functions with removable-singularity branches
# ---------------------------------------------------------------------------

def _ab_series(s: float, tau: float) -> tuple[float, float]:
    # A = (s/2) * tanh(z/2)/(z/2),  B = (s^2 tau / 8) * (sinh(w)/w)^2 / cosh(2w), w = z/4
    z2 = (s * tau) ** 2
    a = 0.5 * s * (1.0 - z2 / 12.0 + z2 * z2 / 120.0 - 17.0 * z2 ** 3 / 20160.0)
    b = 0.125 * s * s * tau * (
        1.0 - 5.0 * z2 / 48.0 + 61.0 * z2 * z2 / 5760.0 - 277.0 * z2 ** 3 / 258048.0
    )
    return a, b


def _ab_direct(s: float, tau: float) -> tuple[float, float]:
    z = s * tau
    a = math.tanh(0.5 * z) / tau
    if abs(z) <= 700.0:
        b = 2.0 * math.sinh(0.25 * z) ** 2 / (tau * math.cosh(0.5 * z))
    else:
        # 2*sinh^2(z/4)/cosh(z/2) = 1 - sech(z/2); sech evaluated overflow-free
        e = math.exp(-0.5 * abs(z))
        b = (1.0 - 2.0 * e / (1.0 + e * e)) / tau
    return a, b


def coefficients_ab(s: float, tau: float) -> CoefficientsAB:
    """Coefficients A(s, tau), B(s, tau) with series fallback near tau = 0.

    A = sinh(s*tau/2)/(tau*cosh(s*tau/2)), B = 2*sinh(s*tau/4)**2/(tau*cosh(s*tau/2));
    for |s*tau| < TAYLOR_BRANCH_THRESHOLD both are evaluated from their Taylor
    expansions in s*tau (relative error < 1e-14), which also settles the
    removable singularity: A(s, 0) = s/2, B(s, 0) = 0.
    """
    if s < 0:
        raise ValueError(f"heat time s must be >= 0, got {s}")
    if abs(s * tau) < TAYLOR_BRANCH_THRESHOLD:
        a, b = _ab_series(s, tau)
    else:
        a, b = _ab_direct(s, tau)
    return CoefficientsAB(a_coef=a, b_coef=b)


def _log_cosh(z: float) -> float:
    """log(cosh(z)) without overflow."""
    az = abs(z)
    return az + math.log1p(math.exp(-2.0 * az)) - _LOG_2


def _log_sinh(w: float) -> float:
    """log(sinh(w)) for w > 0, stable down to tiny w."""
    return w + math.log(-math.expm1(-2.0 * w)) - _LOG_2


def _log_tau_over_sinh_quarter(s: float, tau: float) -> float:
    """log(tau / sinh(s*tau/4)) for s > 0; the ratio is positive for any tau."""
    z = s * tau
    if abs(z) < TAYLOR_BRANCH_THRESHOLD:
        z2 = z * z
        p = 1.0 - z2 / 96.0 + 7.0 * z2 * z2 / 92160.0 - 31.0 * z2 ** 3 / 61931520.0
        return math.log(4.0 / s) + math.log(p)
    return math.log(abs(tau)) - _log_sinh(0.25 * abs(z))


def _envelope_coth_quarter(s: float, tau: float) -> float:
    """(tau/4)*coth(s*tau/4) for s > 0; even in tau and >= 1/s."""
    z = s * tau
    if abs(z) < TAYLOR_BRANCH_THRESHOLD:
        z2 = z * z
        return (1.0 + z2 / 48.0 - z2 * z2 / 11520.0 + 2.0 * z2 ** 3 / 3870720.0) / s
    return 0.25 * abs(tau) / math.tanh(0.25 * abs(z))


# ---------------------------------------------------------------------------
# kernel evaluation
# ---------------------------------------------------------------------------

def _components(arr, n: int, name: str) -> np.ndarray:
    """Coerce a spatial argument to shape (..., n)."""
    a = np.asarray(arr, dtype=float)
    if a.ndim == 0:
        a = a.reshape(1)
    if a.shape[-1] == n:
        return a
    if n == 1:
        return a[..., np.newaxis]
    raise ValueError(f"{name} must have {n} components along the last axis, got shape {a.shape}")


def _maybe_scalar(values: np.ndarray):
    return complex(values) if values.ndim == 0 else values


def rho_hat(params: KernelParams, alpha, beta):
    """Spatial Fourier transform of the fundamental solution.

    Returns e**(-gamma*s*tau/4) * cosh(s*tau/2)**(-n/2)
        * exp(-A*(|alpha|^2+|beta|^2)/2 + i*B*alpha.beta).

    At s = 0 this is identically 1 (transform of the delta distribution); at
    tau = 0 it reduces to the Gaussian exp(-s*(|alpha|^2+|beta|^2)/4).
    """
    a = _components(alpha, params.n, "alpha")
    b = _components(beta, params.n, "beta")
    coef = coefficients_ab(params.s, params.tau)
    sq = np.sum(a * a, axis=-1) + np.sum(b * b, axis=-1)
    dot = np.sum(a * b, axis=-1)
    st = params.s * params.tau
    expo = (
        -params.gamma * st / 4.0
        - 0.5 * params.n * _log_cosh(0.5 * st)
        - 0.5 * coef.a_coef * sq
        + 1j * coef.b_coef * dot
    )
    return _maybe_scalar(np.exp(expo))


def rho_hat_product(params: KernelParams, alpha, beta):
    """rho_hat assembled as the product of n one-dimensional kernels.

    Dimension reduction: the n-dimensional kernel with parameter gamma equals
    the product over j of one-dimensional kernels with parameter gamma/n at
    (alpha_j, beta_j).  Agrees with :func:`rho_hat` to floating-point roundoff.
    """
    a = _components(alpha, params.n, "alpha")
    b = _components(beta, params.n, "beta")
    one = replace(params, gamma=params.gamma / params.n, n=1)
    out = None
    for j in range(params.n):
        fac = rho_hat(one, a[..., j], b[..., j])
        out = fac if out is None else out * fac
    return out


def rho_tilde(params: KernelParams, x, y):
    """Fundamental solution of the weighted dbar heat equation (partial transform).

    e**(-gamma*s*tau/4) / ((2*pi)**n * cosh(s*tau/2)**(n/2) * (A^2+B^2)**(n/2))
        * exp(-A*(|x|^2+|y|^2)/(2*(A^2+B^2)) - i*B*x.y/(A^2+B^2))

    Requires s > 0; the s -> 0 limit is the delta distribution.  At tau = 0
    the coefficients reduce to A = s/2, B = 0 and the kernel becomes the
    Gaussian (pi*s)**(-n) * exp(-(|x|^2+|y|^2)/s).
    """
    if params.s <= 0:
        raise ValueError(f"rho_tilde requires s > 0, got s={params.s}")
    xv = _components(x, params.n, "x")
    yv = _components(y, params.n, "y")
    coef = coefficients_ab(params.s, params.tau)
    a_c, b_c = coef.a_coef, coef.b_coef
    denom = a_c * a_c + b_c * b_c
    sq = np.sum(xv * xv, axis=-1) + np.sum(yv * yv, axis=-1)
    dot = np.sum(xv * yv, axis=-1)
    st = params.s * params.tau
    expo = (
        -params.gamma * st / 4.0
        - params.n * _LOG_2PI
        - 0.5 * params.n * (_log_cosh(0.5 * st) + math.log(denom))
        - 0.5 * (a_c / denom) * sq
        - 1j * (b_c / denom) * dot
    )
    return _maybe_scalar(np.exp(expo))


def heat_kernel_h(params: KernelParams, xp, yp, x, y):
    """Two-point heat kernel H(s, x', y', x, y) of the weighted dbar semigroup.

    tau**n * e**(-gamma*s*tau/4) / ((4*pi)**n * sinh(s*tau/4)**n)
        * exp(-(tau/4)*coth(s*tau/4)*(|x-x'|^2+|y-y'|^2)
              - i*(tau/2)*(x-x').(y+y'))

    Equal to rho_tilde(s, x-x', y-y') times the twist factor
    exp(-i*tau*(x-x').y'); the (x', y') pair is the integration (source)
    argument of the induced operator H[f].  Requires s > 0; the tau -> 0
    limit is the Gaussian (pi*s)**(-n) * exp(-(|x-x'|^2+|y-y'|^2)/s),
    reached through the series branch.
    """
    if params.s <= 0:
        raise ValueError(f"heat_kernel_h requires s > 0, got s={params.s}")
    xs = _components(xp, params.n, "xp")
    ys = _components(yp, params.n, "yp")
    xf = _components(x, params.n, "x")
    yf = _components(y, params.n, "y")
    u = xf - xs
    v = yf - ys
    r2 = np.sum(u * u, axis=-1) + np.sum(v * v, axis=-1)
    tw = np.sum(u * (yf + ys), axis=-1)
    st = params.s * params.tau
    expo = (
        -params.gamma * st / 4.0
        + params.n * (_log_tau_over_sinh_quarter(params.s, params.tau) - _LOG_4PI)
        - _envelope_coth_quarter(params.s, params.tau) * r2
        - 0.5j * params.tau * tw
    )
    return _maybe_scalar(np.exp(expo))


def simplification_identities(s: float, tau: float) -> tuple[float, float]:
    """The two cosh/sinh reductions used to rewrite the twisted kernel.

    Returns (B/(A^2+B^2), A/B), which equal (tau/2, coth(s*tau/4)) exactly;
    both ratios are formed from independently computed A and B so the return
    value is a genuine numerical check of the identities, not a tautology.
    """
    if s <= 0:
        raise ValueError(f"requires s > 0, got s={s}")
    if tau == 0:
        raise ValueError("requires tau != 0 (B vanishes at tau = 0)")
    coef = coefficients_ab(s, tau)
    denom = coef.a_coef ** 2 + coef.b_coef ** 2
    return coef.b_coef / denom, coef.a_coef / coef.b_coef


# ---------------------------------------------------------------------------
# grids, field samples, serialization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridAxis:
    """One rectangular grid axis: `count` values from `lo` to `hi` inclusive."""

    name: str
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError(f"axis {self.name}: count must be >= 1, got {self.count}")
        if self.lo > self.hi:
            raise ValueError(f"axis {self.name}: min {self.lo} exceeds max {self.hi}")

    def points(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.lo])
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class GridSpec:
    """Rectangular evaluation grid; points enumerate in row-major axis order."""

    axes: tuple[GridAxis, ...]

    def __post_init__(self):
        names = [ax.name for ax in self.axes]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate axis names in {names}")

    @property
    def size(self) -> int:
        return int(np.prod([ax.count for ax in self.axes], dtype=np.int64))

    def coordinates(self) -> dict[str, np.ndarray]:
        """Flattened per-axis coordinates of every grid point, row-major."""
        meshes = np.meshgrid(*[ax.points() for ax in self.axes], indexing="ij")
        return {ax.name: mesh.ravel() for ax, mesh in zip(self.axes, meshes)}


@dataclass
class FieldSample:
    """Complex kernel samples over a GridSpec, the unit of CLI output.

    `values` is the flat row-major complex array; `params` and `kernel` record
    where the samples came from (absent for samples loaded from bare CSV).
    """

    grid: GridSpec
    values: np.ndarray
    kernel: str = ""
    params: KernelParams | None = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex).ravel()
        if self.values.size != self.grid.size:
            raise ValueError(
                f"values length {self.values.size} != grid size {self.grid.size}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field sample contains non-finite values")

    # -- serialization: 17 significant digits, bit-exact decimal round trip --

    def to_csv(self, path) -> None:
        """Write one row per grid point: coordinates in axis order, then Re, Im."""
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(self.to_csv_text())

    def to_csv_text(self) -> str:
        coords = self.grid.coordinates()
        names = [ax.name for ax in self.grid.axes]
        lines = [",".join(names + ["re", "im"])]
        cols = [coords[name] for name in names]
        for i in range(self.grid.size):
            row = [_fmt(c[i]) for c in cols]
            row.append(_fmt(self.values[i].real))
            row.append(_fmt(self.values[i].imag))
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"

    def to_json(self, path) -> None:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(self.to_json_text())

    def to_json_text(self) -> str:
        """Serialize with every float rendered at 17 significant digits."""
        parts = ['{\n  "kernel": ' + json.dumps(self.kernel)]
        if self.params is not None:
            p = self.params
            parts.append(
                '  "params": {"s": %s, "tau": %s, "gamma": [%s, %s], "n": %d}'
                % (_fmt(p.s), _fmt(p.tau), _fmt(p.gamma.real), _fmt(p.gamma.imag), p.n)
            )
        axes = ", ".join(
            '{"name": %s, "min": %s, "max": %s, "count": %d}'
            % (json.dumps(ax.name), _fmt(ax.lo), _fmt(ax.hi), ax.count)
            for ax in self.grid.axes
        )
        parts.append('  "grid": [%s]' % axes)
        vals = ", ".join(
            "[%s, %s]" % (_fmt(v.real), _fmt(v.imag)) for v in self.values
        )
        parts.append('  "values": [%s]\n}' % vals)
        return ",\n".join(parts) + "\n"

    @classmethod
    def from_json(cls, path) -> "FieldSample":
        with open(path, "r", encoding="ascii") as fh:
            doc = json.load(fh)
        axes = tuple(
            GridAxis(a["name"], float(a["min"]), float(a["max"]), int(a["count"]))
            for a in doc["grid"]
        )
        values = np.array([complex(re, im) for re, im in doc["values"]])
        params = None
        if "params" in doc:
            p = doc["params"]
            params = KernelParams(
                s=float(p["s"]),
                tau=float(p["tau"]),
                gamma=complex(p["gamma"][0], p["gamma"][1]),
                n=int(p["n"]),
            )
        return cls(grid=GridSpec(axes), values=values, kernel=doc.get("kernel", ""), params=params)

    @classmethod
    def from_csv(cls, path) -> "FieldSample":
        """Rebuild a sample from CSV written by :meth:`to_csv`.

        Axis structure is recovered from the row-major coordinate columns;
        kernel/params metadata is not stored in CSV and stays empty.
        """
        with open(path, "r", encoding="ascii") as fh:
            header = fh.readline().strip().split(",")
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
        if header[-2:] != ["re", "im"]:
            raise ValueError(f"CSV must end with re,im columns, got {header}")
        names = header[:-2]
        axes = []
        for k, name in enumerate(names):
            col = data[:, k]
            uniq = col[np.sort(np.unique(col, return_index=True)[1])]
            axes.append(GridAxis(name, float(uniq[0]), float(uniq[-1]), len(uniq)))
        grid = GridSpec(tuple(axes))
        if grid.size != data.shape[0]:
            raise ValueError("CSV rows do not form a full row-major rectangular grid")
        coords = grid.coordinates()
        for k, name in enumerate(names):
            if not np.array_equal(coords[name], data[:, k]):
                raise ValueError("CSV rows are not in row-major grid order")
        return cls(grid=grid, values=data[:, -2] + 1j * data[:, -1])


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


# axis bases consumed by each kernel, in argument order
_KERNEL_AXES = {
    "rho-hat": ("alpha", "beta"),
    "rho-hat-product": ("alpha", "beta"),
    "rho-tilde": ("x", "y"),
    "heat-kernel": ("xp", "yp", "x", "y"),
}

_KERNEL_FUNCS = {
    "rho-hat": rho_hat,
    "rho-hat-product": rho_hat_product,
    "rho-tilde": rho_tilde,
    "heat-kernel": heat_kernel_h,
}


def _component_names(base: str, n: int) -> list[str]:
    return [base] if n == 1 else [f"{base}{j}" for j in range(1, n + 1)]


def evaluate_on_grid(kernel: str, params: KernelParams, grid: GridSpec) -> FieldSample:
    """Evaluate a named kernel at every grid point, row-major over the axes.

    Grid axes may cover any subset of the kernel's spatial components plus
    "s" and "tau"; spatial components without an axis are held at 0, and
    s/tau axes override the values in `params` pointwise.  Unknown axis names
    raise GridMismatchError.
    """
    if kernel not in _KERNEL_FUNCS:
        raise GridMismatchError(f"unknown kernel {kernel!r}; expected one of {KERNEL_NAMES}")
    bases = _KERNEL_AXES[kernel]
    allowed = {"s", "tau"}
    for base in bases:
        allowed.update(_component_names(base, params.n))
    for ax in grid.axes:
        if ax.name not in allowed:
            raise GridMismatchError(
                f"axis {ax.name!r} is not consumed by kernel {kernel!r} at n={params.n} "
                f"(allowed: {sorted(allowed)})"
            )

    coords = grid.coordinates()
    npts = grid.size
    func = _KERNEL_FUNCS[kernel]

    def component_block(base: str) -> np.ndarray:
        block = np.zeros((npts, params.n))
        for j, name in enumerate(_component_names(base, params.n)):
            if name in coords:
                block[:, j] = coords[name]
        return block

    blocks = [component_block(base) for base in bases]
    if "s" not in coords and "tau" not in coords:
        values = func(params, *blocks)
    else:
        s_vals = coords.get("s", np.full(npts, params.s))
        tau_vals = coords.get("tau", np.full(npts, params.tau))
        values = np.empty(npts, dtype=complex)
        for i in range(npts):
            pt_params = replace(params, s=float(s_vals[i]), tau=float(tau_vals[i]))
            values[i] = func(pt_params, *[blk[i] for blk in blocks])
    return FieldSample(grid=grid, values=values, kernel=kernel, params=params)
