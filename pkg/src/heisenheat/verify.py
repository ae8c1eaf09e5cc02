"""Independent numerical oracles for the closed-form kernels.

Four families of checks, none of which reuse the algebra being verified:

* finite-difference residuals of the four heat equations (for u, rho_hat,
  rho_tilde and H), with the convergence order of the residual in the step
  size estimated from a log-log slope fit; second-order central stencils
  give order ~2 when the closed forms are correct,
* discrete-Fourier-transform inversion of rho_hat in (alpha, beta) against
  the closed form of rho_tilde (the Gaussian integral the derivation leaves
  implicit),
* quadrature checks of the semigroup composition and the initial condition
  of the twisted kernel H (the semigroup property is an operator consequence
  of the kernel, added here as an oracle, not quoted from a stated formula),
* Gauss-Hermite orthonormality of the underlying basis.

The delta initial condition is tested weakly, against Gaussian test
functions, because pointwise delta recovery is meaningless numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import hermite, series
from .kernels import (
    KernelParams,
    _envelope_coth_quarter,
    heat_kernel_h,
    rho_hat,
    rho_tilde,
)

__all__ = [
    "DEFAULT_STEP_SIZES",
    "ResidualReport",
    "Probe",
    "ProbeSet",
    "GaussianTestFunction",
    "InsufficientDecayError",
    "QuadratureError",
    "default_probe_set",
    "residual_u",
    "residual_rho_hat",
    "residual_rho_tilde",
    "residual_heat_kernel",
    "dft_inversion_check",
    "semigroup_check",
    "initial_condition_check",
    "orthonormality_suite",
    "conjugate_symmetry_sweep",
    "eigenfunction_residual_report",
    "run_suite",
    "SUITE_NAMES",
]

DEFAULT_STEP_SIZES = (1e-2, 5e-3, 2.5e-3)

# default probe panel (documented): s in {0.25, 1, 4}, tau in {-2, -0.5, 0, 0.5, 2},
# gamma in {0, +-1 (= n-2q for n=1), i}, coordinates in [-2, 2]
_S_PANEL = (0.25, 1.0, 4.0)
_TAU_PANEL = (-2.0, -0.5, 0.0, 0.5, 2.0)
_GAMMA_PANEL = (0.0, 1.0, -1.0, 1j)


class InsufficientDecayError(RuntimeError):
    """Transform grid too small: the kernel has not decayed at the boundary."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to stabilize within the order budget."""


@dataclass(frozen=True)
class Probe:
    """One residual evaluation point; coords maps argument name -> vector."""

    s: float
    tau: float
    gamma: complex
    n: int
    coords: dict


@dataclass(frozen=True)
class ProbeSet:
    equation: str
    probes: tuple[Probe, ...]


@dataclass(frozen=True)
class ResidualReport:
    equation: str
    step_sizes: tuple[float, ...]
    residual_norms: tuple[float, ...]
    convergence_order: float

    def as_dict(self) -> dict:
        return {
            "equation": self.equation,
            "step_sizes": list(self.step_sizes),
            "residual_norms": list(self.residual_norms),
            "convergence_order": self.convergence_order,
        }


def _fit_order(steps, norms) -> float:
    return float(np.polyfit(np.log(steps), np.log(norms), 1)[0])


def default_probe_set(equation: str) -> ProbeSet:
    """The documented default probe panel for one of the four equations."""
    pts_1d = ((0.7, -1.3), (-1.6, 0.4))
    probes = []
    if equation == "u-transformed":
        for s in _S_PANEL:
            for tau in _TAU_PANEL:
                if tau == 0.0:
                    continue  # u = rho_hat * exp(-i alpha beta / tau) needs tau != 0
                for gamma in _GAMMA_PANEL:
                    for a, b in pts_1d:
                        probes.append(Probe(s, tau, gamma, 1, {"alpha": a, "beta": b}))
    elif equation == "rho-hat":
        for s in _S_PANEL:
            for tau in _TAU_PANEL:
                for gamma in _GAMMA_PANEL:
                    for a, b in pts_1d:
                        probes.append(Probe(s, tau, gamma, 1, {"alpha": a, "beta": b}))
    elif equation == "rho-tilde":
        for s in _S_PANEL:
            for tau in _TAU_PANEL:
                for gamma in _GAMMA_PANEL:
                    for x, y in pts_1d:
                        probes.append(Probe(s, tau, gamma, 1, {"x": x, "y": y}))
        # n = 2 probes through the product structure; gamma = n - 2q gives {2, 0, -2}
        for tau, gamma in ((0.5, 2.0), (-2.0, 1j)):
            probes.append(
                Probe(1.0, tau, gamma, 2, {"x": (0.6, -1.1), "y": (-0.3, 1.4)})
            )
    elif equation == "heat-kernel":
        pairs = (
            {"xp": 0.3, "yp": -0.4, "x": 1.2, "y": 0.8},
            {"xp": -0.9, "yp": 1.1, "x": -0.9, "y": 1.1},  # diagonal probe
        )
        for s in _S_PANEL:
            for tau in _TAU_PANEL:
                for gamma in _GAMMA_PANEL:
                    for coords in pairs:
                        probes.append(Probe(s, tau, gamma, 1, dict(coords)))
        # series-branch path and an n = 2 probe
        probes.append(Probe(1.0, 1e-5, 1.0, 1, {"xp": 0.3, "yp": -0.4, "x": 1.2, "y": 0.8}))
        probes.append(
            Probe(
                1.0,
                0.5,
                0.0,
                2,
                {"xp": (0.3, -0.2), "yp": (-0.4, 0.5), "x": (1.2, 0.1), "y": (0.8, -0.6)},
            )
        )
    else:
        raise ValueError(f"unknown equation {equation!r}")
    return ProbeSet(equation=equation, probes=tuple(probes))


# ---------------------------------------------------------------------------
# finite-difference residuals
# ---------------------------------------------------------------------------

def _shift(vec, j, h):
    arr = np.atleast_1d(np.asarray(vec, dtype=float)).copy()
    arr[j] += h
    return arr


def _residual_report(equation, probe_set, step_sizes, residual_fn) -> ResidualReport:
    norms = []
    for h in step_sizes:
        worst = 0.0
        for probe in probe_set.probes:
            worst = max(worst, abs(residual_fn(probe, h)))
        norms.append(worst)
    return ResidualReport(
        equation=equation,
        step_sizes=tuple(step_sizes),
        residual_norms=tuple(norms),
        convergence_order=_fit_order(step_sizes, norms),
    )


def residual_rho_hat(probe_set: ProbeSet | None = None, step_sizes=DEFAULT_STEP_SIZES) -> ResidualReport:
    """Residual of the transformed one-dimensional heat equation for rho_hat.

    R = d rho_hat/ds - (1/4) [ (-alpha^2 - 2i alpha tau d/dbeta + tau^2 d^2/dbeta^2)
                               + (-beta^2) + i gamma (i tau) ] rho_hat
    by second-order central differences; max |R| per step size.
    """
    probe_set = probe_set or default_probe_set("rho-hat")

    def resid(p: Probe, h: float) -> complex:
        par = KernelParams(s=p.s, tau=p.tau, gamma=p.gamma, n=1)
        a, b = p.coords["alpha"], p.coords["beta"]
        f = lambda s_, b_: rho_hat(replace(par, s=s_), a, b_)
        center = f(p.s, b)
        ds = (f(p.s + h, b) - f(p.s - h, b)) / (2 * h)
        db = (f(p.s, b + h) - f(p.s, b - h)) / (2 * h)
        d2b = (f(p.s, b + h) - 2 * center + f(p.s, b - h)) / h**2
        op = (
            (-a * a) * center
            - 2j * a * p.tau * db
            + p.tau**2 * d2b
            - b * b * center
            - p.gamma * p.tau * center
        )
        return ds - 0.25 * op

    return _residual_report("rho-hat", probe_set, step_sizes, resid)


def residual_u(probe_set: ProbeSet | None = None, step_sizes=DEFAULT_STEP_SIZES) -> ResidualReport:
    """Residual of the transformed heat equation for u = rho_hat * exp(-i alpha beta / tau).

    R = du/ds - (1/4) (tau^2 d^2/dbeta^2 - beta^2 - gamma tau) u.
    """
    probe_set = probe_set or default_probe_set("u-transformed")

    def resid(p: Probe, h: float) -> complex:
        par = KernelParams(s=p.s, tau=p.tau, gamma=p.gamma, n=1)
        a, b = p.coords["alpha"], p.coords["beta"]
        u = lambda s_, b_: rho_hat(replace(par, s=s_), a, b_) * np.exp(-1j * a * b_ / p.tau)
        center = u(p.s, b)
        ds = (u(p.s + h, b) - u(p.s - h, b)) / (2 * h)
        d2b = (u(p.s, b + h) - 2 * center + u(p.s, b - h)) / h**2
        return ds - 0.25 * (p.tau**2 * d2b - b * b * center - p.gamma * p.tau * center)

    return _residual_report("u-transformed", probe_set, step_sizes, resid)


def residual_rho_tilde(probe_set: ProbeSet | None = None, step_sizes=DEFAULT_STEP_SIZES) -> ResidualReport:
    """Residual of the weighted dbar heat equation for rho_tilde.

    R = d rho_tilde/ds - (1/4) (Lap_{x,y} + 2i tau y.grad_x - (tau^2 |y|^2 + gamma tau)) rho_tilde.
    """
    probe_set = probe_set or default_probe_set("rho-tilde")

    def resid(p: Probe, h: float) -> complex:
        par = KernelParams(s=p.s, tau=p.tau, gamma=p.gamma, n=p.n)
        x = np.atleast_1d(np.asarray(p.coords["x"], dtype=float))
        y = np.atleast_1d(np.asarray(p.coords["y"], dtype=float))
        f = lambda s_, x_, y_: rho_tilde(replace(par, s=s_), x_, y_)
        center = f(p.s, x, y)
        ds = (f(p.s + h, x, y) - f(p.s - h, x, y)) / (2 * h)
        lap = 0.0
        ygrad = 0.0
        for j in range(p.n):
            lap += (f(p.s, _shift(x, j, h), y) - 2 * center + f(p.s, _shift(x, j, -h), y)) / h**2
            lap += (f(p.s, x, _shift(y, j, h)) - 2 * center + f(p.s, x, _shift(y, j, -h))) / h**2
            dxj = (f(p.s, _shift(x, j, h), y) - f(p.s, _shift(x, j, -h), y)) / (2 * h)
            ygrad += y[j] * dxj
        op = lap + 2j * p.tau * ygrad - (p.tau**2 * float(y @ y) + p.gamma * p.tau) * center
        return ds - 0.25 * op

    return _residual_report("rho-tilde", probe_set, step_sizes, resid)


def residual_heat_kernel(probe_set: ProbeSet | None = None, step_sizes=DEFAULT_STEP_SIZES) -> ResidualReport:
    """Residual of (d/ds + L~_gamma) H = 0 in the field variables (x, y), source fixed."""
    probe_set = probe_set or default_probe_set("heat-kernel")

    def resid(p: Probe, h: float) -> complex:
        par = KernelParams(s=p.s, tau=p.tau, gamma=p.gamma, n=p.n)
        xp = np.atleast_1d(np.asarray(p.coords["xp"], dtype=float))
        yp = np.atleast_1d(np.asarray(p.coords["yp"], dtype=float))
        x = np.atleast_1d(np.asarray(p.coords["x"], dtype=float))
        y = np.atleast_1d(np.asarray(p.coords["y"], dtype=float))
        f = lambda s_, x_, y_: heat_kernel_h(replace(par, s=s_), xp, yp, x_, y_)
        center = f(p.s, x, y)
        ds = (f(p.s + h, x, y) - f(p.s - h, x, y)) / (2 * h)
        lap = 0.0
        ygrad = 0.0
        for j in range(p.n):
            lap += (f(p.s, _shift(x, j, h), y) - 2 * center + f(p.s, _shift(x, j, -h), y)) / h**2
            lap += (f(p.s, x, _shift(y, j, h)) - 2 * center + f(p.s, x, _shift(y, j, -h))) / h**2
            dxj = (f(p.s, _shift(x, j, h), y) - f(p.s, _shift(x, j, -h), y)) / (2 * h)
            ygrad += y[j] * dxj
        op = lap + 2j * p.tau * ygrad - (p.tau**2 * float(y @ y) + p.gamma * p.tau) * center
        return ds - 0.25 * op

    return _residual_report("heat-kernel", probe_set, step_sizes, resid)


def eigenfunction_residual_report(step_sizes=DEFAULT_STEP_SIZES) -> ResidualReport:
    """Finite-difference check of the scaled-Hermite eigenfunction identity.

    (tau^2 d^2/dbeta^2 - beta^2 - gamma*tau) Psi^tau_m =
        -((2m+1)|tau| + gamma*tau) Psi^tau_m
    over tau in {+-0.5, +-2}, gamma in {0, 1, -1, i}, m <= 20.
    """
    panel = [
        (tau, gamma, m, beta)
        for tau in (0.5, -0.5, 2.0, -2.0)
        for gamma in (0.0, 1.0, -1.0, 1j)
        for m in (0, 3, 7, 20)
        for beta in (0.45, -1.2)
    ]
    norms = []
    for h in step_sizes:
        worst = 0.0
        for tau, gamma, m, beta in panel:
            p = hermite.ScaledHermiteParams(tau=tau, degree=m)
            psi = lambda b: hermite.eval_scaled_hermite(p, b)
            center = psi(beta)
            d2 = (psi(beta + h) - 2 * center + psi(beta - h)) / h**2
            lhs = tau**2 * d2 - beta**2 * center - gamma * tau * center
            rhs = hermite.oscillator_eigenvalue(m, tau, gamma) * center
            worst = max(worst, abs(lhs - rhs))
        norms.append(worst)
    return ResidualReport(
        equation="scaled-hermite-eigenfunction",
        step_sizes=tuple(step_sizes),
        residual_norms=tuple(norms),
        convergence_order=_fit_order(step_sizes, norms),
    )


# ---------------------------------------------------------------------------
# DFT inversion of rho_hat against rho_tilde
# ---------------------------------------------------------------------------

def dft_inversion_check(params: KernelParams, grid_extent: float = 40.0, grid_count: int = 512) -> float:
    """Invert rho_hat numerically and compare with the closed form of rho_tilde.

    Computes (2 pi)**-2 * iint rho_hat(alpha, beta) e^{i(alpha x + beta y)}
    dalpha dbeta with a discrete Fourier transform on a grid_count^2 grid over
    [-extent/2, extent/2)^2 and compares against rho_tilde on the central
    quarter of the dual spatial window.  Returns the max-norm error there
    normalized by the max of |rho_tilde| over the same region (pointwise
    relative error is meaningless in the far Gaussian tails).

    Raises InsufficientDecayError when |rho_hat| exceeds 1e-12 anywhere on
    the transform-grid boundary.
    """
    if params.n != 1:
        raise ValueError("dft_inversion_check is defined for n = 1")
    if params.s <= 0:
        raise ValueError(f"requires s > 0, got s={params.s}")
    if grid_count < 16 or grid_count % 2:
        # the checkerboard/phase reduction below centers the dual grid on 0
        # only for even N
        raise ValueError(f"grid_count must be even and >= 16, got {grid_count}")
    n_pts = grid_count
    step = grid_extent / n_pts
    freqs = -0.5 * grid_extent + step * np.arange(n_pts)
    alpha, beta = np.meshgrid(freqs, freqs, indexing="ij")
    f_hat = rho_hat(params, alpha, beta)

    boundary = max(
        float(np.max(np.abs(f_hat[0, :]))),
        float(np.max(np.abs(f_hat[-1, :]))),
        float(np.max(np.abs(f_hat[:, 0]))),
        float(np.max(np.abs(f_hat[:, -1]))),
    )
    if boundary > 1e-12:
        raise InsufficientDecayError(
            f"|rho_hat| = {boundary:.3e} > 1e-12 on the transform-grid boundary; "
            f"increase grid_extent"
        )

    # I(x_m) = step * sum_j rho_hat(alpha_j) e^{i alpha_j x_m} with
    # alpha_j = -L/2 + j*step and x_m = (m - N/2) * 2 pi / L reduces to an
    # inverse DFT after (-1)^j / (-1)^m checkerboards and an i**N constant.
    sign = (-1.0) ** np.arange(n_pts)
    checker = np.outer(sign, sign)
    transform = np.fft.ifft2(f_hat * checker) * (n_pts * n_pts)
    phase_const = (1j ** n_pts) ** 2
    inverted = (step * step / (2.0 * math.pi) ** 2) * checker * phase_const * transform

    dx = 2.0 * math.pi / grid_extent
    m_idx = np.arange(n_pts) - n_pts // 2
    keep = np.abs(m_idx) <= n_pts // 8  # central quarter of the spatial window
    x = m_idx[keep] * dx
    xg, yg = np.meshgrid(x, x, indexing="ij")
    exact = rho_tilde(params, xg, yg)
    num = inverted[np.ix_(keep, keep)]
    scale = float(np.max(np.abs(exact)))
    return float(np.max(np.abs(num - exact)) / scale)


# ---------------------------------------------------------------------------
# quadrature oracles: semigroup composition and initial condition
# ---------------------------------------------------------------------------

_QUAD_ORDERS = (64, 96, 144, 216)


def _gauss_legendre_2d(box_x, box_y, order):
    nodes, weights = leggauss(order)
    xm, xr = 0.5 * (box_x[1] + box_x[0]), 0.5 * (box_x[1] - box_x[0])
    ym, yr = 0.5 * (box_y[1] + box_y[0]), 0.5 * (box_y[1] - box_y[0])
    xs = xm + xr * nodes
    ys = ym + yr * nodes
    wx = xr * weights
    wy = yr * weights
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    gw = np.outer(wx, wy)
    return gx, gy, gw


def _adaptive_tensor_quad(integrand, box_x, box_y, rel_tol=1e-9):
    prev = None
    for order in _QUAD_ORDERS:
        gx, gy, gw = _gauss_legendre_2d(box_x, box_y, order)
        total = complex(np.sum(gw * integrand(gx, gy)))
        if prev is not None and abs(total - prev) <= rel_tol * max(abs(total), 1e-300):
            return total
        prev = total
    raise QuadratureError(
        f"tensor quadrature did not stabilize to {rel_tol:.1e} within order {_QUAD_ORDERS[-1]}"
    )


def semigroup_check(params1: KernelParams, params2: KernelParams, point_pair) -> float:
    """Relative error of the kernel composition law.

    iint H(s1, x, y, w, v) H(s2, w, v, x', y') dw dv should match
    H(s1+s2, x, y, x', y'); the integral is evaluated by tensor
    Gauss-Legendre on a box sized from the Gaussian envelopes of both
    factors (< 1e-14 at the boundary), with adaptive order refinement.
    This composition law is an operator-semigroup consequence of the kernel,
    used as an implementation-added oracle.
    """
    if (params1.tau, params1.gamma, params1.n) != (params2.tau, params2.gamma, params2.n):
        raise ValueError("semigroup_check requires identical (tau, gamma, n)")
    if params1.s <= 0 or params2.s <= 0:
        raise ValueError("semigroup_check requires s1 > 0 and s2 > 0")
    if params1.n != 1:
        raise ValueError("semigroup_check quadrature is implemented for n = 1")
    (x0, y0), (x1, y1) = point_pair
    a1 = _envelope_coth_quarter(params1.s, params1.tau)
    a2 = _envelope_coth_quarter(params2.s, params2.tau)
    radius = 7.0 / math.sqrt(min(a1, a2))
    box_x = (min(x0, x1) - radius, max(x0, x1) + radius)
    box_y = (min(y0, y1) - radius, max(y0, y1) + radius)

    def integrand(w, v):
        k1 = heat_kernel_h(params1, x0, y0, w, v)
        k2 = heat_kernel_h(params2, w, v, x1, y1)
        return k1 * k2

    composed = _adaptive_tensor_quad(integrand, box_x, box_y)
    exact = heat_kernel_h(replace(params1, s=params1.s + params2.s), x0, y0, x1, y1)
    return abs(composed - exact) / abs(exact)


@dataclass(frozen=True)
class GaussianTestFunction:
    """f(x, y) = exp(-ax*(x-cx)^2 - ay*(y-cy)^2) with ax, ay > 0."""

    ax: float = 1.0
    ay: float = 1.0
    cx: float = 0.0
    cy: float = 0.0

    def __post_init__(self):
        if self.ax <= 0 or self.ay <= 0:
            raise ValueError("Gaussian widths ax, ay must be positive")

    def __call__(self, x, y):
        return np.exp(-self.ax * (x - self.cx) ** 2 - self.ay * (y - self.cy) ** 2)

    @property
    def peak(self) -> tuple[float, float]:
        return (self.cx, self.cy)


def apply_kernel_to_function(params: KernelParams, f, point) -> complex:
    """H[f](s, point) = iint H(s, w, v, point) f(w, v) dw dv by adaptive quadrature.

    The box is centered on the evaluation point and sized from the kernel's
    Gaussian envelope; f is assumed bounded by 1 in modulus (Gaussian test
    functions), so truncation outside the kernel envelope is negligible.
    """
    if params.n != 1:
        raise ValueError("quadrature application is implemented for n = 1")
    px, py = point
    radius = 8.0 / math.sqrt(_envelope_coth_quarter(params.s, params.tau))
    box_x = (px - radius, px + radius)
    box_y = (py - radius, py + radius)

    def integrand(w, v):
        return heat_kernel_h(params, w, v, px, py) * f(w, v)

    return _adaptive_tensor_quad(integrand, box_x, box_y)


def initial_condition_check(
    params: KernelParams,
    test_fn: GaussianTestFunction,
    s_sequence,
) -> list[float]:
    """|H[f](s, p) - f(p)| at probe points for decreasing s.

    Returns one error per s value (the worst over the probe points: the peak
    of f and one offset point).  For the kernel to satisfy its delta initial
    condition these must decrease and vanish linearly in s.
    """
    probes = (test_fn.peak, (test_fn.cx + 0.35, test_fn.cy - 0.25))
    errors = []
    for s in s_sequence:
        par = replace(params, s=float(s))
        worst = 0.0
        for p in probes:
            smoothed = apply_kernel_to_function(par, test_fn, p)
            worst = max(worst, abs(smoothed - complex(test_fn(*p))))
        errors.append(worst)
    return errors


# ---------------------------------------------------------------------------
# basis and symmetry sweeps
# ---------------------------------------------------------------------------

def orthonormality_suite(max_degree: int) -> float:
    """max_{m,k <= M} |<psi_m, psi_k> - delta_mk| via Gauss-Hermite quadrature.

    The integrand is rewritten as polynomial * exp(-x**2) (envelope-free
    recurrence values), so a rule of order max_degree + 1 integrates every
    product exactly up to roundoff.
    """
    if max_degree > 60:
        raise ValueError(f"orthonormality_suite supports max_degree <= 60, got {max_degree}")
    nodes, weights = hermite.gauss_hermite_nodes(max_degree + 1)
    h_vals = hermite.hermite_polynomial_values(nodes, max_degree)
    gram = (h_vals * weights) @ h_vals.T
    return float(np.max(np.abs(gram - np.eye(max_degree + 1))))


_SYMMETRY_PAIRS = (
    ((0.3, -0.4), (1.2, 0.8)),
    ((-1.6, 0.4), (0.7, -1.3)),
    ((0.0, 0.0), (1.9, -1.9)),
    ((0.5, 0.5), (0.5, -0.5)),
)


def conjugate_symmetry_sweep(params: KernelParams, pairs=_SYMMETRY_PAIRS) -> float:
    """max |H(s, x', y', x, y) - conj(H(s, x, y, x', y'))| over point pairs.

    The symmetry holds for real gamma and tau; complex gamma breaks it
    through the e^{-gamma s tau / 4} prefactor.
    """
    if params.gamma.imag != 0:
        raise ValueError("conjugate symmetry requires real gamma")
    worst = 0.0
    for (x0, y0), (x1, y1) in pairs:
        fwd = heat_kernel_h(params, x0, y0, x1, y1)
        bwd = heat_kernel_h(params, x1, y1, x0, y0)
        worst = max(worst, abs(fwd - np.conj(bwd)))
    return worst


# ---------------------------------------------------------------------------
# named suites with pinned tolerances (consumed by the CLI)
# ---------------------------------------------------------------------------

SUITE_NAMES = ("hermite", "series", "pde", "inversion", "semigroup", "all")

_ORDER_WINDOW = (1.8, 2.2)


def _check(name, worst, tolerance, passed=None, **extra) -> dict:
    entry = {
        "check": name,
        "worst": worst,
        "tolerance": tolerance,
        "passed": bool(worst < tolerance) if passed is None else bool(passed),
    }
    entry.update(extra)
    return entry


def _suite_hermite() -> list[dict]:
    checks = [_check("orthonormality-deviation-deg60", orthonormality_suite(60), 1e-10)]
    rep = eigenfunction_residual_report()
    order_ok = _ORDER_WINDOW[0] <= rep.convergence_order <= _ORDER_WINDOW[1]
    checks.append(
        _check(
            "eigenfunction-fd-order",
            rep.convergence_order,
            list(_ORDER_WINDOW),
            passed=order_ok,
            report=rep.as_dict(),
        )
    )
    return checks


def _series_agreement_panel() -> float:
    config = series.SeriesConfig(max_terms=400, tail_tol=1e-13)
    worst = 0.0
    for s in (0.5, 1.0, 2.0):
        for tau in (0.5, 1.0, 3.0):
            for gamma in (0.0, 1.0, 1j):
                par = KernelParams(s=s, tau=tau, gamma=gamma, n=1)
                for a in (-3.0, -1.0, 0.0, 1.0, 3.0):
                    for b in (-3.0, -1.0, 0.0, 1.0, 3.0):
                        closed = rho_hat(par, a, b)
                        summed = series.rho_hat_series(config, s, a, b, tau, gamma)
                        worst = max(worst, abs(summed - closed) / abs(closed))
    return worst


def _mehler_panel() -> float:
    worst = 0.0
    grid = np.linspace(-3.0, 3.0, 13)
    for big_s in (0.1, 0.5, 0.9):
        for x in grid:
            for y in grid:
                total = series.mehler_sum(big_s, float(x), float(y))
                closed = series.mehler_closed_form(big_s, float(x), float(y))
                worst = max(worst, abs(total - closed) / abs(closed))
    return worst


def _suite_series() -> list[dict]:
    return [
        _check("series-vs-closed-form", _series_agreement_panel(), 1e-10),
        _check("mehler-identity", _mehler_panel(), 1e-11),
    ]


def _suite_pde() -> list[dict]:
    checks = []
    for rep in (residual_u(), residual_rho_hat(), residual_rho_tilde(), residual_heat_kernel()):
        order_ok = _ORDER_WINDOW[0] <= rep.convergence_order <= _ORDER_WINDOW[1]
        checks.append(
            _check(
                f"residual-order-{rep.equation}",
                rep.convergence_order,
                list(_ORDER_WINDOW),
                passed=order_ok,
                report=rep.as_dict(),
            )
        )
    return checks


def _suite_inversion() -> list[dict]:
    checks = []
    worst = 0.0
    worst_tau0 = 0.0
    for s in (0.5, 1.0, 2.0):
        for tau in (-2.0, -0.5, 0.0, 0.5, 2.0):
            for gamma in (0.0, 1.0, 1j):
                par = KernelParams(s=s, tau=tau, gamma=gamma, n=1)
                err = dft_inversion_check(par, grid_extent=40.0, grid_count=512)
                worst = max(worst, err)
                if tau == 0.0:
                    worst_tau0 = max(worst_tau0, err)
    checks.append(_check("dft-inversion", worst, 1e-6))
    checks.append(_check("dft-inversion-tau0", worst_tau0, 1e-8))
    return checks


def _suite_semigroup() -> list[dict]:
    checks = []
    panel = [
        (0.5, 0.5, 1.0, 0.0, ((0.2, -0.3), (0.2, -0.3))),
        (0.7, 0.3, 0.0, 0.0, ((0.0, 0.0), (0.6, -0.4))),
        (0.5, 0.5, 1.0, 2.0, ((0.2, -0.3), (-0.1, 0.5))),
        (0.4, 0.6, -0.5, 1j, ((0.3, 0.1), (-0.2, 0.4))),
    ]
    worst = 0.0
    worst_tau0 = 0.0
    for s1, s2, tau, gamma, points in panel:
        p1 = KernelParams(s=s1, tau=tau, gamma=gamma, n=1)
        p2 = KernelParams(s=s2, tau=tau, gamma=gamma, n=1)
        err = semigroup_check(p1, p2, points)
        worst = max(worst, err)
        if tau == 0.0:
            worst_tau0 = max(worst_tau0, err)
    checks.append(_check("semigroup-composition", worst, 1e-6))
    checks.append(_check("semigroup-composition-tau0", worst_tau0, 1e-8))

    params = KernelParams(s=1.0, tau=1.0, gamma=0.0, n=1)
    errors = initial_condition_check(
        params, GaussianTestFunction(), (0.3, 0.1, 0.03, 0.01, 0.003, 0.001)
    )
    monotone = all(errors[k + 1] <= 1.1 * errors[k] for k in range(len(errors) - 1))
    checks.append(
        _check(
            "initial-condition-final-error",
            errors[-1],
            5e-3,
            passed=(errors[-1] < 5e-3) and monotone,
            errors=errors,
            monotone=monotone,
        )
    )
    return checks


_SUITE_PANELS = {
    "hermite": "orthonormality to degree 60; eigenfunction identity over "
    "tau in {+-0.5, +-2}, gamma in {0, 1, -1, i}, m <= 20",
    "series": "s in {0.5, 1, 2}, tau in {0.5, 1, 3}, gamma in {0, 1, i}, "
    "alpha, beta in {-3, -1, 0, 1, 3}; Mehler S in {0.1, 0.5, 0.9} on [-3, 3]^2",
    "pde": "s in {0.25, 1, 4}, tau in {-2, -0.5, 0, 0.5, 2}, "
    "gamma in {0, 1, -1, i} (+ n=2 probes), coordinates in [-2, 2], "
    "steps {1e-2, 5e-3, 2.5e-3}",
    "inversion": "s in {0.5, 1, 2}, tau in {-2, -0.5, 0, 0.5, 2}, "
    "gamma in {0, 1, i}, 512^2 grid, extent 40",
    "semigroup": "composition pairs with tau in {0, 1, -0.5}, gamma in {0, 2, i}; "
    "initial condition on a Gaussian down to s = 1e-3",
}


def run_suite(name: str) -> dict:
    """Run one named verification suite; returns a JSON-ready report dict."""
    runners = {
        "hermite": _suite_hermite,
        "series": _suite_series,
        "pde": _suite_pde,
        "inversion": _suite_inversion,
        "semigroup": _suite_semigroup,
    }
    if name == "all":
        checks = []
        for key in ("hermite", "series", "pde", "inversion", "semigroup"):
            checks.extend(runners[key]())
        panel = _SUITE_PANELS
    elif name in runners:
        checks = runners[name]()
        panel = _SUITE_PANELS[name]
    else:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    return {
        "suite": name,
        "panel": panel,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }
