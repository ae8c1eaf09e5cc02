"""Hermite eigenfunction expansion of the one-dimensional kernel.

This is the independent evaluation path used to validate the closed form of
``kernels.rho_hat``: the auxiliary function

    u(s, alpha, beta, tau) = rho_hat(s, alpha, beta, tau) * exp(-i*alpha*beta/tau)

solves the transformed heat equation

    du/ds = (1/4) * (tau^2 d^2/dbeta^2 - beta^2 - gamma*tau) u

and expands in the scaled Hermite basis as

    u = sum_m a_m(alpha, tau) * exp(-(2m+1+gamma)*s*tau/4) * Psi^tau_m(beta)

with a_m(alpha, tau) = (-i)**m * sqrt(2*pi) * tau**(1/4) * psi_m(alpha/sqrt(tau)).

Everything here is implemented on the tau > 0 branch of the derivation;
tau < 0 correctness of the closed form is established separately through the
parity property and the PDE residual oracle.  Terms decay geometrically like
exp(-m*s*tau/2), so ascending-order compensated (Kahan) summation with the
geometric tail bound as stopping rule is enough.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .hermite import hermite_values

__all__ = [
    "SeriesConfig",
    "UValue",
    "SeriesConvergenceError",
    "MehlerIdentityError",
    "coefficient_a_m",
    "u_series",
    "rho_hat_series",
    "mehler_sum",
    "mehler_closed_form",
    "truncation_tail_bound",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_SQRT_PI_INV = math.pi ** -0.5
# (-i)**m cycles with period 4
_MINUS_I_POW = (1.0 + 0.0j, -1.0j, -1.0 + 0.0j, 1.0j)

MEHLER_TOLERANCE = 1e-11


class SeriesConvergenceError(RuntimeError):
    """The requested tail tolerance is unreachable within the term budget."""


class MehlerIdentityError(RuntimeError):
    """Truncated Mehler sum and closed form disagree beyond tolerance."""


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation control: hard term cap and target tail error."""

    max_terms: int = 400
    tail_tol: float = 1e-13

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")
        if self.tail_tol <= 0:
            raise ValueError(f"tail_tol must be > 0, got {self.tail_tol}")


@dataclass(frozen=True)
class UValue:
    """Partial sum of the eigenfunction expansion of u."""

    value: complex
    terms_used: int
    tail_bound: float


def coefficient_a_m(m: int, alpha: float, tau: float) -> complex:
    """Expansion coefficient a_m(alpha, tau) = (-i)**m sqrt(2 pi) tau**(1/4) psi_m(alpha/sqrt(tau)).

    This closed form is the Fourier transform of psi_m evaluated at
    alpha/sqrt(tau); the defining integral int exp(-i*alpha*beta/tau)
    Psi^tau_m(beta) dbeta is used as an independent quadrature oracle in the
    test suite.
    """
    if tau <= 0:
        raise ValueError(f"series coefficients require tau > 0, got {tau}")
    if m < 0:
        raise ValueError(f"degree m must be >= 0, got {m}")
    psi = hermite_values(alpha / math.sqrt(tau), m)[m]
    return _MINUS_I_POW[m % 4] * _SQRT_2PI * tau ** 0.25 * float(psi)


def _kahan_add(total: complex, comp: complex, term: complex) -> tuple[complex, complex]:
    y = term - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


def u_series(
    config: SeriesConfig,
    s: float,
    alpha: float,
    beta: float,
    tau: float,
    gamma: complex = 0.0,
) -> UValue:
    """Partial sum of the expansion of u(s, alpha, beta, tau).

    Summation stops at the first M where the geometric tail bound
    |prefactor| * pi**(-1/2) * S**(M+1) / (1 - S), S = exp(-s*tau/2), drops
    below ``config.tail_tol``, or at ``config.max_terms``.  At s = 0 the
    bound degenerates (S = 1); the full budget is summed and convergence is
    estimated a posteriori from the half-budget partial sum, raising
    SeriesConvergenceError when even that estimate misses the tolerance.
    """
    if tau <= 0:
        raise ValueError(f"u_series requires tau > 0, got {tau}")
    if s < 0:
        raise ValueError(f"u_series requires s >= 0, got {s}")
    sq = math.sqrt(tau)
    psi_a = hermite_values(alpha / sq, config.max_terms)
    psi_b = hermite_values(beta / sq, config.max_terms)
    pref = _SQRT_2PI * cmath.exp(-(1.0 + gamma) * s * tau / 4.0)
    decay = math.exp(-0.5 * s * tau)

    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    power = 1.0
    half_index = config.max_terms // 2
    half_total = None
    for m in range(config.max_terms + 1):
        term = pref * _MINUS_I_POW[m % 4] * float(psi_a[m]) * float(psi_b[m]) * power
        total, comp = _kahan_add(total, comp, term)
        power *= decay
        if s > 0:
            bound = abs(pref) * _SQRT_PI_INV * power / (1.0 - decay)
            if bound < config.tail_tol:
                return UValue(value=total, terms_used=m + 1, tail_bound=bound)
        elif m == half_index:
            half_total = total
    if s == 0:
        estimate = abs(total - half_total)
        if estimate > config.tail_tol:
            raise SeriesConvergenceError(
                f"s=0 expansion converges only distributionally: residual estimate "
                f"{estimate:.3e} > tail_tol {config.tail_tol:.3e} at {config.max_terms} terms"
            )
        return UValue(value=total, terms_used=config.max_terms + 1, tail_bound=estimate)
    raise SeriesConvergenceError(
        f"tail bound still {abs(pref) * _SQRT_PI_INV * power / (1.0 - decay):.3e} "
        f"> tail_tol {config.tail_tol:.3e} after {config.max_terms} terms "
        f"(s*tau = {s * tau:.3e})"
    )


def rho_hat_series(
    config: SeriesConfig,
    s: float,
    alpha: float,
    beta: float,
    tau: float,
    gamma: complex = 0.0,
) -> complex:
    """Kernel value reconstructed from the eigenfunction expansion.

    rho_hat = exp(i*alpha*beta/tau) * u; this is the series route checked
    against the closed form of ``kernels.rho_hat``.
    """
    if s <= 0:
        raise ValueError(f"rho_hat_series requires s > 0, got {s}")
    u = u_series(config, s, alpha, beta, tau, gamma)
    return cmath.exp(1j * alpha * beta / tau) * u.value


def truncation_tail_bound(decay: float, terms: int) -> float:
    """Tail bound pi**(-1/2) * S**(M+1) / (1-S) for the Mehler-type sum."""
    if not 0 <= decay < 1:
        raise ValueError(f"decay factor must be in [0, 1), got {decay}")
    return _SQRT_PI_INV * decay ** (terms + 1) / (1.0 - decay)


def mehler_closed_form(big_s: float, x: float, y: float) -> complex:
    """Closed form of sum_m (-i*S)**m psi_m(x) psi_m(y) for 0 < S < 1."""
    s2 = big_s * big_s
    return (
        _SQRT_PI_INV
        * (1.0 + s2) ** -0.5
        * cmath.exp(
            -0.5 * (1.0 - s2) / (1.0 + s2) * (x * x + y * y)
            - 2j * big_s / (1.0 + s2) * x * y
        )
    )


def mehler_sum(big_s: float, x: float, y: float, max_terms: int = 8000) -> complex:
    """Truncated oscillator-semigroup sum sum_m (-i*S)**m psi_m(x) psi_m(y).

    Sums until the geometric tail bound is below 1e-14 of scale, then asserts
    agreement with the closed form to MEHLER_TOLERANCE relative, raising
    MehlerIdentityError on violation.  Returns the truncated sum.
    """
    if not 0.0 < big_s < 1.0:
        raise ValueError(f"requires 0 < S < 1, got {big_s}")
    # choose M so the tail bound is ~100x below the identity tolerance
    target = 1e-14
    m_stop = int(math.log(target * (1.0 - big_s) / _SQRT_PI_INV) / math.log(big_s)) + 1
    m_stop = min(max(m_stop, 8), max_terms)
    psi_x = hermite_values(x, m_stop)
    psi_y = hermite_values(y, m_stop)
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    factor = 1.0 + 0.0j
    for m in range(m_stop + 1):
        total, comp = _kahan_add(total, comp, factor * float(psi_x[m]) * float(psi_y[m]))
        factor *= -1j * big_s
    closed = mehler_closed_form(big_s, x, y)
    if abs(total - closed) > MEHLER_TOLERANCE * abs(closed):
        raise MehlerIdentityError(
            f"Mehler identity violated at S={big_s}, x={x}, y={y}: "
            f"|sum - closed| = {abs(total - closed):.3e}, |closed| = {abs(closed):.3e}"
        )
    return total
