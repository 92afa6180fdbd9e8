# 786
# Flossh source: specfun.py
#   This file is subject to the terms and conditions defined in
#   file 'LICENSE', which is part of this source code package.


from typing import Callable, Iterable, Union
from dataclasses import dataclass
import numpy as np
import scipy.integrate
import scipy.special

from .common import log, DomainError, ContractError, EvaluationError


BESSEL_MAX_ORDER = 200
"""Largest supported Bessel order ``|n|``."""

BESSEL_MAX_ARGUMENT = 100.0
"""Largest supported Bessel argument ``|x|``."""

QUADRATURE_RULES = ("trapezoid", "simpson")
"""Supported periodic quadrature rules."""


@dataclass(frozen=True)
class QuadratureSettings:
    """Sampling of one period for the Fourier-coefficient quadrature."""

    samples_per_period: int = 1024
    """Number of sampling intervals within one period. Default: 1024"""
    rule: str = "simpson"
    """Quadrature rule (`trapezoid` or `simpson`). Default: `simpson`"""

    def __post_init__(self):
        if self.rule not in QUADRATURE_RULES:
            raise ContractError(
                f"Unknown quadrature rule {self.rule} "
                f"(expected one of {', '.join(QUADRATURE_RULES)})"
            )
        if int(self.samples_per_period) != self.samples_per_period:
            raise ContractError("samples_per_period must be an integer")
        if self.samples_per_period < 64:
            raise ContractError("samples_per_period must be at least 64")
        if self.rule == "simpson" and self.samples_per_period % 2:
            raise ContractError("samples_per_period must be even for Simpson's rule")

    def __str__(self):
        return f"{self.rule}/{self.samples_per_period}"


@dataclass
class FourierCoefficients:
    """Fourier coefficients indexed by (signed) harmonic order."""

    orders: np.ndarray
    """Harmonic orders in ascending order."""
    values: np.ndarray
    """Complex coefficient for each order in :py:attr:`orders`."""

    def __getitem__(self, n: int) -> complex:
        i = n - int(self.orders[0])
        if i < 0 or i >= len(self.orders):
            raise KeyError(n)
        return complex(self.values[i])

    def __len__(self):
        return len(self.orders)

    def as_dict(self):
        return {int(n): complex(v) for n, v in zip(self.orders, self.values)}


def bessel_j(n, x):
    """
    Bessel function of the first kind of integer order.

    :param n: Integer order (or array of orders), ``|n| <= 200``.
    :param x: Real argument (or array of arguments), ``|x| <= 100``.
    :returns: ``J_n(x)`` (broadcasted over `n` and `x`).
    :raises: :py:class:`flossh.common.DomainError` for unsupported orders or
        arguments.

    The value is evaluated at ``|n|, |x|`` and the parity relations
    ``J_{-n}(x) = J_n(-x) = (-1)^n J_n(x)`` are applied afterwards, so that they
    hold exactly.
    """

    n_arr = np.asarray(n)
    x_arr = np.asarray(x, dtype=float)
    if not np.issubdtype(n_arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(n_arr, 1), 0)):
            raise DomainError(f"Bessel order must be an integer (got {n})")
        n_arr = n_arr.astype(int)
    if np.any(np.abs(n_arr) > BESSEL_MAX_ORDER):
        raise DomainError(f"Bessel order {n} outside [-200, 200]")
    if not np.all(np.isfinite(x_arr)) or np.any(np.abs(x_arr) > BESSEL_MAX_ARGUMENT):
        raise DomainError(f"Bessel argument {x} outside [-100, 100]")

    odd = np.mod(n_arr, 2) == 1
    flip = np.logical_xor(odd & (n_arr < 0), odd & (x_arr < 0))
    val = scipy.special.jv(np.abs(n_arr), np.abs(x_arr))
    val = np.where(flip, -val, val)
    return val if np.ndim(val) else float(val)


def gaussian_phase(tau, c: float):
    """
    Phase integral of a Gaussian pulse: ``s(tau) = ∫_0^tau exp(-σ²/c²) cos σ dσ``.

    :param tau: Dimensionless time ``Ωt`` (scalar or array).
    :param c: Ratio ``Ω/Γ`` of the carrier frequency to the inverse pulse width.
    :raises: :py:class:`flossh.common.DomainError` if ``c <= 0``.

    The closed form ``(√π c/2) e^{-c²/4} Re erf(tau/c + ic/2)`` overflows for large
    `c`. Instead, the Faddeeva function ``w(z) = exp(-z²) erfc(-iz)`` is used:
    for ``tau >= 0``,

        ``s = (√π c/2) Re[e^{-c²/4} - e^{-tau²/c²} e^{-i tau} w(i tau/c - c/2)]``,

    where ``w`` is evaluated in the upper half-plane and is bounded. Negative times
    follow from the oddness of `s`.
    """

    if not c > 0:
        raise DomainError(f"Gaussian width ratio c must be positive (got {c})")
    tau = np.asarray(tau, dtype=float)
    t = np.abs(tau)
    z = 1j * t / c - c / 2
    inner = np.exp(-(c**2) / 4) - np.exp(-((t / c) ** 2)) * np.exp(
        -1j * t
    ) * scipy.special.wofz(z)
    s = np.sign(tau) * (np.sqrt(np.pi) * c / 2) * inner.real
    return s if np.ndim(s) else float(s)


def gaussian_phase_quad(tau: float, c: float) -> float:
    """
    Adaptive-quadrature evaluation of :py:func:`gaussian_phase` (reference values).
    """

    if not c > 0:
        raise DomainError(f"Gaussian width ratio c must be positive (got {c})")
    if tau == 0:
        return 0.0
    val, _ = scipy.integrate.quad(
        lambda x: np.exp(-((x / c) ** 2)),
        0,
        abs(tau),
        weight="cos",
        wvar=1.0,
        epsabs=1e-13,
        epsrel=1e-13,
        limit=500,
    )
    return float(np.sign(tau) * val)


def fourier_coefficients(
    phase_fn: Callable[[np.ndarray], np.ndarray],
    base_period: float,
    n_range: Union[int, Iterable[int]],
    q: QuadratureSettings = QuadratureSettings(),
    t_start: float = 0.0,
) -> FourierCoefficients:
    """
    Fourier coefficients ``a_n = (1/T) ∫ f(t) e^{-inΩt} dt`` over the window
    ``[t_start, t_start + T]`` with ``Ω = 2π/T``.

    With this convention ``exp(iz sin Ωt)`` yields ``a_n = J_n(z)``.

    :param phase_fn: Vectorized function of time.
    :param base_period: Integration period ``T``.
    :param n_range: Either the maximal order `M` (orders ``-M..M``) or a symmetric
        collection of orders.
    :param q: Quadrature settings.
    :param t_start: Start of the integration window.
    :raises: :py:class:`flossh.common.EvaluationError` if `phase_fn` returns a
        non-finite value.
    """

    if not base_period > 0:
        raise ContractError(f"base period must be positive (got {base_period})")
    if isinstance(n_range, (int, np.integer)):
        orders = np.arange(-int(n_range), int(n_range) + 1)
    else:
        orders = np.array(sorted(int(n) for n in n_range))
    if len(orders) == 0 or orders[0] != -orders[-1]:
        raise ContractError("harmonic orders must be symmetric around 0")
    if not np.array_equal(orders, np.arange(orders[0], orders[-1] + 1)):
        raise ContractError("harmonic orders must be contiguous")

    h = base_period / q.samples_per_period
    t = t_start + h * np.arange(q.samples_per_period + 1)
    y = np.asarray(phase_fn(t), dtype=complex)
    bad = ~np.isfinite(y)
    if np.any(bad):
        raise EvaluationError("non-finite sample", float(t[np.argmax(bad)]))

    omega = 2 * np.pi / base_period
    kernel = np.exp(-1j * omega * np.outer(orders, t)) * y[None, :]
    if q.rule == "simpson":
        vals = scipy.integrate.simpson(kernel, dx=h, axis=-1)
    else:
        vals = scipy.integrate.trapezoid(kernel, dx=h, axis=-1)
    log.trace("[specfun] {} coefficients ({}) over T= {}", len(orders), q, base_period)
    return FourierCoefficients(orders, vals / base_period)
