"""Special functions and deterministic adaptive quadrature.

All operations are pure functions.  The adaptive integrator walks panels in
a fixed depth-first order and accumulates partial sums with ``math.fsum``,
so repeated calls with identical inputs are bit-identical.

Oscillatory half-line integrals (Hankel kernels) are never integrated raw:
the caller declares a damping substitution ``a -> a*(1 + i*eps)`` and the
results for a geometric ladder of ``eps`` values are extrapolated to
``eps -> 0`` by Neville's scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import special as _sp

from .errors import DomainError, NonConvergence

__all__ = [
    "QuadratureResult",
    "Interval",
    "HalfLine",
    "Product",
    "bessel_j0y0",
    "hankel1_0",
    "gamma_real",
    "integrate",
    "extrapolate_to_zero",
    "hankel_time_integral",
    "hankel0_halfline_moment",
    "DEFAULT_EPS_LADDER",
]

# Geometric damping ladder, relative units.  Small enough that the Neville
# limit is accurate, large enough that the damped tails stay cheap.
DEFAULT_EPS_LADDER: tuple[float, ...] = (0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625)

# Damped Gaussian/oscillatory tails are truncated where the envelope drops
# below exp(-_TAIL_LOG).
_TAIL_LOG = 45.0


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float


@dataclass(frozen=True)
class HalfLine:
    """Semi-infinite ray [lo, inf), mapped to (0,1) via u -> lo + scale*u/(1-u).

    The integrand must decay; oscillatory integrands must be damped by the
    caller (see module docstring) before being handed to ``integrate``.
    """

    lo: float = 0.0
    scale: float = 1.0


@dataclass(frozen=True)
class Product:
    """Cartesian product of two 1-D regions, integrated as an iterated integral."""

    first: Interval | HalfLine
    second: Interval | HalfLine


# ---------------------------------------------------------------------------
# special functions


def bessel_j0y0(x: float) -> tuple[float, float]:
    """Bessel functions J0(x) and Y0(x) for x > 0."""
    if not x > 0.0:
        raise DomainError(f"bessel_j0y0 requires x > 0, got {x!r}")
    return float(_sp.j0(x)), float(_sp.y0(x))


def hankel1_0(x) -> complex:
    """Outgoing Hankel function H0^(1)(x) = J0(x) + i*Y0(x).

    Accepts real x > 0, or complex x with Im(x) >= 0 (damped arguments).
    """
    if isinstance(x, complex) or np.iscomplexobj(x):
        z = complex(x)
        if z.imag < 0.0:
            raise DomainError("hankel1_0 requires Im(x) >= 0 for complex x")
        if z == 0.0:
            raise DomainError("hankel1_0 undefined at 0")
        return complex(_sp.hankel1(0, z))
    j0, y0 = bessel_j0y0(float(x))
    return complex(j0, y0)


def gamma_real(x: float) -> float:
    """Gamma function on the positive real axis."""
    if not x > 0.0:
        raise DomainError(f"gamma_real requires x > 0, got {x!r}")
    return math.gamma(x)


# ---------------------------------------------------------------------------
# adaptive Gauss-Kronrod quadrature

# 15-point Kronrod abscissae on [-1, 1] (nonnegative half) with weights,
# embedding the 7-point Gauss rule.
_XK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])

_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])          # 15 ascending nodes
_WEIGHTS_K = np.concatenate([_WK[:-1], _WK[::-1]])
_GAUSS_IDX = np.arange(1, 15, 2)                          # Gauss nodes inside Kronrod
_WEIGHTS_G = np.concatenate([_WG[:-1], _WG[::-1]])


def _panel(f, lo: float, hi: float):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid + half * _NODES
    y = np.asarray(f(x))
    vk = half * np.sum(_WEIGHTS_K * y)
    vg = half * np.sum(_WEIGHTS_G * y[_GAUSS_IDX])
    return vk, abs(vk - vg)


def _adaptive_interval(f, lo: float, hi: float, tol: float, limit: int):
    """Depth-first adaptive bisection with the embedded G7-K15 pair."""
    total_len = hi - lo
    values: list[complex] = []
    errors: list[float] = []
    evaluations = 0
    panels = 0
    stack = [(lo, hi)]
    overflow = False
    while stack:
        a, b = stack.pop()
        vk, err = _panel(f, a, b)
        evaluations += 15
        panels += 1
        width = b - a
        if err <= tol * max(width / total_len, 1e-3) or width <= 1e-14 * total_len:
            values.append(complex(vk))
            errors.append(err)
        elif panels >= limit:
            overflow = True
            values.append(complex(vk))
            errors.append(err)
        else:
            m = 0.5 * (a + b)
            stack.append((m, b))
            stack.append((a, m))
    value = complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
    err_total = math.fsum(errors)
    result = QuadratureResult(value, err_total, evaluations)
    if overflow:
        raise NonConvergence(
            f"quadrature budget of {limit} panels exhausted (err={err_total:.3e})",
            result=result,
        )
    return result


def _halfline_to_unit(f, region: HalfLine):
    lo, scale = region.lo, region.scale

    def g(u: np.ndarray) -> np.ndarray:
        omu = 1.0 - u
        x = lo + scale * u / omu
        return np.asarray(f(x)) * (scale / omu**2)

    return g


def integrate(f: Callable, region, tol: float = 1e-9, *, limit: int = 4096) -> QuadratureResult:
    """Deterministic adaptive quadrature over a 1-D region or a product.

    ``f`` must accept a numpy array of abscissae and return values
    elementwise (real or complex).  For ``Product`` regions the signature is
    ``f(x, y)`` with scalar ``x`` and vector ``y``.

    Raises :class:`NonConvergence` (carrying the best value) when the panel
    budget runs out.
    """
    if isinstance(region, tuple) and len(region) == 2:
        region = Interval(float(region[0]), float(region[1]))
    if isinstance(region, Interval):
        return _adaptive_interval(f, region.lo, region.hi, tol, limit)
    if isinstance(region, HalfLine):
        return _adaptive_interval(_halfline_to_unit(f, region), 0.0, 1.0, tol, limit)
    if isinstance(region, Product):
        evals = 0
        errs = 0.0

        def outer(xs: np.ndarray) -> np.ndarray:
            nonlocal evals, errs
            out = np.empty(len(xs), dtype=complex)
            for i, x in enumerate(xs):
                inner = integrate(lambda y, _x=x: f(_x, y), region.second,
                                  tol=tol / 3.0, limit=limit)
                evals += inner.evaluations
                errs += inner.error_estimate
                out[i] = inner.value
            return out

        res = integrate(outer, region.first, tol=tol, limit=limit)
        return QuadratureResult(res.value, res.error_estimate + errs, res.evaluations + evals)
    raise TypeError(f"unsupported region {region!r}")


# ---------------------------------------------------------------------------
# damping ladders


def extrapolate_to_zero(eps: Sequence[float], values: Sequence[complex]) -> tuple[complex, float]:
    """Neville polynomial extrapolation of values(eps) to eps = 0.

    Returns the limit and a spread-based error estimate (the change in the
    final extrapolant when the last ladder rung is dropped).
    """
    eps = [float(e) for e in eps]
    vals = [complex(v) for v in values]
    n = len(eps)
    if n == 0:
        raise ValueError("empty ladder")
    if n == 1:
        return vals[0], abs(vals[0])

    def neville(es, vs):
        tab = list(vs)
        m = len(es)
        for level in range(1, m):
            for i in range(m - level):
                tab[i] = tab[i + 1] + (tab[i + 1] - tab[i]) * es[i + level] / (es[i] - es[i + level])
        return tab[0]

    full = neville(eps, vals)
    reduced = neville(eps[:-1], vals[:-1])
    return full, abs(full - reduced)


def hankel_time_integral(
    x: float,
    z: float,
    eps_ladder: Sequence[float] = DEFAULT_EPS_LADDER,
    tol: float = 1e-9,
) -> QuadratureResult:
    """H0^(1)(x*z) recomputed from its oscillatory time integral.

    The kernel exp(i*x*(t + z^2/t)/2)/t is integrated over t in (0, inf)
    after the damping substitution x -> x*(1+i*eps); the substitution
    t = z*exp(s) turns the exponent into i*x*z*(1+i*eps)*cosh(s), absolutely
    convergent for eps > 0.  The ladder is extrapolated to eps -> 0.
    """
    if x <= 0 or z <= 0:
        raise DomainError("hankel_time_integral requires x > 0 and z > 0")
    vals = []
    evals = 0
    err_quad = 0.0
    for eps in eps_ladder:
        w = x * z * complex(1.0, eps)
        s_max = math.acosh(max(_TAIL_LOG / (x * z * eps), 2.0))

        def f(s: np.ndarray) -> np.ndarray:
            return np.exp(1j * w * np.cosh(s))

        res = integrate(f, Interval(0.0, s_max), tol=tol, limit=65536)
        vals.append(res.value * (2.0 / (1j * math.pi)))
        evals += res.evaluations
        err_quad = max(err_quad, res.error_estimate)
    limit, spread = extrapolate_to_zero(eps_ladder, vals)
    return QuadratureResult(limit, spread + err_quad, evals)


def hankel0_halfline_moment(
    mu: float,
    a: float,
    eps_ladder: Sequence[float] = DEFAULT_EPS_LADDER,
    tol: float = 1e-9,
) -> QuadratureResult:
    """Damped half-line moment  integral of z^mu * H0^(1)(a z) dz over (0, inf).

    Evaluated with the substitution a -> a*(1+i*eps) on a ladder of eps
    values, extrapolated to eps -> 0.
    """
    if a <= 0:
        raise DomainError("hankel0_halfline_moment requires a > 0")
    vals = []
    evals = 0
    err_quad = 0.0
    for eps in eps_ladder:
        aa = a * complex(1.0, eps)
        z_max = _TAIL_LOG / (a * eps)

        def f(z: np.ndarray) -> np.ndarray:
            return z**mu * _sp.hankel1(0, aa * z)

        res = integrate(f, Interval(0.0, z_max), tol=tol, limit=65536)
        vals.append(res.value)
        evals += res.evaluations
        err_quad = max(err_quad, res.error_estimate)
    limit, spread = extrapolate_to_zero(eps_ladder, vals)
    return QuadratureResult(limit, spread + err_quad, evals)
