"""Radial spinor components for admissible levels: construction, coupling, norm.

The dominant component is z^a0 (1+z)^((1-q)/2) times a terminating Gauss
series in -z with z = exp(-2 alpha r); the exponent a0 > 0 is the decaying
branch demanded by normalizability.  The partner component follows from
the first-order coupling with the derivative taken term by term, never
numerically.  Normalization is joint: integral of (F^2 + G^2) equals one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    DegenerateDenominatorError,
    DomainError,
    GammaPoleError,
    NonConvergenceError,
    ParameterPoleError,
    ZeroNormError,
)
from .potentials import PekerisCoefficients, RadialPotential, centrifugal_approx
from .specfun import hyp3f2_unit, ln_gamma
from .spectrum import (
    PSPIN,
    SPIN,
    EnergyLevel,
    SymmetrySector,
    _channel,
    effective_coefficients,
)

__all__ = [
    "SpinorState",
    "make_radial_grid",
    "upper_component_rm",
    "lower_from_upper",
    "lower_component_pspin",
    "upper_from_lower",
    "build_state",
    "normalize",
    "normalization_constant_formula",
    "ode_residual_sup",
    "log_decay_slope",
    "count_nodes",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(20)


@dataclass(frozen=True)
class SpinorState:
    """Sampled upper/lower radial components with their analytic evaluators."""

    grid: np.ndarray
    upper: np.ndarray
    lower: np.ndarray
    norm: float
    level: EnergyLevel
    upper_eval: Callable = field(repr=False, compare=False)
    lower_eval: Callable = field(repr=False, compare=False)


def make_radial_grid(
    scale_r: float,
    alpha: float,
    n: int = 4096,
    r_min: float | None = None,
    r_max: float | None = None,
) -> np.ndarray:
    """Log-spaced points below scale_r, linear beyond it; strictly increasing."""
    if scale_r <= 0 or alpha <= 0:
        raise DomainError("scale_r and alpha must be positive")
    r_min = 1e-6 * scale_r if r_min is None else r_min
    r_max = scale_r + 32.0 / alpha if r_max is None else r_max
    if not (0 < r_min < scale_r < r_max):
        raise DomainError("need 0 < r_min < scale_r < r_max")
    n_log = max(n // 4, 8)
    left = np.geomspace(r_min, scale_r, n_log, endpoint=False)
    right = np.linspace(scale_r, r_max, n - n_log)
    return np.concatenate([left, right])


def _series_factors(n: int, b: float, c: float) -> np.ndarray:
    """Term-to-term ratios of the terminating series, fixed order."""
    if c == math.floor(c) and -(n - 1) <= c <= 0.0:
        raise ParameterPoleError(f"series denominator parameter pole: c={c}")
    return np.array([(-(n - m)) * (b + m) / ((c + m) * (m + 1)) for m in range(n)])


def _poly_eval(factors: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Sum of the terminating series at argument w (array), term order fixed."""
    acc = np.ones_like(w)
    t = np.ones_like(w)
    for fac in factors:
        t = t * fac * w
        acc = acc + t
    return acc


def _dominant_eval(level: EnergyLevel, alpha: float) -> tuple[Callable, Callable]:
    """Value and radial-derivative evaluators for the closed-form component."""
    a0, q, n = level.nu.a0, level.nu.q, level.n
    if not (a0 > 0):
        raise DomainError("level is not admissible: decay exponent a0 is not positive")
    b = n + 1.0 + 2.0 * a0 - q
    c = 2.0 * a0 + 1.0
    fac = _series_factors(n, b, c)
    fac_d = _series_factors(n - 1, b + 1.0, c + 1.0) if n >= 1 else np.array([])
    dcoef = n * b / c

    def value(r):
        z = np.exp(-2.0 * alpha * np.asarray(r, dtype=float))
        return z**a0 * (1.0 + z) ** (0.5 * (1.0 - q)) * _poly_eval(fac, -z)

    def derivative(r):
        z = np.exp(-2.0 * alpha * np.asarray(r, dtype=float))
        pref = z**a0 * (1.0 + z) ** (0.5 * (1.0 - q))
        poly = _poly_eval(fac, -z)
        # d/dz of the terminating series at argument -z
        dpoly_dz = dcoef * _poly_eval(fac_d, -z) if n >= 1 else np.zeros_like(z)
        # d/dr = -2 alpha z d/dz applied to pref * poly
        dlog_pref = a0 + z * (0.5 * (1.0 - q)) / (1.0 + z)
        return -2.0 * alpha * (pref * poly * dlog_pref + pref * z * dpoly_dz)

    return value, derivative


def upper_component_rm(
    level: EnergyLevel,
    pot: RadialPotential,
    sector: SymmetrySector,
    coeffs: PekerisCoefficients | None,
    grid: np.ndarray,
) -> np.ndarray:
    """Unnormalized upper-component samples for an admissible spin-sector level."""
    if sector.kind != SPIN:
        raise DomainError("upper_component_rm requires a spin sector")
    _, _, alpha, _ = _channel(sector, pot)
    value, _ = _dominant_eval(level, alpha)
    return value(grid)


def lower_component_pspin(
    level: EnergyLevel,
    pot: RadialPotential,
    sector: SymmetrySector,
    coeffs: PekerisCoefficients | None,
    grid: np.ndarray,
) -> np.ndarray:
    """Unnormalized lower-component samples for an admissible pspin-sector level.

    Same closed form as the spin-sector dominant component under the exact
    sign mapping; the stored exponent parameters already live in the
    mapped channel.
    """
    if sector.kind != PSPIN:
        raise DomainError("lower_component_pspin requires a pspin sector")
    _, _, alpha, _ = _channel(sector, pot)
    value, _ = _dominant_eval(level, alpha)
    return value(grid)


def _coupling_denominator(level: EnergyLevel, sector: SymmetrySector) -> float:
    m, c, e = sector.mass, sector.c_const, level.energy
    if sector.kind == SPIN:
        den = m + e - c
        what = "M + E - C"
    else:
        den = m - e + c
        what = "M - E + C"
    if abs(den) < 1e-12 * max(1.0, m):
        raise DegenerateDenominatorError(f"{what} vanishes at E={e}")
    return den


def lower_from_upper(
    level: EnergyLevel,
    pot: RadialPotential,
    sector: SymmetrySector,
    grid: np.ndarray,
) -> np.ndarray:
    """Subdominant lower component G = (F' + (kappa/r) F) / (M + E - C).

    The derivative is the term-by-term derivative of the closed form.
    """
    if sector.kind != SPIN:
        raise DomainError("lower_from_upper requires a spin sector")
    _, _, alpha, _ = _channel(sector, pot)
    den = _coupling_denominator(level, sector)
    value, derivative = _dominant_eval(level, alpha)
    return (derivative(grid) + (level.kappa / grid) * value(grid)) / den


def upper_from_lower(
    level: EnergyLevel,
    pot: RadialPotential,
    sector: SymmetrySector,
    grid: np.ndarray,
) -> np.ndarray:
    """Subdominant upper component F = (G' - (kappa/r) G) / (M - E + C)."""
    if sector.kind != PSPIN:
        raise DomainError("upper_from_lower requires a pspin sector")
    _, _, alpha, _ = _channel(sector, pot)
    den = _coupling_denominator(level, sector)
    value, derivative = _dominant_eval(level, alpha)
    return (derivative(grid) - (level.kappa / grid) * value(grid)) / den


def build_state(
    level: EnergyLevel,
    pot: RadialPotential,
    sector: SymmetrySector,
    coeffs: PekerisCoefficients | None,
    grid: np.ndarray,
) -> SpinorState:
    """Assemble the (F, G) pair for a level; unnormalized until ``normalize``."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) < 16 or np.any(np.diff(grid) <= 0) or grid[0] <= 0:
        raise DomainError("grid must be strictly increasing with positive entries")
    _, _, alpha, _ = _channel(sector, pot)
    den = _coupling_denominator(level, sector)
    value, derivative = _dominant_eval(level, alpha)
    kappa = level.kappa
    if sector.kind == SPIN:
        upper_eval = value
        lower_eval = lambda r: (derivative(r) + (kappa / np.asarray(r, dtype=float)) * value(r)) / den
    else:
        lower_eval = value
        upper_eval = lambda r: (derivative(r) - (kappa / np.asarray(r, dtype=float)) * value(r)) / den
    return SpinorState(
        grid=grid,
        upper=upper_eval(grid),
        lower=lower_eval(grid),
        norm=float("nan"),
        level=level,
        upper_eval=upper_eval,
        lower_eval=lower_eval,
    )


def _gl_panel(f: Callable, a: float, b: float) -> float:
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return float(half * np.sum(_GL_WEIGHTS * f(mid + half * _GL_NODES)))


def _gl_adaptive(f: Callable, a: float, b: float, rel_tol: float, scale_hint: float) -> float:
    whole = _gl_panel(f, a, b)
    stack = [(a, b, whole, 0)]
    total = 0.0
    pieces = []
    while stack:
        lo, hi, est, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _gl_panel(f, lo, mid)
        right = _gl_panel(f, mid, hi)
        if depth >= 40:
            raise NonConvergenceError("adaptive quadrature recursion limit reached")
        if abs(left + right - est) <= rel_tol * max(abs(left + right), scale_hint):
            pieces.append(left + right)
        else:
            stack.append((lo, mid, left, depth + 1))
            stack.append((mid, hi, right, depth + 1))
    total = math.fsum(sorted(pieces, key=abs))
    return total


def _norm_integral(state: SpinorState, rel_tol: float = 1e-11) -> tuple[float, float]:
    """Adaptive Gauss-Legendre integral of F^2+G^2 over [r0, R_cut]."""
    env = np.maximum(np.abs(state.upper), np.abs(state.lower))
    peak = float(np.max(env))
    if peak == 0.0 or not np.isfinite(peak):
        raise ZeroNormError("state is identically zero")
    above = np.nonzero(env > 1e-12 * peak)[0]
    r_cut = float(state.grid[min(above[-1] + 1, len(state.grid) - 1)])
    r0 = float(state.grid[0])

    def dens(r):
        return state.upper_eval(r) ** 2 + state.lower_eval(r) ** 2

    keep = state.grid <= r_cut
    rough = float(
        np.trapezoid((state.upper[keep] ** 2 + state.lower[keep] ** 2), state.grid[keep])
    )
    # panel seeds follow the grid layout: dense near the origin
    breaks = np.unique(
        np.concatenate(
            [
                np.geomspace(r0, min(r_cut, r0 * 1e6), 8),
                np.linspace(min(r_cut, r0 * 1e6), r_cut, 12),
            ]
        )
    )
    total = math.fsum(
        _gl_adaptive(dens, float(a), float(b), rel_tol, rough)
        for a, b in zip(breaks[:-1], breaks[1:])
        if b > a
    )
    return total, r_cut


def normalize(state: SpinorState) -> SpinorState:
    """Scale (F, G) jointly so the probability integral equals one; idempotent."""
    total, _ = _norm_integral(state)
    if not (total > 0.0) or not math.isfinite(total):
        raise ZeroNormError(f"norm integral not positive: {total}")
    scale = 1.0 / math.sqrt(total)
    up_eval, lo_eval = state.upper_eval, state.lower_eval
    new_upper = lambda r, _s=scale, _f=up_eval: _s * _f(r)
    new_lower = lambda r, _s=scale, _f=lo_eval: _s * _f(r)
    return SpinorState(
        grid=state.grid,
        upper=scale * state.upper,
        lower=scale * state.lower,
        norm=1.0,
        level=state.level,
        upper_eval=new_upper,
        lower_eval=new_lower,
    )


def normalization_constant_formula(level: EnergyLevel, alpha: float, m_cap: int = 500) -> float:
    """Diagnostic: the printed series formula for the per-component constant.

    Sums the m-series in signed-log arithmetic until terms fall below
    1e-16 of the partial sum.  The formula has a pole at n = 0 and can go
    negative under the square root for some parameters; those cases raise
    or return NaN respectively, and the quadrature constant stays the
    authoritative one.
    """
    a0, q, n = level.nu.a0, level.nu.q, level.n
    if n < 1:
        raise GammaPoleError("printed normalization constant has a pole at n=0")
    lg_pref = (
        ln_gamma(-q + 2.0).log
        + ln_gamma(-2.0 * a0 + 1.0).log
        - math.log(2.0 * alpha)
        - ln_gamma(float(n)).log
    )
    sg_pref = (
        ln_gamma(-q + 2.0).sign
        * ln_gamma(-2.0 * a0 + 1.0).sign
        * ln_gamma(float(n)).sign
    )
    terms: list[float] = []
    ln_poch, sg_poch = 0.0, 1
    x_poch = n - 2.0 * a0 + 1.0 - q
    small_streak = 0
    for m in range(m_cap):
        if m > 0:
            step = x_poch + m - 1.0
            if step == 0.0:
                break  # series truncates exactly
            ln_poch += math.log(abs(step))
            sg_poch *= 1 if step > 0 else -1
        try:
            lg_num = ln_gamma(float(n + m))
            lg_d1 = ln_gamma(m - 2.0 * a0 + 1.0)
            lg_d2 = ln_gamma(m - 2.0 * a0 - q + 2.0)
        except GammaPoleError:
            break
        f3 = hyp3f2_unit(
            -2.0 * a0 + m,
            float(-n),
            n + 1.0 - 2.0 * a0 - q,
            m - 2.0 * a0 - q + 2.0,
            1.0 - 2.0 * a0,
            n_terminating=n,
        )
        ln_mag = ln_poch + lg_num.log - math.lgamma(m + 1.0) - lg_d1.log - lg_d2.log
        sign = (-1 if m % 2 else 1) * sg_poch * lg_num.sign * lg_d1.sign * lg_d2.sign
        term = sign * math.exp(ln_mag) * f3
        terms.append(term)
        partial = math.fsum(terms)
        if m > 5 and abs(term) <= 1e-16 * max(abs(partial), 1e-300):
            small_streak += 1
            if small_streak >= 3:
                break
        else:
            small_streak = 0
    else:
        raise NonConvergenceError(f"normalization series did not settle within {m_cap} terms")
    series = math.fsum(terms)
    inner = sg_pref * math.exp(lg_pref) * series
    if inner <= 0.0:
        return float("nan")
    return inner**-0.5


def ode_residual_sup(
    level: EnergyLevel,
    pot: RadialPotential,
    sector: SymmetrySector,
    coeffs: PekerisCoefficients | None,
    r_lo: float,
    r_hi: float,
    n_pts: int = 4001,
) -> float:
    """Sup-norm residual of the dominant component in its effective equation.

    Five-point finite-difference second derivative on a dedicated uniform
    grid, relative to the largest second-derivative magnitude.
    """
    v1c, v2c, alpha, strength = _channel(sector, pot)
    eff = effective_coefficients(sector, level.energy)
    rs = np.linspace(r_lo, r_hi, n_pts)
    h = rs[1] - rs[0]
    value, _ = _dominant_eval(level, alpha)
    f = value(rs)
    z = np.exp(-2.0 * alpha * rs)
    v_chan = -4.0 * v1c * z / (1.0 + z) ** 2 + v2c * (1.0 - z) / (1.0 + z)
    if strength != 0.0 and coeffs is None:
        raise DomainError("Pekeris coefficients required for a nonzero centrifugal strength")
    cent = centrifugal_approx(coeffs, strength, rs) if strength != 0.0 else 0.0
    w = cent + eff.a_sq + eff.b_lin * v_chan
    fpp = (-f[4:] + 16 * f[3:-1] - 30 * f[2:-2] + 16 * f[1:-3] - f[:-4]) / (12.0 * h * h)
    resid = fpp - w[2:-2] * f[2:-2]
    return float(np.max(np.abs(resid)) / np.max(np.abs(fpp)))


def log_decay_slope(
    level: EnergyLevel,
    pot: RadialPotential,
    sector: SymmetrySector,
    r_from: float,
    r_to: float,
    n_pts: int = 200,
) -> float:
    """Fitted slope of log|dominant component| on [r_from, r_to]."""
    _, _, alpha, _ = _channel(sector, pot)
    value, _ = _dominant_eval(level, alpha)
    rs = np.linspace(r_from, r_to, n_pts)
    f = np.abs(value(rs))
    keep = f > 1e-290
    if np.count_nonzero(keep) < 8:
        raise DomainError("tail window underflows; move it inward")
    coef = np.polyfit(rs[keep], np.log(f[keep]), 1)
    return float(coef[0])


def count_nodes(samples: np.ndarray, rel_floor: float = 1e-9) -> int:
    """Strict sign changes, ignoring entries below rel_floor of the peak."""
    amax = np.max(np.abs(samples))
    if amax == 0.0:
        return 0
    live = samples[np.abs(samples) > rel_floor * amax]
    return int(np.sum(live[:-1] * live[1:] < 0))
