"""Potential models, the exponential centrifugal surrogate, and equilibrium points.

The radial family is V(r) = -v1*sech^2(alpha r) + v2*tanh(alpha r); the
reflectionless and asymmetric-well forms are parameter specializations of
it.  A trigonometric variant lives on a finite interval.  The 1/r^2
spin-orbit term is replaced near r_e by a quadratic in
u = -exp(-2 alpha r) / (1 + exp(-2 alpha r)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    DomainError,
    NoInteriorMinimumError,
    OverflowGuardError,
)

__all__ = [
    "RosenMorseGeneral",
    "ReflectionlessParams",
    "StandardRMParams",
    "TrigRMParams",
    "PekerisCoefficients",
    "PotentialSpec",
    "RadialPotential",
    "as_general",
    "eval_potential",
    "eval_potential_hyperbolic",
    "pekeris_from_formulas",
    "pekeris_from_taylor_match",
    "equilibrium_radius",
    "centrifugal_approx",
]


@dataclass(frozen=True)
class RosenMorseGeneral:
    """Asymmetric well -v1*sech^2(alpha r) + v2*tanh(alpha r)."""

    v1: float
    v2: float
    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0):
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        for name in ("v1", "v2"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")


@dataclass(frozen=True)
class ReflectionlessParams:
    """Symmetric well -a2*sech^2(alpha r); a2 = lam*(lam+1)/2 for integer lam."""

    a2: float
    alpha: float
    lam: int | None = None

    def __post_init__(self):
        if not (self.a2 > 0):
            raise DomainError(f"a2 must be positive, got {self.a2}")
        if not (self.alpha > 0):
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if self.lam is not None:
            if self.lam < 1 or self.lam != int(self.lam):
                raise DomainError(f"lam must be a positive integer, got {self.lam}")
            expected = self.lam * (self.lam + 1) / 2.0
            if abs(self.a2 - expected) > 1e-12 * max(1.0, expected):
                raise DomainError(
                    f"a2={self.a2} inconsistent with lam={self.lam} "
                    f"(expected {expected})"
                )

    @classmethod
    def from_lambda(cls, lam: int, alpha: float) -> "ReflectionlessParams":
        return cls(a2=lam * (lam + 1) / 2.0, alpha=alpha, lam=lam)


@dataclass(frozen=True)
class StandardRMParams:
    """Well -a(a+alpha)*sech^2(alpha r) + 2b*tanh(alpha r)."""

    a: float
    b: float
    alpha: float

    def __post_init__(self):
        if not (self.alpha > 0):
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if not (self.a * (self.a + self.alpha) > 0):
            raise DomainError(
                f"a*(a+alpha) must be positive for an attractive well, "
                f"got {self.a * (self.a + self.alpha)}"
            )


@dataclass(frozen=True)
class TrigRMParams:
    """Interval potential -v1*sec^2(alpha x) + v2*tan(alpha x) on [0, half_width].

    The range parameter is alpha = pi / (2 * half_width); the sec^2 term
    diverges at the interval edge.
    """

    v1: float
    v2: float
    half_width: float

    def __post_init__(self):
        if not (self.half_width > 0):
            raise DomainError(f"half_width must be positive, got {self.half_width}")
        if not (self.v1 > 0):
            raise DomainError(f"v1 must have positive real part, got {self.v1}")

    @property
    def alpha(self) -> float:
        return math.pi / (2.0 * self.half_width)


@dataclass(frozen=True)
class PekerisCoefficients:
    """Quadratic-in-u surrogate for 1/r^2 matched at the point r_e."""

    d0: float
    d1: float
    d2: float
    r_e: float
    alpha: float

    def __post_init__(self):
        if not (self.r_e > 0):
            raise DomainError(f"r_e must be positive, got {self.r_e}")
        if not (self.alpha > 0):
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        for name in ("d0", "d1", "d2"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")


PotentialSpec = Union[RosenMorseGeneral, ReflectionlessParams, StandardRMParams, TrigRMParams]
RadialPotential = Union[RosenMorseGeneral, ReflectionlessParams, StandardRMParams]


def as_general(spec: PotentialSpec) -> RosenMorseGeneral:
    """Canonicalize any radial parameterization to (v1, v2, alpha)."""
    if isinstance(spec, RosenMorseGeneral):
        return spec
    if isinstance(spec, ReflectionlessParams):
        return RosenMorseGeneral(v1=spec.a2, v2=0.0, alpha=spec.alpha)
    if isinstance(spec, StandardRMParams):
        return RosenMorseGeneral(v1=spec.a * (spec.a + spec.alpha), v2=2.0 * spec.b, alpha=spec.alpha)
    raise DomainError(f"{type(spec).__name__} has no radial canonical form")


def _rm_exponential_value(v1: float, v2: float, alpha: float, r):
    """Exponential-variable form, overflow-safe for large r (z underflows to 0)."""
    z = np.exp(-2.0 * alpha * np.asarray(r, dtype=float))
    return -4.0 * v1 * z / (1.0 + z) ** 2 + v2 * (1.0 - z) / (1.0 + z)


def eval_potential(spec: PotentialSpec, r, sec_cap: float = 1e12):
    """Evaluate V at radius r (scalar or array).

    Radial forms accept r >= 0; the interval form accepts x in
    [0, half_width] and raises once sec^2(alpha x) exceeds ``sec_cap``.
    """
    r_arr = np.asarray(r, dtype=float)
    if isinstance(spec, TrigRMParams):
        if np.any(r_arr < 0) or np.any(r_arr > spec.half_width):
            raise DomainError("x outside [0, half_width]")
        sec2 = 1.0 / np.cos(spec.alpha * r_arr) ** 2
        if np.any(sec2 > sec_cap):
            raise DomainError(f"sec^2(alpha x) exceeds cap {sec_cap} near the interval edge")
        out = -spec.v1 * sec2 + spec.v2 * np.tan(spec.alpha * r_arr)
    else:
        if np.any(r_arr < 0):
            raise DomainError("r must be nonnegative for radial potentials")
        g = as_general(spec)
        out = _rm_exponential_value(g.v1, g.v2, g.alpha, r_arr)
    return out if isinstance(out, np.ndarray) and np.ndim(r) else float(out)


def eval_potential_hyperbolic(spec: RadialPotential, r):
    """Same well through sech^2/tanh directly; dual route for equivalence checks."""
    g = as_general(spec)
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise DomainError("r must be nonnegative for radial potentials")
    out = -g.v1 / np.cosh(g.alpha * r_arr) ** 2 + g.v2 * np.tanh(g.alpha * r_arr)
    return out if isinstance(out, np.ndarray) and np.ndim(r) else float(out)


def pekeris_from_formulas(
    alpha: float, r_e: float, exponent_cap: float = 700.0
) -> PekerisCoefficients:
    """Surrogate coefficients by literal transcription of the printed formulas.

    Kept verbatim, including the internally suspicious middle coefficient;
    see ``pekeris_from_taylor_match`` for the derivative-matched set and
    the validate command for the reported discrepancy.
    """
    if not (alpha > 0 and r_e > 0):
        raise DomainError("alpha and r_e must be positive")
    x = alpha * r_e
    if 2.0 * x > exponent_cap:
        raise OverflowGuardError(
            f"exp(2*alpha*r_e) exceeds exponent cap: 2*alpha*r_e={2 * x} > {exponent_cap}"
        )
    em = math.exp(-2.0 * x)
    ep = math.exp(2.0 * x)
    c = (1.0 + em) / (2.0 * x)
    d0 = 1.0 - c**2 * (8.0 * x / (1.0 + em) - (3.0 + 2.0 * x))
    d1 = -2.0 * (ep + 1.0) * (3.0 * c - (3.0 + 2.0 * x) * c)
    d2 = (ep + 1.0) ** 2 * c**2 * (3.0 + 2.0 * x - 4.0 * x / (1.0 + em))
    return PekerisCoefficients(d0=d0, d1=d1, d2=d2, r_e=r_e, alpha=alpha)


def _u_and_derivatives(alpha: float, r: float) -> tuple[float, float, float]:
    """u = -z/(1+z) with z = exp(-2 alpha r), plus du/dr and d2u/dr2."""
    z = math.exp(-2.0 * alpha * r)
    u = -z / (1.0 + z)
    up = -2.0 * alpha * u * (1.0 + u)
    upp = 4.0 * alpha**2 * u * (1.0 + u) * (1.0 + 2.0 * u)
    return u, up, upp


def pekeris_from_taylor_match(alpha: float, r_e: float) -> PekerisCoefficients:
    """Surrogate coefficients matching 1/r^2 in value and two derivatives at r_e.

    Solves the 3x3 linear system in the basis {1, u, u^2}; the system is
    nonsingular for any alpha*r_e > 0.
    """
    if not (alpha > 0 and r_e > 0):
        raise DomainError("alpha and r_e must be positive")
    u, up, upp = _u_and_derivatives(alpha, r_e)
    mat = np.array(
        [
            [1.0, u, u * u],
            [0.0, up, 2.0 * u * up],
            [0.0, upp, 2.0 * (up * up + u * upp)],
        ]
    )
    rhs = np.array([1.0, -2.0 / r_e, 6.0 / r_e**2])
    d = np.linalg.solve(mat, rhs)
    assert np.all(np.isfinite(d)), "matching system unexpectedly singular"
    return PekerisCoefficients(d0=float(d[0]), d1=float(d[1]), d2=float(d[2]), r_e=r_e, alpha=alpha)


def equilibrium_radius(spec: RadialPotential) -> float:
    """Radius of the interior minimum, from tanh(alpha r_e) = -v2/(2 v1).

    Exists only when that ratio lies in (0, 1); otherwise the well bottom
    sits at r <= 0 and the caller must choose the matching point itself.
    """
    g = as_general(spec)
    if not (g.v1 > 0):
        raise DomainError(f"equilibrium point requires v1 > 0, got {g.v1}")
    ratio = -g.v2 / (2.0 * g.v1)
    if not (0.0 < ratio < 1.0):
        raise NoInteriorMinimumError(
            f"tanh(alpha r_e) = {ratio} outside (0, 1): no interior minimum at r > 0; "
            "supply r_e explicitly"
        )
    return math.atanh(ratio) / g.alpha


def centrifugal_approx(coeffs: PekerisCoefficients, strength: float, r):
    """strength * (d0 + d1 u + d2 u^2) / r_e^2, the smooth surrogate for strength/r^2."""
    z = np.exp(-2.0 * coeffs.alpha * np.asarray(r, dtype=float))
    u = -z / (1.0 + z)
    out = strength * (coeffs.d0 + coeffs.d1 * u + coeffs.d2 * u * u) / coeffs.r_e**2
    return out if isinstance(out, np.ndarray) and np.ndim(r) else float(out)
