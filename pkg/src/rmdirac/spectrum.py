"""Closed-form transcendental energy equations and the bracketing root scanner.

Each radial sector reduces to one quadratic-in-exponents quantization rule;
the residual functions below return (left side - right side) of that rule
in units of alpha^2, so a bound state is a zero.  The scanner walks a
uniform energy grid over the admissible window, splits brackets at
quantization poles, and refines sign changes by plain bisection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import (
    BoundViolationError,
    DomainError,
    InadmissibleEnergyError,
    NoBoundStateError,
    QuantizationPoleError,
)
from .potentials import (
    PekerisCoefficients,
    PotentialSpec,
    RadialPotential,
    StandardRMParams,
    TrigRMParams,
    as_general,
)

__all__ = [
    "SymmetrySector",
    "EffectiveCoefficients",
    "NUParameters",
    "EnergyLevel",
    "SearchConfig",
    "effective_coefficients",
    "centrifugal_strength",
    "spin_residual_rm",
    "pspin_residual_rm",
    "kg_residual",
    "swave_trig_rm_residual",
    "nonrel_energy_reflectionless",
    "nonrel_energy_rm",
    "find_levels",
    "level_parameters",
    "energy_window",
]

SPIN = "spin"
PSPIN = "pspin"


@dataclass(frozen=True)
class SymmetrySector:
    """Which effective radial equation applies: sector kind, kappa, mass, symmetry constant."""

    kind: str
    kappa: int
    mass: float
    c_const: float = 0.0

    def __post_init__(self):
        if self.kind not in (SPIN, PSPIN):
            raise DomainError(f"kind must be 'spin' or 'pspin', got {self.kind!r}")
        if self.kappa == 0 or self.kappa != int(self.kappa):
            raise DomainError(f"kappa must be a nonzero integer, got {self.kappa}")
        if not (self.mass > 0):
            raise DomainError(f"mass must be positive, got {self.mass}")

    @property
    def orbital(self) -> int:
        """l (spin) or l-tilde (pspin) recovered from kappa."""
        k = self.kappa
        if self.kind == SPIN:
            return k if k > 0 else -k - 1
        return k - 1 if k > 0 else -k


@dataclass(frozen=True)
class EffectiveCoefficients:
    """Energy-dependent constants making the radial equation Schroedinger-like."""

    a_sq: float
    b_lin: float


@dataclass(frozen=True)
class NUParameters:
    """Dimensionless exponent parameters of the reduced hypergeometric equation."""

    a0: float
    a1: float
    a2: float
    q: float


@dataclass(frozen=True)
class EnergyLevel:
    """One closed-form bound-state candidate with its admissibility flags."""

    n: int
    kappa: int
    energy: float
    residual: float
    nu: NUParameters
    admissible: bool
    bracket: float = 0.0  # quantization bracket m + w/(4 alpha^2 m); negative when admissible


@dataclass(frozen=True)
class SearchConfig:
    """Scan grid density and bisection tolerance for the root finder."""

    grid_points: int = 2000
    tol: float = 1e-12
    max_iter: int = 200
    e_min: float | None = None
    e_max: float | None = None
    margin: float = 1e-9


def centrifugal_strength(sector: SymmetrySector) -> float:
    """kappa(kappa+1) for spin, kappa(kappa-1) for pspin."""
    k = sector.kappa
    return float(k * (k + 1)) if sector.kind == SPIN else float(k * (k - 1))


def effective_coefficients(sector: SymmetrySector, energy: float) -> EffectiveCoefficients:
    """A^2 and B at a trial energy (hbar = c = 1)."""
    m, c = sector.mass, sector.c_const
    if sector.kind == SPIN:
        return EffectiveCoefficients(
            a_sq=m * m - energy * energy - (m - energy) * c,
            b_lin=m + energy - c,
        )
    return EffectiveCoefficients(
        a_sq=m * m - energy * energy + (m + energy) * c,
        b_lin=m - energy + c,
    )


def _channel(sector: SymmetrySector, pot: RadialPotential) -> tuple[float, float, float, float]:
    """(v1, v2, alpha, strength) as they enter the effective equation.

    The pspin equation couples through -B*V, which is the spin-form coupling
    with both well parameters negated.
    """
    g = as_general(pot)
    s = centrifugal_strength(sector)
    if sector.kind == SPIN:
        return g.v1, g.v2, g.alpha, s
    return -g.v1, -g.v2, g.alpha, s


def _pekeris_terms(
    strength: float, coeffs: PekerisCoefficients | None, alpha: float
) -> tuple[float, float, float]:
    """(d0, d1-d2, d2/alpha^2) terms scaled by strength/r_e^2; zero when strength is."""
    if strength == 0.0:
        return 0.0, 0.0, 0.0
    if coeffs is None:
        raise DomainError(
            "Pekeris coefficients are required when the centrifugal strength is nonzero"
        )
    re2 = coeffs.r_e**2
    return (
        strength * coeffs.d0 / re2,
        strength * (coeffs.d1 - coeffs.d2) / re2,
        strength * coeffs.d2 / (alpha**2 * re2),
    )


def _quantization_parts(
    energy: float,
    n: int,
    eff: EffectiveCoefficients,
    v1: float,
    v2: float,
    alpha: float,
    strength: float,
    coeffs: PekerisCoefficients | None,
):
    """q, m, w and the surrogate-term pieces at one trial energy."""
    g0, g12, gq = _pekeris_terms(strength, coeffs, alpha)
    rad = 1.0 + gq + 4.0 * v1 * eff.b_lin / alpha**2
    if rad < 0.0:
        raise InadmissibleEnergyError(
            f"q radicand negative at E={energy}: {rad}"
        )
    q = math.sqrt(rad)
    m = n + 0.5 - 0.5 * q
    if m == 0.0:
        raise QuantizationPoleError(f"quantization denominator vanishes at E={energy}")
    w = g12 + 2.0 * eff.b_lin * v2
    return q, m, w, g0


def _residual_core(
    energy: float,
    n: int,
    eff: EffectiveCoefficients,
    v1: float,
    v2: float,
    alpha: float,
    strength: float,
    coeffs: PekerisCoefficients | None,
) -> float:
    q, m, w, g0 = _quantization_parts(energy, n, eff, v1, v2, alpha, strength, coeffs)
    bracket = m + w / (4.0 * alpha**2 * m)
    rhs = -g0 - eff.b_lin * v2 + alpha**2 * bracket * bracket
    return (eff.a_sq - rhs) / alpha**2


def spin_residual_rm(
    energy: float,
    pot: RadialPotential,
    sector: SymmetrySector,
    coeffs: PekerisCoefficients | None,
    n: int,
) -> float:
    """Spin-sector quantization residual at a trial energy, in units of alpha^2."""
    if sector.kind != SPIN:
        raise DomainError("spin_residual_rm requires a spin sector")
    v1, v2, alpha, strength = _channel(sector, pot)
    eff = effective_coefficients(sector, energy)
    return _residual_core(energy, n, eff, v1, v2, alpha, strength, coeffs)


def pspin_residual_rm(
    energy: float,
    pot: RadialPotential,
    sector: SymmetrySector,
    coeffs: PekerisCoefficients | None,
    n: int,
) -> float:
    """Pseudospin-sector residual, realized through the exact sign mapping.

    Identical to the spin-form residual evaluated with (E, v1, v2, C)
    negated and the pseudo-centrifugal strength kappa(kappa-1).
    """
    if sector.kind != PSPIN:
        raise DomainError("pspin_residual_rm requires a pspin sector")
    v1, v2, alpha, strength = _channel(sector, pot)
    eff = effective_coefficients(sector, energy)
    return _residual_core(energy, n, eff, v1, v2, alpha, strength, coeffs)


def kg_residual(
    energy: float,
    pot: RadialPotential,
    l: int,
    mass: float,
    coeffs: PekerisCoefficients | None,
    n: int,
) -> float:
    """Equal-mixing (scalar = vector) residual for orbital quantum number l.

    Transcribed independently of the spin-sector path; pointwise equal to
    ``spin_residual_rm`` at zero symmetry constant.
    """
    if l < 0 or l != int(l):
        raise DomainError(f"l must be a nonnegative integer, got {l}")
    g = as_general(pot)
    alpha = g.alpha
    ll = float(l * (l + 1))
    if ll != 0.0 and coeffs is None:
        raise DomainError("Pekeris coefficients are required for l > 0")
    if ll != 0.0:
        re2 = coeffs.r_e**2
        t0 = ll * coeffs.d0 / re2
        t12 = ll * (coeffs.d1 - coeffs.d2) / re2
        tq = ll * coeffs.d2 / (alpha**2 * re2)
    else:
        t0 = t12 = tq = 0.0
    ep_m = energy + mass
    rad = 1.0 + tq + 4.0 * ep_m * g.v1 / alpha**2
    if rad < 0.0:
        raise InadmissibleEnergyError(f"delta radicand negative at E={energy}")
    delta = 0.5 - 0.5 * math.sqrt(rad)
    nd = n + delta
    if nd == 0.0:
        raise QuantizationPoleError(f"quantization denominator vanishes at E={energy}")
    inner = nd + (t12 + 2.0 * ep_m * g.v2) / (4.0 * alpha**2 * nd)
    rhs = -t0 - ep_m * g.v2 + alpha**2 * inner * inner
    return (mass * mass - energy * energy - rhs) / alpha**2


def swave_trig_rm_residual(
    energy: float,
    pot: TrigRMParams,
    sector: SymmetrySector,
    n: int,
) -> float:
    """Interval-well residual for the lowest spin-orbit channel (kappa = -1)."""
    if sector.kind != SPIN or sector.kappa != -1:
        raise DomainError("the interval well is solved only for the spin kappa=-1 channel")
    alpha = pot.alpha
    eff = effective_coefficients(sector, energy)
    rad = 1.0 - 4.0 * pot.v1 * eff.b_lin / alpha**2
    if rad < 0.0:
        raise BoundViolationError(
            f"4*v1*(M+E-C) exceeds alpha^2 at E={energy}: radicand {rad}"
        )
    q = math.sqrt(rad)
    m = n + 0.5 - 0.5 * q
    if m == 0.0:
        raise QuantizationPoleError(f"quantization denominator vanishes at E={energy}")
    rhs = -(alpha**2) * m * m + (pot.v2 / (2.0 * alpha)) ** 2 * (eff.b_lin / m) ** 2
    return (eff.a_sq - rhs) / alpha**2


def nonrel_energy_reflectionless(
    n: int,
    l: int,
    a2: float,
    alpha: float,
    mu: float,
    coeffs: PekerisCoefficients | None = None,
) -> float:
    """Schroedinger-limit closed-form level for the symmetric sech^2 well.

    Explicit (no root search): the exponent parameter is energy-independent
    here.  Raises NoBoundStateError off the bound-state branch.
    """
    if n < 0 or l < 0:
        raise DomainError("n and l must be nonnegative integers")
    ll = float(l * (l + 1))
    if ll != 0.0 and coeffs is None:
        raise DomainError("Pekeris coefficients are required for l > 0")
    if ll != 0.0:
        re2 = coeffs.r_e**2
        t0, t12 = ll * coeffs.d0 / re2, ll * (coeffs.d1 - coeffs.d2) / re2
        tq = ll * coeffs.d2 / (alpha**2 * re2)
    else:
        t0 = t12 = tq = 0.0
    q0 = math.sqrt(1.0 + tq + 8.0 * mu * a2 / alpha**2)
    m = n + 0.5 - 0.5 * q0
    if m >= 0.0:
        raise NoBoundStateError(
            f"branch condition n + 1/2 - q0/2 < 0 fails for n={n} (value {m})"
        )
    bracket = m + t12 / (4.0 * alpha**2 * m)
    energy = t0 / (2.0 * mu) - alpha**2 / (2.0 * mu) * bracket * bracket
    threshold = t0 / (2.0 * mu)
    if not (energy < threshold):
        raise NoBoundStateError(f"E={energy} not below threshold {threshold}")
    return energy


def nonrel_energy_rm(
    n: int,
    l: int,
    params: StandardRMParams,
    mu: float,
    coeffs: PekerisCoefficients | None = None,
) -> float:
    """Schroedinger-limit closed-form level for the asymmetric well.

    The tilt contribution enters the quantization bracket as
    8*mu*b / (4 alpha^2 (n + 1/2 - q1/2)), consistent with the large-mass
    limit of the relativistic equation.
    """
    if n < 0 or l < 0:
        raise DomainError("n and l must be nonnegative integers")
    alpha = params.alpha
    ll = float(l * (l + 1))
    if ll != 0.0 and coeffs is None:
        raise DomainError("Pekeris coefficients are required for l > 0")
    if ll != 0.0:
        re2 = coeffs.r_e**2
        t0, t12 = ll * coeffs.d0 / re2, ll * (coeffs.d1 - coeffs.d2) / re2
        tq = ll * coeffs.d2 / (alpha**2 * re2)
    else:
        t0 = t12 = tq = 0.0
    v1 = params.a * (params.a + alpha)
    q1 = math.sqrt(1.0 + tq + 8.0 * mu * v1 / alpha**2)
    m = n + 0.5 - 0.5 * q1
    if m == 0.0:
        raise NoBoundStateError(f"quantization denominator vanishes for n={n}")
    bracket = m + (t12 + 8.0 * mu * params.b) / (4.0 * alpha**2 * m)
    if bracket >= 0.0:
        raise NoBoundStateError(
            f"bound-state branch requires a negative quantization bracket, got {bracket}"
        )
    energy = t0 / (2.0 * mu) + 2.0 * params.b - alpha**2 / (2.0 * mu) * bracket * bracket
    s1_sq = (t0 + 4.0 * mu * params.b - 2.0 * mu * energy) / (4.0 * alpha**2)
    if not (s1_sq > 0.0):
        raise NoBoundStateError(f"decay exponent not real-positive: s1^2 = {s1_sq}")
    return energy


def level_parameters(
    energy: float,
    pot: RadialPotential,
    sector: SymmetrySector,
    coeffs: PekerisCoefficients | None,
    n: int,
) -> tuple[NUParameters, float, bool]:
    """Exponent parameters, quantization bracket, and admissibility at an energy.

    A root of the (squared) quantization rule is a genuine normalizable
    state only when the decay exponent a0 is real-positive (right tail),
    the bracket is negative (the signed rule 2*a0 = -bracket), and the
    total exponent a0 + n + (1-q)/2 is negative (left tail of the
    unbounded-domain problem the closed form solves).
    """
    v1, v2, alpha, strength = _channel(sector, pot)
    eff = effective_coefficients(sector, energy)
    q, m, w, g0 = _quantization_parts(energy, n, eff, v1, v2, alpha, strength, coeffs)
    a0_sq = (g0 + eff.b_lin * v2 + eff.a_sq) / (4.0 * alpha**2)
    a1 = (
        (strength * (coeffs.d1 - 2.0 * coeffs.d0) / coeffs.r_e**2 if strength != 0.0 else 0.0)
        + 4.0 * eff.b_lin * v1
        - 2.0 * eff.a_sq
    ) / (4.0 * alpha**2)
    a2_ = (
        (strength * (coeffs.d0 - coeffs.d1 + coeffs.d2) / coeffs.r_e**2 if strength != 0.0 else 0.0)
        + eff.a_sq
        - eff.b_lin * v2
    ) / (4.0 * alpha**2)
    bracket = m + w / (4.0 * alpha**2 * m)
    a0 = math.sqrt(a0_sq) if a0_sq > 0.0 else float("nan")
    admissible = a0_sq > 0.0 and bracket < 0.0 and a0 + m < 0.0
    return NUParameters(a0=a0, a1=a1, a2=a2_, q=q), bracket, admissible


def energy_window(sector: SymmetrySector, search: SearchConfig) -> tuple[float, float]:
    """Admissible energy window for the sector, with guards at the edges."""
    m, c = sector.mass, sector.c_const
    guard = search.margin * max(1.0, abs(m))
    if sector.kind == SPIN:
        lo, hi = c - m, m
    else:
        lo, hi = -m, m + c
    lo, hi = lo + guard, hi - guard
    if search.e_min is not None:
        lo = max(lo, search.e_min)
    if search.e_max is not None:
        hi = min(hi, search.e_max)
    if not lo < hi:
        raise DomainError(f"empty energy window [{lo}, {hi}]")
    return lo, hi


def _trig_window(sector: SymmetrySector, pot: TrigRMParams, search: SearchConfig) -> tuple[float, float]:
    """Window where the coupling is positive and the radicand stays real."""
    m, c = sector.mass, sector.c_const
    guard = search.margin * max(1.0, abs(m))
    lo = c - m + guard  # B = M + E - C > 0
    hi = pot.alpha**2 / (4.0 * pot.v1) - m + c - guard  # 4 v1 B <= alpha^2
    if search.e_min is not None:
        lo = max(lo, search.e_min)
    if search.e_max is not None:
        hi = min(hi, search.e_max)
    if not lo < hi:
        raise DomainError(f"empty interval-well energy window [{lo}, {hi}]")
    return lo, hi


def _bisect(f: Callable[[float], float], lo: float, hi: float, flo: float, tol: float, max_iter: int) -> float:
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo < tol or mid <= lo or mid >= hi:
            break
        try:
            fm = f(mid)
        except InadmissibleEnergyError:
            # clipped interiors cannot occur on a verified bracket
            raise
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    else:
        raise AssertionError("bisection iteration cap exceeded on a verified bracket")
    return 0.5 * (lo + hi)


def _scan_roots(
    f: Callable[[float], float],
    m_of: Callable[[float], float],
    lo: float,
    hi: float,
    search: SearchConfig,
) -> list[float]:
    """Sign-change scan with pole splitting at zeros of the quantization denominator."""
    npts = search.grid_points
    step = (hi - lo) / (npts - 1)
    grid = [lo + i * step for i in range(npts)]
    vals: list[float | None] = []
    ms: list[float | None] = []
    for e in grid:
        try:
            vals.append(f(e))
            ms.append(m_of(e))
        except InadmissibleEnergyError:
            vals.append(None)
            ms.append(None)
    roots: list[float] = []
    eps_split = max(1e-13, 1e-13 * (abs(hi) + abs(lo)))

    def refine(a, b, fa, fb):
        if fa == 0.0:
            roots.append(a)
            return
        if fb is None or fa is None or not (fa * fb < 0):
            return
        roots.append(_bisect(f, a, b, fa, search.tol, search.max_iter))

    for i in range(npts - 1):
        va, vb = vals[i], vals[i + 1]
        ma, mb = ms[i], ms[i + 1]
        if va is None or vb is None:
            continue
        if ma is not None and mb is not None and ma * mb < 0:
            # quantization pole inside: locate it and bracket each side separately
            p_lo, p_hi = grid[i], grid[i + 1]
            for _ in range(200):
                if p_hi - p_lo < eps_split:
                    break
                mid = 0.5 * (p_lo + p_hi)
                try:
                    mm = m_of(mid)
                except InadmissibleEnergyError:
                    break
                if mm == 0.0:
                    break
                if (mm > 0) == (ma > 0):
                    p_lo = mid
                else:
                    p_hi = mid
            for (a, b) in ((grid[i], p_lo), (p_hi, grid[i + 1])):
                if b <= a:
                    continue
                try:
                    fa, fb = f(a), f(b)
                except InadmissibleEnergyError:
                    continue
                if fa * fb < 0:
                    roots.append(_bisect(f, a, b, fa, search.tol, search.max_iter))
            continue
        if va * vb < 0:
            refine(grid[i], grid[i + 1], va, vb)
    return roots


def find_levels(
    sector: SymmetrySector,
    pot: PotentialSpec,
    coeffs: PekerisCoefficients | None,
    n_max: int,
    search: SearchConfig | None = None,
) -> list[EnergyLevel]:
    """All quantization-rule roots for n = 0..n_max, flagged and sorted by energy.

    Every sign-change root on the scan grid is reported; the ``admissible``
    flag marks the normalizable branch (real positive decay exponent,
    negative quantization bracket).  An empty list means no roots, which is
    not an error.
    """
    search = search or SearchConfig()
    if n_max < 0:
        raise DomainError("n_max must be nonnegative")
    if isinstance(pot, TrigRMParams):
        return _find_levels_trig(sector, pot, n_max, search)

    if sector.kind == SPIN:
        residual = lambda e, n: spin_residual_rm(e, pot, sector, coeffs, n)
    else:
        residual = lambda e, n: pspin_residual_rm(e, pot, sector, coeffs, n)
    v1, v2, alpha, strength = _channel(sector, pot)
    lo, hi = energy_window(sector, search)

    levels: list[EnergyLevel] = []
    for n in range(n_max + 1):
        def m_of(e, _n=n):
            eff = effective_coefficients(sector, e)
            q, m, _, _ = _quantization_parts(e, _n, eff, v1, v2, alpha, strength, coeffs)
            return m

        for root in _scan_roots(lambda e, _n=n: residual(e, _n), m_of, lo, hi, search):
            res = residual(root, n)
            nu, bracket, admissible = level_parameters(root, pot, sector, coeffs, n)
            levels.append(
                EnergyLevel(
                    n=n,
                    kappa=sector.kappa,
                    energy=root,
                    residual=res,
                    nu=nu,
                    admissible=admissible,
                    bracket=bracket,
                )
            )
    return sorted(levels, key=lambda lv: lv.energy)


def _find_levels_trig(
    sector: SymmetrySector, pot: TrigRMParams, n_max: int, search: SearchConfig
) -> list[EnergyLevel]:
    alpha = pot.alpha
    lo, hi = _trig_window(sector, pot, search)
    levels: list[EnergyLevel] = []
    for n in range(n_max + 1):
        def m_of(e, _n=n):
            eff = effective_coefficients(sector, e)
            rad = 1.0 - 4.0 * pot.v1 * eff.b_lin / alpha**2
            if rad < 0.0:
                raise BoundViolationError(f"radicand negative at E={e}")
            return _n + 0.5 - 0.5 * math.sqrt(rad)

        f = lambda e, _n=n: swave_trig_rm_residual(e, pot, sector, _n)
        for root in _scan_roots(f, m_of, lo, hi, search):
            res = swave_trig_rm_residual(root, pot, sector, n)
            eff = effective_coefficients(sector, root)
            rad = 1.0 - 4.0 * pot.v1 * eff.b_lin / alpha**2
            q = math.sqrt(max(rad, 0.0))
            m = n + 0.5 - 0.5 * q
            # decaying interval endpoints require q < 1, i.e. positive coupling
            admissible = eff.b_lin > 0.0 and rad >= 0.0
            nu = NUParameters(a0=float("nan"), a1=float("nan"), a2=float("nan"), q=q)
            levels.append(
                EnergyLevel(
                    n=n,
                    kappa=sector.kappa,
                    energy=root,
                    residual=res,
                    nu=nu,
                    admissible=admissible,
                    bracket=m,
                )
            )
    return sorted(levels, key=lambda lv: lv.energy)
