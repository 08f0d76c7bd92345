"""Independent finite-difference eigensolver for the effective radial equations.

The effective problem -u'' + [centrifugal + B(E) * coupling] u = -A^2(E) u
is nonlinear in E because A^2 and B depend on it; a damped fixed-point
iteration wraps a symmetric-tridiagonal eigensolve (Sturm-sequence
bisection through LAPACK).  Two domains are supported: the radial one with
a Dirichlet wall near the origin (mandatory for the exact 1/r^2 term) and
the unbounded one on which the closed forms quantize decay at both ends.
The interval well gets its own two-sided shooting solver with
power-series boundary starts.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigh_tridiagonal, eigvalsh_tridiagonal

from .errors import (
    BranchAmbiguityError,
    CardinalityMismatchWarning,
    DiscretizationError,
    DomainError,
    NonConvergenceError,
)
from .potentials import (
    PekerisCoefficients,
    PotentialSpec,
    TrigRMParams,
    as_general,
    centrifugal_approx,
)
from .spectrum import (
    PSPIN,
    SPIN,
    EnergyLevel,
    SymmetrySector,
    centrifugal_strength,
    effective_coefficients,
)

__all__ = [
    "OracleConfig",
    "OracleLevel",
    "ComparisonReport",
    "PerLevelDelta",
    "solve_fixed_E_eigen",
    "self_consistent_levels",
    "trig_interval_levels",
    "compare",
]

EXACT = "exact"
PEKERIS = "pekeris"


@dataclass(frozen=True)
class OracleConfig:
    """Grid, centrifugal mode, domain, and fixed-point controls.

    domain "auto" resolves to the unbounded line whenever the closed form
    being validated quantizes decay at both ends (zero centrifugal
    strength, or the smooth surrogate); the exact 1/r^2 mode always runs
    on the radial half line.
    """

    r_max: float | None = None
    grid_points: int = 6000
    centrifugal_mode: str = PEKERIS
    fp_tol: float = 1e-11
    fp_max_iter: int = 200
    damping: float = 1.0
    domain: str = "auto"
    richardson_levels: int = 1
    r_min_factor: float = 1e-6
    tail_tol: float = 1e-10

    def __post_init__(self):
        if self.grid_points < 500:
            raise DomainError("grid_points must be at least 500")
        if self.centrifugal_mode not in (EXACT, PEKERIS):
            raise DomainError(f"unknown centrifugal_mode {self.centrifugal_mode!r}")
        if self.domain not in ("auto", "half_line", "full_line"):
            raise DomainError(f"unknown domain {self.domain!r}")
        if not (0.0 < self.damping <= 1.0):
            raise DomainError("damping must lie in (0, 1]")
        if self.richardson_levels not in (0, 1, 2):
            raise DomainError("richardson_levels must be 0, 1 or 2")


@dataclass(frozen=True)
class OracleLevel:
    """One numerically converged level, labeled by its eigenvector node count."""

    index_by_nodes: int
    energy: float
    fp_iterations: int
    converged: bool


@dataclass(frozen=True)
class PerLevelDelta:
    n: int
    e_closed: float
    e_oracle: float
    delta_abs: float
    delta_rel: float


@dataclass(frozen=True)
class ComparisonReport:
    """Per-level deltas between closed-form and numerical spectra."""

    mode: str
    per_level: tuple[PerLevelDelta, ...]
    max_delta_abs: float
    passed: bool
    unmatched_closed: tuple[int, ...] = field(default_factory=tuple)
    unmatched_numeric: tuple[int, ...] = field(default_factory=tuple)


def _resolve_domain(config: OracleConfig, strength: float) -> str:
    if config.domain != "auto":
        return config.domain
    if config.centrifugal_mode == EXACT and strength != 0.0:
        return "half_line"
    return "full_line"


def _grid(config: OracleConfig, alpha: float, strength: float, r_e_scale: float, n_pts: int):
    """Interior points with Dirichlet walls exactly at the interval ends."""
    r_max = config.r_max if config.r_max is not None else 30.0 / alpha
    domain = _resolve_domain(config, strength)
    if domain == "full_line":
        lo, hi = -r_max, r_max
    else:
        # wall at 0 is exact for a regular potential; the exact 1/r^2 term
        # needs a small positive offset
        lo = 0.0 if (config.centrifugal_mode == PEKERIS or strength == 0.0) else config.r_min_factor * r_e_scale
        hi = r_max
    h = (hi - lo) / (n_pts + 1)
    return lo + h * np.arange(1, n_pts + 1), h


def _coupling_sign(sector: SymmetrySector) -> float:
    return 1.0 if sector.kind == SPIN else -1.0


def _w_potential(
    sector: SymmetrySector,
    pot: PotentialSpec,
    coeffs: PekerisCoefficients | None,
    config: OracleConfig,
    rs: np.ndarray,
    b_lin: float,
) -> np.ndarray:
    g = as_general(pot)
    z = np.exp(-2.0 * g.alpha * rs)
    v = -4.0 * g.v1 * z / (1.0 + z) ** 2 + g.v2 * (1.0 - z) / (1.0 + z)
    strength = centrifugal_strength(sector)
    if strength == 0.0:
        cent = 0.0
    elif config.centrifugal_mode == EXACT:
        cent = strength / rs**2
    else:
        if coeffs is None:
            raise DomainError("Pekeris coefficients required in pekeris mode with nonzero strength")
        cent = centrifugal_approx(coeffs, strength, rs)
    return cent + _coupling_sign(sector) * b_lin * v


def _eig_lowest(diag: np.ndarray, off: np.ndarray, k: int):
    vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1))
    return vals, vecs


def _node_count(vec: np.ndarray) -> int:
    amax = np.max(np.abs(vec))
    live = vec[np.abs(vec) > 1e-9 * amax]
    return int(np.sum(live[:-1] * live[1:] < 0))


def solve_fixed_E_eigen(
    sector: SymmetrySector,
    pot: PotentialSpec,
    coeffs: PekerisCoefficients | None,
    e_fixed: float,
    config: OracleConfig,
    n_eigs: int = 6,
):
    """Lowest eigenpairs of the frozen-coefficient operator at one trial energy.

    Returns (lam, vectors, node_counts); lam are the eigenvalues of
    -u'' + W u with W evaluated using B(e_fixed).  Second-order central
    differences; the caller may Richardson-extrapolate across grids.
    """
    g = as_general(pot)
    strength = centrifugal_strength(sector)
    eff = effective_coefficients(sector, e_fixed)
    r_e_scale = coeffs.r_e if coeffs is not None else 1.0 / g.alpha
    rs, h = _grid(config, g.alpha, strength, r_e_scale, config.grid_points)
    w = _w_potential(sector, pot, coeffs, config, rs, eff.b_lin)
    diag = 2.0 / h**2 + w
    off = np.full(len(rs) - 1, -1.0 / h**2)
    lam, vecs = _eig_lowest(diag, off, n_eigs)
    nodes = [_node_count(vecs[:, j]) for j in range(vecs.shape[1])]
    tail = np.max(np.abs(vecs[-1, :])) / np.max(np.abs(vecs))
    if tail > config.tail_tol:
        raise DiscretizationError(
            f"eigenvector tail {tail:.2e} exceeds {config.tail_tol}: increase r_max"
        )
    return lam, vecs, nodes


def _lambda_n(
    sector: SymmetrySector,
    pot: PotentialSpec,
    coeffs: PekerisCoefficients | None,
    config: OracleConfig,
    e_trial: float,
    n: int,
) -> float:
    """n-th (by node count) eigenvalue at frozen E, Richardson-extrapolated."""
    g = as_general(pot)
    strength = centrifugal_strength(sector)
    eff = effective_coefficients(sector, e_trial)
    r_e_scale = coeffs.r_e if coeffs is not None else 1.0 / g.alpha
    k = n + 2

    def lam_on(n_pts: int) -> float:
        rs, h = _grid(config, g.alpha, strength, r_e_scale, n_pts)
        w = _w_potential(sector, pot, coeffs, config, rs, eff.b_lin)
        diag = 2.0 / h**2 + w
        off = np.full(len(rs) - 1, -1.0 / h**2)
        lam = eigvalsh_tridiagonal(diag, off, select="i", select_range=(0, k - 1))
        return float(lam[n])

    n0 = config.grid_points
    lam1 = lam_on(n0)
    if config.richardson_levels == 0:
        return lam1
    lam2 = lam_on(2 * n0 + 1)
    r1 = (4.0 * lam2 - lam1) / 3.0
    if config.richardson_levels == 1:
        return r1
    lam3 = lam_on(4 * n0 + 3)
    r2 = (4.0 * lam3 - lam2) / 3.0
    return (16.0 * r2 - r1) / 15.0


def _energy_from_lambda(sector: SymmetrySector, lam: float) -> float:
    """Invert lam = -A^2(E) on the physical branch of the sector."""
    m, c = sector.mass, sector.c_const
    if sector.kind == SPIN:
        rad = (m - 0.5 * c) ** 2 + lam
        if rad < 0.0:
            raise BranchAmbiguityError(f"no real energy for eigenvalue {lam}")
        return 0.5 * c + math.sqrt(rad)
    rad = (m + 0.5 * c) ** 2 + lam
    if rad < 0.0:
        raise BranchAmbiguityError(f"no real energy for eigenvalue {lam}")
    return 0.5 * c - math.sqrt(rad)


def _shallow_edge(sector: SymmetrySector) -> float:
    """Window edge where the coupling B vanishes (weak-binding side)."""
    if sector.kind == SPIN:
        return sector.c_const - sector.mass
    return sector.mass + sector.c_const


def self_consistent_levels(
    sector: SymmetrySector,
    pot: PotentialSpec,
    coeffs: PekerisCoefficients | None,
    n_max: int,
    config: OracleConfig | None = None,
) -> list[OracleLevel]:
    """Solve the energy-dependent eigenproblem for node counts 0..n_max.

    Damped fixed-point iteration E <- E + damping*(E_root(lambda_n(E)) - E);
    the damping is halved automatically when the update starts oscillating.
    Raises NonConvergenceError (with the iterate trace) past the cap.
    """
    config = config or OracleConfig()
    shallow = _shallow_edge(sector)
    deep = sector.mass if sector.kind == SPIN else -sector.mass
    lo, hi = (min(shallow, deep), max(shallow, deep))
    out: list[OracleLevel] = []
    e_prev = None
    for n in range(n_max + 1):
        e = e_prev if e_prev is not None else shallow + 0.5 * (deep - shallow)

        def displacement(e_trial: float) -> float | None:
            try:
                lam = _lambda_n(sector, pot, coeffs, config, e_trial, n)
                return _energy_from_lambda(sector, lam) - e_trial
            except BranchAmbiguityError:
                return None

        damping = config.damping
        trace = [e]
        deltas: list[float] = []
        prev: tuple[float, float] | None = None  # (e, displacement) for secant steps
        converged = False
        it = 0
        retreats = 0
        budget = min(config.fp_max_iter, 30)
        while it < budget:
            it += 1
            delta = displacement(e)
            if delta is None:
                # over-deepened trial: retreat toward the weak-binding edge
                retreats += 1
                if retreats > 8:
                    break  # no real branch anywhere near; go to the bisection scan
                e = e + 0.3 * (shallow - e)
                trace.append(e)
                prev = None
                continue
            deltas.append(abs(delta))
            if abs(delta) < config.fp_tol:
                converged = True
                break
            if len(deltas) > 3 and deltas[-1] > deltas[-2]:
                damping = max(0.05, 0.5 * damping)
            # secant step on the displacement accelerates the plain damped
            # iteration, whose multiplier can exceed one here
            e_next = None
            if prev is not None:
                e0, d0 = prev
                denom = delta - d0
                if denom != 0.0:
                    cand = e - delta * (e - e0) / denom
                    if math.isfinite(cand) and lo < cand < hi:
                        e_next = cand
            prev = (e, delta)
            if e_next is None:
                e_next = e + damping * delta
                if not (lo < e_next < hi):
                    e_next = e + 0.3 * (shallow - e)
                    prev = None
            e = e_next
            trace.append(e)
        if not converged:
            e_bis = _bisect_displacement(displacement, lo, hi, config, trace)
            if e_bis is None:
                raise NonConvergenceError(
                    f"fixed point for node count {n} did not converge in {config.fp_max_iter} iterations",
                    trace=trace,
                )
            e, converged, it = e_bis, True, len(trace)
        out.append(OracleLevel(index_by_nodes=n, energy=e, fp_iterations=it, converged=True))
        e_prev = e
    return out


def _bisect_displacement(displacement, lo: float, hi: float, config: OracleConfig, trace: list) -> float | None:
    """Sign-change bisection on the self-consistency displacement; robust fallback."""
    guard = 1e-9 * max(1.0, abs(lo), abs(hi))
    es = np.linspace(lo + guard, hi - guard, 17)
    vals = []
    for e in es:
        vals.append(displacement(float(e)))
        trace.append(float(e))
    for i in range(len(es) - 1):
        va, vb = vals[i], vals[i + 1]
        if va is None or vb is None or va * vb > 0:
            continue
        a, b, fa = float(es[i]), float(es[i + 1]), va
        for _ in range(200):
            if b - a < config.fp_tol:
                return 0.5 * (a + b)
            mid = 0.5 * (a + b)
            fm = displacement(mid)
            trace.append(mid)
            if fm is None:
                return None
            if abs(fm) < config.fp_tol:
                return mid
            if (fm > 0) == (fa > 0):
                a, fa = mid, fm
            else:
                b = mid
    return None


def compare(
    closed: list[EnergyLevel],
    numeric: list[OracleLevel],
    tol: float,
    mode: str = PEKERIS,
) -> ComparisonReport:
    """Match levels by node-count label and report per-level energy deltas.

    Unmatched labels on either side give a CardinalityMismatchWarning and
    are listed in the report rather than failing it.
    """
    closed_by_n: dict[int, EnergyLevel] = {}
    for lv in closed:
        if lv.admissible and lv.n not in closed_by_n:
            closed_by_n[lv.n] = lv
    numeric_by_n = {lv.index_by_nodes: lv for lv in numeric}
    rows = []
    for n in sorted(set(closed_by_n) & set(numeric_by_n)):
        ec, eo = closed_by_n[n].energy, numeric_by_n[n].energy
        dabs = abs(ec - eo)
        rows.append(
            PerLevelDelta(
                n=n,
                e_closed=ec,
                e_oracle=eo,
                delta_abs=dabs,
                delta_rel=dabs / max(abs(ec), abs(eo), 1e-300),
            )
        )
    unmatched_closed = tuple(sorted(set(closed_by_n) - set(numeric_by_n)))
    unmatched_numeric = tuple(sorted(set(numeric_by_n) - set(closed_by_n)))
    if unmatched_closed or unmatched_numeric:
        warnings.warn(
            f"unmatched level labels: closed {unmatched_closed}, numeric {unmatched_numeric}",
            CardinalityMismatchWarning,
            stacklevel=2,
        )
    max_delta = max((r.delta_abs for r in rows), default=0.0)
    passed = bool(rows) and max_delta <= tol or (not rows and not unmatched_closed and not unmatched_numeric)
    return ComparisonReport(
        mode=mode,
        per_level=tuple(rows),
        max_delta_abs=max_delta,
        passed=passed,
        unmatched_closed=unmatched_closed,
        unmatched_numeric=unmatched_numeric,
    )


# ----------------------------------------------------------------- interval well


def _trig_frobenius_start(pot: TrigRMParams, b_lin: float, lam: float, side: str, y0: float):
    """Series u = y^nu (1 + c1 y + c2 y^2 + c3 y^3) near an interval endpoint.

    nu is the decaying-branch indicial exponent nu = (1 - sqrt(1-4g))/2
    with g = B*v1/alpha^2; the linear-in-1/y tilt term flips sign between
    the two endpoints.
    """
    alpha = pot.alpha
    g = b_lin * pot.v1 / alpha**2
    rad = 1.0 - 4.0 * g
    if rad < 0.0:
        raise BranchAmbiguityError("endpoint exponent not real: coupling exceeds the edge bound")
    nu = 0.5 * (1.0 - math.sqrt(rad))
    sgn = 1.0 if side == "R" else -1.0
    wm1 = sgn * b_lin * pot.v2 / alpha
    w0 = -b_lin * pot.v1 / 3.0
    w1 = -sgn * b_lin * pot.v2 * alpha / 3.0
    if nu == 0.0:
        raise BranchAmbiguityError("vanishing endpoint exponent")
    c1 = wm1 / (2.0 * nu)
    c2 = (wm1 * c1 + (w0 - lam)) / (4.0 * nu + 2.0)
    c3 = (wm1 * c2 + (w0 - lam) * c1 + w1) / (6.0 * nu + 6.0)
    u = y0**nu * (1.0 + c1 * y0 + c2 * y0**2 + c3 * y0**3)
    up = y0 ** (nu - 1.0) * (
        nu + (nu + 1.0) * c1 * y0 + (nu + 2.0) * c2 * y0**2 + (nu + 3.0) * c3 * y0**3
    )
    return u, up


def _trig_match(pot: TrigRMParams, sector: SymmetrySector, energy: float, y0: float = 1e-4):
    """Log-derivative mismatch at the interval center, plus the two half solutions."""
    eff = effective_coefficients(sector, energy)
    lam = -eff.a_sq
    alpha = pot.alpha
    a = pot.half_width

    def rhs(x, s):
        w = eff.b_lin * (-pot.v1 / math.cos(alpha * x) ** 2 + pot.v2 * math.tan(alpha * x))
        return [s[1], (w - lam) * s[0]]

    u_l, up_l = _trig_frobenius_start(pot, eff.b_lin, lam, "L", y0)
    sol_l = solve_ivp(rhs, [-a + y0, 0.0], [u_l, up_l], rtol=1e-11, atol=1e-300, method="RK45",
                      dense_output=True)
    u_r, up_r = _trig_frobenius_start(pot, eff.b_lin, lam, "R", y0)
    sol_r = solve_ivp(rhs, [a - y0, 0.0], [u_r, -up_r], rtol=1e-11, atol=1e-300, method="RK45",
                      dense_output=True)
    fl, dl = sol_l.y[0][-1], sol_l.y[1][-1]
    fr, dr = sol_r.y[0][-1], sol_r.y[1][-1]
    return dl / fl - dr / fr, (sol_l, sol_r)


def trig_interval_levels(
    sector: SymmetrySector,
    pot: TrigRMParams,
    n_max: int,
    scan_points: int = 1200,
    tol: float = 1e-12,
) -> list[OracleLevel]:
    """Interval-well levels by two-sided shooting with series boundary starts.

    The boundary series selects the decaying endpoint branch the closed form
    carries; eigenvalues are roots of the center log-derivative mismatch,
    labeled by node count of the assembled solution.
    """
    if sector.kind != SPIN or sector.kappa != -1:
        raise DomainError("interval solver covers the spin kappa=-1 channel only")
    guard = 1e-9 * max(1.0, sector.mass)
    lo = sector.c_const - sector.mass + guard
    hi = pot.alpha**2 / (4.0 * pot.v1) - sector.mass + sector.c_const - guard
    if not lo < hi:
        raise DomainError("empty interval-well window")
    es = np.linspace(lo, hi, scan_points)
    vals = np.full(scan_points, np.nan)
    for i, e in enumerate(es):
        try:
            vals[i], _ = _trig_match(pot, sector, float(e))
        except BranchAmbiguityError:
            continue
    out: list[OracleLevel] = []
    for i in range(scan_points - 1):
        va, vb = vals[i], vals[i + 1]
        if not (np.isfinite(va) and np.isfinite(vb)) or va * vb >= 0:
            continue
        # reject pole-type sign flips of the log-derivative (values exploding)
        if abs(va) > 1e4 and abs(vb) > 1e4:
            continue
        a_e, b_e = float(es[i]), float(es[i + 1])
        fa = va
        it = 0
        while b_e - a_e > tol and it < 200:
            it += 1
            mid = 0.5 * (a_e + b_e)
            fm, _ = _trig_match(pot, sector, mid)
            if (fm > 0) == (fa > 0):
                a_e, fa = mid, fm
            else:
                b_e = mid
        root = 0.5 * (a_e + b_e)
        _, (sol_l, sol_r) = _trig_match(pot, sector, root)
        xs_l = np.linspace(sol_l.t[0], 0.0, 400)
        xs_r = np.linspace(sol_r.t[0], 0.0, 400)
        ul = sol_l.sol(xs_l)[0]
        ur = sol_r.sol(xs_r)[0]
        # glue with matched sign/scale at the center
        scale = ul[-1] / ur[-1]
        full = np.concatenate([ul[:-1], (scale * ur)[::-1]])
        nodes = _node_count(full)
        out.append(OracleLevel(index_by_nodes=nodes, energy=root, fp_iterations=it, converged=True))
    return sorted(out, key=lambda lv: lv.energy)
