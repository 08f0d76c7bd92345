"""Self-contained special functions for the closed-form bound states.

Log-gamma with sign tracking, terminating hypergeometric sums, Jacobi
polynomials for arbitrary real parameters, and rising-factorial series.
The finite sums are carried in exact rational arithmetic (every float is
a dyadic rational), so each result rounds exactly once; evaluation order
is fixed and results are reproducible bit-for-bit run to run.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

from .errors import GammaPoleError, ParameterPoleError

__all__ = [
    "SignedLogGamma",
    "PochhammerSeriesTerm",
    "ln_gamma",
    "gamma_signed",
    "hyp2f1_terminating",
    "jacobi_p",
    "hyp3f2_unit",
    "pochhammer_series",
]

# Lanczos approximation, g = 7, 9 coefficients (double precision).
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_LN_SQRT_TWO_PI = 0.5 * math.log(2.0 * math.pi)


class SignedLogGamma(NamedTuple):
    """log|Gamma(x)| together with sign(Gamma(x))."""

    log: float
    sign: int


class PochhammerSeriesTerm(NamedTuple):
    """One rising-factorial value (x)_m."""

    m: int
    value: float


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and x == math.floor(x)


def _ln_abs_sinpi(x: float) -> tuple[float, int]:
    """log|sin(pi x)| and its sign, with argument reduction for accuracy."""
    k = math.floor(x)
    r = x - k
    s = math.sin(math.pi * r)  # r in [0, 1) so s >= 0
    if s == 0.0:
        raise GammaPoleError(f"sin(pi*{x}) vanishes: integer argument")
    return math.log(s), -1 if int(k) % 2 else 1


def ln_gamma(x: float) -> SignedLogGamma:
    """Natural log of |Gamma(x)| plus the sign of Gamma(x).

    Valid for any real x away from the poles 0, -1, -2, ...; uses the
    reflection formula for x < 1/2.
    """
    if math.isnan(x) or math.isinf(x):
        raise GammaPoleError(f"ln_gamma undefined for x={x}")
    if _is_nonpositive_integer(x):
        raise GammaPoleError(f"gamma pole at x={x}")
    if x < 0.5:
        # Gamma(x) Gamma(1-x) = pi / sin(pi x)
        ln_sin, sign_sin = _ln_abs_sinpi(x)
        other = ln_gamma(1.0 - x)
        return SignedLogGamma(math.log(math.pi) - ln_sin - other.log, sign_sin * other.sign)
    t = x - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (t + i)
    base = t + _LANCZOS_G + 0.5
    log = _LN_SQRT_TWO_PI + (t + 0.5) * math.log(base) - base + math.log(acc)
    return SignedLogGamma(log, 1)


def gamma_signed(x: float) -> float:
    """Gamma(x) with sign, via the log representation (may overflow for large x)."""
    lg = ln_gamma(x)
    return lg.sign * math.exp(lg.log)


def hyp2f1_terminating(n: int, b: float, c: float, z: float) -> float:
    """Terminating Gauss series sum_{m=0}^{n} (-n)_m (b)_m / ((c)_m m!) z^m.

    The first numerator parameter is -n, so the sum is an exact degree-n
    polynomial in z, evaluated in exact rational arithmetic and rounded
    once on return.
    """
    if n < 0:
        raise ValueError("n must be a nonnegative integer")
    if c == math.floor(c) and -(n - 1) <= c <= 0.0:
        raise ParameterPoleError(f"(c)_m vanishes for m <= {n}: c={c}")
    bf, cf, zf = Fraction(b), Fraction(c), Fraction(z)
    total = Fraction(1)
    t = Fraction(1)
    for m in range(n):
        t *= Fraction(-(n - m)) * (bf + m) / ((cf + m) * (m + 1)) * zf
        total += t
    return float(total)


def jacobi_p(n: int, mu: float, nu: float, x: float) -> float:
    """Degree-n Jacobi polynomial P_n^(mu,nu)(x) for arbitrary real mu, nu.

    Uses the finite double-binomial sum, which stays well defined where the
    classical orthogonality weight does not (negative non-integer
    parameters, arguments outside [-1, 1]).
    """
    if n < 0:
        raise ValueError("n must be a nonnegative integer")
    muf, nuf, xf = Fraction(mu), Fraction(nu), Fraction(x)
    xm = (xf - 1) / 2
    xp = (xf + 1) / 2
    total = Fraction(0)
    for s in range(n + 1):
        # binom(n+mu, n-s) * binom(n+nu, s) as explicit falling products
        c1 = Fraction(1)
        for j in range(n - s):
            c1 *= (muf + s + 1 + j) / (j + 1)
        c2 = Fraction(1)
        for j in range(s):
            c2 *= (nuf + n - s + 1 + j) / (j + 1)
        total += c1 * c2 * xm**s * xp ** (n - s)
    return float(total)


def hyp3f2_unit(
    a1: float, a2: float, a3: float, b1: float, b2: float, n_terminating: int
) -> float:
    """Terminating 3F2(a1,a2,a3; b1,b2; 1) summed to the terminating index.

    One numerator parameter must equal -n_terminating; later terms vanish
    through its Pochhammer factor, so the loop is capped there.
    """
    if n_terminating < 0:
        raise ValueError("n_terminating must be nonnegative")
    for b in (b1, b2):
        if b == math.floor(b) and -(n_terminating - 1) <= b <= 0.0:
            raise ParameterPoleError(f"denominator parameter pole before termination: b={b}")
    a1f, a2f, a3f, b1f, b2f = map(Fraction, (a1, a2, a3, b1, b2))
    total = Fraction(1)
    t = Fraction(1)
    for m in range(n_terminating):
        t *= (a1f + m) * (a2f + m) * (a3f + m) / ((b1f + m) * (b2f + m) * (m + 1))
        total += t
    return float(total)


def pochhammer_series(x: float, m_max: int) -> list[PochhammerSeriesTerm]:
    """Rising factorials (x)_0 ... (x)_m_max via the defining recurrence."""
    out = [PochhammerSeriesTerm(0, 1.0)]
    v = 1.0
    for m in range(m_max):
        v *= x + m
        out.append(PochhammerSeriesTerm(m + 1, v))
    return out
