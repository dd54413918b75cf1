"""Airy function Ai, its derivative, and its negative real zeros.

Pure-Python kernel with no third-party dependencies. Evaluation regimes on the
real line:

* Maclaurin series on ``[-SERIES_NEG, SERIES_POS]``.
* Asymptotic expansions (decaying form for x > 0, oscillatory form for x < 0)
  for ``|x| >= ASYMPTOTIC``; the tail is truncated at the smallest term.
* Between the two, a Taylor continuation of ``y'' = x y`` started from the
  asymptotic values at ``x = +-ASYMPTOTIC``. For x > 0 the continuation runs
  towards the origin, the direction in which Ai is the dominant solution, so
  relative accuracy is preserved.

The nominal series/asymptotic switchover is |x| = 6. At that point the raw
expansions agree only to ~1e-10, so the continuation bridge covers the band
where neither reaches 1e-12 on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, NumericalError

__all__ = [
    "AiryZeroTable",
    "airy_ai",
    "airy_ai_prime",
    "airy_ai_pair",
    "airy_zeros",
    "zero_seed",
    "SWITCHOVER",
]

#: Ai(0) = 3^(-2/3) / Gamma(2/3)
AI0 = 0.35502805388781723926
#: -Ai'(0) = 3^(-1/3) / Gamma(1/3)
AIP0 = 0.25881940379280679840

SWITCHOVER = 6.0
SERIES_NEG = 6.0
SERIES_POS = 2.5
ASYMPTOTIC = 8.0
_BRIDGE_STEP = 0.5

_SQRT_PI = math.sqrt(math.pi)
_EPS = 1e-17


def _check(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"Airy function argument must be finite, got {x!r}")
    return x


def _series(x: float) -> tuple[float, float]:
    # Ai = AI0 f - AIP0 g with f = 1 + x^3/6 + ..., g = x + x^4/12 + ...
    x2 = x * x
    x3 = x2 * x
    a, b = 1.0, x
    f, g = 1.0, x
    fp, gp = 0.0, 1.0
    k = 1
    while True:
        da = a * x2 / (3 * k - 1)
        db = b * x2 / (3 * k)
        a *= x3 / ((3 * k - 1) * (3 * k))
        b *= x3 / ((3 * k) * (3 * k + 1))
        f += a
        g += b
        fp += da
        gp += db
        if k > 2 and abs(a) + abs(b) + abs(da) + abs(db) <= _EPS * (
            abs(f) + abs(g) + abs(fp) + abs(gp)
        ):
            break
        k += 1
        if k > 500:
            raise NumericalError(f"Airy series failed to converge at x={x}")
    return AI0 * f - AIP0 * g, AI0 * fp - AIP0 * gp


@lru_cache(maxsize=1)
def _asymptotic_coeffs(n: int = 120) -> tuple[tuple[float, ...], tuple[float, ...]]:
    u = [1.0]
    for k in range(1, n):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    v = [1.0] + [-(6 * k + 1) / (6 * k - 1) * u[k] for k in range(1, n)]
    return tuple(u), tuple(v)


def _truncated(coeffs, zeta: float, parity: int | None = None) -> float:
    """Sum of (-1)^k c_k zeta^-k, stopped at the smallest term.

    With ``parity`` set, only terms k of that parity enter and the sign
    alternates over the selected subsequence, as in the oscillatory form.
    """
    total = 0.0
    smallest = math.inf
    power = 1.0
    for k, c in enumerate(coeffs):
        term = c * power
        if abs(term) > smallest:
            break
        smallest = abs(term)
        if parity is None:
            total += -term if k % 2 else term
        elif k % 2 == parity:
            total += -term if (k // 2) % 2 else term
        if smallest < _EPS:
            break
        power /= zeta
    return total


def _asymptotic(x: float) -> tuple[float, float]:
    u, v = _asymptotic_coeffs()
    z = abs(x)
    zeta = (2.0 / 3.0) * z * math.sqrt(z)
    q = z ** 0.25
    if x > 0:
        pref = math.exp(-zeta) / (2.0 * _SQRT_PI)
        return pref / q * _truncated(u, zeta), -pref * q * _truncated(v, zeta)
    theta = zeta - math.pi / 4.0
    c, s = math.cos(theta), math.sin(theta)
    ai = (c * _truncated(u, zeta, 0) + s * _truncated(u, zeta, 1)) / (_SQRT_PI * q)
    aip = q * (s * _truncated(v, zeta, 0) - c * _truncated(v, zeta, 1)) / _SQRT_PI
    return ai, aip


def _taylor_step(c: float, y: float, yp: float, h: float) -> tuple[float, float]:
    # coefficients of y'' = x y about c: t[k+2] = (c t[k] + t[k-1]) / ((k+1)(k+2))
    t = [y, yp]
    val = y + yp * h
    der = yp
    hk = h
    k = 0
    while True:
        t.append((c * t[k] + (t[k - 1] if k else 0.0)) / ((k + 1) * (k + 2)))
        der += (k + 2) * t[-1] * hk
        hk *= h
        val += t[-1] * hk
        k += 1
        if k > 4 and abs(t[-1] * hk) + abs(t[-2] * hk) <= _EPS * abs(val):
            break
        if k > 400:
            raise NumericalError(f"Airy Taylor continuation failed at c={c}, h={h}")
    return val, der


def _bridge(x: float, anchor: float) -> tuple[float, float]:
    y, yp = _asymptotic(anchor)
    steps = max(1, math.ceil(abs(x - anchor) / _BRIDGE_STEP))
    h = (x - anchor) / steps
    c = anchor
    for i in range(steps):
        y, yp = _taylor_step(c, y, yp, h)
        c = anchor + (i + 1) * h
    return y, yp


def airy_ai_pair(x: float) -> tuple[float, float]:
    """Return ``(Ai(x), Ai'(x))`` for finite real ``x``."""
    x = _check(x)
    if -SERIES_NEG <= x <= SERIES_POS:
        return _series(x)
    if abs(x) >= ASYMPTOTIC:
        return _asymptotic(x)
    return _bridge(x, math.copysign(ASYMPTOTIC, x))


def airy_ai(x: float) -> float:
    """Airy function of the first kind, Ai(x).

    >>> round(airy_ai(0.0), 15)
    0.355028053887817
    """
    return airy_ai_pair(x)[0]


def airy_ai_prime(x: float) -> float:
    """Derivative Ai'(x)."""
    return airy_ai_pair(x)[1]


def zero_seed(n: int) -> float:
    """Leading-order asymptotic estimate of the n-th zero of Ai (n >= 1)."""
    return -((3.0 * math.pi * (4 * n - 1) / 8.0) ** (2.0 / 3.0))


@dataclass(frozen=True)
class AiryZeroTable:
    """First ``len(zeros)`` negative zeros of Ai, ``zeros[0] == a_1``.

    ``residuals[i]`` is ``|Ai(zeros[i])|`` as evaluated after refinement and
    ``tol`` the requested tolerance; each residual satisfies
    ``residual <= tol * max(1, |Ai'(a_n)|)``.
    """

    zeros: tuple[float, ...]
    residuals: tuple[float, ...]
    tol: float

    def __len__(self) -> int:
        return len(self.zeros)

    def __getitem__(self, n: int) -> float:
        """Zero a_n with 1-based index ``n``."""
        if not 1 <= n <= len(self.zeros):
            raise IndexError(f"zero index {n} outside 1..{len(self.zeros)}")
        return self.zeros[n - 1]

    @property
    def precision(self) -> tuple[float, ...]:
        """Estimated absolute error of each zero, ``|Ai(a_n) / Ai'(a_n)|``."""
        return tuple(r / abs(airy_ai_prime(a)) for r, a in zip(self.residuals, self.zeros))


def _refine(lo: float, hi: float, tol: float, max_iter: int = 200) -> tuple[float, float]:
    """Safeguarded Newton on a sign-change bracket ``[lo, hi]``."""
    flo = airy_ai(lo)
    fhi = airy_ai(hi)
    if flo * fhi > 0:
        raise NumericalError(
            f"no sign change of Ai in [{lo}, {hi}]: Ai(lo)={flo:.3e}, Ai(hi)={fhi:.3e}"
        )
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        f, fp = airy_ai_pair(x)
        if abs(f) <= tol * max(1.0, abs(fp)) or hi - lo <= 2 * math.ulp(x):
            return x, abs(f)
        if (f < 0) == (flo < 0):
            lo, flo = x, f
        else:
            hi = x
        candidate = x - f / fp if fp != 0.0 else math.nan
        if not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)
        if candidate == x:
            break
        x = candidate
    f, fp = airy_ai_pair(x)
    if abs(f) > tol * max(1.0, abs(fp)):
        raise NumericalError(f"zero refinement stalled at x={x}: |Ai|={abs(f):.3e} > tol={tol:.1e}")
    return x, abs(f)


@lru_cache(maxsize=64)
def airy_zeros(count: int, tol: float = 1e-13) -> AiryZeroTable:
    """First ``count`` negative zeros of Ai.

    Each zero is seeded by :func:`zero_seed`, bracketed by a window of a
    quarter of the local seed spacing (at most 0.5) and refined with a
    safeguarded Newton iteration. Raises :class:`NumericalError` if a window
    shows no sign change, or if the sign of Ai between consecutive zeros does
    not alternate (a skipped or duplicated zero).
    """
    if isinstance(count, bool) or int(count) != count or count < 1:
        raise DomainError(f"count must be a positive integer, got {count!r}")
    count = int(count)
    if not (tol >= 1e-15 and math.isfinite(tol)):
        raise DomainError(f"tol must be >= 1e-15, got {tol!r}")

    zeros: list[float] = []
    residuals: list[float] = []
    for n in range(1, count + 1):
        seed = zero_seed(n)
        gap = min(abs(zero_seed(n + 1) - seed), abs(seed - zero_seed(n - 1)) if n > 1 else math.inf)
        half = min(0.5, 0.25 * gap)
        a, r = _refine(seed - half, seed + half, tol)
        zeros.append(a)
        residuals.append(r)

    # Ai > 0 on (a_1, 0]; its sign alternates on each interval between zeros.
    if airy_ai(0.5 * zeros[0]) <= 0:
        raise NumericalError("Ai not positive between a_1 and 0; zero table inconsistent")
    for n in range(1, count):
        if not zeros[n] < zeros[n - 1]:
            raise NumericalError(f"zeros not strictly decreasing at n={n}")
        mid = airy_ai(0.5 * (zeros[n] + zeros[n - 1]))
        if (mid > 0) != (n % 2 == 0):
            raise NumericalError(f"sign pattern broken between a_{n} and a_{n + 1}")
    return AiryZeroTable(tuple(zeros), tuple(residuals), float(tol))
