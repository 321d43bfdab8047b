"""General monotone functions and Pitt-type bounds restricted to them.

f is GM with witness (C, c) when, for every r > 0,

    int_r^inf |df|  <=  C int_{r/c}^inf |f(u)| du / u.

Everything here is certified on a finite logarithmic r-grid only.
"""
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, DomainError
from .pitt import sharp_constant
from .quadrature import IntegrandSpec, integrate_finite, integrate_semi_infinite
from .transform import MeasureSpec, normalization_b, transform_norm, weighted_norm

DEFAULT_GRID = np.geomspace(1e-3, 1e3, 61)
DILATIONS = (0.25, 1.0, 4.0)


@dataclass(frozen=True)
class GMWitness:
    C: float
    c: float
    r_min: float = float(DEFAULT_GRID[0])
    r_max: float = float(DEFAULT_GRID[-1])
    max_defect: float = float("nan")

    def __post_init__(self):
        if not self.c > 1 or not self.C > 0:
            raise DomainError("a GM witness needs C > 0 and c > 1")


@dataclass(frozen=True)
class GMRangeVerdict:
    direction: str
    lower: float
    upper: float
    balance_shift: float  # beta - gamma must equal this

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise DomainError("interval endpoints out of order")

    def contains(self, beta):
        return self.lower < beta < self.upper

    def gamma(self, beta):
        return beta - self.balance_shift

    def balance_residual(self, beta, gamma):
        return abs(beta - gamma - self.balance_shift)


def _derivative(f):
    if f.derivative is not None:
        return f.derivative
    h = 1e-6

    def d(r):
        r = np.asarray(r, dtype=float)
        s = h * np.maximum(r, 1e-3)
        return (f(r + s) - f(r - s)) / (2 * s)
    return d


def _tail_integral(h, f, lo, exponent, tol=1e-12):
    """int_lo^inf h using the decay metadata of f for the tail."""
    if f.support is not None:
        hi = f.support[1]
        if lo >= hi:
            return 0.0
        bps = [p for p in f.breakpoints if lo < p < hi]
        return integrate_finite(h, lo, hi, tol=tol, rtol=1e-10, breakpoints=bps, budget=4_000_000).value
    if f.decay == "power":
        spec = IntegrandSpec(h, "power", exponent=exponent, scale=max(f.scale, lo))
    else:
        spec = IntegrandSpec(h, f.decay, scale=max(f.scale, lo))
    return integrate_semi_infinite(spec, tol=tol, lo=lo, rtol=1e-10).value


def variation_tail(f, r, sigma=0.0):
    """int_r^inf u^sigma |df(u)|, counting a jump at the end of a finite support."""
    df = _derivative(f)
    h = lambda u: np.asarray(u, dtype=float) ** sigma * np.abs(df(u))
    e = None if f.exponent is None else f.exponent - 1 + sigma
    if e is not None and e >= -1:
        raise DivergenceError("variation integral diverges")
    val = _tail_integral(h, f, r, e)
    if f.support is not None and r < f.support[1]:
        hi = f.support[1]
        # left limit at the support end
        val += hi ** sigma * abs(float(f.func(np.array([np.nextafter(hi, 0.0)]))[0]))
    return val


def weighted_tail(f, r, sigma=0.0):
    """int_r^inf u^{sigma-1} |f(u)| du."""
    h = lambda u: np.asarray(u, dtype=float) ** (sigma - 1) * np.abs(f(u))
    e = None if f.exponent is None else f.exponent - 1 + sigma
    if e is not None and e >= -1:
        raise DivergenceError("weighted tail integral diverges")
    return _tail_integral(h, f, r, e)


def gm_defect(f, witness, grid=None, sigma=0.0):
    """max over the grid of int_r^inf |df| - C int_{r/c}^inf |f| du/u (<= 0 certifies)."""
    grid = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
    return float(max(variation_tail(f, r, sigma) - witness.C * weighted_tail(f, r / witness.c, sigma)
                     for r in grid))


def gm_witness_search(f, c, grid=None, sigma=0.0):
    """Smallest C making the GM condition hold on the grid for this c."""
    grid = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
    best = 0.0
    for r in grid:
        v = variation_tail(f, r, sigma)
        w = weighted_tail(f, r / c, sigma)
        if w > 0:
            best = max(best, v / w)
        elif v > 0:
            raise DivergenceError(f"variation without mass at r={r}")
    C = best if best > 0 else np.finfo(float).tiny
    wit = GMWitness(C, float(c), float(grid[0]), float(grid[-1]))
    return GMWitness(C, float(c), float(grid[0]), float(grid[-1]), gm_defect(f, wit, grid, sigma))


def _growth_divergent(h, lo=1.0):
    """Heuristic: partial integrals over [lo, 10^{2j}] keep growing by similar amounts."""
    edges = [lo] + [10.0 ** (2 * j) for j in range(1, 7)]
    incs = [integrate_finite(h, edges[j], edges[j + 1], tol=1e-14, rtol=1e-10).value
            for j in range(len(edges) - 1)]
    return incs[-1] > 0.5 * incs[-2] and incs[-1] > 1e-12 * max(sum(incs), 1e-300)


def integral_condition(f, lam, a):
    """(finite, int_0^1 r^{2lam+a-1}|f|, int_1^inf r^{lam+a/4}|df|)."""
    d = 2 * lam + a - 1
    if d + f.small_power <= -1:
        v1 = np.inf
    else:
        v1 = integrate_finite(lambda r: np.asarray(r) ** d * np.abs(f(r)), 0.0, 1.0, tol=1e-14,
                              rtol=1e-12, sigma_lo=d + f.small_power).value
    sigma = lam + a / 4
    df = _derivative(f)
    h = lambda u: np.asarray(u, dtype=float) ** sigma * np.abs(df(u))
    e = None if f.exponent is None else f.exponent - 1 + sigma
    if (e is not None and e >= -1) or (f.support is None and f.decay == "power" and _growth_divergent(h)):
        v2 = np.inf
    else:
        v2 = variation_tail(f, 1.0, sigma)
    return bool(np.isfinite(v1) and np.isfinite(v2)), float(v1), float(v2)


def gm_pitt_range(p, q, lam, a, direction="direct"):
    """Open beta-interval and the balance shift for GM Pitt inequalities."""
    if not (1 < p < np.inf and 1 < q < np.inf):
        raise DomainError("p, q must lie in (1, inf)")
    pc = p / (p - 1)
    shift = (2 * lam + a) * (1 / pc - 1 / q)
    if direction == "direct":
        if p > q:
            raise DomainError("direct inequality needs p <= q")
        lo = (0.5 - 1 / p) * (2 * lam + a / 2) - a / (2 * p)
        hi = (2 * lam + a) / pc
    elif direction == "reverse":
        if q > p:
            raise DomainError("reverse inequality needs q <= p")
        lo = -(2 * lam + a) / p - a / (2 * p)
        hi = np.inf
    elif direction == "two-sided":
        if p != q:
            raise DomainError("two-sided equivalence needs q = p")
        hi = (2 * lam + a) / pc
        lo = hi - (4 * lam + 3 * a) / 4
    else:
        raise DomainError(f"unknown direction {direction!r}")
    return GMRangeVerdict(direction, float(lo), float(hi), float(shift))


def boas_sagher_ratios(f, p, beta, lam, a, dilations=DILATIONS):
    """{mu: ||rho^-beta H f_mu||_p / ||r^beta f_mu||_p} under the two-sided range."""
    rng = gm_pitt_range(p, p, lam, a, "two-sided")
    if not rng.contains(beta):
        raise DomainError(f"beta={beta} outside the two-sided range ({rng.lower}, {rng.upper})")
    finite, _, _ = integral_condition(f, lam, a)
    if not finite:
        raise DivergenceError("integral condition fails")
    m = MeasureSpec(lam, a)
    gamma = rng.gamma(beta)
    out = {}
    for mu in dilations:
        g = f if mu == 1.0 else f.dilate(mu)
        out[mu] = transform_norm(g, m, p, gamma) / weighted_norm(g, p, beta, m)
    return out


def boas_sagher_check(f, p, beta, lam, a):
    """(smallest, largest) empirical ratio over the dilates 1/4, 1, 4."""
    r = list(boas_sagher_ratios(f, p, beta, lam, a).values())
    return float(min(r)), float(max(r))


def boas_sagher_bound(beta, lam, a, p=2.0):
    """Upper constant available from the sharp L2 theory, or None."""
    if p == 2 and 0 <= beta < lam + a / 2:
        return sharp_constant(beta, lam, a)
    return None


def holder_factor(p, beta, lam, a):
    """I with I^{p'} = int_0^inf r^{(-beta-(2lam+a-1)/p)p'} w(r)^{p'} dr."""
    pc = p / (p - 1)
    d = 2 * lam + a - 1
    base = (-beta - d / p) * pc
    e0 = base + d * pc
    e1 = base + (lam + a / 4 - 1) * pc
    if not (e0 > -1 and e1 < -1):
        raise DivergenceError("Holder factor diverges outside the two-sided range")
    return float((1 / (e0 + 1) - 1 / (e1 + 1)) ** (1 / pc))


def remark_bound_check(f, p, beta, lam, a, c=2.0, grid=None):
    """Largest relative violation along the chain
    variation integral <= C int w|f| <= C ||r^beta f|| I.
    """
    rng = gm_pitt_range(p, p, lam, a, "two-sided")
    if not rng.contains(beta):
        raise DomainError("beta outside the two-sided range")
    m = MeasureSpec(lam, a)
    try:
        norm = weighted_norm(f, p, beta, m)
    except DivergenceError as exc:
        raise DomainError("||r^beta f||_p is infinite") from exc
    sigma = lam + a / 4
    grid = np.geomspace(1e-2, 1e2, 21) if grid is None else np.asarray(grid, dtype=float)
    wit = gm_witness_search(f, c, grid, sigma)
    v1 = max((variation_tail(f, r, sigma) - wit.C * weighted_tail(f, r / c, sigma))
             / max(variation_tail(f, r, sigma), 1e-300) for r in np.append(grid, 1.0))
    # Holder step: int w|f| dr <= b^{-1/p} ||r^beta f||_{p,nu} I
    d = 2 * lam + a - 1
    w_f = integrate_finite(lambda r: np.asarray(r) ** d * np.abs(f(r)), 0.0, 1.0, tol=1e-14, rtol=1e-12,
                           sigma_lo=d + f.small_power).value
    w_f += weighted_tail(f, 1.0, sigma)
    rhs = normalization_b(lam, a) ** (-1 / p) * norm * holder_factor(p, beta, lam, a)
    v2 = (w_f - rhs) / rhs
    return float(max(v1, v2))
