"""The one-dimensional (k, a)-generalized Fourier transform.

A function on the line is split as f(x) = f_e(|x|) + sign(x) f_o(|x|); the
even part goes through H_{lam,a} and the odd part through H_{lam+1,a}
applied to f_o(r)/r, with lam = k - 1/2.  The measure on the line is
(b_{lam,a}/2)|x|^{2k+a-2} dx, so integrals over R are radial nu_{lam,a}
integrals of the two parts.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import special as sc

from .errors import DomainError, UnsupportedParameterError
from .pitt import FkaParams
from .quadrature import IntegrandSpec, integrate_semi_infinite
from .specfun import laguerre
from .transform import (MeasureSpec, TestFunction, classical_transform, hankel_deformed,
                        normalization_b, transform_norm, transform_table, weighted_norm)

INVERSION_TOL = 1e-12


@dataclass(eq=False)
class ParityFunction:
    """f(x) = ce f_e(|x|) + co sign(x) f_o(|x|); either part may be None."""
    even: Optional[TestFunction] = None
    odd: Optional[TestFunction] = None
    odd_over_r: Optional[TestFunction] = None
    ce: complex = 1.0
    co: complex = 1.0
    name: str = ""

    def __post_init__(self):
        if self.even is None and self.odd is None:
            raise DomainError("a parity function needs at least one part")
        if self.odd is not None and self.odd_over_r is None:
            o = self.odd
            self.odd_over_r = TestFunction(
                f"{o.name}/r", lambda r, fo=o.func: fo(r) / np.asarray(r, dtype=float), decay=o.decay,
                smoothness=o.smoothness, small_power=o.small_power - 1,
                exponent=None if o.exponent is None else o.exponent - 1,
                support=o.support, scale=o.scale, breakpoints=o.breakpoints)
        if not self.name:
            parts = [p.name for p in (self.even, self.odd) if p is not None]
            self.name = "+".join(parts)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        r = np.abs(x)
        out = np.zeros(x.shape, dtype=complex)
        if self.even is not None:
            out += self.ce * self.even(r)
        if self.odd is not None:
            out += self.co * np.sign(x) * self.odd(r)
        return out

    def scaled(self, c):
        return ParityFunction(self.even, self.odd, self.odd_over_r, c * self.ce, c * self.co,
                              f"{self.name}|x{c!r}")


@dataclass(frozen=True)
class BasisIndex:
    n: int
    s: int

    def __post_init__(self):
        if self.n not in (0, 1):
            raise DomainError("n is 0 (even) or 1 (odd) in one dimension")
        if int(self.s) != self.s or self.s < 0:
            raise DomainError("s must be a nonnegative integer")

    def laguerre_parameter(self, params):
        return 2 * (params.lam + self.n) / params.a

    def eigenvalue(self, params):
        return np.exp(-1j * np.pi * (self.s + self.n / params.a))


def as_parity(f):
    """ParityFunction view; a bare radial TestFunction is taken as even."""
    if isinstance(f, ParityFunction):
        return f
    if isinstance(f, TestFunction):
        return ParityFunction(even=f)
    raise DomainError("expected a ParityFunction or TestFunction")


def parity_decompose(f, name="f", decay="schwartz", exponent=None, scale=1.0, zero_tol=1e-14):
    """Split an evaluator on R into even and odd radial parts.

    A part that vanishes on a logarithmic probe grid (relative to the
    function's own size) is dropped.
    """
    fe = lambda r: np.real((f(np.asarray(r)) + f(-np.asarray(r))) / 2)
    fo = lambda r: np.real((f(np.asarray(r)) - f(-np.asarray(r))) / 2)
    probe = np.geomspace(1e-3, 1e3, 241) * scale
    size = max(np.abs(fe(probe)).max(), np.abs(fo(probe)).max())
    even = odd = None
    kw = dict(decay=decay, exponent=exponent, scale=scale,
              smoothness="power-decay" if decay == "power" else "schwartz")
    if np.abs(fe(probe)).max() > zero_tol * size:
        even = TestFunction(f"{name}_e", fe, **kw)
    if np.abs(fo(probe)).max() > zero_tol * size:
        odd = TestFunction(f"{name}_o", fo, small_power=1.0, **kw)
    return ParityFunction(even, odd, name=name)


def _measures(params):
    return MeasureSpec(params.lam, params.a), MeasureSpec(params.lam + 1, params.a)


def _odd_ratio(params):
    return normalization_b(params.lam, params.a) / normalization_b(params.lam + 1, params.a)


def fka_transform(pf, params, y, rtol=1e-11):
    """F_{k,a} f(y) = H(f_e)(|y|) + e^{-i pi/a} sign(y) |y| H_{lam+1}(f_o/r)(|y|)."""
    pf = as_parity(pf)
    me, mo = _measures(params)
    y = np.atleast_1d(np.asarray(y, dtype=float))
    rho = np.abs(y)
    out = np.zeros(y.shape, dtype=complex)
    if pf.even is not None:
        out += pf.ce * hankel_deformed(pf.even, me, rho, rtol)
    if pf.odd is not None:
        phase = np.exp(-1j * np.pi / params.a)
        out += pf.co * phase * np.sign(y) * rho * hankel_deformed(pf.odd_over_r, mo, rho, rtol)
    return out


def fka_norm(pf, params, beta=0.0):
    """|| |x|^beta f ||_{2, d mu_{k,a}}."""
    pf = as_parity(pf)
    me, _ = _measures(params)
    tot = 0.0
    if pf.even is not None:
        tot += abs(pf.ce) ** 2 * weighted_norm(pf.even, 2.0, beta, me) ** 2
    if pf.odd is not None:
        tot += abs(pf.co) ** 2 * weighted_norm(pf.odd, 2.0, beta, me) ** 2
    return float(np.sqrt(tot))


def fka_transform_norm(pf, params, gamma=0.0, rtol=1e-11):
    """|| |y|^{-gamma} F_{k,a} f ||_{2, d mu_{k,a}} from the two radial tables."""
    pf = as_parity(pf)
    me, mo = _measures(params)
    tot = 0.0
    if pf.even is not None:
        tot += abs(pf.ce) ** 2 * transform_norm(pf.even, me, 2.0, gamma, rtol) ** 2
    if pf.odd is not None:
        tot += abs(pf.co) ** 2 * _odd_ratio(params) * transform_norm(pf.odd_over_r, mo, 2.0, gamma, rtol) ** 2
    return float(np.sqrt(tot))


def fka_plancherel_defect(pf, params):
    """| ||F f|| - ||f|| |."""
    return abs(fka_transform_norm(pf, params) - fka_norm(pf, params))


# ----------------------------------------------------------------- basis

def basis_gamma(idx, params):
    """Positive normalizer of Phi_{n,s} in L2(R, d mu_{k,a})."""
    a = params.a
    al = idx.laguerre_parameter(params)
    if not al > -1:
        raise DomainError("Laguerre parameter must exceed -1")
    b = normalization_b(params.lam, a)
    log_norm2 = (np.log(b) - np.log(a) + (al + 1) * np.log(a / 2)
                 + sc.gammaln(al + idx.s + 1) - sc.gammaln(idx.s + 1))
    return float(np.exp(-0.5 * log_norm2))


def _radial_basis(idx, params, extra_power):
    a = params.a
    al = idx.laguerre_parameter(params)
    g = basis_gamma(idx, params)
    p = float(extra_power)

    def f(r):
        r = np.asarray(r, dtype=float)
        ra = r ** a
        return g * r ** p * laguerre(idx.s, al, 2 * ra / a) * np.exp(-ra / a)
    return f


def basis_function(idx, params):
    """Phi_{n,s} as a ParityFunction with exact parts."""
    a = params.a
    decay = "schwartz" if a >= 2 else "exponential"
    scale = max(1.0, (a * (idx.s + 1)) ** (1 / a) / 2)
    tag = f"Phi[{idx.n},{idx.s};k={params.k!r},a={a!r}]"
    if idx.n == 0:
        even = TestFunction(tag, _radial_basis(idx, params, 0), decay=decay, scale=scale)
        return ParityFunction(even=even, name=tag)
    odd = TestFunction(tag, _radial_basis(idx, params, 1), decay=decay, small_power=1.0, scale=scale)
    over = TestFunction(tag + "/r", _radial_basis(idx, params, 0), decay=decay, scale=scale)
    return ParityFunction(odd=odd, odd_over_r=over, name=tag)


def basis_phi(idx, params, x):
    """gamma Y_n(x) L_s^{(2(lam+n)/a)}((2/a)|x|^a) e^{-|x|^a/a}."""
    return np.real(basis_function(idx, params)(x))


def eigen_defect(idx, params, ys=None):
    """max |F Phi(y) - e^{-i pi (s + n/a)} Phi(y)| over sample points."""
    pf = basis_function(idx, params)
    if ys is None:
        part = pf.even if pf.even is not None else pf.odd
        ys = np.linspace(-4.0, 4.0, 33) * part.scale
    lhs = fka_transform(pf, params, ys)
    rhs = idx.eigenvalue(params) * pf(ys)
    return float(np.max(np.abs(lhs - rhs)))


def _radial_inner(f1, f2, m, sigma):
    h = lambda r: m.b * f1(r) * f2(r) * np.asarray(r, dtype=float) ** m.density_power
    decay = "schwartz" if m.a >= 2 else "exponential"
    spec = IntegrandSpec(h, decay, sigma=sigma, scale=max(f1.scale, f2.scale))
    return integrate_semi_infinite(spec, tol=1e-14, rtol=1e-13).value


def gram_matrix(n_max, s_max, params):
    """Gram matrix of {Phi_{n,s}} ordered by (n, s)."""
    idxs = [BasisIndex(n, s) for n in range(n_max + 1) for s in range(s_max + 1)]
    funcs = [basis_function(i, params) for i in idxs]
    me, _ = _measures(params)
    G = np.zeros((len(idxs), len(idxs)))
    for i, (ii, fi) in enumerate(zip(idxs, funcs)):
        for j in range(i, len(idxs)):
            jj, fj = idxs[j], funcs[j]
            if ii.n != jj.n:
                continue  # odd integrand over R
            part_i = fi.even if ii.n == 0 else fi.odd
            part_j = fj.even if jj.n == 0 else fj.odd
            sigma = 2 * ii.n + me.density_power
            G[i, j] = G[j, i] = _radial_inner(part_i, part_j, me, sigma)
    return idxs, G


def gram_defect(n_max, s_max, params):
    """max |Gram - I|."""
    _, G = gram_matrix(n_max, s_max, params)
    return float(np.max(np.abs(G - np.eye(len(G)))))


# --------------------------------------------------------------- inversion

def inversion_family(a):
    """('identity', r) for a = 1/r, ('reflection', r) for a = 2/(2r+1), else None."""
    a = float(a)
    r = 1 / a
    if abs(r - round(r)) < INVERSION_TOL and round(r) >= 1:
        return "identity", int(round(r))
    r = (2 / a - 1) / 2
    if abs(r - round(r)) < INVERSION_TOL and round(r) >= 0:
        return "reflection", int(round(r))
    return None


def _second_transform(pf, params, x, rtol=1e-11):
    """F(F f)(x) through the cached tables of the first transform."""
    me, mo = _measures(params)
    x = np.asarray(x, dtype=float)
    r = np.abs(x)
    out = np.zeros(x.shape, dtype=complex)
    phase = np.exp(-1j * np.pi / params.a)
    if pf.even is not None:
        tab = transform_table(pf.even, me, rtol)
        v, _ = classical_transform(tab.as_function(), me.order, me.s_of_r(r), rtol)
        out += pf.ce * v
    if pf.odd is not None:
        tab = transform_table(pf.odd_over_r, mo, rtol)
        v, _ = classical_transform(tab.as_function(), mo.order, mo.s_of_r(r), rtol)
        out += pf.co * phase * phase * np.sign(x) * r * v
    return out


def inversion_roundtrip(pf, params, samples=None, rtol=1e-11):
    """sup |F(F f)(x) - f(x)| for a = 1/r, sup |F(F f)(x) - f(-x)| for a = 2/(2r+1)."""
    pf = as_parity(pf)
    fam = inversion_family(params.a)
    if fam is None:
        raise UnsupportedParameterError(f"no inversion formula for a={params.a}")
    if samples is None:
        part = pf.even if pf.even is not None else pf.odd
        samples = np.linspace(-5.0, 5.0, 41) * part.scale
    x = np.asarray(samples, dtype=float)
    back = _second_transform(pf, params, x, rtol)
    target = pf(x) if fam[0] == "identity" else pf(-x)
    return float(np.max(np.abs(back - target)))


# ------------------------------------------------------------- translation

def _kernel_parts(params, t, rho):
    """Even part and (odd part)/y of y -> B_{k,a}(t, y) at y = rho > 0."""
    from .kernel1d import KernelParams, kernel_even, kernel_odd_over_y
    kp = KernelParams(params.k, params.a)
    return kernel_even(kp, t, rho), kernel_odd_over_y(kp, t, rho)


def translation_norm_check(t, pf, params, even_part=False, rtol=1e-11):
    """||T^t f|| / ||f||, with T^t f = F(B(t, .) F f).

    ``even_part`` replaces B(t, .) by its even part.
    """
    from .kernel1d import KernelParams, classify_boundedness
    pf = as_parity(pf)
    k, a = params.k, params.a
    if inversion_family(a) is None:
        raise UnsupportedParameterError(f"a={a} is outside the inversion families")
    if even_part:
        if 2 * k + a / 2 < 1:
            raise UnsupportedParameterError("even kernel exceeds 1 when 2k + a/2 < 1")
    elif a == 1:
        if classify_boundedness(k) != "bounded_by_1":
            raise UnsupportedParameterError(f"kernel is not bounded by 1 at k={k}, a=1")
    elif a != 2:
        raise UnsupportedParameterError("kernel bound only known for a in {1, 2}")

    me, mo = _measures(params)
    phase = np.exp(-1j * np.pi / a)
    tabE = transform_table(pf.even, me, rtol) if pf.even is not None else None
    tabO = transform_table(pf.odd_over_r, mo, rtol) if pf.odd is not None else None
    E = lambda r: 0.0 if tabE is None else pf.ce * tabE(me.s_of_r(r))
    Or = lambda r: 0.0 if tabO is None else pf.co * phase * tabO(mo.s_of_r(r))  # odd part of F f over rho
    rho_max = max(float(m.r_of_s(tb.Theta)) for m, tb in ((me, tabE), (mo, tabO)) if tb is not None)
    tails = [tb.tail_power for tb in (tabE, tabO) if tb is not None and tb.tail_power is not None]

    def h_even(r):
        be, bo = _kernel_parts(params, t, r)
        bo = 0.0 if even_part else bo
        # even part of B F f: B_e E + (B_o/y)(y O/y) y^2 ... with both odd factors
        return be * E(r) + bo * r * r * Or(r)

    def h_odd_over_r(r):
        be, bo = _kernel_parts(params, t, r)
        bo = 0.0 if even_part else bo
        return be * Or(r) + bo * E(r)

    tag = f"T[{t!r},{pf.name},{k!r},{a!r},{even_part}]"
    total = 0.0
    for label, fun, m, weight in (("e", h_even, me, 1.0), ("o", h_odd_over_r, mo, _odd_ratio(params))):
        for part, pick in (("re", np.real), ("im", np.imag)):
            func = lambda r, fun=fun, pick=pick: pick(fun(np.asarray(r, dtype=float)))
            probe = func(np.linspace(1e-3, rho_max, 200))
            if not np.any(probe != 0):
                continue
            if tails:
                tf = TestFunction(f"{tag}{label}{part}", func, decay="power",
                                  exponent=-min(tails) * a / 2, smoothness="power-decay")
            else:
                tf = TestFunction(f"{tag}{label}{part}", func, decay="compact", support=(0.0, rho_max))
            total += weight * transform_norm(tf, m, 2.0, 0.0, rtol) ** 2
    return float(np.sqrt(total) / fka_norm(pf, params))
