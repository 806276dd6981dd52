"""Levy triples and Levy measures on the real line.

A law is stored as a triple [a, R, M]: shift, Gaussian variance and Levy
measure, with Levy-Khintchine exponent

    Phi(y) = i a y - R y^2 / 2 + int (e^{iyx} - 1 - i y x 1{|x| <= 1}) M(dx).

Measures come in four concrete flavours plus a formal sum:

* ``Discrete`` -- finitely many atoms;
* ``StableMixture`` -- finite mixtures of stable radial densities w^-(z+1);
* ``JTransformed`` -- the image under the gamma-time-changed integral
  int_0^1 t dY(tau_alpha(t)), i.e. M'(A) = E[M(A / g_alpha)];
* ``ITransformed`` -- the image under int_0^inf e^-s dY(s), i.e.
  M'(A) = int_0^inf M(e^s A) ds.

Every measure answers the same small set of questions: tail mass beyond a
radius per direction, the jump part of the exponent, and the compensator
shift picked up under a dilation. Transformed measures answer them lazily by
integrating the seed's answers against their scale law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np
from scipy import optimize
from scipy import special as sc

from ._quad import (PRECISE_ABS_TOL, PRECISE_REL_TOL, gamma_expect,
                    piecewise_quad)
from .errors import InvalidMeasure, LogMomentDiverges, NonFinite
from .special import g_partial_moment, tau_cdf

DIRECTIONS = (1, -1)
_EULER = 0.5772156649015329
_PSI2 = 1.0 - _EULER  # digamma(2)
_TRIGAMMA2 = math.pi ** 2 / 6.0 - 1.0


def _vectorize_radius(fn):
    """Let a scalar ``tail(d, r)`` accept an array of radii."""

    def wrapper(self, d, r):
        if np.ndim(r) == 0:
            return fn(self, d, float(r))
        r = np.asarray(r, dtype=float)
        return np.array([fn(self, d, float(x)) for x in r.ravel()]).reshape(r.shape)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


class LevyMeasure:
    """Common interface; subclasses override what they can do in closed form."""

    def tail(self, d, r):
        """M({x : sign(x) = d, |x| > r})."""
        raise NotImplementedError

    def lk(self, y):
        """Jump part of the exponent: int (e^{iyx} - 1 - iyx 1{|x|<=1}) M(dx)."""
        raise NotImplementedError

    def comp(self, c):
        """int x (1{|cx| <= 1} - 1{|x| <= 1}) M(dx).

        The shift correction produced by pushing M forward under x -> c x.
        """
        raise NotImplementedError

    def kinks(self):
        """Radii where the tail function is not smooth."""
        return ()

    def scale(self, s):
        raise NotImplementedError

    def dilate(self, d):
        raise NotImplementedError

    def scale_hint(self):
        """A characteristic radius, used to size horizons and default grids."""
        k = self.kinks()
        return max(k) if k else 1.0

    def as_stable(self):
        """Equivalent ``StableMixture`` when the measure is one, else None."""
        return None

    def tail_eps(self):
        """Relative accuracy of ``tail``: roundoff for closed forms, else quadrature."""
        return 1e-9

    @property
    def is_zero(self):
        return False

    # -- functionals with generic quadrature fallbacks ----------------------

    def big_shift(self, alpha):
        """int_{|x|>1} x Q(alpha, 2 ln|x|) M(dx), Q the regularized upper gamma.

        Generic route: 2^alpha E[g comp(g)] with g ~ tau_alpha.
        """
        breaks = [math.log(k) for k in self.kinks() if k > 1.0]
        val, _ = gamma_expect(lambda u: math.exp(-u) * self.comp(math.exp(-u)), alpha,
                              breaks, epsabs=PRECISE_ABS_TOL, epsrel=PRECISE_REL_TOL)
        return 2.0 ** alpha * val

    def large_mass(self):
        """M(|x| > 1)."""
        return sum(float(self.tail(d, 1.0)) for d in DIRECTIONS)

    def small_second_moment(self):
        """int_{|x|<=1} x^2 M(dx), from the tail by integration by parts."""
        total = 0.0
        for d in DIRECTIONS:
            t1 = float(self.tail(d, 1.0))
            val, _ = piecewise_quad(lambda r: 2.0 * r * (float(self.tail(d, r)) - t1),
                                    0.0, 1.0, [k for k in self.kinks() if k < 1.0])
            total += val
        return total

    def log_moment(self):
        """int_{|x|>1} ln|x| M(dx) = sum_d int_0^inf tail(d, e^s) ds."""
        total = 0.0
        breaks = [math.log(k) for k in self.kinks() if k > 1.0]
        for d in DIRECTIONS:
            val, _ = piecewise_quad(lambda s: float(self.tail(d, math.exp(s))),
                                    0.0, np.inf, breaks)
            total += val
        return total


# ---------------------------------------------------------------------------
# closed-form variants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Discrete(LevyMeasure):
    atoms: tuple = ()

    def __post_init__(self):
        atoms = tuple((float(x), float(m)) for x, m in self.atoms)
        for x, m in atoms:
            if not (math.isfinite(x) and x != 0.0):
                raise InvalidMeasure(f"atom position must be finite and non-zero, got {x}")
            if not (math.isfinite(m) and m > 0.0):
                raise InvalidMeasure(f"atom mass must be positive and finite, got {m}")
        object.__setattr__(self, "atoms", atoms)

    @property
    def is_zero(self):
        return not self.atoms

    def tail(self, d, r):
        if np.ndim(r) == 0:
            return sum(m for x, m in self.atoms if (x > 0) == (d > 0) and abs(x) > r)
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        for x, m in self.atoms:
            if (x > 0) == (d > 0):
                out += m * (abs(x) > r)
        return out

    def lk(self, y):
        acc = 0j
        for x, m in self.atoms:
            yx = y * x
            acc += m * (complex(math.cos(yx) - 1.0, math.sin(yx))
                        - (1j * yx if abs(x) <= 1.0 else 0.0))
        return acc

    def comp(self, c):
        c = abs(float(c))
        return sum(m * x * (float(abs(c * x) <= 1.0) - float(abs(x) <= 1.0))
                   for x, m in self.atoms)

    def big_shift(self, alpha):
        return sum(m * x * float(sc.gammaincc(alpha, 2.0 * math.log(abs(x))))
                   for x, m in self.atoms if abs(x) > 1.0)

    def kinks(self):
        return tuple(sorted({abs(x) for x, _ in self.atoms}))

    def large_mass(self):
        return sum(m for x, m in self.atoms if abs(x) > 1.0)

    def small_second_moment(self):
        return sum(m * x * x for x, m in self.atoms if abs(x) <= 1.0)

    def log_moment(self):
        return sum(m * math.log(abs(x)) for x, m in self.atoms if abs(x) > 1.0)

    def scale(self, s):
        return Discrete(tuple((x, m * s) for x, m in self.atoms)) if s else Discrete(())

    def dilate(self, d):
        return Discrete(tuple((x * d, m) for x, m in self.atoms))

    def tail_eps(self):
        return 1e-15

    @property
    def total_mass(self):
        return sum(m for _, m in self.atoms)


def _stable_lk_positive(y, z):
    """int_0^inf (e^{iyv} - 1 - iyv 1{v<=1}) v^-(z+1) dv for a unit weight."""
    if y == 0.0:
        return 0j
    ay = abs(y)
    sgn = 1.0 if y > 0 else -1.0
    re = -math.pi * ay ** z / (2.0 * math.gamma(1.0 + z) * math.sin(math.pi * z / 2.0))
    eps = z - 1.0
    ly = math.log(ay)
    if abs(eps) >= 0.25:
        im = (math.pi * ay ** z / (2.0 * math.cos(math.pi * z / 2.0) * math.gamma(1.0 + z))
              - ay / (1.0 - z))
    elif abs(eps) >= 1e-6:
        # both terms blow up like 1/(z-1); combine them analytically
        x = math.pi * eps / 2.0
        log_a = eps * ly - float(sc.gammaln(2.0 + eps)) + math.log(x / math.sin(x))
        im = -ay * math.expm1(log_a) / eps
    else:
        b = ly - _PSI2
        im = -ay * (b + eps * (math.pi ** 2 / 24.0 - _TRIGAMMA2 / 2.0 + b * b / 2.0))
    return complex(re, sgn * im)


def _comp_power(z, c):
    """(|c|^(z-1) - 1) / (1 - z), continuous through z = 1."""
    lc = math.log(abs(c))
    eps = z - 1.0
    if eps == 0.0:
        return -lc
    return -math.expm1(eps * lc) / eps


@dataclass(frozen=True)
class StableMixture(LevyMeasure):
    """Atoms (direction, z, weight): density weight * w^-(z+1) on direction's half-line."""

    atoms: tuple = ()

    def __post_init__(self):
        atoms = tuple((int(d), float(z), float(w)) for d, z, w in self.atoms)
        for d, z, w in atoms:
            if d not in DIRECTIONS:
                raise InvalidMeasure(f"direction must be +1 or -1, got {d}")
            if not 0.0 < z < 2.0:
                raise InvalidMeasure(f"stable index must lie in (0, 2), got {z}")
            if not (math.isfinite(w) and w > 0.0):
                raise InvalidMeasure(f"weight must be positive and finite, got {w}")
        object.__setattr__(self, "atoms", atoms)

    @property
    def is_zero(self):
        return not self.atoms

    def tail(self, d, r):
        r = np.asarray(r, dtype=float) if np.ndim(r) else float(r)
        out = 0.0 * r
        for dd, z, w in self.atoms:
            if dd == d:
                out = out + w * r ** (-z) / z
        return out

    def lk(self, y):
        return sum((w * _stable_lk_positive(dd * y, z) for dd, z, w in self.atoms), 0j)

    def comp(self, c):
        return sum(dd * w * _comp_power(z, c) for dd, z, w in self.atoms)

    def big_shift(self, alpha):
        acc = 0.0
        for dd, z, w in self.atoms:
            eps = z - 1.0
            if eps == 0.0:
                v = alpha / 2.0
            else:
                v = -math.expm1(-alpha * math.log1p(eps / 2.0)) / eps
            acc += dd * w * v
        return acc

    def large_mass(self):
        return sum(w / z for _, z, w in self.atoms)

    def small_second_moment(self):
        return sum(w / (2.0 - z) for _, z, w in self.atoms)

    def log_moment(self):
        return sum(w / (z * z) for _, z, w in self.atoms)

    def scale(self, s):
        return StableMixture(tuple((d, z, w * s) for d, z, w in self.atoms)) if s else StableMixture(())

    def dilate(self, d):
        sgn = 1 if d > 0 else -1
        return StableMixture(tuple((dd * sgn, z, w * abs(d) ** z) for dd, z, w in self.atoms))

    def as_stable(self):
        return self

    def tail_eps(self):
        return 1e-15

    def moment_condition(self):
        """Per-direction sum of weight / (2 - z)."""
        return {d: sum(w / (2.0 - z) for dd, z, w in self.atoms if dd == d) for d in DIRECTIONS}


# ---------------------------------------------------------------------------
# lazily transformed measures
# ---------------------------------------------------------------------------


class _ScaleMixture(LevyMeasure):
    """M'(A) = int M(A / c) nu(dc) for a scale law nu supplied by the subclass."""

    seed: LevyMeasure

    def _nu_integrate(self, fn, c_breaks=(), complex_func=False, precise=False):
        raise NotImplementedError

    @cached_property
    def _stable(self):
        st = self.seed.as_stable()
        if st is None:
            return None
        atoms = []
        for d, z, w in st.atoms:
            factor, _ = self._nu_integrate(lambda c, z=z: abs(c) ** z, precise=True)
            atoms.append((d, z, w * factor))
        return StableMixture(tuple(atoms))

    def as_stable(self):
        return self._stable

    @property
    def is_zero(self):
        return self.seed.is_zero

    @_vectorize_radius
    def tail(self, d, r):
        if self._stable is not None:
            return self._stable.tail(d, r)
        seed = self.seed
        breaks = [r / k for k in seed.kinks()]

        def f(c):
            if c == 0.0:
                return 0.0
            return float(seed.tail(d if c > 0 else -d, r / abs(c)))

        return self._nu_integrate(f, breaks)[0]

    def lk(self, y):
        if self._stable is not None:
            return self._stable.lk(y)
        if y == 0.0:
            return 0j
        seed = self.seed
        breaks = [1.0 / k for k in seed.kinks()]
        return self._nu_integrate(lambda c: seed.lk(c * y) - 1j * y * c * seed.comp(c),
                                  breaks, complex_func=True)[0]

    def comp(self, c0):
        if self._stable is not None:
            return self._stable.comp(c0)
        seed = self.seed
        ks = seed.kinks()
        breaks = [1.0 / k for k in ks] + [1.0 / (abs(c0) * k) for k in ks]
        return self._nu_integrate(lambda c: c * (seed.comp(c0 * c) - seed.comp(c)),
                                  breaks, precise=True)[0]

    def big_shift(self, alpha):
        if self._stable is not None:
            return self._stable.big_shift(alpha)
        return super().big_shift(alpha)

    def kinks(self):
        return self.seed.kinks()

    def scale_hint(self):
        return self.seed.scale_hint()

    def tail_eps(self):
        if self._stable is not None or isinstance(self.seed, Discrete):
            return 1e-14
        return 1e-9


@dataclass(frozen=True, eq=True)
class JTransformed(_ScaleMixture):
    """M'(A) = int_(0,1) M(t^-1 A) d tau_alpha(t) = E[M(A / g_alpha)]."""

    seed: LevyMeasure
    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise InvalidMeasure(f"alpha must be positive, got {self.alpha}")
        object.__setattr__(self, "alpha", float(self.alpha))

    def _nu_integrate(self, fn, c_breaks=(), complex_func=False, precise=False):
        u_breaks = [-math.log(c) for c in c_breaks if 0.0 < c < 1.0]
        kw = dict(epsabs=PRECISE_ABS_TOL, epsrel=PRECISE_REL_TOL) if precise else {}
        return gamma_expect(lambda u: fn(math.exp(-u)), self.alpha, u_breaks,
                            complex_func=complex_func, **kw)

    def tail(self, d, r):
        if isinstance(self.seed, Discrete):
            rr = np.asarray(r, dtype=float)
            out = np.zeros_like(rr)
            for x, m in self.seed.atoms:
                if (x > 0) == (d > 0):
                    ax = abs(x)
                    out += np.where(rr < ax, m * (1.0 - tau_cdf(self.alpha, np.minimum(rr / ax, 1.0))), 0.0)
            return float(out) if out.ndim == 0 else out
        return _ScaleMixture.tail(self, d, r)

    def comp(self, c0):
        if isinstance(self.seed, Discrete):
            c0 = abs(c0)
            acc = 0.0
            for x, m in self.seed.atoms:
                ax = abs(x)
                hi = g_partial_moment(self.alpha, 1.0, 1.0 / (c0 * ax)) if c0 > 0 else 2.0 ** -self.alpha
                lo = g_partial_moment(self.alpha, 1.0, 1.0 / ax)
                acc += m * x * (hi - lo)
            return acc
        return _ScaleMixture.comp(self, c0)

    def scale(self, s):
        return JTransformed(self.seed.scale(s), self.alpha)

    def dilate(self, d):
        return JTransformed(self.seed.dilate(d), self.alpha)


def _cin(x):
    """Cin(x) = int_0^x (1 - cos t)/t dt."""
    if x < 1e-3:
        x2 = x * x
        return x2 / 4.0 - x2 * x2 / 96.0 + x2 ** 3 / 4320.0
    _, ci = sc.sici(x)
    return _EULER + math.log(x) - float(ci)


@dataclass(frozen=True, eq=True)
class ITransformed(_ScaleMixture):
    """M'(A) = int_0^inf M(e^s A) ds; requires a finite log-moment of the seed."""

    seed: LevyMeasure

    def horizon(self):
        ks = self.seed.kinks() or (self.seed.scale_hint(),)
        return 40.0 * (1.0 + max(abs(math.log(k)) for k in ks))

    def _nu_integrate(self, fn, c_breaks=(), complex_func=False, precise=False):
        s_breaks = [-math.log(c) for c in c_breaks if 0.0 < c < 1.0]
        kw = dict(epsabs=PRECISE_ABS_TOL, epsrel=PRECISE_REL_TOL) if precise else {}
        return piecewise_quad(lambda s: fn(math.exp(-s)), 0.0, self.horizon(), s_breaks,
                              complex_func=complex_func, **kw)

    def tail(self, d, r):
        if isinstance(self.seed, Discrete):
            rr = np.asarray(r, dtype=float)
            out = np.zeros_like(rr)
            for x, m in self.seed.atoms:
                if (x > 0) == (d > 0):
                    out += m * np.log(np.maximum(abs(x) / rr, 1.0))
            return float(out) if out.ndim == 0 else out
        return _ScaleMixture.tail(self, d, r)

    def lk(self, y):
        if isinstance(self.seed, Discrete):
            if y == 0.0:
                return 0j
            acc = 0j
            for x, m in self.seed.atoms:
                ax, sg = abs(x), (1.0 if x > 0 else -1.0)
                si, _ = sc.sici(sg * y * ax)
                acc += m * complex(-_cin(abs(y) * ax), float(si) - sg * y * min(ax, 1.0))
            return acc
        return _ScaleMixture.lk(self, y)

    def comp(self, c0):
        if isinstance(self.seed, Discrete):
            c0 = abs(c0)
            lim = 1.0 / c0 if c0 > 0 else math.inf
            return sum(m * math.copysign(1.0, x) * (min(abs(x), lim) - min(abs(x), 1.0))
                       for x, m in self.seed.atoms)
        return _ScaleMixture.comp(self, c0)

    def scale(self, s):
        return ITransformed(self.seed.scale(s))

    def dilate(self, d):
        return ITransformed(self.seed.dilate(d))


def _crossings(fn, lo, hi, levels, n=1025):
    """Points in (lo, hi) where fn crosses any of the given levels."""
    if not levels:
        return []
    ts = np.linspace(lo, hi, n)
    ts[0] = lo + 1e-12 * (hi - lo)
    vals = np.array([fn(t) for t in ts])
    out = []
    for lev in levels:
        diff = vals - lev
        idx = np.nonzero(np.sign(diff[:-1]) * np.sign(diff[1:]) < 0)[0]
        for i in idx:
            out.append(optimize.brentq(lambda t: fn(t) - lev, ts[i], ts[i + 1], xtol=1e-14))
    return out


def _numeric_derivative(fn, t, lo, hi):
    h = 1e-5 * max(1.0, abs(t))
    a, b = max(lo, t - h), min(hi, t + h)
    return (fn(b) - fn(a)) / (b - a)


@dataclass(frozen=True, eq=False)
class PathTransformed(_ScaleMixture):
    """M'(A) = int_(a,b] M(h(t)^-1 A) dr(t) for deterministic h and time change r.

    ``r_prime`` is the density of dr; when omitted it is obtained by finite
    differences of ``r``.
    """

    seed: LevyMeasure
    h: Callable
    r: Callable
    a: float
    b: float
    r_prime: Callable | None = None

    def _density(self, t):
        if self.r_prime is not None:
            return self.r_prime(t)
        return _numeric_derivative(self.r, t, self.a, self.b)

    def _nu_integrate(self, fn, c_breaks=(), complex_func=False, precise=False):
        absh = lambda t: abs(self.h(t))  # noqa: E731
        t_breaks = _crossings(absh, self.a, self.b, [c for c in c_breaks if c > 0])
        kw = dict(epsabs=PRECISE_ABS_TOL, epsrel=PRECISE_REL_TOL) if precise else {}
        return piecewise_quad(lambda t: fn(self.h(t)) * self._density(t), self.a, self.b,
                              t_breaks, complex_func=complex_func, **kw)

    def kinks(self):
        ks = self.seed.kinks()
        if not ks:
            return ()
        hmax = max(abs(self.h(t)) for t in np.linspace(self.a, self.b, 257)[1:])
        return tuple(sorted({k * hmax for k in ks}))

    def tail_eps(self):
        return 1e-14 if self._stable is not None else 1e-9

    def scale(self, s):
        return PathTransformed(self.seed.scale(s), self.h, self.r, self.a, self.b, self.r_prime)

    def dilate(self, d):
        return PathTransformed(self.seed.dilate(d), self.h, self.r, self.a, self.b, self.r_prime)


@dataclass(frozen=True)
class SumMeasure(LevyMeasure):
    """Formal sum of heterogeneous measures."""

    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    @property
    def is_zero(self):
        return all(t.is_zero for t in self.terms)

    def tail(self, d, r):
        return sum((t.tail(d, r) for t in self.terms), 0.0)

    def lk(self, y):
        return sum((t.lk(y) for t in self.terms), 0j)

    def comp(self, c):
        return sum(t.comp(c) for t in self.terms)

    def big_shift(self, alpha):
        return sum(t.big_shift(alpha) for t in self.terms)

    def large_mass(self):
        return sum(t.large_mass() for t in self.terms)

    def small_second_moment(self):
        return sum(t.small_second_moment() for t in self.terms)

    def log_moment(self):
        return sum(t.log_moment() for t in self.terms)

    def kinks(self):
        return tuple(sorted({k for t in self.terms for k in t.kinks()}))

    def tail_eps(self):
        return max((t.tail_eps() for t in self.terms), default=1e-15)

    def scale_hint(self):
        return max((t.scale_hint() for t in self.terms), default=1.0)

    def scale(self, s):
        return SumMeasure(tuple(t.scale(s) for t in self.terms))

    def dilate(self, d):
        return SumMeasure(tuple(t.dilate(d) for t in self.terms))

    def as_stable(self):
        parts = [t.as_stable() for t in self.terms]
        if any(p is None for p in parts):
            return None
        return StableMixture(tuple(a for p in parts for a in p.atoms))


def add_measures(m1, m2):
    """Sum of two measures, kept in the simplest representable form."""
    if m1.is_zero:
        return m2
    if m2.is_zero:
        return m1
    if isinstance(m1, Discrete) and isinstance(m2, Discrete):
        return Discrete(m1.atoms + m2.atoms)
    if isinstance(m1, StableMixture) and isinstance(m2, StableMixture):
        return StableMixture(m1.atoms + m2.atoms)
    terms = []
    for m in (m1, m2):
        terms.extend(m.terms if isinstance(m, SumMeasure) else (m,))
    return SumMeasure(tuple(terms))


# ---------------------------------------------------------------------------
# triples and the triple algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LevyTriple:
    shift: float = 0.0
    gauss_var: float = 0.0
    measure: LevyMeasure = field(default_factory=Discrete)

    def __post_init__(self):
        if not math.isfinite(self.shift):
            raise InvalidMeasure("shift must be finite")
        if not (math.isfinite(self.gauss_var) and self.gauss_var >= 0.0):
            raise InvalidMeasure(f"Gaussian variance must be >= 0, got {self.gauss_var}")
        object.__setattr__(self, "shift", float(self.shift))
        object.__setattr__(self, "gauss_var", float(self.gauss_var))


def dilate(t, d):
    """Triple of T_d mu, chosen so that Phi_{T_d mu}(y) = Phi_mu(d y)."""
    if d == 0 or not math.isfinite(d):
        raise ValueError("dilation factor must be finite and non-zero")
    return LevyTriple(d * t.shift + d * t.measure.comp(d), d * d * t.gauss_var,
                      t.measure.dilate(d))


def conv_power(t, s):
    """Triple of mu^{*s}: every component scales by s."""
    if not s > 0:
        raise ValueError("convolution power must be positive")
    return LevyTriple(s * t.shift, s * t.gauss_var, t.measure.scale(s))


def convolve(t1, t2):
    return LevyTriple(t1.shift + t2.shift, t1.gauss_var + t2.gauss_var,
                      add_measures(t1.measure, t2.measure))


# ---------------------------------------------------------------------------
# validation and spectral functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    small_second_moment: float
    large_mass: float
    log_moment: float | None = None
    passed: bool = True

    @property
    def integrability(self):
        """int min(1, x^2) M(dx)."""
        return self.small_second_moment + self.large_mass


def validate_measure(m):
    """Check int min(1, x^2) dM < inf; I-transforms also report the seed log-moment.

    Raises ``NonFinite`` when an estimate diverges.
    """
    log_mom = None
    if isinstance(m, ITransformed):
        log_mom = m.seed.log_moment()
        if not math.isfinite(log_mom):
            raise LogMomentDiverges("seed log-moment int_{|x|>1} ln|x| dM diverges")
    small = m.small_second_moment()
    large = m.large_mass()
    if not (math.isfinite(small) and math.isfinite(large)):
        raise NonFinite(f"integrability estimate diverges (small={small}, large={large})")
    return ValidationReport(small, large, log_mom, True)


class SpectralFunction:
    """L_M(D, r) = -M({sign x = D, |x| > r}); nonpositive, nondecreasing in r."""

    def __init__(self, measure):
        self.measure = measure

    def __call__(self, direction, r):
        return -self.measure.tail(direction, r)

    def kinks(self):
        return self.measure.kinks()


def spectral_function(m):
    validate_measure(m)
    return SpectralFunction(m)


def radius_grid(lo, hi, per_decade=200):
    """Geometric radius grid, ``per_decade`` points per factor of ten."""
    n = max(2, int(round(per_decade * math.log10(hi / lo))) + 1)
    return np.geomspace(lo, hi, n)


def default_grid(m, per_decade=200, span=100.0):
    hint = m.scale_hint()
    ks = m.kinks() or (hint,)
    return radius_grid(min(ks) / span, max(ks) * span, per_decade)


def spectral_violation(values, tol=0.0):
    """Worst violation of 'nonpositive and nondecreasing' for a sampled tail.

    Returns (worst, kind) with worst <= tol meaning the sample is admissible.
    """
    values = np.asarray(values, dtype=float)
    worst, kind = 0.0, None
    if values.size:
        pos = float(values.max())
        if pos > worst:
            worst, kind = pos, "sign"
    if values.size > 1:
        drop = float(-np.diff(values).min())
        if drop > worst:
            worst, kind = drop, "monotonicity"
    return (worst if worst > tol else 0.0), (kind if worst > tol else None)


@dataclass(frozen=True)
class CofactorReport:
    c: float
    passed: bool
    worst_violation: float
    kind: str | None
    grid: np.ndarray = field(repr=False, compare=False, default=None)


def cofactor_exponent_check(t, c, grid=None, tol=1e-12):
    """Is L_M(D, r) - c L_M(D, r/c) a valid spectral function on the grid?

    This is the measure-level part of the factorization mu = T_c mu^{*c} * mu_c.
    """
    if not 0.0 < c < 1.0:
        raise ValueError("c must lie in (0, 1)")
    m = t.measure
    grid = default_grid(m) if grid is None else np.asarray(grid, dtype=float)
    worst, kind = 0.0, None
    scale = 1.0
    for d in DIRECTIONS:
        vals = -(np.asarray(m.tail(d, grid)) - c * np.asarray(m.tail(d, grid / c)))
        scale = max(scale, float(np.max(np.abs(vals))) if vals.size else 0.0)
        w, k = spectral_violation(vals, tol * scale)
        far = grid[-1] * 1e3
        tail_far = -(float(m.tail(d, far)) - c * float(m.tail(d, far / c)))
        if abs(tail_far) > max(abs(vals[-1]), tol * scale) * (1 + 1e-9) and abs(tail_far) > tol * scale:
            w, k = max(w, abs(tail_far)), k or "decay"
        if w > worst:
            worst, kind = w, k
    return CofactorReport(c, worst == 0.0, worst, kind, grid)
