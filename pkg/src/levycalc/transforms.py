"""Random-integral transforms acting on Levy triples.

The general rule: the law of int_(a,b] h(t) dY(r(t)) has triple

    R' = (int h^2 dr) R
    M' = int M(h(t)^-1 .) dr(t)
    a' = (int h dr) a + int h(t) comp_M(h(t)) dr(t)

where comp_M(c) = int x (1{|cx|<=1} - 1{|x|<=1}) M(dx) re-centres the
compensator after the pushforward. Everything below is a special case with
either closed forms or a cheaper quadrature.
"""

from __future__ import annotations

import math

from ._quad import PRECISE_ABS_TOL, PRECISE_REL_TOL, piecewise_quad
from .errors import GridTooCoarse, LogMomentDiverges, QuadratureFailure
from .measures import (Discrete, ITransformed, JTransformed, LevyTriple,
                       PathTransformed, StableMixture, _crossings,
                       _numeric_derivative)
from .special import g_moment, g_partial_moment

__all__ = [
    "general_transform",
    "j_alpha",
    "partial_integral_triple",
    "i_transform",
    "stable_mixture_j",
    "shift_polynomial_form",
    "w_moment",
    "j_power_recursion_step",
    "GRID_ERROR_TOL",
]

GRID_ERROR_TOL = 1e-7


def general_transform(t, h, r, a=0.0, b=1.0, r_prime=None):
    """Triple of the law of int_(a,b] h(s) dY(r(s)) for a Levy process Y with Y(1) ~ t.

    ``h`` and ``r`` are callables on (a, b]; ``r`` must be nondecreasing.
    ``r_prime`` (the density of dr) is optional and otherwise obtained by
    finite differences. Raises ``GridTooCoarse`` when the quadrature error
    estimate for any component exceeds ``GRID_ERROR_TOL``.
    """
    if not b > a:
        raise ValueError("need a < b")
    dens = r_prime if r_prime is not None else (lambda s: _numeric_derivative(r, s, a, b))
    m = t.measure
    breaks = _crossings(lambda s: abs(h(s)), a, b, [1.0 / k for k in m.kinks()])
    kw = dict(epsabs=PRECISE_ABS_TOL, epsrel=PRECISE_REL_TOL)
    h1, e1 = piecewise_quad(lambda s: h(s) * dens(s), a, b, breaks, **kw)
    h2, e2 = piecewise_quad(lambda s: h(s) ** 2 * dens(s), a, b, breaks, **kw)
    if m.is_zero:
        corr, e3 = 0.0, 0.0
    else:
        def integrand(s):
            c = float(h(s))
            return c * m.comp(c) * dens(s) if c != 0.0 else 0.0

        corr, e3 = piecewise_quad(integrand, a, b, breaks, **kw)
    err = max(e1, e2, e3)
    if err > GRID_ERROR_TOL:
        raise GridTooCoarse(f"quadrature error estimate {err:.3g} above {GRID_ERROR_TOL:g}", err)
    measure = m if m.is_zero else PathTransformed(m, h, r, a, b, r_prime)
    return LevyTriple(h1 * t.shift + corr, h2 * t.gauss_var, measure)


def j_alpha(t, alpha):
    """Triple of the law of int_(0,1) s dY(tau_alpha(s)).

    shift 2^-alpha [a + int_{|x|>1} x Q(alpha, 2 ln|x|) M(dx)], Gaussian
    variance 3^-alpha R, measure ``JTransformed(M, alpha)``. alpha = 0 is the
    identity.
    """
    if alpha < 0 or not math.isfinite(alpha):
        raise ValueError("alpha must be non-negative and finite")
    if alpha == 0:
        return t
    m = t.measure
    big = 0.0 if m.is_zero else m.big_shift(alpha)
    measure = m if m.is_zero else JTransformed(m, alpha)
    return LevyTriple(2.0 ** -alpha * (t.shift + big), 3.0 ** -alpha * t.gauss_var, measure)


def _identity(s):
    return s


def _one(s):
    return 1.0


def partial_integral_triple(t, c):
    """Triple of the cofactor law of int_[c,1) s dY(s).

    Together with the dilated power it rebuilds j_alpha(t, 1):
    J(t) = T_c (J(t))^{*c} * (this).
    """
    if not 0.0 < c < 1.0:
        raise ValueError("c must lie in (0, 1)")
    # int_c^1 s^p ds from the moments of tau_1 (the uniform law)
    first = g_moment(1.0, 1.0) - g_partial_moment(1.0, 1.0, c)
    second = g_moment(1.0, 2.0) - g_partial_moment(1.0, 2.0, c)
    m = t.measure
    if m.is_zero:
        return LevyTriple(first * t.shift, second * t.gauss_var, m)
    breaks = [1.0 / k for k in m.kinks()]
    corr, _ = piecewise_quad(lambda s: s * m.comp(s), c, 1.0, breaks,
                             epsabs=PRECISE_ABS_TOL, epsrel=PRECISE_REL_TOL)
    measure = PathTransformed(m, _identity, _identity, c, 1.0, _one)
    return LevyTriple(first * t.shift + corr, second * t.gauss_var, measure)


def i_transform(t):
    """Triple of the law of int_0^inf e^-s dY(s) (the selfdecomposable image).

    Requires int_{|x|>1} ln|x| M(dx) < inf; otherwise ``LogMomentDiverges``.
    Stable mixtures map to stable mixtures with weights divided by z.
    """
    m = t.measure
    if m.is_zero:
        return LevyTriple(t.shift, t.gauss_var / 2.0, m)
    try:
        lm = m.log_moment()
    except QuadratureFailure as exc:
        raise LogMomentDiverges(f"log-moment of the seed does not converge: {exc}") from exc
    if not math.isfinite(lm):
        raise LogMomentDiverges("log-moment of the seed diverges")
    image = ITransformed(m)
    horizon = image.horizon()
    breaks = [math.log(k) for k in m.kinks() if k > 1.0]
    corr, _ = piecewise_quad(lambda s: math.exp(-s) * m.comp(math.exp(-s)), 0.0, horizon,
                             breaks, epsabs=PRECISE_ABS_TOL, epsrel=PRECISE_REL_TOL)
    if isinstance(m, StableMixture):
        measure = StableMixture(tuple((d, z, w / z) for d, z, w in m.atoms))
    else:
        measure = image
    return LevyTriple(t.shift + corr, t.gauss_var / 2.0, measure)


def stable_mixture_j(sigma, alpha=1.0):
    """Stable mixture image under j_alpha: weights times (z+1)^-alpha."""
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    if alpha == 0:
        return sigma
    return StableMixture(tuple((d, z, w * g_moment(alpha, z)) for d, z, w in sigma.atoms))


def _require_discrete(m):
    if not isinstance(m, Discrete):
        raise TypeError("closed polynomial forms need a Discrete measure")


def shift_polynomial_form(t, m):
    """j_alpha shift for integer m written as a finite sum.

    2^-m [a + sum_{|x|>1} mass x |x|^-2 sum_{j<m} (2 ln|x|)^j / j!]
    """
    _require_discrete(t.measure)
    acc = 0.0
    for x, mass in t.measure.atoms:
        ax = abs(x)
        if ax > 1.0:
            two_l = 2.0 * math.log(ax)
            poly = sum(two_l ** j / math.factorial(j) for j in range(m))
            acc += mass * x / (ax * ax) * poly
    return 2.0 ** -m * (t.shift + acc)


def w_moment(t, m):
    """int_{|x|>1} x |x|^-2 M^<m>(dx) for the m-fold image of a Discrete measure.

    Closed form sum_{|x|>1} mass x |x|^-2 (ln|x|)^m / m!, which drives the
    one-step recursion a^<m+1> = (a^<m> + w_m) / 2.
    """
    _require_discrete(t.measure)
    return sum(mass * x / (x * x) * math.log(abs(x)) ** m / math.factorial(m)
               for x, mass in t.measure.atoms if abs(x) > 1.0)


def j_power_recursion_step(t, m):
    """Shift of the (m+1)-fold image from the m-fold one via the w_m identity."""
    return 0.5 * (j_alpha(t, m).shift + w_moment(t, m))

