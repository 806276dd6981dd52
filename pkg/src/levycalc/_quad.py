"""Piecewise adaptive quadrature shared by the lazy measures and the engines."""

from __future__ import annotations

import math
import os
import warnings

import numpy as np
from scipy import integrate
from scipy import special as sc

from .errors import QuadratureFailure

DEFAULT_ABS_TOL = 1e-10
DEFAULT_REL_TOL = 1e-8
# shift functionals are compared at 1e-12, so they run tighter than the default
PRECISE_ABS_TOL = 1e-14
PRECISE_REL_TOL = 1e-13


def abs_tol():
    """Absolute quadrature tolerance, overridable through LEVYCALC_TOL."""
    env = os.environ.get("LEVYCALC_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            pass
    return DEFAULT_ABS_TOL


def piecewise_quad(f, lo, hi, breaks=(), *, complex_func=False, epsabs=None,
                   epsrel=None, limit=200):
    """Integrate ``f`` over [lo, hi], splitting at every break inside the interval.

    Returns ``(value, abs_error_estimate)``. ``hi`` may be ``np.inf``.
    """
    epsabs = abs_tol() if epsabs is None else epsabs
    epsrel = DEFAULT_REL_TOL if epsrel is None else epsrel
    pts = sorted({float(b) for b in breaks if lo < b < hi})
    edges = [lo, *pts, hi]
    total = 0j if complex_func else 0.0
    err = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for a, b in zip(edges[:-1], edges[1:]):
            if not b > a:
                continue
            val, e = integrate.quad(f, a, b, epsabs=epsabs, epsrel=epsrel,
                                    limit=limit, complex_func=complex_func)
            total += val
            err += abs(e.real) + abs(e.imag) if complex_func else abs(e)
    if not np.isfinite(total):
        raise QuadratureFailure(f"non-finite integral on [{lo}, {hi}]", err)
    return total, err


def gamma_horizon(alpha):
    """Upper cut for Gamma(alpha) integrals; the mass beyond it is below 1e-17."""
    return alpha + 45.0 + 12.0 * math.sqrt(alpha)


def gamma_expect(f, alpha, u_breaks=(), *, complex_func=False, epsabs=None,
                 epsrel=None):
    """E[f(G)] for G ~ Gamma(alpha, 1), by quadrature over the gamma density.

    For alpha < 1 the variable is changed to v = u**alpha, which removes the
    u**(alpha-1) singularity at the origin.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    hi = gamma_horizon(alpha)
    if alpha < 1.0:
        inv = 1.0 / alpha
        norm = 1.0 / sc.gamma(alpha + 1.0)

        def g(v):
            u = v ** inv
            return f(u) * math.exp(-u) * norm

        vb = [b ** alpha for b in u_breaks if 0.0 < b < hi]
        val, err = piecewise_quad(g, 0.0, hi ** alpha, vb, complex_func=complex_func,
                                  epsabs=epsabs, epsrel=epsrel)
        return val, err
    lg = sc.gammaln(alpha)

    def g(u):
        if u == 0.0:
            w = 1.0 if alpha == 1.0 else 0.0
        else:
            w = math.exp((alpha - 1.0) * math.log(u) - u - lg)
        return f(u) * w

    # the density peaks at alpha-1; give quad a hint about where the mass is
    hints = [max(alpha - 1.0, 0.0) + k * math.sqrt(alpha) for k in (-3, 0, 3)]
    hints = [h for h in hints if h > 0]
    return piecewise_quad(g, 0.0, hi, [*u_breaks, *hints], complex_func=complex_func,
                          epsabs=epsabs, epsrel=epsrel)
