"""Levy exponents, their random-integral transforms, and the inverse operators.

Three independent routes to the exponent of the j_alpha image of a triple:

* ``exponent(j_alpha(t, alpha))`` -- the transformed triple plugged into the
  Levy-Khintchine formula;
* ``exponent_transform(exponent(t), alpha)`` -- Phi(y) = E[Psi(g_alpha y)];
* ``kernel_cf(t, m)`` -- jumps through the characteristic function of g_m.

``d_operator`` and ``a_operator`` undo one application of j_1, on exponents
and on spectral functions respectively.
"""

from __future__ import annotations

import math

import numpy as np

from ._quad import gamma_expect
from .differentiation import RICHARDSON_TOL, fornberg_weights, richardson_derivative
from .errors import DifferentiationUnstable, UnsupportedSeed
from .measures import Discrete, SpectralFunction, StableMixture, SumMeasure
from .special import g_char_fn

__all__ = [
    "LevyExponent",
    "exponent",
    "exponent_transform",
    "kernel_cf",
    "d_operator",
    "a_operator",
]

DEFAULT_D_STEP = 0.05
DEFAULT_A_STEP = 0.02


class LevyExponent:
    """A callable y -> Phi(y) that also accepts arrays of y."""

    def __init__(self, fn, provenance="closed-form"):
        self._fn = fn
        self.provenance = provenance

    def __call__(self, y):
        if np.ndim(y) == 0:
            return complex(self._fn(float(y)))
        y = np.asarray(y, dtype=float)
        return np.array([complex(self._fn(float(v))) for v in y.ravel()]).reshape(y.shape)

    evaluate = __call__


def _closed(m):
    return m.is_zero or isinstance(m, (Discrete, StableMixture)) or m.as_stable() is not None


def exponent(t):
    """Phi(y) = i a y - R y^2 / 2 + int (e^{iyx} - 1 - iyx 1{|x|<=1}) M(dx)."""
    a, r, m = t.shift, t.gauss_var, t.measure

    def phi(y):
        if y == 0.0:
            return 0j
        return complex(-0.5 * r * y * y, a * y) + m.lk(y)

    return LevyExponent(phi, "closed-form" if _closed(m) else "quadrature")


def exponent_transform(psi, alpha):
    """Phi(y) = int_(0,1) Psi(s y) d tau_alpha(s), the exponent of the j_alpha image."""
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    if alpha == 0:
        return psi if isinstance(psi, LevyExponent) else LevyExponent(psi, "closed-form")

    def phi(y):
        if y == 0.0:
            return 0j
        val, _ = gamma_expect(lambda u: complex(psi(y * math.exp(-u))), alpha,
                              complex_func=True, epsabs=1e-12, epsrel=1e-10)
        return val

    return LevyExponent(phi, "quadrature")


def _discrete_atoms(m):
    if isinstance(m, Discrete):
        return m.atoms
    if isinstance(m, SumMeasure) and all(isinstance(x, Discrete) for x in m.terms):
        return tuple(a for x in m.terms for a in x.atoms)
    raise UnsupportedSeed("kernel_cf needs a finite-activity (Discrete) measure; "
                          "use exponent_transform for other seeds")


def kernel_cf(t, m):
    """Exponent of j_m(t) with jumps expressed through E[exp(i y g_m)].

    Phi(y) = i 2^-m a y - 3^-m R y^2 / 2
             + sum mass [ghat_m(y x) - 1 - 2^-m i y x 1{|x|<=1}].
    """
    if int(m) != m or m < 1:
        raise ValueError("m must be a positive integer")
    m = int(m)
    atoms = _discrete_atoms(t.measure)
    a = 2.0 ** -m * t.shift
    r = 3.0 ** -m * t.gauss_var
    trunc = 2.0 ** -m

    def phi(y):
        if y == 0.0:
            return 0j
        acc = complex(-0.5 * r * y * y, a * y)
        for x, mass in atoms:
            acc += mass * (g_char_fn(m, y * x) - 1.0
                           - (1j * trunc * y * x if abs(x) <= 1.0 else 0.0))
        return acc

    return LevyExponent(phi, "kernel")


def d_operator(g, y, step=None, *, return_error=False):
    """(D g)(y) = g(y) + y g'(y), the inverse of j_1 on exponents.

    g' comes from central differences with Richardson extrapolation;
    ``DifferentiationUnstable`` is raised when successive levels disagree by
    more than 1e-4 (relative to max(1, |g(y)|)).
    """
    h = DEFAULT_D_STEP if step is None else step
    g0 = complex(g(y))
    if y == 0.0:
        return (g0, 0.0) if return_error else g0
    der, err = richardson_derivative(lambda v: complex(g(v)), y, h)
    if not np.isfinite(der) or err > RICHARDSON_TOL * max(1.0, abs(g0)):
        raise DifferentiationUnstable(f"derivative of g at y={y:g} unstable ({err:.3g})", err)
    val = g0 + y * der
    return (val, abs(y) * err) if return_error else val


def _nearest_kinks(u0, log_kinks):
    left = max((k for k in log_kinks if k <= u0), default=-math.inf)
    right = min((k for k in log_kinks if k > u0), default=math.inf)
    return left, right


def log_derivative_stencil(u0, h, log_kinks, npts):
    """Nodes around u0 that do not straddle a kink, plus a 'one-sided' flag.

    Central when the full stencil fits; otherwise shifted to the side with
    more room and shrunk if needed.
    """
    left, right = _nearest_kinks(u0, log_kinks)
    half = (npts - 1) / 2.0
    offsets = np.arange(npts) - half
    if u0 - half * h > left and u0 + half * h < right:
        return u0 + h * offsets, False
    room_right = right - u0
    room_left = u0 - left
    if room_right >= room_left:
        hh = min(h, 0.98 * room_right / (npts - 1))
        return u0 + hh * np.arange(npts), True
    hh = min(h, 0.98 * room_left / (npts - 1))
    return u0 - hh * np.arange(npts)[::-1], True


def _spectral_callable(L, direction):
    if isinstance(L, SpectralFunction):
        return (lambda r: L(direction, r)), L.kinks()
    if direction is None:
        return L, ()
    try:
        L(direction, 1.0)
        return (lambda r: L(direction, r)), ()
    except TypeError:
        return L, ()


def a_operator(L, direction, r, step=None, kinks=None, *, return_error=False):
    """(A L)(r) = r L'(r) - L(r), evaluated as dL/du - L in u = ln r.

    ``L`` is a ``SpectralFunction`` (then ``direction`` selects the half-line)
    or a plain callable of r. Near kinks the stencil becomes one-sided.
    """
    if not r > 0:
        raise ValueError("radius must be positive")
    f, own_kinks = _spectral_callable(L, direction)
    ks = own_kinks if kinks is None else kinks
    log_kinks = [math.log(k) for k in ks if k > 0]
    h = DEFAULT_A_STEP if step is None else step
    u0 = math.log(r)
    npts = 7
    estimates = []
    l0 = float(f(r))
    for hh in (h, h / 2.0):
        nodes, _ = log_derivative_stencil(u0, hh, log_kinks, npts)
        w = fornberg_weights(u0, nodes, 1)[1]
        vals = np.array([float(f(math.exp(v))) for v in nodes])
        estimates.append(float(w @ vals))
    der = estimates[1]
    err = abs(estimates[1] - estimates[0])
    if not np.isfinite(der) or err > RICHARDSON_TOL * max(1.0, abs(l0), abs(der)):
        raise DifferentiationUnstable(f"dL/du unstable at r={r:g} ({err:.3g})", err)
    val = der - l0
    return (val, err) if return_error else val
