"""Named verification checks, grouped into suites for ``levycalc verify``.

Every check recomputes a closed form through an independent route (plain
quadrature, a second engine, or Monte Carlo) and reports PASS/FAIL with the
worst deviation it saw.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy import special as sc

from .classifier import classify_completely_s, classify_order
from .exponents import a_operator, d_operator, exponent, exponent_transform, kernel_cf
from .hyperbolic import (PHI_C, PHI_S, PSI_C, bdlp_cf, d_log_psi, printed_c, psi_c,
                         psi_s, verdict_table)
from .measures import DIRECTIONS, Discrete, LevyTriple, StableMixture, spectral_function
from .simulator import cf_agreement, empirical_cf, sample_integral_exact
from .special import g_moment, incomplete_gamma, incomplete_gamma_int
from .transforms import (i_transform, j_alpha, j_power_recursion_step, shift_polynomial_form,
                         stable_mixture_j)

__all__ = ["CheckResult", "SUITES", "CRITERIA", "run_suite", "run_criterion"]

MOMENT_ALPHAS = (0.5, 1.0, 1.5, 2.0)
MOMENT_ORDERS = (-0.5, 1.0, 3.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def gaussian_seed():
    return LevyTriple(0.0, 1.0, Discrete(()))


def poisson_seed():
    return LevyTriple(0.0, 0.0, Discrete(((1.0, 1.0),)))


def two_atom_seed():
    return LevyTriple(0.3, 0.5, Discrete(((2.0, 0.7), (-0.4, 1.2))))


def stable_seed():
    return LevyTriple(0.1, 0.0, StableMixture(((1, 1.5, 1.0), (-1, 0.6, 0.5))))


def _moment_oracle(alpha, s):
    """int_0^1 t^s d tau_alpha(t) with t = e^-u, integrated by plain quad."""
    lg = sc.gammaln(alpha)
    f = lambda u: math.exp(-(s + 1.0) * u + (alpha - 1.0) * math.log(u) - lg)  # noqa: E731
    a, _ = integrate.quad(f, 0.0, 1.0, epsabs=1e-13, epsrel=1e-12, limit=200)
    b, _ = integrate.quad(f, 1.0, np.inf, epsabs=1e-13, epsrel=1e-12, limit=200)
    return a + b


def criterion_1():
    worst = 0.0
    for alpha in MOMENT_ALPHAS:
        for s in MOMENT_ORDERS:
            worst = max(worst, abs(_moment_oracle(alpha, s) - g_moment(alpha, s)))
    n = len(MOMENT_ALPHAS) * len(MOMENT_ORDERS)
    return worst <= 1e-8, f"{n} (alpha, s) pairs, max abs err {worst:.2e} (tol 1e-8)"


def criterion_2():
    worst = 0.0
    for m in range(1, 7):
        for x in (0.1, 1.0, 10.0):
            ref = incomplete_gamma_int(m, x)
            worst = max(worst, abs(incomplete_gamma(m, x) - ref) / ref)
    return worst <= 1e-12, f"m = 1..6, max rel err {worst:.2e} (tol 1e-12)"


SEMIGROUP_PAIRS = ((1.0, 1.0), (0.5, 1.5), (2.0, 1.0))


def semigroup_seeds():
    return {
        "gaussian": gaussian_seed(),
        "discrete": LevyTriple(0.2, 0.0, Discrete(((2.5, 0.8), (-1.7, 0.6)))),
        "stable": LevyTriple(0.0, 0.0, StableMixture(((1, 0.8, 1.0), (-1, 1.4, 0.7)))),
    }


def criterion_3():
    grid = np.geomspace(0.05, 20.0, 40)
    exact_worst = spec_worst = 0.0
    for t in semigroup_seeds().values():
        for alpha, beta in SEMIGROUP_PAIRS:
            left = j_alpha(j_alpha(t, beta), alpha)
            right = j_alpha(t, alpha + beta)
            exact_worst = max(exact_worst, abs(left.shift - right.shift),
                              abs(left.gauss_var - right.gauss_var))
            for d in DIRECTIONS:
                lv = np.asarray(left.measure.tail(d, grid))
                rv = np.asarray(right.measure.tail(d, grid))
                spec_worst = max(spec_worst, float(np.max(np.abs(lv - rv))))
    ok = exact_worst <= 1e-12 and spec_worst <= 1e-7
    return ok, (f"3 seeds x 3 pairs: shift/variance {exact_worst:.2e} (tol 1e-12), "
                f"spectral {spec_worst:.2e} (tol 1e-7)")


def recursion_seeds():
    return [
        LevyTriple(0.0, 2.0, Discrete(((math.e, 1.0),))),
        LevyTriple(-0.4, 0.3, Discrete(((3.0, 0.5), (-4.5, 1.5), (0.7, 2.0)))),
        LevyTriple(1.0, 0.0, Discrete(((-1.5, 1.0), (6.0, 0.2)))),
    ]


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300) if b != 0 else abs(a)


def criterion_4():
    worst = 0.0
    for t in recursion_seeds():
        for m in (1, 2, 3):
            closed = j_alpha(t, m + 1)
            stepped = j_alpha(j_alpha(t, m), 1)
            worst = max(worst, _rel(stepped.shift, closed.shift),
                        _rel(stepped.gauss_var, closed.gauss_var),
                        _rel(j_power_recursion_step(t, m), closed.shift))
    poly = 0.0
    for t in recursion_seeds():
        for m in range(1, 5):
            poly = max(poly, _rel(shift_polynomial_form(t, m), j_alpha(t, m).shift))
    ok = worst <= 1e-10 and poly <= 1e-12
    return ok, (f"m = 1..3: one-step vs closed rel err {worst:.2e} (tol 1e-10); "
                f"finite-sum vs incomplete-gamma shift {poly:.2e} (tol 1e-12)")


INVERSION_YS = (-5.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 5.0)


def inversion_seeds():
    return {"gaussian": gaussian_seed(), "poisson": poisson_seed(),
            "two_atom": two_atom_seed(), "stable": stable_seed()}


def criterion_5():
    worst_d = 0.0
    for t in inversion_seeds().values():
        psi = exponent(t)
        img = exponent_transform(psi, 1.0)
        for y in INVERSION_YS:
            worst_d = max(worst_d, abs(d_operator(img, y) - psi(y)))
    worst_a = 0.0
    checked = 0
    radii = np.geomspace(0.05, 20.0, 20)
    for name in ("poisson", "two_atom", "stable"):
        t = inversion_seeds()[name]
        seed_l = spectral_function(t.measure)
        img_l = spectral_function(j_alpha(t, 1.0).measure)
        kinks = np.log(np.array(t.measure.kinks() or [np.inf]))
        step = math.log(10.0) / 200.0
        for d in DIRECTIONS:
            for r in radii:
                if np.any(np.abs(math.log(r) - kinks) <= 2.0 * step):
                    continue  # flagged radius
                val = a_operator(img_l, d, r)
                ref = -seed_l(d, r)
                worst_a = max(worst_a, abs(val - ref) / max(1.0, abs(ref)))
                checked += 1
    ok = worst_d <= 1e-4 and worst_a <= 1e-4
    return ok, (f"D o J on 4 seeds x 8 points: {worst_d:.2e}; "
                f"A on J-images at {checked} radius/direction pairs: {worst_a:.2e} (tol 1e-4)")


def criterion_6():
    ys = np.linspace(-10.0, 10.0, 41)
    worst = 0.0
    for t in (poisson_seed(), two_atom_seed()):
        for m in (1, 2):
            a = exponent(j_alpha(t, m))(ys)
            b = exponent_transform(exponent(t), m)(ys)
            c = kernel_cf(t, m)(ys)
            worst = max(worst, np.abs(a - b).max(), np.abs(a - c).max(), np.abs(b - c).max())
    return worst <= 1e-6, f"2 seeds x m in {{1, 2}}, 41 points: max pairwise {worst:.2e} (tol 1e-6)"


MC_DRAWS = 1_000_000


def criterion_7(threads=None):
    ys = np.linspace(-5.0, 5.0, 41)
    worst_frac = 1.0
    t0 = time.perf_counter()
    for k, t in enumerate((poisson_seed(), two_atom_seed())):
        for j, alpha in enumerate((0.5, 1.0, 2.0)):
            batch = sample_integral_exact(t, alpha, MC_DRAWS, 1000 + 10 * k + j, threads=threads)
            ecf = empirical_cf(batch, ys)
            analytic = np.exp(exponent(j_alpha(t, alpha))(ys))
            frac, _ = cf_agreement(ecf, analytic)
            worst_frac = min(worst_frac, frac)
    elapsed = time.perf_counter() - t0
    ok = worst_frac >= 0.9 and elapsed < 60.0
    return ok, (f"2 seeds x 3 alphas x 1e6 draws: worst fraction within 3 stderr "
                f"{worst_frac:.3f} (need 0.9), {elapsed:.1f}s (limit 60s)")


CORPUS_SIZE = 200
CORPUS_SEED = 20240601


def random_corpus(n=CORPUS_SIZE, seed=CORPUS_SEED):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        k = int(rng.integers(1, 4))
        xs = rng.uniform(-5.0, 5.0, k)
        xs[xs == 0.0] = 1.0
        ms = rng.uniform(0.0, 2.0, k)
        ms[ms == 0.0] = 1.0
        out.append(LevyTriple(float(rng.normal()), float(abs(rng.normal())),
                              Discrete(tuple(zip(xs.tolist(), ms.tolist())))))
    return out


def criterion_8():
    misses = 0
    for t in random_corpus():
        for m in (1, 2, 3):
            if classify_order(j_alpha(t, m), m).max_verified_order < m:
                misses += 1
    poisson_order = classify_order(poisson_seed(), 3).max_verified_order
    sigma = StableMixture(((1, 1.5, 2.0), (-1, 0.5, 1.0)))
    verdict = classify_completely_s(sigma).verdict
    j_img = stable_mixture_j(sigma, 1.0)
    i_img = i_transform(LevyTriple(0.0, 0.0, sigma)).measure
    j_ok = all(w1 == w0 * (z + 1.0) ** -1.0
               for (_, z, w0), (_, _, w1) in zip(sigma.atoms, j_img.atoms))
    i_ok = all(w1 == w0 / z for (_, z, w0), (_, _, w1) in zip(sigma.atoms, i_img.atoms))
    closure = (classify_completely_s(j_img).verdict == "yes"
               and classify_completely_s(i_img).verdict == "yes")
    ok = misses == 0 and poisson_order == 0 and verdict == "yes" and j_ok and i_ok and closure
    return ok, (f"{CORPUS_SIZE} seeds x m = 1..3: {misses} false negatives; Poisson order "
                f"{poisson_order}; stable mixture {verdict}; J weights exact {j_ok}, "
                f"I weights exact {i_ok}, closure {closure}")


def criterion_9():
    ts = [t for t in np.linspace(-10.0, 10.0, 401) if abs(t) > 1e-12]
    bs = max(abs(bdlp_cf(PHI_S, t) - psi_s(t)) for t in ts)
    bc = max(abs(bdlp_cf(PHI_C, t) - psi_c(t)) for t in ts)
    dc = max(abs(d_log_psi(PSI_C, t) - printed_c(t)) for t in (0.25, 0.5, 1.0, 2.0, 3.0, 5.0))
    table = verdict_table()
    ok = bs <= 1e-10 and bc <= 1e-10 and dc <= 1e-6 and table.verdict in ("derived", "printed",
                                                                             "both")
    return ok, (f"bdlp S {bs:.1e}, C {bc:.1e} (tol 1e-10); D log psi_C vs closed form "
                f"{dc:.1e} (tol 1e-6); psi_S formula matching numerics: {table.verdict}")


CRITERIA = {
    1: ("moment identities of g_alpha", criterion_1),
    2: ("integer incomplete gamma", criterion_2),
    3: ("semigroup of J^alpha", criterion_3),
    4: ("one-step recursion of J^m", criterion_4),
    5: ("inversion by D and A", criterion_5),
    6: ("cross-engine CF agreement", criterion_6),
    7: ("Monte Carlo law of the random integral", criterion_7),
    8: ("classifier soundness", criterion_8),
    9: ("hyperbolic examples", criterion_9),
}

SUITES = {
    "special": (1, 2),
    "transform": (3, 4, 6),
    "inverse": (5, 8),
    "mc": (7,),
    "hyperbolic": (9,),
}
SUITES["all"] = tuple(sorted(k for v in SUITES.values() for k in v))


def run_criterion(k, **kw):
    title, fn = CRITERIA[k]
    t0 = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            ok, detail = fn(**kw) if kw else fn()
        except Exception as exc:  # a crash is a failed check, reported by name
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    return CheckResult(f"criterion {k} ({title})", bool(ok), detail, time.perf_counter() - t0)


def run_suite(name, emit=None, threads=None):
    if name not in SUITES:
        raise KeyError(name)
    results = []
    for k in SUITES[name]:
        res = run_criterion(k, threads=threads) if k == 7 else run_criterion(k)
        if emit is not None:
            emit(res.line())
        results.append(res)
    return results
