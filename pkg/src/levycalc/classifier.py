"""Numerical membership tests for the iterated classes.

A triple lies in the m-th class when (-1)^k A^k L is again a Levy spectral
function for k = 0..m, where L is the spectral function of its Levy measure
and A h(r) = r h'(r) - h(r). With u = ln r this is A = d/du - 1, so the k-th
candidate is (1 - d/du)^k L, computed here from one Fornberg stencil per grid
radius.

The test is necessary-only: a finite grid cannot certify differentiability.
Radii within two grid steps of a kink are flagged and left out of the value
checks; instead, a jump of the k-th candidate across a kink disqualifies
level k + 1 (its derivative would carry a point mass there).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .differentiation import fornberg_weights
from .errors import LevyCalcError
from .exponents import log_derivative_stencil
from .measures import DIRECTIONS, LevyTriple, default_grid
from .transforms import i_transform, j_alpha

__all__ = [
    "OrderDiagnostic",
    "ClassReport",
    "CompletelySReport",
    "InclusionReport",
    "classify_order",
    "classify_completely_s",
    "inclusion_chain_check",
    "MAX_ORDER_CAP",
]

MAX_ORDER_CAP = 6
# failures above this order are treated as inconclusive by classify_completely_s
RELIABLE_ORDER = 3
REL_FLOOR = 1e-7
JUMP_REL = 1e-4
FLAG_STEPS = 2.0


@dataclass(frozen=True)
class OrderDiagnostic:
    order: int
    passed: bool
    worst_violation: float
    kind: str | None = None
    flagged_radii: tuple = ()


@dataclass(frozen=True)
class ClassReport:
    max_verified_order: int
    max_order: int
    diagnostics: tuple = ()
    completely_s: str = "unknown"


@dataclass(frozen=True)
class CompletelySReport:
    verdict: str
    moment: dict | None = None
    reason: str = ""
    order_report: ClassReport | None = field(default=None, repr=False)


@lru_cache(maxsize=4096)
def _weights(offsets, max_order):
    return fornberg_weights(0.0, np.array(offsets), max_order)


def _binomial_rows(max_order):
    """rows[k, j] = C(k, j) (-1)^j, so that candidate_k = sum_j rows[k, j] D^j L."""
    rows = np.zeros((max_order + 1, max_order + 1))
    for k in range(max_order + 1):
        for j in range(k + 1):
            rows[k, j] = math.comb(k, j) * (-1) ** j
    return rows


class _CandidateEvaluator:
    """Evaluates candidate_k(u) for k = 0..K on one direction of a measure."""

    def __init__(self, measure, direction, max_order, h, log_kinks):
        self.measure = measure
        self.direction = direction
        self.K = max_order
        self.h = h
        self.log_kinks = log_kinks
        npts = max_order + 4
        self.npts = npts if npts % 2 else npts + 1
        self.rows = _binomial_rows(max_order)
        self.eps = measure.tail_eps()

    def stencils(self, us, h):
        return np.array([log_derivative_stencil(u, h, self.log_kinks, self.npts)[0]
                         for u in us])

    def evaluate(self, us, h=None):
        """Return (candidates[K+1, n], error[K+1, n]) for the given log radii.

        The error bound adds roundoff amplified by the stencil weights and the
        change seen when every stencil is contracted by half about its centre.
        """
        us = np.asarray(us, dtype=float)
        h = self.h if h is None else h
        nodes = self.stencils(us, h)
        coarse, _ = self._evaluate(us, nodes)
        fine, noise = self._evaluate(us, us[:, None] + 0.5 * (nodes - us[:, None]))
        return fine, noise + np.abs(fine - coarse)

    def _evaluate(self, us, nodes):
        vals = -np.asarray(self.measure.tail(self.direction, np.exp(nodes.ravel())), dtype=float)
        vals = vals.reshape(nodes.shape)
        scale = np.maximum(np.max(np.abs(vals), axis=1), 1e-300)
        cands = np.empty((self.K + 1, us.size))
        noise = np.empty((self.K + 1, us.size))
        offsets = np.round(nodes - us[:, None], 14)
        groups = {}
        for i, row in enumerate(map(tuple, offsets)):
            groups.setdefault(row, []).append(i)
        for offs, idx in groups.items():
            w = _weights(offs, self.K)
            derivs = w @ vals[idx].T
            cands[:, idx] = self.rows @ derivs
            amp = np.abs(self.rows) @ np.abs(w).sum(axis=1)
            noise[:, idx] = 10.0 * self.eps * np.outer(amp, scale[idx])
        return cands, noise


def _level_checks(cands, noise, far, far_noise):
    """Worst violations of sign, monotonicity and decay for each level."""
    K1 = cands.shape[0]
    out = []
    for k in range(K1):
        c = cands[k]
        scale_k = float(np.max(np.abs(c))) if c.size else 0.0
        tol = np.maximum(noise[k], REL_FLOOR * scale_k)
        worst, kind = 0.0, None
        pos = c - tol
        if c.size and pos.max() > worst:
            worst, kind = float(pos.max()), "sign"
        if c.size > 1:
            drop = c[:-1] - c[1:] - tol[:-1] - tol[1:]
            if drop.max() > worst:
                worst, kind = float(drop.max()), "monotonicity"
        if c.size:
            ftol = max(far_noise[k], REL_FLOOR * scale_k)
            excess = abs(far[k]) - max(abs(c[-1]), 0.0) - ftol - tol[-1]
            if abs(far[k]) > ftol and excess > worst:
                worst, kind = float(excess), "decay"
        out.append((worst, kind, scale_k))
    return out


def _jumps(ev, kink_u, lo_u, hi_u, ref_scale):
    """Largest jump of each candidate across the kinks inside [lo_u, hi_u]."""
    K1 = ev.K + 1
    worst = np.zeros(K1)
    ordered = sorted(ev.log_kinks)
    for uk in kink_u:
        if not lo_u <= uk <= hi_u:
            continue
        idx = ordered.index(uk)
        gap_l = uk - ordered[idx - 1] if idx > 0 else math.inf
        gap_r = ordered[idx + 1] - uk if idx + 1 < len(ordered) else math.inf
        limits = []
        for side, gap in ((-1.0, gap_l), (1.0, gap_r)):
            hj = min(ev.h / 4.0, gap / (4.0 * ev.npts))
            pts = uk + side * hj * np.array([1.0, 2.0, 3.0])
            c, nz = ev.evaluate(pts, h=hj)
            quad = 3.0 * c[:, 0] - 3.0 * c[:, 1] + c[:, 2]
            lin = 2.0 * c[:, 0] - c[:, 1]
            limits.append((quad, 3.0 * nz[:, 0] + 3.0 * nz[:, 1] + nz[:, 2] + np.abs(quad - lin)))
        (left, nl), (right, nr) = limits
        size = np.abs(right - left)
        thresh = JUMP_REL * ref_scale + nl + nr
        worst = np.maximum(worst, np.where(size > thresh, size, 0.0))
    return worst


def classify_order(t, max_order=3, grid=None, step=None):
    """Largest m <= max_order for which levels 0..m all look like spectral functions."""
    if not 1 <= max_order <= MAX_ORDER_CAP:
        raise ValueError(f"max_order must lie in 1..{MAX_ORDER_CAP}")
    m = t.measure if isinstance(t, LevyTriple) else t
    if m.is_zero:
        diags = tuple(OrderDiagnostic(k, True, 0.0) for k in range(max_order + 1))
        return ClassReport(max_order, max_order, diags)
    grid = default_grid(m) if grid is None else np.sort(np.asarray(grid, dtype=float))
    us = np.log(grid)
    du = float(np.min(np.diff(us))) if us.size > 1 else 0.0
    h = (0.02 * (1.0 + max_order / 2.0)) if step is None else step
    log_kinks = sorted({math.log(k) for k in m.kinks() if k > 0})
    flag_width = FLAG_STEPS * du * (1.0 + 1e-9)
    flagged = np.zeros(us.size, dtype=bool)
    for uk in log_kinks:
        flagged |= np.abs(us - uk) <= flag_width
    keep = us[~flagged]
    flagged_radii = tuple(float(r) for r in grid[flagged])

    per_level = [[0.0, None] for _ in range(max_order + 1)]
    jump_fail = [0.0] * (max_order + 2)
    for d in DIRECTIONS:
        ev = _CandidateEvaluator(m, d, max_order, h, log_kinks)
        cands, noise = ev.evaluate(keep)
        far, far_noise = ev.evaluate(np.array([us[-1] + math.log(1e3)]))
        base_scale = float(np.max(np.abs(cands[0]))) if cands.size else 0.0
        checks = _level_checks(cands, noise, far[:, 0], far_noise[:, 0])
        for k, (w, kind, _) in enumerate(checks):
            if w > per_level[k][0]:
                per_level[k] = [w, kind]
        ref = max([base_scale] + [c[2] for c in checks])
        if log_kinks and ref > 0.0:
            jw = _jumps(ev, log_kinks, us[0], us[-1], ref)
            for k in range(max_order + 1):
                jump_fail[k + 1] = max(jump_fail[k + 1], float(jw[k]))

    diags = []
    verified = -1
    still = True
    for k in range(max_order + 1):
        w, kind = per_level[k]
        if jump_fail[k] > w:
            w, kind = jump_fail[k], "jump"
        ok = w == 0.0
        diags.append(OrderDiagnostic(k, ok, w, kind, flagged_radii))
        if still and ok:
            verified = k
        else:
            still = False
    return ClassReport(max(verified, 0), max_order, tuple(diags))


def classify_completely_s(m, cap=MAX_ORDER_CAP, grid=None):
    """'yes' / 'no' / 'unknown' for membership of the limit class (stable mixtures).

    Structural 'yes' for stable mixtures (checking sum weight/(2-z) per
    direction) and their j / i images and sums; 'no' when the order test
    fails at a low order; otherwise 'unknown'.
    """
    m = m.measure if isinstance(m, LevyTriple) else m
    if m.is_zero:
        return CompletelySReport("yes", {1: 0.0, -1: 0.0}, "no jump part")
    st = m.as_stable()
    if st is not None:
        moment = st.moment_condition()
        if all(math.isfinite(v) for v in moment.values()):
            return CompletelySReport("yes", moment, "stable mixture representation")
    rep = classify_order(LevyTriple(0.0, 0.0, m), cap, grid)
    if rep.max_verified_order < min(cap, RELIABLE_ORDER):
        return CompletelySReport(
            "no", None, f"order test fails at level {rep.max_verified_order + 1}", rep)
    return CompletelySReport("unknown", None,
                             f"passes the order test up to {rep.max_verified_order}", rep)


@dataclass(frozen=True)
class InclusionEntry:
    label: str
    required: int
    achieved: int
    passed: bool


@dataclass(frozen=True)
class InclusionReport:
    entries: tuple
    passed: bool


def inclusion_chain_check(seeds, m, grid=None):
    """Spot-check the chain of class inclusions on concrete images.

    (a) each j_{m+1} image passes the order test at m+1 (hence at m);
    (b) each i image (selfdecomposable) passes order 1 when the seed has a
        finite log-moment.
    """
    entries = []
    for i, seed in enumerate(seeds):
        img = j_alpha(seed, m + 1)
        rep = classify_order(img, m + 1, grid)
        entries.append(InclusionEntry(f"seed{i}:j^{m + 1}", m + 1, rep.max_verified_order,
                                      rep.max_verified_order >= m + 1))
        try:
            sd = i_transform(seed)
        except LevyCalcError:  # seeds without a log-moment have no i image
            continue
        rep = classify_order(sd, 1, grid)
        entries.append(InclusionEntry(f"seed{i}:i", 1, rep.max_verified_order,
                                      rep.max_verified_order >= 1))
    return InclusionReport(tuple(entries), all(e.passed for e in entries))
