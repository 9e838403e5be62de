"""Integration on (0, oo) with power-log tails, and monotone inversion.

The integrator works in log coordinates: the finite core [t_min, t_max] is
split into log-spaced cells (further split at profile breakpoints) and each
cell is integrated by 4-point Gauss-Legendre, which resolves power-log-exp
integrands far below the package tolerances at the default cell density.
Improper ends are handled from the symbolic tails: a divergent tail returns
+inf outright, a convergent power tail is integrated under t = anchor*e^{±v}
out to a truncation depth chosen from the decay margin, and a critical tail
(power exactly -1) uses the closed-form log-substitution chain with the
constant matched at the truncation boundary.

All integrands here are nonnegative; that is what makes the divergence
verdicts sound.
"""

from __future__ import annotations

import json
import math
import os
import warnings
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .errors import BracketError, ConvergenceError, DomainError, UnresolvedTailWarning
from .profiles import (
    EXP_DECAY,
    EXP_GROWTH,
    NULL,
    POWER,
    UNKNOWN,
    Profile,
    Tail,
    broken_log_value,
)

TAIL_ANALYTIC = "analytic-exponent"
TAIL_TRUNCATE = "truncate-with-bound"

ENV_GRID = "RINORM_GRID"

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(4)


@dataclass(frozen=True)
class Grid:
    """Log-spaced quadrature grid for (0, oo).

    `nodes_per_decade` counts Gauss cells per decade.  The analytic tail
    policy requires integrands to carry usable endpoint tails; the truncating
    policy integrates the core only and flags the unresolved remainder.
    """

    t_min: float = 1e-8
    t_max: float = 1e8
    nodes_per_decade: int = 64
    tail_policy: str = TAIL_ANALYTIC

    def __post_init__(self):
        if not (0 < self.t_min < 1 < self.t_max):
            raise DomainError("grid requires t_min < 1 < t_max with t_min > 0")
        if self.nodes_per_decade < 4:
            raise DomainError("grid needs at least 4 nodes per decade")
        if self.tail_policy not in (TAIL_ANALYTIC, TAIL_TRUNCATE):
            raise DomainError(f"unknown tail policy {self.tail_policy!r}")

    def with_overrides(self, **kw) -> "Grid":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw) if kw else self


def default_grid() -> Grid:
    """Package default, honoring the RINORM_GRID environment variable
    (a JSON object with any of t_min, t_max, nodes_per_decade, tail_policy)."""
    raw = os.environ.get(ENV_GRID)
    if not raw:
        return Grid()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise DomainError(f"{ENV_GRID} is not valid JSON: {e}") from e
    return Grid().with_overrides(**data)


@dataclass(frozen=True)
class IntegralResult:
    value: float
    tail_resolved: bool = True


# -- cell machinery ----------------------------------------------------------


def _log_edges(lo: float, hi: float, per_decade: int, breakpoints=()) -> np.ndarray:
    if hi <= lo:
        return np.array([lo, hi]) if hi == lo else np.array([])
    n = max(2, int(math.ceil((math.log10(hi) - math.log10(lo)) * per_decade)) + 1)
    edges = np.geomspace(lo, hi, n)
    bps = [b for b in breakpoints if lo < b < hi]
    if bps:
        edges = np.unique(np.concatenate([edges, np.asarray(bps, dtype=float)]))
    return edges


def _gauss_cells(fn: Callable, edges: np.ndarray) -> np.ndarray:
    """Per-cell Gauss-Legendre integrals of fn over consecutive edge pairs."""
    a = edges[:-1]
    b = edges[1:]
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    pts = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
        vals = np.asarray(fn(pts.ravel()), dtype=float).reshape(pts.shape)
    return half * (vals @ _GL_WEIGHTS)


def _core_integral(profile: Profile, lo: float, hi: float, per_decade: int) -> float:
    if hi <= lo:
        return 0.0
    edges = _log_edges(lo, hi, per_decade, profile.breakpoints)
    return float(np.sum(_gauss_cells(profile, edges)))


# -- improper ends -----------------------------------------------------------


def _power_log_tail_integral(lo: float, power: float, logs: tuple[float, ...]) -> float:
    """Integral over (lo, oo) of u^power * prod_j Mj(u)^{logs_j}, lo >= 1,
    where M1(u) = 1 + log u, M2 = 1 + log M1, ...

    Exact up to quadrature for power < -1; for power == -1 the substitution
    u -> 1 + log u reduces the depth by one.  Divergent cases return +inf.
    """
    if power > -1 + 1e-12:
        return math.inf
    if abs(power + 1.0) <= 1e-12:
        if not logs:
            return math.inf
        return _power_log_tail_integral(1.0 + math.log(lo), logs[0], logs[1:])

    def fn(u):
        u = np.asarray(u, dtype=float)
        out = u ** power
        m = np.ones_like(u)
        cur = u
        for l in logs:
            cur = 1.0 + np.log(cur)
            if l != 0.0:
                m = m * cur ** l
        return out * m

    rate = abs(power + 1.0)
    # length in log-u needed to push the remainder below 1e-16 relative
    span = min(60.0 / rate + 10.0 * (1.0 + sum(abs(l) for l in logs)), 4000.0)
    edges = np.exp(np.linspace(math.log(lo), math.log(lo) + span, max(64, int(span * 16))))
    return float(np.sum(_gauss_cells(fn, edges)))


def _matched_constant(profile: Profile, t: float, tail: Tail) -> float:
    """Coefficient c such that profile ~ c * t^power * prod L^l at t."""
    v = float(profile(np.array([t]))[0])
    denom = t ** tail.power
    for depth, l in enumerate(tail.logs, start=1):
        if l != 0.0:
            denom *= float(broken_log_value(np.array([t]), depth)[0]) ** l
    return v / denom if denom != 0 else 0.0


def _improper_head(profile: Profile, anchor: float, per_decade: int) -> float:
    """Integral over (0, anchor] where the support reaches 0."""
    tail = profile.zero
    conv = tail.integrable_at_zero()
    if conv is None:
        raise DomainError("integrand has no usable behavior near zero",
                          condition="undeclared tail near zero")
    if not conv:
        return math.inf
    if tail.kind == NULL:
        return 0.0
    if tail.kind == EXP_DECAY:
        # vanishes faster than any power towards 0; the head mass below the
        # anchor is below resolution by construction of the anchor
        return 0.0
    if tail.is_critical():
        c = _matched_constant(profile, anchor, tail)
        l1 = 1.0 - math.log(anchor) if anchor < 1.0 else 1.0
        return c * _power_log_tail_integral(max(l1, 1.0), tail.logs[0], tail.logs[1:])
    # substitution t = anchor * e^{-v}: integrand decays like e^{-(power+1) v}
    rate = tail.power + 1.0
    span = min(45.0 / rate + 8.0 * (1.0 + sum(abs(l) for l in tail.logs)), 2000.0)

    def fn(v):
        t = anchor * np.exp(-np.asarray(v, dtype=float))
        return np.asarray(profile(t), dtype=float) * t

    edges = np.linspace(0.0, span, max(64, int(span * per_decade / math.log(10.0))))
    return float(np.sum(_gauss_cells(fn, edges)))


def _improper_tail(profile: Profile, anchor: float, per_decade: int) -> float:
    """Integral over [anchor, oo) where the support is unbounded."""
    tail = profile.infty
    conv = tail.integrable_at_infty()
    if conv is None:
        raise DomainError("integrand has no usable behavior near infinity",
                          condition="undeclared tail near infinity")
    if not conv:
        return math.inf
    if tail.kind == NULL:
        return 0.0

    def fn(v):
        t = anchor * np.exp(np.asarray(v, dtype=float))
        return np.asarray(profile(t), dtype=float) * t

    if tail.kind == EXP_DECAY:
        # extend in blocks until a block stops contributing
        total = 0.0
        start = 0.0
        for _ in range(64):
            edges = np.linspace(start, start + 5.0, 96)
            block = float(np.sum(_gauss_cells(fn, edges)))
            total += block
            start += 5.0
            if not math.isfinite(block):
                return math.inf
            if block <= 1e-16 * max(total, 1e-300):
                return total
        return total
    if tail.is_critical():
        c = _matched_constant(profile, anchor, tail)
        l1 = 1.0 + math.log(anchor) if anchor >= 1.0 else 1.0
        return c * _power_log_tail_integral(max(l1, 1.0), tail.logs[0], tail.logs[1:])
    rate = -(tail.power + 1.0)
    span = min(45.0 / rate + 8.0 * (1.0 + sum(abs(l) for l in tail.logs)), 2000.0)
    edges = np.linspace(0.0, span, max(64, int(span * per_decade / math.log(10.0))))
    return float(np.sum(_gauss_cells(fn, edges)))


# -- public entry points -----------------------------------------------------


def integrate(profile: Profile, grid: Optional[Grid] = None, *, full_output: bool = False):
    """Integral of a nonnegative profile over (0, oo).

    Returns +inf when a tail test proves divergence.  Under the truncating
    tail policy an integrand without declared tails yields the core value
    plus an UnresolvedTailWarning (and .tail_resolved=False in full output).
    """
    grid = grid or default_grid()
    lo_s, hi_s = profile.support
    a = max(grid.t_min, lo_s)
    b = min(grid.t_max, hi_s)

    unresolved = False
    total = _core_integral(profile, a, b, grid.nodes_per_decade) if b > a else 0.0

    # mass below the core
    if lo_s < min(grid.t_min, hi_s):
        anchor = min(grid.t_min, hi_s)
        if lo_s > 0.0:
            edges = _log_edges(lo_s, anchor, grid.nodes_per_decade, profile.breakpoints)
            total += float(np.sum(_gauss_cells(profile, edges)))
        else:
            if grid.tail_policy == TAIL_TRUNCATE and profile.zero.kind == UNKNOWN:
                unresolved = True
            else:
                total += _improper_head(profile, anchor, grid.nodes_per_decade)

    # mass above the core
    if hi_s > max(grid.t_max, lo_s):
        anchor = max(grid.t_max, lo_s)
        if math.isfinite(hi_s):
            edges = _log_edges(anchor, hi_s, grid.nodes_per_decade, profile.breakpoints)
            total += float(np.sum(_gauss_cells(profile, edges)))
        else:
            if grid.tail_policy == TAIL_TRUNCATE and profile.infty.kind == UNKNOWN:
                unresolved = True
            else:
                total += _improper_tail(profile, anchor, grid.nodes_per_decade)

    if unresolved:
        warnings.warn("tail behavior undeclared; integral truncated to the grid core",
                      UnresolvedTailWarning)
    if full_output:
        return IntegralResult(value=total, tail_resolved=not unresolved)
    return total


def profile_sup(profile: Profile, grid: Optional[Grid] = None) -> float:
    """Supremum of a profile over (0, oo), combining a dense grid maximum
    with endpoint limits and growth verdicts from the symbolic tails."""
    grid = grid or default_grid()
    lo_s, hi_s = profile.support

    # unbounded growth at either end
    if lo_s == 0.0:
        z = profile.zero
        if z.kind == EXP_GROWTH:
            return math.inf
        if z.kind == POWER and (z.power < -CritEPS() or (abs(z.power) <= CritEPS() and _lex_positive(z.logs))):
            return math.inf
    if math.isinf(hi_s):
        i = profile.infty
        if i.kind == EXP_GROWTH:
            return math.inf
        if i.kind == POWER and (i.power > CritEPS() or (abs(i.power) <= CritEPS() and _lex_positive(i.logs))):
            return math.inf

    a = max(grid.t_min, lo_s if lo_s > 0 else grid.t_min)
    b = min(grid.t_max, hi_s if math.isfinite(hi_s) else grid.t_max)
    candidates = []
    if b > a:
        edges = _log_edges(a, b, grid.nodes_per_decade, profile.breakpoints)
        nudge = np.concatenate([edges * (1 - 1e-12), edges * (1 + 1e-12), 0.5 * (edges[:-1] + edges[1:])])
        nudge = nudge[(nudge > lo_s) & (nudge < hi_s if math.isfinite(hi_s) else np.full(nudge.shape, True))]
        if nudge.size:
            candidates.append(float(np.nanmax(profile(nudge))))
    if profile.zero_limit is not None:
        candidates.append(profile.zero_limit)
    if profile.infty_limit is not None:
        candidates.append(profile.infty_limit)
    if lo_s > 0:
        candidates.append(float(profile(np.array([lo_s * (1 + 1e-12)]))[0]))
    if math.isfinite(hi_s):
        candidates.append(float(profile(np.array([hi_s * (1 - 1e-12)]))[0]))
    return max(candidates) if candidates else 0.0


def _lex_positive(logs: tuple[float, ...]) -> bool:
    for l in logs:
        if l > 1e-12:
            return True
        if l < -1e-12:
            return False
    return False


def CritEPS() -> float:
    return 1e-12


# -- cumulative integrals ----------------------------------------------------


class CumulativeIntegral:
    """Prefix and suffix integrals of a profile, cached on the grid cells.

    F(t) = integral over (0, t], G(t) = integral over [t, oo).  Queries hit a
    prefix-sum table and finish the partial cell with Gauss nodes, so values
    are as accurate as `integrate` itself.
    """

    def __init__(self, profile: Profile, grid: Optional[Grid] = None, *,
                 need_head: bool = True, need_tail: bool = True):
        self.profile = profile
        self.grid = grid or default_grid()
        lo_s, hi_s = profile.support
        a = max(self.grid.t_min, lo_s)
        b = min(self.grid.t_max, hi_s)
        if b <= a:
            b = a * 10.0
        self.edges = _log_edges(a, b, self.grid.nodes_per_decade, profile.breakpoints)
        cells = _gauss_cells(profile, self.edges)
        self.prefix = np.concatenate([[0.0], np.cumsum(cells)])
        # suffix sums kept separately: total - prefix would lose all precision
        # when the near-zero mass dwarfs the far tail
        self.sufcum = np.concatenate([np.cumsum(cells[::-1])[::-1], [0.0]])
        if not need_head or lo_s >= a:
            self.head = 0.0
        elif lo_s == 0.0:
            self.head = _improper_head(profile, a, self.grid.nodes_per_decade)
        else:
            e = _log_edges(lo_s, a, self.grid.nodes_per_decade, profile.breakpoints)
            self.head = float(np.sum(_gauss_cells(profile, e)))
        if not need_tail or hi_s <= b:
            self.tail = 0.0
        elif math.isinf(hi_s):
            self.tail = _improper_tail(profile, b, self.grid.nodes_per_decade)
        else:
            e = _log_edges(b, hi_s, self.grid.nodes_per_decade, profile.breakpoints)
            self.tail = float(np.sum(_gauss_cells(profile, e)))
        self.total = self.head + float(self.prefix[-1]) + self.tail

    def _strip_to_first_edge(self, t: np.ndarray) -> np.ndarray:
        """Integral over [t, edges[0]] for t at or below the first edge."""
        out = np.zeros_like(t)
        lo_s = self.profile.support[0]
        cutoff = self.edges[0] * 1e-30
        for i, ti in enumerate(t):
            a = max(ti, lo_s)
            if a >= self.edges[0]:
                continue
            if a >= cutoff or lo_s > 0.0:
                e = _log_edges(max(a, lo_s), self.edges[0],
                               self.grid.nodes_per_decade, self.profile.breakpoints)
                out[i] = float(np.sum(_gauss_cells(self.profile, e))) if e.size else 0.0
            else:
                # extremely deep query: finish with the improper head difference
                e = _log_edges(cutoff, self.edges[0], self.grid.nodes_per_decade,
                               self.profile.breakpoints)
                out[i] = float(np.sum(_gauss_cells(self.profile, e)))
                out[i] += _improper_head(self.profile, cutoff, self.grid.nodes_per_decade)
                if a > 0.0:
                    out[i] -= _improper_head(self.profile, a, self.grid.nodes_per_decade)
        return out

    def _core_prefix_at(self, t: np.ndarray) -> np.ndarray:
        """Integral over [edges[0], min(t, edges[-1])], exact partial cells."""
        out = np.zeros_like(t)
        lo_edge, hi_edge = self.edges[0], self.edges[-1]
        above = t >= hi_edge
        mid = (t > lo_edge) & ~above
        out[above] = self.prefix[-1]
        if np.any(mid):
            tm = t[mid]
            idx = np.searchsorted(self.edges, tm, side="right") - 1
            idx = np.clip(idx, 0, len(self.edges) - 2)
            a = self.edges[idx]
            half = 0.5 * (tm - a)
            pts = a[:, None] + half[:, None] * (_GL_NODES[None, :] + 1.0)
            with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
                vals = np.asarray(self.profile(pts.ravel()), dtype=float).reshape(pts.shape)
            partial = half * (vals @ _GL_WEIGHTS)
            out[mid] = self.prefix[idx] + partial
        return out

    def _beyond_last_edge(self, t: np.ndarray) -> np.ndarray:
        """Integral over [edges[-1], min(t, support)] for t above the last edge."""
        out = np.zeros_like(t)
        hi_s = self.profile.support[1]
        for i, ti in enumerate(t):
            if math.isinf(ti):
                out[i] = self.tail
                continue
            b = min(ti, hi_s)
            if b <= self.edges[-1]:
                continue
            e = _log_edges(self.edges[-1], b, self.grid.nodes_per_decade, self.profile.breakpoints)
            out[i] = float(np.sum(_gauss_cells(self.profile, e)))
        return out

    def prefix_at(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.full_like(t, self.head)
        below = t <= self.edges[0]
        if np.any(below):
            out[below] = self.head - self._strip_to_first_edge(t[below])
        out += self._core_prefix_at(t)
        above = t > self.edges[-1]
        if np.any(above):
            out[above] += self._beyond_last_edge(t[above])
        # head-minus-strip cancellation can dip below zero at the float floor
        return np.maximum(out, 0.0)

    def _core_suffix_at(self, t: np.ndarray) -> np.ndarray:
        """Integral over [max(t, edges[0]), edges[-1]], exact partial cells."""
        out = np.zeros_like(t)
        lo_edge, hi_edge = self.edges[0], self.edges[-1]
        below = t <= lo_edge
        mid = ~below & (t < hi_edge)
        out[below] = self.sufcum[0]
        if np.any(mid):
            tm = t[mid]
            idx = np.searchsorted(self.edges, tm, side="right") - 1
            idx = np.clip(idx, 0, len(self.edges) - 2)
            b = self.edges[idx + 1]
            half = 0.5 * (b - tm)
            pts = tm[:, None] + half[:, None] * (_GL_NODES[None, :] + 1.0)
            with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
                vals = np.asarray(self.profile(pts.ravel()), dtype=float).reshape(pts.shape)
            partial = half * (vals @ _GL_WEIGHTS)
            out[mid] = self.sufcum[idx + 1] + partial
        return out

    def suffix_at(self, t) -> np.ndarray:
        """Integral over [t, oo); finite for t > 0 whenever the far tail is,
        even if the head diverges."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.full_like(t, self.tail) + self._core_suffix_at(t)
        below = t <= self.edges[0]
        if np.any(below):
            out[below] += self._strip_to_first_edge(t[below])
        above = t > self.edges[-1]
        if np.any(above):
            hi_s = self.profile.support[1]
            for i in np.nonzero(above)[0]:
                b = min(t[i], hi_s)
                if math.isinf(b):
                    out[i] = 0.0
                elif b > self.edges[-1]:
                    shifted = replace(self.profile, support=(b, hi_s))
                    out[i] = _improper_tail(shifted, b, self.grid.nodes_per_decade) \
                        if math.isinf(hi_s) else integrate(shifted, self.grid)
        return np.maximum(out, 0.0)


def maximal_profile(fstar: Profile, grid: Optional[Grid] = None) -> Profile:
    """The running-average profile t -> (1/t) * integral of fstar over (0, t).

    Dominates fstar and is nonincreasing.  If fstar is not integrable near 0
    the result is identically +inf.
    """
    grid = grid or default_grid()
    if fstar.zero.integrable_at_zero() is False:
        return Profile(fn=lambda t: np.full_like(np.asarray(t, dtype=float), math.inf),
                       zero=Tail(POWER, 0.0), infty=Tail(POWER, 0.0), nonincreasing=True)
    cum = CumulativeIntegral(fstar, grid)

    def fn(t):
        t = np.asarray(t, dtype=float)
        return cum.prefix_at(t) / t

    z = fstar.zero
    if z.kind in (NULL, EXP_DECAY):
        zero_tail = Tail(POWER, 0.0)
        zlim = 0.0 if z.kind == NULL else None
    elif z.is_critical():
        zero_tail = Tail(POWER, -1.0, ((z.logs[0] if z.logs else 0.0) + 1.0,) + tuple(z.logs[1:]))
        zlim = None
    else:
        zero_tail = z
        zlim = fstar.zero_limit
    i = fstar.infty
    fin = i.integrable_at_infty()
    if fin:
        inf_tail = Tail(POWER, -1.0)
        inf_limit = 0.0
    elif i.is_critical():
        inf_tail = Tail(POWER, -1.0, ((i.logs[0] if i.logs else 0.0) + 1.0,) + tuple(i.logs[1:]))
        inf_limit = None
    else:
        # power in (-1, 0]: the running average keeps the exponent
        inf_tail = i
        constant = i.kind == POWER and abs(i.power) < 1e-12 and not any(i.logs)
        inf_limit = fstar.infty_limit if constant else None
    bps = fstar.breakpoints
    hi_s = fstar.support[1]
    if math.isfinite(hi_s):
        bps = tuple(sorted(set(bps) | {hi_s}))
    return Profile(
        fn=fn,
        zero=zero_tail,
        infty=inf_tail,
        support=(fstar.support[0], math.inf),
        breakpoints=bps,
        nonincreasing=True,
        zero_limit=zlim,
        infty_limit=inf_limit,
    )


def hardy_transform(f: Profile, n: int, grid: Optional[Grid] = None) -> Profile:
    """Tf(t) = integral over (t, oo) of f(s) s^{1/n - 1} ds, for f >= 0.

    Nonincreasing in t regardless of f's shape.
    """
    from .profiles import power_log_profile

    grid = grid or default_grid()
    weighted = power_log_profile(1.0 / n - 1.0) * f
    if weighted.infty.integrable_at_infty() is False:
        return Profile(fn=lambda t: np.full_like(np.asarray(t, dtype=float), math.inf),
                       zero=Tail(POWER, 0.0), infty=Tail(POWER, 0.0), nonincreasing=True)
    cum = CumulativeIntegral(weighted, grid)

    def fn(t):
        return cum.suffix_at(t)

    w = weighted.infty
    if w.kind in (NULL,):
        inf_tail = Tail(NULL)
        support_hi = weighted.support[1]
    elif w.kind == EXP_DECAY:
        inf_tail = Tail(EXP_DECAY)
        support_hi = math.inf
    elif w.is_critical():
        inf_tail = Tail(POWER, -1.0 + 1.0, ((w.logs[0] if w.logs else 0.0) + 1.0,) + tuple(w.logs[1:]))
        support_hi = math.inf
    else:
        inf_tail = Tail(POWER, w.power + 1.0, w.logs)
        support_hi = math.inf
    head_finite = weighted.zero.integrable_at_zero()
    if head_finite:
        zero_tail = Tail(POWER, 0.0)
        zlim = cum.total if math.isfinite(cum.total) else None
    else:
        z = weighted.zero
        zero_tail = Tail(POWER, z.power + 1.0, z.logs) if not z.is_critical() else \
            Tail(POWER, 0.0, ((z.logs[0] if z.logs else 0.0) + 1.0,) + tuple(z.logs[1:]))
        zlim = None
    return Profile(fn=fn, zero=zero_tail, infty=inf_tail,
                   support=(0.0, support_hi), breakpoints=weighted.breakpoints,
                   nonincreasing=True, zero_limit=zlim, infty_limit=0.0)


# -- monotone inversion ------------------------------------------------------


def invert_monotone(F: Callable[[float], float], y: float, lo: float, hi: float, *,
                    x_tol: float = 1e-12, max_iter: int = 200) -> float:
    """Left-continuous generalized inverse of a nondecreasing map.

    Returns inf{x in [lo, hi] : F(x) >= y}.  For continuous strictly
    increasing F this is the ordinary inverse with |F(x) - y| driven below
    tolerance; across jumps and flats it returns the infimum of the solution
    set (the jump location for a step).
    """
    if hi <= lo:
        raise BracketError("empty bracket for monotone inversion")
    flo = F(lo)
    fhi = F(hi)
    if y < flo:
        raise BracketError(f"lower bracket endpoint fails: F({lo!r}) = {flo!r} > y = {y!r}",
                           condition="bracket lower endpoint")
    if y > fhi:
        raise BracketError(f"upper bracket endpoint fails: F({hi!r}) = {fhi!r} < y = {y!r}",
                           condition="bracket upper endpoint")
    if flo >= y:
        return lo
    a, b = lo, hi  # invariant: F(a) < y <= F(b)
    for _ in range(max_iter):
        if b - a <= x_tol:
            break
        mid = 0.5 * (a + b)
        if F(mid) >= y:
            b = mid
        else:
            a = mid
    return b
