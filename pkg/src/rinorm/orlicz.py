"""Young functions, Luxemburg and Orlicz-Lorentz norms, and the optimal
Sobolev transforms of Young functions.

A Young function A is convex, left-continuous, A(0) = 0, and is represented
here through its nondecreasing left-continuous derivative a: the value is
always the cumulative integral of the derivative, which keeps convexity true
by construction and makes A = int a an identity rather than an invariant to
hope for.  Families constructed from closed forms carry symbolic endpoint
tails so that the integral conditions governing the transforms are decided
symbolically, never by raw quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import ConvergenceError, DescriptorError, DomainError
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
from .quadrature import CumulativeIntegral, Grid, default_grid, integrate, profile_sup

__all__ = [
    "YoungFunction",
    "PowerYoung",
    "PowerLogYoung",
    "ExpYoung",
    "ZeroExpYoung",
    "LinftyYoung",
    "TabulatedYoung",
    "DerivedYoung",
    "ConditionReport",
    "TransformReport",
    "luxemburg_norm",
    "condition_A",
    "sobolev_young_transform",
    "build_Em",
    "orlicz_lorentz_norm",
    "domination_check",
    "young_structure_report",
    "young_from_dict",
    "young_to_dict",
]

_YOUNG_GRID_LO = 1e-12
_YOUNG_GRID_HI = 1e12
_YOUNG_PER_DECADE = 48


class _MonotoneTable:
    """Nondecreasing interpolant through positive samples, log-log PCHIP
    inside the sampled range and matched power-law tails outside."""

    def __init__(self, ts, vals, lo_slope=None, hi_slope=None):
        from scipy.interpolate import PchipInterpolator

        ts = np.asarray(ts, dtype=float)
        vals = np.asarray(vals, dtype=float)
        keep = (ts > 0) & (vals > 0) & np.isfinite(vals) & np.isfinite(ts)
        ts, vals = ts[keep], vals[keep]
        order = np.argsort(ts)
        ts, vals = ts[order], np.maximum.accumulate(vals[order])
        uniq, idx = np.unique(ts, return_index=True)
        ts, vals = uniq, vals[idx]
        if len(ts) < 4:
            raise DomainError("monotone table needs at least 4 positive samples")
        self.ts, self.vals = ts, vals
        self._sp = PchipInterpolator(np.log(ts), np.log(vals), extrapolate=False)
        if lo_slope is None:
            lo_slope = (math.log(vals[3]) - math.log(vals[0])) / (math.log(ts[3]) - math.log(ts[0]))
        if hi_slope is None:
            hi_slope = (math.log(vals[-1]) - math.log(vals[-4])) / (math.log(ts[-1]) - math.log(ts[-4]))
        self.lo_slope = lo_slope
        self.hi_slope = hi_slope

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.zeros_like(t)
        inside = (t >= self.ts[0]) & (t <= self.ts[-1])
        if inside.any():
            out[inside] = np.exp(self._sp(np.log(t[inside])))
        below = t < self.ts[0]
        if below.any():
            out[below] = self.vals[0] * (t[below] / self.ts[0]) ** self.lo_slope
        above = t > self.ts[-1]
        if above.any():
            out[above] = self.vals[-1] * (t[above] / self.ts[-1]) ** self.hi_slope
        return out

    def inverse(self, y):
        """Left-continuous generalized inverse."""
        y = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.empty_like(y)
        idx = np.searchsorted(self.vals, y, side="left")
        below = idx == 0
        above = idx == len(self.vals)
        out[below] = self.ts[0] * (y[below] / self.vals[0]) ** (1.0 / self.lo_slope) \
            if self.lo_slope > 0 else 0.0
        out[above] = self.ts[-1] * (y[above] / self.vals[-1]) ** (1.0 / self.hi_slope) \
            if self.hi_slope > 0 else math.inf
        mid = ~(below | above)
        if mid.any():
            # bisect within the bracketing cell on the interpolant
            lo = self.ts[np.maximum(idx[mid] - 1, 0)]
            hi = self.ts[idx[mid]]
            target = y[mid]
            for _ in range(60):
                m = np.sqrt(lo * hi)
                v = self(m)
                go_right = v < target
                lo = np.where(go_right, m, lo)
                hi = np.where(go_right, hi, m)
            out[mid] = hi
        return out


def _young_nodes():
    n = int((math.log10(_YOUNG_GRID_HI) - math.log10(_YOUNG_GRID_LO)) * _YOUNG_PER_DECADE) + 1
    return np.geomspace(_YOUNG_GRID_LO, _YOUNG_GRID_HI, n)


@dataclass(frozen=True)
class YoungFunction:
    """Base interface.  `zero_tail`/`infty_tail` describe A itself;
    `deriv_zero_tail`/`deriv_infty_tail` describe the derivative a.
    A == 0 on [0, zero_cut]; A == +inf on (finite_cut, oo)."""

    zero_tail: Tail = Tail(POWER, 1.0)
    infty_tail: Tail = Tail(POWER, 1.0)
    deriv_zero_tail: Tail = Tail(POWER, 0.0)
    deriv_infty_tail: Tail = Tail(POWER, 0.0)
    zero_cut: float = 0.0
    finite_cut: float = math.inf
    label: str = "young"

    def __call__(self, t):
        raise NotImplementedError

    def deriv(self, t):
        raise NotImplementedError

    def deriv_inverse(self, y):
        raise NotImplementedError

    def _value_scalar_ok(self, t):
        arr = np.atleast_1d(np.asarray(t, dtype=float))
        return arr

    def describe(self) -> str:
        return self.label


@dataclass(frozen=True)
class PowerYoung(YoungFunction):
    """A(t) = c * t^p, p >= 1.  Exact closed forms throughout."""

    p: float = 2.0
    c: float = 1.0

    def __init__(self, p: float, c: float = 1.0):
        if p < 1:
            raise DescriptorError("Young power must satisfy p >= 1")
        if c <= 0:
            raise DescriptorError("Young scale must be positive")
        object.__setattr__(self, "p", float(p))
        object.__setattr__(self, "c", float(c))
        super().__init__(
            zero_tail=Tail(POWER, p),
            infty_tail=Tail(POWER, p),
            deriv_zero_tail=Tail(POWER, p - 1.0),
            deriv_infty_tail=Tail(POWER, p - 1.0),
            label=f"t^{p:g}" + ("" if c == 1.0 else f" (x{c:g})"),
        )

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return self.c * t ** self.p

    def deriv(self, t):
        t = np.asarray(t, dtype=float)
        if self.p == 1.0:
            return np.full_like(t, self.c)
        return self.c * self.p * t ** (self.p - 1.0)

    def deriv_inverse(self, y):
        y = np.asarray(y, dtype=float)
        if self.p == 1.0:
            return np.where(y <= self.c, 0.0, math.inf)
        return (y / (self.c * self.p)) ** (1.0 / (self.p - 1.0))


class _DerivativeBackedYoung(YoungFunction):
    """Shared plumbing for Young functions defined by their derivative."""

    def _setup_cache(self, a_profile: Profile):
        object.__setattr__(self, "_a_profile", a_profile)
        object.__setattr__(self, "_cum", None)
        object.__setattr__(self, "_table", None)

    def _cum_lazy(self) -> CumulativeIntegral:
        if self.__dict__["_cum"] is None:
            grid = Grid(t_min=max(_YOUNG_GRID_LO, 1e-12), t_max=_YOUNG_GRID_HI,
                        nodes_per_decade=_YOUNG_PER_DECADE)
            object.__setattr__(self, "_cum", CumulativeIntegral(self.__dict__["_a_profile"], grid))
        return self.__dict__["_cum"]

    def _table_lazy(self) -> _MonotoneTable:
        if self.__dict__["_table"] is None:
            ts = _young_nodes()
            vals = np.asarray(self.deriv(ts), dtype=float)
            object.__setattr__(self, "_table", _MonotoneTable(ts, vals))
        return self.__dict__["_table"]

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.zeros_like(t)
        if math.isfinite(self.finite_cut):
            beyond = t > self.finite_cut
            out[beyond] = math.inf
            inside = ~beyond & (t > self.zero_cut)
        else:
            inside = t > self.zero_cut
        if inside.any():
            out[inside] = self._cum_lazy().prefix_at(t[inside])
        return out

    def deriv_inverse(self, y):
        return self._table_lazy().inverse(y)


@dataclass(frozen=True)
class PowerLogYoung(_DerivativeBackedYoung):
    """A Young function equivalent to c * t^{p0} l^{a0}(t) near zero and
    c * t^{p_inf} l^{a_inf}(t) near infinity (one broken-log layer).

    The derivative is the running maximum of phi(t) = raw(t)/t, which is a
    nondecreasing left-continuous function agreeing with phi away from the
    gluing region, so the result is convex by construction and equivalent to
    the raw form at both ends.
    """

    p0: float = 2.0
    alpha0: float = 0.0
    p_inf: float = 2.0
    alpha_inf: float = 0.0
    c: float = 1.0

    def __init__(self, p0, alpha0, p_inf, alpha_inf, c=1.0):
        if p0 < 1 or p_inf < 1:
            raise DescriptorError("Young powers must satisfy p >= 1")
        if p0 == 1.0 and alpha0 > 0:
            raise DescriptorError(
                "t l^a(t) with a > 0 near zero is not equivalent to a Young function",
                condition="near-zero slope unbounded",
            )
        if p_inf == 1.0 and alpha_inf < 0:
            raise DescriptorError(
                "t l^a(t) with a < 0 near infinity is not equivalent to a Young function",
                condition="near-infinity slope decays",
            )
        object.__setattr__(self, "p0", float(p0))
        object.__setattr__(self, "alpha0", float(alpha0))
        object.__setattr__(self, "p_inf", float(p_inf))
        object.__setattr__(self, "alpha_inf", float(alpha_inf))
        object.__setattr__(self, "c", float(c))
        super().__init__(
            zero_tail=Tail(POWER, p0, (alpha0,)),
            infty_tail=Tail(POWER, p_inf, (alpha_inf,)),
            deriv_zero_tail=Tail(POWER, p0 - 1.0, (alpha0,)),
            deriv_infty_tail=Tail(POWER, p_inf - 1.0, (alpha_inf,)),
            label=f"t^{p0:g} l^{alpha0:g} near 0, t^{p_inf:g} l^{alpha_inf:g} near inf",
        )
        ts = _young_nodes()
        phi = self._phi(ts)
        env = np.maximum.accumulate(phi)
        object.__setattr__(self, "_env_ts", ts)
        object.__setattr__(self, "_env", env)
        self._setup_cache(Profile(
            fn=self.deriv,
            zero=self.deriv_zero_tail,
            infty=self.deriv_infty_tail,
            breakpoints=(1.0,),
            nonincreasing=False,
        ))

    def _phi(self, t):
        t = np.asarray(t, dtype=float)
        ell = broken_log_value(t, 1)
        p = np.where(t < 1.0, self.p0, self.p_inf)
        alpha = np.where(t < 1.0, self.alpha0, self.alpha_inf)
        with np.errstate(over="ignore", under="ignore"):
            return self.c * t ** (p - 1.0) * ell ** alpha

    def deriv(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        phi = self._phi(t)
        idx = np.searchsorted(self._env_ts, t, side="right") - 1
        base = np.where(idx >= 0, self._env[np.maximum(idx, 0)], 0.0)
        return np.maximum(phi, base)


@dataclass(frozen=True)
class ExpYoung(_DerivativeBackedYoung):
    """Near-infinity exponential behavior exp(t^gamma) (or exp(exp(t^gamma))
    when double=True), cut to zero on [0, t1] so that A(0) = 0.

    The cut is placed beyond the point where the raw derivative starts
    increasing, so the stored derivative is nondecreasing.
    """

    gamma: float = 1.0
    double: bool = False
    t1: float = 1.0

    def __init__(self, gamma: float, double: bool = False, t1: Optional[float] = None):
        if gamma <= 0:
            raise DescriptorError("exponential Young behavior requires gamma > 0")
        if t1 is None:
            t1 = 1.0
            if gamma < 1.0 and not double:
                t1 = max(t1, ((1.0 - gamma) / gamma) ** (1.0 / gamma) * 1.0000001)
        object.__setattr__(self, "gamma", float(gamma))
        object.__setattr__(self, "double", bool(double))
        object.__setattr__(self, "t1", float(t1))
        super().__init__(
            zero_tail=Tail(NULL),
            infty_tail=Tail(EXP_GROWTH),
            deriv_zero_tail=Tail(NULL),
            deriv_infty_tail=Tail(EXP_GROWTH),
            zero_cut=t1,
            label=("e^e^t^%g" if double else "e^t^%g") % gamma,
        )
        self._setup_cache(Profile(
            fn=self.deriv,
            zero=Tail(NULL),
            infty=Tail(EXP_GROWTH),
            support=(self.t1, math.inf),
            breakpoints=(self.t1,),
        ))

    def deriv(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        g = self.gamma
        with np.errstate(over="ignore", under="ignore"):
            inner = t ** g
            if self.double:
                val = np.exp(np.minimum(np.exp(np.minimum(inner, 700.0)), 700.0)) * \
                    np.exp(np.minimum(inner, 700.0)) * g * t ** (g - 1.0)
            else:
                val = g * t ** (g - 1.0) * np.exp(np.minimum(inner, 700.0))
        return np.where(t > self.t1, val, 0.0)

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if self.double:
            return super().__call__(t)
        g = self.gamma
        with np.errstate(over="ignore", under="ignore"):
            raw = np.exp(np.minimum(t ** g, 700.0)) - math.exp(self.t1 ** g)
        return np.where(t > self.t1, raw, 0.0)


@dataclass(frozen=True)
class ZeroExpYoung(_DerivativeBackedYoung):
    """Near-zero behavior exp(-t^{-s}), s > 0 (vanishing faster than any
    power), continued with a constant derivative beyond the matching point."""

    s: float = 1.0
    t1: float = 0.5

    def __init__(self, s: float, t1: Optional[float] = None):
        if s <= 0:
            raise DescriptorError("near-zero exponential behavior requires s > 0")
        cap = (s / (s + 1.0)) ** (1.0 / s)
        if t1 is None:
            t1 = cap
        t1 = min(t1, cap)
        object.__setattr__(self, "s", float(s))
        object.__setattr__(self, "t1", float(t1))
        super().__init__(
            zero_tail=Tail(EXP_DECAY),
            infty_tail=Tail(POWER, 1.0),
            deriv_zero_tail=Tail(EXP_DECAY),
            deriv_infty_tail=Tail(POWER, 0.0),
            label=f"e^-t^-{s:g} near 0",
        )
        self._setup_cache(Profile(
            fn=self.deriv,
            zero=Tail(EXP_DECAY),
            infty=Tail(POWER, 0.0),
            breakpoints=(self.t1,),
        ))

    def deriv(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        s = self.s
        with np.errstate(over="ignore", under="ignore", divide="ignore"):
            raw = s * t ** (-s - 1.0) * np.exp(-np.minimum(t ** (-s), 700.0))
            plateau = s * self.t1 ** (-s - 1.0) * math.exp(-self.t1 ** (-s))
        return np.where(t <= self.t1, np.where(t > 0, raw, 0.0), plateau)


@dataclass(frozen=True)
class LinftyYoung(YoungFunction):
    """A = 0 on [0, cut] and +inf beyond: the Young function of the
    essential-sup norm (scaled by the cut)."""

    cut: float = 1.0

    def __init__(self, cut: float = 1.0):
        if cut <= 0:
            raise DescriptorError("cut must be positive")
        object.__setattr__(self, "cut", float(cut))
        super().__init__(
            zero_tail=Tail(NULL),
            infty_tail=Tail(EXP_GROWTH),
            deriv_zero_tail=Tail(NULL),
            deriv_infty_tail=Tail(EXP_GROWTH),
            zero_cut=cut,
            finite_cut=cut,
            label="0 on [0,%g], inf beyond" % cut,
        )

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return np.where(t > self.cut, math.inf, 0.0)

    def deriv(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return np.where(t > self.cut, math.inf, 0.0)

    def deriv_inverse(self, y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        return np.where(y > 0, self.cut, 0.0)


@dataclass(frozen=True)
class TabulatedYoung(_DerivativeBackedYoung):
    """Derivative sampled on a grid (nondecreasing, left-continuous), with
    optional declared tails.  Without declared tails the integral conditions
    report an undetermined status."""

    ts: tuple = ()
    a_vals: tuple = ()

    def __init__(self, ts, a_vals, deriv_zero_tail: Optional[Tail] = None,
                 deriv_infty_tail: Optional[Tail] = None):
        ts = tuple(float(x) for x in ts)
        a_vals = tuple(float(x) for x in a_vals)
        if len(ts) != len(a_vals) or len(ts) < 4:
            raise DescriptorError("tabulated Young derivative needs >= 4 samples")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise DescriptorError("tabulated grid must be strictly increasing")
        if any(b < a - 1e-12 for a, b in zip(a_vals, a_vals[1:])):
            raise DescriptorError("tabulated derivative must be nondecreasing")
        object.__setattr__(self, "ts", ts)
        object.__setattr__(self, "a_vals", a_vals)
        dz = deriv_zero_tail if deriv_zero_tail is not None else Tail(UNKNOWN)
        di = deriv_infty_tail if deriv_infty_tail is not None else Tail(UNKNOWN)

        def a_zero_to_A(t: Tail) -> Tail:
            if t.kind == POWER:
                return Tail(POWER, t.power + 1.0, t.logs)
            return t
        super().__init__(
            zero_tail=a_zero_to_A(dz),
            infty_tail=a_zero_to_A(di),
            deriv_zero_tail=dz,
            deriv_infty_tail=di,
            label="tabulated",
        )
        table = _MonotoneTable(np.asarray(ts), np.asarray(a_vals))
        object.__setattr__(self, "_tab", table)
        self._setup_cache(Profile(fn=self.deriv, zero=dz, infty=di))

    def deriv(self, t):
        return self.__dict__["_tab"](t)

    def deriv_inverse(self, y):
        return self.__dict__["_tab"].inverse(y)


@dataclass(frozen=True)
class DerivedYoung(_DerivativeBackedYoung):
    """Young function produced by a transform: the derivative is a computed
    callable with (possibly numerically fitted) endpoint tails."""

    def __init__(self, a_fn: Callable, deriv_zero_tail: Tail, deriv_infty_tail: Tail,
                 zero_cut: float = 0.0, finite_cut: float = math.inf,
                 label: str = "derived", breakpoints: tuple = ()):
        def a_zero_to_A(t: Tail) -> Tail:
            if t.kind == POWER:
                return Tail(POWER, t.power + 1.0, t.logs)
            return t
        super().__init__(
            zero_tail=a_zero_to_A(deriv_zero_tail),
            infty_tail=a_zero_to_A(deriv_infty_tail) if not math.isfinite(finite_cut) else Tail(EXP_GROWTH),
            deriv_zero_tail=deriv_zero_tail,
            deriv_infty_tail=deriv_infty_tail,
            zero_cut=zero_cut,
            finite_cut=finite_cut,
            label=label,
        )
        object.__setattr__(self, "_a_fn", a_fn)
        hi = finite_cut if math.isfinite(finite_cut) else math.inf
        self._setup_cache(Profile(
            fn=a_fn,
            zero=deriv_zero_tail,
            infty=deriv_infty_tail if not math.isfinite(finite_cut) else Tail(NULL),
            support=(zero_cut, hi),
            breakpoints=breakpoints,
        ))

    def deriv(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.asarray(self.__dict__["_a_fn"](t), dtype=float)
        if math.isfinite(self.finite_cut):
            out = np.where(t > self.finite_cut, math.inf, out)
        return out


# -- Luxemburg norm -----------------------------------------------------------


def _compose_tail(A: YoungFunction, prof_tail: Tail, prof_limit: Optional[float],
                  scale: float) -> Tail:
    """Tail of t -> A(prof(t)/scale) at an endpoint where prof has prof_tail.

    Only the cases arising from nonincreasing profiles are supported: the
    profile tends to 0 (compose with A near zero), to a finite limit
    (constant), or blows up polynomially/log-wise (compose with A near
    infinity).
    """
    if prof_tail.kind == NULL:
        return Tail(NULL)
    if prof_tail.kind == UNKNOWN:
        return Tail(UNKNOWN)
    if prof_tail.kind == EXP_DECAY:
        if A.zero_cut > 0:
            return Tail(NULL)
        if A.zero_tail.kind == POWER:
            return Tail(EXP_DECAY)
        return Tail(EXP_DECAY)
    # power-kind profile behavior
    goes_to_zero = prof_tail.power < -1e-12 or (
        abs(prof_tail.power) <= 1e-12 and prof_tail.logs and prof_tail.logs[0] < 0)
    goes_to_inf = prof_tail.power > 1e-12 or (
        abs(prof_tail.power) <= 1e-12 and prof_tail.logs and prof_tail.logs[0] > 0)
    if goes_to_zero:
        if A.zero_cut > 0:
            return Tail(NULL)
        az = A.zero_tail
        if az.kind != POWER:
            return Tail(EXP_DECAY)  # A vanishing faster than any power
        p = az.power
        alpha = az.logs[0] if az.logs else 0.0
        base_logs = tuple(l * p for l in prof_tail.logs)
        l1 = (base_logs[0] if base_logs else 0.0) + (alpha if abs(prof_tail.power) > 1e-12 else 0.0)
        rest = base_logs[1:]
        return Tail(POWER, prof_tail.power * p, (l1,) + rest)
    if goes_to_inf:
        ai = A.infty_tail
        if math.isfinite(A.finite_cut):
            return Tail(EXP_GROWTH)
        if ai.kind != POWER:
            if abs(prof_tail.power) <= 1e-12:
                raise DomainError(
                    "log-scale blowup composed with an exponential Young function "
                    "is outside the supported tail algebra",
                    condition="unsupported composition",
                )
            return Tail(EXP_GROWTH)
        p = ai.power
        beta = ai.logs[0] if ai.logs else 0.0
        base_logs = tuple(l * p for l in prof_tail.logs)
        l1 = (base_logs[0] if base_logs else 0.0) + (beta if abs(prof_tail.power) > 1e-12 else 0.0)
        return Tail(POWER, prof_tail.power * p, (l1,) + base_logs[1:])
    # finite positive limit: constant value A(limit/scale)
    return Tail(POWER, 0.0)


def _luxemburg_integrand(fstar: Profile, A: YoungFunction, lam: float) -> Profile:
    f = fstar

    def fn(t):
        vals = np.asarray(f(t), dtype=float) / lam
        return np.asarray(A(vals), dtype=float)

    lo_s, hi_s = f.support
    support = (lo_s, hi_s)
    # a zero cut of A truncates the support where the profile drops below it
    if A.zero_cut > 0 and f.nonincreasing:
        thresh = lam * A.zero_cut
        zl = f.zero_limit
        if zl is not None and zl <= thresh:
            return Profile(fn=lambda t: np.zeros_like(np.asarray(t, dtype=float)),
                           zero=Tail(NULL), infty=Tail(NULL), support=(0.0, 0.0))
        # find sup{t : f(t) > thresh} by expanding bisection
        hi = 1.0
        for _ in range(200):
            if float(f(np.array([hi]))[0]) <= thresh or hi >= 1e300:
                break
            hi *= 4.0
        lo = 0.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid <= 0:
                break
            if float(f(np.array([mid]))[0]) > thresh:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-12 * max(1.0, hi):
                break
        support = (lo_s, min(hi_s, hi))
    zero = _compose_tail(A, f.zero, f.zero_limit, lam) if support[0] == 0.0 else Tail(NULL)
    infty = _compose_tail(A, f.infty, f.infty_limit, lam) if math.isinf(support[1]) else Tail(NULL)
    # constant nonzero value at infinity makes the integral infinite outright
    if math.isinf(support[1]) and infty.kind == POWER and abs(infty.power) <= 1e-12 \
            and not any(infty.logs):
        lim = f.infty_limit
        if lim is not None and float(np.atleast_1d(A(np.array([lim / lam])))[0]) > 0:
            return Profile(fn=lambda t: np.full_like(np.asarray(t, dtype=float), math.inf),
                           zero=zero, infty=Tail(POWER, 0.0))
    return Profile(fn=fn, zero=zero, infty=infty, support=support,
                   breakpoints=f.breakpoints, nonincreasing=False)


class LuxemburgResult(NamedTuple):
    value: float
    modular_at_value: float
    modular_below: float  # at value*(1 - 10*tol); > 1 certifies minimality


def luxemburg_norm(fstar: Profile, A: YoungFunction, grid: Optional[Grid] = None, *,
                   rel_tol: float = 1e-10, details: bool = False):
    """inf{lam > 0 : integral of A(f*/lam) <= 1} by bisection in log-lambda.

    For the 0/inf Young function of the essential sup the norm is computed
    directly as f*(0+)/cut.  Returns +inf when no finite lambda brings the
    modular below 1.
    """
    grid = grid or default_grid()
    sup = profile_sup(fstar, grid)
    if sup == 0.0:
        result = LuxemburgResult(0.0, 0.0, 0.0)
        return result if details else 0.0
    if A.zero_cut > 0 and A.zero_cut == A.finite_cut:
        val = sup / A.zero_cut
        result = LuxemburgResult(val, math.nan, math.nan)
        return result if details else val

    def modular(lam: float) -> float:
        return integrate(_luxemburg_integrand(fstar, A, lam), grid)

    hi = sup if math.isfinite(sup) and sup > 0 else 1.0
    ok = False
    for _ in range(200):
        if modular(hi) <= 1.0:
            ok = True
            break
        hi *= 2.0
        if hi > 1e280:
            break
    if not ok:
        result = LuxemburgResult(math.inf, math.inf, math.inf)
        return result if details else math.inf
    lo = hi / 2.0
    while modular(lo) <= 1.0 and lo > 1e-280:
        hi = lo
        lo /= 2.0
    if modular(lo) <= 1.0:
        # modular stays below 1 for every positive lambda
        result = LuxemburgResult(0.0, modular(lo), math.nan)
        return result if details else 0.0
    # invariant: modular(lo) > 1 >= modular(hi)
    for _ in range(200):
        if hi / lo <= 1.0 + rel_tol:
            break
        mid = math.sqrt(lo * hi)
        if modular(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    value = hi
    if details:
        return LuxemburgResult(value, modular(value), modular(value * (1.0 - 10.0 * rel_tol)))
    return value


# -- integral conditions and the Sobolev transform ---------------------------


class ConditionReport(NamedTuple):
    near_zero_converges: Optional[bool]
    near_infty_converges: Optional[bool]


def _ratio_tail_zero(A: YoungFunction, r: float) -> Tail:
    if A.zero_cut > 0:
        return Tail(EXP_GROWTH)  # 1/A is infinite on a whole interval
    az = A.zero_tail
    if az.kind == EXP_DECAY:
        return Tail(EXP_GROWTH)
    if az.kind != POWER:
        return Tail(UNKNOWN) if az.kind == UNKNOWN else Tail(EXP_DECAY)
    return Tail(POWER, r * (1.0 - az.power), tuple(-r * l for l in az.logs))


def _ratio_tail_infty(A: YoungFunction, r: float) -> Tail:
    if math.isfinite(A.finite_cut):
        return Tail(NULL)
    ai = A.infty_tail
    if ai.kind == EXP_GROWTH:
        return Tail(EXP_DECAY)
    if ai.kind != POWER:
        return Tail(UNKNOWN)
    return Tail(POWER, r * (1.0 - ai.power), tuple(-r * l for l in ai.logs))


def _young_ratio_profile(A: YoungFunction, m: int, n: int) -> Profile:
    """(s / A(s))^{m/(n-m)} with symbolic tails from A's."""
    r = m / (n - m)

    def fn(s):
        s = np.asarray(s, dtype=float)
        vals = np.asarray(A(s), dtype=float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            out = np.where(vals > 0, (s / vals) ** r, math.inf)
        return out

    hi = A.finite_cut if math.isfinite(A.finite_cut) else math.inf
    return Profile(fn=fn, zero=_ratio_tail_zero(A, r), infty=_ratio_tail_infty(A, r),
                   support=(0.0, hi), breakpoints=(1.0,))


def condition_A(A: YoungFunction, m: int, n: int) -> ConditionReport:
    """Convergence of the integrals of (s/A(s))^{m/(n-m)} near 0 and near
    infinity, decided symbolically where tails are declared."""
    if not (1 <= m < n):
        raise DomainError("orders must satisfy 1 <= m < n")
    r = m / (n - m)
    return ConditionReport(
        near_zero_converges=_ratio_tail_zero(A, r).integrable_at_zero(),
        near_infty_converges=_ratio_tail_infty(A, r).integrable_at_infty(),
    )


@dataclass(frozen=True)
class TransformReport:
    H: Callable
    H_infty: float
    D: Callable
    A_m: YoungFunction
    condition_zero_ok: bool
    condition_infty_converges: Optional[bool]


class _PrefixInverter:
    """Monotone inverse of t -> prefix integral, from cached edge values
    refined by bisection on the exact prefix."""

    def __init__(self, cum: CumulativeIntegral):
        self.cum = cum
        self.edges = cum.edges
        self.Fe = cum.head + cum.prefix

    def __call__(self, y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.empty_like(y)
        lo = np.empty_like(y)
        hi = np.empty_like(y)
        idx = np.searchsorted(self.Fe, y, side="left")
        low = idx == 0
        high = idx == len(self.Fe)
        mid = ~(low | high)
        lo[mid] = self.edges[idx[mid] - 1]
        hi[mid] = self.edges[idx[mid]]
        # below the first edge: bisect on (0, first edge]
        lo[low] = self.edges[0] * 1e-18
        hi[low] = self.edges[0]
        lo[high] = self.edges[-1]
        hi[high] = self.edges[-1] * 1e6
        work = ~high | (y <= self.cum.total)
        for _ in range(80):
            m = np.sqrt(lo * hi)
            v = self.cum.prefix_at(m)
            go_right = v < y
            lo = np.where(go_right & work, m, lo)
            hi = np.where(go_right | ~work, hi, m)
        out = np.sqrt(lo * hi)
        return out


def sobolev_young_transform(A: YoungFunction, m: int, n: int,
                            grid: Optional[Grid] = None) -> TransformReport:
    """The optimal Orlicz target Young function A_m of a source Young
    function A for m-th order derivatives in dimension n.

    H_m(t) = (int_0^t (s/A(s))^{m/(n-m)} ds)^{(n-m)/n}; D_m pushes A through
    the inverse of H_m; A_m integrates D_m(s)/s.  Requires the near-zero
    integral to converge.
    """
    grid = grid or default_grid()
    cond = condition_A(A, m, n)
    if cond.near_zero_converges is None:
        raise DomainError("young ratio integral undetermined near zero: declare tails",
                          condition="young-ratio tail undeclared")
    if not cond.near_zero_converges:
        raise DomainError(
            "young ratio integral diverges near zero; no optimal Orlicz target exists",
            condition="young-ratio integral diverges near zero",
        )
    ratio = _young_ratio_profile(A, m, n)
    cum = CumulativeIntegral(ratio, grid)
    ex = (n - m) / n

    def H(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return cum.prefix_at(t) ** ex

    H_infty = cum.total ** ex if math.isfinite(cum.total) else math.inf
    inverter = _PrefixInverter(cum)

    def Hinv(y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        return inverter(y ** (1.0 / ex))

    po = n / (n - m)

    def D(t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.full_like(t, math.inf)
        inside = t < H_infty
        if inside.any():
            x = Hinv(t[inside])
            Ax = np.asarray(A(x), dtype=float)
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                out[inside] = (t[inside] * Ax / x) ** po
        return out

    def a_m(s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            return D(s) / s

    # symbolic tails of a_m for power-log sources; fitted slopes otherwise
    az = A.zero_tail
    if az.kind == POWER:
        p, alpha = az.power, (az.logs[0] if az.logs else 0.0)
        target_p = n * p / (n - m * p) if p < n / m else math.inf
        if math.isfinite(target_p):
            zero_tail = Tail(POWER, target_p - 1.0, (n * alpha / (n - m * p),))
        else:
            zero_tail = Tail(EXP_DECAY)
    else:
        zero_tail = Tail(EXP_DECAY)
    if math.isfinite(H_infty):
        infty_tail = Tail(EXP_GROWTH)
        finite_cut = H_infty
    else:
        ai = A.infty_tail
        if ai.kind == POWER and ai.power < n / m:
            P, beta = ai.power, (ai.logs[0] if ai.logs else 0.0)
            infty_tail = Tail(POWER, n * P / (n - m * P) - 1.0, (n * beta / (n - m * P),))
        else:
            infty_tail = Tail(EXP_GROWTH)
        finite_cut = math.inf
    A_m = DerivedYoung(a_m, zero_tail, infty_tail, finite_cut=finite_cut,
                       label=f"optimal target of {A.describe()} (m={m}, n={n})")
    return TransformReport(H=H, H_infty=H_infty, D=D, A_m=A_m,
                           condition_zero_ok=True,
                           condition_infty_converges=cond.near_infty_converges)


# -- the Orlicz-Lorentz target Young function --------------------------------


def _fit_slope(xs: np.ndarray, ys: np.ndarray) -> float:
    keep = (xs > 0) & (ys > 0) & np.isfinite(ys)
    if keep.sum() < 2:
        return 0.0
    lx, ly = np.log(xs[keep]), np.log(ys[keep])
    return float(np.polyfit(lx, ly, 1)[0])


def build_Em(A: YoungFunction, m: int, n: int, grid: Optional[Grid] = None) -> YoungFunction:
    """The Young function entering the Orlicz-Lorentz optimal target
    L(n/m, 1, E_m).

    e_m is recovered as the generalized inverse of

        e_m^{-1}(t) = ( int_{a^{-1}(t)}^{oo}
                          ( int_0^s a(tau)^{-m/(n-m)} dtau )^{-n/m}
                          a(s)^{-n/(n-m)} ds )^{-m/(n-m)},

    and E_m integrates e_m.  Divergence of the inner integral at 0 or of the
    outer integral at infinity is an error naming the failing integral;
    boundary infinities from the generalized inverse (flat derivatives) are
    legal and produce the degenerate-but-valid step shapes.
    """
    grid = grid or default_grid()
    if not (1 <= m < n):
        raise DomainError("orders must satisfy 1 <= m < n")
    r = m / (n - m)
    cond = condition_A(A, m, n)
    if cond.near_zero_converges is False:
        raise DomainError(
            "young ratio integral diverges near zero; no optimal Orlicz-Lorentz target",
            condition="young-ratio integral diverges near zero",
        )

    dz, di = A.deriv_zero_tail, A.deriv_infty_tail

    def inv_r(tail: Tail) -> Tail:
        if tail.kind == POWER:
            return Tail(POWER, -r * tail.power, tuple(-r * l for l in tail.logs))
        if tail.kind == EXP_DECAY:
            return Tail(EXP_GROWTH)
        if tail.kind == EXP_GROWTH:
            return Tail(EXP_DECAY)
        return Tail(UNKNOWN)

    inner = Profile(
        fn=lambda s: np.asarray(A.deriv(s), dtype=float) ** (-r),
        zero=inv_r(dz),
        infty=inv_r(di),
        support=(0.0, A.finite_cut if math.isfinite(A.finite_cut) else math.inf),
        breakpoints=(1.0,),
    )
    if inner.zero.integrable_at_zero() is False:
        raise DomainError("inner integral of the target construction diverges near zero",
                          condition="inner integral diverges")
    # wide cached range so the sampling below stays on the vectorized path
    wide = Grid(t_min=min(grid.t_min, 1e-13), t_max=max(grid.t_max, 1e13),
                nodes_per_decade=grid.nodes_per_decade, tail_policy=grid.tail_policy)
    K = CumulativeIntegral(inner, wide)

    q_out = n / (n - m)

    def outer_fn(s):
        s = np.asarray(s, dtype=float)
        Ks = K.prefix_at(s)
        a_s = np.asarray(A.deriv(s), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
            return Ks ** (-n / m) * a_s ** (-q_out)

    # tails of the outer integrand
    def outer_tail_at_infty() -> Tail:
        if inner.infty.integrable_at_infty():
            kt = Tail(POWER, 0.0)  # K tends to a constant
        else:
            it = inner.infty
            if it.kind == POWER:
                kt = Tail(POWER, it.power + 1.0, it.logs) if not it.is_critical() else \
                    Tail(POWER, 0.0, ((it.logs[0] if it.logs else 0.0) + 1.0,) + tuple(it.logs[1:]))
            else:
                kt = Tail(POWER, 0.0)
        if kt.kind == POWER:
            kpow = Tail(POWER, -(n / m) * kt.power, tuple(-(n / m) * l for l in kt.logs))
        else:
            kpow = kt
        if di.kind == POWER:
            apow = Tail(POWER, -q_out * di.power, tuple(-q_out * l for l in di.logs))
        elif di.kind == EXP_GROWTH:
            apow = Tail(EXP_DECAY)
        else:
            apow = Tail(UNKNOWN)
        return kpow.mul(apow)

    outer = Profile(
        fn=outer_fn,
        zero=Tail(POWER, 0.0),  # only the suffix from positive arguments is used
        infty=outer_tail_at_infty(),
        support=(0.0, A.finite_cut if math.isfinite(A.finite_cut) else math.inf),
        breakpoints=(1.0,),
    )
    if math.isinf(outer.support[1]) and outer.infty.integrable_at_infty() is False:
        raise DomainError("outer integral of the target construction diverges near infinity",
                          condition="outer integral diverges")
    Gcum = CumulativeIntegral(outer, wide, need_head=False)

    # sample where the inverse derivative stays inside the cached range
    probes = np.geomspace(wide.t_min * 10.0, wide.t_max / 10.0, 240)
    with np.errstate(over="ignore", invalid="ignore"):
        av = np.asarray(A.deriv(probes), dtype=float)
    pos = np.isfinite(av) & (av > 0)
    if pos.any():
        lo_t = max(float(av[pos].min()), 1e-280)
        hi_t = min(float(av[pos].max()), 1e280)
    else:
        lo_t, hi_t = 1e-9, 1e9
    if hi_t <= lo_t * 10.0:
        lo_t, hi_t = lo_t / 1e3, lo_t * 1e3
    ts = np.geomspace(lo_t, hi_t, 1101)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        ainv = np.asarray(A.deriv_inverse(ts), dtype=float)
        G = np.empty_like(ainv)
        finite_pos = np.isfinite(ainv) & (ainv > 0)
        G[finite_pos] = Gcum.suffix_at(ainv[finite_pos])
        G[ainv == 0.0] = Gcum.total
        G[np.isinf(ainv)] = 0.0
        e_inv = np.where(G > 0, G ** (-r), math.inf)

    finite = np.isfinite(e_inv) & (e_inv > 0)
    if not finite.any():
        raise DomainError("degenerate target construction: the inverse slope is "
                          "identically zero or infinite", condition="degenerate construction")

    # generalized inverse: e_m(s) = inf{t : e_inv(t) >= s}
    t_fin = ts[finite]
    v_fin = e_inv[finite]
    v_fin = np.maximum.accumulate(v_fin)
    jump_hi = float(ts[np.isinf(e_inv)].min()) if np.isinf(e_inv).any() else math.inf
    table = _MonotoneTable(v_fin, t_fin) if len(np.unique(v_fin)) >= 4 else None

    lo_slope = _fit_slope(t_fin[: max(8, len(t_fin) // 10)], v_fin[: max(8, len(t_fin) // 10)])

    def e_m(s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        out = np.empty_like(s)
        if table is not None:
            out = table(s)
            out = np.minimum(out, jump_hi)
            below = s < v_fin[0]
            if below.any() and lo_slope > 0:
                out[below] = t_fin[0] * (s[below] / v_fin[0]) ** (1.0 / lo_slope)
            above = s > v_fin[-1]
            if above.any():
                out[above] = jump_hi if math.isfinite(jump_hi) else \
                    t_fin[-1] * (s[above] / v_fin[-1]) ** (1.0 / max(_fit_slope(t_fin[-len(t_fin)//10:], v_fin[-len(t_fin)//10:]), 1e-9))
        else:
            # step shape: a constant plateau of e_inv jumping to infinity
            out = np.where(s > v_fin[0] if math.isfinite(v_fin[0]) else s > 0, jump_hi, 0.0)
            out = np.where(s <= 0, 0.0, out)
        return out

    # endpoint slopes of e_m for the cumulative machinery
    probe_lo = np.geomspace(max(v_fin[0] * 1e-6, 1e-280), v_fin[0], 16) if table is not None else np.geomspace(1e-6, 1.0, 16)
    probe_hi = np.geomspace(v_fin[-1], v_fin[-1] * 1e6, 16) if table is not None else np.geomspace(1.0, 1e6, 16)
    sz = _fit_slope(probe_lo, np.asarray(e_m(probe_lo)))
    si = _fit_slope(probe_hi, np.asarray(e_m(probe_hi)))
    zero_tail = Tail(POWER, max(sz, 0.0))
    infty_tail = Tail(POWER, max(si, 0.0))
    return DerivedYoung(e_m, zero_tail, infty_tail,
                        label=f"orlicz-lorentz target of {A.describe()} (m={m}, n={n})")


def orlicz_lorentz_admissible(A: YoungFunction, p: float) -> Optional[bool]:
    """Whether the integral of A(t)/t^{1+p} converges near infinity."""
    if math.isfinite(A.finite_cut):
        return False
    ai = A.infty_tail
    if ai.kind == EXP_GROWTH:
        return False
    if ai.kind == UNKNOWN:
        return None
    if ai.kind in (NULL, EXP_DECAY):
        return True
    shifted = Tail(POWER, ai.power - 1.0 - p, ai.logs)
    return shifted.integrable_at_infty()


def orlicz_lorentz_norm(fstar: Profile, p: float, q: float, A: YoungFunction,
                        grid: Optional[Grid] = None) -> float:
    """Luxemburg norm of t^{-1/p} f*(t^{1/q}), the Orlicz-Lorentz functional.

    Requires the admissibility integral of A(t)/t^{1+p} near infinity to
    converge; the transformed profile is nonincreasing whenever f* is.
    """
    grid = grid or default_grid()
    if not (p > 1) or not (q >= 1):
        raise DescriptorError("orlicz-lorentz parameters require p > 1, q >= 1")
    ok = orlicz_lorentz_admissible(A, p)
    if ok is False:
        raise DescriptorError(
            "Young function grows too fast: integral of A(t)/t^{1+p} diverges "
            "near infinity", condition="orlicz-lorentz admissibility fails")
    if ok is None:
        raise DescriptorError("Young function tails undeclared; admissibility undetermined",
                              condition="orlicz-lorentz admissibility undetermined")
    if not fstar.nonincreasing:
        raise DomainError("orlicz_lorentz_norm expects a nonincreasing profile")
    from .profiles import power_log_profile

    transformed = power_log_profile(-1.0 / p) * fstar.compose_power(1.0 / q)
    return luxemburg_norm(transformed, A, grid)


# -- domination and structure -------------------------------------------------


def domination_check(A: YoungFunction, B: YoungFunction, where: str,
                     grid: Optional[Grid] = None) -> bool:
    """Search for constants certifying B(t) <= A(c t) near zero or near
    infinity.  A bounded search over c in {2^k : k = -20..20} and candidate
    thresholds: a True is a witness, a False only means no witness was found.
    """
    if where not in ("zero", "infinity"):
        raise DomainError("where must be 'zero' or 'infinity'")
    if where == "zero":
        ts = np.geomspace(1e-10, 1.0, 400)
        thresholds = [1.0, 1e-2, 1e-4, 1e-6]
    else:
        ts = np.geomspace(1.0, 1e10, 400)
        thresholds = [1.0, 1e2, 1e4, 1e6]
    with np.errstate(over="ignore", invalid="ignore"):
        Bv = np.asarray(B(ts), dtype=float)
    for k in range(-20, 21):
        c = 2.0 ** k
        with np.errstate(over="ignore", invalid="ignore"):
            Av = np.asarray(A(c * ts), dtype=float)
        ok = (Bv <= Av) | np.isinf(Av) | (Bv == 0.0)
        for t0 in thresholds:
            sel = ts <= t0 if where == "zero" else ts >= t0
            if ok[sel].all():
                return True
    return False


class YoungStructure(NamedTuple):
    vanishes_at_zero: bool
    derivative_nondecreasing: bool
    convex_on_grid: bool
    integral_identity_ok: bool


def young_structure_report(A: YoungFunction, lo: float = 1e-6, hi: float = 1e6,
                           samples: int = 400) -> YoungStructure:
    """Numerical checks of the Young-function axioms on a log grid:
    A(0+) = 0, derivative nondecreasing, difference quotients nondecreasing,
    and A(t) equal to the integral of the derivative (1e-8 relative)."""
    ts = np.geomspace(lo, hi, samples)
    with np.errstate(over="ignore", invalid="ignore"):
        vals = np.asarray(A(ts), dtype=float)
        dv = np.asarray(A.deriv(ts), dtype=float)
    finite = np.isfinite(vals)
    ts_f, vals_f = ts[finite], vals[finite]
    vanishes = bool(vals_f[0] <= 1e-6 * (vals_f[-1] if len(vals_f) else 1.0) or vals_f[0] < 1e-200) \
        if len(vals_f) else True
    dv_f = dv[np.isfinite(dv)]
    nondecr = bool(np.all(np.diff(dv_f) >= -1e-9 * np.maximum(dv_f[1:], 1e-300)))
    pos = vals_f > 0
    quot = vals_f[pos] / ts_f[pos]
    convex = bool(np.all(np.diff(quot) >= -1e-7 * np.maximum(quot[1:], 1e-300)))
    # integral identity on a few probe points
    probes = np.geomspace(max(lo, 1e-3), min(hi, 1e3), 9)
    ok = True
    for t in probes:
        av = float(np.atleast_1d(A(np.array([t])))[0])
        if not math.isfinite(av):
            continue
        prof = Profile(fn=lambda s: np.asarray(A.deriv(s), dtype=float),
                       zero=A.deriv_zero_tail, infty=Tail(NULL),
                       support=(A.zero_cut, t), breakpoints=(1.0,))
        iv = integrate(prof, Grid(t_min=1e-8, t_max=max(t * 1.01, 1.01), nodes_per_decade=64))
        denom = max(abs(av), 1e-300)
        if av > 1e-250 and abs(iv - av) / denom > 1e-6:
            ok = False
    return YoungStructure(vanishes, nondecr, convex, ok)


# -- JSON wire format ---------------------------------------------------------


def young_from_dict(data: dict) -> YoungFunction:
    """Parse the fixed JSON schema {"form": ..., ...} into a Young function."""
    if not isinstance(data, dict) or "form" not in data:
        raise DescriptorError("young descriptor must be an object with a 'form' field")
    form = data["form"]
    if form == "power":
        return PowerYoung(p=float(data["p"]), c=float(data.get("c", 1.0)))
    if form == "powerlog":
        return PowerLogYoung(
            p0=float(data["p0"]), alpha0=float(data.get("alpha0", 0.0)),
            p_inf=float(data["pInf"]), alpha_inf=float(data.get("alphaInf", 0.0)),
            c=float(data.get("c", 1.0)))
    if form == "exp":
        sign = int(data.get("sign", 1))
        if sign >= 0:
            return ExpYoung(gamma=float(data["exponent"]), double=bool(data.get("double", False)))
        return ZeroExpYoung(s=abs(float(data["exponent"])))
    if form == "linfty":
        return LinftyYoung(cut=float(data.get("cut", 1.0)))
    if form == "table":
        tails = data.get("tails", {})

        def parse_tail(key):
            if key not in tails:
                return None
            tz = tails[key]
            return Tail(tz.get("kind", POWER), float(tz.get("power", 0.0)),
                        tuple(float(x) for x in tz.get("logs", ())))
        return TabulatedYoung(data["ts"], data["a"],
                              deriv_zero_tail=parse_tail("zero"),
                              deriv_infty_tail=parse_tail("infinity"))
    raise DescriptorError(f"unknown young form {form!r}")


def young_to_dict(A: YoungFunction) -> dict:
    if isinstance(A, PowerYoung):
        return {"form": "power", "p": A.p, "c": A.c}
    if isinstance(A, PowerLogYoung):
        return {"form": "powerlog", "p0": A.p0, "alpha0": A.alpha0,
                "pInf": A.p_inf, "alphaInf": A.alpha_inf, "c": A.c}
    if isinstance(A, ExpYoung):
        return {"form": "exp", "exponent": A.gamma, "sign": 1, "double": A.double}
    if isinstance(A, ZeroExpYoung):
        return {"form": "exp", "exponent": -A.s, "sign": -1, "double": False}
    if isinstance(A, LinftyYoung):
        return {"form": "linfty", "cut": A.cut}
    if isinstance(A, TabulatedYoung):
        return {"form": "table", "ts": list(A.ts), "a": list(A.a_vals)}
    return {"form": "derived", "label": A.describe()}
