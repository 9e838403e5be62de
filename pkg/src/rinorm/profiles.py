"""Functions on (0, oo) with declared endpoint asymptotics.

Every norm in this package reduces to integrals or suprema over (0, oo) of
weighted products of nonincreasing profiles.  Raw quadrature cannot certify
whether such integrals converge, so a Profile couples the callable that
evaluates it with a symbolic description of its leading behavior near 0 and
near infinity.  The symbolic part drives convergence decisions and the
truncation of improper tails; numerical values always come from the callable.

The leading behavior near an endpoint is modeled as

    c * t^power * L1(t)^l1 * L2(t)^l2 * L3(t)^l3

where L1(t) = 1 - log t (near 0) or 1 + log t (near infinity),
L2 = 1 + log L1, L3 = 1 + log L2, plus three non-power kinds: "exp-decay"
(faster than any power), "exp-growth", and "null" (identically zero beyond
the support).  Constants are never stored: they are recovered from the
callable at the truncation boundary when needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .errors import DomainError

POWER = "power"
EXP_DECAY = "exp-decay"
EXP_GROWTH = "exp-growth"
NULL = "null"
UNKNOWN = "unknown"

#: tolerance for detecting the critical power -1 in convergence tests
CRITICAL_EPS = 1e-12


def _pad(a: tuple, b: tuple) -> tuple[tuple, tuple]:
    k = max(len(a), len(b))
    return a + (0.0,) * (k - len(a)), b + (0.0,) * (k - len(b))


@dataclass(frozen=True)
class Tail:
    """Leading asymptotic behavior at one endpoint of (0, oo)."""

    kind: str = POWER
    power: float = 0.0
    logs: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in (POWER, EXP_DECAY, EXP_GROWTH, NULL, UNKNOWN):
            raise DomainError(f"unknown tail kind {self.kind!r}")

    # -- algebra -----------------------------------------------------------

    def mul(self, other: "Tail") -> "Tail":
        kinds = {self.kind, other.kind}
        if UNKNOWN in kinds:
            return Tail(UNKNOWN)
        if NULL in kinds:
            return Tail(NULL)
        if kinds == {EXP_DECAY, EXP_GROWTH}:
            # the outcome depends on the relative exponential rates, which we
            # do not track; callers must not form such products
            raise DomainError("indeterminate product of exp-decay and exp-growth tails")
        if EXP_DECAY in kinds:
            return Tail(EXP_DECAY)
        if EXP_GROWTH in kinds:
            return Tail(EXP_GROWTH)
        la, lb = _pad(self.logs, other.logs)
        return Tail(POWER, self.power + other.power, tuple(x + y for x, y in zip(la, lb)))

    def pow(self, q: float) -> "Tail":
        if q <= 0:
            raise DomainError("tail powers require a positive exponent")
        if self.kind in (NULL, UNKNOWN):
            return self
        if self.kind in (EXP_DECAY, EXP_GROWTH):
            return self
        return Tail(POWER, q * self.power, tuple(q * l for l in self.logs))

    def compose_power(self, r: float) -> "Tail":
        """Tail of t -> f(t^r) at the same endpoint, r > 0.

        (t^r)^a L1(t^r)^l behaves like t^{ra} L1(t)^l up to constants, and
        deeper log layers shift only by additive constants.
        """
        if r <= 0:
            raise DomainError("compose_power requires r > 0")
        if self.kind != POWER:
            return self
        return Tail(POWER, r * self.power, self.logs)

    def inverse(self) -> "Tail":
        """Tail of the inverse function of a monotone map with this tail.

        For f ~ c t^k L1^l (k != 0), f^{-1}(y) ~ c' y^{1/k} L1(y)^{-l/k}.
        """
        if self.kind != POWER or abs(self.power) < CRITICAL_EPS:
            raise DomainError("tail inversion requires a nonzero power-kind tail")
        k = self.power
        return Tail(POWER, 1.0 / k, tuple(-l / k for l in self.logs))

    # -- convergence -------------------------------------------------------

    def _logs_converge(self) -> bool:
        # power is exactly critical: walk the log layers lexicographically
        for l in self.logs:
            if l < -1 - CRITICAL_EPS:
                return True
            if l > -1 + CRITICAL_EPS:
                return False
        return False  # implicit trailing exponent 0

    def integrable_at_infty(self) -> Optional[bool]:
        if self.kind == NULL or self.kind == EXP_DECAY:
            return True
        if self.kind == EXP_GROWTH:
            return False
        if self.kind == UNKNOWN:
            return None
        if self.power < -1 - CRITICAL_EPS:
            return True
        if self.power > -1 + CRITICAL_EPS:
            return False
        return self._logs_converge()

    def integrable_at_zero(self) -> Optional[bool]:
        if self.kind == NULL or self.kind == EXP_DECAY:
            return True
        if self.kind == EXP_GROWTH:
            return False
        if self.kind == UNKNOWN:
            return None
        if self.power > -1 + CRITICAL_EPS:
            return True
        if self.power < -1 - CRITICAL_EPS:
            return False
        return self._logs_converge()

    def is_critical(self) -> bool:
        return self.kind == POWER and abs(self.power + 1.0) <= CRITICAL_EPS

    def decay_margin(self) -> float:
        """|power + 1|, the exponential rate of the tail integrand after the
        log substitution.  Meaningful only for non-critical power tails."""
        return abs(self.power + 1.0)


UNKNOWN_TAIL = Tail(UNKNOWN)


def broken_log_value(t: np.ndarray, depth: int) -> np.ndarray:
    """L1, L2 or L3 evaluated with the broken convention at t=1."""
    t = np.asarray(t, dtype=float)
    l1 = np.where(t < 1.0, 1.0 - np.log(np.maximum(t, 1e-300)), 1.0 + np.log(np.maximum(t, 1.0)))
    if depth == 1:
        return l1
    l2 = 1.0 + np.log(l1)
    if depth == 2:
        return l2
    if depth == 3:
        return 1.0 + np.log(l2)
    raise DomainError("log layers supported up to depth 3")


@dataclass(frozen=True)
class Profile:
    """A nonnegative function on (0, oo) plus its symbolic endpoint data.

    fn must accept and return numpy arrays.  `support` = (a, b) declares that
    the function vanishes outside (a, b); `breakpoints` lists interior jump or
    kink locations that quadrature must respect.  `zero_limit`/`infty_limit`
    record finite endpoint limits when known (used by supremum norms, where a
    grid maximum alone would miss mass between 0 and the first node).
    """

    fn: Callable[[np.ndarray], np.ndarray]
    zero: Tail = Tail()
    infty: Tail = Tail()
    support: tuple[float, float] = (0.0, math.inf)
    breakpoints: tuple[float, ...] = ()
    nonincreasing: bool = False
    zero_limit: Optional[float] = None
    infty_limit: Optional[float] = None

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
            out = np.asarray(self.fn(arr), dtype=float)
        lo, hi = self.support
        if lo > 0.0 or math.isfinite(hi):
            out = np.where((arr > lo) & (arr < hi), out, 0.0)
        return float(out[0]) if scalar else out

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "Profile") -> "Profile":
        if not isinstance(other, Profile):
            return NotImplemented
        f, g = self.fn, other.fn
        lo = max(self.support[0], other.support[0])
        hi = min(self.support[1], other.support[1])
        bps = tuple(sorted({b for b in self.breakpoints + other.breakpoints if lo < b < hi}))

        def prod(t):
            return np.asarray(f(t), dtype=float) * np.asarray(g(t), dtype=float)

        def lim(a, b):
            return a * b if (a is not None and b is not None) else None

        return Profile(
            fn=prod,
            zero=self.zero.mul(other.zero) if lo == 0.0 else Tail(NULL),
            infty=self.infty.mul(other.infty) if math.isinf(hi) else Tail(NULL),
            support=(lo, hi),
            breakpoints=bps,
            nonincreasing=self.nonincreasing and other.nonincreasing,
            zero_limit=lim(self.zero_limit, other.zero_limit) if lo == 0.0 else None,
            infty_limit=lim(self.infty_limit, other.infty_limit) if math.isinf(hi) else None,
        )

    def scaled(self, c: float) -> "Profile":
        if c < 0:
            raise DomainError("profiles are nonnegative; scale factor must be >= 0")
        f = self.fn
        return replace(
            self,
            fn=lambda t: c * np.asarray(f(t), dtype=float),
            zero_limit=None if self.zero_limit is None else c * self.zero_limit,
            infty_limit=None if self.infty_limit is None else c * self.infty_limit,
        )

    def __pow__(self, q: float) -> "Profile":
        if q <= 0:
            raise DomainError("profile powers require q > 0")
        f = self.fn

        def powd(t):
            return np.asarray(f(t), dtype=float) ** q

        def lim(a):
            return None if a is None else a ** q

        return replace(
            self,
            fn=powd,
            zero=self.zero.pow(q),
            infty=self.infty.pow(q),
            zero_limit=lim(self.zero_limit),
            infty_limit=lim(self.infty_limit),
        )

    def compose_power(self, r: float) -> "Profile":
        """The profile t -> f(t^r), r > 0."""
        if r <= 0:
            raise DomainError("compose_power requires r > 0")
        f = self.fn
        lo, hi = self.support

        def comp(t):
            return np.asarray(f(np.asarray(t, dtype=float) ** r), dtype=float)

        return Profile(
            fn=comp,
            zero=self.zero.compose_power(r),
            infty=self.infty.compose_power(r),
            support=(lo ** (1.0 / r) if lo > 0 else 0.0, hi ** (1.0 / r) if math.isfinite(hi) else math.inf),
            breakpoints=tuple(b ** (1.0 / r) for b in self.breakpoints),
            nonincreasing=self.nonincreasing,
            zero_limit=self.zero_limit,
            infty_limit=self.infty_limit,
        )


# -- constructors ------------------------------------------------------------


def constant_profile(c: float) -> Profile:
    if c < 0:
        raise DomainError("profiles are nonnegative")
    return Profile(
        fn=lambda t: np.full_like(np.asarray(t, dtype=float), c),
        zero=Tail(POWER, 0.0),
        infty=Tail(POWER, 0.0),
        nonincreasing=True,
        zero_limit=c,
        infty_limit=c,
    )


def indicator_profile(a: float, height: float = 1.0) -> Profile:
    """height * chi_(0, a)."""
    if a <= 0:
        raise DomainError("indicator endpoint must be positive")
    return Profile(
        fn=lambda t: np.where(np.asarray(t, dtype=float) < a, height, 0.0),
        zero=Tail(POWER, 0.0),
        infty=Tail(NULL),
        support=(0.0, a),
        breakpoints=(a,),
        nonincreasing=True,
        zero_limit=height,
    )


def power_log_profile(power: float, layers: tuple[tuple[float, float], ...] = (),
                      coef: float = 1.0) -> Profile:
    """coef * t^power * prod_j Lj(t)^{layer j exponent}, broken at t = 1.

    Each layer is an exponent pair (near zero, near infinity) applied to the
    j-th nested broken logarithm.
    """
    if len(layers) > 3:
        raise DomainError("log layers supported up to depth 3")

    def fn(t):
        t = np.asarray(t, dtype=float)
        out = coef * t ** power if power != 0.0 else np.full_like(t, coef)
        for depth, (a0, ai) in enumerate(layers, start=1):
            ell = broken_log_value(t, depth)
            expo = np.where(t < 1.0, a0, ai)
            out = out * ell ** expo
        return out

    zero_logs = tuple(l[0] for l in layers)
    inf_logs = tuple(l[1] for l in layers)
    has_kink = any(l[0] != l[1] for l in layers)
    mono = power < 0 or (power == 0.0 and not layers)
    return Profile(
        fn=fn,
        zero=Tail(POWER, power, zero_logs),
        infty=Tail(POWER, power, inf_logs),
        breakpoints=(1.0,) if has_kink else (),
        nonincreasing=mono,
        zero_limit=coef if power == 0.0 and not zero_logs else None,
        infty_limit=coef if power == 0.0 and not inf_logs else None,
    )


def exp_profile(rate: float = 1.0, power: float = 1.0) -> Profile:
    """exp(-rate * t^power), rate > 0, power > 0.  Nonincreasing, unit at 0."""
    if rate <= 0 or power <= 0:
        raise DomainError("exp_profile requires positive rate and power")

    def fn(t):
        t = np.asarray(t, dtype=float)
        return np.exp(-rate * t ** power)

    return Profile(
        fn=fn,
        zero=Tail(POWER, 0.0),
        infty=Tail(EXP_DECAY),
        nonincreasing=True,
        zero_limit=1.0,
    )


def callable_profile(fn, zero: Tail, infty: Tail, support=(0.0, math.inf),
                     breakpoints=(), nonincreasing=False,
                     zero_limit=None, infty_limit=None) -> Profile:
    return Profile(fn=fn, zero=zero, infty=infty, support=support,
                   breakpoints=tuple(breakpoints), nonincreasing=nonincreasing,
                   zero_limit=zero_limit, infty_limit=infty_limit)


def sampled_profile(ts: np.ndarray, vals: np.ndarray, zero: Tail, infty: Tail,
                    nonincreasing: bool = True, zero_limit: Optional[float] = None) -> Profile:
    """Monotone interpolation through exact (t, value) pairs.

    Interpolates in log-log space with a shape-preserving PCHIP spline and
    extrapolates beyond the sampled range with the declared tails, constants
    matched at the boundary samples.  Values that underflow are reported as 0.
    """
    from scipy.interpolate import PchipInterpolator

    ts = np.asarray(ts, dtype=float)
    vals = np.asarray(vals, dtype=float)
    keep = (ts > 0) & (vals > 0) & np.isfinite(ts) & np.isfinite(vals)
    ts, vals = ts[keep], vals[keep]
    order = np.argsort(ts)
    ts, vals = ts[order], vals[order]
    # drop duplicate abscissae (keep the larger value: rearrangements stack)
    uniq_t, idx = np.unique(ts, return_index=True)
    if len(uniq_t) < 4:
        raise DomainError("sampled profile needs at least 4 distinct positive samples")
    vals = np.maximum.reduceat(vals, idx)
    ts = uniq_t
    if nonincreasing:
        vals = np.minimum.accumulate(vals)
        # strictify for log-space interpolation stability
        vals = np.maximum(vals, 1e-300)
    spline = PchipInterpolator(np.log(ts), np.log(vals), extrapolate=False)
    t_lo, t_hi = ts[0], ts[-1]
    v_lo, v_hi = vals[0], vals[-1]

    def _tail_factor(t, anchor_t, tail: Tail):
        # ratio form of the declared tail, constant matched at the anchor
        if tail.kind == NULL:
            return np.zeros_like(t)
        if tail.kind == EXP_DECAY:
            return np.zeros_like(t)  # beyond sampled range the values are negligible
        ratio = (t / anchor_t) ** tail.power
        for depth, l in enumerate(tail.logs, start=1):
            if l != 0.0:
                ratio = ratio * (broken_log_value(t, depth) / broken_log_value(np.asarray(anchor_t), depth)) ** l
        return ratio

    def fn(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        inside = (t >= t_lo) & (t <= t_hi)
        if np.any(inside):
            out[inside] = np.exp(spline(np.log(t[inside])))
        below = t < t_lo
        if np.any(below):
            out[below] = v_lo * _tail_factor(t[below], t_lo, zero)
        above = t > t_hi
        if np.any(above):
            out[above] = v_hi * _tail_factor(t[above], t_hi, infty)
        return out

    return Profile(
        fn=fn,
        zero=zero,
        infty=infty,
        nonincreasing=nonincreasing,
        zero_limit=zero_limit if zero_limit is not None else (v_lo if zero.kind == POWER and zero.power == 0.0 and not any(zero.logs) else None),
        breakpoints=(),
    )
