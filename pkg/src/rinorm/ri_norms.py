"""Rearrangement-invariant norm evaluators and space descriptors.

Covers Lebesgue, Lorentz, Lorentz-Zygmund with up to three broken-log layers,
the two restricted-weight functionals Y1 and Y2, Orlicz and Orlicz-Lorentz
spaces, and intersections with L^inf.  All evaluation happens on the
representation interval (0, oo): callers pass the nonincreasing rearrangement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

import numpy as np

from .errors import DescriptorError, DomainError
from .orlicz import (
    YoungFunction,
    luxemburg_norm,
    orlicz_lorentz_norm,
    young_from_dict,
    young_to_dict,
)
from .profiles import (
    NULL,
    POWER,
    Profile,
    Tail,
    broken_log_value,
    callable_profile,
    indicator_profile,
    power_log_profile,
)
from .quadrature import Grid, default_grid, integrate, profile_sup
from .rearrange import StepProfile

__all__ = [
    "SpaceDescriptor",
    "Lebesgue",
    "Lorentz",
    "LorentzZygmund",
    "SpecialY1",
    "SpecialY2",
    "OrliczSpace",
    "OrliczLorentz",
    "IntersectionWithLinfty",
    "ValidityResult",
    "Associate",
    "broken_log",
    "lz_validity",
    "ri_norm",
    "fundamental_function",
    "associate_descriptor",
    "dual_lower_bound",
    "as_profile",
    "space_from_dict",
    "space_to_dict",
    "conjugate_exponent",
]

INF = math.inf


def conjugate_exponent(p: float) -> float:
    """p' with 1/p + 1/p' = 1; conjugates 1 and inf exchange."""
    if p == 1.0:
        return INF
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def broken_log(t: float, layer: tuple[float, float], depth: int = 1):
    """Broken logarithm: (1 - log t)^{a0} for t < 1, (1 + log t)^{a_inf} for
    t >= 1 at depth 1; deeper layers stack the logarithm before raising."""
    if depth not in (1, 2, 3):
        raise DomainError("log layers supported up to depth 3")
    arr = np.asarray(t, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr <= 0):
        raise DomainError("broken logarithm requires t > 0")
    base = broken_log_value(arr, depth)
    expo = np.where(arr < 1.0, layer[0], layer[1])
    out = base ** expo
    return float(out[0]) if scalar else out


class ValidityResult(NamedTuple):
    valid: Optional[bool]  # None: outside the single-layer criterion
    clause: str


def lz_validity(p: float, q: float, layers) -> ValidityResult:
    """Whether the single-log-layer functional is equivalent to an r.i. norm.

    True exactly in the four clauses: p=q=1 with a0>=0, a_inf<=0; p in
    (1, inf); p=inf, q<inf, a0 + 1/q < 0; p=q=inf with a0<=0.  Descriptors
    with more than one layer are reported as not checked by this criterion.
    """
    layers = tuple(tuple(l) for l in layers)
    if len(layers) > 1:
        return ValidityResult(None, "more than one log layer: not covered by the "
                                    "single-layer criterion")
    a0, a_inf = layers[0] if layers else (0.0, 0.0)
    if p == 1.0 and q == 1.0:
        if a0 >= 0.0 and a_inf <= 0.0:
            return ValidityResult(True, "p=q=1, a0>=0, aInf<=0")
        return ValidityResult(False, "p=q=1 requires a0>=0 and aInf<=0")
    if 1.0 < p < INF:
        return ValidityResult(True, "p in (1, inf)")
    if math.isinf(p) and q < INF:
        if a0 + 1.0 / q < 0.0:
            return ValidityResult(True, "p=inf, q<inf, a0+1/q<0")
        return ValidityResult(False, "p=inf, q<inf requires a0+1/q<0")
    if math.isinf(p) and math.isinf(q):
        if a0 <= 0.0:
            return ValidityResult(True, "p=q=inf, a0<=0")
        return ValidityResult(False, "p=q=inf requires a0<=0")
    return ValidityResult(False, "p=1 with q>1 is only a quasi-norm")


class SpaceDescriptor:
    """Base class for r.i. space descriptors; all concrete families below."""

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Lebesgue(SpaceDescriptor):
    p: float

    def __post_init__(self):
        if not (1.0 <= self.p):
            raise DescriptorError("Lebesgue exponent requires p >= 1")

    def describe(self) -> str:
        return "L^inf" if math.isinf(self.p) else f"L^{self.p:g}"


@dataclass(frozen=True)
class Lorentz(SpaceDescriptor):
    p: float
    q: float

    def __post_init__(self):
        if not (self.p >= 1.0 and self.q >= 1.0):
            raise DescriptorError("Lorentz exponents require p, q >= 1")
        if math.isinf(self.p) and not math.isinf(self.q):
            raise DescriptorError("L^{inf, q} with q < inf contains only the zero "
                                  "function", condition="degenerate lorentz pair")

    @property
    def quasi_norm(self) -> bool:
        return self.p == 1.0 and self.q > 1.0

    def describe(self) -> str:
        def s(x):
            return "inf" if math.isinf(x) else f"{x:g}"
        return f"L^({s(self.p)},{s(self.q)})"


@dataclass(frozen=True)
class LorentzZygmund(SpaceDescriptor):
    p: float
    q: float
    layers: tuple[tuple[float, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(tuple(float(x) for x in l) for l in self.layers))
        if not (self.p >= 1.0 and self.q >= 1.0):
            raise DescriptorError("Lorentz-Zygmund exponents require p, q >= 1")
        if not (1 <= len(self.layers) <= 3):
            raise DescriptorError("Lorentz-Zygmund descriptors carry 1 to 3 log layers")

    def validity(self) -> ValidityResult:
        return lz_validity(self.p, self.q, self.layers)

    def describe(self) -> str:
        def s(x):
            return "inf" if math.isinf(x) else f"{x:g}"
        ls = ",".join(f"[{a:g},{b:g}]" for a, b in self.layers)
        return f"L^({s(self.p)},{s(self.q)};{ls})"


@dataclass(frozen=True)
class SpecialY1(SpaceDescriptor):
    """Weighted L^1 functional over (0,1): t^{-1} l^{a0-1}(t) f*(t).
    The profile beyond t=1 is ignored by definition."""

    alpha0: float

    def __post_init__(self):
        if not (self.alpha0 < 0.0):
            raise DescriptorError("the restricted weight requires a0 < 0 for a "
                                  "finite functional on bounded profiles")

    def describe(self) -> str:
        return f"Y1(a0={self.alpha0:g})"


@dataclass(frozen=True)
class SpecialY2(SpaceDescriptor):
    """Essential sup plus the weighted L^q tail over (1, oo) with weight
    t^{-1/q} l^{a_inf - 1}(t)."""

    q: float
    alpha_inf: float

    def __post_init__(self):
        if not (1.0 <= self.q < INF):
            raise DescriptorError("Y2 requires q in [1, inf)")

    def describe(self) -> str:
        return f"Y2(q={self.q:g},aInf={self.alpha_inf:g})"


@dataclass(frozen=True)
class OrliczSpace(SpaceDescriptor):
    young: YoungFunction

    def describe(self) -> str:
        return f"L^A[{self.young.describe()}]"


@dataclass(frozen=True)
class OrliczLorentz(SpaceDescriptor):
    p: float
    q: float
    young: YoungFunction

    def __post_init__(self):
        if not (self.p > 1.0 and self.q >= 1.0):
            raise DescriptorError("Orlicz-Lorentz parameters require p > 1, q >= 1")

    def describe(self) -> str:
        return f"L({self.p:g},{self.q:g},{self.young.describe()})"


@dataclass(frozen=True)
class IntersectionWithLinfty(SpaceDescriptor):
    inner: SpaceDescriptor

    def describe(self) -> str:
        return f"{self.inner.describe()} ^ L^inf"


def as_profile(fstar: Union[Profile, StepProfile]) -> Profile:
    if isinstance(fstar, StepProfile):
        return fstar.to_profile()
    if isinstance(fstar, Profile):
        return fstar
    raise DomainError("expected a Profile or StepProfile")


def _restrict_above(profile: Profile, cut: float) -> Profile:
    f = profile.fn
    lo, hi = profile.support
    return callable_profile(
        fn=lambda t: np.where(np.asarray(t, dtype=float) >= cut,
                              np.asarray(f(t), dtype=float), 0.0),
        zero=Tail(NULL), infty=profile.infty if math.isinf(hi) else Tail(NULL),
        support=(max(lo, cut), hi),
        breakpoints=tuple(b for b in profile.breakpoints if b > cut) + (cut,),
        nonincreasing=False,
        infty_limit=profile.infty_limit,
    )


def _lz_weighted_integral(fstar: Profile, p: float, q: float, layers, grid: Grid) -> float:
    scaled = tuple((q * a, q * b) for a, b in layers)
    w = power_log_profile(q / p - 1.0 if not math.isinf(p) else -1.0, scaled)
    return integrate(w * fstar ** q, grid) ** (1.0 / q)


def ri_norm(fstar: Union[Profile, StepProfile], space: SpaceDescriptor,
            grid: Optional[Grid] = None) -> float:
    """Norm of a nonincreasing profile in the given space; +inf is a value.

    Lorentz quasi-norm parameter ranges evaluate normally (flagged on the
    descriptor); single-layer Lorentz-Zygmund descriptors failing the validity
    criterion raise, naming the violated clause.
    """
    grid = grid or default_grid()
    f = as_profile(fstar)

    if isinstance(space, Lebesgue):
        if math.isinf(space.p):
            return profile_sup(f, grid)
        if space.p == 1.0:
            return integrate(f, grid)
        return integrate(f ** space.p, grid) ** (1.0 / space.p)

    if isinstance(space, Lorentz):
        if math.isinf(space.q):
            return profile_sup(power_log_profile(1.0 / space.p) * f, grid)
        return _lz_weighted_integral(f, space.p, space.q, (), grid)

    if isinstance(space, LorentzZygmund):
        v = space.validity()
        if v.valid is False:
            raise DescriptorError(
                f"descriptor fails the r.i. validity criterion: {v.clause}",
                condition=v.clause)
        if math.isinf(space.q):
            w = power_log_profile(1.0 / space.p if not math.isinf(space.p) else 0.0,
                                  space.layers)
            return profile_sup(w * f, grid)
        return _lz_weighted_integral(f, space.p, space.q, space.layers, grid)

    if isinstance(space, SpecialY1):
        w = power_log_profile(-1.0, ((space.alpha0 - 1.0, 0.0),))
        cut = indicator_profile(1.0)
        return integrate(w * cut * f, grid)

    if isinstance(space, SpecialY2):
        sup = profile_sup(f, grid)
        q = space.q
        w = power_log_profile(-1.0, ((0.0, (space.alpha_inf - 1.0) * q),))
        tail_part = integrate(_restrict_above(w * f ** q, 1.0), grid) ** (1.0 / q)
        return sup + tail_part

    if isinstance(space, OrliczSpace):
        return luxemburg_norm(f, space.young, grid)

    if isinstance(space, OrliczLorentz):
        return orlicz_lorentz_norm(f, space.p, space.q, space.young, grid)

    if isinstance(space, IntersectionWithLinfty):
        return max(ri_norm(f, space.inner, grid), profile_sup(f, grid))

    raise DescriptorError(f"unknown space descriptor {space!r}")


def fundamental_function(space: SpaceDescriptor, t: float,
                         grid: Optional[Grid] = None) -> float:
    """Norm of the indicator of a set of measure t (0 at t=0)."""
    if t < 0:
        raise DomainError("measures are nonnegative")
    if t == 0.0:
        return 0.0
    if isinstance(space, Lebesgue):
        return 1.0 if math.isinf(space.p) else t ** (1.0 / space.p)
    if isinstance(space, Lorentz):
        p, q = space.p, space.q
        if math.isinf(q):
            return t ** (1.0 / p) if not math.isinf(p) else 1.0
        return (p / q) ** (1.0 / q) * t ** (1.0 / p)
    return ri_norm(indicator_profile(t), space, grid)


class Associate(NamedTuple):
    descriptor: SpaceDescriptor
    pairing_constant: float   # proven: int f* g* <= pairing_constant * |f| * |g|'
    fundamental_ratio: float  # phi_X(t) * phi_X'(t) == fundamental_ratio * t


def associate_descriptor(space: SpaceDescriptor) -> Optional[Associate]:
    """Exact associate for Lebesgue pairs; the classical up-to-equivalence
    associate for Lorentz pairs with p in (1, inf).  Anything else returns
    None (unsupported) and callers must fall back to dual_lower_bound.

    The recorded constants: the pairing inequality
    int f* g* <= |f|_{p,q} |g|_{p',q'} holds with constant 1 (rearranged
    Hoelder with exponents (q, q')), and the fundamental functions multiply to
    exactly (p/q)^{1/q} (p'/q')^{1/q'} * t.
    """
    if isinstance(space, Lebesgue):
        return Associate(Lebesgue(conjugate_exponent(space.p)), 1.0, 1.0)
    if isinstance(space, Lorentz):
        p, q = space.p, space.q
        if p == q:
            return Associate(Lebesgue(conjugate_exponent(p)), 1.0, 1.0) if p in (1.0, INF) \
                else Associate(Lorentz(conjugate_exponent(p), conjugate_exponent(q)), 1.0,
                               _fundamental_ratio(p, q))
        if 1.0 < p < INF:
            return Associate(Lorentz(conjugate_exponent(p), conjugate_exponent(q)), 1.0,
                             _fundamental_ratio(p, q))
        return None
    return None


def _fundamental_ratio(p: float, q: float) -> float:
    def phi_coef(pp, qq):
        if math.isinf(qq):
            return 1.0
        return (pp / qq) ** (1.0 / qq)
    return phi_coef(p, q) * phi_coef(conjugate_exponent(p), conjugate_exponent(q))


# -- pairing lower bound ------------------------------------------------------


def _van_der_corput(k: int, base: int = 2) -> float:
    v, denom = 0.0, 1.0
    k += 1
    while k:
        denom *= base
        k, rem = divmod(k, base)
        v += rem / denom
    return v


def _indicator_candidates(count: int) -> list[Profile]:
    out = [indicator_profile(1.0)]
    for k in range(max(count - 1, 0)):
        a = 10.0 ** (8.0 * _van_der_corput(k) - 4.0)
        out.append(indicator_profile(a))
    return out[:count]


def _power_of_g_candidates(g: Profile, count: int) -> list[Profile]:
    thetas = [1.0]
    for k in range(max(count - 1, 0)):
        thetas.append(4.0 * _van_der_corput(k, base=3))
    out = []
    for th in thetas[:count]:
        if th <= 1e-9:
            continue
        out.append(g ** th)
    return out


def _truncated_power_candidates(count: int) -> list[Profile]:
    out = []
    k = 0
    betas = (0.5, 1.0, 0.25, 2.0, 4.0)
    while len(out) < count:
        beta = betas[k % len(betas)]
        a = 10.0 ** (8.0 * _van_der_corput(k // len(betas)) - 4.0)

        def fn(t, a=a, beta=beta):
            t = np.asarray(t, dtype=float)
            return np.minimum(1.0, (a / t) ** beta)

        out.append(callable_profile(
            fn, zero=Tail(POWER, 0.0), infty=Tail(POWER, -beta),
            breakpoints=(a,), nonincreasing=True, zero_limit=1.0))
        k += 1
    return out


def dual_lower_bound(g: Union[Profile, StepProfile], space: SpaceDescriptor,
                     candidates: int = 64, grid: Optional[Grid] = None) -> float:
    """Certified lower bound for the associate norm of g:
    max over a nested family of nonincreasing candidates f of
    (int f g) / |f|_space.  Nondecreasing in the candidate count."""
    grid = grid or default_grid()
    g = as_profile(g)
    if profile_sup(g, grid) == 0.0:
        return 0.0
    n_ind = max(candidates // 3, 1)
    n_pow = max(candidates // 3, 1)
    n_tru = max(candidates - n_ind - n_pow, 0)
    family = _indicator_candidates(n_ind) + _power_of_g_candidates(g, n_pow) \
        + _truncated_power_candidates(n_tru)
    best = 0.0
    for f in family[:candidates]:
        denom = ri_norm(f, space, grid)
        if not (0.0 < denom < INF):
            continue
        num = integrate(f * g, grid)
        if math.isfinite(num):
            best = max(best, num / denom)
    return best


# -- JSON wire format ---------------------------------------------------------


def _num(x):
    if isinstance(x, str):
        if x.lower() in ("inf", "infinity"):
            return INF
        return float(x)
    return float(x)


def space_from_dict(data: dict) -> SpaceDescriptor:
    """Parse the fixed JSON schema:
    {"family": "...", "p": ..., "q": ..., "layers": [[a0, aInf], ...]}."""
    if not isinstance(data, dict) or "family" not in data:
        raise DescriptorError("space descriptor must be an object with a 'family' field")
    fam = data["family"]
    if fam == "lebesgue":
        return Lebesgue(_num(data["p"]))
    if fam == "lorentz":
        return Lorentz(_num(data["p"]), _num(data["q"]))
    if fam == "lorentz-zygmund":
        layers = tuple(tuple(float(x) for x in l) for l in data["layers"])
        return LorentzZygmund(_num(data["p"]), _num(data["q"]), layers)
    if fam == "y1":
        return SpecialY1(float(data["alpha0"]))
    if fam == "y2":
        return SpecialY2(_num(data["q"]), float(data["alphaInf"]))
    if fam == "orlicz":
        return OrliczSpace(young_from_dict(data["young"]))
    if fam == "orlicz-lorentz":
        return OrliczLorentz(_num(data["p"]), _num(data["q"]),
                             young_from_dict(data["young"]))
    if fam == "intersection-linfty":
        return IntersectionWithLinfty(space_from_dict(data["inner"]))
    raise DescriptorError(f"unknown space family {fam!r}")


def _jnum(x: float):
    return "inf" if math.isinf(x) else x


def space_to_dict(space: SpaceDescriptor) -> dict:
    if isinstance(space, Lebesgue):
        return {"family": "lebesgue", "p": _jnum(space.p)}
    if isinstance(space, Lorentz):
        return {"family": "lorentz", "p": _jnum(space.p), "q": _jnum(space.q)}
    if isinstance(space, LorentzZygmund):
        return {"family": "lorentz-zygmund", "p": _jnum(space.p), "q": _jnum(space.q),
                "layers": [list(l) for l in space.layers]}
    if isinstance(space, SpecialY1):
        return {"family": "y1", "alpha0": space.alpha0}
    if isinstance(space, SpecialY2):
        return {"family": "y2", "q": _jnum(space.q), "alphaInf": space.alpha_inf}
    if isinstance(space, OrliczSpace):
        return {"family": "orlicz", "young": young_to_dict(space.young)}
    if isinstance(space, OrliczLorentz):
        return {"family": "orlicz-lorentz", "p": _jnum(space.p), "q": _jnum(space.q),
                "young": young_to_dict(space.young)}
    if isinstance(space, IntersectionWithLinfty):
        return {"family": "intersection-linfty", "inner": space_to_dict(space.inner)}
    raise DescriptorError(f"unknown space descriptor {space!r}")
