"""Optimal target spaces for Poincare-type inequalities: the sigma functional,
the admissibility test, and the closed-form case tables.

The optimal rearrangement-invariant target of a source space X for m-th order
gradients in R^n carries the associate norm of

    sigma_m(f) = | t^{m/n} f**(t) |_{X'(0, oo)}.

Closed-form targets are returned by the case tables when the source belongs
to a cataloged family; otherwise the dual oracle provides certified lower
bounds, never a silent approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

import numpy as np

from .errors import CoverageError, DomainError
from .orlicz import (
    ExpYoung,
    LinftyYoung,
    PowerLogYoung,
    YoungFunction,
    ZeroExpYoung,
    build_Em,
    condition_A,
)
from .profiles import POWER, Profile, Tail, callable_profile, power_log_profile
from .quadrature import Grid, default_grid, integrate, maximal_profile, profile_sup
from .rearrange import StepProfile, rearrange_profile
from .ri_norms import (
    Associate,
    IntersectionWithLinfty,
    Lebesgue,
    Lorentz,
    LorentzZygmund,
    OrliczLorentz,
    OrliczSpace,
    SpaceDescriptor,
    SpecialY1,
    SpecialY2,
    as_profile,
    associate_descriptor,
    conjugate_exponent,
    dual_lower_bound,
    fundamental_function,
    ri_norm,
)

__all__ = [
    "TargetSpec",
    "CaseRow",
    "OrliczCaseRow",
    "admissibility",
    "sigma_m",
    "target_norm",
    "glz_case_table",
    "orlicz_case_table",
    "em_target",
    "target_phi_diverges",
]

INF = math.inf


@dataclass(frozen=True)
class TargetSpec:
    """A resolved source -> target assignment."""

    source: SpaceDescriptor
    m: int
    n: int
    target: Optional[SpaceDescriptor]
    provenance: str  # "case-table" | "dual-oracle"
    row_id: str = ""
    unique_polynomial: Optional[bool] = None

    def __post_init__(self):
        if not (1 <= self.m < self.n):
            raise DomainError("orders must satisfy 1 <= m < n")
        if self.provenance not in ("case-table", "dual-oracle"):
            raise DomainError("provenance must be 'case-table' or 'dual-oracle'")


def _check_orders(m: int, n: int):
    if not (isinstance(m, int) and isinstance(n, int) and 1 <= m < n and n >= 2):
        raise DomainError("orders must be integers with 1 <= m < n, n >= 2")


def admissibility(X: SpaceDescriptor, m: int, n: int) -> Optional[bool]:
    """Whether t^{m/n - 1} restricted to (1, oo) has finite associate norm,
    the condition for an optimal r.i. target to exist.

    Decided in closed form for Lebesgue/Lorentz, by tail-exponent analysis
    for Lorentz-Zygmund, and through the near-zero ratio integral for Orlicz
    sources.  Returns None when the family is not covered (undetermined).
    """
    _check_orders(m, n)
    critical = n / m
    if isinstance(X, Lebesgue):
        return X.p < critical
    if isinstance(X, Lorentz):
        if X.p < critical:
            return True
        if X.p == critical:
            return X.q == 1.0
        return False
    if isinstance(X, LorentzZygmund):
        if X.p < critical:
            return True
        if X.p > critical:
            return False
        qp = conjugate_exponent(X.q)
        inf_logs = tuple(l[1] for l in X.layers)
        if math.isinf(qp):
            # sup-norm side: the log weight must not blow up at infinity
            for l in inf_logs:
                if l > 1e-12:
                    return True
                if l < -1e-12:
                    return False
            return True
        tail = Tail(POWER, -1.0, tuple(-qp * l for l in inf_logs))
        return tail.integrable_at_infty()
    if isinstance(X, OrliczSpace):
        rep = condition_A(X.young, m, n)
        return rep.near_zero_converges
    return None


def sigma_m(fstar: Union[Profile, StepProfile], X: SpaceDescriptor, m: int, n: int,
            grid: Optional[Grid] = None, *, oracle_candidates: Optional[int] = None) -> float:
    """sigma_m(f) = norm of t^{m/n} f**(t) in the associate of X.

    For sources without a supported associate descriptor the caller must opt
    in to the pairing oracle by passing oracle_candidates; the result is then
    a certified lower bound.
    """
    _check_orders(m, n)
    grid = grid or default_grid()
    f = as_profile(fstar)
    if profile_sup(f, grid) == 0.0:
        return 0.0
    if f.zero.integrable_at_zero() is False:
        return INF
    h = power_log_profile(m / n) * maximal_profile(f, grid)

    assoc = associate_descriptor(X)
    if assoc is None:
        if oracle_candidates is None:
            raise DomainError(
                "no supported associate descriptor for this source; pass "
                "oracle_candidates to accept a certified lower bound",
                condition="associate unsupported")
        h_re = rearrange_profile(h, grid)
        return dual_lower_bound(h_re, X, oracle_candidates, grid)

    target = assoc.descriptor
    if isinstance(target, Lebesgue):
        # integrals and sups of |h| are rearrangement-invariant as they stand
        return ri_norm(h, target, grid)
    # weighted evaluation needs the rearrangement of h
    growing = h.infty.kind == POWER and (
        h.infty.power > 1e-12
        or (abs(h.infty.power) <= 1e-12 and h.infty.logs and h.infty.logs[0] > 1e-12))
    if growing:
        return INF
    if h.infty.kind == POWER and abs(h.infty.power) <= 1e-12 and not any(h.infty.logs):
        lim = h.infty_limit
        if lim is not None and lim > 0:
            return INF
    h_re = rearrange_profile(h, grid)
    return ri_norm(h_re, target, grid)


def _pairing_candidates(g: Profile, count: int) -> list[Profile]:
    from .ri_norms import _indicator_candidates, _power_of_g_candidates, \
        _truncated_power_candidates

    n_ind = max(count // 3, 1)
    n_pow = max(count // 3, 1)
    n_tru = max(count - n_ind - n_pow, 0)
    return (_indicator_candidates(n_ind) + _power_of_g_candidates(g, n_pow)
            + _truncated_power_candidates(n_tru))[:count]


def target_norm(gstar: Union[Profile, StepProfile], spec: TargetSpec,
                grid: Optional[Grid] = None, *, oracle_candidates: int = 64) -> float:
    """Norm of a nonincreasing profile in the resolved target space.

    Case-table targets evaluate their closed-form descriptor.  Dual-oracle
    targets return the certified pairing lower bound
    max over candidates f of (int f g) / sigma_m(f), flagged by provenance.
    """
    grid = grid or default_grid()
    g = as_profile(gstar)
    if spec.provenance == "case-table":
        if spec.target is None:
            raise DomainError("case-table target spec carries no descriptor")
        return ri_norm(g, spec.target, grid)
    if profile_sup(g, grid) == 0.0:
        return 0.0
    best = 0.0
    for f in _pairing_candidates(g, oracle_candidates):
        s = sigma_m(f, spec.source, spec.m, spec.n, grid)
        if not (0.0 < s < INF):
            continue
        num = integrate(f * g, grid)
        if math.isfinite(num):
            best = max(best, num / s)
    return best


class CaseRow(NamedTuple):
    target: SpaceDescriptor
    row_id: str
    unique_polynomial: bool


def _normalize_lz(p: float, q: float, layers) -> SpaceDescriptor:
    layers = tuple(tuple(l) for l in layers)
    if all(a == 0.0 and b == 0.0 for a, b in layers):
        return Lorentz(p, q)
    return LorentzZygmund(p, q, layers)


def glz_case_table(p: float, q: float, layers, m: int, n: int) -> CaseRow:
    """The closed-form optimal target for the source L^{p,q;A}, one log layer.

    Parameters outside every row raise CoverageError (no silent fallthrough).
    The returned uniqueness flag is False exactly when p = n/m, q = 1 and
    a_inf = 0 (both restricted-weight and L^inf rows).
    """
    _check_orders(m, n)
    layers = tuple(tuple(float(x) for x in l) for l in layers)
    if len(layers) != 1:
        raise CoverageError("the case table covers sources with exactly one log layer")
    a0, a_inf = layers[0]
    critical = n / m
    if not (1.0 <= p <= critical):
        raise CoverageError(f"not covered: p={p:g} outside [1, n/m={critical:g}]")
    if not (1.0 <= q):
        raise CoverageError("not covered: q < 1")

    if p < critical:
        target_p = n * p / (n - m * p)
        if p == 1.0 and q == 1.0:
            if a0 >= 0.0 and a_inf <= 0.0:
                return CaseRow(_normalize_lz(target_p, q, layers),
                               "glz:p=q=1,a0>=0,aInf<=0", True)
            raise CoverageError("not covered: p=q=1 requires a0>=0 and aInf<=0")
        if p > 1.0:
            return CaseRow(_normalize_lz(target_p, q, layers),
                           "glz:p in (1,n/m)", True)
        raise CoverageError("not covered: p=1 with q>1 is only a quasi-normed source")

    # p == n/m
    qp = conjugate_exponent(q)
    thr = 0.0 if math.isinf(qp) else 1.0 / qp
    if a_inf > thr:
        if a0 < thr:
            return CaseRow(_normalize_lz(INF, q, ((a0 - 1.0, a_inf - 1.0),)),
                           "glz:p=n/m,a0<1/q',aInf>1/q'", True)
        if a0 == thr:
            if q == 1.0:
                return CaseRow(
                    LorentzZygmund(INF, 1.0, ((-1.0, a_inf - 1.0), (-1.0, 0.0), (-1.0, 0.0))),
                    "glz:p=n/m,q=1,a0=0,aInf>0", True)
            return CaseRow(
                LorentzZygmund(INF, q, ((-1.0 / q if not math.isinf(q) else 0.0, a_inf - 1.0),
                                        (-1.0, 0.0))),
                "glz:p=n/m,q in (1,inf],a0=1/q',aInf>1/q'", True)
        # a0 > thr
        if not math.isinf(q):
            return CaseRow(SpecialY2(q, a_inf),
                           "glz:p=n/m,q in [1,inf),a0>1/q',aInf>1/q'", True)
        return CaseRow(LorentzZygmund(INF, INF, ((0.0, a_inf - 1.0),)),
                       "glz:p=n/m,q=inf,a0>1,aInf>1", True)
    if q == 1.0 and a_inf == 0.0:
        if a0 < 0.0:
            return CaseRow(SpecialY1(a0), "glz:p=n/m,q=1,a0<0,aInf=0", False)
        return CaseRow(Lebesgue(INF), "glz:p=n/m,q=1,a0>=0,aInf=0", False)
    raise CoverageError(
        f"not covered: p=n/m with q={q:g}, a0={a0:g}, aInf={a_inf:g} "
        "matches no row (the source is not admissible there)")


class OrliczCaseRow(NamedTuple):
    near_zero: YoungFunction
    near_infinity: YoungFunction
    row_id_zero: str
    row_id_infinity: str


def orlicz_case_table(p0: float, p_inf: float, alpha0: float, alpha_inf: float,
                      m: int, n: int) -> OrliczCaseRow:
    """Target Young-function behaviors for a source equivalent to
    t^{p0} l^{a0} near zero and t^{p_inf} l^{a_inf} near infinity.

    Each side returns a full Young function exhibiting the printed behavior
    on its own side (the A_m result is an equivalence class, so only that
    side is asserted).
    """
    _check_orders(m, n)
    critical = n / m
    c_alpha = (n - m) / m

    if (p0 == 1.0 and alpha0 <= 0.0) or (1.0 < p0 < critical):
        tp = n * p0 / (n - m * p0)
        ta = n * alpha0 / (n - m * p0)
        if tp == 1.0 and ta > 0:
            raise CoverageError("not covered near zero: degenerate target exponent")
        near_zero = PowerLogYoung(tp, ta, max(tp, 2.0), 0.0)
        row_zero = "orlicz:zero:powerlog"
    elif p0 == critical and alpha0 > c_alpha:
        s = n / ((1.0 + alpha0) * m - n)
        near_zero = ZeroExpYoung(s)
        row_zero = "orlicz:zero:exp"
    else:
        raise CoverageError(
            f"not covered near zero: p0={p0:g}, a0={alpha0:g} matches no row")

    if not (1.0 <= p_inf < INF):
        raise CoverageError("not covered near infinity: p_inf outside [1, inf)")
    if (p_inf == 1.0 and alpha_inf >= 0.0) or (1.0 < p_inf < critical):
        tp = n * p_inf / (n - m * p_inf)
        ta = n * alpha_inf / (n - m * p_inf)
        near_inf = PowerLogYoung(min(tp, 2.0) if tp > 1 else 1.0, 0.0, tp, ta)
        row_inf = "orlicz:inf:powerlog"
    elif p_inf == critical and alpha_inf < c_alpha:
        near_inf = ExpYoung(n / (n - (1.0 + alpha_inf) * m))
        row_inf = "orlicz:inf:exp"
    elif p_inf == critical and alpha_inf == c_alpha:
        near_inf = ExpYoung(n / (n - m), double=True)
        row_inf = "orlicz:inf:double-exp"
    elif (p_inf == critical and alpha_inf > c_alpha) or p_inf > critical:
        near_inf = LinftyYoung()
        row_inf = "orlicz:inf:linfty"
    else:
        raise CoverageError(
            f"not covered near infinity: p_inf={p_inf:g}, aInf={alpha_inf:g} "
            "matches no row")
    return OrliczCaseRow(near_zero, near_inf, row_zero, row_inf)


def em_target(A: YoungFunction, m: int, n: int, grid: Optional[Grid] = None) -> SpaceDescriptor:
    """The Orlicz-Lorentz optimal target L(n/m, 1, E_m) of an Orlicz source,
    intersected with L^inf exactly when the far-end ratio integral converges."""
    _check_orders(m, n)
    grid = grid or default_grid()
    rep = condition_A(A, m, n)
    if rep.near_zero_converges is False:
        raise DomainError(
            "young ratio integral diverges near zero; no target exists",
            condition="young-ratio integral diverges near zero")
    Em = build_Em(A, m, n, grid)
    base = OrliczLorentz(n / m, 1.0, Em)
    if rep.near_infty_converges:
        return IntersectionWithLinfty(base)
    return base


def target_phi_diverges(space: SpaceDescriptor, grid: Optional[Grid] = None,
                        probe_hi: float = 1e8) -> bool:
    """Whether the target's fundamental function grows without bound, the
    checkable form of the polynomial-uniqueness criterion."""
    grid = grid or default_grid()
    lo = fundamental_function(space, 1.0, grid)
    hi = fundamental_function(space, probe_hi, grid)
    if math.isinf(hi):
        return True
    if lo == 0.0:
        return hi > 0.0
    return hi / lo > 100.0
