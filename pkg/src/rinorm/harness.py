"""Test functions on R^n, ball-mean polynomial extraction, Poincare ratio
measurement, and the Hardy-type operator check.

The test corpus is radial (optionally plus an affine tilt for second-order
cases): gradient magnitudes are the Frobenius size of the derivative tensor,
which is again a radial function, so rearrangements are computed exactly or
through high-accuracy level-set slicing.  No constant is ever assumed: all
checks are ratio-stability and boundedness statements over families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence, Union

import numpy as np

from .errors import ConvergenceError, DomainError
from .profiles import (
    EXP_DECAY,
    POWER,
    Profile,
    Tail,
    exp_profile,
    indicator_profile,
    power_log_profile,
)
from .quadrature import Grid, default_grid, hardy_transform, integrate, profile_sup
from .rearrange import (
    RadialProfile,
    StepProfile,
    radial_rearrangement,
    rearrange_radial_sliced,
    unit_ball_volume,
)
from .ri_norms import Lebesgue, Lorentz, SpaceDescriptor, as_profile, ri_norm
from .optimal_target import TargetSpec, admissibility, target_norm

__all__ = [
    "TestFunction",
    "BallMeanReport",
    "PolynomialApprox",
    "PoincareResult",
    "HardyReport",
    "make_test_function",
    "gradient_source_norm",
    "ball_means",
    "find_polynomial",
    "poincare_ratio",
    "hardy_check",
    "default_profile_family",
]

_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(96)

KINDS = ("gaussian", "power-decay", "plateau", "affine-plus-gaussian")


@dataclass(frozen=True)
class TestFunction:
    """u(x) = offset + tilt . x + g(|x - center| / dilation).

    The radial base g and the magnitudes of its derivative tensors are
    analytic; requesting an unavailable magnitude (second derivatives of the
    plateau ramp, first derivatives of a tilted function) raises.
    """

    kind: str
    n: int
    offset: float = 0.0
    dilation: float = 1.0
    tilt: tuple[float, ...] = ()
    center_distance: float = 0.0
    decay: float = 0.0      # power-decay exponent
    radius: float = 1.0     # plateau core radius
    ramp: float = 1.0       # plateau ramp width

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown test-function kind {self.kind!r}")
        if self.n < 2:
            raise DomainError("dimension must satisfy n >= 2")
        if self.dilation <= 0:
            raise DomainError("dilation must be positive")
        if self.tilt and self.kind != "affine-plus-gaussian":
            raise DomainError("tilt is only modeled for the affine-plus-gaussian kind")

    # radial part, dilated (without offset/tilt)
    def radial_value(self, r):
        r = np.asarray(r, dtype=float) / self.dilation
        if self.kind in ("gaussian", "affine-plus-gaussian"):
            return np.exp(-r ** 2)
        if self.kind == "power-decay":
            return (1.0 + r) ** (-self.decay)
        R, W = self.radius, self.ramp
        return np.clip((R + W - r) / W, 0.0, 1.0)

    def grad_magnitude(self, k: int) -> Callable:
        """|grad^k u| as a function of r (Frobenius size of the tensor)."""
        if k not in (1, 2):
            raise DomainError("derivative magnitudes available for k in {1, 2}")
        if k == 1 and self.tilt and any(self.tilt):
            raise DomainError("first-derivative magnitude of a tilted function "
                              "is not radial; tilted functions model k = 2")
        d = self.dilation
        if self.kind in ("gaussian", "affine-plus-gaussian"):
            if k == 1:
                return lambda r: (2.0 * np.asarray(r, dtype=float) / d ** 2) \
                    * np.exp(-(np.asarray(r, dtype=float) / d) ** 2)
            nn = self.n

            def hess(r):
                s = np.asarray(r, dtype=float) / d
                return np.exp(-s ** 2) * np.sqrt((4 * s ** 2 - 2.0) ** 2 + 4.0 * (nn - 1)) / d ** 2
            return hess
        if self.kind == "power-decay":
            if k == 2:
                raise DomainError("second derivatives of the power-decay profile have "
                                  "a cusp at the origin; use the gaussian family for k=2")
            a = self.decay
            return lambda r: (a / d) * (1.0 + np.asarray(r, dtype=float) / d) ** (-a - 1.0)
        if k == 2:
            raise DomainError("the plateau ramp has distributional second derivatives")
        R, W = self.radius, self.ramp

        def ramp_grad(r):
            r = np.asarray(r, dtype=float) / d
            return np.where((r > R) & (r < R + W), 1.0 / (W * d), 0.0)
        return ramp_grad


def make_test_function(kind: str, n: int, *, offset: float = 0.0, dilation: float = 1.0,
                       tilt: Sequence[float] = (), center_distance: float = 0.0,
                       decay: float = 0.0, radius: float = 1.0, ramp: float = 1.0) -> TestFunction:
    """Construct a test function, validating that its declared derivative
    magnitudes have finite source norms."""
    if kind == "power-decay" and not (decay > n - 1):
        raise DomainError(
            f"power-decay exponent {decay:g} too small: the gradient magnitude is "
            f"not integrable against r^{n - 1} (needs decay > n - 1)")
    if kind == "plateau" and (radius <= 0 or ramp <= 0):
        raise DomainError("plateau needs positive radius and ramp")
    tilt = tuple(float(x) for x in tilt)
    if tilt and len(tilt) != n:
        raise DomainError("tilt must have one coefficient per coordinate")
    return TestFunction(kind=kind, n=n, offset=offset, dilation=dilation, tilt=tilt,
                        center_distance=center_distance, decay=decay,
                        radius=radius, ramp=ramp)


def gradient_rearrangement(u: TestFunction, m: int, grid: Optional[Grid] = None) -> Profile:
    """Nonincreasing rearrangement of |grad^m u| on (0, oo)."""
    grid = grid or default_grid()
    h = u.grad_magnitude(m)
    d = u.dilation
    if u.kind == "plateau" and m == 1:
        omega = unit_ball_volume(u.n)
        lo = omega * (u.radius * d) ** u.n
        hi = omega * ((u.radius + u.ramp) * d) ** u.n
        return StepProfile(breakpoints=(hi - lo,), values=(1.0 / (u.ramp * d),),
                           tail_value=0.0).to_profile()
    if u.kind == "power-decay" and m == 1:
        prof = RadialProfile(g=h, dimension=u.n, monotone=True,
                             value_tail=Tail(POWER, -(u.decay + 1.0)))
        return radial_rearrangement(prof, grid)
    prof = RadialProfile(g=h, dimension=u.n, monotone=False, value_tail=Tail(EXP_DECAY))
    unimodal = (u.kind in ("gaussian", "affine-plus-gaussian") and m == 1)
    return rearrange_radial_sliced(prof, r_max_hint=max(8.0 * d, 8.0), unimodal=unimodal)


def gradient_source_norm(u: TestFunction, X: SpaceDescriptor, m: int,
                         grid: Optional[Grid] = None) -> float:
    """Norm of |grad^m u| in the source space X."""
    grid = grid or default_grid()
    fstar = gradient_rearrangement(u, m, grid)
    return ri_norm(fstar, X, grid)


# -- ball means ---------------------------------------------------------------


def _radial_ball_mean(u: TestFunction, k: float) -> float:
    """Mean of the radial part over the ball of radius k centered at the
    bump's own center; exact piecewise Gauss-Legendre in r."""
    n = u.n
    pieces = [0.0, k]
    if u.kind == "plateau":
        for b in (u.radius * u.dilation, (u.radius + u.ramp) * u.dilation):
            if 0.0 < b < k:
                pieces.append(b)
    pieces = np.unique(np.asarray(pieces))
    acc = 0.0
    for a, b in zip(pieces[:-1], pieces[1:]):
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        r = mid + half * _GAUSS_NODES
        acc += half * float(np.sum(_GAUSS_WEIGHTS * u.radial_value(r) * r ** (n - 1)))
    return n * acc / k ** n


def _shifted_ball_mean_2d(u: TestFunction, k: float) -> float:
    """Mean over the origin-centered disk of radius k of a radial bump whose
    center sits at distance d: exact circle-overlap arc lengths (n = 2)."""
    d = u.center_distance
    if d == 0.0:
        return _radial_ball_mean(u, k)
    hi = d + k

    def arc(rho):
        rho = np.asarray(rho, dtype=float)
        full = rho <= max(k - d, 0.0)
        none = rho >= k + d
        cosang = np.clip((rho ** 2 + d ** 2 - k ** 2) / (2.0 * rho * d + 1e-300), -1.0, 1.0)
        partial = 2.0 * rho * np.arccos(cosang)
        return np.where(full, 2.0 * math.pi * rho, np.where(none, 0.0, partial))

    edges = np.unique(np.clip(np.asarray([0.0, abs(k - d), k + d, hi]), 0.0, hi))
    acc = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if b <= a:
            continue
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        r = mid + half * _GAUSS_NODES
        acc += half * float(np.sum(_GAUSS_WEIGHTS * u.radial_value(r) * arc(r)))
    return acc / (math.pi * k ** 2)


@dataclass(frozen=True)
class BallMeanReport:
    lambdas: tuple[float, ...]
    converged: bool
    limit: float


def ball_means(u: TestFunction, K: int) -> BallMeanReport:
    """Means over balls of radius 1..K centered at the origin.

    Affine tilt parts integrate to zero by symmetry and are dropped
    analytically.  The reported limit extrapolates the dyadic tail of the
    sequence (exact for the generic 1/k^2-type decay of the means); the
    convergence flag compares two successive extrapolations.  A
    non-convergent sequence is a reported outcome, not an error here.
    """
    if K < 1:
        raise DomainError("K must be >= 1")
    if u.center_distance != 0.0 and u.n != 2:
        raise DomainError("shifted-center means are implemented for n = 2")
    mean_of = _shifted_ball_mean_2d if (u.center_distance != 0.0) else _radial_ball_mean
    lam = np.array([u.offset + mean_of(u, float(k)) for k in range(1, K + 1)])

    def window_fit(lo_k: int, hi_k: int) -> Optional[tuple[float, float]]:
        ks = np.arange(lo_k, hi_k + 1, dtype=float)
        if len(ks) < 4:
            return None
        y = lam[lo_k - 1: hi_k]
        X = np.stack([np.ones_like(ks), 1.0 / ks, 1.0 / ks ** 2], axis=1)
        coef, *_ = np.linalg.lstsq(X, y, rcond=None)
        resid = float(np.max(np.abs(X @ coef - y)))
        return float(coef[0]), resid

    scale = 1.0 + abs(float(lam[-1]))
    main = window_fit(max(K // 2, 1), K)
    if main is None:
        gap = abs(lam[-1] - lam[(K - 1) // 2]) if K >= 2 else math.inf
        return BallMeanReport(tuple(lam), bool(gap < 1e-6 * scale), float(lam[-1]))
    limit, resid = main
    earlier = window_fit(max(K // 4, 1), max(K // 2, 1))
    agree = earlier is not None and abs(limit - earlier[0]) < 1e-6 * scale
    converged = resid <= 1e-8 * scale or agree
    return BallMeanReport(tuple(lam), bool(converged), limit)


@dataclass(frozen=True)
class PolynomialApprox:
    """Coefficients by multi-index, degree <= m - 1."""

    coefficients: tuple[tuple[tuple[int, ...], float], ...]
    degree_bound: int

    def constant(self) -> float:
        for idx, c in self.coefficients:
            if all(i == 0 for i in idx):
                return c
        return 0.0

    def linear(self, n: int) -> tuple[float, ...]:
        out = [0.0] * n
        for idx, c in self.coefficients:
            if sum(idx) == 1:
                out[idx.index(1)] = c
        return tuple(out)


def find_polynomial(u: TestFunction, m: int, K: int = 64) -> PolynomialApprox:
    """The polynomial of degree <= m-1 subtracted in the Poincare inequality.

    m = 1 takes the ball-mean limit; m = 2 first extracts the linear
    coefficients from the means of the first partials (the odd radial parts
    average to zero over balls by symmetry, so those means equal the tilt
    coefficients exactly) and then the constant from the de-tilted function.
    Non-converged means raise, carrying the report.
    """
    if m not in (1, 2):
        raise DomainError("the polynomial construction is implemented for m in {1, 2}")
    if m == 2 and u.n < 2:
        raise DomainError("m = 2 needs n > 2 for admissible sources")
    report = ball_means(u, K)
    if not report.converged:
        raise ConvergenceError(
            f"ball means did not converge by K={K}: last={report.limit!r}",
            condition="ball means non-convergent")
    zero_idx = tuple([0] * u.n)
    if m == 1:
        return PolynomialApprox(((zero_idx, report.limit),), 0)
    coeffs: list[tuple[tuple[int, ...], float]] = [(zero_idx, report.limit)]
    tilt = u.tilt if u.tilt else tuple([0.0] * u.n)
    for i, c in enumerate(tilt):
        if c != 0.0:
            idx = tuple(1 if j == i else 0 for j in range(u.n))
            coeffs.append((idx, c))
    return PolynomialApprox(tuple(coeffs), 1)


class PoincareResult(NamedTuple):
    ratio: float
    target_value: float
    source_value: float
    degenerate: bool
    means_converged: bool


def poincare_ratio(u: TestFunction, X: SpaceDescriptor, spec: TargetSpec, m: int,
                   K: int = 64, grid: Optional[Grid] = None) -> PoincareResult:
    """Target norm of u - P over source norm of |grad^m u|.

    u - P is radial by construction of the corpus (the polynomial removes the
    tilt and the constant), so its rearrangement is exact for monotone kinds
    and sliced otherwise.  A zero source norm with zero target is reported
    degenerate with ratio 0.
    """
    grid = grid or default_grid()
    adm = admissibility(X, m, u.n)
    if adm is False:
        raise DomainError("source space is not admissible for these orders",
                          condition="admissibility fails")
    poly = find_polynomial(u, m, K)
    lam = poly.constant()
    resid = u.offset - lam
    # snap residuals below resolution: a stray constant epsilon would otherwise
    # sit on an infinite-measure set and poison every integral norm
    scale = 1.0 + abs(u.offset)
    if abs(resid) < 1e-7 * scale:
        resid = 0.0

    def shifted(r):
        return np.abs(u.radial_value(r) + resid)

    if u.kind == "plateau":
        prof = RadialProfile(g=shifted, dimension=u.n, monotone=resid >= 0.0,
                             value_tail=Tail(POWER, 0.0) if resid != 0.0 else Tail(EXP_DECAY),
                             breakpoints_r=(u.radius * u.dilation, (u.radius + u.ramp) * u.dilation))
    elif u.kind == "power-decay":
        prof = RadialProfile(g=shifted, dimension=u.n, monotone=resid >= 0.0,
                             value_tail=Tail(POWER, -u.decay) if resid == 0.0 else Tail(POWER, 0.0))
    else:
        prof = RadialProfile(g=shifted, dimension=u.n, monotone=resid >= 0.0,
                             value_tail=Tail(EXP_DECAY) if resid == 0.0 else Tail(POWER, 0.0))
    if prof.monotone and resid == 0.0:
        fstar = radial_rearrangement(prof, grid)
    else:
        if resid != 0.0:
            raise DomainError(
                "u - P retains a nonzero constant at infinity; its rearrangement "
                "is degenerate on infinite measure", condition="nonvanishing residual")
        fstar = rearrange_radial_sliced(prof, r_max_hint=max(8.0 * u.dilation, 8.0),
                                        unimodal=False)
    num = target_norm(fstar, spec, grid)
    den = gradient_source_norm(u, X, m, grid)
    if den == 0.0:
        if num <= 1e-12:
            return PoincareResult(0.0, num, den, True, True)
        raise DomainError("zero gradient norm with nonzero target norm",
                          condition="degenerate ratio")
    return PoincareResult(num / den, num, den, False, True)


# -- the Hardy-type reduction --------------------------------------------------


class HardyRow(NamedTuple):
    label: str
    source_value: float
    target_value: float
    ratio: float


class HardyReport(NamedTuple):
    max_ratio: float
    rows: tuple[HardyRow, ...]


def hardy_check(X: SpaceDescriptor, Y: SpaceDescriptor,
                family: Sequence[tuple[str, Union[Profile, StepProfile]]],
                n: int, grid: Optional[Grid] = None) -> HardyReport:
    """Max over the family of |Tf|_Y / |f|_X for the kernel operator
    Tf(t) = integral over (t, oo) of f(s) s^{1/n - 1} ds.

    Tf is nonincreasing for nonnegative f, so no re-rearrangement is needed.
    Members with zero source norm are skipped.
    """
    grid = grid or default_grid()
    rows = []
    best = 0.0
    for label, f in family:
        fp = as_profile(f)
        fx = ri_norm(fp, X, grid)
        if fx == 0.0:
            continue
        Tf = hardy_transform(fp, n, grid)
        ty = ri_norm(Tf, Y, grid)
        ratio = ty / fx
        best = max(best, ratio)
        rows.append(HardyRow(label, fx, ty, ratio))
    return HardyReport(best, tuple(rows))


def default_profile_family(name: str, count: int = 20,
                           seed: Optional[int] = None) -> list[tuple[str, Profile]]:
    """Built-in nonincreasing profile families for operator checks."""
    rng = np.random.default_rng(0 if seed is None else seed)
    out: list[tuple[str, Profile]] = []
    if name == "indicators":
        for a in np.geomspace(0.05, 50.0, count):
            out.append((f"indicator:a={a:.6g}", indicator_profile(float(a))))
        return out
    if name == "mixed":
        kinds = count
        for i in range(kinds):
            pick = i % 4
            if pick == 0:
                a = float(np.exp(rng.uniform(-3, 3)))
                out.append((f"indicator:a={a:.4g}", indicator_profile(a)))
            elif pick == 1:
                s = float(np.exp(rng.uniform(-1.5, 1.5)))
                out.append((f"exp:rate={s:.4g}", exp_profile(rate=s)))
            elif pick == 2:
                b = float(rng.uniform(1.2, 4.0))

                def fn(t, b=b):
                    return (1.0 + np.asarray(t, dtype=float)) ** (-b)
                out.append((f"power:b={b:.4g}", Profile(
                    fn=fn, zero=Tail(POWER, 0.0), infty=Tail(POWER, -b),
                    nonincreasing=True, zero_limit=1.0)))
            else:
                k = int(rng.integers(2, 8))
                bps = np.cumsum(np.exp(rng.normal(0.0, 1.0, size=k)))
                vals = np.sort(np.exp(rng.normal(0.0, 1.0, size=k)))[::-1]
                out.append((f"step:{k}", StepProfile(tuple(bps), tuple(vals)).to_profile()))
        return out
    raise DomainError(f"unknown profile family {name!r}")
