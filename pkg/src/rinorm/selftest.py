"""Randomized invariant suites: the library's own consistency battery.

Each suite draws seeded random step profiles and spaces, checks one inequality
or identity with its stated slack, and reports a pass/fail count.  The CLI
`selftest` verb runs all suites; the acceptance tests call them directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .orlicz import PowerLogYoung, PowerYoung, luxemburg_norm
from .quadrature import Grid
from .rearrange import SampledFunction, StepProfile, decreasing_rearrangement
from .ri_norms import (
    Lebesgue,
    Lorentz,
    LorentzZygmund,
    associate_descriptor,
    ri_norm,
)

__all__ = ["CheckResult", "run_suite", "run_selftest", "SUITES"]

#: grid for the randomized suites: steps integrate exactly per cell, so a
#: narrower window at lower density loses nothing
FAST_GRID = Grid(t_min=1e-6, t_max=1e6, nodes_per_decade=24)


@dataclass(frozen=True)
class CheckResult:
    name: str
    cases: int
    failures: int
    worst: float

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _random_step(rng, max_pieces: int = 10) -> StepProfile:
    k = int(rng.integers(1, max_pieces + 1))
    widths = np.exp(rng.normal(0.0, 1.5, size=k))
    bps = np.cumsum(widths) * float(np.exp(rng.normal(0.0, 1.0)))
    vals = np.sort(np.exp(rng.normal(0.0, 1.5, size=k)))[::-1]
    return StepProfile(tuple(bps), tuple(vals))


def _random_space(rng):
    pick = rng.integers(0, 3)
    if pick == 0:
        return Lebesgue(float(rng.uniform(1.0, 8.0)))
    if pick == 1:
        return Lorentz(float(rng.uniform(1.05, 8.0)), float(rng.uniform(1.0, 8.0)))
    layer = (float(rng.uniform(-2.0, 2.0)), float(rng.uniform(-2.0, 2.0)))
    return LorentzZygmund(float(rng.uniform(1.05, 8.0)), float(rng.uniform(1.0, 8.0)),
                          (layer,))


def _step_product_integral(f: StepProfile, g: StepProfile) -> float:
    """Exact integral of the product of two step profiles with zero tails."""
    edges = sorted(set(f.breakpoints) | set(g.breakpoints))
    total, prev = 0.0, 0.0
    for b in edges:
        mid = 0.5 * (prev + b)
        total += float(f(mid)) * float(g(mid)) * (b - prev)
        prev = b
    return total


def suite_lattice(cases: int, seed: int) -> CheckResult:
    """f* <= g* pointwise implies norm(f*) <= norm(g*)."""
    rng = np.random.default_rng(seed)
    failures, worst = 0, 0.0
    for _ in range(cases):
        f = _random_step(rng)
        bump = np.exp(rng.normal(0.0, 1.0, size=len(f.values)))
        g = StepProfile(f.breakpoints, tuple(v + b for v, b in zip(f.values, np.sort(bump)[::-1])))
        space = _random_space(rng)
        nf = ri_norm(f, space, FAST_GRID)
        ng = ri_norm(g, space, FAST_GRID)
        excess = (nf - ng) / max(ng, 1e-300)
        worst = max(worst, excess)
        if excess > 1e-10:
            failures += 1
    return CheckResult("lattice", cases, failures, worst)


def suite_homogeneity(cases: int, seed: int) -> CheckResult:
    """norm(c f*) = c norm(f*) to 1e-12 relative."""
    rng = np.random.default_rng(seed)
    failures, worst = 0, 0.0
    for _ in range(cases):
        f = _random_step(rng)
        c = float(np.exp(rng.normal(0.0, 2.0)))
        space = _random_space(rng)
        n1 = ri_norm(StepProfile(f.breakpoints, tuple(c * v for v in f.values)),
                     space, FAST_GRID)
        n2 = c * ri_norm(f, space, FAST_GRID)
        rel = abs(n1 - n2) / max(n2, 1e-300)
        worst = max(worst, rel)
        if rel > 1e-12:
            failures += 1
    return CheckResult("homogeneity", cases, failures, worst)


def suite_holder_pairing(cases: int, seed: int) -> CheckResult:
    """int f* g* <= norm(f*, X) norm(g*, X') (1 + 1e-9) for supported pairs."""
    rng = np.random.default_rng(seed)
    failures, worst = 0, 0.0
    for _ in range(cases):
        f = _random_step(rng)
        g = _random_step(rng)
        if rng.integers(0, 2) == 0:
            X = Lebesgue(float(rng.uniform(1.0, 8.0)))
        else:
            X = Lorentz(float(rng.uniform(1.05, 8.0)), float(rng.uniform(1.0, 8.0)))
        assoc = associate_descriptor(X)
        pairing = _step_product_integral(f, g)
        bound = ri_norm(f, X, FAST_GRID) * ri_norm(g, assoc.descriptor, FAST_GRID) \
            * assoc.pairing_constant
        excess = pairing / max(bound, 1e-300) - 1.0
        worst = max(worst, excess)
        if excess > 1e-9:
            failures += 1
    return CheckResult("holder-pairing", cases, failures, worst)


def suite_maximal_subadditivity(cases: int, seed: int) -> CheckResult:
    """(f+g)**(t) <= f**(t) + g**(t) + 1e-12 on random sampled pairs."""
    rng = np.random.default_rng(seed)
    failures, worst = 0, 0.0
    for _ in range(cases):
        k = int(rng.integers(1, 12))
        weights = np.exp(rng.normal(0.0, 1.0, size=k))
        fv = rng.normal(0.0, 2.0, size=k)
        gv = rng.normal(0.0, 2.0, size=k)
        f = SampledFunction(tuple((float(v), float(w)) for v, w in zip(fv, weights)))
        g = SampledFunction(tuple((float(v), float(w)) for v, w in zip(gv, weights)))
        fs = decreasing_rearrangement(f)
        gs = decreasing_rearrangement(g)
        ss = decreasing_rearrangement(f.add(g))
        for t in np.exp(rng.normal(0.0, 2.0, size=4)):
            lhs = ss.maximal_at(float(t))
            rhs = fs.maximal_at(float(t)) + gs.maximal_at(float(t))
            excess = lhs - rhs
            worst = max(worst, excess)
            if excess > 1e-12 * max(1.0, rhs):
                failures += 1
    return CheckResult("maximal-subadditivity", cases, failures, worst)


def suite_luxemburg_certificate(cases: int, seed: int) -> CheckResult:
    """At the returned norm value the modular is <= 1 and just below it the
    modular exceeds 1 (minimality certificate for finite-valued A)."""
    rng = np.random.default_rng(seed)
    failures, worst = 0, 0.0
    for _ in range(cases):
        f = _random_step(rng, max_pieces=6)
        if rng.integers(0, 2) == 0:
            A = PowerYoung(float(rng.uniform(1.0, 6.0)))
        else:
            p0 = float(rng.uniform(1.1, 4.0))
            A = PowerLogYoung(p0, float(rng.uniform(-1.0, 1.0)),
                              float(rng.uniform(p0, 6.0)), float(rng.uniform(-1.0, 1.0)))
        res = luxemburg_norm(f.to_profile(), A, FAST_GRID, details=True)
        if not math.isfinite(res.value) or res.value <= 0:
            failures += 1
            continue
        ok = res.modular_at_value <= 1.0 + 1e-9 and res.modular_below > 1.0
        worst = max(worst, res.modular_at_value - 1.0)
        if not ok:
            failures += 1
    return CheckResult("luxemburg-certificate", cases, failures, worst)


SUITES: dict[str, Callable[[int, int], CheckResult]] = {
    "lattice": suite_lattice,
    "homogeneity": suite_homogeneity,
    "holder-pairing": suite_holder_pairing,
    "maximal-subadditivity": suite_maximal_subadditivity,
    "luxemburg-certificate": suite_luxemburg_certificate,
}


def run_suite(name: str, cases: int = 500, seed: int = 20240) -> CheckResult:
    return SUITES[name](cases, seed)


def run_selftest(cases: int = 500, seed: int = 20240) -> list[CheckResult]:
    return [fn(cases, seed + i) for i, (name, fn) in enumerate(sorted(SUITES.items()))]
