"""Grid-based predicates for convexity classes, monotonicity, and the
per-bound hypothesis bundles.

The classes are universally quantified over (x, y, t), so at desk scale the
predicates are falsification-oriented semi-decisions: "no violation found on
the grid within slack".  Failures are exact and come back as witnesses.

Grid policy: x and y share one grid (so the x = y diagonal, where the s < 1
degeneracy bites, is always included); the t grid has odd size, so 0, 1/2
and 1 are grid points (the equality/extremal cases).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import DomainError, NegativeValueError, NonPositiveValueError

__all__ = [
    "ClassCheckConfig", "Witness", "CheckResult", "HypothesisReport",
    "is_convex", "is_s_convex", "is_geometrically_convex",
    "is_s_geometrically_convex", "is_monotone_decreasing",
    "check_pointwise_key", "theorem_hypotheses",
]

# Above this magnitude, inequality comparisons move to log scale so that
# huge |f'|^q values do not distort the slack.
_LOG_SCALE_CUTOFF = 1e3


@dataclass(frozen=True)
class ClassCheckConfig:
    grid_points: int = 33
    slack: float = 1e-9
    max_witnesses: int = 64

    def __post_init__(self):
        if self.grid_points < 3:
            raise ValueError("grid_points must be >= 3")
        if self.slack < 0.0:
            raise ValueError("slack must be >= 0")


@dataclass(frozen=True)
class Witness:
    """One grid point violating the defining inequality by more than slack."""
    x: float
    y: float
    t: float
    lhs: float
    rhs: float


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witnesses: tuple[Witness, ...]
    violation_count: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _grid_values(g: Callable, xs: np.ndarray) -> np.ndarray:
    """Evaluate g on an array, falling back to a scalar loop, and reject
    non-finite values with the offending point named."""
    flat = np.ravel(xs)
    try:
        vals = np.broadcast_to(np.asarray(g(flat), dtype=float), flat.shape).copy()
    except DomainError:
        raise
    except Exception:
        vals = np.empty_like(flat)
        for i, x in enumerate(flat):
            vals[i] = float(g(float(x)))
    bad = ~np.isfinite(vals)
    if bad.any():
        i = int(np.argmax(bad))
        raise DomainError(float(flat[i]), "function not finite at grid point")
    return vals.reshape(np.shape(xs))


def _violations(lhs: np.ndarray, rhs: np.ndarray, slack: float) -> np.ndarray:
    both_big = (lhs > _LOG_SCALE_CUTOFF) & (rhs > _LOG_SCALE_CUTOFF)
    plain = lhs > rhs + slack
    with np.errstate(divide="ignore", invalid="ignore"):
        logged = np.log(np.maximum(lhs, 1e-300)) > np.log(np.maximum(rhs, 1e-300)) + slack
    return np.where(both_big, logged, plain)


def _collect(viol: np.ndarray, xs: np.ndarray, ts: np.ndarray,
             lhs: np.ndarray, rhs: np.ndarray, cfg: ClassCheckConfig) -> CheckResult:
    idx = np.argwhere(viol)
    count = int(idx.shape[0])
    wit = tuple(
        Witness(float(xs[i]), float(xs[j]), float(ts[k]),
                float(lhs[i, j, k]), float(rhs[i, j, k]))
        for i, j, k in idx[:cfg.max_witnesses]
    )
    return CheckResult(count == 0, wit, count)


def _axes(interval: tuple[float, float], cfg: ClassCheckConfig):
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise ValueError(f"need lo < hi, got ({lo}, {hi})")
    n = cfg.grid_points if cfg.grid_points % 2 == 1 else cfg.grid_points + 1
    xs = np.linspace(lo, hi, n)
    ts = np.linspace(0.0, 1.0, n)
    return xs, ts


def is_convex(g: Callable, interval: tuple[float, float],
              cfg: ClassCheckConfig = ClassCheckConfig()) -> CheckResult:
    """g(t*x + (1-t)*y) <= t*g(x) + (1-t)*g(y) on the grid."""
    xs, ts = _axes(interval, cfg)
    gx = _grid_values(g, xs)
    t = ts[None, None, :]
    pts = t * xs[:, None, None] + (1.0 - t) * xs[None, :, None]
    lhs = _grid_values(g, pts)
    rhs = t * gx[:, None, None] + (1.0 - t) * gx[None, :, None]
    return _collect(_violations(lhs, rhs, cfg.slack), xs, ts, lhs, rhs, cfg)


def is_s_convex(g: Callable, interval: tuple[float, float], s: float,
                cfg: ClassCheckConfig = ClassCheckConfig()) -> CheckResult:
    """Second-sense variant: weights t, 1-t are raised to the power s.

    The class is defined for maps into [0, inf); a genuinely negative value
    raises NegativeValueError.  At s = 1 this coincides with is_convex on
    the same grid.
    """
    if not (0.0 < s <= 1.0):
        raise ValueError(f"need s in (0, 1], got {s}")
    xs, ts = _axes(interval, cfg)
    gx = _grid_values(g, xs)
    neg = gx < -cfg.slack
    if neg.any():
        i = int(np.argmax(neg))
        raise NegativeValueError(float(xs[i]), float(gx[i]))
    t = ts[None, None, :]
    pts = t * xs[:, None, None] + (1.0 - t) * xs[None, :, None]
    lhs = _grid_values(g, pts)
    rhs = t ** s * gx[:, None, None] + (1.0 - t) ** s * gx[None, :, None]
    return _collect(_violations(lhs, rhs, cfg.slack), xs, ts, lhs, rhs, cfg)


def _geometric_check(g: Callable, interval: tuple[float, float], s: float,
                     cfg: ClassCheckConfig) -> CheckResult:
    if not interval[0] > 0.0:
        raise ValueError(f"interval must lie in (0, inf), got {interval}")
    xs, ts = _axes(interval, cfg)
    gx = _grid_values(g, xs)
    bad = gx <= 0.0
    if bad.any():
        i = int(np.argmax(bad))
        raise NonPositiveValueError(float(xs[i]), float(gx[i]))
    t = ts[None, None, :]
    lnx = np.log(xs)
    # x^t * y^(1-t) in log space; stays between x and y, hence in-interval.
    pts = np.exp(t * lnx[:, None, None] + (1.0 - t) * lnx[None, :, None])
    lhs = _grid_values(g, pts)
    bad = lhs <= 0.0
    if bad.any():
        i, j, k = np.argwhere(bad)[0]
        raise NonPositiveValueError(float(pts[i, j, k]), float(lhs[i, j, k]))
    lg = np.log(gx)
    ln_rhs = t ** s * lg[:, None, None] + (1.0 - t) ** s * lg[None, :, None]
    with np.errstate(over="ignore"):
        rhs = np.exp(ln_rhs)
    return _collect(_violations(lhs, rhs, cfg.slack), xs, ts, lhs, rhs, cfg)


def is_geometrically_convex(g: Callable, interval: tuple[float, float],
                            cfg: ClassCheckConfig = ClassCheckConfig()) -> CheckResult:
    """g(x^t * y^(1-t)) <= g(x)^t * g(y)^(1-t) on the grid (g > 0 required)."""
    return _geometric_check(g, interval, 1.0, cfg)


def is_s_geometrically_convex(g: Callable, interval: tuple[float, float], s: float,
                              cfg: ClassCheckConfig = ClassCheckConfig()) -> CheckResult:
    """g(x^t * y^(1-t)) <= g(x)^(t^s) * g(y)^((1-t)^s) on the grid.

    At s = 1 this is exactly is_geometrically_convex.  For s < 1 the
    diagonal x = y at t = 1/2 forces g(x) <= g(x)^(2^(1-s)), so any
    accepted g satisfies g >= 1 on the grid; in particular constants
    below 1 are rejected with a diagonal witness.
    """
    if not (0.0 < s <= 1.0):
        raise ValueError(f"need s in (0, 1], got {s}")
    return _geometric_check(g, interval, s, cfg)


def is_monotone_decreasing(g: Callable, interval: tuple[float, float],
                           cfg: ClassCheckConfig = ClassCheckConfig()) -> CheckResult:
    """g(x_i) >= g(x_{i+1}) - slack over the sorted grid.

    Witnesses use (x, y) for the adjacent pair and carry (lhs, rhs) =
    (g(y), g(x)); t is NaN (not meaningful here).
    """
    xs, _ = _axes(interval, cfg)
    gx = _grid_values(g, xs)
    viol = gx[1:] > gx[:-1] + cfg.slack
    idx = np.flatnonzero(viol)
    wit = tuple(
        Witness(float(xs[i]), float(xs[i + 1]), math.nan,
                float(gx[i + 1]), float(gx[i]))
        for i in idx[:cfg.max_witnesses]
    )
    return CheckResult(len(idx) == 0, wit, int(len(idx)))


def check_pointwise_key(mu: float, alpha: float, s: float) -> bool:
    """mu^(alpha^s) <= mu^(alpha*s) for mu, alpha, s in (0, 1].

    Holds identically in range (alpha^s >= alpha >= alpha*s and mu <= 1);
    the property suite sweeps it with seeded random triples.
    """
    for name, v in (("mu", mu), ("alpha", alpha), ("s", s)):
        if not (0.0 < v <= 1.0):
            raise ValueError(f"{name}={v!r} outside (0, 1]")
    lhs = mu ** (alpha ** s)
    rhs = mu ** (alpha * s)
    return lhs <= rhs + 1e-15 * max(1.0, rhs)


@dataclass(frozen=True)
class HypothesisReport:
    """Pass/fail record for one bound's preconditions on [a, b]."""
    class_ok: bool
    monotone_decreasing_ok: bool
    fprime_a_le_1: bool
    witnesses: Mapping[str, tuple[Witness, ...]] = field(default_factory=dict)
    params: Mapping[str, float] = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return self.class_ok and self.monotone_decreasing_ok and self.fprime_a_le_1


def theorem_hypotheses(m, a: float, b: float, s: float, q: float = 1.0,
                       cfg: ClassCheckConfig = ClassCheckConfig()) -> HypothesisReport:
    """Bundle the derivative-ratio bounds' preconditions into one report:
    |f'|^q s-geometrically convex on [a, b], |f'| monotone decreasing,
    and the side condition |f'(a)| <= 1.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise ValueError(f"need a < b, got ({a}, {b})")
    if not (m.lo <= a and b <= m.hi):
        raise ValueError(f"[{a}, {b}] outside model domain [{m.lo}, {m.hi}]")

    def g_abs(x):
        return np.abs(m.fprime(x))

    def g_q(x):
        return np.abs(m.fprime(x)) ** q

    class_res = is_s_geometrically_convex(g_q, (a, b), s, cfg)
    mono_res = is_monotone_decreasing(g_abs, (a, b), cfg)
    fpa = float(np.abs(m.fprime(a)))
    return HypothesisReport(
        class_ok=class_res.ok,
        monotone_decreasing_ok=mono_res.ok,
        fprime_a_le_1=fpa <= 1.0 + cfg.slack,
        witnesses={"class": class_res.witnesses, "monotone": mono_res.witnesses},
        params={"a": a, "b": b, "s": float(s), "q": float(q),
                "fprime_a_abs": fpa, "grid_points": cfg.grid_points,
                "slack": cfg.slack},
    )
