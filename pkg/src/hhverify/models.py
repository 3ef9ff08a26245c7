"""Function models: evaluable f with an exact first derivative on a positive
interval.

Built-ins carry hand-written derivatives; expression-backed models get theirs
from the symbolic differentiator, so the two paths cross-check each other in
the test suite.  Construction probes f and f' on a Chebyshev-spaced grid
(endpoints included) and fails eagerly on any non-finite value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from . import exprparse
from .errors import DomainError

__all__ = ["FunctionModel", "make_model", "power_model", "exp_model",
           "model_from_expr", "PROBE_POINTS"]

PROBE_POINTS = 64


@dataclass(frozen=True)
class FunctionModel:
    name: str
    lo: float
    hi: float
    f: Callable
    fprime: Callable
    params: Mapping[str, float] = field(default_factory=dict)

    @property
    def domain(self) -> tuple[float, float]:
        return (self.lo, self.hi)

    def contains(self, a: float, b: float) -> bool:
        return self.lo <= a < b <= self.hi

    def fprime_abs(self, x):
        return np.abs(self.fprime(x))


def _chebyshev_grid(lo: float, hi: float, n: int) -> np.ndarray:
    # Chebyshev-Lobatto points: clustered near the endpoints, endpoints
    # included, ascending.
    k = np.arange(n)
    return 0.5 * (lo + hi) - 0.5 * (hi - lo) * np.cos(np.pi * k / (n - 1))


def _probe(name: str, lo: float, hi: float, f: Callable, fprime: Callable) -> None:
    grid = _chebyshev_grid(lo, hi, PROBE_POINTS)
    for label, fn in (("f", f), ("f'", fprime)):
        try:
            vals = np.broadcast_to(np.asarray(fn(grid), dtype=float), grid.shape)
        except DomainError:
            raise
        except Exception:  # scalar-only callables
            vals = np.empty_like(grid)
            for i, x in enumerate(grid):
                try:
                    vals[i] = float(fn(float(x)))
                except DomainError:
                    raise
                except Exception as e:
                    raise DomainError(float(x), f"{label} of model {name!r} failed "
                                      f"({type(e).__name__})") from None
        bad = ~np.isfinite(vals)
        if bad.any():
            x = float(grid[np.argmax(bad)])
            raise DomainError(x, f"{label} of model {name!r} is not finite")


def make_model(name: str, lo: float, hi: float, f: Callable, fprime: Callable,
               params: Mapping[str, float] | None = None) -> FunctionModel:
    lo = float(lo)
    hi = float(hi)
    if not (0.0 < lo < hi):
        raise ValueError(f"domain must satisfy 0 < lo < hi, got ({lo}, {hi})")
    _probe(name, lo, hi, f, fprime)
    return FunctionModel(name, lo, hi, f, fprime, dict(params or {}))


def power_model(s: float, lo: float = 0.01, hi: float = 1.0) -> FunctionModel:
    """f(x) = x^s / s on a sub-interval of (0, 1], with f'(x) = x^(s-1).

    |f'|^q = x^((s-1)q) is monotonically decreasing on (0, 1] and
    s-geometrically convex there, which makes this the reference instance
    for the special-means propositions.
    """
    s = float(s)
    if not (0.0 < s < 1.0):
        raise ValueError(f"power model needs s in (0, 1), got {s}")
    if not (0.0 < lo < hi <= 1.0):
        raise ValueError(f"power model domain must lie in (0, 1], got ({lo}, {hi})")
    return make_model(
        f"power(s={s:g})", lo, hi,
        f=lambda x: np.power(x, s) / s,
        fprime=lambda x: np.power(x, s - 1.0),
        params={"s": s},
    )


def exp_model(rate: float, lo: float = 1.0, hi: float = 2.0) -> FunctionModel:
    """f(x) = exp(-rate*x) with f'(x) = -rate*exp(-rate*x), rate > 0."""
    rate = float(rate)
    if not rate > 0.0:
        raise ValueError(f"exp model needs rate > 0, got {rate}")
    return make_model(
        f"exp(rate={rate:g})", lo, hi,
        f=lambda x: np.exp(-rate * x),
        fprime=lambda x: -rate * np.exp(-rate * x),
        params={"rate": rate},
    )


def model_from_expr(src: str, lo: float, hi: float,
                    name: str | None = None) -> FunctionModel:
    """Build a model from expression text; the derivative is symbolic.

    The probe grid surfaces domain problems at construction time, naming
    the offending point.
    """
    tree = exprparse.parse(src)
    dtree = exprparse.differentiate(tree)

    def f(x):
        return exprparse.eval_array(tree, x)

    def fprime(x):
        return exprparse.eval_array(dtree, x)

    return make_model(name or src, lo, hi, f, fprime, params={})


_BUILTINS = {"power": power_model, "exp": exp_model}


def model_from_spec(spec: Mapping) -> FunctionModel:
    """Instantiate a model from a config-style mapping.

    Either ``{"builtin": "power", "s": 0.5, ["domain": [lo, hi]]}`` /
    ``{"builtin": "exp", "rate": 1.0, ...}`` or
    ``{"expr": "1 - ln(x)", "domain": [lo, hi]}``; an optional ``name``
    overrides the derived one.
    """
    name = spec.get("name")
    if "builtin" in spec:
        kind = spec["builtin"]
        if kind == "power":
            kwargs = {"s": spec["s"]}
        elif kind == "exp":
            kwargs = {"rate": spec["rate"]}
        else:
            raise ValueError(f"unknown builtin {kind!r}")
        if "domain" in spec:
            kwargs["lo"], kwargs["hi"] = spec["domain"]
        m = _BUILTINS[kind](**kwargs)
    elif "expr" in spec:
        lo, hi = spec["domain"]
        m = model_from_expr(spec["expr"], lo, hi, name=name)
    else:
        raise ValueError("model spec needs 'builtin' or 'expr'")
    if name and m.name != name:
        m = FunctionModel(name, m.lo, m.hi, m.f, m.fprime, m.params)
    return m


def finite_difference(fn: Callable, x: float, h: float | None = None) -> float:
    """Central difference with the step policy used by the derivative tests."""
    if h is None:
        h = 1e-5 * max(1.0, abs(x))
    return (float(fn(x + h)) - float(fn(x - h))) / (2.0 * h)


def _power_weight_gap(s: float, q: float, t: float) -> tuple[float, float]:
    """The two exponent-gap products that certify the power family's class
    membership: (s-1)q(t^s - t) and (s-1)q((1-t)^s - (1-t)); both must be <= 0.
    """
    c = (s - 1.0) * q
    return c * (t ** s - t), c * ((1.0 - t) ** s - (1.0 - t))
