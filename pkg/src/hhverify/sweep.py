"""Sweep configuration, execution, and run summaries.

The harness evaluates every bound over a declarative parameter grid with
hypothesis gating: each inequality is only a *claim* where its stated
preconditions hold, so records are checked for hypotheses first and
labeled ``outside-hypotheses`` (never ``violation``) when they fail.
Both sides are still evaluated there, because measuring what happens
outside the preconditions is part of the job (the special-means
propositions live entirely in that regime).

Per-record evaluation errors are captured in the record rather than
aborting the sweep.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import bounds, means
from .convexity import ClassCheckConfig, is_convex, theorem_hypotheses
from .errors import ConfigError
from .models import FunctionModel, model_from_spec
from .records import BoundRecord, make_ratio, sort_records

__all__ = ["Tolerances", "SweepConfig", "load_config", "parse_config",
           "default_config", "run_sweep", "summarize", "PASS_SLACK"]

SCHEMA_VERSION = 1

# lhs <= rhs + PASS_SLACK is the pass criterion for hypothesis-passing records.
PASS_SLACK = 1e-12


@dataclass(frozen=True)
class Tolerances:
    quad_tol: float = 1e-10
    slack: float = 1e-9
    identity_tol: float = 1e-8


@dataclass(frozen=True)
class SweepConfig:
    models: tuple[Mapping, ...]
    a_grid: tuple[float, ...]
    b_grid: tuple[float, ...]
    s_grid: tuple[float, ...]
    q_grid: tuple[float, ...]
    tolerances: Tolerances = Tolerances()
    seed: int = 0
    class_grid_points: int = 33
    schema_version: int = SCHEMA_VERSION


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise ConfigError(path, message)


def parse_config(raw: Mapping) -> SweepConfig:
    """Validate a config mapping; errors carry the offending field path."""
    _expect(isinstance(raw, Mapping), "<root>", "config must be an object")
    version = raw.get("schema_version", SCHEMA_VERSION)
    _expect(version == SCHEMA_VERSION, "schema_version",
            f"unsupported version {version!r} (expected {SCHEMA_VERSION})")

    models = raw.get("models", [])
    _expect(isinstance(models, Sequence) and len(models) > 0,
            "models", "need a nonempty list of model specs")
    for i, spec in enumerate(models):
        _expect(isinstance(spec, Mapping), f"models[{i}]", "must be an object")
        _expect("builtin" in spec or "expr" in spec,
                f"models[{i}]", "needs 'builtin' or 'expr'")
        name = spec.get("name", spec.get("expr", ""))
        _expect("," not in str(name), f"models[{i}].name",
                "model names may not contain commas")
        if "domain" in spec:
            dom = spec["domain"]
            _expect(isinstance(dom, Sequence) and len(dom) == 2,
                    f"models[{i}].domain", "must be [lo, hi]")
            _expect(0.0 < dom[0] < dom[1], f"models[{i}].domain",
                    f"need 0 < lo < hi, got {list(dom)}")

    def grid(key: str, predicate, what: str) -> tuple[float, ...]:
        g = raw.get(key, [])
        _expect(isinstance(g, Sequence) and len(g) > 0, key, "must be nonempty")
        vals = []
        for j, v in enumerate(g):
            _expect(isinstance(v, (int, float)) and math.isfinite(v),
                    f"{key}[{j}]", "must be a finite number")
            _expect(predicate(float(v)), f"{key}[{j}]", what)
            vals.append(float(v))
        return tuple(vals)

    a_grid = grid("a_grid", lambda v: v > 0.0, "must be positive")
    b_grid = grid("b_grid", lambda v: v > 0.0, "must be positive")
    s_grid = grid("s_grid", lambda v: 0.0 < v <= 1.0, "must lie in (0, 1]")
    q_grid = grid("q_grid", lambda v: v >= 1.0, "must be >= 1")
    _expect(any(a < b for a in a_grid for b in b_grid),
            "a_grid/b_grid", "no pair with a < b")

    tol_raw = raw.get("tolerances", {})
    _expect(isinstance(tol_raw, Mapping), "tolerances", "must be an object")
    tols = {}
    for key in ("quad_tol", "slack", "identity_tol"):
        v = tol_raw.get(key, getattr(Tolerances(), key))
        _expect(isinstance(v, (int, float)) and v > 0.0,
                f"tolerances.{key}", "must be > 0")
        tols[key] = float(v)

    seed = raw.get("seed", 0)
    _expect(isinstance(seed, int) and seed >= 0, "seed",
            "must be a nonnegative integer")
    gp = raw.get("class_grid_points", 33)
    _expect(isinstance(gp, int) and gp >= 3, "class_grid_points", "must be >= 3")

    return SweepConfig(
        models=tuple(dict(m) for m in models),
        a_grid=a_grid, b_grid=b_grid, s_grid=s_grid, q_grid=q_grid,
        tolerances=Tolerances(**tols), seed=seed, class_grid_points=gp,
    )


def load_config(path: str) -> SweepConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as e:
            raise ConfigError("<file>", f"invalid JSON in {path}: {e}") from e
    return parse_config(raw)


def default_config() -> SweepConfig:
    """The shipped config (packaged data file)."""
    from importlib.resources import files
    raw = json.loads(files("hhverify.data").joinpath("default_config.json")
                     .read_text(encoding="utf-8"))
    return parse_config(raw)


# ---------------------------------------------------------------------------
# Sweep execution
# ---------------------------------------------------------------------------

@dataclass
class _ModelContext:
    """Per-model caches so grid checks and quadratures run once per key."""
    model: FunctionModel
    cfg: SweepConfig
    check_cfg: ClassCheckConfig
    lhs_cache: dict = field(default_factory=dict)
    residual_cache: dict = field(default_factory=dict)
    hyp_cache: dict = field(default_factory=dict)
    convex_cache: dict = field(default_factory=dict)

    def lhs(self, a: float, b: float) -> float:
        key = (a, b)
        if key not in self.lhs_cache:
            self.lhs_cache[key] = bounds.trapezoid_mean_gap(
                self.model, a, b, tol=self.cfg.tolerances.quad_tol)
        return self.lhs_cache[key]

    def gap_residual(self, a: float, b: float) -> float:
        key = (a, b)
        if key not in self.residual_cache:
            signed = bounds.gap_integral_form(
                self.model, a, b, tol=self.cfg.tolerances.quad_tol)
            self.residual_cache[key] = abs(self.lhs(a, b) - abs(signed))
        return self.residual_cache[key]

    def hypotheses(self, a: float, b: float, s: float, q: float):
        key = (a, b, s, q)
        if key not in self.hyp_cache:
            self.hyp_cache[key] = theorem_hypotheses(
                self.model, a, b, s, q, self.check_cfg)
        return self.hyp_cache[key]

    def fprime_q_convex(self, a: float, b: float, q: float) -> bool:
        key = (a, b, q)
        if key not in self.convex_cache:
            m = self.model
            self.convex_cache[key] = is_convex(
                lambda x: abs(m.fprime(x)) ** q, (a, b), self.check_cfg).ok
        return self.convex_cache[key]


def _verdict(flags: tuple[bool, bool, bool], lhs: float, rhs: float) -> str:
    if not all(flags):
        return "outside-hypotheses"
    return "pass" if lhs <= rhs + PASS_SLACK else "violation"


def _safe_flags(fetch) -> tuple[tuple[bool, bool, bool] | None, str]:
    """Run a hypothesis-check thunk; evaluation failures become a tag
    instead of aborting the sweep."""
    try:
        return fetch(), ""
    except Exception as e:
        return None, f"hyp-error:{type(e).__name__}"


def _emit(records: list, ctx: _ModelContext, theorem: str, a: float, b: float,
          s: float, q: float, rhs_fn,
          flags: tuple[bool, bool, bool] | None, flag_tag: str = "") -> None:
    name = ctx.model.name
    tags = [flag_tag] if flag_tag else []
    if flags is None:
        records.append(BoundRecord(
            name, theorem, a, b, s, q, math.nan, math.nan, math.nan, math.nan,
            False, False, False, "eval-error", ";".join(tags)))
        return
    try:
        lhs = ctx.lhs(a, b)
        rhs = rhs_fn()
        residual = ctx.gap_residual(a, b)
    except Exception as e:
        tags.append(f"error:{type(e).__name__}")
        records.append(BoundRecord(
            name, theorem, a, b, s, q, math.nan, math.nan, math.nan, math.nan,
            *flags, "eval-error", ";".join(tags)))
        return
    records.append(BoundRecord(
        name, theorem, a, b, s, q, lhs, rhs, rhs - lhs, make_ratio(lhs, rhs),
        *flags, _verdict(flags, lhs, rhs), ";".join(tags),
        oracle_residual=residual))


def _pairs(cfg: SweepConfig, m: FunctionModel) -> list[tuple[float, float]]:
    return [(a, b) for a in cfg.a_grid for b in cfg.b_grid
            if a < b and m.contains(a, b)]


def run_sweep(cfg: SweepConfig) -> list[BoundRecord]:
    """One record per (model, parameters, bound) tuple, deterministic order.

    The classical baselines eq8/eq9 are s-independent; their records carry
    s = 1 and (for eq8) q = 1 as placeholders, and their hypothesis flags
    are (|f'|^q convex, true, true) since monotonicity and the derivative
    side condition are not among their preconditions.
    """
    check_cfg = ClassCheckConfig(grid_points=cfg.class_grid_points,
                                 slack=cfg.tolerances.slack)
    records: list[BoundRecord] = []
    for spec in cfg.models:
        model = model_from_spec(spec)
        ctx = _ModelContext(model, cfg, check_cfg)
        is_power = spec.get("builtin") == "power"

        def hyp_flags(a, b, s, q):
            h = ctx.hypotheses(a, b, s, q)
            return (h.class_ok, h.monotone_decreasing_ok, h.fprime_a_le_1)

        for a, b in _pairs(cfg, model):
            flags, tag = _safe_flags(
                lambda: (ctx.fprime_q_convex(a, b, 1.0), True, True))
            _emit(records, ctx, "eq8", a, b, 1.0, 1.0,
                  lambda: bounds.rhs_eq8(model, a, b), flags, tag)
            for q in cfg.q_grid:
                if q > 1.0:
                    p = bounds.conjugate_exponent(q)
                    flags, tag = _safe_flags(
                        lambda: (ctx.fprime_q_convex(a, b, q), True, True))
                    _emit(records, ctx, "eq9", a, b, 1.0, q,
                          lambda: bounds.rhs_eq9(model, a, b, p), flags, tag)
            for s in cfg.s_grid:
                flags1, tag1 = _safe_flags(lambda: hyp_flags(a, b, s, 1.0))
                _emit(records, ctx, "eq10", a, b, s, 1.0,
                      lambda: bounds.rhs_eq10(model, a, b, s), flags1, tag1)
                for q in cfg.q_grid:
                    flags, tag = _safe_flags(lambda: hyp_flags(a, b, s, q))
                    if q > 1.0:
                        _emit(records, ctx, "eq11", a, b, s, q,
                              lambda: bounds.rhs_eq11(model, a, b, s, q),
                              flags, tag)
                    _emit(records, ctx, "eq111", a, b, s, q,
                          lambda: bounds.rhs_eq111(model, a, b, s, q),
                          flags, tag)
                if is_power and s < 1.0 and b <= 1.0:
                    _emit_props(records, ctx, a, b, s, cfg)
    return sort_records(records)


def _prop_record(records: list, ctx: _ModelContext, theorem: str, a: float,
                 b: float, s: float, q: float, rhs_fn, tags: list[str]) -> None:
    name = ctx.model.name
    flags, flag_tag = _safe_flags(lambda: _hyp_tuple(ctx, a, b, s, q))
    if flags is None:
        records.append(BoundRecord(
            name, theorem, a, b, s, q, math.nan, math.nan, math.nan, math.nan,
            False, False, False, "eval-error", ";".join(tags + [flag_tag])))
        return
    try:
        lhs = means.prop_lhs(a, b, s)
        rhs = rhs_fn()
    except Exception as e:
        all_tags = tags + [f"error:{type(e).__name__}"]
        records.append(BoundRecord(
            name, theorem, a, b, s, q, math.nan, math.nan, math.nan, math.nan,
            *flags, "eval-error", ";".join(all_tags)))
        return
    records.append(BoundRecord(
        name, theorem, a, b, s, q, lhs, rhs, rhs - lhs, make_ratio(lhs, rhs),
        *flags, _verdict(flags, lhs, rhs), ";".join(tags)))


def _hyp_tuple(ctx: _ModelContext, a: float, b: float, s: float, q: float):
    h = ctx.hypotheses(a, b, s, q)
    return (h.class_ok, h.monotone_decreasing_ok, h.fprime_a_le_1)


def _emit_props(records: list, ctx: _ModelContext, a: float, b: float,
                s: float, cfg: SweepConfig) -> None:
    """Special-means proposition records for the power family, with the
    dual-route identity checks folded in as discrepancy tags."""
    id_tol = cfg.tolerances.identity_tol

    tags41 = []
    try:
        if means.dual_route_bb(a, b, s, tol=id_tol).classification == "discrepant":
            tags41.append("bb-discrepant")
    except Exception as e:
        tags41.append(f"bb-error:{type(e).__name__}")
    _prop_record(records, ctx, "prop41", a, b, s, 1.0,
                 lambda: means.prop41_rhs(a, b, s), tags41)

    for q in cfg.q_grid:
        if q > 1.0:
            tags32 = []
            try:
                if means.residual_cc(a, b, s, q) > id_tol:
                    tags32.append("cc-discrepant")
                # Printed prefactor vs the kernel-route prefactor differ by
                # b^(sq(1-s)); tag when that factor is materially below 1.
                if abs(1.0 - b ** (s * q * (1.0 - s))) > id_tol:
                    tags32.append("rhs-path")
            except Exception as e:
                tags32.append(f"cc-error:{type(e).__name__}")
            _prop_record(records, ctx, "prop32", a, b, s, q,
                         lambda: means.prop32_rhs(a, b, s, q), tags32)

        tags33 = []
        try:
            if means.deviation_dd(a, b, s, q) > id_tol:
                tags33.append("dd-discrepant")
            ee = means.deviation_ee(a, b, s, q, tol=id_tol)
            if ee.classification == "discrepant":
                tags33.append("ee-discrepant")
            if ee.means_value < 0.0:
                tags33.append("v-negative")
        except Exception as e:
            tags33.append(f"identity-error:{type(e).__name__}")
        _prop_record(records, ctx, "prop33", a, b, s, q,
                     lambda: means.prop33_rhs(a, b, s, q), tags33)


# ---------------------------------------------------------------------------
# Summaries
# ---------------------------------------------------------------------------

def summarize(records: list[BoundRecord]) -> dict:
    """Aggregate counts, proposition pass-rates and oracle residuals."""
    by_verdict: dict[str, int] = {}
    by_theorem: dict[str, dict[str, int]] = {}
    for r in records:
        by_verdict[r.verdict] = by_verdict.get(r.verdict, 0) + 1
        slot = by_theorem.setdefault(r.theorem, {})
        slot[r.verdict] = slot.get(r.verdict, 0) + 1

    prop_rates = {}
    for tag in ("prop41", "prop32", "prop33"):
        rs = [r for r in records if r.theorem == tag]
        if not rs:
            continue
        evaluable = [r for r in rs if r.verdict != "eval-error"]
        holds = [r for r in evaluable if r.gap >= -PASS_SLACK]
        prop_rates[tag] = {
            "records": len(rs),
            "evaluable": len(evaluable),
            "holds": len(holds),
            "rate": len(holds) / len(evaluable) if evaluable else math.nan,
            "hyp_fprime_a_false": sum(1 for r in rs if not r.hyp_fprime_a),
        }

    residuals = [r.oracle_residual for r in records
                 if not math.isnan(r.oracle_residual)]
    discrepancies: dict[str, int] = {}
    for r in records:
        for tag in filter(None, r.discrepancy.split(";")):
            discrepancies[tag] = discrepancies.get(tag, 0) + 1

    return {
        "records": len(records),
        "by_verdict": by_verdict,
        "by_theorem": by_theorem,
        "violations": by_verdict.get("violation", 0),
        "prop_pass_rates": prop_rates,
        "max_gap_identity_residual": max(residuals) if residuals else math.nan,
        "discrepancy_tags": discrepancies,
    }


def format_summary(summary: dict) -> str:
    lines = [f"records: {summary['records']}"]
    for verdict in ("pass", "violation", "outside-hypotheses", "eval-error"):
        n = summary["by_verdict"].get(verdict, 0)
        lines.append(f"  {verdict}: {n}")
    for tag, info in sorted(summary["prop_pass_rates"].items()):
        rate = info["rate"]
        rate_s = "n/a" if isinstance(rate, float) and math.isnan(rate) else f"{rate:.3f}"
        lines.append(f"  {tag}: holds {info['holds']}/{info['evaluable']} "
                     f"evaluable (rate {rate_s}; "
                     f"hyp_fprime_a=false on {info['hyp_fprime_a_false']}/{info['records']})")
    res = summary["max_gap_identity_residual"]
    if not (isinstance(res, float) and math.isnan(res)):
        lines.append(f"  max gap-identity residual: {res:.3e}")
    if summary["discrepancy_tags"]:
        joined = ", ".join(f"{k}={v}" for k, v in sorted(summary["discrepancy_tags"].items()))
        lines.append(f"  discrepancy tags: {joined}")
    return "\n".join(lines)
