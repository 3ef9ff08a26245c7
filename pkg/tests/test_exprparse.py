import math

import numpy as np
import pytest

from hhverify import exprparse as ep
from hhverify.errors import DomainError, ParseError

from conftest import random_expr


def ev(src, x):
    return ep.evaluate(ep.parse(src), x)


def dev(src, x):
    return ep.evaluate(ep.differentiate(ep.parse(src)), x)


class TestParseEvaluate:
    def test_square(self):
        assert ev("x^2", 3.0) == 9.0

    def test_half_power_scaled(self):
        # x^s/s with s = 1/2: 2*sqrt(0.25) = 1
        assert ev("x^0.5/0.5", 0.25) == pytest.approx(1.0, abs=1e-15)

    def test_ln(self):
        assert ev("ln(x)", 1.0) == 0.0

    def test_self_power(self):
        # exp(x*ln(x)) at 2
        assert ev("x^(x)", 2.0) == pytest.approx(4.0, rel=1e-15)

    def test_scientific_notation(self):
        assert ev("1e-3*x", 2.0) == pytest.approx(2e-3)

    def test_precedence(self):
        assert ev("2*x^2", 3.0) == 18.0         # ^ before *
        assert ev("-x^2", 3.0) == -9.0          # ^ before unary minus
        assert ev("2 - 3*x", 4.0) == -10.0      # * before -
        assert ev("2^3^2", 1.0) == 512.0        # right-associative

    def test_unary_minus_chain(self):
        assert ev("--x", 5.0) == 5.0

    @pytest.mark.parametrize("bad, offset_min", [
        ("exp(-(x", 7),
        ("", 0),
        ("x +", 3),
        ("(x+1", 4),
        ("sin(x)", 0),
        ("x ~ 2", 1),
        ("x) + 1", 1),
    ])
    def test_parse_errors_carry_offset(self, bad, offset_min):
        with pytest.raises(ParseError) as exc:
            ep.parse(bad)
        assert 0 <= exc.value.offset <= len(bad)
        assert exc.value.offset >= offset_min - 1

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            ev("ln(x)", 0.0)
        with pytest.raises(DomainError):
            ev("ln(x-1)", 0.5)
        with pytest.raises(DomainError):
            ev("1/(x-1)", 1.0)
        with pytest.raises(DomainError):
            ev("(x-2)^0.5", 1.0)


class TestDifferentiate:
    def test_square(self):
        assert dev("x^2", 3.0) == pytest.approx(6.0, rel=1e-15)

    def test_half_power_scaled(self):
        # d/dx (x^0.5 / 0.5) = x^(-0.5); at 0.25 that is 2
        assert dev("x^0.5/0.5", 0.25) == pytest.approx(2.0, rel=1e-12)

    def test_exp(self):
        assert dev("exp(x)", 1e-12) == pytest.approx(1.0, rel=1e-9)

    def test_general_power_rewrite(self):
        # x^x -> exp(x ln x); derivative x^x (ln x + 1)
        got = dev("x^(x)", 2.0)
        assert got == pytest.approx(4.0 * (math.log(2.0) + 1.0), rel=1e-12)

    def test_quotient_rule(self):
        got = dev("x/(x+1)", 2.0)
        assert got == pytest.approx(1.0 / 9.0, rel=1e-12)


def test_derivative_matches_finite_differences():
    # 1000 random expressions, random x; central difference with
    # h = 1e-5 * max(1, |x|) must agree within 1e-6 * max(1, |value|).
    rng = np.random.default_rng(12345)
    checked = 0
    attempts = 0
    while checked < 1000:
        attempts += 1
        assert attempts < 30000, "generator rejected too many candidates"
        tree = random_expr(rng, int(rng.integers(1, 4)))
        x = float(rng.uniform(0.3, 2.0))
        h = 1e-5 * max(1.0, abs(x))
        try:
            d = ep.differentiate(tree)
            v0 = ep.evaluate(tree, x)
            vm = ep.evaluate(tree, x - h)
            vp = ep.evaluate(tree, x + h)
            dv = ep.evaluate(d, x)
        except DomainError:
            continue
        if max(abs(v0), abs(vm), abs(vp), abs(dv)) > 1e6:
            continue
        fd = (vp - vm) / (2.0 * h)
        assert abs(dv - fd) <= 1e-6 * max(1.0, abs(dv)), ep.pretty(tree)
        checked += 1


def test_pretty_roundtrip_sources():
    sources = ["x^2", "x^0.5/0.5", "exp(-(x))", "1 - ln(x)", "1/x", "x^(x)",
               "2^-3*x", "-x^2 + 3*x - 1", "x^2^3", "(x+1)*(x-2)/(x+3)",
               "exp(x*ln(x))", "1e-3*x", "x/2/3", "x-(1-x)"]
    for src in sources:
        t = ep.parse(src)
        p = ep.pretty(t)
        t2 = ep.parse(p)
        assert t2 == t, src
        assert ep.pretty(t2) == p, src


def test_pretty_roundtrip_random():
    rng = np.random.default_rng(777)
    done = 0
    while done < 300:
        t = random_expr(rng, int(rng.integers(0, 5)))
        p = ep.pretty(t)
        t2 = ep.parse(p)
        assert t2 == t, p
        done += 1


def test_derivative_trees_reparse():
    # derivative output uses the same printable grammar
    rng = np.random.default_rng(53)
    for _ in range(200):
        t = ep.differentiate(random_expr(rng, 3))
        p = ep.pretty(t)
        assert ep.parse(p) == t, p
