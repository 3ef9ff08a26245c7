import math

import numpy as np
import pytest

from hhverify.errors import DomainError
from hhverify.models import (_chebyshev_grid, _power_weight_gap, exp_model,
                             finite_difference, make_model, model_from_expr,
                             model_from_spec, power_model)


REGISTERED = [
    lambda: power_model(0.3),
    lambda: power_model(0.5),
    lambda: power_model(0.9),
    lambda: exp_model(1.0, 1.0, 2.0),
    lambda: exp_model(0.5, 0.5, 2.0),
    lambda: model_from_expr("1 - ln(x)", 1.0, 2.0),
    lambda: model_from_expr("1/x", 1.0, 2.0),
    lambda: model_from_expr("x", 0.25, 2.0),
]


class TestPowerModel:
    def test_values(self):
        m = power_model(0.5)
        assert float(m.f(0.25)) == pytest.approx(1.0, abs=1e-15)
        assert float(np.abs(m.fprime(1.0))) == pytest.approx(1.0, abs=1e-15)

    def test_fprime_at_half(self):
        m = power_model(0.9)
        assert float(np.abs(m.fprime(0.5))) == pytest.approx(0.5 ** -0.1, rel=1e-14)

    def test_fprime_power_identity(self):
        # |f'(x)|^q == x^((s-1)q)
        m = power_model(0.7)
        for x in (0.05, 0.3, 1.0):
            for q in (1.0, 2.0, 4.0):
                assert float(np.abs(m.fprime(x))) ** q == pytest.approx(
                    x ** ((0.7 - 1.0) * q), rel=1e-13)

    @pytest.mark.parametrize("s", [0.0, 1.0, -0.2, 1.5])
    def test_rejects_s_out_of_range(self, s):
        with pytest.raises(ValueError):
            power_model(s)

    def test_rejects_domain_outside_unit_interval(self):
        with pytest.raises(ValueError):
            power_model(0.5, lo=0.5, hi=1.5)

    @pytest.mark.parametrize("s", [0.3, 0.5, 0.9])
    @pytest.mark.parametrize("q", [1.0, 2.0])
    def test_weight_gap_products_nonpositive(self, s, q):
        # the exponent-gap products certifying class membership
        for t in np.arange(0.0, 1.0001, 0.1):
            g1, g2 = _power_weight_gap(s, q, float(t))
            assert g1 <= 1e-15 and g2 <= 1e-15


class TestExpModel:
    def test_values(self):
        m = exp_model(1.0)
        assert float(m.f(1.0)) == pytest.approx(math.exp(-1.0), rel=1e-15)
        assert float(np.abs(m.fprime(1.0))) == pytest.approx(math.exp(-1.0), rel=1e-15)

    def test_rate_scaling(self):
        m = exp_model(2.0, 0.25, 1.0)
        assert float(m.f(0.5)) == pytest.approx(math.exp(-1.0), rel=1e-15)

    @pytest.mark.parametrize("rate", [0.0, -1.0])
    def test_rejects_nonpositive_rate(self, rate):
        with pytest.raises(ValueError):
            exp_model(rate)


class TestExprModels:
    def test_basic(self):
        m = model_from_expr("x^2", 1.0, 2.0)
        assert float(m.fprime(1.5)) == pytest.approx(3.0, rel=1e-14)

    def test_ln(self):
        m = model_from_expr("ln(x)", 0.5, 2.0)
        assert float(m.fprime(1.0)) == pytest.approx(1.0, rel=1e-14)

    def test_probe_catches_domain_error(self):
        with pytest.raises(DomainError) as exc:
            model_from_expr("ln(x-1)", 0.5, 2.0)
        assert exc.value.x <= 1.0 + 1e-12

    def test_bad_domain(self):
        with pytest.raises(ValueError):
            model_from_expr("x", 2.0, 1.0)
        with pytest.raises(ValueError):
            model_from_expr("x", 0.0, 1.0)


def test_model_from_spec_variants():
    m1 = model_from_spec({"builtin": "power", "s": 0.5})
    assert m1.params["s"] == 0.5
    m2 = model_from_spec({"builtin": "exp", "rate": 1.0, "domain": [1.0, 2.0]})
    assert (m2.lo, m2.hi) == (1.0, 2.0)
    m3 = model_from_spec({"name": "recip", "expr": "1/x", "domain": [1.0, 2.0]})
    assert m3.name == "recip"
    with pytest.raises(ValueError):
        model_from_spec({"builtin": "sinusoid"})
    with pytest.raises(ValueError):
        model_from_spec({"name": "nothing"})


def test_make_model_probes_fprime_too():
    # f fine everywhere, f' undefined on half the domain
    with np.errstate(invalid="ignore"):
        with pytest.raises(DomainError):
            make_model("bad", 0.5, 2.0,
                       f=lambda x: np.ones_like(np.asarray(x, dtype=float)),
                       fprime=lambda x: np.log(np.asarray(x, dtype=float) - 1.0))


def test_chebyshev_grid_includes_endpoints():
    g = _chebyshev_grid(1.0, 2.0, 64)
    assert g[0] == pytest.approx(1.0, abs=1e-12)
    assert g[-1] == pytest.approx(2.0, abs=1e-12)
    assert np.all(np.diff(g) > 0)


@pytest.mark.parametrize("factory", REGISTERED)
def test_derivative_matches_finite_differences_on_grid(factory):
    # 64-point grid agreement at 1e-6 relative for every registered model
    m = factory()
    pad = 1e-4 * (m.hi - m.lo)
    grid = _chebyshev_grid(m.lo + pad, m.hi - pad, 64)
    for x in grid:
        x = float(x)
        fd = finite_difference(lambda z: float(m.f(z)), x)
        dv = float(m.fprime(x))
        assert abs(fd - dv) <= 1e-6 * max(1.0, abs(dv))
