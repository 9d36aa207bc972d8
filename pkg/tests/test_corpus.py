import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fractalc.corpus import (
    Compose,
    Constant,
    CorpusMember,
    Cos,
    Exp,
    GridFunction,
    Monomial,
    Product,
    ShiftByValueAt,
    Sum,
    WeierstrassTruncated,
    ac_members,
    cube_root_witness,
    default_corpus,
    differentiate,
    evaluate,
    polynomial_members,
    sample,
)
from fractalc.errors import DomainError, UnsupportedVariantError

ts = st.floats(min_value=0.0, max_value=2.0)


class TestEvaluation:
    @given(ts)
    def test_constant(self, t):
        assert evaluate(Constant(4.25), t) == 4.25

    @given(ts, st.floats(min_value=0.0, max_value=4.0))
    def test_monomial(self, t, e):
        expected = 3.0 * t**e
        assert evaluate(Monomial(3.0, e), t) == pytest.approx(expected, rel=1e-14)

    @given(ts)
    def test_exp_cos(self, t):
        assert evaluate(Exp(1.3), t) == pytest.approx(math.exp(1.3 * t), rel=1e-14)
        assert evaluate(Cos(2.0), t) == pytest.approx(math.cos(2.0 * t), rel=1e-12, abs=1e-14)

    @given(ts)
    def test_sum_product_compose(self, t):
        f = Sum((Constant(1.0), Monomial(2.0, 2.0)))
        g = Product(Exp(1.0), Cos(1.0))
        h = Compose(Monomial(1.0, 2.0), Sum((Monomial(1.0, 1.0), Constant(1.0))))
        assert evaluate(f, t) == pytest.approx(1.0 + 2.0 * t * t, rel=1e-14)
        assert evaluate(g, t) == pytest.approx(math.exp(t) * math.cos(t), rel=1e-13, abs=1e-14)
        assert evaluate(h, t) == pytest.approx((t + 1.0) ** 2, rel=1e-14)

    def test_array_evaluation(self):
        arr = np.linspace(0.0, 1.0, 11)
        out = evaluate(Monomial(1.0, 2.0), arr)
        assert isinstance(out, np.ndarray)
        np.testing.assert_allclose(out, arr**2)

    def test_scalar_returns_float(self):
        assert isinstance(evaluate(Exp(1.0), 0.5), float)

    def test_callable_sugar(self):
        f = Monomial(2.0, 1.0)
        assert f(0.5) == 1.0

    def test_fractional_power_of_negative_rejected(self):
        with pytest.raises(DomainError):
            evaluate(Monomial(1.0, 0.5), -1.0)

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            Monomial(1.0, -1.0)

    def test_shift_by_value_at(self):
        f = ShiftByValueAt(Exp(1.0), 0.5)
        assert evaluate(f, 0.5) == pytest.approx(0.0, abs=1e-15)
        assert evaluate(f, 1.0) == pytest.approx(math.e - math.exp(0.5), rel=1e-14)


class TestDifferentiate:
    CASES = [
        Constant(3.0),
        Monomial(2.0, 3.0),
        Monomial(1.0, 1.0),
        Exp(1.7),
        Cos(3.0),
        Sum((Monomial(1.0, 2.0), Exp(1.0))),
        Product(Monomial(1.0, 2.0), Cos(2.0)),
        Compose(Exp(1.0), Monomial(1.0, 2.0)),
        ShiftByValueAt(Cos(2.0), 0.3),
    ]

    @pytest.mark.parametrize("f", CASES, ids=lambda f: f.describe())
    def test_against_central_difference(self, f):
        fp = differentiate(f)
        h = 1e-6
        for t in (0.2, 0.7, 1.3):
            numeric = (evaluate(f, t + h) - evaluate(f, t - h)) / (2.0 * h)
            assert evaluate(fp, t) == pytest.approx(numeric, rel=1e-7, abs=1e-7)

    def test_fractional_monomial_unsupported(self):
        with pytest.raises(UnsupportedVariantError):
            differentiate(Monomial(1.0, 0.5))

    def test_weierstrass_unsupported(self):
        with pytest.raises(UnsupportedVariantError):
            differentiate(WeierstrassTruncated(0.5, 2.0, 8))


class TestWeierstrass:
    def test_direct_sum_agreement(self):
        w = WeierstrassTruncated(0.5, 2.0, 10)
        for x in (0.0, 0.3, 0.77):
            expected = sum(
                2.0 ** (-0.5 * k) * math.cos(2.0**k * x) for k in range(11)
            )
            assert evaluate(w, x) == pytest.approx(expected, rel=1e-13)

    def test_declared_exponent_and_floor(self):
        w = WeierstrassTruncated(0.5, 2.0, 24)
        assert w.holder_exponent == 0.5
        assert w.resolution_floor == pytest.approx(2.0**-24)

    def test_tail_bound(self):
        w = WeierstrassTruncated(0.5, 2.0, 10)
        r = 2.0**-0.5
        assert w.tail_bound == pytest.approx(r**11 / (1 - r), rel=1e-12)

    @pytest.mark.parametrize("alpha,q,n", [(0.0, 2.0, 8), (1.0, 2.0, 8), (0.5, 1.0, 8), (0.5, 2.0, 0)])
    def test_validation(self, alpha, q, n):
        with pytest.raises(ValueError):
            WeierstrassTruncated(alpha, q, n)


class TestGridFunction:
    def test_interp_hits_nodes(self):
        g = sample(Monomial(1.0, 2.0), 0.0, 1.0, 33)
        for t, v in zip(g.nodes, g.samples):
            assert g.interp(float(t)) == pytest.approx(v, rel=1e-15)

    def test_interp_midpoints_average(self):
        g = GridFunction(0.0, 1.0, 3, np.array([0.0, 2.0, 6.0]))
        assert g.interp(0.25) == pytest.approx(1.0)
        assert g.interp(0.75) == pytest.approx(4.0)

    def test_edge_extrapolation_is_linear(self):
        g = GridFunction(0.0, 1.0, 3, np.array([0.0, 1.0, 2.0]))
        assert g.interp(-0.5) == pytest.approx(-1.0)
        assert g.interp(1.5) == pytest.approx(3.0)

    def test_samples_read_only(self):
        g = sample(Exp(1.0), 0.0, 1.0, 9)
        with pytest.raises(ValueError):
            g.samples[0] = 99.0

    def test_csv_round_trip(self):
        g = sample(Cos(2.0), 0.0, 1.0, 5)
        lines = g.to_csv().strip().splitlines()
        assert lines[0] == "t,value"
        assert len(lines) == 6
        for line, t, v in zip(lines[1:], g.nodes, g.samples):
            st_, sv = line.split(",")
            assert float(st_) == pytest.approx(t, rel=1e-16)
            assert float(sv) == pytest.approx(v, rel=1e-16)

    @pytest.mark.parametrize(
        "a,b,n,samples",
        [
            (1.0, 0.0, 3, [0.0, 1.0, 2.0]),
            (0.0, 1.0, 1, [0.0]),
            (0.0, 1.0, 3, [0.0, 1.0]),
            (0.0, 1.0, 3, [0.0, math.nan, 1.0]),
        ],
    )
    def test_validation(self, a, b, n, samples):
        with pytest.raises(ValueError):
            GridFunction(a, b, n, np.asarray(samples, dtype=float))

    def test_sample_matches_evaluate(self):
        g = sample(Exp(1.0), 0.0, 2.0, 21)
        np.testing.assert_allclose(g.samples, np.exp(g.nodes), rtol=1e-15)


class TestCubeRootWitness:
    @pytest.mark.parametrize(
        "f",
        [
            Constant(-8.0),
            Constant(0.0),
            Monomial(8.0, 3.0),
            Monomial(1.0, 1.0),
            Product(Monomial(2.0, 1.0), Monomial(4.0, 2.0)),
        ],
        ids=lambda f: f.describe(),
    )
    def test_cube_of_witness_restores(self, f):
        g = cube_root_witness(f)
        for t in np.linspace(0.0, 1.5, 7):
            assert evaluate(g, t) ** 3 == pytest.approx(evaluate(f, t), rel=1e-12, abs=1e-12)

    def test_grid_witness(self):
        grid = sample(Monomial(-1.0, 3.0), 0.0, 1.0, 17)
        g = cube_root_witness(grid)
        np.testing.assert_allclose(g.samples**3, grid.samples, atol=1e-14)

    def test_unsupported_expression(self):
        with pytest.raises(UnsupportedVariantError):
            cube_root_witness(Exp(1.0))


class TestCorpus:
    def test_names_unique(self):
        names = [m.name for m in default_corpus()]
        assert len(names) == len(set(names))

    def test_weierstrass_member_not_ac(self):
        members = {m.name: m for m in default_corpus()}
        assert not members["weierstrass-0.5"].absolutely_continuous
        ac = [m.name for m in ac_members()]
        assert "weierstrass-0.5" not in ac
        assert "sqrt" in ac

    def test_polynomial_subset(self):
        for m in polynomial_members():
            assert m.polynomial
            # Polynomial members must differentiate symbolically.
            differentiate(m.expr)

    def test_member_fields(self):
        m = default_corpus()[0]
        assert isinstance(m, CorpusMember)
        assert isinstance(m.expr.describe(), str)

    def test_all_members_evaluate_on_unit_interval(self):
        t = np.linspace(0.0, 1.0, 17)
        for m in default_corpus():
            vals = evaluate(m.expr, t)
            assert np.all(np.isfinite(vals))
