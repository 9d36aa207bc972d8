import math

import pytest

from fractalc.corpus import (
    Compose,
    Constant,
    GridFunction,
    Monomial,
    Sum,
    WeierstrassTruncated,
)
from fractalc.frac_ops import Direction
from fractalc.local_ops import (
    DEFAULT_SCALES,
    FLOOR_SAFETY,
    MIN_SCALES,
    SweepResult,
    SweepRow,
    bc_lfd,
    bc_probe,
    bc_quotients,
    kg_bc_agreement,
    kg_lfd,
    triviality_sweep,
)
from fractalc.numerics import LimitStatus

SQRT = Monomial(1.0, 0.5)
# (0.5 - t)**0.5: the mirror-image cusp for probing the minus side at y = 0.5.
MIRROR_SQRT = Compose(Monomial(1.0, 0.5), Sum((Constant(0.5), Monomial(-1.0, 1.0))))
WEIER = WeierstrassTruncated(0.5, 2.0, 24)


class TestBCQuotients:
    def test_ladder_shrinks_dyadically(self):
        hs, vals = bc_quotients(SQRT, 0.5, 0.0, Direction.PLUS)
        assert len(hs) == len(vals) == DEFAULT_SCALES
        for a, b in zip(hs, hs[1:]):
            assert b == pytest.approx(a / 2.0, rel=1e-15)

    def test_quotient_scale_invariant_at_matching_exponent(self):
        # For f = t^0.5 at y = 0 with alpha = 0.5 every quotient equals
        # Gamma(1.5) exactly, so the ladder is constant.
        _, vals = bc_quotients(SQRT, 0.5, 0.0, Direction.PLUS)
        for v in vals:
            assert v == pytest.approx(math.gamma(1.5), rel=1e-14)


class TestBCLFD:
    def test_cusp_recovers_gamma(self):
        est = bc_lfd(SQRT, 0.5, 0.0, Direction.PLUS)
        assert est.status is LimitStatus.CONVERGED
        assert est.value == pytest.approx(math.gamma(1.5), rel=1e-12)

    def test_constant_is_exactly_zero(self):
        est = bc_lfd(Constant(3.0), 0.5, 0.4, Direction.PLUS)
        assert est.status is LimitStatus.CONVERGED
        assert est.value == 0.0
        assert est.error_bar == 0.0

    def test_smoother_than_order_vanishes(self):
        # t^0.9 has quotients ~ h^0.4 at the origin for order 0.5.
        est = bc_lfd(Monomial(1.0, 0.9), 0.5, 0.0, Direction.PLUS)
        assert est.status is LimitStatus.CONVERGED
        assert abs(est.value) <= 1e-10

    def test_lipschitz_point_vanishes(self):
        est = bc_lfd(Monomial(1.0, 1.0), 0.5, 0.5, Direction.PLUS)
        assert est.status is LimitStatus.CONVERGED
        assert abs(est.value) <= 1e-10

    def test_minus_direction_mirror_cusp(self):
        est = bc_lfd(MIRROR_SQRT, 0.5, 0.5, Direction.MINUS)
        assert est.status is LimitStatus.CONVERGED
        assert est.value == pytest.approx(-math.gamma(1.5), rel=1e-12)

    def test_direction_accepts_string(self):
        est = bc_lfd(SQRT, 0.5, 0.0, "+")
        assert est.value == pytest.approx(math.gamma(1.5), rel=1e-12)

    def test_probe_records_raw_ladder(self):
        probe = bc_probe(SQRT, 0.5, 0.0)
        assert len(probe.ladder) == len(probe.raw) == DEFAULT_SCALES
        assert probe.alpha == 0.5
        with pytest.raises(AttributeError):
            probe.y = 0.1


class TestKGLFD:
    def test_cusp_recovers_gamma(self):
        est = kg_lfd(SQRT, 0.5, 0.0, Direction.PLUS)
        assert est.status is LimitStatus.CONVERGED
        # The windowed quadrature carries a small constant discretization
        # bias, so the tolerance is looser than the quotient estimator's.
        assert est.value == pytest.approx(math.gamma(1.5), rel=1e-3)

    def test_constant_is_zero(self):
        est = kg_lfd(Constant(2.0), 0.5, 0.3, Direction.PLUS)
        assert est.status is LimitStatus.CONVERGED
        assert abs(est.value) <= 1e-12

    def test_lipschitz_point_vanishes(self):
        est = kg_lfd(Monomial(1.0, 1.0), 0.5, 0.5, Direction.PLUS)
        assert est.status is LimitStatus.CONVERGED
        assert abs(est.value) <= 1e-8

    def test_minus_direction_mirror_cusp(self):
        est = kg_lfd(MIRROR_SQRT, 0.5, 0.5, Direction.MINUS)
        assert est.status is LimitStatus.CONVERGED
        assert est.value == pytest.approx(-math.gamma(1.5), rel=1e-3)

    def test_grid_function_smooth_point(self):
        import numpy as np

        xs = np.linspace(0.0, 1.0, 4097)
        g = GridFunction(0.0, 1.0, 4097, xs**2)
        est = kg_lfd(g, 0.5, 0.5, Direction.PLUS)
        assert est.status is LimitStatus.CONVERGED
        assert abs(est.value) <= 1e-5

    def test_grid_function_cusp_is_flagged(self):
        # Sampled data cannot resolve the deepest window rungs at a cusp; the
        # estimator must refuse to report convergence instead of settling on
        # an interpolation artifact.
        import numpy as np

        xs = np.linspace(0.0, 1.0, 4097)
        g = GridFunction(0.0, 1.0, 4097, np.sqrt(xs))
        est = kg_lfd(g, 0.5, 0.0, Direction.PLUS)
        assert est.status is not LimitStatus.CONVERGED


class TestLadderBoundaries:
    def test_no_room_raises(self):
        with pytest.raises(ValueError):
            bc_probe(Monomial(1.0, 1.0), 0.5, 0.9999, Direction.PLUS)

    def test_minimum_rung_count_kept(self):
        probe = bc_probe(Monomial(1.0, 1.0), 0.5, 0.999, Direction.PLUS)
        assert len(probe.ladder) == MIN_SCALES

    def test_truncated_fractal_clamps_ladder(self):
        floor = FLOOR_SAFETY * WEIER.resolution_floor
        probe = bc_probe(WEIER, 0.5, 0.3, Direction.PLUS, scales=30)
        assert len(probe.ladder) < 30
        assert min(probe.ladder) >= floor

    def test_default_ladder_unclamped(self):
        probe = bc_probe(WEIER, 0.5, 0.3, Direction.PLUS)
        assert len(probe.ladder) == DEFAULT_SCALES


class TestAgreement:
    def test_cusp_gap_small(self):
        rep = kg_bc_agreement(SQRT, 0.5, 0.0, Direction.PLUS)
        assert rep.gap is not None
        assert rep.gap <= 1e-2
        assert rep.notes == ()

    def test_smooth_point_gap_small(self):
        rep = kg_bc_agreement(Monomial(1.0, 2.0), 0.5, 0.5, Direction.PLUS)
        assert rep.gap is not None
        assert rep.gap <= 1e-2

    def test_fractal_reports_statuses_not_gap(self):
        rep = kg_bc_agreement(WEIER, 0.5, 0.3, Direction.PLUS)
        assert rep.bc.status is not LimitStatus.CONVERGED
        assert rep.gap is None
        assert any("clamped" in note for note in rep.notes)


class TestFractalNonconvergence:
    @pytest.mark.parametrize("y", [0.3, 0.55, 0.7])
    def test_raw_quotients_keep_oscillating(self, y):
        # The last three raw quotients stay spread out instead of settling.
        probe = bc_probe(WEIER, 0.5, y, Direction.PLUS)
        tail = probe.raw[-3:]
        assert max(tail) - min(tail) >= 0.1
        assert probe.result.status is not LimitStatus.CONVERGED


class TestTrivialitySweep:
    def test_quadratic_fully_trivial(self):
        res = triviality_sweep(Monomial(1.0, 2.0), 0.5, m=16)
        assert res.fraction == 1.0

    def test_above_order_exponent_fully_trivial(self):
        res = triviality_sweep(SQRT, 0.25, m=16)
        assert res.fraction == 1.0

    def test_matching_exponent_interior_trivial(self):
        res = triviality_sweep(SQRT, 0.5, m=16)
        assert res.fraction == 1.0

    def test_bc_estimator_path(self):
        res = triviality_sweep(Monomial(1.0, 1.0), 0.5, m=8, estimator="bc")
        assert res.fraction == 1.0

    def test_declared_exponent_overrides(self):
        res = triviality_sweep(Monomial(1.0, 2.0), 0.5, 1.0, m=8)
        assert res.fraction == 1.0

    def test_exponent_below_order_rejected(self):
        with pytest.raises(ValueError):
            triviality_sweep(SQRT, 0.75, m=8)

    def test_missing_exponent_rejected(self):
        f = Compose(Monomial(1.0, 2.0), Monomial(1.0, 1.0))
        assert f.holder_exponent is None
        with pytest.raises(ValueError):
            triviality_sweep(f, 0.5, m=8)

    def test_unknown_estimator_rejected(self):
        with pytest.raises(ValueError):
            triviality_sweep(SQRT, 0.25, m=8, estimator="secant")

    def test_csv_layout(self):
        res = triviality_sweep(Monomial(1.0, 1.0), 0.5, m=4, estimator="bc")
        text = res.to_csv()
        lines = text.strip().split("\n")
        assert lines[0] == "y,estimate,status,error_bar"
        assert len(lines) == 5
        first = lines[1].split(",")
        assert float(first[0]) == pytest.approx(0.1)
        assert first[2] in ("Converged", "Divergent", "Inconclusive")

    def test_fraction_counts_only_converged(self):
        rows = (
            SweepRow(0.1, 0.0, LimitStatus.CONVERGED, 0.0),
            SweepRow(0.2, 0.0, LimitStatus.INCONCLUSIVE, 0.5),
            SweepRow(0.3, 5.0, LimitStatus.CONVERGED, 0.0),
            SweepRow(0.4, 1e-9, LimitStatus.CONVERGED, 1e-9),
        )
        res = SweepResult(rows, tol=1e-3)
        assert res.fraction == pytest.approx(0.5)
