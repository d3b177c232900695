import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from distal_beam.curvature import (
    ArcGrid,
    FourierCurvature,
    basis_line_integrals,
    cumulative_integral,
    definite_integral,
    eval_basis,
    eval_curvature,
    tangent_angle,
)

GRID = ArcGrid(1.0, 2049)


class TestEvalBasis:
    @pytest.mark.parametrize(
        "m,kind,s,L,expected",
        [
            (1, "sin", 0.0, 1.0, 0.0),
            (2, "cos", 1.0, 1.0, 1.0),
            (1, "cos", 0.5, 1.0, 0.0),
        ],
    )
    def test_values(self, m, kind, s, L, expected):
        assert eval_basis(m, kind, s, L) == pytest.approx(expected, abs=1e-15)

    def test_out_of_range_s(self):
        with pytest.raises(ValueError):
            eval_basis(1, "cos", 1.5, 1.0)
        with pytest.raises(ValueError):
            eval_basis(1, "cos", -0.1, 1.0)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            eval_basis(0, "cos", 0.5, 1.0)

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            eval_basis(1, "tan", 0.5, 1.0)


class TestEvalCurvature:
    def test_zero_coeffs(self):
        kappa = FourierCurvature(coeffs=np.zeros(6), length_L=1.0)
        assert eval_curvature(kappa, 0.37) == 0.0

    def test_single_cosine(self):
        kappa = FourierCurvature(coeffs=np.array([1.0, 0, 0, 0, 0, 0]), length_L=1.0)
        assert eval_curvature(kappa, 0.0) == pytest.approx(1.0)

    def test_single_sine(self):
        kappa = FourierCurvature(coeffs=np.array([0, 0, 0, 1.0, 0, 0]), length_L=1.0)
        assert eval_curvature(kappa, 0.5) == pytest.approx(1.0)

    def test_domain_error(self):
        kappa = FourierCurvature(coeffs=np.zeros(6), length_L=1.0)
        with pytest.raises(ValueError):
            eval_curvature(kappa, 1.2)

    @given(
        c1=st.lists(st.floats(-10, 10), min_size=6, max_size=6),
        c2=st.lists(st.floats(-10, 10), min_size=6, max_size=6),
        s=st.floats(0.0, 1.0),
    )
    def test_linearity(self, c1, c2, s):
        k1 = FourierCurvature(coeffs=np.array(c1), length_L=1.0)
        k2 = FourierCurvature(coeffs=np.array(c2), length_L=1.0)
        ksum = FourierCurvature(coeffs=k1.coeffs + k2.coeffs, length_L=1.0)
        assert eval_curvature(ksum, s) == pytest.approx(
            eval_curvature(k1, s) + eval_curvature(k2, s), abs=1e-12
        )

    def test_invalid_coeffs(self):
        with pytest.raises(ValueError):
            FourierCurvature(coeffs=np.zeros(5), length_L=1.0)
        with pytest.raises(ValueError):
            FourierCurvature(coeffs=np.array([np.nan, 0.0]), length_L=1.0)


class TestQuadrature:
    def test_zero(self):
        F = cumulative_integral(np.zeros(GRID.n_samples), GRID)
        assert np.all(F == 0.0)

    def test_constant_exact(self):
        F = cumulative_integral(np.ones(GRID.n_samples), GRID)
        assert F[-1] == pytest.approx(1.0, abs=1e-14)

    def test_linear_exact(self):
        F = cumulative_integral(GRID.nodes, GRID)
        assert F[-1] == pytest.approx(0.5, abs=1e-12)

    # trapezoid error for sin(pi s) is h^2 pi/6: 1.3e-7 at n=2049, 8e-9 at n=8193

    def test_sine(self):
        val = definite_integral(np.sin(np.pi * GRID.nodes), GRID)
        assert val == pytest.approx(2.0 / np.pi, abs=2e-7)
        fine = ArcGrid(1.0, 8193)
        assert definite_integral(np.sin(np.pi * fine.nodes), fine) == pytest.approx(
            2.0 / np.pi, abs=1e-8
        )

    def test_s_times_sine(self):
        val = definite_integral(GRID.nodes * np.sin(np.pi * GRID.nodes), GRID)
        assert val == pytest.approx(1.0 / np.pi, abs=2e-7)
        fine = ArcGrid(1.0, 8193)
        assert definite_integral(fine.nodes * np.sin(np.pi * fine.nodes), fine) == pytest.approx(
            1.0 / np.pi, abs=1e-8
        )

    def test_grid_mismatch(self):
        with pytest.raises(ValueError):
            cumulative_integral(np.zeros(100), GRID)
        with pytest.raises(ValueError):
            definite_integral(np.zeros(100), GRID)

    def test_second_order_convergence(self):
        # error should shrink by >= 3.9x per doubling of the interval count
        errors = []
        for n in (129, 257, 513, 1025):
            grid = ArcGrid(1.0, n)
            val = definite_integral(np.sin(np.pi * grid.nodes), grid)
            errors.append(abs(val - 2.0 / np.pi))
        for coarse, fine in zip(errors, errors[1:]):
            assert coarse / fine >= 3.9

    def test_determinism(self):
        f = np.sin(2.3 * GRID.nodes)
        a = cumulative_integral(f, GRID)
        b = cumulative_integral(f, GRID)
        assert np.array_equal(a, b)
        assert np.array_equal(ArcGrid(1.0, 2049).nodes, GRID.nodes)


class TestClosedForms:
    @pytest.mark.parametrize("M,L", [(2, 1.0), (3, 1.0), (3, 0.7), (5, 2.5)])
    def test_line_integrals_match_quadrature(self, M, L):
        grid = ArcGrid(L, 32769)
        row0, row1 = basis_line_integrals(M, L)
        for i in range(2 * M):
            m = i % M + 1
            kind = "cos" if i < M else "sin"
            b = eval_basis(m, kind, grid.nodes, L)
            assert row0[i] == pytest.approx(definite_integral(b, grid), abs=1e-8 * max(L, 1))
            assert row1[i] == pytest.approx(
                definite_integral(grid.nodes * b, grid), abs=1e-8 * max(L, 1) ** 2
            )

    def test_cosine_entries_exactly_zero(self):
        row0, _ = basis_line_integrals(4, 1.3)
        assert np.all(row0[:4] == 0.0)

    def test_tangent_angle_matches_cumulative(self):
        rng = np.random.default_rng(7)
        kappa = FourierCurvature(coeffs=rng.normal(size=6), length_L=1.0)
        theta_quad = cumulative_integral(eval_curvature(kappa, GRID.nodes), GRID)
        theta_exact = tangent_angle(kappa, GRID.nodes)
        assert np.max(np.abs(theta_quad - theta_exact)) < 1e-6


class TestArcGrid:
    def test_rejects_even_or_tiny(self):
        with pytest.raises(ValueError):
            ArcGrid(1.0, 2048)
        with pytest.raises(ValueError):
            ArcGrid(1.0, 1)
        with pytest.raises(ValueError):
            ArcGrid(-1.0, 9)

    def test_endpoints_exact(self):
        grid = ArcGrid(0.73, 513)
        assert grid.nodes[0] == 0.0
        assert grid.nodes[-1] == 0.73
