import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adqc import formulas


def random_spectrum(rng, r):
    lam2 = rng.dirichlet(np.ones(r))
    return np.sqrt(lam2)


class TestPureState:
    def test_printed_examples(self):
        assert formulas.q_pure_printed([1.0]) == 0.0
        lam = np.array([1, 1]) / np.sqrt(2)
        assert formulas.q_pure_printed(lam) == pytest.approx(1.0)
        assert formulas.q_pure_bound(2) == pytest.approx(1.0)
        lam = np.sqrt([0.5, 0.3, 0.2])
        assert formulas.q_pure_printed(lam) == pytest.approx(1.24)

    def test_corrected_examples(self):
        assert formulas.q_pure_corrected([1.0]) == 0.0
        lam = np.array([1, 1]) / np.sqrt(2)
        assert formulas.q_pure_corrected(lam) == pytest.approx(0.5)
        lam = np.sqrt([0.5, 0.3, 0.2])
        assert formulas.q_pure_corrected(lam) == pytest.approx(0.62)

    def test_min_pure(self):
        lam = np.array([1, 1]) / np.sqrt(2)
        assert formulas.min_pure(lam) == pytest.approx(0.5)
        assert formulas.min_pure([1.0]) == 0.0
        for r in (2, 3, 5):
            lam = np.full(r, 1 / np.sqrt(r))
            assert formulas.min_pure(lam) == pytest.approx(1 - 1 / r)

    def test_eof_pure(self):
        lam = np.array([1, 1]) / np.sqrt(2)
        assert formulas.eof_pure(lam) == pytest.approx(1.0)
        assert formulas.eof_pure([1.0]) == 0.0
        assert formulas.eof_pure(np.sqrt([0.75, 0.25])) == pytest.approx(0.811278, abs=1e-6)

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            formulas.q_pure_printed([1.0, 1.0])

    @given(seed=st.integers(0, 10**6), r=st.integers(1, 6))
    @settings(max_examples=100, deadline=None)
    def test_printed_is_twice_corrected(self, seed, r):
        lam = random_spectrum(np.random.default_rng(seed), r)
        assert formulas.q_pure_printed(lam) == pytest.approx(
            2 * formulas.q_pure_corrected(lam), abs=1e-14
        )

    @given(seed=st.integers(0, 10**6), r=st.integers(1, 8))
    @settings(max_examples=100, deadline=None)
    def test_corrected_below_eof(self, seed, r):
        lam = random_spectrum(np.random.default_rng(seed), r)
        assert formulas.q_pure_corrected(lam) <= formulas.eof_pure(lam) + 1e-12


class TestBellDiagonal:
    def test_bell_projector_point(self):
        pc = formulas.q_bell_diagonal([1, -1, 1])
        assert pc.printed == pytest.approx(0.25)
        assert pc.corrected == pytest.approx(0.5)

    def test_zero(self):
        pc = formulas.q_bell_diagonal([0, 0, 0])
        assert pc.printed == 0.0 and pc.corrected == 0.0


class TestWerner:
    def test_printed_m2_x0(self):
        pc = formulas.q_werner(2, 0.0)
        assert pc.printed == pytest.approx(1 / 9)
        assert pc.corrected == pytest.approx(1 / 18)

    def test_product_point(self):
        pc = formulas.q_werner(2, 0.25)
        assert pc.printed == pytest.approx(0.0, abs=1e-15)
        assert pc.corrected == pytest.approx(0.0, abs=1e-15)

    def test_range(self):
        with pytest.raises(ValueError):
            formulas.q_werner(2, -0.1)

    def test_bell_diagonal_overlap(self):
        # Werner(2, x) is Bell-diagonal with c = ((1-4x)/3)(1,1,1).
        for x in np.linspace(0, 1, 9):
            ci = (1 - 4 * x) / 3
            assert formulas.q_werner(2, x).corrected == pytest.approx(
                formulas.q_bell_diagonal([ci, ci, ci]).corrected, abs=1e-12
            )


class TestIsotropic:
    def test_examples(self):
        assert formulas.q_isotropic(2, 1.0) == pytest.approx(0.5)
        assert formulas.q_isotropic(3, 1.0) == pytest.approx(2 / 3)
        assert formulas.q_isotropic(3, 1 / 9) == pytest.approx(0.0, abs=1e-15)

    def test_cross_family_identity(self):
        for m in range(2, 11):
            lam = np.full(m, 1 / np.sqrt(m))
            assert formulas.q_isotropic(m, 1.0) == pytest.approx(1 - 1 / m, abs=1e-12)
            assert formulas.q_isotropic(m, 1.0) == pytest.approx(
                formulas.q_pure_corrected(lam), abs=1e-12
            )


class TestExternalReferenceCurves:
    def test_eof_werner_endpoints(self):
        assert formulas.eof_werner(2, 1.0) == pytest.approx(1.0)
        assert formulas.eof_werner(2, 0.5) == 0.0
        assert formulas.eof_werner(3, 0.2) == 0.0

    def test_eof_isotropic_endpoints(self):
        for m in (2, 3, 4):
            assert formulas.eof_isotropic(m, 1.0) == pytest.approx(np.log2(m), abs=1e-10)
            assert formulas.eof_isotropic(m, 1.0 / m) == pytest.approx(0.0, abs=1e-12)

    def test_discord_product_points(self):
        for m in (2, 3, 4):
            assert formulas.discord_isotropic(m, 1 / m**2) == pytest.approx(0.0, abs=1e-10)
            x_prod = (m - 1) / (2 * m)
            assert formulas.discord_werner(m, x_prod) == pytest.approx(0.0, abs=1e-10)

    def test_discord_pure_limits(self):
        # isotropic y=1 is the maximally entangled pure state: D = log2 m
        for m in (2, 3):
            assert formulas.discord_isotropic(m, 1.0) == pytest.approx(np.log2(m), abs=1e-10)

    @pytest.mark.parametrize(
        "fn,m",
        [
            (formulas.eof_werner, 2),
            (formulas.eof_werner, 3),
            (formulas.eof_isotropic, 2),
            (formulas.eof_isotropic, 4),
            (formulas.discord_werner, 2),
            (formulas.discord_werner, 3),
            (formulas.discord_isotropic, 2),
            (formulas.discord_isotropic, 4),
        ],
    )
    def test_continuity_and_sign(self, fn, m):
        grid = np.linspace(0.0, 1.0, 401)
        vals = np.array([fn(m, t) for t in grid])
        assert np.all(vals >= -1e-12)
        assert np.max(np.abs(np.diff(vals))) <= 0.1  # no jumps on a fine grid
