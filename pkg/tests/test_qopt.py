import numpy as np
import pytest

from adqc import formulas, measure, qopt, states
from adqc.measure import VNMeasurement
from adqc.qopt import GammaTriple, OptimizerConfig, gamma_direct, gamma_printed, q_numeric

from conftest import random_bell_diagonal_c

FAST = OptimizerConfig(restarts=8, seed=7)


class TestConfig:
    def test_restart_defaults(self):
        cfg = OptimizerConfig()
        assert cfg.effective_restarts(2) == 32
        assert cfg.effective_restarts(3) == 32
        assert cfg.effective_restarts(4) == 64

    def test_validation(self):
        with pytest.raises(ValueError):
            OptimizerConfig(restarts=0)
        with pytest.raises(ValueError):
            OptimizerConfig(convergence_tol=0)


class TestQNumeric:
    def test_maximally_mixed(self):
        st = states.BipartiteState(2, 2, np.eye(4) / 4)
        assert q_numeric(st, FAST).value <= 1e-10

    def test_bell(self):
        st = states.from_pure([1, 0, 0, 1], 2, 2)
        assert q_numeric(st, FAST).value == pytest.approx(0.5, abs=1e-8)

    def test_isotropic_pure(self):
        st = states.isotropic(2, 1.0)
        assert q_numeric(st, FAST).value == pytest.approx(
            formulas.q_isotropic(2, 1.0), abs=1e-8
        )
        assert formulas.q_isotropic(2, 1.0) == pytest.approx(0.5)

    def test_result_invariants(self, rng):
        st = states.random_state(2, 2, rng)
        res = q_numeric(st, FAST)
        assert res.value == max(res.per_restart_values)
        assert res.value >= measure.objective(st, res.argmax) - 1e-12

    def test_reproducible_and_monotone(self, rng):
        st = states.random_state(2, 2, rng)
        r8a = q_numeric(st, OptimizerConfig(restarts=8, seed=3))
        r8b = q_numeric(st, OptimizerConfig(restarts=8, seed=3))
        assert r8a.per_restart_values == r8b.per_restart_values
        r16 = q_numeric(st, OptimizerConfig(restarts=16, seed=3))
        assert r16.per_restart_values[:8] == r8a.per_restart_values
        assert r16.value >= r8a.value

    def test_dominates_random_bases(self, rng):
        st = states.random_state(2, 2, rng)
        best = q_numeric(st, FAST).value
        for _ in range(100):
            assert best >= measure.objective(st, VNMeasurement.haar_random(2, rng)) - 1e-9

    def test_constancy_family_restarts_agree(self):
        res = q_numeric(states.werner(3, 0.9), OptimizerConfig(restarts=8, seed=1))
        spread = max(res.per_restart_values) - min(res.per_restart_values)
        assert spread <= 1e-9

    def test_local_unitary_invariance(self, rng):
        st = states.random_state(2, 2, rng)
        ua = np.asarray(measure.VNMeasurement.haar_random(2, rng).basis)
        ub = np.asarray(measure.VNMeasurement.haar_random(2, rng).basis)
        rotated = states.apply_local_unitaries(st, ua, ub)
        assert abs(q_numeric(st).value - q_numeric(rotated).value) <= 1e-6

    def test_canonical_form_preserves_q(self, rng):
        st = states.random_state(2, 2, rng)
        canon = states.canonicalize_two_qubit(st)
        rotated = states.apply_local_unitaries(st, canon.u_a, canon.u_b)
        assert abs(q_numeric(st).value - q_numeric(rotated).value) <= 1e-6


class TestGammaDirect:
    def test_bell_diagonal(self, rng):
        c = random_bell_diagonal_c(rng)
        g = gamma_direct(states.bell_diagonal(c))
        assert g.gamma_1 == pytest.approx(c[0] ** 2 / 2, abs=1e-10)
        assert g.gamma_2 == pytest.approx(c[1] ** 2 / 2, abs=1e-10)
        assert g.gamma_3 == pytest.approx(c[2] ** 2 / 2, abs=1e-10)
        assert g.gamma == pytest.approx(np.max(c**2) / 2, abs=1e-10)

    def test_product_zero(self, rng):
        g = gamma_direct(states.random_product_state(2, 2, rng))
        assert max(g.gamma_1, g.gamma_2, g.gamma_3) <= 1e-10

    def test_lower_bound(self, rng):
        for _ in range(10):
            st = states.random_state(2, 2, rng)
            assert gamma_direct(st).gamma <= q_numeric(st, FAST).value + 1e-9


class TestGammaPrinted:
    def _canon(self, a, b, c):
        return states.TwoQubitCanonical(
            a=np.asarray(a, float), b=np.asarray(b, float), c=np.asarray(c, float),
            u_a=np.eye(2, dtype=complex), u_b=np.eye(2, dtype=complex),
        )

    def test_single_axis(self):
        g = gamma_printed(self._canon([0, 0, 0], [0, 0, 0], [0.7, 0, 0]))
        assert g.gamma_1 == pytest.approx(0.49)
        assert g.gamma == pytest.approx(0.49)

    def test_all_zero(self):
        g = gamma_printed(self._canon([0, 0, 0], [0, 0, 0], [0, 0, 0]))
        assert (g.gamma_1, g.gamma_2, g.gamma_3) == (0, 0, 0)

    def test_twice_direct_on_bell_diagonal(self, rng):
        c = random_bell_diagonal_c(rng)
        st = states.bell_diagonal(c)
        gp = gamma_printed(states.canonicalize_two_qubit(st))
        gd = gamma_direct(st)
        printed = sorted((gp.gamma_1, gp.gamma_2, gp.gamma_3))
        direct = sorted((gd.gamma_1, gd.gamma_2, gd.gamma_3))
        for p, d in zip(printed, direct):
            assert p == pytest.approx(2 * d, abs=1e-9)

    def test_degenerate_flag(self):
        g = gamma_printed(self._canon([1.0, 0, 0], [0, 0, 0], [0, 0, 0]))
        assert g.degenerate
        assert np.isnan(g.gamma)
