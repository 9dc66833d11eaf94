import math

import numpy as np
import pytest
from scipy.optimize import minimize

from multidep.dependence import dependence
from multidep.info import ProbTensor, classical_cmi
from multidep.measure_opt import (
    MeasurementSetting,
    _outcome_probs,
    induced_cmi,
    induced_distribution,
    measurement_gap,
    optimize_classical_cmi,
)
from multidep.qmat import DensityOperator, random_density, tensor
from multidep.states import classical_presets, dicke, ghz

Z_ALL = MeasurementSetting.uniform(3, 0.0)
X_ALL = MeasurementSetting.uniform(3, math.pi / 2)


def _rho(v):
    return DensityOperator.from_vector(v)


def _basis_oracle(theta, phi):
    up = np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])
    down = np.array([-np.exp(-1j * phi) * math.sin(theta / 2), math.cos(theta / 2)])
    return up, down


def _probs_oracle(rho, angles):
    # explicit rank-one projectors per outcome string
    n = len(angles)
    bases = [_basis_oracle(*a) for a in angles]
    out = np.zeros(2**n)
    for idx in range(2**n):
        vec = np.ones(1, dtype=complex)
        for k in range(n):
            vec = np.kron(vec, bases[k][(idx >> (n - 1 - k)) & 1])
        out[idx] = (vec.conj() @ rho.matrix @ vec).real
    return out


def grid_then_refine(rho, a, b, cond):
    """10 degree grid over a shared setting, then a simplex over all angles from the best grid point."""
    n = rho.num_parties
    best, best_x = -1.0, None
    for t in np.radians(np.arange(0, 181, 10)):
        for p in np.radians(np.arange(0, 360, 10)):
            v = induced_cmi(rho, MeasurementSetting.uniform(n, t, p), a, b, cond)
            if v > best:
                best, best_x = v, [t, p] * n

    def f(x):
        return -induced_cmi(rho, MeasurementSetting.from_params(x), a, b, cond)

    res = minimize(f, best_x, method="Nelder-Mead", options={"xatol": 1e-8, "fatol": 1e-12, "maxfev": 4000})
    return max(best, -res.fun)


def test_setting_validation_and_folding():
    with pytest.raises(ValueError):
        MeasurementSetting(((4.0, 0.0),))
    s = MeasurementSetting.from_params([2 * math.pi - 0.3, 0.1, -0.2, 7.0])
    for t, p in s.angles:
        assert 0 <= t <= math.pi and 0 <= p < 2 * math.pi
    # folding does not change the measured statistics
    rho = random_density(2, 2, seed=3)
    raw = [(2 * math.pi - 0.3, 0.1), (-0.2, 7.0)]
    assert np.allclose(induced_distribution(rho, s).probs, _probs_oracle(rho, raw), atol=1e-12)


def test_induced_distribution_examples():
    p = induced_distribution(_rho(ghz(3)), Z_ALL)
    assert np.allclose(p.probs, classical_presets("P_same").probs, atol=1e-12)
    plus = np.full(8, 1 / math.sqrt(8))
    q = induced_distribution(_rho(plus), X_ALL)
    assert q.probs[0] == pytest.approx(1.0, abs=1e-12)
    gen = np.random.default_rng(5)
    for seed in range(20):
        rho = random_density(3, 2, seed=seed)
        setting = MeasurementSetting.from_params(gen.uniform(0, 2 * math.pi, 6))
        probs = induced_distribution(rho, setting).probs
        assert abs(probs.sum() - 1) <= 1e-12
        assert np.allclose(probs, _probs_oracle(rho, setting.angles), atol=1e-12)


def test_induced_distribution_rejects_qutrits_and_bad_lengths():
    with pytest.raises(ValueError):
        induced_distribution(random_density(3, 3, seed=0), MeasurementSetting.uniform(3, 0.0))
    with pytest.raises(ValueError):
        induced_distribution(random_density(3, 2, seed=0), MeasurementSetting.uniform(2, 0.0))


def test_global_phase_invariance():
    rho = random_density(3, 2, seed=8)
    setting = MeasurementSetting(((0.4, 1.0), (2.0, 3.0), (1.1, 5.5)))
    bases = [setting.basis(k) for k in range(3)]
    phased = [b @ np.diag(np.exp(1j * np.array([0.7 * k, -1.3 * k]))) for k, b in enumerate(bases)]
    p0 = _outcome_probs(rho.matrix, bases)
    p1 = _outcome_probs(rho.matrix, phased)
    assert np.array_equal(np.round(p0, 14), np.round(p1, 14))
    c0 = classical_cmi(ProbTensor(p0 / p0.sum()), 0, 1, [2])
    c1 = classical_cmi(ProbTensor(p1 / p1.sum()), 0, 1, [2])
    assert c0 == pytest.approx(c1, abs=1e-14)


def test_product_state_has_nothing_to_find():
    prod = tensor(*(random_density(1, 2, seed=s) for s in (1, 2, 3)))
    r = optimize_classical_cmi(prod, 0, 1, restarts=4, seed=0)
    assert abs(r.best_value) <= 1e-6


def test_classical_state_reaches_its_value():
    rho = classical_presets("P_even").to_density()
    r = optimize_classical_cmi(rho, 0, 1, [2], restarts=8, seed=1)
    assert r.best_value == pytest.approx(1.0, abs=1e-6)
    assert r.best_value == pytest.approx(classical_cmi(classical_presets("P_even"), 0, 1, [2]), abs=1e-6)


def test_result_is_consistent_and_deterministic():
    rho = _rho(dicke(3, 1))
    a = optimize_classical_cmi(rho, 0, 1, restarts=4, seed=11)
    b = optimize_classical_cmi(rho, 0, 1, restarts=4, seed=11)
    assert a == b
    assert a.best_value == pytest.approx(induced_cmi(rho, a.best_setting, 0, 1, [2]), abs=1e-12)
    assert a.evaluations > 0
    with pytest.raises(ValueError):
        optimize_classical_cmi(rho, 0, 1, restarts=0)


def test_ghz_gap_matches_grid_oracle():
    rho = _rho(ghz(3))
    oracle = grid_then_refine(rho, 0, 1, [2])
    assert oracle == pytest.approx(1.0, abs=1e-6)
    g = measurement_gap(rho, restarts=32, seed=0)
    assert g.classical_value == pytest.approx(oracle, abs=1e-3)
    assert abs(g.gap) <= 1e-3


def test_w_state_stays_below_quantum_value():
    rho = _rho(dicke(3, 1))
    oracle = grid_then_refine(rho, 0, 1, [2])
    r = optimize_classical_cmi(rho, 0, 1, [2], restarts=32, seed=0)
    assert r.best_value >= 2 / 3 - 1e-9  # computational-basis readout already gives 2/3
    assert r.best_value >= oracle - 1e-3
    assert r.best_value < dependence(rho).value


@pytest.mark.slow
def test_dicke_gaps_positive():
    for n in (3, 4):
        g = measurement_gap(_rho(dicke(n, 1)), restarts=32, seed=0)
        assert g.gap > 1e-3
        assert g.classical_value <= g.quantum_value + 1e-6


def test_all_pairs_optima():
    g = measurement_gap(_rho(dicke(3, 1)), restarts=6, seed=2, all_pairs=True)
    assert set(g.pair_optima) == {(0, 1), (0, 2), (1, 2)}
    assert g.min_pair_optimum == min(g.pair_optima.values())
    assert g.pair_optima[g.pair] == g.classical_value
