import math
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from multidep.dependence import dependence, k_dependence
from multidep.info import conditional_mutual_information, spectrum, subsystem_entropy
from multidep.qmat import DensityOperator, marginal
from multidep.states import (
    CLASSICAL_PRESETS,
    PAULI,
    GraphSpec,
    PauliString,
    ame_state,
    classical_presets,
    dicke,
    ghz,
    graph_stabilizers,
    graph_state,
    kuniform_mixed,
    nc_state,
    smolin,
    stabilizer_state,
    w_state,
    weyl_heisenberg,
)

from conftest import kron_loop


def _rho(v):
    return DensityOperator.from_vector(v)


def _is_maximally_mixed(m, tol=1e-10):
    return np.abs(m - np.eye(m.shape[0]) / m.shape[0]).max() <= tol


def test_pauli_string_parse_and_algebra():
    p = PauliString.parse("-iXYZ")
    assert p.phase == -1j and p.letters == "XYZ" and not p.is_hermitian
    assert str(PauliString.parse("XZ")) == "+XZ"
    x, z = PauliString.parse("+XI"), PauliString.parse("+ZI")
    assert not x.commutes_with(z)
    assert PauliString.parse("+XX").commutes_with(PauliString.parse("+ZZ"))
    expected = kron_loop(PAULI["X"], PAULI["Z"])
    assert np.allclose(PauliString.parse("+XZ").to_matrix(), expected)
    with pytest.raises(ValueError):
        PauliString.parse("+XQ")


def test_graph_spec_validation():
    with pytest.raises(ValueError):
        GraphSpec.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        GraphSpec.from_edges(3, [(0, 3)])
    with pytest.raises(ValueError):
        GraphSpec.from_edges(3, [(0, 1), (1, 0)])
    assert GraphSpec.cycle(4).neighbours(0) == [1, 3]


def test_ghz_examples():
    assert np.allclose(ghz(2), np.array([1, 0, 0, 1]) / np.sqrt(2))
    v = ghz(4, 3)
    assert np.count_nonzero(v) == 3 and np.allclose(v[v != 0], 1 / np.sqrt(3))
    assert _is_maximally_mixed(marginal(DensityOperator.from_vector(v, 3), [2]).matrix)
    assert dependence(_rho(ghz(3))).value == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ValueError):
        ghz(1)


def test_dicke_examples():
    v = dicke(4, 2)
    assert np.count_nonzero(v) == 6 and np.allclose(v[v != 0], 1 / np.sqrt(6))
    one = np.sort(spectrum(marginal(_rho(w_state(3)), [0]).matrix))
    assert np.allclose(one, [1 / 3, 2 / 3])
    with pytest.raises(ValueError):
        dicke(4, 0)


def test_dicke_two_party_spectrum_oracle():
    # e(e-1)/N(N-1), 2e(N-e)/N(N-1), (N-e)(N-e-1)/N(N-1) for N=4, e=2
    vals = np.sort(spectrum(marginal(_rho(dicke(4, 2)), [0, 1]).matrix))
    assert np.allclose(vals[-3:], [1 / 6, 1 / 6, 2 / 3], atol=1e-12)
    assert np.allclose(vals[:-3], 0, atol=1e-12)


def test_dicke_table_value():
    assert dependence(_rho(dicke(6, 3))).value == pytest.approx(0.6291, abs=5e-4)


def test_graph_state_examples():
    l4 = _rho(graph_state(GraphSpec.path(4)))
    assert abs(dependence(l4).value) <= 1e-9
    assert k_dependence(l4, 3).value == pytest.approx(1.0, abs=1e-9)
    r5 = _rho(graph_state(GraphSpec.cycle(5)))
    assert k_dependence(r5, 3).value == pytest.approx(1.0, abs=1e-9)
    assert k_dependence(r5, 4).value == pytest.approx(1.0, abs=1e-9)
    assert abs(dependence(r5).value) <= 1e-9
    bell_like = _rho(graph_state(GraphSpec.from_edges(2, [(0, 1)])))
    assert _is_maximally_mixed(marginal(bell_like, [0]).matrix)
    assert _is_maximally_mixed(marginal(bell_like, [1]).matrix)


def test_linear_cluster_has_a_maximally_mixed_pair():
    l4 = _rho(graph_state(GraphSpec.path(4)))
    assert any(_is_maximally_mixed(marginal(l4, pair).matrix) for pair in combinations(range(4), 2))


def test_graph_state_matches_stabilizer_projector():
    g = GraphSpec.path(4)
    via_gens = stabilizer_state(graph_stabilizers(g))
    assert np.abs(via_gens.matrix - _rho(graph_state(g)).matrix).max() <= 1e-10


def test_stabilizer_state_rank_and_errors():
    assert np.allclose(stabilizer_state([], 3).matrix, np.eye(8) / 8)
    for gens, rank in ((["+ZZI"], 4), (["+ZZI", "+IZZ"], 2), (["+XXX", "+ZZI", "+IZZ"], 1)):
        rho = stabilizer_state(gens)
        assert int((np.linalg.eigvalsh(rho.matrix) > 1e-10).sum()) == rank
    with pytest.raises(ValueError):
        stabilizer_state(["+XI", "+ZI"])
    with pytest.raises(ValueError):
        stabilizer_state(["+ZZ", "+ZZ"])
    with pytest.raises(ValueError):
        stabilizer_state(["+iZZ"])
    with pytest.raises(ValueError):
        stabilizer_state(["+ZZ", "+XX", "-YY"])


def test_ame_presets():
    ame5 = ame_state(5)
    assert [k_dependence(ame5, k).value for k in (3, 4, 5)] == pytest.approx([1, 1, 0], abs=1e-9)
    ame6 = ame_state(6)
    assert [k_dependence(ame6, k).value for k in (3, 4, 5, 6)] == pytest.approx([0, 2, 0, 0], abs=1e-9)
    for s in combinations(range(6), 3):
        assert _is_maximally_mixed(marginal(ame6, s).matrix)
    with pytest.raises(ValueError):
        ame_state(7)


def test_weyl_heisenberg_convention():
    x, z = weyl_heisenberg(3)
    e = np.eye(3)
    assert np.allclose(x @ e[:, 1], e[:, 0])  # X = sum |j><j+1|
    assert np.allclose(x @ e[:, 0], e[:, 2])
    assert np.allclose(np.diag(z), np.exp(2j * np.pi * np.arange(3) / 3))
    w = np.exp(2j * np.pi / 3)
    assert np.allclose(x @ z, w * z @ x)


def test_kuniform_qubit_n4():
    rho = kuniform_mixed(4, 2)
    assert dependence(rho).value == pytest.approx(2.0, abs=1e-9)
    assert _is_maximally_mixed(marginal(rho, [1, 2, 3]).matrix)
    assert np.abs(rho.matrix - smolin(4).matrix).max() <= 1e-12


@pytest.mark.parametrize("n,d", [(4, 2), (6, 2), (3, 3), (6, 3), (4, 4)])
def test_kuniform_uniformity_and_symmetry(n, d):
    rho = kuniform_mixed(n, d)
    for size in range(1, n):
        for s in combinations(range(n), size):
            assert _is_maximally_mixed(marginal(rho, s).matrix)
    r = dependence(rho)
    vals = [v for _, _, v in r.pair_values]
    assert max(vals) - min(vals) <= 1e-9


@pytest.mark.parametrize("n,d", [(4, 2), (6, 2), (3, 3), (6, 3), (4, 4)])
def test_kuniform_rank_is_d_to_n_minus_2(n, d):
    # the generator formula is a normalized projector of rank d^(N-2) whenever d divides N
    rho = kuniform_mixed(n, d)
    assert int((np.linalg.eigvalsh(rho.matrix) > 1e-10).sum()) == d ** (n - 2)
    assert subsystem_entropy(rho, range(n)) == pytest.approx(n - 2, abs=1e-9)
    assert dependence(rho).value == pytest.approx(2.0, abs=1e-9)


def test_kuniform_rejects_unsupported_sizes():
    with pytest.raises(ValueError):
        kuniform_mixed(4, 3)
    with pytest.raises(ValueError):
        kuniform_mixed(2, 2)


def test_smolin_correlations_and_n6():
    rho = smolin(4)
    for p in "XYZ":
        big = PauliString(1, p * 4).to_matrix()
        assert np.trace(rho.matrix @ big).real == pytest.approx(1.0, abs=1e-12)
    six = smolin(6)
    assert dependence(six).value == pytest.approx(2.0, abs=1e-9)
    for s in combinations(range(6), 5):
        assert _is_maximally_mixed(marginal(six, s).matrix)
    with pytest.raises(ValueError):
        smolin(5)


def test_smolin_and_kuniform_coincide_only_for_n_divisible_by_4():
    assert np.abs(smolin(8).matrix - kuniform_mixed(8, 2).matrix).max() <= 1e-12
    # for N = 6 the two constructions are different 5-uniform states with the same D_6
    assert np.abs(smolin(6).matrix - kuniform_mixed(6, 2).matrix).max() == pytest.approx(1 / 32, abs=1e-12)
    assert dependence(kuniform_mixed(6, 2)).value == pytest.approx(2.0, abs=1e-9)


def test_nc_state():
    rho = nc_state(3)
    rho.validate()
    assert dependence(rho).value == pytest.approx(0.5033, abs=5e-4)
    five = nc_state(5)
    assert int((np.linalg.eigvalsh(five.matrix) > 1e-10).sum()) == 2
    assert dependence(five).value == pytest.approx(0.47, abs=5e-3)


def test_classical_presets():
    for name, table in CLASSICAL_PRESETS.items():
        assert sum(table.values()) == 1
        assert all(isinstance(v, Fraction) for v in table.values())
    assert abs(dependence(classical_presets("P_same")).value) <= 1e-12
    assert dependence(classical_presets("P_even")).value == pytest.approx(1.0, abs=1e-12)
    ad = classical_presets("AD_example")
    r = dependence(ad)
    assert r.min_pair == (1, 2)
    assert r.value == pytest.approx(conditional_mutual_information(ad, 1, 2, [0]), abs=0)
    assert r.value == pytest.approx(0.06, abs=5e-3)
    with pytest.raises(ValueError):
        classical_presets("nope")


@pytest.mark.parametrize(
    "build",
    [
        lambda: _rho(ghz(4)),
        lambda: _rho(dicke(5, 2)),
        lambda: _rho(graph_state(GraphSpec.cycle(6))),
        lambda: ame_state(5),
        lambda: kuniform_mixed(3, 3),
        lambda: smolin(6),
        lambda: nc_state(4),
    ],
)
def test_constructors_pass_validation(build):
    rho = build()
    rho.validate()
    assert math.isclose(np.trace(rho.matrix).real, 1.0, abs_tol=1e-12)
