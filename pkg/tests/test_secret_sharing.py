import warnings
from itertools import combinations

import numpy as np
import pytest

from multidep.channels import choi
from multidep.dependence import dependence
from multidep.qmat import DensityOperator, marginal, random_density
from multidep.secret_sharing import (
    SecretSharingScheme,
    choi_encoder,
    encoding_is_positive,
    leakage_audit,
    rate_bound,
    ss_decode,
    ss_encode,
)
from multidep.states import PauliString, ghz, smolin

from conftest import all_subsets


def _trace_distance_to_mixed(m: np.ndarray) -> float:
    diff = m - np.eye(m.shape[0]) / m.shape[0]
    return 0.5 * float(np.abs(np.linalg.eigvalsh(diff)).sum())


def test_encode_examples():
    assert np.allclose(ss_encode(np.eye(2) / 2, 4).matrix, np.eye(16) / 16)
    out = ss_encode(np.diag([1.0, 0.0]), 4)
    zzzz = PauliString(1, "ZZZZ").to_matrix()
    assert np.trace(zzzz @ out.matrix).real == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        ss_encode(np.eye(2) / 2, 5)


def test_decode_examples():
    plus = np.full((2, 2), 0.5)
    assert np.allclose(ss_decode(ss_encode(plus, 4)), plus, atol=1e-12)
    assert np.allclose(ss_decode(DensityOperator(np.eye(16) / 16, 2)), np.eye(2) / 2)
    with pytest.raises(ValueError):
        ss_decode(np.eye(8) / 8)


@pytest.mark.parametrize("n", [4, 6])
def test_round_trip_and_hiding(n):
    for seed in range(20):
        secret = random_density(1, 2, rank=1 + seed % 2, seed=seed).matrix
        shares = ss_encode(secret, n)
        assert np.abs(ss_decode(shares) - secret).max() <= 1e-10
        assert leakage_audit(shares) <= 1e-10
        for s in combinations(range(n), n - 1):
            assert np.abs(marginal(shares, s).matrix - np.eye(2 ** (n - 1)) / 2 ** (n - 1)).max() <= 1e-12


def test_scheme_wrapper():
    scheme = SecretSharingScheme(4)
    secret = random_density(1, 2, seed=1).matrix
    assert np.allclose(scheme.decode(scheme.encode(secret)), secret, atol=1e-12)
    with pytest.raises(ValueError):
        SecretSharingScheme(3)


def test_leakage_audit_ghz_oracle():
    shares = DensityOperator.from_vector(ghz(4))
    worst = max(_trace_distance_to_mixed(marginal(shares, s).matrix) for s in all_subsets(4))
    assert worst == pytest.approx(0.75, abs=1e-12)
    assert leakage_audit(shares) == pytest.approx(worst, abs=1e-12)


def test_leakage_audit_product_and_limit():
    assert leakage_audit(DensityOperator(np.eye(16) / 16, 2)) <= 1e-15
    with pytest.raises(ValueError):
        leakage_audit(DensityOperator(np.eye(2**9) / 2**9, 2, check=False))


def test_encoder_is_not_positive_on_every_secret():
    # the closed-form encoder with the (-1)^{N/2} sign is positive only on part of the Bloch ball
    bad = np.eye(2) / 2 + 0.5 / np.sqrt(3) * (
        np.array([[0, 1], [1, 0]]) + np.array([[0, -1j], [1j, 0]]) + np.diag([1, -1])
    )
    for n in (4, 6):
        assert not encoding_is_positive(bad, n)
        assert np.linalg.eigvalsh(ss_encode(bad, n).matrix)[0] == pytest.approx((1 - np.sqrt(3)) / 2**n, abs=1e-12)
    assert encoding_is_positive(np.eye(2) / 2, 4)
    # decoding is still exact for it
    assert np.allclose(ss_decode(ss_encode(bad, 4)), bad, atol=1e-12)


def test_encoder_choi_state_structure():
    c = SecretSharingScheme(4).choi()
    assert c.num_parties == 5
    for p in range(5):
        assert np.allclose(marginal(c, [p]).matrix, np.eye(2) / 2, atol=1e-12)
    # not a density operator: the encoder is not completely positive
    assert np.linalg.eigvalsh(c.matrix)[0] < -1e-3


def test_choi_encoder_from_smolin():
    enc = choi_encoder(smolin(4))
    assert (enc.d_in, enc.d_out) == (2, 8)
    secret = random_density(1, 2, seed=2).matrix
    out = enc(secret)
    assert np.linalg.eigvalsh(out)[0] >= -1e-12
    assert np.trace(out).real == pytest.approx(1.0, abs=1e-12)
    for keep in ([0], [1], [2], [0, 1], [0, 2], [1, 2]):
        assert np.allclose(marginal(DensityOperator(out, 2), keep).matrix, np.eye(2 ** len(keep)) / 2 ** len(keep))
    again = choi(enc, d_in=2)
    assert np.allclose(again.matrix, smolin(4).matrix, atol=1e-12)


def test_rate_bound_examples():
    rb = rate_bound(smolin(4))
    assert rb.dependence_value == pytest.approx(2.0, abs=1e-9)
    assert rb.lower_bound == pytest.approx(1.0, abs=1e-9)
    assert rb.coherent_info == pytest.approx(1.0, abs=1e-9)
    assert rb.marginals_maximally_mixed
    mixed = rate_bound(DensityOperator(np.eye(16) / 16, 2))
    assert mixed.dependence_value == pytest.approx(0.0, abs=1e-12)
    assert mixed.lower_bound == pytest.approx(-1.0, abs=1e-12)
    assert mixed.coherent_info == pytest.approx(-1.0, abs=1e-12)
    g = rate_bound(DensityOperator.from_vector(ghz(4)))
    assert g.dependence_value == pytest.approx(1.0, abs=1e-9)
    assert g.lower_bound == pytest.approx(0.0, abs=1e-9)
    assert g.coherent_info == pytest.approx(1.0, abs=1e-9)


def test_rate_bound_terms_are_consistent():
    rb = rate_bound(smolin(6))
    assert rb.cmi_term == pytest.approx(rb.coherent_info + rb.cond_entropy_term, abs=1e-12)
    assert rb.coherent_info >= rb.lower_bound - 1e-9


def test_rate_bound_warns_on_non_uniform_marginals():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rb = rate_bound(DensityOperator(np.diag([1.0] + [0.0] * 7), 2))
    assert not rb.marginals_maximally_mixed
    assert any("maximally mixed" in str(w.message) for w in caught)
    assert rb.dependence_value == pytest.approx(dependence(DensityOperator(np.diag([1.0] + [0.0] * 7), 2)).value)
