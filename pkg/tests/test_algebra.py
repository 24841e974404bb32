"""Matrix constants and the closed-form two-by-two exponential."""

import numpy as np
import pytest
import scipy.linalg

from freedyn import (
    ALPHA1,
    ALPHA2,
    BETA1,
    BETA12,
    BETA1H,
    BETA2,
    BETA2H,
    ID2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    pauli_exp,
)


def test_pauli_matrices():
    assert np.array_equal(SIGMA_X, [[0, 1], [1, 0]])
    assert np.array_equal(SIGMA_Y, [[0, -1j], [1j, 0]])
    assert np.array_equal(SIGMA_Z, [[1, 0], [0, -1]])
    for s in (SIGMA_X, SIGMA_Y, SIGMA_Z):
        assert np.allclose(s @ s, ID2)


def test_two_body_matrices_are_kron_products():
    assert np.array_equal(ALPHA1, np.kron(SIGMA_X, ID2))
    assert np.array_equal(ALPHA2, np.kron(ID2, SIGMA_X))
    assert np.array_equal(BETA1, np.kron(SIGMA_Z, ID2))
    assert np.array_equal(BETA2, np.kron(ID2, SIGMA_Z))
    assert np.array_equal(BETA1H, np.kron(SIGMA_Y, ID2))
    assert np.array_equal(BETA2H, np.kron(ID2, SIGMA_Y))
    assert np.array_equal(BETA12, np.kron(SIGMA_Y, SIGMA_Y))


def test_commutation_structure_behind_the_two_body_map():
    # the antilinear mass couplings commute with the map generator ...
    assert np.allclose(BETA1H @ BETA12, BETA12 @ BETA1H)
    assert np.allclose(BETA2H @ BETA12, BETA12 @ BETA2H)
    # ... while the complex-mass couplings and the kinetic matrices anticommute
    for m in (BETA1, BETA2, ALPHA1, ALPHA2):
        assert np.allclose(m @ BETA12, -BETA12 @ m)


def test_pauli_exp_matches_scipy_on_random_coefficients():
    rng = np.random.default_rng(2026)
    for _ in range(25):
        a0, ax, ay, az = rng.normal(size=4) + 1j * rng.normal(size=4)
        mine = pauli_exp(a0, ax, ay, az)
        arg = a0 * ID2 + ax * SIGMA_X + ay * SIGMA_Y + az * SIGMA_Z
        ref = scipy.linalg.expm(-1j * arg)
        assert np.max(np.abs(mine - ref)) < 1e-12


def test_pauli_exp_vectorized_over_nodes():
    k = np.linspace(-3.0, 3.0, 17)
    mats = pauli_exp(0.0, k, 0.0, np.full_like(k, 2.0))
    assert mats.shape == (17, 2, 2)
    for j, kj in enumerate(k):
        ref = scipy.linalg.expm(-1j * (kj * SIGMA_X + 2.0 * SIGMA_Z))
        assert np.max(np.abs(mats[j] - ref)) < 1e-12


def test_pauli_exp_degenerate_zero_argument():
    assert np.allclose(pauli_exp(0.0, 0.0, 0.0, 0.0), ID2)
