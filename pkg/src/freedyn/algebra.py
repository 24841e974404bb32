"""Pauli and two-body matrix constants, closed-form exponentials, real embeddings.

Shared leaf module: both the solvers and the transform builder need these, so
they live here instead of in either of those modules.
"""

from __future__ import annotations

import numpy as np

ID2 = np.eye(2, dtype=np.complex128)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

# Two-body basis: component order is the Kronecker one, (1,1),(1,2),(2,1),(2,2).
ID4 = np.eye(4, dtype=np.complex128)
ALPHA1 = np.kron(SIGMA_X, ID2)
ALPHA2 = np.kron(ID2, SIGMA_X)
BETA1 = np.kron(SIGMA_Z, ID2)
BETA2 = np.kron(ID2, SIGMA_Z)
BETA12 = np.kron(SIGMA_Y, SIGMA_Y)
BETA1H = np.kron(SIGMA_Y, ID2)
BETA2H = np.kron(ID2, SIGMA_Y)

# Below this the sin(theta)/theta branch switches to a series; at 1e-8 the
# truncation of the 6-term series is far under double-precision resolution.
SMALL_THETA = 1e-8


def _sinc(theta: np.ndarray) -> np.ndarray:
    """sin(theta)/theta for complex theta with a series branch near zero."""
    small = np.abs(theta) < SMALL_THETA
    safe = np.where(small, 1.0, theta)
    direct = np.sin(safe) / safe
    t2 = theta * theta
    series = 1.0 + t2 * (-1.0 / 6.0 + t2 * (1.0 / 120.0 + t2 * (-1.0 / 5040.0
             + t2 * (1.0 / 362880.0 + t2 * (-1.0 / 39916800.0)))))
    return np.where(small, series, direct)


def pauli_exp(c0, cx, cy, cz) -> np.ndarray:
    """exp(-i (c0*I + cx*sx + cy*sy + cz*sz)) per node, closed form.

    Arguments broadcast to a common shape S (typically (n_points,)); all may be
    complex.  Returns an array of shape S + (2, 2).  The sqrt branch does not
    matter because cos and sin(theta)/theta are even in theta.
    """
    c0, cx, cy, cz = np.broadcast_arrays(
        *(np.asarray(c, dtype=np.complex128) for c in (c0, cx, cy, cz))
    )
    theta = np.sqrt(cx * cx + cy * cy + cz * cz)
    cos_t = np.cos(theta)
    sinc_t = _sinc(theta)
    phase = np.exp(-1j * c0)
    nx, ny, nz = cx * sinc_t, cy * sinc_t, cz * sinc_t
    out = np.empty(theta.shape + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = phase * (cos_t - 1j * nz)
    out[..., 0, 1] = phase * (-1j * nx - ny)
    out[..., 1, 0] = phase * (-1j * nx + ny)
    out[..., 1, 1] = phase * (cos_t + 1j * nz)
    return out


def two_body_kinetic_exp(theta) -> np.ndarray:
    """exp(-i theta (ALPHA1-ALPHA2)) per node, closed form.

    A = ALPHA1-ALPHA2 satisfies A^3 = 4A (eigenvalues 0, 0, +2, -2), so
    exp(-i theta A) = I + (A^2/4)(cos 2theta - 1) - i (A/2) sin 2theta.
    """
    theta = np.asarray(theta, dtype=np.float64)
    a = ALPHA1 - ALPHA2
    a2_4 = (a @ a) / 4.0
    c = (np.cos(2.0 * theta) - 1.0)[..., None, None]
    s = np.sin(2.0 * theta)[..., None, None]
    return ID4 + a2_4 * c - 1j * (a / 2.0) * s


def real_embedding_linear(mat: np.ndarray) -> np.ndarray:
    """Real matrix of the complex-linear map v -> mat @ v.

    Component order interleaves real and imaginary parts:
    (Re v_1, Im v_1, Re v_2, Im v_2, ...).
    """
    mat = np.asarray(mat, dtype=np.complex128)
    d = mat.shape[-1]
    out = np.zeros(mat.shape[:-2] + (2 * d, 2 * d), dtype=np.float64)
    out[..., 0::2, 0::2] = mat.real
    out[..., 0::2, 1::2] = -mat.imag
    out[..., 1::2, 0::2] = mat.imag
    out[..., 1::2, 1::2] = mat.real
    return out


def real_embedding_antilinear(mat: np.ndarray) -> np.ndarray:
    """Real matrix of the antilinear map v -> mat @ conj(v), same ordering."""
    mat = np.asarray(mat, dtype=np.complex128)
    d = mat.shape[-1]
    out = np.zeros(mat.shape[:-2] + (2 * d, 2 * d), dtype=np.float64)
    out[..., 0::2, 0::2] = mat.real
    out[..., 0::2, 1::2] = mat.imag
    out[..., 1::2, 0::2] = mat.imag
    out[..., 1::2, 1::2] = -mat.real
    return out


def interleave(values: np.ndarray) -> np.ndarray:
    """(C, N) complex -> (2C, N) real in the embedding's component order."""
    c, n = values.shape
    out = np.empty((2 * c, n), dtype=np.float64)
    out[0::2] = values.real
    out[1::2] = values.imag
    return out


def deinterleave(u: np.ndarray) -> np.ndarray:
    """Inverse of interleave."""
    return u[0::2] + 1j * u[1::2]
