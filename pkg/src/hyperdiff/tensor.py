"""Dense algebra for 3x3 second-order tensors and 6x6 Voigt tangents.

Second-order tensors are plain ``(3, 3)`` float64 arrays. Fourth-order
tangents with minor symmetries are stored as ``(6, 6)`` arrays whose rows
and columns follow the index pairs ``(11, 22, 33, 12, 13, 23)``. Shear
slots hold tensor components directly, without the engineering factor 2.

Index pairs are zero-based throughout, i.e. ``(0, 1)`` is the 12 slot.
"""
from __future__ import annotations

import numpy as np

from .errors import NonPositiveJacobian, SingularTensor

VOIGT_PAIRS: tuple[tuple[int, int], ...] = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))

_SLOT = np.empty((3, 3), dtype=int)
for _s, (_i, _j) in enumerate(VOIGT_PAIRS):
    _SLOT[_i, _j] = _SLOT[_j, _i] = _s

SINGULAR_DET = 1e-14
IDENTITY = np.eye(3)


def as_tensor2(a, symmetric: bool = False) -> np.ndarray:
    """Validate and return ``a`` as a finite ``(3, 3)`` float64 array.

    With ``symmetric=True`` the skew part must be below
    ``1e-12 * max(1, max|a|)``.
    """
    t = np.array(a, dtype=np.float64)
    if t.shape != (3, 3):
        raise ValueError(f"expected a 3x3 tensor, got shape {t.shape}")
    if not np.all(np.isfinite(t)):
        raise ValueError("tensor has non-finite entries")
    if symmetric:
        tol = 1e-12 * max(1.0, float(np.max(np.abs(t))))
        if np.max(np.abs(t - t.T)) > tol:
            raise ValueError("tensor is not symmetric")
    return t


def det(t: np.ndarray) -> float:
    """Determinant by cofactor expansion along the first row."""
    return float(
        t[0, 0] * (t[1, 1] * t[2, 2] - t[1, 2] * t[2, 1])
        - t[0, 1] * (t[1, 0] * t[2, 2] - t[1, 2] * t[2, 0])
        + t[0, 2] * (t[1, 0] * t[2, 1] - t[1, 1] * t[2, 0])
    )


def cofactor(t: np.ndarray) -> np.ndarray:
    c = np.empty((3, 3))
    c[0, 0] = t[1, 1] * t[2, 2] - t[1, 2] * t[2, 1]
    c[0, 1] = t[1, 2] * t[2, 0] - t[1, 0] * t[2, 2]
    c[0, 2] = t[1, 0] * t[2, 1] - t[1, 1] * t[2, 0]
    c[1, 0] = t[0, 2] * t[2, 1] - t[0, 1] * t[2, 2]
    c[1, 1] = t[0, 0] * t[2, 2] - t[0, 2] * t[2, 0]
    c[1, 2] = t[0, 1] * t[2, 0] - t[0, 0] * t[2, 1]
    c[2, 0] = t[0, 1] * t[1, 2] - t[0, 2] * t[1, 1]
    c[2, 1] = t[0, 2] * t[1, 0] - t[0, 0] * t[1, 2]
    c[2, 2] = t[0, 0] * t[1, 1] - t[0, 1] * t[1, 0]
    return c


def inverse_transpose(t: np.ndarray) -> np.ndarray:
    """Return ``inv(t).T`` as cofactor / det.

    Raises
    ------
    SingularTensor
        If ``|det(t)| < 1e-14``.
    """
    d = det(t)
    if abs(d) < SINGULAR_DET:
        raise SingularTensor(f"inverse_transpose: |det| = {abs(d):.3e} below {SINGULAR_DET:g}")
    return cofactor(t) / d


def push_forward(S: np.ndarray, F: np.ndarray) -> np.ndarray:
    """Cauchy stress ``J^-1 F S F^T`` from the 2nd Piola-Kirchhoff stress."""
    J = det(F)
    if not J > 0.0:
        raise NonPositiveJacobian(f"push_forward: det(F) = {J:.6e}")
    sigma = F @ S @ F.T / J
    return 0.5 * (sigma + sigma.T)


def voigt_pack(i: int, j: int) -> int:
    """Voigt slot of the symmetric index pair ``(i, j)``."""
    return int(_SLOT[i, j])


def voigt_unpack(slot: int) -> tuple[int, int]:
    return VOIGT_PAIRS[slot]


def voigt_to_full(c: np.ndarray) -> np.ndarray:
    """Expand a 6x6 Voigt matrix to a (3, 3, 3, 3) array with minor symmetries."""
    return c[np.ix_(_SLOT.ravel(), _SLOT.ravel())].reshape(3, 3, 3, 3)


def full_to_voigt(c4: np.ndarray) -> np.ndarray:
    ii = np.array([p[0] for p in VOIGT_PAIRS])
    jj = np.array([p[1] for p in VOIGT_PAIRS])
    return c4[ii[:, None], jj[:, None], ii[None, :], jj[None, :]]


def sym_dyad(i: int, j: int) -> np.ndarray:
    """``e_i (x) e_j + e_j (x) e_i``."""
    m = np.zeros((3, 3))
    m[i, j] += 1.0
    m[j, i] += 1.0
    return m
