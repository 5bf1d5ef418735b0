"""Dense complex-matrix primitives for small Hermitian problems (dim 2 to 8).

Everything here operates on plain ``numpy`` arrays.  Density matrices,
generators and the fidelity machinery all route through these few
operations, so their contracts (descending eigenvalue order, PSD clamping,
Bloch conventions) are pinned down once and tested here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    ConvergenceError,
    InvalidInputError,
    InvalidStateError,
    NotPSDError,
)

MIN_DIM = 2
MAX_DIM = 8

# Relative Hermiticity tolerance: max |M - M^dag| <= tol * (1 + max |M|).
HERMITICITY_TOL = 1e-12

# Eigenvalues of a nominal PSD matrix below this are a hard error; small
# negative noise above it is clamped to zero.
PSD_EIGENVALUE_FLOOR = -1e-9

_BLOCH_NORM_TOL = 1e-9


class NormKind(Enum):
    """Matrix norms used by the evolution-rate functionals."""

    OPERATOR = "operator"
    TRACE = "trace"
    HILBERT_SCHMIDT = "hilbert_schmidt"


@dataclass(frozen=True)
class BlochState:
    """Qubit state as a Bloch vector; the density matrix is (I + r.sigma)/2.

    ``r_z`` is the excited-state population expectation value and
    sqrt(r_x**2 + r_y**2) is the coherence of the state.
    """

    r_x: float
    r_y: float
    r_z: float

    def __post_init__(self):
        for name in ("r_x", "r_y", "r_z"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidStateError(f"Bloch component {name} must be finite")
            object.__setattr__(self, name, value)
        if self.norm > 1.0 + _BLOCH_NORM_TOL:
            raise InvalidStateError(
                f"Bloch vector length {self.norm!r} exceeds 1 (not a state)"
            )

    @property
    def norm(self) -> float:
        return math.sqrt(self.r_x**2 + self.r_y**2 + self.r_z**2)

    @property
    def coherence(self) -> float:
        return math.sqrt(self.r_x**2 + self.r_y**2)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.r_x, self.r_y, self.r_z)


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if not (MIN_DIM <= n <= MAX_DIM):
        raise InvalidInputError(f"dimension {n} outside supported range [2, 8]")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise InvalidInputError("matrix entries must be finite")
    return a


def _require_hermitian(a: np.ndarray) -> np.ndarray:
    scale = 1.0 + float(np.abs(a).max())
    defect = float(np.abs(a - a.conj().T).max())
    if defect > HERMITICITY_TOL * scale:
        raise InvalidInputError(
            f"matrix is not Hermitian (defect {defect:.3e}, allowed {HERMITICITY_TOL * scale:.3e})"
        )
    # Symmetrize so downstream results do not depend on which triangle won.
    return 0.5 * (a + a.conj().T)


def eig_herm(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Returns ``(w, v)`` with ``m = v @ diag(w) @ v.conj().T``; columns of
    ``v`` are orthonormal.  Ties keep the solver's original order; for a
    degenerate eigenvalue any orthonormal basis of the eigenspace may be
    returned.
    """
    a = _require_hermitian(_as_matrix(m))
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - hard to trigger
        raise ConvergenceError(f"Hermitian eigensolver failed: {exc}") from exc
    order = np.argsort(-w, kind="stable")
    return w[order].copy(), v[:, order].copy()


def singular_values(m) -> np.ndarray:
    """Singular values of a general complex matrix, descending, all >= 0.

    Computed as the square roots of the eigenvalues of ``m.conj().T @ m``.
    """
    a = _as_matrix(m)
    w, _ = eig_herm(a.conj().T @ a)
    return np.sqrt(np.clip(w, 0.0, None))


def norm(m, kind: NormKind) -> float:
    """Operator, trace or Hilbert-Schmidt norm via singular values."""
    if not isinstance(kind, NormKind):
        raise InvalidInputError(f"unknown norm kind {kind!r}")
    sv = singular_values(m)
    if kind is NormKind.OPERATOR:
        return float(sv[0])
    if kind is NormKind.TRACE:
        return float(sv.sum())
    return float(math.sqrt(float((sv * sv).sum())))


def sqrt_psd(m) -> np.ndarray:
    """Hermitian PSD square root R of a PSD matrix, so R @ R == m.

    Eigenvalues slightly negative from floating-point noise are clamped to
    zero; eigenvalues below -1e-9 raise :class:`NotPSDError`.
    """
    w, v = eig_herm(m)
    if float(w.min()) < PSD_EIGENVALUE_FLOOR:
        raise NotPSDError(
            f"matrix has negative eigenvalue {float(w.min()):.3e}; not PSD"
        )
    root = np.sqrt(np.clip(w, 0.0, None))
    r = (v * root) @ v.conj().T
    return 0.5 * (r + r.conj().T)


def bloch_to_matrix(state) -> np.ndarray:
    """Density matrix (I + r.sigma)/2 of a Bloch vector.

    Accepts a :class:`BlochState` or any 3-sequence ``(r_x, r_y, r_z)``.
    """
    if isinstance(state, BlochState):
        x, y, z = state.as_tuple()
    else:
        x, y, z = (float(c) for c in state)
    length = math.sqrt(x * x + y * y + z * z)
    if not math.isfinite(length) or length > 1.0 + _BLOCH_NORM_TOL:
        raise InvalidStateError(f"Bloch vector length {length!r} exceeds 1")
    return 0.5 * np.array(
        [[1.0 + z, x - 1j * y], [x + 1j * y, 1.0 - z]], dtype=complex
    )


def matrix_to_bloch(m) -> BlochState:
    """Bloch vector of a 2x2 density matrix (inverse of :func:`bloch_to_matrix`)."""
    a = np.asarray(m, dtype=complex)
    if a.shape != (2, 2):
        raise InvalidInputError(f"expected a 2x2 matrix, got shape {a.shape}")
    a = _require_hermitian(_as_matrix(a))
    tr = float(np.trace(a).real)
    if abs(tr - 1.0) > 1e-9:
        raise InvalidStateError(f"density matrix trace {tr!r} differs from 1")
    return BlochState(
        2.0 * float(a[1, 0].real),
        2.0 * float(a[1, 0].imag),
        float((a[0, 0] - a[1, 1]).real),
    )
