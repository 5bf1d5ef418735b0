"""Distance measures between density matrices.

Two fidelities are provided: the Uhlmann fidelity

    F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))**2,

which serves as the oracle, and the super-fidelity

    SF(rho, sigma) = tr[rho sigma] + sqrt(1 - tr[rho**2]) sqrt(1 - tr[sigma**2]),

an upper bound on F that coincides with it for qubits.  The corresponding
angles are arccos of the square root of each fidelity; the super-fidelity
angle (the "modified Bures angle") lower-bounds the Bures angle.
"""

from __future__ import annotations

import math

import numpy as np

from . import matcore
from .errors import AccuracyError, InvalidInputError, InvalidStateError

# 1 - tr[rho^2] below this is treated as exactly pure.
PURE_DEFICIT_EPS = 1e-14

# Fidelity values may stray outside [0, 1] by at most this much before we
# refuse to clamp them.
_CLAMP_BAND = 1e-9


def _require_density(m) -> np.ndarray:
    a = matcore._require_hermitian(matcore._as_matrix(m))
    tr = float(np.trace(a).real)
    if abs(tr - 1.0) > 1e-9:
        raise InvalidStateError(f"density matrix trace {tr!r} differs from 1")
    w, _ = matcore.eig_herm(a)
    if float(w.min()) < matcore.PSD_EIGENVALUE_FLOOR:
        raise InvalidStateError(
            f"density matrix has negative eigenvalue {float(w.min()):.3e}"
        )
    return a


def _require_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise InvalidInputError(f"dimension mismatch: {a.shape} vs {b.shape}")


def _clamp_fidelity(value: float, label: str) -> float:
    if value < -_CLAMP_BAND or value > 1.0 + _CLAMP_BAND:
        raise AccuracyError(
            f"{label} evaluated to {value!r}, outside [0, 1] beyond tolerance",
            estimate=value,
        )
    return min(1.0, max(0.0, value))


def purity(rho) -> float:
    """tr[rho**2] of a valid density matrix; 1/dim for maximally mixed, 1 for pure."""
    a = _require_density(rho)
    return float(np.trace(a @ a).real)


def uhlmann_fidelity(rho, sigma) -> float:
    """Uhlmann fidelity between two density matrices of equal dimension."""
    a = _require_density(rho)
    b = _require_density(sigma)
    _require_same_dim(a, b)
    root = matcore.sqrt_psd(a)
    inner = root @ b @ root
    w, _ = matcore.eig_herm(0.5 * (inner + inner.conj().T))
    total = float(np.sqrt(np.clip(w, 0.0, None)).sum())
    return _clamp_fidelity(total * total, "Uhlmann fidelity")


def super_fidelity(rho, sigma) -> float:
    """Super-fidelity: tr[rho sigma] plus the geometric mean of the purity deficits.

    An upper bound on the Uhlmann fidelity; equal to it when both states
    are qubits.
    """
    a = _require_density(rho)
    b = _require_density(sigma)
    _require_same_dim(a, b)
    overlap = float(np.trace(a @ b).real)
    da = 1.0 - float(np.trace(a @ a).real)
    db = 1.0 - float(np.trace(b @ b).real)
    da = 0.0 if da < PURE_DEFICIT_EPS else da
    db = 0.0 if db < PURE_DEFICIT_EPS else db
    return _clamp_fidelity(overlap + math.sqrt(da) * math.sqrt(db), "super-fidelity")


def bures_angle(rho, sigma) -> float:
    """Bures angle arccos(sqrt(F)) in radians, in [0, pi/2]."""
    return math.acos(math.sqrt(uhlmann_fidelity(rho, sigma)))


def modified_bures_angle(rho, sigma) -> float:
    """Angle arccos(sqrt(SF)) from the super-fidelity; lower bound on the Bures angle."""
    return math.acos(math.sqrt(super_fidelity(rho, sigma)))
