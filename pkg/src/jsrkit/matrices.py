"""Square complex matrices: validation, norms, spectral radius, Kronecker.

All computation is complex128 regardless of input dtype.
"""

import numpy as np

from . import config
from ._kernels import mat_norm, mat_rho
from .errors import DimensionMismatch, DimensionOverflow, NonConvergence, ShapeError


def as_matrix(entries, *, index: int | None = None) -> np.ndarray:
    """Coerce to a square, finite, C-contiguous complex128 array."""
    a = np.asarray(entries)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ShapeError(f"expected a nonempty square matrix, got shape {a.shape}", index)
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ShapeError("matrix entries must be finite", index)
    return a


def frobenius_norm(a) -> float:
    a = as_matrix(a)
    return float(mat_norm(a, True))


def op_norm(a, *, frobenius: bool | None = None) -> float:
    """Matrix norm used by every bound in this package.

    Defaults to the operator 2-norm (largest singular value, computed as
    the root of the top eigenvalue of the Gram matrix a^H a); pass
    frobenius=True, or flip the global config, for the cheaper Frobenius
    norm.  Both are submultiplicative, so certified bounds stay valid
    under either choice.
    """
    a = as_matrix(a)
    fro = config.use_frobenius() if frobenius is None else frobenius
    try:
        return float(mat_norm(a, fro))
    except np.linalg.LinAlgError as e:
        raise NonConvergence(f"norm eigensolve failed: {e}") from e


def spectral_radius(a) -> float:
    """Largest eigenvalue modulus, via Hessenberg reduction + shifted QR.

    Values below 1e-300 are reported as exact zero.  Raises NonConvergence
    when the QR iteration gives up (pathological input).
    """
    a = as_matrix(a)
    try:
        return float(mat_rho(a))
    except np.linalg.LinAlgError as e:
        raise NonConvergence(f"eigenvalue iteration failed: {e}") from e


def kron(a, b, *, cap: int = config.KRON_CAP) -> np.ndarray:
    """Kronecker product with a guard on the resulting dimension."""
    a = as_matrix(a)
    b = as_matrix(b)
    d = a.shape[0] * b.shape[0]
    if d > cap:
        raise DimensionOverflow(f"kron would produce dimension {d} > cap {cap}")
    return np.kron(a, b)


def require_same_dim(a: np.ndarray, b: np.ndarray) -> int:
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"dimensions differ: {a.shape[0]} vs {b.shape[0]}")
    return a.shape[0]
