"""Dense linear algebra and entropy primitives.

Everything here works on plain ``numpy`` arrays. Density operators are
square complex arrays that pass :func:`validate_density`; no wrapper class
is imposed on callers. Logarithms are base 2 throughout.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionError, DomainError, SizeError, ValidationError


@dataclass(frozen=True)
class Tolerances:
    herm: float = 1e-10
    trace: float = 1e-10
    eig: float = 1e-9


DEFAULT_TOL = Tolerances()

#: Largest matrix dimension :func:`kron` will build.
MAX_DIM = 2**16


class EigenSystem(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns


def as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("matrix has non-finite entries")
    return m


def projector(v) -> np.ndarray:
    """Return ``|v><v|`` for a (not necessarily normalised) vector."""
    v = np.asarray(v, dtype=complex).ravel()
    return np.outer(v, v.conj())


def basis_vector(dim: int, i: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[i] = 1.0
    return v


def is_hermitian(m, tol: float = DEFAULT_TOL.herm) -> bool:
    m = np.asarray(m)
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def validate_density(rho, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Check that ``rho`` is a density operator and return it as an array.

    Raises:
        ValidationError: if ``rho`` is not Hermitian, not unit trace, or has
            an eigenvalue below ``-tol.eig``.
    """
    rho = as_matrix(rho)
    if not is_hermitian(rho, tol.herm):
        raise ValidationError("density operator is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol.trace:
        raise ValidationError(f"density operator has trace {tr!r}, expected 1")
    lo = np.linalg.eigvalsh(rho).min()
    if lo < -tol.eig:
        raise ValidationError(f"density operator has eigenvalue {lo:.3e} < 0")
    return rho


def kron(a, b, max_dim: int = MAX_DIM) -> np.ndarray:
    """Kronecker product with a dimension cap.

    Entry ``(i*dimB + k, j*dimB + l)`` of the result is ``a[i, j] * b[k, l]``.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    dim = a.shape[0] * b.shape[0]
    if dim > max_dim:
        raise SizeError(f"kron result dimension {dim} exceeds cap {max_dim}")
    return np.kron(a, b)


def partial_trace(m, dims, keep="A") -> np.ndarray:
    """Trace out one factor of a bipartite operator.

    Args:
        m: operator on a ``dA * dB`` dimensional space, A the slow index.
        dims: ``(dA, dB)``.
        keep: ``"A"`` or ``"B"``, the subsystem that survives.
    """
    m = as_matrix(m)
    da, db = (int(x) for x in dims)
    if da < 1 or db < 1 or da * db != m.shape[0]:
        raise DimensionError(
            f"dimension {m.shape[0]} does not factor as {da} x {db}")
    t = m.reshape(da, db, da, db)
    if keep in ("A", 0):
        return np.einsum("ijkj->ik", t)
    if keep in ("B", 1):
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def _canonical_phase(vecs: np.ndarray, tol: float) -> np.ndarray:
    # rotate each column so its first significant entry is real positive
    out = vecs.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        idx = np.flatnonzero(np.abs(col) > tol)
        if idx.size:
            ph = col[idx[0]] / abs(col[idx[0]])
            out[:, j] = col / ph
    return out


def eig_hermitian(m, tol: Tolerances = DEFAULT_TOL) -> EigenSystem:
    """Eigen-decomposition of a Hermitian matrix with deterministic ordering.

    Eigenvalues come back ascending. Each eigenvector is phased so that its
    first entry of modulus above ``tol.eig`` is real and positive; columns
    with equal (to ``tol.eig``) eigenvalues are then ordered by a
    lexicographic comparison of their entries rounded to 9 decimals.
    """
    m = as_matrix(m)
    if not is_hermitian(m, tol.herm):
        raise ValidationError("eig_hermitian requires a Hermitian matrix")
    vals, vecs = np.linalg.eigh((m + m.conj().T) / 2)
    vecs = _canonical_phase(vecs, tol.eig)

    def key(j):
        v = np.round(vecs[:, j], 9)
        return (np.round(vals[j] / tol.eig) if tol.eig > 0 else vals[j],
                tuple(np.column_stack([v.real, v.imag]).ravel()))

    order = sorted(range(len(vals)), key=key)
    return EigenSystem(vals[order], vecs[:, order])


def trace_norm(m, tol: Tolerances = DEFAULT_TOL) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    m = as_matrix(m)
    if not is_hermitian(m, tol.herm):
        raise ValidationError("trace_norm is implemented for Hermitian input")
    return float(np.abs(np.linalg.eigvalsh((m + m.conj().T) / 2)).sum())


def trace_distance(rho, sigma, tol: Tolerances = DEFAULT_TOL) -> float:
    rho = as_matrix(rho)
    sigma = as_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionError(f"shapes differ: {rho.shape} vs {sigma.shape}")
    return 0.5 * trace_norm(rho - sigma, tol)


def entropy_of_spectrum(vals, tol: float = DEFAULT_TOL.eig) -> float:
    """Shannon entropy (bits) of an eigenvalue list, clamping tiny negatives."""
    vals = np.asarray(vals, dtype=float)
    if vals.size and vals.min() < -tol:
        raise ValidationError(f"eigenvalue {vals.min():.3e} below -{tol:g}")
    vals = vals[vals > 0]
    return float(-(vals * np.log2(vals)).sum())


def vn_entropy(rho, tol: Tolerances = DEFAULT_TOL) -> float:
    """Von Neumann entropy in bits.

    Eigenvalues in ``[-tol.eig, 0)`` count as zero; anything more negative
    is rejected as an invalid state.
    """
    rho = as_matrix(rho)
    if not is_hermitian(rho, tol.herm):
        raise ValidationError("vn_entropy requires a Hermitian matrix")
    return entropy_of_spectrum(np.linalg.eigvalsh((rho + rho.conj().T) / 2),
                               tol.eig)


def binary_entropy(p):
    """``h(p) = -p log p - (1-p) log(1-p)`` with ``h(0) = h(1) = 0``.

    Accepts scalars or arrays; returns the same shape.
    """
    arr = np.asarray(p, dtype=float)
    if np.any((arr < 0) | (arr > 1)) or np.any(np.isnan(arr)):
        raise DomainError("binary_entropy needs 0 <= p <= 1")
    inner = (arr > 0) & (arr < 1)
    q = np.where(inner, arr, 0.5)
    out = np.where(inner, -q * np.log2(q) - (1 - q) * np.log2(1 - q), 0.0)
    return float(out) if out.ndim == 0 else out
