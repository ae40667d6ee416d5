"""Dense complex linear algebra for few-level open quantum systems.

Everything operates on plain ``numpy`` complex arrays. The working media
in this package have dimension 2 or 4, so superoperators are at most
16x16 and dense direct methods are always the right tool.

Conventions fixed here and shared by every other module:

* Basis ordering puts the ground state first; for two qubits the product
  basis is ordered (down-down, down-up, up-down, up-up).
* ``sigma_minus`` is the decay operator |g><e|, ``sigma_plus`` = |e><g|.
* Vectorization is column-stacking (column-major), so that
  vec(A rho B) = (B^T otimes A) vec(rho).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm as _expm

# Shared numerical tolerances (tests may tighten or loosen locally).
HERMITICITY_TOL = 1e-12
POSITIVITY_SLACK = 1e-8

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |g><e|
SIGMA_PLUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)   # |e><g|
I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product; entry (i*rows_b + k, j*cols_b + l) is a[i,j]*b[k,l]."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def is_hermitian(m: np.ndarray, tol: float | None = None) -> bool:
    m = np.asarray(m)
    tol = HERMITICITY_TOL if tol is None else tol
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def matexp(m: np.ndarray) -> np.ndarray:
    """Matrix exponential of a square complex matrix (scaling and squaring)."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matexp needs a square matrix, got shape {m.shape}")
    return _expm(m)


def vec(rho: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization of a matrix."""
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvec(v: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vec` for square matrices."""
    v = np.asarray(v, dtype=complex)
    n = int(round(np.sqrt(v.size)))
    if n * n != v.size:
        raise ValueError(f"vector of length {v.size} is not a square matrix")
    return v.reshape((n, n), order="F")


@dataclass(frozen=True)
class Superoperator:
    """Linear map on vectorized n x n matrices, stored as an n^2 x n^2 matrix."""

    matrix: np.ndarray
    n: int

    @property
    def dim(self) -> int:
        return self.n * self.n

    def apply(self, rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (self.n, self.n):
            raise ValueError(f"expected a {self.n}x{self.n} matrix, got {rho.shape}")
        return unvec(self.matrix @ vec(rho))

    def propagator(self, t: float) -> np.ndarray:
        """exp(L t) as a dense matrix acting on vectorized states."""
        return matexp(self.matrix * t)


def vectorize_generator(
    h: np.ndarray,
    jumps: list[tuple[float, np.ndarray]] | tuple[tuple[float, np.ndarray], ...] = (),
) -> Superoperator:
    """Assemble -i[H, .] + sum_k rate_k D[o_k] as a single superoperator.

    D[o] rho = o rho o^dag - (o^dag o rho + rho o^dag o) / 2.  The result is
    trace preserving by construction: the vectorized identity is a left null
    vector of the returned matrix.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"Hamiltonian must be square, got shape {h.shape}")
    if not is_hermitian(h):
        raise ValueError("Hamiltonian must be Hermitian")
    n = h.shape[0]
    eye = np.eye(n, dtype=complex)
    lmat = -1j * (kron(eye, h) - kron(h.T, eye))
    for rate, op in jumps:
        if rate < 0:
            raise ValueError(f"dissipator rate must be nonnegative, got {rate}")
        o = np.asarray(op, dtype=complex)
        oo = o.conj().T @ o
        lmat = lmat + rate * (
            kron(o.conj(), o) - 0.5 * (kron(eye, oo) + kron(oo.T, eye))
        )
    return Superoperator(matrix=lmat, n=n)


def partial_trace(rho: np.ndarray, dims: tuple[int, ...], keep: int) -> np.ndarray:
    """Reduced matrix of one tensor factor of a composite state.

    ``dims`` lists the factor dimensions in kron order; ``keep`` is the index
    of the factor to retain.
    """
    rho = np.asarray(rho, dtype=complex)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ValueError(f"state shape {rho.shape} does not match dims {dims}")
    k = len(dims)
    r = rho.reshape(dims + dims)
    # Contract every factor except `keep` between the row and column sides.
    row = list(range(k))
    col = list(range(k))
    col[keep] = k  # leave the kept factor's column index free
    out = np.einsum(r, row + col, [keep, k])
    return out
