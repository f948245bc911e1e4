"""Dense complex linear algebra kernel: states, eigendecompositions, norms.

All matrices are dense complex numpy arrays in row-major layout. Composite
indices follow the Kronecker convention (i_A, i_B) -> i_A * d_B + i_B, so
``tensor(A, B)`` and ``partial_trace`` agree with ``np.kron`` ordering.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

# Tolerances. States are validated tightly, generic Hermitian inputs loosely.
STATE_HERMITIAN_TOL = 1e-10
STATE_TRACE_TOL = 1e-10
EIG_CLIP_TOL = 1e-10
INPUT_HERMITIAN_TOL = 1e-8
MAX_DIM = 1024


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def hermitize(m: np.ndarray) -> np.ndarray:
    """Symmetrized part (M + M^dag)/2."""
    return 0.5 * (m + m.conj().T)


def herm_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation from Hermiticity."""
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def clip_eigenvalues(w: np.ndarray, tol: float = EIG_CLIP_TOL) -> np.ndarray:
    """Zero out eigenvalues in [-tol, 0); anything more negative is an error.

    Negative dust of magnitude <= tol is numerical noise from eigh and is
    silently clipped. Larger negative mass means the input was not positive
    semidefinite and must not be glossed over.
    """
    w = np.asarray(w, dtype=float)
    low = float(w.min(initial=0.0))
    if low < -tol:
        raise ValueError(f"eigenvalue {low:.3e} below -{tol:.0e}; matrix is not PSD")
    return np.where(w < 0.0, 0.0, w)


class HermitianEigen(NamedTuple):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns are eigenvectors


def hermitian_eigen(m) -> HermitianEigen:
    """Eigendecomposition after symmetrization.

    The input must be Hermitian within 1e-8 entrywise; (M + M^dag)/2 is
    decomposed so the result is exactly real-spectral. Eigenvalues come back
    ascending with orthonormal eigenvector columns.
    """
    a = _as_matrix(m)
    if herm_defect(a) > INPUT_HERMITIAN_TOL:
        raise ValueError("matrix is not Hermitian within 1e-8")
    w, v = np.linalg.eigh(hermitize(a))
    return HermitianEigen(w, v)


@dataclass(frozen=True)
class DensityMatrix:
    """Validated quantum state.

    ``dims`` optionally records a bipartite split (d_A, d_B) with
    d_A * d_B equal to the total dimension. Construction checks Hermiticity
    (1e-10), unit trace (1e-10), and spectrum >= -1e-10.
    """

    mat: np.ndarray
    dims: tuple[int, int] | None = None

    def __post_init__(self):
        a = _as_matrix(self.mat)
        n = a.shape[0]
        if n > MAX_DIM:
            raise ValueError(f"dimension {n} exceeds the dense-storage cap {MAX_DIM}")
        if herm_defect(a) > STATE_HERMITIAN_TOL:
            raise ValueError("density matrix is not Hermitian within 1e-10")
        tr = a.trace()
        if abs(tr - 1.0) > STATE_TRACE_TOL:
            raise ValueError(f"trace {tr:.12g} differs from 1 by more than 1e-10")
        a = hermitize(a)
        clip_eigenvalues(np.linalg.eigvalsh(a))
        if self.dims is not None:
            da, db = self.dims
            if da < 1 or db < 1 or da * db != n:
                raise ValueError(f"dims {self.dims} incompatible with dimension {n}")
            object.__setattr__(self, "dims", (int(da), int(db)))
        a.setflags(write=False)
        object.__setattr__(self, "mat", a)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def with_dims(self, dims: tuple[int, int]) -> "DensityMatrix":
        """Same state, reinterpreted with an explicit bipartite split."""
        return DensityMatrix(self.mat, dims)


@dataclass(frozen=True)
class PureState:
    """Unit vector, optionally with a bipartite split of its index."""

    vec: np.ndarray
    dims: tuple[int, int] | None = None

    def __post_init__(self):
        v = np.asarray(self.vec, dtype=complex).reshape(-1)
        if v.size > MAX_DIM:
            raise ValueError(f"dimension {v.size} exceeds the dense-storage cap {MAX_DIM}")
        nrm = float(np.linalg.norm(v))
        if abs(nrm - 1.0) > STATE_TRACE_TOL:
            raise ValueError(f"norm {nrm:.12g} differs from 1 by more than 1e-10")
        if self.dims is not None:
            da, db = self.dims
            if da * db != v.size:
                raise ValueError(f"dims {self.dims} incompatible with dimension {v.size}")
            object.__setattr__(self, "dims", (int(da), int(db)))
        v.setflags(write=False)
        object.__setattr__(self, "vec", v)

    @property
    def dim(self) -> int:
        return self.vec.size

    def to_density(self) -> DensityMatrix:
        return DensityMatrix(np.outer(self.vec, self.vec.conj()), self.dims)


def tensor(a, b) -> np.ndarray:
    """Kronecker product with (i_A, i_B) -> i_A * d_B + i_B indexing."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace(rho: DensityMatrix, over: str) -> DensityMatrix:
    """Marginal of a bipartite state, tracing out subsystem ``over`` ("A" or "B")."""
    if rho.dims is None:
        raise ValueError("partial_trace needs a state with explicit dims")
    da, db = rho.dims
    t = rho.mat.reshape(da, db, da, db)
    if over == "B":
        red = np.trace(t, axis1=1, axis2=3)
    elif over == "A":
        red = np.trace(t, axis1=0, axis2=2)
    else:
        raise ValueError(f"over must be 'A' or 'B', got {over!r}")
    return DensityMatrix(hermitize(red))


def partial_trace_mat(m: np.ndarray, dims: tuple[int, int], over: str) -> np.ndarray:
    """Partial trace on a raw matrix (no state validation)."""
    da, db = dims
    t = np.asarray(m, dtype=complex).reshape(da, db, da, db)
    if over == "B":
        return np.trace(t, axis1=1, axis2=3)
    if over == "A":
        return np.trace(t, axis1=0, axis2=2)
    raise ValueError(f"over must be 'A' or 'B', got {over!r}")


def trace_norm(m) -> float:
    """Sum of singular values; for Hermitian input, sum of |eigenvalues|."""
    a = _as_matrix(m)
    if herm_defect(a) <= INPUT_HERMITIAN_TOL:
        return float(np.sum(np.abs(np.linalg.eigvalsh(hermitize(a)))))
    return float(np.sum(np.linalg.svd(a, compute_uv=False)))


def purify(rho: DensityMatrix) -> PureState:
    """Canonical purification sum_i sqrt(l_i) |e_i> (x) |i>, weights descending.

    The reference system is a copy of the input space, so the result lives on
    d (x) d with the original state as its first marginal.
    """
    w, v = np.linalg.eigh(rho.mat)
    w = clip_eigenvalues(w)
    order = np.argsort(w)[::-1]
    d = rho.dim
    vec = np.zeros(d * d, dtype=complex)
    for slot, idx in enumerate(order):
        vec += np.sqrt(w[idx]) * tensor_vec(v[:, idx], _basis_vec(d, slot))
    vec /= np.linalg.norm(vec)
    return PureState(vec, dims=(d, d))


def tensor_vec(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of vectors."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _basis_vec(d: int, i: int) -> np.ndarray:
    e = np.zeros(d, dtype=complex)
    e[i] = 1.0
    return e


def basis_state(d: int, i: int) -> PureState:
    return PureState(_basis_vec(d, i))


def chaotic_state(d: int, dims: tuple[int, int] | None = None) -> DensityMatrix:
    """Maximally mixed state I/d."""
    return DensityMatrix(np.eye(d, dtype=complex) / d, dims)


def maximally_entangled(d: int) -> PureState:
    """sum_i |ii> / sqrt(d) on d (x) d."""
    vec = np.zeros(d * d, dtype=complex)
    for i in range(d):
        vec[i * d + i] = 1.0
    return PureState(vec / np.sqrt(d), dims=(d, d))


def hermitian_exp(m: np.ndarray) -> np.ndarray:
    """exp of a Hermitian matrix via its spectral decomposition."""
    w, v = np.linalg.eigh(hermitize(m))
    return (v * np.exp(w)) @ v.conj().T


def hermitian_log(m: np.ndarray, floor: float = 1e-300) -> np.ndarray:
    """log of a positive matrix; eigenvalues floored at ``floor``."""
    w, v = np.linalg.eigh(hermitize(m))
    return (v * np.log(np.maximum(w, floor))) @ v.conj().T


def random_density_matrix(
    d: int,
    rng: np.random.Generator,
    rank: int | None = None,
    dims: tuple[int, int] | None = None,
) -> DensityMatrix:
    """Wishart-style random state G G^dag / Tr, full rank by default."""
    r = d if rank is None else rank
    g = rng.normal(size=(d, r)) + 1j * rng.normal(size=(d, r))
    m = g @ g.conj().T
    return DensityMatrix(m / m.trace().real, dims)


def random_pure_state(
    d: int, rng: np.random.Generator, dims: tuple[int, int] | None = None
) -> PureState:
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return PureState(v / np.linalg.norm(v), dims)
