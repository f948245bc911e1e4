"""Entropic quantities on validated states.

Every function takes a ``base`` argument restricted to 2 (bits, the default)
or e (nats). A single computation must stick to one base; mixed-base
arithmetic is meaningless for the bound formulas downstream.
"""
from __future__ import annotations

import math

import numpy as np

from .linalg import DensityMatrix, clip_eigenvalues, partial_trace, tensor

NAT = math.e

_DOMAIN_SLACK = 1e-12
_SUPPORT_EIG_TOL = 1e-10
_SUPPORT_OVERLAP_TOL = 1e-9


def _check_base(base: float) -> float:
    b = float(base)
    if b not in (2.0, NAT):
        raise ValueError("base must be 2 or e")
    return b


def _log(x, base: float):
    return np.log2(x) if base == 2.0 else np.log(x)


def _eta(p: np.ndarray, base: float) -> np.ndarray:
    # -p log p with the 0 log 0 = 0 convention
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    pos = p > 0.0
    out[pos] = -p[pos] * _log(p[pos], base)
    return out


def binary_entropy(x: float, base: float = 2.0) -> float:
    """h(x) = -x log x - (1-x) log(1-x) on [0, 1]."""
    base = _check_base(base)
    if x < -_DOMAIN_SLACK or x > 1.0 + _DOMAIN_SLACK:
        raise ValueError(f"binary entropy argument {x} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    return float(_eta(np.array([x, 1.0 - x]), base).sum())


def g_correction(x: float, base: float = 2.0) -> float:
    """Correction term g(x) = (1+x) h(x / (1+x)) of the continuity bounds.

    Defined as 0 for x < 0, which is how it enters formulas whose certificate
    may go negative.
    """
    base = _check_base(base)
    if x <= 0.0:
        return 0.0
    return float((1.0 + x) * binary_entropy(x / (1.0 + x), base))


def spectrum_entropy(w: np.ndarray, base: float = 2.0) -> float:
    """Entropy of a nonnegative weight vector (no normalization applied)."""
    base = _check_base(base)
    return float(_eta(np.asarray(w, dtype=float), base).sum())


def _entropy_mat(m: np.ndarray, base: float) -> float:
    return spectrum_entropy(clip_eigenvalues(np.linalg.eigvalsh(m)), base)


def von_neumann_entropy(rho: DensityMatrix, base: float = 2.0) -> float:
    """H(rho) = -Tr rho log rho."""
    return _entropy_mat(rho.mat, _check_base(base))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix, base: float = 2.0) -> float:
    """H(rho||sigma) = Tr rho (log rho - log sigma); +inf outside supp(sigma).

    The support test treats sigma-eigenvalues <= 1e-10 as kernel; a rho
    eigenvector (eigenvalue > 1e-10) with squared kernel overlap >= 1e-9
    makes the divergence infinite.
    """
    base = _check_base(base)
    if rho.dim != sigma.dim:
        raise ValueError("relative entropy needs states of equal dimension")
    wr, vr = np.linalg.eigh(rho.mat)
    wr = clip_eigenvalues(wr)
    ws, vs = np.linalg.eigh(sigma.mat)
    ws = clip_eigenvalues(ws)
    overlap = np.abs(vs.conj().T @ vr) ** 2  # overlap[j, i] = |<s_j|r_i>|^2
    kernel = ws <= _SUPPORT_EIG_TOL
    carried = wr > _SUPPORT_EIG_TOL
    if np.any(kernel) and np.any(carried):
        mass = overlap[np.ix_(kernel, carried)].sum(axis=0)
        if np.any(mass >= _SUPPORT_OVERLAP_TOL):
            return math.inf
    first = -spectrum_entropy(wr, base)
    support = ~kernel
    cross = (wr[None, :] * overlap[support, :]).sum(axis=1)
    second = float(np.dot(cross, _log(ws[support], base)))
    return float(first - second)


def mutual_information(rho: DensityMatrix, base: float = 2.0) -> float:
    """I(A:B) = H(A) + H(B) - H(AB) for a bipartite state."""
    base = _check_base(base)
    if rho.dims is None:
        raise ValueError("mutual information needs a state with explicit dims")
    ha = von_neumann_entropy(partial_trace(rho, "B"), base)
    hb = von_neumann_entropy(partial_trace(rho, "A"), base)
    return ha + hb - von_neumann_entropy(rho, base)


def relative_entropy_to_marginals(rho: DensityMatrix, base: float = 2.0) -> float:
    """H(rho || rho_A (x) rho_B); equals the mutual information."""
    ra = partial_trace(rho, "B")
    rb = partial_trace(rho, "A")
    prod = DensityMatrix(tensor(ra.mat, rb.mat), rho.dims)
    return relative_entropy(rho, prod, base)


def coherent_information(rho: DensityMatrix, direction: str = "a->b", base: float = 2.0) -> float:
    """I(A>B) = H(rho_B) - H(rho_AB), or I(B>A) with direction "b->a"."""
    base = _check_base(base)
    if rho.dims is None:
        raise ValueError("coherent information needs a state with explicit dims")
    if direction == "a->b":
        kept = von_neumann_entropy(partial_trace(rho, "A"), base)
    elif direction == "b->a":
        kept = von_neumann_entropy(partial_trace(rho, "B"), base)
    else:
        raise ValueError(f"direction must be 'a->b' or 'b->a', got {direction!r}")
    return kept - von_neumann_entropy(rho, base)


def max_coherent_information(rho: DensityMatrix, base: float = 2.0) -> float:
    """max of the two coherent informations; lower-bounds the relative
    entropy of entanglement of the state."""
    return max(
        coherent_information(rho, "a->b", base),
        coherent_information(rho, "b->a", base),
    )
