"""Certified search routines feeding the distance bounds.

Four engines live here, all hand-rolled on dense eigendecompositions:

* mirror ascent over density matrices for maximizing or minimizing coherent
  information and its reverse variant,
* a see-saw alternation giving certified lower bounds on diamond-norm
  distance between two channels,
* projected gradient descent over PPT states for the relative entropy of
  entanglement, with a dual minorant making every iterate a certificate,
* a projected subgradient search for the trace-norm distance to the PPT set.

Everything a Certificate reports as ``value`` is exactly evaluable from its
witness; best-found candidates are never extrapolated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import (
    KrausChannel,
    adjoint_apply_mat,
    apply_mat,
    complement,
    tensor_with_identity,
)
from .entropy import _check_base, _entropy_mat
from .linalg import (
    DensityMatrix,
    PureState,
    chaotic_state,
    hermitian_eigen,
    hermitian_log,
    hermitize,
    maximally_entangled,
    random_density_matrix,
    trace_norm,
)

_STALL_LIMIT = 10
_BASIS_SEED_CAP = 8
_BASIS_SEED_MIX = 1e-6
_RHO_FLOOR = 1e-9
_SIGMA_FLOOR = 1e-4
_EIG_PAIR_GUARD = 1e-13
_DYKSTRA_TOL = 1e-10
_DYKSTRA_MAX_ITERS = 200


@dataclass(frozen=True)
class OptimizerConfig:
    """Shared knobs for all search routines.

    ``restarts`` counts additional random seeds on top of the deterministic
    ones; ``step`` is the initial step size (and the subgradient scale for
    the trace-distance oracle); ``tol`` drives stagnation detection.
    """

    restarts: int = 8
    max_iters: int = 500
    tol: float = 1e-7
    step: float = 0.1
    seed: int = 0


@dataclass(frozen=True)
class Certificate:
    """Outcome of a search, pinned to a re-evaluable witness.

    ``value`` is the certified quantity (its meaning depends on ``kind``),
    ``witness`` the state or vector achieving it, ``objective`` an optional
    secondary achieved value, and ``history`` the accepted objective values
    of the winning run.
    """

    kind: str
    value: float
    witness: object
    converged: bool
    iterations: int
    objective: float | None = None
    history: tuple = ()


# ----- mirror ascent over density matrices -----


def _log_base(m: np.ndarray, lb: float) -> np.ndarray:
    return hermitian_log(m) / lb


def coherent_information_gradient(
    phi: KrausChannel, rho_mat: np.ndarray, base: float = 2.0
) -> np.ndarray:
    """Euclidean gradient of rho -> H(Phi(rho)) - H(complement(rho)).

    The identity components of both entropy gradients cancel because channel
    adjoints are unital, leaving adjoint-propagated logarithms.
    """
    lb = math.log(_check_base(base))
    comp = complement(phi)
    return _ic_gradient(phi, comp, rho_mat, lb)


def reverse_coherent_information_gradient(
    phi: KrausChannel, rho_mat: np.ndarray, base: float = 2.0
) -> np.ndarray:
    """Euclidean gradient of rho -> H(rho) - H(complement(rho))."""
    lb = math.log(_check_base(base))
    comp = complement(phi)
    return _rci_gradient(comp, rho_mat, lb)


def _ic_gradient(phi, comp, rho_mat, lb):
    out_log = _log_base(apply_mat(phi, rho_mat), lb)
    env_log = _log_base(apply_mat(comp, rho_mat), lb)
    return hermitize(adjoint_apply_mat(comp, env_log) - adjoint_apply_mat(phi, out_log))


def _rci_gradient(comp, rho_mat, lb):
    env_log = _log_base(apply_mat(comp, rho_mat), lb)
    return hermitize(adjoint_apply_mat(comp, env_log) - _log_base(rho_mat, lb))


def _mirror_step(rho: np.ndarray, grad: np.ndarray, eta: float) -> np.ndarray:
    w, u = hermitian_eigen(hermitian_log(rho) + eta * grad)
    ew = np.exp(w - w.max())
    ew /= ew.sum()
    return (u * ew) @ u.conj().T


def _single_ascent(value_fn, grad_fn, rho, cfg):
    val = value_fn(rho)
    history = [val]
    eta = cfg.step
    stall = 0
    converged = False
    it = 0
    for it in range(1, cfg.max_iters + 1):
        grad = grad_fn(rho)
        eta_try = eta
        accepted = None
        for _ in range(50):
            trial = _mirror_step(rho, grad, eta_try)
            tv = value_fn(trial)
            if tv > val + 1e-15:
                accepted = (trial, tv)
                break
            eta_try *= 0.5
        if accepted is None:
            converged = True
            break
        gain = accepted[1] - val
        rho, val = accepted
        history.append(val)
        stall = stall + 1 if gain < cfg.tol else 0
        if stall >= _STALL_LIMIT:
            converged = True
            break
        eta = min(eta_try * 2.0, 4.0)
    return rho, val, history, converged, it


def _ascent_seeds(d: int, cfg: OptimizerConfig) -> list:
    rng = np.random.default_rng(cfg.seed)
    eye = np.eye(d, dtype=complex)
    seeds = [eye / d]
    for i in range(min(d, _BASIS_SEED_CAP)):
        pointer = np.zeros((d, d), dtype=complex)
        pointer[i, i] = 1.0
        seeds.append((1.0 - _BASIS_SEED_MIX) * pointer + _BASIS_SEED_MIX * eye / d)
    for _ in range(cfg.restarts):
        seeds.append(random_density_matrix(d, rng).mat)
    return seeds


def _multistart_ascent(value_fn, grad_fn, d, cfg):
    best = None
    for seed in _ascent_seeds(d, cfg):
        result = _single_ascent(value_fn, grad_fn, seed, cfg)
        if best is None or result[1] > best[1]:
            best = result
    return best


def maximize_coherent_information(
    phi: KrausChannel, cfg: OptimizerConfig | None = None, base: float = 2.0
) -> Certificate:
    """Best coherent information found over input states.

    The value is the exact coherent information of the witness state, so it
    is always a valid achievability certificate even when the search has not
    converged to the global optimum.
    """
    cfg = cfg or OptimizerConfig()
    base = _check_base(base)
    lb = math.log(base)
    comp = complement(phi)

    def value_fn(rho):
        return _entropy_mat(apply_mat(phi, rho), base) - _entropy_mat(
            apply_mat(comp, rho), base
        )

    def grad_fn(rho):
        return _ic_gradient(phi, comp, rho, lb)

    rho, val, history, converged, iters = _multistart_ascent(
        value_fn, grad_fn, phi.d_in, cfg
    )
    return Certificate(
        "Ic", val, DensityMatrix(rho), converged, iters, history=tuple(history)
    )


def minimize_coherent_information(
    phi: KrausChannel, cfg: OptimizerConfig | None = None, base: float = 2.0
) -> Certificate:
    """Lowest coherent information found; negative values certify distance
    from the degradable set."""
    cfg = cfg or OptimizerConfig()
    base = _check_base(base)
    lb = math.log(base)
    comp = complement(phi)

    def value_fn(rho):
        return _entropy_mat(apply_mat(comp, rho), base) - _entropy_mat(
            apply_mat(phi, rho), base
        )

    def grad_fn(rho):
        return -_ic_gradient(phi, comp, rho, lb)

    rho, val, history, converged, iters = _multistart_ascent(
        value_fn, grad_fn, phi.d_in, cfg
    )
    return Certificate(
        "negIc",
        -val,
        DensityMatrix(rho),
        converged,
        iters,
        history=tuple(-h for h in history),
    )


def maximize_reverse_coherent_information(
    phi: KrausChannel, cfg: OptimizerConfig | None = None, base: float = 2.0
) -> Certificate:
    """Best input entropy minus environment entropy found over input states."""
    cfg = cfg or OptimizerConfig()
    base = _check_base(base)
    lb = math.log(base)
    comp = complement(phi)

    def value_fn(rho):
        return _entropy_mat(rho, base) - _entropy_mat(apply_mat(comp, rho), base)

    def grad_fn(rho):
        return _rci_gradient(comp, rho, lb)

    rho, val, history, converged, iters = _multistart_ascent(
        value_fn, grad_fn, phi.d_in, cfg
    )
    return Certificate(
        "L", val, DensityMatrix(rho), converged, iters, history=tuple(history)
    )


# ----- see-saw lower bound on diamond-norm distance -----


def seesaw_objective(phi: KrausChannel, psi: KrausChannel, vec: np.ndarray) -> float:
    """Trace norm of ((Phi - Psi) (x) Id) applied to the given pure input.

    Any unit vector gives a valid diamond-norm lower bound; this re-evaluates
    a see-saw witness independently of the search.
    """
    d_ref = phi.d_in
    ext_phi = tensor_with_identity(phi, d_ref)
    ext_psi = tensor_with_identity(psi, d_ref)
    v = np.asarray(vec, dtype=complex).reshape(-1)
    rho = np.outer(v, v.conj())
    return trace_norm(apply_mat(ext_phi, rho) - apply_mat(ext_psi, rho))


def _seesaw_seeds(n: int, cfg: OptimizerConfig, d_a: int) -> list:
    rng = np.random.default_rng(cfg.seed)
    seeds = [maximally_entangled(d_a).vec]
    for _ in range(cfg.restarts):
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        seeds.append(v / np.linalg.norm(v))
    return seeds


def seesaw_diamond_lower(
    phi: KrausChannel, psi: KrausChannel, cfg: OptimizerConfig | None = None
) -> Certificate:
    """Certified diamond-norm distance lower bound via alternating updates.

    Alternates between the optimal distinguishing observable for the current
    input (a Hermitian sign matrix) and the best pure input for the current
    observable (a top eigenvector). Both half-steps are exact maximizations,
    so the objective never decreases.
    """
    if (phi.d_in, phi.d_out) != (psi.d_in, psi.d_out):
        raise ValueError("channels must share input and output dimensions")
    cfg = cfg or OptimizerConfig()
    d_a = phi.d_in
    ext_phi = tensor_with_identity(phi, d_a)
    ext_psi = tensor_with_identity(psi, d_a)
    n = d_a * d_a

    def objective(v):
        rho = np.outer(v, v.conj())
        return trace_norm(apply_mat(ext_phi, rho) - apply_mat(ext_psi, rho))

    best = None
    for v in _seesaw_seeds(n, cfg, d_a):
        val = objective(v)
        history = [val]
        stall = 0
        converged = False
        it = 0
        for it in range(1, cfg.max_iters + 1):
            rho = np.outer(v, v.conj())
            x = apply_mat(ext_phi, rho) - apply_mat(ext_psi, rho)
            w, u = hermitian_eigen(x)
            sign = (u * np.where(w >= 0.0, 1.0, -1.0)) @ u.conj().T
            m = adjoint_apply_mat(ext_phi, sign) - adjoint_apply_mat(ext_psi, sign)
            mw, mu = hermitian_eigen(m)
            v_new = mu[:, -1]
            val_new = objective(v_new)
            if val_new < val:
                converged = True
                break
            gain = val_new - val
            v, val = v_new, val_new
            history.append(val)
            stall = stall + 1 if gain < cfg.tol else 0
            if stall >= _STALL_LIMIT:
                converged = True
                break
        if best is None or val > best[1]:
            best = (v, val, history, converged, it)
    v, val, history, converged, iters = best
    witness = PureState(v, dims=(d_a, d_a))
    return Certificate(
        "Diamond_lower", val, witness, converged, iters, history=tuple(history)
    )


# ----- PPT geometry -----


def partial_transpose(mat: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    """Transpose the second tensor factor of a bipartite operator."""
    da, db = dims
    n = da * db
    a = np.asarray(mat, dtype=complex)
    if a.shape != (n, n):
        raise ValueError(f"shape {a.shape} incompatible with dims {dims}")
    return a.reshape(da, db, da, db).transpose(0, 3, 2, 1).reshape(n, n)


def _project_simplex(w: np.ndarray) -> np.ndarray:
    u = np.sort(w)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(u) + 1)
    k = idx[u - css / idx > 0][-1]
    tau = css[k - 1] / k
    return np.maximum(w - tau, 0.0)


def _project_density(mat: np.ndarray) -> np.ndarray:
    w, u = hermitian_eigen(mat)
    return (u * _project_simplex(w)) @ u.conj().T


def _project_pt_psd(mat: np.ndarray, dims) -> np.ndarray:
    g = partial_transpose(mat, dims)
    w, u = hermitian_eigen(g)
    clipped = (u * np.maximum(w, 0.0)) @ u.conj().T
    return partial_transpose(clipped, dims)


def project_ppt(mat: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    """Nearest PPT density matrix in Frobenius norm, via Dykstra alternation.

    Alternates exact projections onto the density-matrix set and onto the
    cone of operators with positive partial transpose, with Dykstra
    corrections so the limit is the true projection onto the intersection.
    Returns the density-matrix-side iterate, which is always a valid state.
    """
    x = hermitize(np.asarray(mat, dtype=complex))
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    y = x
    for _ in range(_DYKSTRA_MAX_ITERS):
        y = _project_density(x + p)
        p = x + p - y
        x = _project_pt_psd(y + q, dims)
        q = y + q - x
        if np.linalg.norm(y - x) < _DYKSTRA_TOL:
            break
    return hermitize(y)


# ----- relative entropy of entanglement, certified from below -----


def _ree_terms(rho_t: np.ndarray, tr_rho_log_rho: float, sigma: np.ndarray, dims, lb):
    """Objective, gradient and dual certificate at one PPT candidate.

    The certificate uses convexity of sigma -> H(rho||sigma): the tangent
    plane at sigma minorizes the objective, and its minimum over density
    matrices with positive partial transpose is bounded below by the larger
    of the smallest eigenvalue of the gradient and the smallest eigenvalue
    of its partial transpose. The resulting number is a true lower bound on
    the relative entropy of entanglement of the regularized state no matter
    how far the search is from optimal.

    The candidate is mixed with weight 1e-4 of the maximally mixed state
    before evaluation. Without that floor, directions where the candidate's
    spectrum collapses give the gradient spurious eigenvalues of order
    -rho_mass/sigma_mass and the minorant becomes vacuous; with it, the
    spurious part is bounded by the 1e-9/1e-4 mass ratio while the objective
    moves by at most 1e-4 * log(dim). The tangent-plane inequality holds at
    the mixed candidate exactly, so validity is unaffected.
    """
    n = sigma.shape[0]
    sig = (1.0 - _SIGMA_FLOOR) * hermitize(sigma) + _SIGMA_FLOOR * np.eye(n) / n
    ws, us = hermitian_eigen(sig)
    ws = np.maximum(ws, 1e-300)
    rho_e = us.conj().T @ rho_t @ us
    f_nat = tr_rho_log_rho - float(np.real(np.log(ws) @ np.diag(rho_e).real))
    wa = ws[:, None]
    wb = ws[None, :]
    diff = wa - wb
    with np.errstate(divide="ignore", invalid="ignore"):
        kernel = (np.log(wa) - np.log(wb)) / diff
    near = np.abs(diff) <= _EIG_PAIR_GUARD
    kernel[near] = (2.0 / (wa + wb))[near]
    grad = hermitize(us @ (-kernel * rho_e) @ us.conj().T) / lb
    f = f_nat / lb
    lam = float(np.linalg.eigvalsh(grad)[0])
    lam_pt = float(np.linalg.eigvalsh(hermitize(partial_transpose(grad, dims)))[0])
    slope = float(np.real(np.trace(grad @ sig)))
    cert = max(0.0, f + max(lam, lam_pt) - slope)
    return f, grad, cert, sig


def _regularized(rho: DensityMatrix) -> tuple[np.ndarray, float, tuple[int, int]]:
    if rho.dims is None:
        raise ValueError("state needs explicit bipartite dims")
    n = rho.dim
    rho_t = (1.0 - _RHO_FLOOR) * rho.mat + _RHO_FLOOR * np.eye(n) / n
    w = np.linalg.eigvalsh(rho_t)
    w = np.maximum(w, 1e-300)
    return rho_t, float((w * np.log(w)).sum()), rho.dims


def ree_dual_certificate(rho: DensityMatrix, sigma: DensityMatrix, base: float = 2.0) -> float:
    """Re-evaluate the certified lower bound at a stored witness."""
    lb = math.log(_check_base(base))
    rho_t, tr_log, dims = _regularized(rho)
    _, _, cert, _ = _ree_terms(rho_t, tr_log, sigma.mat, dims, lb)
    return cert


def ree_ppt_lower(
    rho: DensityMatrix, cfg: OptimizerConfig | None = None, base: float = 2.0
) -> Certificate:
    """Certified lower bound on the relative entropy of entanglement.

    Runs projected gradient descent of H(rho||sigma) over PPT states sigma
    and keeps the best dual certificate seen at any iterate. ``value`` is
    that certificate (valid regardless of convergence), ``objective`` the
    best achieved relative entropy (an upper reference for the PPT
    relaxation), and the witness is the candidate behind ``value``. The
    input is mixed with weight 1e-9 of the maximally mixed state so
    logarithms stay finite; this perturbs the target by a comparable amount.
    """
    cfg = cfg or OptimizerConfig()
    lb = math.log(_check_base(base))
    rho_t, tr_log, dims = _regularized(rho)
    n = rho.dim

    sigma = project_ppt(rho_t, dims)
    f, grad, cert, sig = _ree_terms(rho_t, tr_log, sigma, dims, lb)
    best_cert = cert
    best_sigma = sigma
    best_f = f
    history = [cert]
    eta = cfg.step
    stall = 0
    converged = False
    it = 0
    for it in range(1, cfg.max_iters + 1):
        eta_try = eta
        accepted = None
        for _ in range(40):
            trial = project_ppt(sig - eta_try * grad, dims)
            tf, tgrad, tcert, tsig = _ree_terms(rho_t, tr_log, trial, dims, lb)
            if tf < f - 1e-15:
                accepted = (tf, tgrad, tcert, tsig, trial)
                break
            eta_try *= 0.5
        if accepted is None:
            converged = True
            break
        gain = f - accepted[0]
        f, grad, cert, sig, candidate = accepted
        history.append(cert)
        if cert > best_cert:
            best_cert = cert
            best_sigma = candidate
        best_f = min(best_f, f)
        stall = stall + 1 if gain < cfg.tol else 0
        if stall >= _STALL_LIMIT:
            converged = True
            break
        eta = min(eta_try * 2.0, 10.0 * cfg.step)
    return Certificate(
        "ER_lower",
        best_cert,
        DensityMatrix(best_sigma, dims),
        converged,
        it,
        objective=best_f,
        history=tuple(history),
    )


# ----- trace distance to the PPT set (search estimate) -----


def trace_dist_to_ppt(rho: DensityMatrix, cfg: OptimizerConfig | None = None) -> Certificate:
    """Search estimate of min over PPT states of ||rho - sigma||_1.

    Projected subgradient descent with diminishing steps. The value is an
    achieved trace norm against a feasible PPT state, hence an upper
    reference for the separability distance, not a certified lower bound.
    """
    cfg = cfg or OptimizerConfig()
    if rho.dims is None:
        raise ValueError("state needs explicit bipartite dims")
    dims = rho.dims
    sigma = project_ppt(rho.mat, dims)

    def objective(s):
        return trace_norm(rho.mat - s)

    val = objective(sigma)
    best_val = val
    best_sigma = sigma
    history = [val]
    last_improvement = 0
    for it in range(1, cfg.max_iters + 1):
        diff = hermitize(rho.mat - sigma)
        w, u = hermitian_eigen(diff)
        sign = (u * np.where(w >= 0.0, 1.0, -1.0)) @ u.conj().T
        sigma = project_ppt(sigma + (cfg.step / math.sqrt(it)) * sign, dims)
        val = objective(sigma)
        history.append(val)
        if val < best_val - cfg.tol:
            last_improvement = it
        if val < best_val:
            best_val = val
            best_sigma = sigma
    converged = (cfg.max_iters - last_improvement) >= _STALL_LIMIT
    return Certificate(
        "Ds_oracle",
        best_val,
        DensityMatrix(best_sigma, dims),
        converged,
        cfg.max_iters,
        history=tuple(history),
    )
