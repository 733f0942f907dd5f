r"""Distance between a pure state and its images under traceless single-mode ops.

For a pure N-mode state ``sigma`` and a traceless op ``S`` on one mode, the
perturbed state is ``sigma' = (S ⊕ 1) sigma (S ⊕ 1)^T`` and the distance is
``1 - F(sigma, sigma')`` with the pure-state overlap
``F = 2^N / sqrt(det(sigma + sigma'))``. The minimum over all traceless ops
equals ``(a^2 - 1)/(a^2 + 1)`` where ``a = sqrt(det sigma_k)`` for the
perturbed mode ``k``; :func:`minimize_distance` finds it numerically, without
using that value, and reports the residual.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import (
    DecompositionError,
    InvalidDimensionError,
    InvalidIndexError,
    InvalidParameterError,
)
from .states import (
    _as_cm,
    apply_symplectic,
    reduce,
    require_pure,
    williamson,
)
from .symplectic import (
    OMEGA_1,
    SingleModeOp,
    embed_on_mode,
    make_single_mode_op,
    single_mode_op_from_matrix,
)

GRID_POINTS = 101
ALPHA_MAX = 5.0
T_MAX = 3.0
REFINE_TOL = 1e-8
TIE_TOL = 1e-10
DET_SLACK = 1e-9
MAX_ROTATED_ROUNDS = 8


def fidelity_pure(sigma, sigma_prime) -> float:
    """Overlap ``2^N / sqrt(det(sigma + sigma'))`` of two pure Gaussian states."""
    sigma, sigma_prime = _as_cm(sigma), _as_cm(sigma_prime)
    if sigma.n_modes != sigma_prime.n_modes:
        raise InvalidDimensionError(
            f"mode counts differ: {sigma.n_modes} vs {sigma_prime.n_modes}"
        )
    require_pure(sigma)
    require_pure(sigma_prime)
    fid = _fidelity_from_det(np.linalg.det(sigma.matrix + sigma_prime.matrix), sigma.n_modes)
    if np.isnan(fid):
        raise DecompositionError("det(sigma + sigma') fell below its lower bound 4^N")
    return float(fid)


def _fidelity_from_log_det(log_det, n_modes: int):
    # det(sigma + sigma') >= 4^N for pure states. Roundoff just below the
    # bound is clamped so F <= 1; anything clearly below it means the
    # determinant has lost all precision and the value is reported as NaN.
    log_floor = n_modes * math.log(4.0)
    log_det = np.asarray(log_det, dtype=float)
    fid = np.exp(-0.5 * (np.maximum(log_det, log_floor) - log_floor))
    return np.where(log_det >= log_floor + math.log1p(-DET_SLACK), fid, np.nan)


def _fidelity_from_det(det, n_modes: int):
    with np.errstate(divide="ignore", invalid="ignore"):
        log_det = np.where(np.asarray(det) > 0, np.log(np.maximum(det, 1e-300)), -np.inf)
    return _fidelity_from_log_det(log_det, n_modes)


def _embedded_batch(ops: np.ndarray, mode_index: int, n_modes: int) -> np.ndarray:
    k = 2 * (mode_index - 1)
    e = np.broadcast_to(np.eye(2 * n_modes), (len(ops), 2 * n_modes, 2 * n_modes)).copy()
    e[:, k : k + 2, k : k + 2] = ops
    return e


def _op_matrices(alpha: np.ndarray, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Traceless ops on the (alpha, t) chart: ``beta = sqrt(1+alpha^2) cosh t``.

    The signed ``gamma = sqrt(1+alpha^2) sinh t`` makes ``t >= 0`` the
    ``branch=+1`` half and ``t < 0`` the other half. Every chart point is
    feasible.
    """
    h = np.hypot(alpha, 1.0)
    beta = h * np.cosh(t)
    gamma = h * np.sinh(t)
    ops = np.empty(alpha.shape + (2, 2))
    ops[..., 0, 0] = gamma
    ops[..., 0, 1] = alpha + beta
    ops[..., 1, 0] = alpha - beta
    ops[..., 1, 1] = -gamma
    return ops, beta


def _batch_distance(sigma: np.ndarray, ops: np.ndarray, mode_index: int) -> np.ndarray:
    # With sigma = L L^T and K = L^{-1} E L,
    # det(sigma + E sigma E^T) = det(sigma) * prod(1 + s_i^2) over the singular
    # values s_i of K. This avoids forming sigma + sigma' directly, which
    # cancels badly when the op or the state is strongly squeezed.
    n = sigma.shape[0] // 2
    chol = np.linalg.cholesky(sigma)
    inv_chol = solve_triangular(chol, np.eye(2 * n), lower=True)
    e = _embedded_batch(ops, mode_index, n)
    k = inv_chol @ e @ chol
    with np.errstate(over="ignore", invalid="ignore"):
        sv = np.linalg.svd(k, compute_uv=False)
        log_det = 2.0 * np.sum(np.log(np.diag(chol))) + np.sum(np.log1p(sv * sv), axis=-1)
    return 1.0 - _fidelity_from_log_det(log_det, n)


def _check_mode(mode_index: int, n_modes: int) -> int:
    if int(mode_index) != mode_index or not 1 <= mode_index <= n_modes:
        raise InvalidIndexError(f"mode_index {mode_index!r} outside 1..{n_modes}")
    return int(mode_index)


def distance_functional(sigma, alpha: float, beta: float, mode_index: int = 1,
                        branch: int = 1) -> float:
    """``1 - F(sigma, sigma')`` for the op ``S(alpha, beta)`` on ``mode_index``."""
    sigma = require_pure(sigma)
    mode_index = _check_mode(mode_index, sigma.n_modes)
    op = make_single_mode_op(alpha, beta, branch)
    value = _batch_distance(sigma.matrix, op.matrix[None], mode_index)[0]
    if np.isnan(value):
        raise DecompositionError("det(sigma + sigma') fell below its lower bound 4^N")
    return float(value)


def determinant_identity(a: float, beta: float, n_modes: int) -> float:
    """Closed form of ``det[sigma_W + (S ⊕ 1) sigma_W (S ⊕ 1)^T]`` for the Schmidt form.

    Depends on the op only through ``beta``.
    """
    if not a >= 1:
        raise InvalidParameterError(f"a must be >= 1, got {a!r}")
    if not beta >= 1:
        raise InvalidParameterError(f"beta must be >= 1, got {beta!r}")
    if int(n_modes) != n_modes or n_modes < 2:
        raise InvalidParameterError(f"n_modes must be an integer >= 2, got {n_modes!r}")
    return 4.0 ** (n_modes - 1) * ((a * a - 1.0) ** 2 + 4.0 * a * a * beta * beta)


def closed_form_distance(a: float) -> float:
    """Minimum distance ``(a^2 - 1)/(a^2 + 1)`` as a function of local mixedness ``a``."""
    if not a >= 1:
        raise InvalidParameterError(f"a must be >= 1, got {a!r}")
    # written as 1 - 2/(a^2+1) so rounding keeps it monotone in a
    return 1.0 - 2.0 / (a * a + 1.0)


def local_mixedness(sigma, mode_index: int = 1) -> float:
    """``a = sqrt(det sigma_k)`` of the reduced state of ``mode_index``."""
    sigma = _as_cm(sigma)
    det = reduce(sigma, [_check_mode(mode_index, sigma.n_modes)]).det()
    # clamp roundoff below the physical bound a >= 1
    return math.sqrt(max(det, 1.0))


@dataclass(frozen=True)
class DistanceResult:
    d_min: float
    argmin_alpha: float
    argmin_beta: float
    closed_form_d: float
    residual: float
    argmin_branch: int = 1
    n_evaluations: int = 0

    @property
    def argmin_op(self) -> SingleModeOp:
        return make_single_mode_op(self.argmin_alpha, self.argmin_beta, self.argmin_branch)


def _pick(values: np.ndarray, alpha: np.ndarray, beta: np.ndarray) -> int:
    best = values.min()
    ties = np.flatnonzero(values <= best + TIE_TOL)
    dist = alpha[ties] ** 2 + (beta[ties] - 1.0) ** 2
    return int(ties[np.argmin(dist)])


def _compass(objective, x, fx, axes, step, tol, max_step):
    """Compass search along the columns of ``axes`` with per-axis steps.

    A step doubles (up to ``max_step``) after an accepted move and all steps
    halve after a sweep without improvement; stops once every step < ``tol``.
    """
    step = np.array(step, dtype=float)
    while step.max() >= tol:
        moves = np.concatenate([axes.T * step[:, None], -axes.T * step[:, None]])
        values = objective(x + moves)
        j = int(np.argmin(values))
        if values[j] < fx:
            x, fx = x + moves[j], values[j]
            k = j % len(step)
            step[k] = min(step[k] * 2.0, max_step[k])
        else:
            step = step / 2.0
    return x, fx


def _hessian_axes(objective, x, h=1e-4):
    """Eigenvectors of a central-difference Hessian of ``objective`` at ``x``."""
    e = np.eye(2) * h
    pts = [x, x + e[0], x - e[0], x + e[1], x - e[1],
           x + e[0] + e[1], x + e[0] - e[1], x - e[0] + e[1], x - e[0] - e[1]]
    f = objective(np.array(pts))
    if not np.all(np.isfinite(f)):
        return None
    h_aa = (f[1] - 2 * f[0] + f[2]) / h**2
    h_tt = (f[3] - 2 * f[0] + f[4]) / h**2
    h_at = (f[5] - f[6] - f[7] + f[8]) / (4 * h**2)
    _, vecs = np.linalg.eigh(np.array([[h_aa, h_at], [h_at, h_tt]]))
    return vecs


def minimize_distance(sigma, mode_index: int = 1, grid: int = GRID_POINTS,
                      refine_tol: float = REFINE_TOL, alpha_max: float = ALPHA_MAX,
                      t_max: float = T_MAX) -> DistanceResult:
    """Numerically minimize the distance over all traceless ops on ``mode_index``.

    A ``grid x grid`` scan of ``alpha in [-alpha_max, alpha_max]`` and
    ``t in [-t_max, t_max]`` is followed by a compass search on ``(alpha, t)``
    (see :func:`_compass`), first along the coordinate axes and then along
    the principal axes of the local curvature. The search is unbounded in
    ``alpha`` and ``t`` so minima outside the grid are reached.
    """
    sigma = require_pure(sigma)
    mode_index = _check_mode(mode_index, sigma.n_modes)
    if grid < 2:
        raise InvalidParameterError(f"grid must be >= 2, got {grid!r}")
    if not refine_tol > 0:
        raise InvalidParameterError(f"refine_tol must be positive, got {refine_tol!r}")
    m = sigma.matrix

    alphas = np.linspace(-alpha_max, alpha_max, grid)
    ts = np.linspace(-t_max, t_max, grid)
    ga, gt = (x.ravel() for x in np.meshgrid(alphas, ts, indexing="ij"))
    ops, gb = _op_matrices(ga, gt)
    values = np.nan_to_num(_batch_distance(m, ops, mode_index), nan=np.inf)
    n_eval = len(values)
    i = _pick(values, ga, gb)
    x = np.array([ga[i], gt[i]])
    fx = values[i]

    def objective(points):
        nonlocal n_eval
        c_ops, _ = _op_matrices(points[:, 0], points[:, 1])
        n_eval += len(points)
        return np.nan_to_num(_batch_distance(m, c_ops, mode_index), nan=np.inf)

    step = np.array([alphas[1] - alphas[0], ts[1] - ts[0]])
    max_step = np.array([alpha_max, t_max])
    x, fx = _compass(objective, x, fx, np.eye(2), step, refine_tol, max_step)
    # Strongly squeezed states give long diagonal valleys in (alpha, t);
    # re-run the compass search along the local Hessian's eigenvectors until
    # a round brings no improvement.
    for _ in range(MAX_ROTATED_ROUNDS):
        axes = _hessian_axes(objective, x)
        if axes is None:
            break
        x_new, f_new = _compass(objective, x, fx, axes, step, refine_tol, max_step)
        if not f_new < fx:
            break
        x, fx = x_new, f_new

    alpha = float(x[0])
    beta = float(math.hypot(alpha, 1.0) * math.cosh(x[1]))
    branch = 1 if x[1] >= 0 else -1
    d_min = float(max(fx, 0.0))
    closed = closed_form_distance(local_mixedness(sigma, mode_index))
    return DistanceResult(
        d_min=d_min,
        argmin_alpha=alpha,
        argmin_beta=beta,
        closed_form_d=closed,
        residual=abs(d_min - closed),
        argmin_branch=branch,
        n_evaluations=n_eval,
    )


def extremal_op() -> SingleModeOp:
    """``S(0, 1) = omega``, the quarter-turn rotation in phase space."""
    return make_single_mode_op(0.0, 1.0)


def optimal_op(sigma, mode_index: int = 1) -> SingleModeOp:
    """Traceless op attaining the minimum distance: ``W_k^{-1} omega W_k``.

    ``W_k`` diagonalizes the reduced state of ``mode_index``. When that
    reduction is already proportional to the identity this is ``omega``.
    """
    sigma = _as_cm(sigma)
    mode_index = _check_mode(mode_index, sigma.n_modes)
    w = williamson(reduce(sigma, [mode_index])).w
    return single_mode_op_from_matrix(w.inverse().matrix @ OMEGA_1 @ w.matrix)


def is_product_across_cut(sigma, mode_index: int = 1, tolerance: float = 1e-9) -> bool:
    """Whether mode ``mode_index`` is uncorrelated with the rest of a pure state.

    Decided by invariance of ``sigma`` under :func:`optimal_op`. For states
    whose mode reduction is a multiple of the identity this is exactly the
    quarter-turn ``omega``. A locally squeezed mode is moved by ``omega``, but
    the conjugated op still leaves a product state fixed.
    """
    sigma = require_pure(sigma)
    mode_index = _check_mode(mode_index, sigma.n_modes)
    op = optimal_op(sigma, mode_index)
    moved = apply_symplectic(sigma, embed_on_mode(op, mode_index, sigma.n_modes))
    return bool(np.max(np.abs(moved.matrix - sigma.matrix)) <= tolerance)
