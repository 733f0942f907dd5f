r"""Symplectic matrices, the Sp(2,R) generators and the traceless single-mode family.

All matrices use the xpxp ordering ``(x_1, p_1, ..., x_N, p_N)`` so that the
symplectic form is the block-diagonal direct sum of ``omega = [[0, 1], [-1, 0]]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    ConstraintViolationError,
    InvalidDimensionError,
    InvalidIndexError,
    InvalidParameterError,
)

TOL_SYM = 1e-10

OMEGA_1 = np.array([[0.0, 1.0], [-1.0, 0.0]])
OMEGA_1.setflags(write=False)


def _frozen(matrix) -> np.ndarray:
    arr = np.array(matrix, dtype=float)
    arr.setflags(write=False)
    return arr


def _n_modes_of(matrix: np.ndarray) -> int:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidDimensionError(f"expected a square matrix, got shape {matrix.shape}")
    if matrix.shape[0] == 0 or matrix.shape[0] % 2:
        raise InvalidDimensionError(f"expected an even dimension, got {matrix.shape[0]}")
    return matrix.shape[0] // 2


@dataclass(frozen=True)
class SymplecticForm:
    n_modes: int
    matrix: np.ndarray


def make_symplectic_form(n_modes: int) -> SymplecticForm:
    """Return ``Omega = omega ⊕ ... ⊕ omega`` for ``n_modes`` modes."""
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidDimensionError(f"n_modes must be a positive integer, got {n_modes!r}")
    n_modes = int(n_modes)
    return SymplecticForm(n_modes, _frozen(np.kron(np.eye(n_modes), OMEGA_1)))


def omega(n_modes: int) -> np.ndarray:
    return make_symplectic_form(n_modes).matrix


def is_symplectic(matrix, tolerance: float = TOL_SYM) -> bool:
    """True iff ``max|S Omega S^T - Omega| <= tolerance``."""
    s = np.asarray(matrix, dtype=float)
    om = omega(_n_modes_of(s))
    return bool(np.max(np.abs(s @ om @ s.T - om)) <= tolerance)


@dataclass(frozen=True)
class SymplecticMatrix:
    """A validated symplectic matrix together with its mode count.

    Construction checks ``S Omega S^T = Omega`` and ``det S = 1`` to ``tolerance``
    and raises :class:`InvalidParameterError` otherwise.
    """

    n_modes: int
    matrix: np.ndarray

    @classmethod
    def from_matrix(cls, matrix, tolerance: float = TOL_SYM) -> "SymplecticMatrix":
        s = _frozen(matrix)
        n = _n_modes_of(s)
        if not is_symplectic(s, tolerance):
            raise InvalidParameterError("matrix does not preserve the symplectic form")
        if abs(np.linalg.det(s) - 1.0) > tolerance:
            raise InvalidParameterError("symplectic matrix must have unit determinant")
        return cls(n, s)

    @classmethod
    def identity(cls, n_modes: int) -> "SymplecticMatrix":
        return cls(n_modes, _frozen(np.eye(2 * n_modes)))

    def inverse(self) -> "SymplecticMatrix":
        # S^{-1} = -Omega S^T Omega for symplectic S
        om = omega(self.n_modes)
        return SymplecticMatrix(self.n_modes, _frozen(-om @ self.matrix.T @ om))

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if self.n_modes != other.n_modes:
            raise InvalidDimensionError("mode counts differ")
        return SymplecticMatrix(self.n_modes, _frozen(self.matrix @ other.matrix))


def direct_sum(a: SymplecticMatrix, b: SymplecticMatrix) -> SymplecticMatrix:
    dim_a, dim_b = a.matrix.shape[0], b.matrix.shape[0]
    out = np.zeros((dim_a + dim_b, dim_a + dim_b))
    out[:dim_a, :dim_a] = a.matrix
    out[dim_a:, dim_a:] = b.matrix
    return SymplecticMatrix(a.n_modes + b.n_modes, _frozen(out))


class GeneratorBasis(NamedTuple):
    sigma1: np.ndarray
    sigma2: np.ndarray
    sigma3: np.ndarray


SIGMA1 = _frozen([[0.0, 1.0], [1.0, 0.0]])
SIGMA2 = OMEGA_1
SIGMA3 = _frozen([[1.0, 0.0], [0.0, -1.0]])
GENERATORS = GeneratorBasis(SIGMA1, SIGMA2, SIGMA3)


def generator_coefficients(matrix) -> tuple[float, float, float, float]:
    """Coordinates of a 2x2 matrix in the basis (identity, sigma1, sigma2, sigma3).

    The four basis matrices are mutually orthogonal under the Frobenius
    product with squared norm 2, so projection is exact.
    """
    m = np.asarray(matrix, dtype=float)
    basis = (np.eye(2), SIGMA1, SIGMA2, SIGMA3)
    return tuple(float(np.sum(m * b) / 2.0) for b in basis)


def rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, s], [-s, c]])


def squeezer(xi: float) -> np.ndarray:
    if not xi > 0:
        raise InvalidParameterError(f"squeezing xi must be positive, got {xi!r}")
    return np.array([[xi, 0.0], [0.0, 1.0 / xi]])


@dataclass(frozen=True)
class EulerAngles:
    """Parameters of ``rotation(phi) @ squeezer(xi) @ rotation(theta)``."""

    xi: float
    theta: float
    phi: float

    @classmethod
    def traceless(cls, xi: float, theta: float) -> "EulerAngles":
        """Angles constrained to the traceless family, where ``phi = pi/2 - theta``."""
        theta = math.fmod(theta, 2 * math.pi)
        if theta < 0:
            theta += 2 * math.pi
        return cls(xi, theta, math.pi / 2 - theta)


def euler_compose(angles: EulerAngles) -> SymplecticMatrix:
    if not angles.xi > 0:
        raise InvalidParameterError(f"squeezing xi must be positive, got {angles.xi!r}")
    m = rotation(angles.phi) @ squeezer(angles.xi) @ rotation(angles.theta)
    return SymplecticMatrix(1, _frozen(m))


@dataclass(frozen=True)
class SingleModeOp:
    r"""Traceless single-mode symplectic operation ``alpha*Σ1 + beta*Σ2 + gamma*Σ3``.

    Realized as ``[[gamma, alpha + beta], [alpha - beta, -gamma]]`` with
    ``gamma = branch * sqrt(beta**2 - alpha**2 - 1)``. The default branch
    ``+1`` is the usual explicit form; ``branch=-1`` covers the remaining
    traceless rotation-squeeze-rotation products (those with ``sin 2θ < 0``),
    which are needed for the family to be closed under conjugation by
    single-mode symplectics. Use :func:`make_single_mode_op` to construct one;
    it enforces ``beta >= sqrt(alpha**2 + 1)``.
    """

    alpha: float
    beta: float
    branch: int = 1

    @property
    def gamma(self) -> float:
        # (beta - h)(beta + h) with h = hypot(alpha, 1) stays exact at the boundary
        h = math.hypot(self.alpha, 1.0)
        root = math.sqrt(max((self.beta - h) * (self.beta + h), 0.0))
        return root if self.branch > 0 else -root

    @property
    def matrix(self) -> np.ndarray:
        a, b, g = self.alpha, self.beta, self.gamma
        return np.array([[g, a + b], [a - b, -g]])

    def symplectic(self) -> SymplecticMatrix:
        return SymplecticMatrix(1, _frozen(self.matrix))


def make_single_mode_op(alpha: float, beta: float, branch: int = 1) -> SingleModeOp:
    alpha, beta = float(alpha), float(beta)
    # the boundary beta == sqrt(alpha^2 + 1) is accepted (gamma = 0)
    if not beta >= math.hypot(alpha, 1.0):
        raise ConstraintViolationError(
            f"beta={beta!r} violates beta >= sqrt(alpha**2 + 1) for alpha={alpha!r}"
        )
    if branch not in (1, -1):
        raise InvalidParameterError(f"branch must be +1 or -1, got {branch!r}")
    return SingleModeOp(alpha, beta, branch)


def single_mode_op_from_matrix(matrix, tolerance: float = TOL_SYM) -> SingleModeOp:
    """Recover ``(alpha, beta, branch)`` from a traceless 2x2 symplectic matrix."""
    m = np.asarray(matrix, dtype=float)
    if m.shape != (2, 2):
        raise InvalidDimensionError(f"expected a 2x2 matrix, got shape {m.shape}")
    if abs(m[0, 0] + m[1, 1]) > tolerance or not is_symplectic(m, tolerance):
        raise InvalidParameterError("matrix is not a traceless symplectic matrix")
    alpha = 0.5 * (m[0, 1] + m[1, 0])
    beta = 0.5 * (m[0, 1] - m[1, 0])
    if beta < 0:
        raise InvalidParameterError("matrix lies on the beta < 0 sheet (it is -S for some S)")
    beta = max(beta, math.hypot(alpha, 1.0))
    return make_single_mode_op(alpha, beta, 1 if m[0, 0] >= 0 else -1)


def single_mode_op_to_euler(op: SingleModeOp) -> EulerAngles:
    """Euler parameters reproducing ``op`` in the traceless family.

    Matching the entries of the composed rotation-squeeze-rotation product
    (with ``phi = pi/2 - theta``) against the realized matrix gives
    ``xi + 1/xi = 2*beta``, ``(1/xi - xi) cos 2θ = 2*alpha`` and
    ``(xi - 1/xi) sin 2θ = 2*gamma``. We take the root ``xi >= 1``.
    At ``beta == 1`` the op is ``omega`` and ``theta = 0``.
    """
    b2m1 = max(op.beta * op.beta - 1.0, 0.0)
    root = math.sqrt(b2m1)
    xi = op.beta + root
    if root == 0.0:
        return EulerAngles.traceless(1.0, 0.0)
    theta = 0.5 * math.atan2(op.gamma, -op.alpha)
    return EulerAngles.traceless(xi, theta)


def embed_on_mode(op: SingleModeOp, mode_index: int, n_modes: int) -> SymplecticMatrix:
    """``op`` acting on mode ``mode_index`` (1-based), identity elsewhere."""
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidDimensionError(f"n_modes must be a positive integer, got {n_modes!r}")
    if int(mode_index) != mode_index or not 1 <= mode_index <= n_modes:
        raise InvalidIndexError(f"mode_index {mode_index!r} outside 1..{n_modes}")
    k = 2 * (int(mode_index) - 1)
    out = np.eye(2 * int(n_modes))
    out[k : k + 2, k : k + 2] = op.matrix
    return SymplecticMatrix(int(n_modes), _frozen(out))
