"""Covariance matrices of zero-mean N-mode Gaussian states.

Convention: the vacuum covariance matrix is the identity, so a state is pure
exactly when every symplectic eigenvalue equals 1 (and then ``det = 1``).
Other libraries often scale the vacuum to ``1/2``; divide by that factor
before passing their matrices in.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.linalg import polar, schur, solve_triangular

from .errors import (
    DecompositionError,
    DomainError,
    InvalidDimensionError,
    InvalidIndexError,
    InvalidParameterError,
    PurityError,
)
from .symplectic import (
    SymplecticMatrix,
    _frozen,
    _n_modes_of,
    direct_sum,
    omega,
    rotation,
)

TOL_SYMMETRIC = 1e-12
TOL_BONA_FIDE = 1e-10
TOL_PURE = 1e-9


@dataclass(frozen=True)
class CovarianceMatrix:
    """Second-moment matrix in xpxp ordering ``(x_1, p_1, ..., x_N, p_N)``.

    Only the shape is checked on construction; use :func:`validate` for the
    physical conditions.
    """

    n_modes: int
    matrix: np.ndarray

    @classmethod
    def from_matrix(cls, matrix) -> "CovarianceMatrix":
        m = _frozen(matrix)
        return cls(_n_modes_of(m), m)

    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    def __eq__(self, other):
        if not isinstance(other, CovarianceMatrix):
            return NotImplemented
        return self.n_modes == other.n_modes and np.array_equal(self.matrix, other.matrix)

    __hash__ = None


def _as_cm(cm) -> CovarianceMatrix:
    if isinstance(cm, CovarianceMatrix):
        return cm
    return CovarianceMatrix.from_matrix(cm)


class Validity(NamedTuple):
    symmetric: bool
    bona_fide: bool
    pure: bool


def _symmetrized(cm: CovarianceMatrix) -> np.ndarray:
    return 0.5 * (cm.matrix + cm.matrix.T)


def _is_bona_fide(cm: CovarianceMatrix) -> bool:
    herm = _symmetrized(cm) + 1j * omega(cm.n_modes)
    return bool(np.linalg.eigvalsh(herm).min() >= -TOL_BONA_FIDE)


def _cholesky(sym: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.cholesky(sym)
    except np.linalg.LinAlgError:
        raise DomainError("covariance matrix is not positive definite") from None


def _spectrum_unchecked(sym: np.ndarray, n_modes: int) -> np.ndarray:
    # with sigma = L L^T, i L^T Omega L is Hermitian and similar to
    # i Omega sigma, whose spectrum is {+nu_k, -nu_k}
    chol = _cholesky(sym)
    nu = np.linalg.eigvalsh(1j * (chol.T @ omega(n_modes) @ chol))[n_modes:]
    return nu[::-1].copy()


def validate(cm) -> Validity:
    """Check symmetry, the uncertainty relation ``sigma + i Omega >= 0`` and purity."""
    cm = _as_cm(cm)
    symmetric = bool(np.max(np.abs(cm.matrix - cm.matrix.T)) <= TOL_SYMMETRIC)
    bona_fide = _is_bona_fide(cm)
    pure = False
    if bona_fide:
        try:
            nu = _spectrum_unchecked(_symmetrized(cm), cm.n_modes)
        except DomainError:
            nu = None
        if nu is not None:
            pure = bool(
                np.all(np.abs(nu - 1.0) <= TOL_PURE) and abs(cm.det() - 1.0) <= TOL_PURE
            )
    return Validity(symmetric, bona_fide, pure and symmetric)


def require_pure(cm) -> CovarianceMatrix:
    cm = _as_cm(cm)
    if not validate(cm).pure:
        raise PurityError("state is not a pure Gaussian state")
    return cm


def symplectic_spectrum(cm) -> np.ndarray:
    """Symplectic eigenvalues, sorted descending."""
    cm = _as_cm(cm)
    if not _is_bona_fide(cm):
        raise DomainError("covariance matrix violates the uncertainty relation")
    return _spectrum_unchecked(_symmetrized(cm), cm.n_modes)


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """``w @ sigma @ w.T == diag(nu_1, nu_1, ..., nu_N, nu_N)``."""

    w: SymplecticMatrix
    spectrum: np.ndarray

    def diagonal(self) -> np.ndarray:
        return np.diag(np.repeat(self.spectrum, 2))


def _is_williamson_diagonal(m: np.ndarray) -> bool:
    d = np.diag(m)
    return (
        np.array_equal(m, np.diag(d))
        and np.array_equal(d[0::2], d[1::2])
        and bool(np.all(np.diff(d[0::2]) <= 0))
    )


def williamson(cm) -> WilliamsonDecomposition:
    """Symplectic diagonalisation of a positive-definite covariance matrix.

    With the Cholesky factor ``sigma = L L^T``, the antisymmetric
    ``M = L^{-1} Omega L^{-T}`` is brought to real Schur form
    ``O^T M O = ⊕ [[0, 1/nu], [-1/nu, 0]]`` and ``W = diag(nu)^{1/2} O^T L^{-1}``.
    Modes come out sorted by descending ``nu``; an input already in that
    diagonal form returns ``W = identity``.
    """
    cm = _as_cm(cm)
    n = cm.n_modes
    sym = _symmetrized(cm)
    if not np.all(np.isfinite(sym)):
        raise DecompositionError("covariance matrix has non-finite entries")
    try:
        chol = _cholesky(sym)
    except DomainError:
        raise DecompositionError("williamson needs a positive-definite matrix") from None
    if not _is_bona_fide(cm):
        raise DecompositionError("covariance matrix violates the uncertainty relation")

    if _is_williamson_diagonal(cm.matrix):
        return WilliamsonDecomposition(
            SymplecticMatrix.identity(n), _frozen(np.diag(cm.matrix)[0::2])
        )

    inv_chol = solve_triangular(chol, np.eye(2 * n), lower=True)
    m = inv_chol @ omega(n) @ inv_chol.T
    m = 0.5 * (m - m.T)
    t, o = schur(m, output="real")

    cols = []
    inv_nu = []
    for k in range(n):
        i = 2 * k
        b = t[i, i + 1]
        u, v = o[:, i], o[:, i + 1]
        if b < 0:
            u, v, b = v, u, -b
        cols.append((u, v))
        inv_nu.append(b)
    nu = 1.0 / np.array(inv_nu)
    # stable sort so ties keep Schur order
    order = np.argsort(-nu, kind="stable")
    nu = nu[order]
    o_sorted = np.column_stack([c for k in order for c in cols[k]])

    w = np.sqrt(np.repeat(nu, 2))[:, None] * (o_sorted.T @ inv_chol)
    return WilliamsonDecomposition(SymplecticMatrix(n, _frozen(w)), _frozen(nu))


def _mode_indices(modes: Iterable[int], n_modes: int) -> list[int]:
    modes = list(modes)
    if not modes:
        raise InvalidIndexError("mode subset must be nonempty")
    for k in modes:
        if int(k) != k or not 1 <= k <= n_modes:
            raise InvalidIndexError(f"mode {k!r} outside 1..{n_modes}")
    if len(set(modes)) != len(modes):
        raise InvalidIndexError("mode subset contains duplicates")
    return [int(k) for k in modes]


def reduce(cm, modes: Sequence[int]) -> CovarianceMatrix:
    """Reduced state on ``modes`` (1-based), in the order given."""
    cm = _as_cm(cm)
    idx = []
    for k in _mode_indices(modes, cm.n_modes):
        idx += [2 * k - 2, 2 * k - 1]
    return CovarianceMatrix.from_matrix(cm.matrix[np.ix_(idx, idx)])


def apply_symplectic(cm, s) -> CovarianceMatrix:
    """Return ``S sigma S^T``."""
    cm = _as_cm(cm)
    mat = s.matrix if isinstance(s, SymplecticMatrix) else np.asarray(s, dtype=float)
    if mat.shape != cm.matrix.shape:
        raise InvalidDimensionError(
            f"symplectic of shape {mat.shape} cannot act on {cm.matrix.shape} state"
        )
    out = mat @ cm.matrix @ mat.T
    return CovarianceMatrix.from_matrix(0.5 * (out + out.T))


@dataclass(frozen=True)
class SchmidtForm:
    local_w: SymplecticMatrix
    schmidt_cm: CovarianceMatrix
    a: float


def schmidt_state_matrix(a: float, n_modes: int) -> np.ndarray:
    c = math.sqrt(max(a * a - 1.0, 0.0))
    m = np.eye(2 * n_modes)
    m[:4, :4] = [
        [a, 0.0, c, 0.0],
        [0.0, a, 0.0, -c],
        [c, 0.0, a, 0.0],
        [0.0, -c, 0.0, a],
    ]
    return m


def schmidt_form(cm) -> SchmidtForm:
    """Phase-space Schmidt form of a pure state across the mode-1 | rest cut.

    ``local_w = W_1 ⊕ W_rest`` is built from the Williamson decompositions of
    the two reductions. A final rotation on mode 2 fixes the correlation
    block to ``sqrt(a^2 - 1) * diag(1, -1)``.
    """
    cm = require_pure(cm)
    n = cm.n_modes
    if n < 2:
        raise InvalidDimensionError("schmidt_form needs at least two modes")
    w1 = williamson(reduce(cm, [1])).w
    w_rest = williamson(reduce(cm, range(2, n + 1))).w
    local = direct_sum(w1, w_rest)
    m = local.matrix @ cm.matrix @ local.matrix.T

    a = math.sqrt(reduce(cm, [1]).det())
    corr = m[0:2, 2:4]
    if np.max(np.abs(corr)) > 1e-12:
        q, _ = polar(corr)
        fix = np.diag([1.0, -1.0]) @ q
        if np.linalg.det(fix) > 0:
            r2 = np.eye(2 * n)
            r2[2:4, 2:4] = fix
            local = SymplecticMatrix(n, _frozen(r2)) @ local
            m = local.matrix @ cm.matrix @ local.matrix.T
    return SchmidtForm(local, CovarianceMatrix.from_matrix(0.5 * (m + m.T)), a)


def make_schmidt_state(a: float, n_modes: int) -> CovarianceMatrix:
    """Two-mode squeezed block with parameter ``a`` on modes 1, 2 and vacua elsewhere."""
    if not a >= 1:
        raise InvalidParameterError(f"a must be >= 1, got {a!r}")
    if int(n_modes) != n_modes or n_modes < 2:
        raise InvalidParameterError(f"n_modes must be an integer >= 2, got {n_modes!r}")
    return CovarianceMatrix.from_matrix(schmidt_state_matrix(float(a), int(n_modes)))


def make_two_mode_squeezed(r: float) -> CovarianceMatrix:
    """Two-mode squeezed vacuum with ``a = cosh(2r)``."""
    if not r >= 0:
        raise InvalidParameterError(f"squeezing r must be >= 0, got {r!r}")
    a = math.cosh(2 * r)
    c = math.sinh(2 * r)
    m = schmidt_state_matrix(a, 2)
    # sinh is exact where sqrt(cosh^2 - 1) cancels
    m[0, 2] = m[2, 0] = c
    m[1, 3] = m[3, 1] = -c
    return CovarianceMatrix.from_matrix(m)


def make_bisymmetric_three_mode(n_bar: float) -> CovarianceMatrix:
    """Pure three-mode state symmetric under exchange of modes 2 and 3.

    ``a = 4 n_bar + 1`` is the local mixedness of mode 1.
    """
    if not n_bar >= 0:
        raise InvalidParameterError(f"n_bar must be >= 0, got {n_bar!r}")
    a = 4.0 * n_bar + 1.0
    e = math.sqrt(a * a - 1.0) / math.sqrt(2.0)
    eye = np.eye(2)
    s1 = a * eye
    s23 = 0.5 * (a + 1.0) * eye
    e23 = 0.5 * (a - 1.0) * eye
    e1 = np.diag([e, -e])
    m = np.block([[s1, e1, e1], [e1.T, s23, e23], [e1.T, e23.T, s23]])
    return CovarianceMatrix.from_matrix(m)


def make_vacuum(n_modes: int) -> CovarianceMatrix:
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidParameterError(f"n_modes must be a positive integer, got {n_modes!r}")
    return CovarianceMatrix.from_matrix(np.eye(2 * int(n_modes)))


def _beam_splitter(angle: float, j: int, k: int, n_modes: int) -> np.ndarray:
    # passive real mixing of modes j, k: x and p rotate together
    c, s = math.cos(angle), math.sin(angle)
    m = np.eye(2 * n_modes)
    for q in (0, 1):
        a, b = 2 * j + q, 2 * k + q
        m[a, a], m[a, b], m[b, a], m[b, b] = c, s, -s, c
    return m


def random_symplectic(n_modes: int, rng: np.random.Generator, n_ops: int | None = None,
                      max_squeezing: float = 1.0) -> SymplecticMatrix:
    """Random composition of rotations, squeezers and beam splitters.

    Each layer draws one op type; squeezing log-magnitudes are uniform in
    ``[-max_squeezing, max_squeezing]``.
    """
    if n_ops is None:
        n_ops = 6 * n_modes
    s = np.eye(2 * n_modes)
    for _ in range(n_ops):
        kind = rng.integers(3) if n_modes > 1 else rng.integers(2)
        g = np.eye(2 * n_modes)
        if kind == 0:
            k = rng.integers(n_modes)
            g[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = rotation(rng.uniform(0, 2 * math.pi))
        elif kind == 1:
            k = rng.integers(n_modes)
            xi = math.exp(rng.uniform(-max_squeezing, max_squeezing))
            g[2 * k, 2 * k], g[2 * k + 1, 2 * k + 1] = xi, 1.0 / xi
        else:
            j, k = rng.choice(n_modes, size=2, replace=False)
            g = _beam_splitter(rng.uniform(0, 2 * math.pi), int(j), int(k), n_modes)
        s = g @ s
    return SymplecticMatrix(n_modes, _frozen(s))


def random_local_symplectic(n_modes: int, rng: np.random.Generator) -> SymplecticMatrix:
    """Random ``W_1 ⊕ W_rest`` acting separately on mode 1 and modes 2..N."""
    w1 = random_symplectic(1, rng)
    if n_modes == 1:
        return w1
    return direct_sum(w1, random_symplectic(n_modes - 1, rng))


def make_random_pure(n_modes: int, seed: int, n_ops: int | None = None) -> CovarianceMatrix:
    """``S S^T`` for a seeded random symplectic ``S``; pure by construction."""
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidParameterError(f"n_modes must be a positive integer, got {n_modes!r}")
    rng = np.random.default_rng(seed)
    s = random_symplectic(int(n_modes), rng, n_ops).matrix
    m = s @ s.T
    return CovarianceMatrix.from_matrix(0.5 * (m + m.T))
