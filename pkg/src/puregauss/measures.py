"""Closed-form entanglement monotones of pure states as functions of ``a``.

``a = sqrt(det sigma_k)`` is the symplectic eigenvalue of the reduced state of
the singled-out mode; ``a = 1`` exactly when that mode is unentangled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError
from .geometry import local_mixedness, minimize_distance
from .states import require_pure

REPORT_TOL = 1e-9


def _check_a(a: float) -> float:
    if not a >= 1:
        raise InvalidParameterError(f"a must be >= 1, got {a!r}")
    return float(a)


def linear_entropy(a: float) -> float:
    a = _check_a(a)
    return 1.0 - 1.0 / a


def gaussian_tangle(a: float) -> float:
    """Squared negativity ``(a^2 + a sqrt(a^2 - 1) - 1) / 2``."""
    a = _check_a(a)
    return 0.5 * (a * a + a * math.sqrt(a * a - 1.0) - 1.0)


def von_neumann_entropy(a: float, base: float = 2.0) -> float:
    """Entropy of a thermal mode with symplectic eigenvalue ``a``.

    Base 2 by default (ebits). ``0 log 0`` is taken as 0, so ``a = 1`` gives 0.
    """
    a = _check_a(a)
    m = (a - 1.0) / 2.0
    if m == 0.0:
        return 0.0
    # (m+1)log(m+1) - m log m, rearranged to avoid cancellation at large a
    return (math.log1p(m) + m * math.log1p(1.0 / m)) / math.log(base)


@dataclass(frozen=True)
class MeasureReport:
    a: float
    d: float
    e_linear: float
    tau_gaussian: float
    e_von_neumann: float
    argmin: tuple[float, float]
    residual: float
    argmin_branch: int = 1

    def __post_init__(self):
        if not 0.0 <= self.d < 1.0:
            raise InvalidParameterError(f"distance {self.d!r} outside [0, 1)")
        if self.d < self.e_linear - REPORT_TOL:
            raise InvalidParameterError(
                f"distance {self.d!r} below linear entropy {self.e_linear!r}"
            )

    def as_dict(self) -> dict:
        return {
            "a": self.a,
            "D": self.d,
            "E_L": self.e_linear,
            "tau_G": self.tau_gaussian,
            "E_V": self.e_von_neumann,
            "alpha": self.argmin[0],
            "beta": self.argmin[1],
            "branch": self.argmin_branch,
            "residual": self.residual,
        }


def measure_report(sigma, mode_index: int = 1, log_base: float = 2.0,
                   **minimize_kwargs) -> MeasureReport:
    """All monotones for the ``mode_index | rest`` cut of a pure state.

    ``D`` comes from numerical minimization; the rest from closed forms.
    """
    sigma = require_pure(sigma)
    a = local_mixedness(sigma, mode_index)
    result = minimize_distance(sigma, mode_index, **minimize_kwargs)
    return MeasureReport(
        a=a,
        d=result.d_min,
        e_linear=linear_entropy(a),
        tau_gaussian=gaussian_tangle(a),
        e_von_neumann=von_neumann_entropy(a, log_base),
        argmin=(result.argmin_alpha, result.argmin_beta),
        residual=result.residual,
        argmin_branch=result.argmin_branch,
    )
