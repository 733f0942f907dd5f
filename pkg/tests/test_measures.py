import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from puregauss.errors import InvalidParameterError, PurityError
from puregauss.geometry import closed_form_distance
from puregauss.measures import (
    MeasureReport,
    gaussian_tangle,
    linear_entropy,
    measure_report,
    von_neumann_entropy,
)
from puregauss.states import (
    apply_symplectic,
    make_bisymmetric_three_mode,
    make_random_pure,
    make_schmidt_state,
    make_two_mode_squeezed,
    make_vacuum,
    random_local_symplectic,
)

A_GRID = [1 + k / 10 for k in range(41)]
MEASURES = [closed_form_distance, linear_entropy, gaussian_tangle, von_neumann_entropy]


def test_linear_entropy():
    assert linear_entropy(1) == 0
    assert linear_entropy(2) == 0.5
    assert 1 - linear_entropy(1e6) == pytest.approx(1e-6, rel=1e-9)


def test_gaussian_tangle():
    assert gaussian_tangle(1) == 0
    assert gaussian_tangle(2) == pytest.approx((3 + 2 * math.sqrt(3)) / 2)
    assert gaussian_tangle(2) == pytest.approx(3.2320508075688772)
    assert gaussian_tangle(math.sqrt(2)) == pytest.approx((1 + math.sqrt(2)) / 2)


def test_von_neumann_entropy():
    assert von_neumann_entropy(1) == 0
    assert von_neumann_entropy(3) == pytest.approx(2.0, abs=1e-15)
    assert von_neumann_entropy(2) < von_neumann_entropy(3)
    # base change only rescales
    assert von_neumann_entropy(3, base=math.e) == pytest.approx(2 * math.log(2))


@pytest.mark.parametrize("f", [linear_entropy, gaussian_tangle, von_neumann_entropy])
def test_measures_reject_small_a(f):
    with pytest.raises(InvalidParameterError):
        f(0.99)


def test_distance_above_linear_entropy():
    assert closed_form_distance(1) == linear_entropy(1)
    for a in A_GRID[1:] + [10.0, 1e3]:
        gap = closed_form_distance(a) - linear_entropy(a)
        assert gap > 0
        assert gap == pytest.approx((a - 1) ** 2 / (a * (a * a + 1)), rel=1e-9)


@settings(max_examples=200, deadline=None)
@given(st.floats(1, 100), st.floats(1e-3, 10))
def test_measures_increase_with_a(a, da):
    for f in MEASURES:
        assert f(a + da) > f(a)


@settings(max_examples=200, deadline=None)
@given(st.floats(1, 1e8), st.floats(0, 1e3))
def test_measures_never_decrease(a, da):
    # near saturation the increments fall below double resolution
    for f in MEASURES:
        assert f(a + da) >= f(a)


def test_rank_order_identity_on_grid():
    table = np.array([[f(a) for a in A_GRID] for f in MEASURES])
    assert np.all(table[:, 0] == 0)
    assert np.all(np.diff(table, axis=1) > 0)
    ranks = np.argsort(table, axis=1, kind="stable")
    assert np.all(ranks == ranks[0])


def test_report_vacuum():
    r = measure_report(make_vacuum(3), 2)
    assert (r.a, r.d, r.e_linear, r.tau_gaussian, r.e_von_neumann) == (1, 0, 0, 0, 0)


def test_report_schmidt():
    r = measure_report(make_schmidt_state(2, 2))
    assert r.a == 2
    assert r.d == pytest.approx(0.6, abs=1e-12)
    assert r.e_linear == 0.5
    assert r.tau_gaussian == pytest.approx((3 + 2 * math.sqrt(3)) / 2)
    assert r.e_von_neumann == pytest.approx(1.5 * math.log2(1.5) + 0.5)
    np.testing.assert_allclose(r.argmin, (0, 1), atol=1e-6)


def test_report_bisymmetric():
    r = measure_report(make_bisymmetric_three_mode(0.5))
    assert r.a == pytest.approx(3)
    assert r.d == pytest.approx(0.8, abs=1e-6)
    assert r.e_linear == pytest.approx(2 / 3)
    assert r.e_von_neumann == pytest.approx(2)


def test_report_rejects_mixed():
    with pytest.raises(PurityError):
        measure_report(np.diag([3.0, 3.0, 1.0, 1.0]))


def test_report_invariants_enforced():
    with pytest.raises(InvalidParameterError):
        MeasureReport(2.0, 0.4, 0.5, 3.2, 1.4, (0, 1), 0.2)


def test_report_matches_closed_form_on_factories():
    states = [make_two_mode_squeezed(0.8), make_schmidt_state(3.5, 4),
              make_bisymmetric_three_mode(1.3)] + [make_random_pure(3, s) for s in range(4)]
    for s in states:
        r = measure_report(s)
        assert r.d == pytest.approx(closed_form_distance(r.a), abs=1e-6)
        assert r.d >= r.e_linear


def test_report_is_locally_invariant(rng):
    s = make_random_pure(3, 21)
    base = measure_report(s)
    for _ in range(3):
        moved = measure_report(apply_symplectic(s, random_local_symplectic(3, rng)))
        for field in ("a", "d", "e_linear", "tau_gaussian", "e_von_neumann"):
            assert getattr(moved, field) == pytest.approx(getattr(base, field), abs=1e-8)
