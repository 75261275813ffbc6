"""One-cell upwind updates: closed forms, invariants, and batch parity.

The frozen literals are exact solutions of the positive-part equation
sum_axes [(phi - phi_min)^+ / h]^2 = 1/f^2 worked out by hand; the
hypothesis properties assert what every update must satisfy regardless of
branch: the result exceeds the smallest used neighbor, never beats the
one-sided bound, back-substitutes to a ~0 residual, and is monotone and
symmetric in its inputs.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eikonal._kernels import update_batch
from eikonal.local_solver import (
    INF,
    residual_2d,
    residual_3d,
    update_2d_aniso,
    update_2d_uniform,
    update_3d_uniform,
)

finite_vals = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False)
maybe_inf_vals = st.one_of(finite_vals, st.just(INF))
speeds = st.floats(min_value=0.05, max_value=20.0, allow_nan=False)
spacings = st.floats(min_value=0.01, max_value=10.0, allow_nan=False)


def rel_close(a: float, b: float, tol: float = 1e-14) -> bool:
    return abs(a - b) <= tol * max(abs(a), abs(b), 1.0)


def residual_scale(v: float, neighbors, spacings, f: float) -> float:
    """Backward-error scale of the positive-part equation at v.

    Each used term (v - w)/h is a difference of magnitude (|v| + |w|)/h, so
    rounding can move the squared term by about px * (|v| + |w|)/h * eps;
    a residual is only meaningful relative to that conditioning.
    """
    scale = 1.0 / (f * f)
    for w, h in zip(neighbors, spacings):
        if w == INF:
            continue
        px = max(v - w, 0.0) / h
        scale += px * px + px * (abs(v) + abs(w)) / h
    return scale


# --- closed forms -----------------------------------------------------------

def test_two_sided_square_closed_form():
    assert rel_close(update_2d_uniform(0.0, 0.0, 1.0, 1.0), 1.0 / math.sqrt(2.0))


def test_two_sided_rectangular_closed_form():
    # (t/1)^2 + (t/2)^2 = 1  ->  t = 2/sqrt(5)
    assert rel_close(update_2d_aniso(0.0, 0.0, 1.0, 1.0, 2.0), 2.0 / math.sqrt(5.0))


def test_three_sided_cubic_closed_form():
    assert rel_close(update_3d_uniform(0.0, 0.0, 0.0, 1.0, 1.0), 1.0 / math.sqrt(3.0))


def test_hand_worked_values():
    # (t-1)^2 + (t-2)^2 = 1 -> t = 2 (root 2 >= both neighbors)
    assert rel_close(update_2d_uniform(1.0, 2.0, 1.0, 1.0), 2.0)
    # spread 1 exceeds s = sqrt(2)/2 at f=2: one-sided through the smaller
    assert rel_close(update_2d_aniso(2.0, 1.0, 2.0, 1.0, 1.0), 1.5)
    # third neighbor at 1 is not reached by the two-axis root 1/sqrt(2)
    assert rel_close(update_3d_uniform(0.0, 0.0, 1.0, 1.0, 1.0), 1.0 / math.sqrt(2.0))


def test_one_sided_when_other_axis_unreachable():
    assert update_2d_uniform(0.0, INF, 2.0, 1.0) == 0.5
    assert update_2d_uniform(0.0, 10.0, 1.0, 1.0) == 1.0
    assert update_2d_aniso(INF, 3.0, 1.0, 1.0, 2.0) == 5.0
    assert update_3d_uniform(4.0, INF, INF, 1.0, 1.0) == 5.0


def test_all_infinite_neighbors_stay_infinite():
    assert update_2d_uniform(INF, INF, 1.0, 1.0) == INF
    assert update_2d_aniso(INF, INF, 1.0, 1.0, 2.0) == INF
    assert update_3d_uniform(INF, INF, INF, 1.0, 1.0) == INF


def test_rejects_nonpositive_speed_and_spacing():
    for bad_call in (
        lambda: update_2d_uniform(0.0, 0.0, 0.0, 1.0),
        lambda: update_2d_uniform(0.0, 0.0, 1.0, 0.0),
        lambda: update_2d_aniso(0.0, 0.0, -1.0, 1.0, 1.0),
        lambda: update_2d_aniso(0.0, 0.0, 1.0, 1.0, -1.0),
        lambda: update_3d_uniform(0.0, 0.0, 0.0, 0.0, 1.0),
        lambda: update_3d_uniform(0.0, 0.0, 0.0, 1.0, -1.0),
    ):
        with pytest.raises(ValueError):
            bad_call()


# --- properties -------------------------------------------------------------

@given(a=finite_vals, b=maybe_inf_vals, f=speeds, d=spacings)
def test_square_update_exceeds_smallest_neighbor(a, b, f, d):
    v = update_2d_uniform(a, b, f, d)
    assert v > min(a, b)
    assert v <= min(a, b) + d / f + 1e-9 * (abs(min(a, b)) + d / f)


@given(a=finite_vals, b=maybe_inf_vals, f=speeds, d=spacings)
def test_square_update_is_symmetric(a, b, f, d):
    assert update_2d_uniform(a, b, f, d) == update_2d_uniform(b, a, f, d)


@given(a=finite_vals, b=maybe_inf_vals, f=speeds, d=spacings)
def test_square_update_back_substitutes(a, b, f, d):
    v = update_2d_uniform(a, b, f, d)
    res = residual_2d(v, a, b, f, d, d)
    assert abs(res) <= 1e-12 * residual_scale(v, (a, b), (d, d), f)


@given(a=finite_vals, b=finite_vals, bump=st.floats(min_value=0.0, max_value=50.0),
       f=speeds, d=spacings)
def test_square_update_is_monotone_in_neighbors(a, b, bump, f, d):
    assert update_2d_uniform(a + bump, b, f, d) >= update_2d_uniform(a, b, f, d)


@given(a=finite_vals, b=maybe_inf_vals, f=speeds, dx=spacings, dy=spacings)
def test_rect_update_back_substitutes(a, b, f, dx, dy):
    v = update_2d_aniso(a, b, f, dx, dy)
    res = residual_2d(v, a, b, f, dx, dy)
    assert abs(res) <= 1e-12 * residual_scale(v, (a, b), (dx, dy), f)


@given(a=finite_vals, b=maybe_inf_vals, f=speeds, dx=spacings, dy=spacings)
def test_rect_update_axis_swap_is_exact(a, b, f, dx, dy):
    assert update_2d_aniso(a, b, f, dx, dy) == update_2d_aniso(b, a, f, dy, dx)


@given(a=finite_vals, b=maybe_inf_vals, f=speeds, d=spacings)
def test_rect_update_matches_square_when_spacings_equal(a, b, f, d):
    va = update_2d_aniso(a, b, f, d, d)
    vu = update_2d_uniform(a, b, f, d)
    assert rel_close(va, vu, 1e-12) or va == vu == INF


@given(a=finite_vals, b=maybe_inf_vals, c=maybe_inf_vals, f=speeds, d=spacings)
def test_cubic_update_back_substitutes(a, b, c, f, d):
    v = update_3d_uniform(a, b, c, f, d)
    res = residual_3d(v, a, b, c, f, d)
    assert abs(res) <= 1e-12 * residual_scale(v, (a, b, c), (d, d, d), f)


@given(a=finite_vals, b=maybe_inf_vals, c=maybe_inf_vals, f=speeds, d=spacings)
def test_cubic_update_is_permutation_invariant(a, b, c, f, d):
    v = update_3d_uniform(a, b, c, f, d)
    assert update_3d_uniform(c, a, b, f, d) == v
    assert update_3d_uniform(b, c, a, f, d) == v


@given(a=finite_vals, b=maybe_inf_vals, f=speeds, d=spacings)
def test_cubic_update_reduces_to_square_with_unreachable_axis(a, b, f, d):
    assert update_3d_uniform(a, b, INF, f, d) == update_2d_uniform(a, b, f, d)


# --- batch kernel parity ----------------------------------------------------

@settings(max_examples=25)
@given(seed=st.integers(min_value=0, max_value=2**31 - 1),
       dx=spacings, dy=spacings, square=st.booleans())
def test_batch_kernel_matches_scalar_bitwise(seed, dx, dy, square):
    if square:
        dy = dx
    rng = np.random.default_rng(seed)
    n = 97
    xmin = rng.uniform(-100, 100, n)
    ymin = rng.uniform(-100, 100, n)
    xmin[rng.random(n) < 0.15] = INF
    ymin[rng.random(n) < 0.15] = INF
    f = rng.uniform(0.05, 20.0, n)
    batch = update_batch(xmin, ymin, f, dx, dy)
    if dx == dy:
        scalar = [update_2d_uniform(x, y, fi, dx) for x, y, fi in zip(xmin, ymin, f)]
    else:
        scalar = [update_2d_aniso(x, y, fi, dx, dy) for x, y, fi in zip(xmin, ymin, f)]
    assert np.array_equal(batch, np.asarray(scalar))
