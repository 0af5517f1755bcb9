import numpy as np
import pytest

from cornercut import (
    BoundaryPolicy,
    GridSpec,
    LevelSequence,
    forward_difference,
    grid_point,
    second_difference,
)


def test_grid_point_definition():
    assert grid_point(GridSpec(0, 0), 0) == -0.5
    assert grid_point(GridSpec(1, 0), 1) == 0.25
    assert grid_point(GridSpec(3, 2), 5) == 2.0 ** -5 * 4.5 == 0.140625


def test_grid_point_array():
    g = GridSpec(2, 1)
    j = np.array([-1, 0, 3])
    np.testing.assert_array_equal(grid_point(g, j), (j - 0.5) / 8.0)


def test_sequence_validation():
    with pytest.raises(ValueError):
        LevelSequence([])
    with pytest.raises(ValueError):
        LevelSequence([[1.0, 2.0]])


def test_sequence_is_immutable():
    f = LevelSequence([1.0, 2.0, 3.0])
    assert not f.values.flags.writeable
    assert f.last_index == 2
    assert len(f) == 3


def test_periodic_lookup_is_total():
    f = LevelSequence([1.0, 2.0, 3.0], first_index=-1, boundary=BoundaryPolicy.PERIODIC)
    for j in range(-50, 50):
        assert f.value_at(j) == f.value_at((j + 1) % 3 - 1)


def test_replicate_lookup_clamps_to_ends():
    f = LevelSequence([5.0, 6.0, 7.0], first_index=2)
    assert f.value_at(-10) == 5.0
    assert f.value_at(99) == 7.0
    assert f.value_at(3) == 6.0


def test_second_difference_of_quadratic_is_two():
    idx = np.arange(-5, 6)
    f = LevelSequence(idx.astype(float) ** 2, first_index=-5)
    d = second_difference(f)
    # interior entries are exact; the replicated ends see a one-sided stencil
    np.testing.assert_array_equal(d.values[1:-1], 2.0)
    assert d.first_index == f.first_index and d.level == f.level


def test_second_difference_annihilates_constants():
    f = LevelSequence(np.full(7, 3.25))
    np.testing.assert_array_equal(second_difference(f).values, 0.0)


def test_second_difference_annihilates_affine_bit_level():
    idx = np.arange(-6, 7)
    f = LevelSequence(3.0 * idx + 1.0, first_index=-6)
    d = second_difference(f)
    assert np.all(d.values[1:-1] == 0.0)


def test_second_difference_periodic_delta_level1():
    vals = np.zeros(8)
    vals[0] = 1.0
    f = LevelSequence(vals, level=1, boundary=BoundaryPolicy.PERIODIC)
    d = second_difference(f)
    expected = 4.0 * np.array([-2.0, 1.0, 0, 0, 0, 0, 0, 1.0])
    np.testing.assert_array_equal(d.values, expected)


def test_second_difference_insufficient_support():
    with pytest.raises(ValueError, match="insufficient support"):
        second_difference(LevelSequence([1.0, 2.0]))


def test_forward_difference_examples():
    f = LevelSequence([0.0, 1.0, 4.0, 9.0])
    g = forward_difference(f)
    np.testing.assert_array_equal(g.values, [1.0, 3.0, 5.0])
    assert g.first_index == f.first_index + 1

    lin = LevelSequence(np.arange(6, dtype=float) - 0.5)
    np.testing.assert_array_equal(forward_difference(lin).values, 1.0)
    const = LevelSequence(np.full(5, 2.5))
    np.testing.assert_array_equal(forward_difference(const).values, 0.0)


def test_forward_difference_scaling_uses_level():
    f = LevelSequence([0.0, 1.0, 4.0], level=3)
    np.testing.assert_array_equal(forward_difference(f).values, [8.0, 24.0])


def test_forward_difference_periodic_wraps():
    f = LevelSequence([1.0, 2.0, 4.0], boundary=BoundaryPolicy.PERIODIC)
    g = forward_difference(f)
    np.testing.assert_array_equal(g.values, [-3.0, 1.0, 2.0])
    assert len(g) == len(f)


def test_forward_difference_insufficient_support():
    with pytest.raises(ValueError, match="insufficient support"):
        forward_difference(LevelSequence([1.0]))


@pytest.mark.parametrize("op", [second_difference, forward_difference])
@pytest.mark.parametrize("boundary", [BoundaryPolicy.PERIODIC, BoundaryPolicy.REPLICATE_END])
def test_difference_operators_are_linear(op, boundary):
    rng = np.random.default_rng(7)
    for _ in range(25):
        n = rng.integers(4, 20)
        lvl = int(rng.integers(0, 5))
        a, b = rng.normal(size=2)
        f = rng.normal(size=n)
        g = rng.normal(size=n)
        mk = lambda v: LevelSequence(v, first_index=-2, level=lvl, boundary=boundary)
        lhs = op(mk(a * f + b * g)).values
        rhs = a * op(mk(f)).values + b * op(mk(g)).values
        np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12)
