import itertools

import numpy as np
import pytest

from amalgamkit.actions import Perm, involutions_of_type
from amalgamkit.doublecover import (
    DoubleCover,
    ModPMatrix,
    choose_type_for_involution_class,
    clifford_generators,
)

P = 17


@pytest.mark.parametrize("count", [3, 5, 7, 8])
def test_clifford_generators_anticommute(count):
    g = clifford_generators(count)
    n = g[0].shape[0]
    eye = np.eye(n, dtype=np.int64)
    for a, b in itertools.combinations(g, 2):
        assert np.array_equal((a @ b + b @ a) % P, 0 * eye)
    for a in g:
        assert np.array_equal((a @ a) % P, eye)


def test_modp_inverse_and_power():
    m = ModPMatrix(np.array([[1, 2], [3, 4]], dtype=np.int64))
    assert (m * m.inverse()).is_identity()
    assert m ** -2 == (m * m).inverse()


@pytest.mark.parametrize("t", [2, 4])
def test_transposition_orders(t):
    cover = DoubleCover(4, t)
    assert all(x.order() == t for x in cover.transpositions)


def test_bad_type():
    with pytest.raises(ValueError):
        DoubleCover(4, 3)


@pytest.mark.parametrize("t", [2, 4])
def test_small_cover_is_a_double_cover(t):
    cover = DoubleCover(4, t)
    table = cover.elements()
    assert len(table) == 48
    assert set(table.values()) == {Perm(p) for p in itertools.permutations(range(4))}
    # the kernel of the projection is the centre {1, -1}
    kernel = [m for m, p in table.items() if p.is_identity()]
    assert set(kernel) == {ModPMatrix.identity(cover.dim), cover.central}


def test_lift_projects_correctly():
    cover = DoubleCover(5, 2)
    table = cover.elements()
    for p in (Perm.from_cycles(5, [(0, 3)]), Perm.from_cycles(5, [(0, 1, 2, 3, 4)]),
              Perm.from_cycles(5, [(1, 4), (0, 2, 3)])):
        assert table[cover.lift(p)] == p


def test_type_for_2221_class():
    cover = choose_type_for_involution_class(7, (2, 2, 2, 1))
    assert cover.transposition_order == 4
    inv = involutions_of_type(7, (2, 2, 2, 1))
    lifts = cover.preimages(list(inv))
    assert len(lifts) == 210
    assert all(m.order() == 2 for m in lifts)
