import random

import pytest

from amalgamkit.actions import Perm
from amalgamkit.errors import BoundExceeded, EnablerFails, ZeroVector
from amalgamkit.fields import CYCLOTOMIC_7, GF2, GF8
from amalgamkit.formula import LiftSpec, lift_formula, probable_order
from amalgamkit.linalg import DenseMatrix, element_order


def affine(f):
    return Perm(tuple(f(x) for x in range(8)))


MULT = affine(lambda x: GF8.mul(GF8.generator, x))
TRANSLATIONS = [affine(lambda x, c=c: x ^ c) for c in range(8)]


def to_c7(p: Perm) -> Perm:
    """Image in the quotient of 2^3:7 by its translations: the linear part."""
    shift = p(0)
    return affine(lambda x: p(x) ^ shift)


class TestLiftSpec:
    def test_identity_rejected(self):
        with pytest.raises(ValueError):
            LiftSpec(Perm.identity(3), Perm.identity(3))

    def test_even_order_rejected(self):
        with pytest.raises(ValueError):
            LiftSpec(Perm.from_cycles(4, [(0, 1)]), Perm.identity(4))


class TestLiftFormula:
    def test_commuting_case_collapses(self):
        i = Perm.from_cycles(9, [tuple(range(7))])
        x = Perm.from_cycles(9, [(7, 8)])
        assert lift_formula(LiftSpec(i, x)) == x

    @pytest.mark.parametrize("c", range(8))
    def test_affine_translation_lifts_to_identity(self, c):
        lifted = lift_formula(LiftSpec(MULT, TRANSLATIONS[c]))
        assert lifted.is_identity()

    def test_affine_general_element(self):
        for c in range(8):
            for e in range(7):
                x = TRANSLATIONS[c] * MULT ** e
                lifted = lift_formula(LiftSpec(MULT, x))
                assert lifted * MULT == MULT * lifted
                # x' x^-1 maps to the identity in the quotient by translations
                assert to_c7(lifted * x.inverse()).is_identity()

    def test_enabler_failure_in_s7(self):
        rng = random.Random(17)
        i = Perm.from_cycles(7, [tuple(range(7))])
        for _ in range(200):
            x = Perm(tuple(rng.sample(range(7), 7)))
            ix = x.inverse() * i * x
            y = (i * ix) ** 3
            if y.inverse() * ix * y != i:
                with pytest.raises(EnablerFails):
                    lift_formula(LiftSpec(i, x))
                return
        pytest.fail("no enabler failure found")

    def test_result_always_centralizes(self):
        rng = random.Random(19)
        i = Perm.from_cycles(7, [tuple(range(7))])
        returned = 0
        for _ in range(500):
            x = Perm(tuple(rng.sample(range(7), 7)))
            try:
                lifted = lift_formula(LiftSpec(i, x))
            except EnablerFails:
                continue
            returned += 1
            assert lifted * i == i * lifted
        assert returned > 0

    def test_normalizing_power(self):
        # the Frobenius map x -> x^2 conjugates multiplication by g to multiplication by g^2
        frob = affine(lambda x: GF8.mul(x, x))
        lifted = lift_formula(LiftSpec(MULT, frob, k=2))
        assert lifted.inverse() * MULT * lifted == MULT ** 2


class TestProbableOrder:
    C7 = DenseMatrix.companion(CYCLOTOMIC_7)

    def test_identity(self):
        assert probable_order(DenseMatrix.identity(GF2, 4), 0b0101) == 1

    def test_companion(self):
        assert probable_order(self.C7, 1) == 7

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            probable_order(self.C7, 0)

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            probable_order(self.C7, 1, bound=3)

    def test_order_22_element(self, co1):
        e = co1.env["e"]
        assert element_order(e) == 22
        rng = random.Random(23)
        results = [probable_order(e, rng.randrange(1, 1 << 24)) for _ in range(100)]
        assert all(22 % r == 0 for r in results)
        assert max(results) == 22
