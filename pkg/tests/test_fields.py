import pytest

from amalgamkit.errors import (
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    PolynomialSyntaxError,
    ReducibleModulus,
    ZeroPolynomial,
)
from amalgamkit.fields import (
    CYCLOTOMIC_7,
    GF2,
    GF8,
    FieldElement,
    Poly2,
    field_make,
    field_of_order,
    format_factorization,
    gf_arith,
    irreducibles_of_degree,
    is_irreducible,
    poly_factor_gf2,
    poly_order,
)


def P(text):
    return Poly2.parse(text)


class TestFieldMake:
    def test_prime_field(self):
        F = field_make(1)
        assert F is GF2
        assert F.order == 2
        assert F.modulus == P("x+1")

    def test_gf8_default_modulus(self):
        assert field_make(3) is GF8
        assert GF8.modulus == P("x^3+x+1")
        assert field_make(3, P("x^3+x+1")) is GF8

    def test_reducible_modulus(self):
        with pytest.raises(ReducibleModulus):
            field_make(3, P("x^3+x^2+x+1"))

    @pytest.mark.parametrize("k", [0, 17])
    def test_degree_out_of_range(self, k):
        with pytest.raises(DegreeMismatch):
            field_make(k)

    def test_modulus_of_wrong_degree(self):
        with pytest.raises(DegreeMismatch):
            field_make(4, P("x^3+x+1"))

    def test_field_of_order(self):
        assert field_of_order(8) is GF8
        with pytest.raises(DegreeMismatch):
            field_of_order(6)

    @pytest.mark.parametrize("k", range(1, 17))
    def test_default_moduli_are_primitive(self, k):
        F = field_make(k)
        if k > 1:
            assert poly_order(F.modulus) == (1 << k) - 1


class TestArithmetic:
    g = FieldElement(0b010, GF8)

    def test_mul_reduces_modulus(self):
        g2 = gf_arith("mul", self.g, self.g, GF8)
        assert gf_arith("mul", self.g, g2, GF8) == FieldElement(0b011, GF8)

    def test_inverse_of_one(self):
        one = FieldElement(1, GF8)
        assert gf_arith("inv", one, None, GF8) == one

    def test_generator_has_order_seven(self):
        assert gf_arith("pow", self.g, 7, GF8) == FieldElement(1, GF8)
        assert self.g.multiplicative_order() == 7

    def test_inverse_of_zero(self):
        with pytest.raises(DivisionByZero):
            gf_arith("inv", FieldElement(0, GF8), None, GF8)

    def test_add_is_xor(self):
        assert gf_arith("add", FieldElement(5, GF8), FieldElement(3, GF8), GF8).bits == 6

    def test_mixed_fields_rejected(self):
        F16 = field_make(4)
        with pytest.raises(FieldMismatch):
            FieldElement(1, GF8) * FieldElement(1, F16)
        with pytest.raises(FieldMismatch):
            gf_arith("add", FieldElement(1, F16), FieldElement(1, F16), GF8)

    def test_unknown_operation(self):
        with pytest.raises(ValueError):
            gf_arith("sub", self.g, self.g, GF8)

    def test_unreduced_element_rejected(self):
        with pytest.raises(ValueError):
            FieldElement(8, GF8)

    def test_negative_power_is_inverse(self):
        for a in range(1, 8):
            e = FieldElement(a, GF8)
            assert e ** -1 == e.inverse()

    def test_packed_scaling_matches_entrywise(self):
        F = field_make(4)
        entries = [3, 0, 15, 7, 1]
        row = F.pack(entries)
        for c in range(16):
            assert F.unpack(F.scale_packed(row, c, 5), 5) == [F.mul(c, e) for e in entries]


class TestPoly2:
    def test_parse_and_print(self):
        text = "x^6+x^5+x^4+x^3+x^2+x+1"
        assert str(P(text)) == text
        assert P(text) == CYCLOTOMIC_7
        assert str(P("x + x^3 + 1")) == "x^3+x+1"

    @pytest.mark.parametrize("bad", ["", "x^", "2x", "x^3++1", "y+1"])
    def test_parse_errors(self, bad):
        with pytest.raises(PolynomialSyntaxError):
            P(bad)

    def test_division(self):
        q, r = divmod(P("x^3+1"), P("x+1"))
        assert q == P("x^2+x+1") and r.is_zero()
        with pytest.raises(DivisionByZero):
            P("x") % Poly2(0)

    def test_derivative_and_gcd(self):
        f = P("x^4+x^2+1")      # (x^2+x+1)^2
        assert f.derivative().is_zero()
        assert f.sqrt() == P("x^2+x+1")
        assert P("x^2+1").gcd(P("x^3+1")) == P("x+1")


class TestFactorization:
    def test_cyclotomic_seven(self):
        assert poly_factor_gf2(CYCLOTOMIC_7) == [(P("x^3+x+1"), 1), (P("x^3+x^2+1"), 1)]

    def test_frobenius_square(self):
        assert poly_factor_gf2(P("x^2+1")) == [(P("x+1"), 2)]

    def test_irreducible_quartic(self):
        assert poly_factor_gf2(P("x^4+x+1")) == [(P("x^4+x+1"), 1)]

    def test_constant_and_zero(self):
        assert poly_factor_gf2(Poly2.one()) == []
        with pytest.raises(ZeroPolynomial):
            poly_factor_gf2(Poly2(0))

    def test_format(self):
        assert format_factorization(poly_factor_gf2(P("x^3+x"))) == "(x)(x+1)^2"

    @pytest.mark.parametrize("d,count", [(1, 2), (2, 1), (3, 2), (4, 3), (5, 6), (6, 9), (7, 18), (8, 30)])
    def test_irreducible_counts(self, d, count):
        # necklace counts of monic irreducibles over GF(2)
        irr = irreducibles_of_degree(d)
        assert len(irr) == count
        assert all(is_irreducible(p) for p in irr)
