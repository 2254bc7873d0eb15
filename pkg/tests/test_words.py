import pytest

from amalgamkit.actions import Perm
from amalgamkit.errors import EmptyWord, ScriptError, UnboundName, WordSyntaxError
from amalgamkit.fields import GF2
from amalgamkit.linalg import DenseMatrix
from amalgamkit.words import (
    Conjugate,
    ElementScript,
    Generator,
    Identity,
    Power,
    Product,
    eval_word,
    generators_of,
    inverse_word,
    load_script,
    parse_script,
    parse_word,
    run_script,
    word_str,
)

a, b = Generator("a"), Generator("b")


class TestParse:
    def test_exponent_binds_to_preceding_atom(self):
        assert parse_word("ab^2") == Product((a, Power(b, 2)))

    def test_parenthesized_power(self):
        assert parse_word("(ab)^34") == Power(Product((a, b)), 34)

    def test_conjugation_by_group(self):
        assert parse_word("t1^(ab)") == Conjugate(Generator("t1"), Product((a, b)))

    def test_conjugation_by_name(self):
        assert parse_word("t1^y2") == Conjugate(Generator("t1"), Generator("y2"))

    def test_negative_and_braced_exponents(self):
        assert parse_word("a^-1") == Power(a, -1)
        assert parse_word("(ab)^{29}") == Power(Product((a, b)), 29)

    def test_primed_names_and_spaces(self):
        assert parse_word("i0' t3") == Product((Generator("i0'"), Generator("t3")))

    @pytest.mark.parametrize("text", ["", "   ", "()"])
    def test_empty(self, text):
        with pytest.raises(EmptyWord):
            parse_word(text)

    @pytest.mark.parametrize("text,pos", [("a^", 2), ("(ab", 3), ("a)b", 1), ("a*b", 1)])
    def test_syntax_error_position(self, text, pos):
        with pytest.raises(WordSyntaxError) as info:
            parse_word(text)
        assert info.value.position == pos

    def test_print_parse_fixed_point(self):
        for text in ["ab^2", "(ab)^34(abab^2)^3(ab)^6", "t1^((ab^2)^7(ab)^29)", "a^-1b^-2", "(i5t3't5'i5)^3"]:
            w = parse_word(text)
            assert parse_word(word_str(w)) == w

    def test_generators_of(self):
        assert generators_of(parse_word("t1^(ab)c")) == {"t1", "a", "b", "c"}


def perms3():
    g = Perm.from_cycles(3, [(0, 1, 2)])
    h = Perm.from_cycles(3, [(0, 1)])
    return g, h


class TestEval:
    def test_single_generator(self):
        I = DenseMatrix.identity(GF2, 4)
        assert eval_word("a", {"a": I}) == I

    def test_conjugation_is_h_inverse_g_h(self):
        g, h = perms3()
        assert eval_word("g^(h)", {"g": g, "h": h}) == h.inverse() * g * h
        assert eval_word("g^(h)", {"g": g, "h": h}) == Perm.from_cycles(3, [(0, 2, 1)])

    def test_product_order_is_left_to_right(self):
        g, h = perms3()
        assert eval_word("gh", {"g": g, "h": h}) == g * h
        # right action: apply g first, then h
        assert (g * h)(0) == h(g(0))

    def test_inverse_word(self):
        g, h = perms3()
        env = {"g": g, "h": h}
        w = parse_word("g h^2 g^(gh)")
        assert eval_word(inverse_word(w), env) == eval_word(w, env).inverse()

    def test_identity_node(self):
        g, _ = perms3()
        assert eval_word(Identity(), {"g": g}).is_identity()

    def test_unbound(self):
        with pytest.raises(UnboundName):
            eval_word("ac", {"a": Perm.identity(3)})

    def test_power_of_order_35_element(self, co1):
        x = eval_word("(i0 i1)^7", co1.env)
        assert x.order() == 5


class TestScript:
    def test_shipped_script_round_trips(self):
        s = load_script()
        assert parse_script(s.to_text()) == s

    def test_shipped_script_names_unique(self):
        s = load_script()
        names = s.names()
        assert len(names) == len(set(names))
        assert {"e", "f", "t1", "i7"} <= set(s.names("co1-exact"))
        assert s.names("monster-only")

    def test_empty_script_leaves_env(self):
        env = {"a": Perm.identity(2)}
        run = run_script(ElementScript(()), env)
        assert run.env == env and run.orders == {}

    def test_shipped_orders(self, co1):
        orders = co1.run.orders
        assert orders["e"] == (22, 22)
        assert orders["f"] == (33, 33)

    def test_use_before_definition(self):
        with pytest.raises(ScriptError):
            parse_script("input a  # co1-exact\nx = ay  # co1-exact\ny = a  # co1-exact\n")

    def test_duplicate_name(self):
        with pytest.raises(ScriptError):
            parse_script("input a  # co1-exact\nx = a  # co1-exact\nx = aa  # co1-exact\n")

    def test_unknown_tag(self):
        with pytest.raises(ScriptError):
            parse_script("input a  # somewhere\n")

    def test_exact_entry_cannot_use_monster_only(self):
        text = "input a  # co1-exact\nT = a  # monster-only\nx = aT  # co1-exact\n"
        with pytest.raises(ScriptError):
            parse_script(text)

    def test_monster_only_entries_are_not_evaluated(self):
        text = "input a  # co1-exact\nT = a^2  # monster-only\nx = a^3  # co1-exact order=1\n"
        run = run_script(parse_script(text), {"a": Perm.from_cycles(3, [(0, 1, 2)])})
        assert "T" not in run.env and run.orders == {"x": (1, 1)}

    def test_missing_input(self):
        with pytest.raises(UnboundName):
            run_script(parse_script("input a b  # co1-exact\n"), {"a": Perm.identity(2)})
