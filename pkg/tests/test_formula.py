import pytest
from hypothesis import given, settings

from conftest import formulas
from provd.errors import FormulaSyntaxError, LexicalError, MissingArrow, UnbalancedParentheses
from provd.formula import (
    BOT,
    Box,
    Implies,
    Sequent,
    SequentKind,
    Var,
    conj,
    disj,
    modal_depth,
    parse_formula,
    parse_sequent,
    print_formula,
    print_sequent,
    sequent_formula,
    size,
    subformula_closure,
    top,
    variables,
)

p, q, r = Var("p"), Var("q"), Var("r")


class TestParse:
    def test_lob_shape(self):
        assert parse_formula("box(box p -> p) -> box p") == Implies(Box(Implies(Box(p), p)), Box(p))

    def test_negation_desugars(self):
        assert parse_formula("~ box bot") == Implies(Box(BOT), BOT)

    def test_implication_is_right_associative(self):
        assert parse_formula("p -> q -> r") == Implies(p, Implies(q, r))

    def test_sugar(self):
        assert parse_formula("p | q") == Implies(Implies(p, BOT), q)
        assert parse_formula("p & q") == Implies(Implies(p, Implies(q, BOT)), BOT)
        assert parse_formula("top") == Implies(BOT, BOT)
        assert parse_formula("p <-> q") == parse_formula("(p -> q) & (q -> p)")

    def test_box_binds_tighter_than_connectives(self):
        assert parse_formula("box p & q") == parse_formula("(box p) & q")

    def test_unknown_token(self):
        with pytest.raises(LexicalError):
            parse_formula("p $ q")

    def test_unbalanced(self):
        with pytest.raises(UnbalancedParentheses):
            parse_formula("(p -> q")
        with pytest.raises(UnbalancedParentheses):
            parse_formula("p -> q)")

    def test_syntax_error_is_value_error(self):
        with pytest.raises(FormulaSyntaxError):
            parse_formula("p ->")
        with pytest.raises(ValueError):
            parse_formula("-> p")


class TestSequents:
    def test_kinds(self):
        s = parse_sequent("box box box p =d> box p")
        assert s == Sequent(SequentKind.D, {Box(Box(Box(p)))}, {Box(p)})
        assert parse_sequent("=s> box p -> p") == Sequent(SequentKind.S, (), {Implies(Box(p), p)})

    def test_duplicates_collapse(self):
        assert parse_sequent("p, p => p") == Sequent(SequentKind.GL, {p}, {p})

    def test_empty_sides(self):
        s = parse_sequent("=>")
        assert not s.left and not s.right

    def test_missing_arrow(self):
        with pytest.raises(MissingArrow):
            parse_sequent("p, q")

    def test_print_round_trip(self):
        s = parse_sequent("box p, q -> p =s> p, bot")
        assert parse_sequent(print_sequent(s)) == s


class TestPrint:
    def test_minimal_parentheses(self):
        assert print_formula(Implies(Box(p), p)) == "box p -> p"
        assert print_formula(Box(Implies(p, q))) == "box(p -> q)"
        assert print_formula(BOT) == "bot"
        assert print_formula(Implies(Implies(p, q), r)) == "(p -> q) -> r"

    def test_sugar_display(self):
        assert print_formula(parse_formula("~ box bot"), sugar=True) == "~box bot"
        assert print_formula(disj([p, q, r]), sugar=True) == "p | q | r"
        assert print_formula(top(), sugar=True) == "top"

    def test_unicode_display(self):
        assert print_formula(Implies(Box(p), BOT), unicode=True) == "□p → ⊥"

    @given(formulas(("p", "q", "r"), max_leaves=12))
    @settings(max_examples=300, deadline=None)
    def test_round_trip(self, f):
        assert parse_formula(print_formula(f)) == f


class TestConstructors:
    def test_empty_conj_and_disj(self):
        assert conj([]) == top()
        assert disj([]) == BOT
        assert conj([p]) == p

    def test_right_nesting(self):
        assert disj([p, q, r]) == Implies(Implies(p, BOT), Implies(Implies(q, BOT), r))

    def test_measures(self):
        f = parse_formula("box(box p -> q)")
        assert size(f) == 5
        assert modal_depth(f) == 2
        assert variables(f) == {"p", "q"}

    def test_sequent_formula(self):
        s = parse_sequent("p, q => r")
        assert sequent_formula(s) == Implies(conj([p, q]), r)
        assert sequent_formula(parse_sequent("=> p, q")) == disj([p, q])
        assert sequent_formula(parse_sequent("=> p"), full=True) == Implies(top(), p)


class TestClosure:
    def test_nested_boxes(self):
        sf = subformula_closure([Box(Box(Box(p))), Box(p)])
        assert sf.formulas == {Box(Box(Box(p))), Box(Box(p)), Box(p), p}
        assert sf.boxed == {Box(Box(Box(p))), Box(Box(p)), Box(p)}

    def test_empty(self):
        assert len(subformula_closure([])) == 0

    def test_counted_example(self):
        f = parse_formula("box(~box p -> box q) -> (~box p -> box q)")
        sf = subformula_closure([f])
        assert len(sf) == 9
        assert {BOT, Box(p), Box(q)} <= sf.formulas

    @given(formulas())
    @settings(max_examples=200, deadline=None)
    def test_closure_bounded_by_size(self, f):
        sf = subformula_closure([f])
        assert len(sf) <= size(f)
        assert sf.boxed <= sf.formulas
