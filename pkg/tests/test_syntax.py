import pytest
from hypothesis import given, settings, strategies as st

from kawt.errors import ParseError, SortError, UndeclaredIdentifier
from kawt.syntax import (ONE, SKI_SIGNATURE, ZERO, Atomic, BAnd, BNot, BOne, BOr, BVar, BZero,
                         Plus, Seq, Signature, Star, Test, WAdd, Weight, WMul, WOne, WVar, WZero,
                         bounded_plus, build_ski_programs, desugar_if, desugar_while, has_star,
                         parse, parse_bool, parse_program_text, plus, power, pretty, seq,
                         ski_hypotheses, size, format_program_file)

SIG = SKI_SIGNATURE
neq0, sub1, end = Test(BVar("neq0")), Atomic("sub1"), Atomic("end")
one_w, skis = Weight(WVar("one")), Weight(WVar("skis"))
EQ1 = seq(Star(seq(neq0, sub1, plus(one_w, seq(skis, end)))), Test(BNot(BVar("neq0"))))


def test_seq_of_test_and_atomic():
    assert parse("{neq0} ; sub1", SIG) == Seq((neq0, sub1))
    assert parse("{neq0} sub1", SIG) == Seq((neq0, sub1))


def test_ski_loop_parses_to_the_expected_tree():
    assert parse("({neq0} sub1 (@one + @skis end))* {!neq0}", SIG) == EQ1


def test_precedence():
    # star binds tighter than juxtaposition, which binds tighter than +
    assert parse("sub1 end* + end", SIG) == Plus((Seq((sub1, Star(end))), end))
    assert parse_bool("!neq0 & 1 | 0", SIG) == BOr(BAnd(BNot(BVar("neq0")), BOne()), BZero())


def test_unicode_aliases():
    assert parse("{¬neq0} · sub1", SIG) == parse("{!neq0} ; sub1", SIG)


@pytest.mark.parametrize("src, err", [
    ("!@one", SortError),
    ("sub1 + !neq0", SortError),
    ("{@one}", SortError),
    ("one", SortError),
    ("{sub1}", SortError),
    ("walk", UndeclaredIdentifier),
    ("(sub1", ParseError),
    ("sub1 +", ParseError),
    ("sub1 2", ParseError),
    ("", ParseError),
])
def test_rejections(src, err):
    with pytest.raises(err):
        parse(src, SIG)


def test_error_position_points_at_offender():
    with pytest.raises(ParseError) as e:
        parse("sub1 + walk", SIG)
    assert e.value.pos == 7


def test_bare_boolean_variable_is_a_test():
    assert parse("neq0", SIG) == neq0


def test_signature_rejects_clashes():
    with pytest.raises(ValueError):
        Signature(("a",), ("a",), ())
    with pytest.raises(ValueError):
        Signature(("a", "a"), (), ())


def test_desugar_while_gives_ski_loop():
    assert desugar_while(BVar("neq0"), parse("sub1 (@one + @skis end)", SIG)) == EQ1


def test_desugar_literal_substitution():
    p, q = sub1, end
    assert desugar_if(BOne(), p, q) == Plus((Seq((ONE, p)), Seq((Test(BNot(BOne())), q))))
    assert desugar_while(BZero(), p) == Seq((Star(Seq((ZERO, p))), Test(BNot(BZero()))))


def test_bounded_plus():
    assert bounded_plus(sub1, 0) == ONE
    assert bounded_plus(sub1, 2) == Plus((ONE, sub1, Seq((sub1, sub1))))
    assert power(sub1, 0) == ONE


@pytest.mark.parametrize("n", range(5))
def test_ski_programs(n):
    loop, denested, finite = build_ski_programs(n)
    assert loop == EQ1
    assert pretty(denested) == "({neq0} sub1 @one)* ({neq0} sub1 @skis end ({neq0} sub1 @one)*)* {!neq0}"
    assert not has_star(finite)
    h3, h4 = ski_hypotheses(n)
    assert h4 == Seq((end, neq0))
    assert h3 == seq(power(sub1, n), neq0)


def test_ski_finite_program_for_zero():
    _, _, finite = build_ski_programs(0)
    assert finite == parse("1 (1 + {neq0} sub1 @skis end) {!neq0}", SIG)


def test_program_file_round_trip():
    text = format_program_file(SIG, EQ1)
    sig, p = parse_program_text(text)
    assert sig == SIG and p == EQ1


def test_program_file_errors():
    with pytest.raises(ParseError, match="empty program section"):
        parse_program_text("program a\n---\n# only a comment\n")
    with pytest.raises(ParseError) as e:
        parse_program_text("program a\n---\na +\n")
    assert e.value.pos == len("program a\n---\na +\n")
    with pytest.raises(ParseError):
        parse_program_text("a\n")


def test_size_counts_nested_binary_nodes():
    assert size(sub1) == 1
    assert size(Plus((sub1, end, neq0))) == 5
    assert size(Star(Test(BNot(BVar("neq0"))))) == 3


# -- round trip ----------------------------------------------------------------------

bools = st.recursive(
    st.sampled_from([BVar("neq0"), BOne(), BZero()]),
    lambda c: st.one_of(st.builds(BNot, c), st.builds(BAnd, c, c), st.builds(BOr, c, c)),
    max_leaves=6)
weights = st.recursive(
    st.sampled_from([WVar("one"), WVar("skis"), WOne(), WZero()]),
    lambda c: st.one_of(st.builds(WMul, c, c), st.builds(WAdd, c, c)),
    max_leaves=4)


def _nonconst_weight(w):
    # the bare constants print as 1/0 and come back as tests
    return not isinstance(w, (WOne, WZero))


programs = st.recursive(
    st.one_of(st.sampled_from([sub1, end]), st.builds(Test, bools),
              st.builds(Weight, weights.filter(_nonconst_weight))),
    lambda c: st.one_of(
        st.builds(Star, c),
        st.lists(c, min_size=2, max_size=3).map(lambda ps: seq(*ps)),
        st.lists(c, min_size=2, max_size=3).map(lambda ps: plus(*ps))),
    max_leaves=8)


@settings(max_examples=300)
@given(programs)
def test_parse_pretty_round_trip(p):
    assert parse(pretty(p), SIG) == p


@given(bools)
def test_bool_round_trip(b):
    from kawt.syntax import pretty_bool
    assert parse_bool(pretty_bool(b), SIG) == b


@given(programs)
def test_pretty_is_stable(p):
    s = pretty(p)
    assert pretty(parse(s, SIG)) == s
