import pytest
from hypothesis import given
from hypothesis import strategies as st

from laterproof.formula import BOT, TOP, Atom, Later, ParseError, Simp, parse
from laterproof.sequent import (NotSaturated, Sequent, closed_by, eventualities, is_saturated,
                                parse_sequent, step_partition)


def seq(text):
    return parse_sequent(text)


def fs(*texts):
    return frozenset(parse(t) for t in texts)


def test_parse_sequent():
    s = seq("p, @q => r ~> p, F")
    assert s.antecedent == fs("p", "@q")
    assert s.succedent == fs("r ~> p", "F")
    assert seq("=>") == Sequent.of()
    assert seq("p -> q") == Sequent.of((), [parse("p -> q")])
    assert str(seq("q, p => r")) == "p, q => r"
    assert str(seq("=> p")) == "=> p"


def test_parse_sequent_error_column_is_global():
    with pytest.raises(ParseError) as info:
        seq("p, q => r, (s")
    assert info.value.column == 14


@pytest.mark.parametrize("text, rule", [
    ("p => p", "id"),
    ("F =>", "bot-left"),
    ("p => q", None),
    ("=> T", "top-right"),
    ("p -> q => p -> q", "id"),
    ("p, F => p", "id"),
    ("F => T", "bot-left"),
    ("T => F", None),
])
def test_closed_by(text, rule):
    assert closed_by(seq(text)) == rule


@pytest.mark.parametrize("text, expected", [
    ("p, p~>q, @r => q, @s", True),
    ("p->q =>", False),
    ("=> p|q", False),
    ("T => F", True),
    ("p & q => ", False),
    ("=> T", False),
    ("F => ", False),
])
def test_is_saturated(text, expected):
    assert is_saturated(seq(text)) is expected


def test_inert_constants_only_on_their_harmless_side():
    assert is_saturated(Sequent.of([TOP], [BOT]))
    assert not is_saturated(Sequent.of([BOT], [TOP]))


@pytest.mark.parametrize("text, expected", [
    ("(@p->p)~>p, @p~>p => @p, p", {"@p"}),
    ("=> p~>q, q~>p", {"p~>q", "q~>p"}),
    ("=> p", set()),
    ("@p => @p, @q", {"@q"}),
])
def test_eventualities(text, expected):
    assert eventualities(seq(text)) == fs(*expected)


def test_step_partition_loeb():
    part = step_partition(seq("@p~>p => @p, p"))
    assert part.sigma_l == frozenset()
    assert part.boxed_theta == frozenset()
    assert part.simp_gamma == fs("@p~>p")
    assert part.simp_delta == ()
    assert part.boxed_phi == (parse("@p"),)
    assert part.sigma_r == fs("p")


def test_step_partition_linearity():
    part = step_partition(seq("=> p~>q, q~>p"))
    assert part.simp_delta == (parse("p~>q"), parse("q~>p"))
    assert not (part.sigma_l or part.boxed_theta or part.simp_gamma or part.boxed_phi or part.sigma_r)


def test_step_partition_plain():
    part = step_partition(seq("p, @q => r"))
    assert part.sigma_l == fs("p") and part.boxed_theta == fs("@q") and part.sigma_r == fs("r")
    assert len(part.simp_delta) == len(part.boxed_phi) == 0


def test_step_partition_inert_constants():
    part = step_partition(seq("T, p => F"))
    assert part.sigma_l == fs("T", "p") and part.sigma_r == fs("F")


def test_step_partition_requires_saturation():
    with pytest.raises(NotSaturated):
        step_partition(seq("p & q => r"))


atoms = st.sampled_from([Atom("p"), Atom("q"), Atom("r")])
inert = st.one_of(atoms, st.builds(Later, atoms), st.builds(Simp, atoms, atoms),
                  st.builds(lambda a: Later(Later(a)), atoms))
saturated = st.builds(
    lambda left, right, t, b: Sequent.of(left | ({TOP} if t else set()), right | ({BOT} if b else set())),
    st.sets(inert, max_size=5), st.sets(inert, max_size=5), st.booleans(), st.booleans())


@given(saturated)
def test_partition_covers_both_sides(s):
    part = step_partition(s)
    left = [part.sigma_l, part.boxed_theta, part.simp_gamma]
    right = [frozenset(part.simp_delta), frozenset(part.boxed_phi), part.sigma_r]
    assert frozenset().union(*left) == s.antecedent
    assert frozenset().union(*right) == s.succedent
    assert sum(map(len, left)) == len(s.antecedent)
    assert sum(map(len, right)) == len(s.succedent)
    assert eventualities(s) <= frozenset(part.simp_delta) | frozenset(part.boxed_phi)


@given(saturated)
def test_partition_order_is_deterministic(s):
    again = Sequent.of(reversed(sorted(s.antecedent, key=repr)), reversed(sorted(s.succedent, key=repr)))
    assert step_partition(again) == step_partition(s)
