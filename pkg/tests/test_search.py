import itertools
import random

import pytest

from laterproof.calculus import check_derivation
from laterproof.corpus import CLASSICAL_BINARY, random_formula
from laterproof.formula import BOT, TOP, And, Imp, Later, Simp, atoms, length, parse
from laterproof.search import (NotProvable, Provable, countermodel_errors, prove, prove_formula)
from laterproof.semantics import forces, frame_check
from laterproof.sequent import Sequent, parse_sequent

from test_calculus import loeb, linearity


def decide(text, logic):
    goal = parse_sequent(text)
    out = prove(goal, logic)
    if out.provable:
        assert check_derivation(out.derivation, logic)
    else:
        assert countermodel_errors(out, goal, logic) == []
    return out


@pytest.mark.parametrize("text, lc, km", [
    ("(@p->p)->p", True, True),
    ("(p->q)|(q->p)", True, False),
    ("@q -> (p | (p->q))", True, True),
    ("(@p->@q) -> @(p->q)", True, False),
    ("p", False, False),
    ("T", True, True),
    ("p ~> p", True, True),
    ("p | (p -> F)", False, False),
    ("@p -> p", False, False),
    ("@F -> F", False, False),
    ("p => p", True, True),
    ("p, p -> q => q", True, True),
])
def test_examples(text, lc, km):
    assert decide(text, "lc").provable is lc
    assert decide(text, "km").provable is km


def test_loeb_derivation_reproduced():
    out = prove_formula(parse("(@p->p)->p"), "lc")
    assert out.derivation == loeb()


def test_linearity_derivation_checks():
    out = prove_formula(parse("(p->q)|(q->p)"), "lc")
    assert check_derivation(out.derivation, "lc")
    assert check_derivation(linearity(), "lc")
    assert out.derivation.sequent == linearity().sequent


def test_km_countermodel_for_lc_axiom_is_a_fork():
    out = prove_formula(parse("(p->q)|(q->p)"), "km")
    m, w = out.model, out.refuting_world
    assert w == 0 and frame_check(m, "km") == []
    assert frame_check(m, "lc") != []
    above = m.successors[0]
    p_only = [v for v in above if v in m.valuation["p"] and v not in m.valuation["q"]]
    q_only = [v for v in above if v in m.valuation["q"] and v not in m.valuation["p"]]
    assert p_only and q_only
    assert not any((a, b) in m.rel or (b, a) in m.rel for a in p_only for b in q_only)


def test_trivial_countermodel():
    out = prove_formula(parse("p"), "lc")
    assert isinstance(out, NotProvable)
    assert len(out.model.worlds) == 1 and out.model.valuation["p"] == frozenset()


def test_top_proved_by_top_right():
    out = prove_formula(TOP, "lc")
    assert isinstance(out, Provable) and out.derivation.rule == "top-right"


def test_unknown_logic():
    with pytest.raises(ValueError):
        prove(Sequent.of(), "s4")


def test_empty_sequent_is_refuted():
    out = prove(Sequent.of(), "lc")
    assert not out.provable and len(out.model.worlds) == 1


def test_determinism():
    rng = random.Random(11)
    for _ in range(50):
        f = random_formula(rng, ("p", "q", "r"), 9)
        for logic in ("lc", "km"):
            a, b = prove_formula(f, logic), prove_formula(f, logic)
            assert a == b


def _truth_table_tautology(f):
    names = sorted(atoms(f))

    def ev(g, val):
        if g is TOP:
            return True
        if g is BOT:
            return False
        name = type(g).__name__
        if name == "Atom":
            return val[g.name]
        if name == "And":
            return ev(g.left, val) and ev(g.right, val)
        if name == "Or":
            return ev(g.left, val) or ev(g.right, val)
        return (not ev(g.left, val)) or ev(g.right, val)

    return all(ev(f, dict(zip(names, bits))) for bits in itertools.product((False, True), repeat=len(names)))


def test_classical_embedding():
    rng = random.Random(12)
    for _ in range(150):
        f = random_formula(rng, ("p", "q", "r"), 9, binary=CLASSICAL_BINARY, later=False)
        neg = Imp(Imp(f, BOT), BOT)
        assert prove_formula(neg, "lc").provable == _truth_table_tautology(f), f


def test_derived_modus_ponens():
    rng = random.Random(13)
    for _ in range(100):
        a, b, c = (random_formula(rng, ("p", "q"), 5) for _ in range(3))
        goal = Sequent.of([c, a, Imp(a, b)], [b])
        for logic in ("lc", "km"):
            assert prove(goal, logic).provable


def test_equivalence_pairs():
    rng = random.Random(14)
    for _ in range(40):
        a, b = (random_formula(rng, ("p", "q"), 4) for _ in range(2))
        pairs = [(Simp(a, b), Later(Imp(a, b))), (Later(a), Simp(TOP, a))]
        for x, y in pairs:
            for logic in ("lc", "km"):
                assert prove(Sequent.of([x], [y]), logic).provable
                assert prove(Sequent.of([y], [x]), logic).provable


def test_km_contained_in_lc():
    rng = random.Random(15)
    for _ in range(300):
        f = random_formula(rng, ("p", "q"), 8)
        if prove_formula(f, "km").provable:
            assert prove_formula(f, "lc").provable


def _pool(rng, n, max_len=4):
    return [random_formula(rng, ("p", "q"), max_len) for _ in range(n)]


@pytest.mark.parametrize("logic", ["lc", "km"])
def test_cut_admissible(logic):
    rng = random.Random(16)
    tried = 0
    for _ in range(250):
        gamma, delta = _pool(rng, rng.randint(0, 2)), _pool(rng, rng.randint(0, 2))
        phi = random_formula(rng, ("p", "q"), 4)
        left = prove(Sequent.of(gamma, delta + [phi]), logic)
        right = prove(Sequent.of(gamma + [phi], delta), logic)
        if left.provable and right.provable:
            tried += 1
            assert prove(Sequent.of(gamma, delta), logic).provable
    assert tried > 10


def test_lc_stats_bounds():
    rng = random.Random(17)
    for _ in range(400):
        f = random_formula(rng, ("p", "q", "r"), 9)
        st = prove_formula(f, "lc").stats
        n = length(f)
        assert st.end_sequent_length == n
        assert st.step_applications_max_per_branch <= n
        assert st.max_branch_length <= n * n


def test_countermodels_refute_and_are_linear_in_lc():
    rng = random.Random(18)
    for _ in range(300):
        f = random_formula(rng, ("p", "q", "r"), 9)
        out = prove_formula(f, "lc")
        if not out.provable:
            assert out.model.is_linear()
            assert len(out.model.worlds) <= length(f) + 1
            assert not forces(out.model, out.refuting_world, f)


def test_countermodel_errors_detects_bad_model():
    out = prove_formula(parse("p | (p -> F)"), "lc")
    goal = Sequent.of((), [parse("p | (p -> F)")])
    assert countermodel_errors(out, goal, "lc") == []
    wrong = Sequent.of((), [parse("p -> p")])
    assert countermodel_errors(out, wrong, "lc")
    other = Sequent.of((), [And(parse("r"), TOP)])
    assert "omits" in countermodel_errors(out, other, "lc")[0]
