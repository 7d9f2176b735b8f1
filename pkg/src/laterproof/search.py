"""Terminating backward proof search with countermodel extraction.

The loop at every leaf is: close it with a termination rule, else apply
the first static rule (deterministic order), else apply a transitional
rule. In LC every rule is invertible, so the first failing premise
decides the answer. In KM the transitional rules are not invertible and
all choices of principal formula are tried before giving up.

A failed branch returns a finite model whose root refutes the sequent at
that branch point. Static rules pass it down unchanged; transitional
rules put a fresh root below the premise models.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Union

from .calculus import Derivation, km_step_instances, lc_step_instance, static_rule_instances
from .formula import BOT, TOP, Atom, Formula, Later, Simp, closure, sort_formulas
from .semantics import KripkeModel, forces, frame_check
from .sequent import Sequent, closed_by, step_partition

__all__ = [
    "SearchStats", "Provable", "NotProvable", "SearchOutcome", "SearchInvariantError",
    "prove", "prove_formula", "countermodel_errors",
]

log = logging.getLogger(__name__)


class SearchInvariantError(AssertionError):
    """A termination or size bound that the calculus guarantees was broken."""


@dataclass
class SearchStats:
    sequents_visited: int = 0
    step_applications_max_per_branch: int = 0
    max_branch_length: int = 0
    backtracks: int = 0
    end_sequent_length: int = 0


@dataclass
class Provable:
    derivation: Derivation
    stats: SearchStats = field(default_factory=SearchStats)
    provable = True


@dataclass
class NotProvable:
    model: KripkeModel
    refuting_world: int
    stats: SearchStats = field(default_factory=SearchStats)
    provable = False


SearchOutcome = Union[Provable, NotProvable]


@dataclass(frozen=True)
class _Refutation:
    model: KripkeModel
    world: int


class _Search:
    def __init__(self, goal: Sequent, logic: str):
        if logic not in ("lc", "km"):
            raise ValueError(f"unknown logic {logic!r}")
        self.logic = logic
        self.atoms = sorted(goal.atoms())
        cl: set[Formula] = set()
        for f in goal.formulas():
            cl |= closure(f)
        self.modal_closure = frozenset(f for f in cl if isinstance(f, (Simp, Later)))
        self.stats = SearchStats(end_sequent_length=goal.length())
        self.fresh = 0

    def new_world(self) -> int:
        w = self.fresh
        self.fresh += 1
        return w

    def run(self, s: Sequent, depth: int = 1, steps: int = 0,
            phase: tuple[int, int] | None = None,
            boxed_before: frozenset | None = None) -> Derivation | _Refutation:
        """``phase`` is (static applications so far, budget) of the current
        saturation phase; ``boxed_before`` the antecedent modal formulas at
        the previous transition on this branch."""
        st = self.stats
        st.sequents_visited += 1
        st.max_branch_length = max(st.max_branch_length, depth)
        if phase is None:
            phase = (0, _static_weight(s))

        rule = closed_by(s)
        if rule is not None:
            return Derivation(s, rule, _termination_principal(s, rule))

        static = static_rule_instances(s)
        if static:
            used, budget = phase
            if used + 1 > budget:
                raise SearchInvariantError(f"saturation phase exceeded {budget} rules at {s}")
            inst = static[0]
            subs = []
            for prem in inst.premises:
                r = self.run(prem, depth + 1, steps, (used + 1, budget), boxed_before)
                if isinstance(r, _Refutation):
                    return r
                subs.append(r)
            return Derivation(s, inst.rule, inst.principal, tuple(subs))

        self._check_progress(s, boxed_before)
        boxed_now = frozenset(f for f in s.antecedent if isinstance(f, (Simp, Later)))
        if self.logic == "lc":
            inst = lc_step_instance(s)
            if inst is None:
                return self.leaf_model(s)
            st.step_applications_max_per_branch = max(st.step_applications_max_per_branch, steps + 1)
            subs = []
            for prem in inst.premises:
                r = self.run(prem, depth + 1, steps + 1, None, boxed_now)
                if isinstance(r, _Refutation):
                    return self.lc_extend(s, r)
                subs.append(r)
            return Derivation(s, inst.rule, inst.principal, tuple(subs))

        choices = km_step_instances(s)
        if not choices:
            return self.leaf_model(s)
        st.step_applications_max_per_branch = max(st.step_applications_max_per_branch, steps + 1)
        failures = []
        for inst in choices:
            r = self.run(inst.premises[0], depth + 1, steps + 1, None, boxed_now)
            if not isinstance(r, _Refutation):
                return Derivation(s, inst.rule, inst.principal, (r,))
            st.backtracks += 1
            failures.append(r)
        return self.km_join(s, failures)

    def _check_progress(self, s: Sequent, boxed_before: frozenset | None) -> None:
        pending = self.modal_closure - s.antecedent
        for f in s.succedent:
            if isinstance(f, (Simp, Later)) and f not in self.modal_closure:
                raise SearchInvariantError(f"new eventuality {f} created upwards")
        if boxed_before is not None:
            boxed_now = frozenset(f for f in s.antecedent if isinstance(f, (Simp, Later)))
            if not boxed_before < boxed_now:
                raise SearchInvariantError(f"eventualities did not decrease at {s}")
        log.debug("transition with %d potential eventualities left", len(pending))

    def valuation(self, worlds: dict[str, set]) -> dict[str, frozenset]:
        return {p: frozenset(worlds.get(p, ())) for p in self.atoms}

    def leaf_model(self, s: Sequent) -> _Refutation:
        w = self.new_world()
        true_here = {f.name: {w} for f in s.antecedent if isinstance(f, Atom)}
        return _Refutation(KripkeModel.build([w], [], self.valuation(true_here)), w)

    def lc_extend(self, s: Sequent, r: _Refutation) -> _Refutation:
        m, w1 = r.model, r.world
        keep = m.reachable(w1) | {w1}
        w0 = self.new_world()
        rel = {(a, b) for a, b in m.rel if a in keep and b in keep}
        rel |= {(w0, v) for v in keep}
        val = {p: set(m.valuation.get(p, ())) & keep for p in self.atoms}
        for f in step_partition(s).sigma_l:
            if isinstance(f, Atom):
                val[f.name].add(w0)
        return _Refutation(KripkeModel.build(keep | {w0}, rel, self.valuation(val)), w0)

    def km_join(self, s: Sequent, parts: list[_Refutation]) -> _Refutation:
        w0 = self.new_world()
        worlds, rel = {w0}, set()
        val: dict[str, set] = {p: set() for p in self.atoms}
        for r in parts:
            keep = r.model.reachable(r.world) | {r.world}
            worlds |= keep
            rel |= {(a, b) for a, b in r.model.rel if a in keep and b in keep}
            rel |= {(w0, v) for v in keep}
            for p in self.atoms:
                val[p] |= set(r.model.valuation.get(p, ())) & keep
        for f in s.antecedent:
            if isinstance(f, Atom):
                val[f.name].add(w0)
        return _Refutation(KripkeModel.build(worlds, rel, self.valuation(val)), w0)


def _static_weight(s: Sequent) -> int:
    """Upper bound on the length of any chain of static rules from ``s``:
    the number of formula nodes, each static rule consuming at least one
    top-level connective."""
    return s.length()


def _termination_principal(s: Sequent, rule: str) -> tuple[Formula, ...]:
    if rule == "id":
        return (sort_formulas(s.antecedent & s.succedent)[0],)
    return (BOT,) if rule == "bot-left" else (TOP,)


def _renumber(m: KripkeModel, root: int) -> tuple[KripkeModel, int]:
    # root becomes 0, others by breadth-first discovery then old id
    order = [root]
    seen = {root}
    i = 0
    while i < len(order):
        for v in sorted(m.successors.get(order[i], ())):
            if v not in seen:
                seen.add(v)
                order.append(v)
        i += 1
    for v in sorted(m.worlds - seen):
        order.append(v)
    new = {old: k for k, old in enumerate(order)}
    model = KripkeModel.build(
        (new[w] for w in m.worlds),
        ((new[a], new[b]) for a, b in m.rel),
        {p: (new[w] for w in ws) for p, ws in m.valuation.items()})
    return model, 0


def prove(goal: Sequent, logic: str = "lc") -> SearchOutcome:
    """Decide ``goal`` in ``logic`` ("lc" or "km")."""
    search = _Search(goal, logic)
    r = search.run(goal)
    st = search.stats
    if isinstance(r, Derivation):
        return Provable(r, st)
    model, root = _renumber(r.model, r.world)
    return NotProvable(model, root, st)


def prove_formula(f: Formula, logic: str = "lc") -> SearchOutcome:
    return prove(Sequent.of((), [f]), logic)


def countermodel_errors(outcome: NotProvable, goal: Sequent, logic: str = "lc") -> list[str]:
    """Reasons the outcome's model fails to certify unprovability of ``goal``."""
    m, w = outcome.model, outcome.refuting_world
    problems = frame_check(m, logic)
    if problems:
        return problems
    if w not in m.worlds:
        return [f"refuting world {w!r} is not in the model"]
    names = goal.atoms()
    missing = sorted(p for p in names if p not in m.valuation)
    if missing:
        return [f"valuation omits {', '.join(missing)}"]
    problems += [f"antecedent formula {f} fails at {w}" for f in sort_formulas(goal.antecedent)
                 if not forces(m, w, f)]
    problems += [f"succedent formula {f} holds at {w}" for f in sort_formulas(goal.succedent)
                 if forces(m, w, f)]
    return problems
