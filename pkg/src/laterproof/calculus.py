"""Rules of the sequent calculi for LC-later and KM, and a derivation checker.

Every rule is a backward premise generator over set-based sequents. The
static rules are shared by both logics; the transitional rules differ:

* LC: one multi-premise ``step`` rule that takes every succedent
  eventuality as principal at once.
* KM: ``km-simp-right`` / ``km-later-right`` pick a single succedent
  eventuality and discard the rest of the succedent.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

from .formula import BOT, TOP, And, Formula, Imp, Or, Simp, sort_formulas, to_text
from .sequent import (TERMINATION_RULES, Sequent, closed_by, is_saturated,
                      step_partition)

Logic = Literal["lc", "km"]
LOGICS = ("lc", "km")

STATIC_RULES = ("and-left", "and-right", "or-left", "or-right", "imp-left", "imp-right")
_STATIC_LEFT = {And: "and-left", Or: "or-left", Imp: "imp-left"}
_STATIC_RIGHT = {And: "and-right", Or: "or-right", Imp: "imp-right"}
__all__ = [
    "Logic", "LOGICS", "RuleInstance", "Derivation", "STATIC_RULES",
    "static_rule_instances", "apply_static", "lc_step_instance",
    "km_step_instances", "check_derivation", "derivation_error",
]


@dataclass(frozen=True)
class RuleInstance:
    rule: str
    principal: tuple[Formula, ...]
    premises: tuple[Sequent, ...]


@dataclass(frozen=True)
class Derivation:
    """A derivation tree node: the sequent, the rule applied to it, the
    principal formula(s) and one subtree per premise."""

    sequent: Sequent
    rule: str
    principal: tuple[Formula, ...] = ()
    premises: tuple[Derivation, ...] = ()

    def is_proof(self) -> bool:
        return all(leaf.rule in TERMINATION_RULES for leaf in self.leaves())

    def leaves(self) -> Iterator[Derivation]:
        if not self.premises:
            yield self
        for p in self.premises:
            yield from p.leaves()

    def nodes(self) -> Iterator[Derivation]:
        yield self
        for p in self.premises:
            yield from p.nodes()

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)


def apply_static(s: Sequent, rule: str, f: Formula) -> tuple[Sequent, ...]:
    """Premises of static ``rule`` applied to principal ``f`` in ``s``."""
    if rule.endswith("-left"):
        if f not in s.antecedent:
            raise ValueError(f"{to_text(f)} is not in the antecedent")
        gamma, delta = s.antecedent - {f}, s.succedent
        if rule == "and-left" and isinstance(f, And):
            return (Sequent(gamma | {f.left, f.right}, delta),)
        if rule == "or-left" and isinstance(f, Or):
            return (Sequent(gamma | {f.left}, delta), Sequent(gamma | {f.right}, delta))
        if rule == "imp-left" and isinstance(f, Imp):
            weak = Simp(f.left, f.right)
            return (Sequent(gamma | {weak}, delta | {f.left}),
                    Sequent(gamma | {weak, f.right}, delta))
    elif rule.endswith("-right"):
        if f not in s.succedent:
            raise ValueError(f"{to_text(f)} is not in the succedent")
        gamma, delta = s.antecedent, s.succedent - {f}
        if rule == "and-right" and isinstance(f, And):
            return (Sequent(gamma, delta | {f.left}), Sequent(gamma, delta | {f.right}))
        if rule == "or-right" and isinstance(f, Or):
            return (Sequent(gamma, delta | {f.left, f.right}),)
        if rule == "imp-right" and isinstance(f, Imp):
            return (Sequent(gamma | {f.left}, delta | {f.right}),
                    Sequent(gamma, delta | {Simp(f.left, f.right)}))
    raise ValueError(f"rule {rule} does not apply to {to_text(f)}")


def static_rule_instances(s: Sequent) -> list[RuleInstance]:
    """All static rule instances on ``s``, antecedent formulas first, each
    side in the deterministic formula order."""
    out = []
    for f in sort_formulas(s.antecedent):
        rule = _STATIC_LEFT.get(type(f))
        if rule:
            out.append(RuleInstance(rule, (f,), apply_static(s, rule, f)))
    for f in sort_formulas(s.succedent):
        rule = _STATIC_RIGHT.get(type(f))
        if rule:
            out.append(RuleInstance(rule, (f,), apply_static(s, rule, f)))
    return out


def _transition_context(s: Sequent) -> frozenset[Formula]:
    # Sigma_l, Theta, @Theta, ->Gamma: carried into every transitional premise
    part = step_partition(s)
    theta = frozenset(b.body for b in part.boxed_theta)
    imps = frozenset(Imp(g.left, g.right) for g in part.simp_gamma)
    return part.sigma_l | theta | part.boxed_theta | imps


def lc_step_instance(s: Sequent) -> RuleInstance | None:
    """The LC step rule, or None when a side condition fails."""
    if closed_by(s) is not None or not is_saturated(s):
        return None
    part = step_partition(s)
    k, n = len(part.simp_delta), len(part.boxed_phi)
    if k + n == 0:
        return None
    ctx = _transition_context(s)
    delta_imps = [Imp(d.left, d.right) for d in part.simp_delta]
    phi = frozenset(b.body for b in part.boxed_phi)
    premises = []
    for i, d in enumerate(part.simp_delta):
        others = frozenset(delta_imps[:i] + delta_imps[i + 1:])
        premises.append(Sequent(ctx | {d, d.left}, others | phi | {d.right}))
    for b in part.boxed_phi:
        premises.append(Sequent(ctx | {b}, frozenset(delta_imps) | phi))
    return RuleInstance("step", part.simp_delta + part.boxed_phi, tuple(premises))


def km_step_instances(s: Sequent) -> list[RuleInstance]:
    """One single-premise KM transition per succedent eventuality:
    ``~>``-formulas first, then ``@``-formulas, each in formula order."""
    if closed_by(s) is not None or not is_saturated(s):
        return []
    part = step_partition(s)
    ctx = _transition_context(s)
    out = []
    for d in part.simp_delta:
        out.append(RuleInstance("km-simp-right", (d,), (Sequent(ctx | {d, d.left}, frozenset({d.right})),)))
    for b in part.boxed_phi:
        out.append(RuleInstance("km-later-right", (b,), (Sequent(ctx | {b}, frozenset({b.body})),)))
    return out


def _termination_applies(s: Sequent, rule: str, principal: tuple[Formula, ...]) -> bool:
    if rule == "id":
        shared = s.antecedent & s.succedent
        return bool(shared) and all(f in shared for f in principal)
    if rule == "bot-left":
        return BOT in s.antecedent
    if rule == "top-right":
        return TOP in s.succedent
    return False


def _recompute(s: Sequent, rule: str, principal: tuple[Formula, ...], logic: str) -> tuple[Sequent, ...]:
    if rule in STATIC_RULES:
        if len(principal) != 1:
            raise ValueError("static rules take exactly one principal formula")
        return apply_static(s, rule, principal[0])
    if rule == "step":
        if logic != "lc":
            raise ValueError("step is an LC rule")
        inst = lc_step_instance(s)
        if inst is None:
            raise ValueError("side conditions of step fail")
        if inst.principal != tuple(principal):
            raise ValueError("step must take every succedent eventuality as principal")
        return inst.premises
    if rule in ("km-simp-right", "km-later-right"):
        if logic != "km":
            raise ValueError(f"{rule} is a KM rule")
        for inst in km_step_instances(s):
            if inst.rule == rule and inst.principal == tuple(principal):
                return inst.premises
        raise ValueError(f"{rule} does not apply with this principal formula")
    raise ValueError(f"unknown rule {rule!r}")


def derivation_error(d: Derivation, logic: str = "lc") -> str | None:
    """Locate the first invalid node, as ``"<path>: <reason>"``.

    The path lists premise indices from the root, e.g. ``root.1.0``.
    Returns None for a valid proof.
    """
    if logic not in LOGICS:
        raise ValueError(f"unknown logic {logic!r}")
    stack = [(d, "root")]
    while stack:
        node, path = stack.pop()
        if node.rule in TERMINATION_RULES:
            if node.premises:
                return f"{path}: {node.rule} has no premises"
            if not _termination_applies(node.sequent, node.rule, node.principal):
                return f"{path}: {node.rule} does not close {node.sequent}"
            continue
        if not node.premises:
            return f"{path}: open leaf {node.sequent}"
        try:
            expected = _recompute(node.sequent, node.rule, node.principal, logic)
        except ValueError as exc:
            return f"{path}: {exc}"
        got = tuple(p.sequent for p in node.premises)
        if got != expected:
            for i, (a, b) in enumerate(zip(got, expected)):
                if a != b:
                    return f"{path}: premise {i} is {a}, expected {b}"
            return f"{path}: {len(got)} premises, expected {len(expected)}"
        for i, p in reversed(list(enumerate(node.premises))):
            stack.append((p, f"{path}.{i}"))
    return None


def check_derivation(d: Derivation, logic: str = "lc") -> bool:
    return derivation_error(d, logic) is None
