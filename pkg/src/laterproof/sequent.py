"""Sequents over formula sets and the classifiers the proof strategy relies on."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .formula import (BOT, TOP, Atom, Bot, Formula, Later, Simp,
                      ParseError, Top, atoms, parse, sort_formulas, to_text)

__all__ = [
    "Sequent", "StepPartition", "NotSaturated", "closed_by", "is_saturated",
    "eventualities", "step_partition", "parse_sequent", "TERMINATION_RULES",
]

TERMINATION_RULES = ("id", "bot-left", "top-right")


@dataclass(frozen=True)
class Sequent:
    antecedent: frozenset[Formula]
    succedent: frozenset[Formula]

    @classmethod
    def of(cls, antecedent: Iterable[Formula] = (), succedent: Iterable[Formula] = ()) -> Sequent:
        return cls(frozenset(antecedent), frozenset(succedent))

    def __str__(self) -> str:
        left = ", ".join(map(to_text, sort_formulas(self.antecedent)))
        right = ", ".join(map(to_text, sort_formulas(self.succedent)))
        return f"{left} => {right}".strip()

    def formulas(self) -> frozenset[Formula]:
        return self.antecedent | self.succedent

    def atoms(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for f in self.formulas():
            out |= atoms(f)
        return out

    def length(self) -> int:
        """Sum of the lengths of all formulas on both sides."""
        return sum(f.size for f in self.antecedent) + sum(f.size for f in self.succedent)


def parse_sequent(text: str) -> Sequent:
    """Parse ``"a, b => c"``; either side may be empty. A bare formula is
    read as ``=> formula``. Error positions refer to the whole ``text``."""
    if "=>" not in text:
        return Sequent.of((), [parse(text)])
    cut = text.index("=>")
    sides: list[list[Formula]] = [[], []]
    offset = 0
    for side, part in ((0, text[:cut]), (1, text[cut + 2:])):
        base = 0 if side == 0 else cut + 2
        offset = 0
        for chunk in part.split(","):
            if chunk.strip():
                try:
                    sides[side].append(parse(chunk))
                except ParseError as exc:
                    raise ParseError(exc.message, text, base + offset + exc.position,
                                     exc.expected) from None
            offset += len(chunk) + 1
    return Sequent.of(sides[0], sides[1])


def closed_by(s: Sequent) -> str | None:
    if not s.antecedent.isdisjoint(s.succedent):
        return "id"
    if BOT in s.antecedent:
        return "bot-left"
    if TOP in s.succedent:
        return "top-right"
    return None


_LEFT_INERT = (Atom, Top, Simp, Later)
_RIGHT_INERT = (Atom, Bot, Simp, Later)


def is_saturated(s: Sequent) -> bool:
    return (all(isinstance(f, _LEFT_INERT) for f in s.antecedent)
            and all(isinstance(f, _RIGHT_INERT) for f in s.succedent))


def eventualities(s: Sequent) -> frozenset[Formula]:
    return frozenset(f for f in s.succedent
                     if isinstance(f, (Simp, Later)) and f not in s.antecedent)


class NotSaturated(ValueError):
    pass


class StepPartition(NamedTuple):
    sigma_l: frozenset[Formula]
    boxed_theta: frozenset[Formula]
    simp_gamma: frozenset[Formula]
    simp_delta: tuple[Formula, ...]
    boxed_phi: tuple[Formula, ...]
    sigma_r: frozenset[Formula]


def step_partition(s: Sequent) -> StepPartition:
    if not is_saturated(s):
        raise NotSaturated(f"sequent is not saturated: {s}")
    ant, suc = s.antecedent, s.succedent
    return StepPartition(
        sigma_l=frozenset(f for f in ant if isinstance(f, (Atom, Top))),
        boxed_theta=frozenset(f for f in ant if isinstance(f, Later)),
        simp_gamma=frozenset(f for f in ant if isinstance(f, Simp)),
        simp_delta=tuple(sort_formulas(f for f in suc if isinstance(f, Simp))),
        boxed_phi=tuple(sort_formulas(f for f in suc if isinstance(f, Later))),
        sigma_r=frozenset(f for f in suc if isinstance(f, (Atom, Bot))),
    )
