"""Kripke semantics and topos-of-trees truth values.

Models store the strict accessibility relation; its reflexive closure is
derived when evaluating ``->``.
"""
from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping

import numpy as np

from .formula import (And, Atom, Bot, Formula, Imp, Later, Or, Simp, Top,
                      atoms, length)

__all__ = [
    "KripkeModel", "UnknownWorld", "UnknownAtom", "UnassignedAtom", "BudgetExceeded",
    "frame_check", "forces", "refutes", "lc_validity_oracle", "lc_refuting_chain",
    "oracle_budget", "INF", "trees_value", "forces_trees", "trees_valid_bounded",
    "chain_model", "enumerate_models",
]

World = Hashable
INF = math.inf


class UnknownWorld(LookupError):
    pass


class UnknownAtom(LookupError):
    pass


class UnassignedAtom(LookupError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class KripkeModel:
    worlds: frozenset
    rel: frozenset
    valuation: Mapping[str, frozenset] = field(default_factory=dict)

    @classmethod
    def build(cls, worlds: Iterable[World], rel: Iterable[tuple[World, World]] = (),
              valuation: Mapping[str, Iterable[World]] | None = None) -> KripkeModel:
        return cls(frozenset(worlds), frozenset(tuple(e) for e in rel),
                   {p: frozenset(ws) for p, ws in (valuation or {}).items()})

    @cached_property
    def successors(self) -> dict[World, frozenset]:
        succ: dict[World, set] = {w: set() for w in self.worlds}
        for a, b in self.rel:
            succ.setdefault(a, set()).add(b)
        return {w: frozenset(s) for w, s in succ.items()}

    def reachable(self, w: World) -> frozenset:
        """Worlds strictly reachable from ``w`` by one or more steps."""
        seen: set = set()
        todo = list(self.successors.get(w, ()))
        while todo:
            v = todo.pop()
            if v not in seen:
                seen.add(v)
                todo.extend(self.successors.get(v, ()))
        return frozenset(seen)

    def is_linear(self) -> bool:
        return all(a == b or (a, b) in self.rel or (b, a) in self.rel
                   for a, b in itertools.combinations(self.worlds, 2))


def frame_check(m: KripkeModel, logic: str = "km") -> list[str]:
    """Violated frame conditions, empty when ``m`` is a model of ``logic``."""
    problems: list[str] = []
    if not m.worlds:
        problems.append("no worlds")
    for a, b in sorted(m.rel, key=repr):
        if a not in m.worlds or b not in m.worlds:
            problems.append(f"edge {a!r}->{b!r} leaves the carrier")
    succ = m.successors
    for a, b in m.rel:
        for c in succ.get(b, ()):
            if (a, c) not in m.rel:
                problems.append(f"not transitive: {a!r}->{b!r}->{c!r} without {a!r}->{c!r}")
    # acyclicity by depth-first search; with transitivity this is irreflexivity
    # plus converse well-foundedness on a finite carrier
    state: dict = {}
    for root in sorted(m.worlds, key=repr):
        if root in state:
            continue
        stack = [(root, iter(sorted(succ.get(root, ()), key=repr)))]
        state[root] = 1
        while stack:
            w, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[w] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                problems.append(f"cycle through {nxt!r}")
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(sorted(succ.get(nxt, ()), key=repr))))
    for p, ext in sorted(m.valuation.items()):
        for w in ext:
            if w not in m.worlds:
                problems.append(f"valuation of {p} mentions unknown world {w!r}")
        for a, b in m.rel:
            if a in ext and b not in ext:
                problems.append(f"valuation of {p} not persistent along {a!r}->{b!r}")
    if logic == "lc":
        for a, b in itertools.combinations(sorted(m.worlds, key=repr), 2):
            if (a, b) not in m.rel and (b, a) not in m.rel:
                problems.append(f"not connected: {a!r} and {b!r} are incomparable")
    elif logic != "km":
        raise ValueError(f"unknown logic {logic!r}")
    return problems


def forces(m: KripkeModel, w: World, f: Formula) -> bool:
    if w not in m.worlds:
        raise UnknownWorld(w)
    succ = m.successors
    val = m.valuation
    memo: dict = {}

    def go(x: World, g: Formula) -> bool:
        key = (x, g)
        if key in memo:
            return memo[key]
        if isinstance(g, Atom):
            if g.name not in val:
                raise UnknownAtom(g.name)
            r = x in val[g.name]
        elif isinstance(g, Top):
            r = True
        elif isinstance(g, Bot):
            r = False
        elif isinstance(g, And):
            r = go(x, g.left) and go(x, g.right)
        elif isinstance(g, Or):
            r = go(x, g.left) or go(x, g.right)
        elif isinstance(g, Imp):
            r = all(not go(y, g.left) or go(y, g.right) for y in itertools.chain((x,), succ[x]))
        elif isinstance(g, Simp):
            r = all(not go(y, g.left) or go(y, g.right) for y in succ[x])
        elif isinstance(g, Later):
            r = all(go(y, g.body) for y in succ[x])
        else:
            raise TypeError(f"not a formula: {g!r}")
        memo[key] = r
        return r

    return go(w, f)


def refutes(m: KripkeModel, w: World, antecedent: Iterable[Formula], succedent: Iterable[Formula]) -> bool:
    """Whether ``w`` forces every antecedent formula and no succedent formula."""
    return (all(forces(m, w, f) for f in antecedent)
            and not any(forces(m, w, f) for f in succedent))


def _strict_orders(n: int, linear: bool) -> Iterator[frozenset]:
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    if linear:
        for perm in itertools.permutations(range(n)):
            yield frozenset((perm[i], perm[j]) for i in range(n) for j in range(i + 1, n))
        return
    for bits in itertools.product((False, True), repeat=len(pairs)):
        rel = frozenset(e for e, b in zip(pairs, bits) if b)
        if all((b, a) not in rel for a, b in rel) and all(
                (a, d) in rel for a, b in rel for c, d in rel if b == c):
            yield rel


def enumerate_models(max_worlds: int, names: Iterable[str], logic: str = "km") -> Iterator[KripkeModel]:
    """Every model on worlds ``0..n-1`` (``1 <= n <= max_worlds``) of the given
    logic, with every persistent valuation of ``names``. Isomorphic copies
    are not removed."""
    names = sorted(names)
    for n in range(1, max_worlds + 1):
        for rel in _strict_orders(n, linear=(logic == "lc")):
            succ = {w: {b for a, b in rel if a == w} for w in range(n)}
            upsets = [frozenset(ws) for k in range(n + 1)
                      for ws in itertools.combinations(range(n), k)
                      if all(succ[w] <= set(ws) for w in ws)]
            for combo in itertools.product(upsets, repeat=len(names)):
                yield KripkeModel(frozenset(range(n)), rel, dict(zip(names, combo)))


# ---------------------------------------------------------------- LC oracle

DEFAULT_BUDGET = {"atoms": 3, "length": 9}


def oracle_budget() -> dict[str, int]:
    """Guard bounds, overridable as ``LATERPROOF_BUDGET="atoms=4,length=11"``."""
    budget = dict(DEFAULT_BUDGET)
    raw = os.environ.get("LATERPROOF_BUDGET", "").strip()
    if raw:
        for item in raw.split(","):
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in budget:
                raise ValueError(f"LATERPROOF_BUDGET: unknown key {key!r}")
            budget[key] = int(value)
    return budget


def chain_model(n: int, starts: Mapping[str, int]) -> KripkeModel:
    """Chain ``0 R 1 R ... R n-1`` (transitively closed) where atom ``p``
    holds from world ``starts[p]`` onwards (``n`` means nowhere)."""
    rel = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return KripkeModel.build(range(n), rel, {p: range(t, n) for p, t in starts.items()})


def _chain_truth(f: Formula, names: list[str], n: int) -> tuple[np.ndarray, dict]:
    """Truth table of ``f`` on the ``n``-chain for every persistent valuation:
    boolean array ``[valuation, world]``."""
    grids = np.meshgrid(*[np.arange(n + 1)] * len(names), indexing="ij") if names else []
    starts = {p: g.reshape(-1) for p, g in zip(names, grids)}
    count = (n + 1) ** len(names)
    world = np.arange(n)

    def all_from(x: np.ndarray, strict: bool) -> np.ndarray:
        # x[:, i] holds for all j >= i (or j > i)
        acc = np.logical_and.accumulate(x[:, ::-1], axis=1)[:, ::-1]
        if not strict:
            return acc
        out = np.ones_like(acc)
        out[:, :-1] = acc[:, 1:]
        return out

    memo: dict = {}

    def go(g: Formula) -> np.ndarray:
        if g in memo:
            return memo[g]
        if isinstance(g, Atom):
            r = world[None, :] >= starts[g.name][:, None]
        elif isinstance(g, Top):
            r = np.ones((count, n), bool)
        elif isinstance(g, Bot):
            r = np.zeros((count, n), bool)
        elif isinstance(g, And):
            r = go(g.left) & go(g.right)
        elif isinstance(g, Or):
            r = go(g.left) | go(g.right)
        elif isinstance(g, Imp):
            r = all_from(~go(g.left) | go(g.right), strict=False)
        elif isinstance(g, Simp):
            r = all_from(~go(g.left) | go(g.right), strict=True)
        elif isinstance(g, Later):
            r = all_from(go(g.body), strict=True)
        else:
            raise TypeError(f"not a formula: {g!r}")
        memo[g] = r
        return r

    return go(f), starts


def lc_refuting_chain(f: Formula, *, budget: Mapping[str, int] | None = None) -> KripkeModel | None:
    """Smallest rooted linear model refuting ``f`` at its root (world 0),
    searching chains of 1..length(f)+1 worlds, or None if ``f`` holds on all.

    Every world ``i`` of the longest chain generates a chain of ``n - i``
    worlds, and every valuation of a shorter chain arises this way, so
    checking all worlds of the longest chain covers every shorter chain.
    """
    budget = dict(budget or oracle_budget())
    names = sorted(atoms(f))
    if len(names) > budget["atoms"] or length(f) > budget["length"]:
        raise BudgetExceeded(
            f"oracle guard: {len(names)} atoms (max {budget['atoms']}), "
            f"length {length(f)} (max {budget['length']})")
    n = length(f) + 1
    truth, starts = _chain_truth(f, names, n)
    bad = ~truth
    if not bad.any():
        return None
    # prefer the shortest generated chain: the deepest refuting world
    v, i = max(zip(*np.nonzero(bad)), key=lambda vi: (vi[1], -vi[0]))
    size = n - int(i)
    return chain_model(size, {p: max(0, int(starts[p][v]) - int(i)) for p in names})


def lc_validity_oracle(f: Formula, *, budget: Mapping[str, int] | None = None) -> bool:
    """Brute-force LC validity over all small rooted linear models."""
    return lc_refuting_chain(f, budget=budget) is None


# ---------------------------------------------------------------- topos of trees


def _lookup(a: Mapping[str, float], name: str) -> float:
    try:
        return a[name]
    except KeyError:
        raise UnassignedAtom(name) from None


def trees_value(a: Mapping[str, float], f: Formula) -> float:
    """Truth value in N ∪ {∞}: ``f`` holds exactly at stages ``j <= value``."""
    if isinstance(f, Atom):
        return _lookup(a, f.name)
    if isinstance(f, Top):
        return INF
    if isinstance(f, Bot):
        return 0
    if isinstance(f, And):
        return min(trees_value(a, f.left), trees_value(a, f.right))
    if isinstance(f, Or):
        return max(trees_value(a, f.left), trees_value(a, f.right))
    if isinstance(f, Later):
        return trees_value(a, f.body) + 1
    if isinstance(f, (Imp, Simp)):
        lo, hi = trees_value(a, f.left), trees_value(a, f.right)
        if lo <= hi:
            return INF
        return hi if isinstance(f, Imp) else hi + 1
    raise TypeError(f"not a formula: {f!r}")


def forces_trees(a: Mapping[str, float], j: int, f: Formula) -> bool:
    """Kripke-Joyal forcing at stage ``j >= 1``, straight from the clauses."""
    if j < 1:
        raise ValueError("stages start at 1")
    if isinstance(f, Atom):
        return j <= _lookup(a, f.name)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return forces_trees(a, j, f.left) and forces_trees(a, j, f.right)
    if isinstance(f, Or):
        return forces_trees(a, j, f.left) or forces_trees(a, j, f.right)
    if isinstance(f, Imp):
        return all(not forces_trees(a, k, f.left) or forces_trees(a, k, f.right)
                   for k in range(1, j + 1))
    if isinstance(f, Simp):
        return all(not forces_trees(a, k, f.left) or forces_trees(a, k, f.right)
                   for k in range(1, j))
    if isinstance(f, Later):
        return all(forces_trees(a, k, f.body) for k in range(1, j))
    raise TypeError(f"not a formula: {f!r}")


def trees_valid_bounded(f: Formula, values: Iterable[float] = (0, 1, 2, 3, 4, INF)) -> bool:
    """Whether ``f`` takes value ∞ under every assignment drawn from ``values``."""
    names = sorted(atoms(f))
    values = list(values)
    for combo in itertools.product(values, repeat=len(names)):
        if trees_value(dict(zip(names, combo)), f) != INF:
            return False
    return True
