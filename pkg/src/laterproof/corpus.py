"""Formula pools: exhaustive enumeration by size and seeded random sampling."""
from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator, Sequence

from .formula import BOT, TOP, And, Atom, Formula, Imp, Later, Or, Simp

BINARY = (And, Or, Imp, Simp)
CLASSICAL_BINARY = (And, Or, Imp)


@lru_cache(maxsize=None)
def _by_size(size: int, names: tuple[str, ...], constants: bool, binary: tuple, later: bool) -> tuple[Formula, ...]:
    if size == 1:
        leaves: list[Formula] = [Atom(n) for n in names]
        if constants:
            leaves += [TOP, BOT]
        return tuple(leaves)
    out: list[Formula] = []
    if later:
        out.extend(Later(f) for f in _by_size(size - 1, names, constants, binary, later))
    for left_size in range(1, size - 1):
        lefts = _by_size(left_size, names, constants, binary, later)
        rights = _by_size(size - 1 - left_size, names, constants, binary, later)
        for op in binary:
            out.extend(op(a, b) for a in lefts for b in rights)
    return tuple(out)


def enumerate_formulas(max_len: int, names: Sequence[str] = ("p", "q"), *,
                       constants: bool = True, binary: tuple = BINARY,
                       later: bool = True, up_to_renaming: bool = True) -> Iterator[Formula]:
    """Every formula with at most ``max_len`` nodes over ``names``.

    With ``up_to_renaming`` only one representative per atom permutation is
    kept: atoms must first occur in the order given by ``names``.
    """
    names = tuple(names)
    for size in range(1, max_len + 1):
        for f in _by_size(size, names, constants, binary, later):
            if not up_to_renaming or _canonical(f, names):
                yield f


def _canonical(f: Formula, names: tuple[str, ...]) -> bool:
    seen: list[str] = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom) and g.name not in seen:
            seen.append(g.name)
        stack.extend(reversed(g.children()))
    return seen == list(names[:len(seen)])


def random_formula(rng: random.Random, names: Sequence[str] = ("p", "q", "r"), max_len: int = 9, *,
                   constants: bool = True, binary: tuple = BINARY, later: bool = True) -> Formula:
    """A random formula whose size is uniform on ``1..max_len`` (odd sizes
    only when ``later`` is off, since binary trees have odd node counts)."""
    size = rng.randint(1, max_len) if later else rng.randrange(1, max_len + 1, 2)
    return random_formula_of_size(rng, size, names,
                                  constants=constants, binary=binary, later=later)


def random_formula_of_size(rng: random.Random, size: int, names: Sequence[str] = ("p", "q", "r"), *,
                           constants: bool = True, binary: tuple = BINARY, later: bool = True) -> Formula:
    if size == 1:
        leaves: list[Formula] = [Atom(n) for n in names]
        if constants:
            leaves += [TOP, BOT]
        return rng.choice(leaves)
    if not later and size % 2 == 0:
        raise ValueError("without @ every formula has an odd number of nodes")
    if later and (size == 2 or rng.random() < 0.2):
        return Later(random_formula_of_size(rng, size - 1, names, constants=constants,
                                            binary=binary, later=later))
    left = rng.randint(1, size - 2) if later else rng.randrange(1, size - 1, 2)
    op = rng.choice(binary)
    kw = dict(constants=constants, binary=binary, later=later)
    return op(random_formula_of_size(rng, left, names, **kw),
              random_formula_of_size(rng, size - 1 - left, names, **kw))
