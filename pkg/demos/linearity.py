"""
What linearity buys
===================

``(p -> q) | (q -> p)`` holds on every chain but fails on a fork. The
KM search returns that fork, and we evaluate the formula on it by hand.
"""

from laterproof.formula import parse
from laterproof.render import model_text
from laterproof.search import prove_formula
from laterproof.semantics import forces, frame_check

f = parse("(p -> q) | (q -> p)")
print("lc:", prove_formula(f, "lc").provable)

km = prove_formula(f, "km")
m, root = km.model, km.refuting_world
print(model_text(m, root))

# a legal KM frame that is not a chain
print("km frame problems:", frame_check(m, "km"))
print("lc frame problems:", frame_check(m, "lc"))

for sub in ("p -> q", "q -> p", "(p -> q) | (q -> p)"):
    print(f"root forces {sub}: {forces(m, root, parse(sub))}")

# the same contrast for distributing @ over ->
g = parse("(@p -> @q) -> @(p -> q)")
print("lc:", prove_formula(g, "lc").provable, " km:", prove_formula(g, "km").provable)
