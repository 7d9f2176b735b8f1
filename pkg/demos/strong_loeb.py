"""
Proving the strong Loeb axiom
=============================

Decide ``(@p -> p) -> p`` in both logics, print the derivation, then
check it independently and emit it for LaTeX.
"""

from laterproof.calculus import check_derivation
from laterproof.formula import parse
from laterproof.render import derivation_latex, derivation_text
from laterproof.search import prove_formula

goal = parse("(@p -> p) -> p")

for logic in ("lc", "km"):
    outcome = prove_formula(goal, logic)
    print(f"{logic}: provable={outcome.provable}, checked={check_derivation(outcome.derivation, logic)}")

# the LC derivation: rule names and principal formulas in brackets
lc = prove_formula(goal, "lc")
print(derivation_text(lc.derivation))

# body of a bussproofs prooftree environment
print(derivation_latex(lc.derivation))
