"""Text, JSON and LaTeX (bussproofs) renderings of derivations and models.

JSON documents carry a ``schema`` tag; the JSON Schemas below are the
versioned contract and are reproduced in ``docs/json-schemas.md``.
"""
from __future__ import annotations

from typing import Any

from .calculus import STATIC_RULES, Derivation
from .formula import And, Bot, Formula, Imp, Later, Or, Simp, Top, parse, render, sort_formulas, to_text
from .semantics import KripkeModel
from .sequent import TERMINATION_RULES, Sequent

DERIVATION_SCHEMA_ID = "laterproof.derivation/1"
MODEL_SCHEMA_ID = "laterproof.model/1"

RULE_NAMES = list(TERMINATION_RULES) + list(STATIC_RULES) + ["step", "km-simp-right", "km-later-right"]

_SEQUENT_SCHEMA = {
    "type": "object",
    "required": ["antecedent", "succedent"],
    "properties": {
        "antecedent": {"type": "array", "items": {"type": "string"}},
        "succedent": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}

DERIVATION_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": DERIVATION_SCHEMA_ID,
    "type": "object",
    "required": ["schema", "logic", "root"],
    "properties": {
        "schema": {"const": DERIVATION_SCHEMA_ID},
        "logic": {"enum": ["lc", "km"]},
        "root": {"$ref": "#/$defs/node"},
    },
    "$defs": {
        "sequent": _SEQUENT_SCHEMA,
        "node": {
            "type": "object",
            "required": ["sequent", "rule", "principal", "premises"],
            "properties": {
                "sequent": {"$ref": "#/$defs/sequent"},
                "rule": {"enum": RULE_NAMES},
                "principal": {"type": "array", "items": {"type": "string"}},
                "premises": {"type": "array", "items": {"$ref": "#/$defs/node"}},
            },
            "additionalProperties": False,
        },
    },
}

MODEL_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": MODEL_SCHEMA_ID,
    "type": "object",
    "required": ["schema", "worlds", "rel", "valuation"],
    "properties": {
        "schema": {"const": MODEL_SCHEMA_ID},
        "worlds": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
        "rel": {"type": "array",
                "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}},
        "valuation": {"type": "object",
                      "additionalProperties": {"type": "array", "items": {"type": "integer"}}},
        "refuting_world": {"type": "integer"},
    },
    "additionalProperties": False,
}


# ---------------------------------------------------------------- text


def derivation_text(d: Derivation, indent: str = "  ") -> str:
    """Indented tree, conclusion first, premises nested below it."""
    lines: list[str] = []

    def go(node: Derivation, depth: int) -> None:
        label = node.rule
        if node.principal and node.rule not in TERMINATION_RULES:
            label += " on " + ", ".join(map(to_text, node.principal))
        lines.append(f"{indent * depth}{node.sequent}    [{label}]")
        for p in node.premises:
            go(p, depth + 1)

    go(d, 0)
    return "\n".join(lines)


def model_text(m: KripkeModel, refuting_world=None) -> str:
    worlds = sorted(m.worlds)
    edges = sorted(m.rel)
    lines = [
        "worlds: " + ", ".join(map(str, worlds)),
        "relation: " + (", ".join(f"{a}->{b}" for a, b in edges) or "(empty)"),
        "valuation: " + ("; ".join(
            f"{p}: {{{', '.join(map(str, sorted(ws)))}}}" for p, ws in sorted(m.valuation.items()))
            or "(no atoms)"),
    ]
    if refuting_world is not None:
        lines.append(f"refuting world: {refuting_world}")
    return "\n".join(lines)


# ---------------------------------------------------------------- JSON


def sequent_to_json(s: Sequent) -> dict:
    return {"antecedent": [to_text(f) for f in sort_formulas(s.antecedent)],
            "succedent": [to_text(f) for f in sort_formulas(s.succedent)]}


def sequent_from_json(obj: dict) -> Sequent:
    return Sequent.of(map(parse, obj["antecedent"]), map(parse, obj["succedent"]))


def derivation_to_json(d: Derivation, logic: str) -> dict:
    def node(n: Derivation) -> dict:
        return {"sequent": sequent_to_json(n.sequent), "rule": n.rule,
                "principal": [to_text(f) for f in n.principal],
                "premises": [node(p) for p in n.premises]}

    return {"schema": DERIVATION_SCHEMA_ID, "logic": logic, "root": node(d)}


def derivation_from_json(obj: dict) -> tuple[Derivation, str]:
    if obj.get("schema") != DERIVATION_SCHEMA_ID:
        raise ValueError(f"expected schema {DERIVATION_SCHEMA_ID}")

    def node(n: dict) -> Derivation:
        return Derivation(sequent_from_json(n["sequent"]), n["rule"],
                          tuple(parse(t) for t in n["principal"]),
                          tuple(node(p) for p in n["premises"]))

    return node(obj["root"]), obj["logic"]


def model_to_json(m: KripkeModel, refuting_world=None) -> dict:
    out: dict[str, Any] = {
        "schema": MODEL_SCHEMA_ID,
        "worlds": sorted(m.worlds),
        "rel": [list(e) for e in sorted(m.rel)],
        "valuation": {p: sorted(ws) for p, ws in sorted(m.valuation.items())},
    }
    if refuting_world is not None:
        out["refuting_world"] = refuting_world
    return out


def model_from_json(obj: dict) -> tuple[KripkeModel, int | None]:
    if obj.get("schema") != MODEL_SCHEMA_ID:
        raise ValueError(f"expected schema {MODEL_SCHEMA_ID}")
    m = KripkeModel.build(obj["worlds"], (tuple(e) for e in obj["rel"]), obj["valuation"])
    return m, obj.get("refuting_world")


# ---------------------------------------------------------------- LaTeX

LATEX_SYMBOLS = {
    Imp: " \\to ", Simp: " \\rhd ", Or: " \\lor ", And: " \\land ",
    Later: "\\triangleright ", Top: "\\top", Bot: "\\bot",
}

_INFERENCE = {0: None, 1: "UnaryInfC", 2: "BinaryInfC", 3: "TrinaryInfC",
              4: "QuaternaryInfC", 5: "QuinaryInfC"}
_LATEX_RULE = {
    "id": "id", "bot-left": "\\bot L", "top-right": "\\top R",
    "and-left": "\\land L", "and-right": "\\land R", "or-left": "\\lor L",
    "or-right": "\\lor R", "imp-left": "\\to L", "imp-right": "\\to R",
    "step": "step", "km-simp-right": "\\rhd R", "km-later-right": "\\triangleright R",
}


def formula_latex(f: Formula) -> str:
    return render(f, LATEX_SYMBOLS, atom=lambda name: name.replace("_", "\\_"))


def sequent_latex(s: Sequent) -> str:
    left = ", ".join(formula_latex(f) for f in sort_formulas(s.antecedent))
    right = ", ".join(formula_latex(f) for f in sort_formulas(s.succedent))
    return f"{left} \\Rightarrow {right}".strip()


def derivation_latex(d: Derivation) -> str:
    """Body of a bussproofs ``prooftree`` environment.

    bussproofs has no inference with more than five premises; such
    derivations raise ValueError.
    """
    lines: list[str] = []

    def go(node: Derivation) -> None:
        n = len(node.premises)
        if n not in _INFERENCE:
            raise ValueError(f"bussproofs cannot typeset a {n}-premise inference")
        if n == 0:
            lines.append("\\AxiomC{}")
            cmd = "UnaryInfC"
        else:
            for p in node.premises:
                go(p)
            cmd = _INFERENCE[n]
        lines.append(f"\\RightLabel{{\\scriptsize ${_LATEX_RULE.get(node.rule, node.rule)}$}}")
        lines.append(f"\\{cmd}{{${sequent_latex(node.sequent)}$}}")

    go(d)
    return "\n".join(lines)
