import json
import pathlib
import random
import re

import jsonschema
import pytest

from laterproof.calculus import Derivation, check_derivation, lc_step_instance
from laterproof.corpus import random_formula
from laterproof.formula import parse
from laterproof.render import (DERIVATION_SCHEMA, MODEL_SCHEMA, derivation_from_json,
                               derivation_latex, derivation_text, derivation_to_json,
                               formula_latex, model_from_json, model_text, model_to_json,
                               sequent_from_json, sequent_latex, sequent_to_json)
from laterproof.search import prove_formula
from laterproof.semantics import KripkeModel, frame_check
from laterproof.sequent import parse_sequent


def test_schemas_are_valid_json_schema():
    jsonschema.Draft202012Validator.check_schema(DERIVATION_SCHEMA)
    jsonschema.Draft202012Validator.check_schema(MODEL_SCHEMA)


def test_derivation_json_roundtrip_random():
    rng = random.Random(21)
    seen = 0
    for _ in range(200):
        f = random_formula(rng, ("p", "q"), 8)
        for logic in ("lc", "km"):
            out = prove_formula(f, logic)
            if out.provable:
                doc = json.loads(json.dumps(derivation_to_json(out.derivation, logic)))
                jsonschema.validate(doc, DERIVATION_SCHEMA)
                d, lg = derivation_from_json(doc)
                assert lg == logic and d == out.derivation
                assert check_derivation(d, lg)
                seen += 1
            else:
                doc = json.loads(json.dumps(model_to_json(out.model, out.refuting_world)))
                jsonschema.validate(doc, MODEL_SCHEMA)
                m, w = model_from_json(doc)
                assert m == out.model and w == out.refuting_world
                assert frame_check(m, logic) == []
    assert seen > 20


def test_json_rejects_wrong_schema_tag():
    with pytest.raises(ValueError):
        derivation_from_json({"schema": "other", "logic": "lc", "root": {}})
    with pytest.raises(ValueError):
        model_from_json({"schema": "laterproof.derivation/1"})


def test_schema_rejects_unknown_rule():
    d = derivation_to_json(prove_formula(parse("T"), "lc").derivation, "lc")
    d["root"]["rule"] = "cut"
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(d, DERIVATION_SCHEMA)


def test_sequent_json():
    s = parse_sequent("q, p => @r")
    obj = sequent_to_json(s)
    assert obj == {"antecedent": ["p", "q"], "succedent": ["@r"]}
    assert sequent_from_json(obj) == s


def test_derivation_text_shape():
    text = derivation_text(prove_formula(parse("(@p->p)->p"), "lc").derivation)
    lines = text.splitlines()
    assert lines[0] == "=> (@p -> p) -> p    [imp-right on (@p -> p) -> p]"
    assert lines[1].startswith("  @p -> p => p    [imp-left")
    assert any("[step on @p]" in line for line in lines)
    assert all(line.endswith("]") for line in lines)


def test_model_text():
    m = KripkeModel.build([0, 1], [(0, 1)], {"p": [1], "q": []})
    assert model_text(m, 0).splitlines() == [
        "worlds: 0, 1", "relation: 0->1", "valuation: p: {1}; q: {}", "refuting world: 0"]
    assert "(empty)" in model_text(KripkeModel.build([0]))


def test_latex_formulas():
    assert formula_latex(parse("(@p -> p) ~> x_1")) == "(\\triangleright p \\to p) \\rhd x\\_1"
    assert sequent_latex(parse_sequent("p & q => F")) == "p \\land q \\Rightarrow \\bot"
    assert sequent_latex(parse_sequent("=> T")) == "\\Rightarrow \\top"


def test_latex_derivation_balanced():
    body = derivation_latex(prove_formula(parse("(p->q)|(q->p)"), "lc").derivation)
    lines = body.splitlines()
    axioms = sum(line.startswith("\\AxiomC") for line in lines)
    # each inference consumes its premises and produces one conclusion
    stack = 0
    for line in lines:
        if line.startswith("\\AxiomC"):
            stack += 1
        for n, cmd in enumerate(["UnaryInfC", "BinaryInfC", "TrinaryInfC"], 1):
            if line.startswith("\\" + cmd):
                assert stack >= n
                stack -= n - 1
    assert stack == 1 and axioms >= 1
    assert lines[-1] == "\\UnaryInfC{$\\Rightarrow (p \\to q) \\lor (q \\to p)$}"


def test_latex_rejects_wide_steps():
    s = parse_sequent("=> " + ", ".join(f"a{i} ~> b{i}" for i in range(6)))
    inst = lc_step_instance(s)
    d = Derivation(s, "step", inst.principal, tuple(Derivation(p, "id") for p in inst.premises))
    with pytest.raises(ValueError):
        derivation_latex(d)


def test_documented_schemas_match_code():
    text = (pathlib.Path(__file__).parent.parent / "docs" / "json-schemas.md").read_text()
    blocks = [json.loads(b) for b in re.findall(r"```json\n(.*?)\n```", text, re.S)]
    assert blocks[0] == DERIVATION_SCHEMA and blocks[2] == MODEL_SCHEMA
    jsonschema.validate(blocks[1], DERIVATION_SCHEMA)
    jsonschema.validate(blocks[3], MODEL_SCHEMA)
