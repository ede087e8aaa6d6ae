"""The query language: evaluation with witnesses and satisfiability search.

Everything here is also reachable from the command line::

    guiselogic eval demos/system_c.gl --queries --json
    guiselogic sat  demos/system_c.gl -e "Int(G, {d})"
"""

from pathlib import Path

from guiselogic import (
    eval_formula,
    format_formula,
    parse_formula,
    parse_model,
    sat_search,
    validate_model,
)

HERE = Path(__file__).parent

text = (HERE / "system_c.gl").read_text()
document = parse_model(text, name="system_c")
model = validate_model(document)

# Named queries carried by the model file.
for name, query_text in document.queries:
    outcome = eval_formula(query_text, model)
    print(f"{name:16s} {outcome.formula:28s} -> {outcome.verdict}")
    for entry in outcome.trace:
        print(f"    {entry}")
print()

# Formulas parse to trees that print back to themselves.
formula = parse_formula("forall G. R(G, g_ac) -> exists H. R(H, G)", model,
                        allow_free_guise=False)
print("round trip:", format_formula(formula))
print("verdict   :", eval_formula(formula, model).verdict)
print()

# Satisfiability search binds one free guise variable to every subset of the
# universe in canonical order and returns the least satisfying bundle.
for query in ("Int(G, {d})", "R(G, g_bc) and not Int(G, {a})",
              "Int(G, {a}) and not Int(G, {b})"):
    witness = sat_search(query, model)
    shown = model.format_proposition(witness) if witness is not None else "unsat"
    print(f"sat {query:35s} -> {shown}")
