"""The lattice of closed sets and the family-intersection reading of R.

Closed sets ordered by inclusion form a complete lattice: meet is
intersection, join closes the union.  The relation R(g, h) holds exactly
when g's intention family meets the downset of h's bundle.
"""

from pathlib import Path

from guiselogic import build_lattice, export_dot, galois_check, parse_model, validate_model

HERE = Path(__file__).parent

model = validate_model(parse_model((HERE / "system_c.gl").read_text(), name="system_c"))

lattice = build_lattice(model)
print(f"{len(lattice.elements)} elements,"
      f" top {model.format_proposition(lattice.top)},"
      f" bottom {model.format_proposition(lattice.bottom)}")
print()

# Sample meets and joins: join must close the union.
samples = [({"b"}, {"c"}), ({"a", "b"}, {"b", "c", "d"}), ({"d"}, {"a", "b"})]
for first, second in samples:
    meet = lattice.meet(first, second)
    join = lattice.join(first, second)
    print(f"meet({model.format_proposition(first)}, {model.format_proposition(second)})"
          f" = {model.format_proposition(meet)}   "
          f"join = {model.format_proposition(join)}")
print()

# Covering edges form the Hasse diagram; the DOT text is deterministic.
print("covering edges:")
for lower, upper in lattice.covers:
    print(f"  {model.format_proposition(lattice.elements[lower])}"
          f" -> {model.format_proposition(lattice.elements[upper])}")
print()
print("DOT export:")
print(export_dot(lattice))

# Relation verdicts agree with explicit family/downset intersection on
# every declared pair.
outcome = galois_check(model)
print(f"galois check: {outcome.pairs_checked} pairs,"
      f" {len(outcome.counterexamples)} disagreements")
