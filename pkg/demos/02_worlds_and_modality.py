"""Worlds and modality: enumeration policies, box/diamond, announcements.

A world is a theory-closed consistent set of marks; necessity is containment
in every selected world, possibility containment in some world.
"""

import dataclasses
from pathlib import Path

from guiselogic import (
    WorldPolicy,
    announce,
    enumerate_closed_sets,
    eval_box,
    eval_diamond,
    parse_model,
    select_worlds,
    validate_model,
)

HERE = Path(__file__).parent

model = validate_model(parse_model((HERE / "system_c.gl").read_text(), name="system_c"))

# All ten closed sets of the four-mark theory, in canonical order.
closed = enumerate_closed_sets(model)
print(f"{len(closed)} closed sets:")
print("  " + " ".join(model.format_proposition(s) for s in closed))
print()

# The same model under each world policy.
for policy in (WorldPolicy.ALL, WorldPolicy.ALL_NONEMPTY, WorldPolicy.MAXIMAL):
    variant = dataclasses.replace(model, world_policy=policy, declared_worlds=())
    worlds = select_worlds(variant)
    print(f"policy {policy.value:12s} -> {len(worlds)} worlds")
worlds = select_worlds(model)
print(f"policy {model.world_policy.value:12s} -> {len(worlds)} worlds (document order)")
print()

# Modal truths over the five declared worlds.
print("box {b}    :", eval_box({"b"}, worlds), "  (the third world lacks b)")
print("diamond {d}:", eval_diamond({"d"}, worlds))
print()

# A public announcement keeps exactly the worlds containing the announced
# proposition; necessity can only grow, possibility can only shrink.
narrowed = announce(model, {"a", "d"})
after = select_worlds(narrowed)
print("announce {a d} keeps:", " ".join(model.format_proposition(w) for w in after))
print("box {b} after the announcement:", eval_box({"b"}, after))
