"""Which metrics does each IT service-support process move?

The process -> metric relation is bipartite: projecting a set of
processes through it yields a signed effect per metric, and the
transpose answers the reverse question ("which processes move this
metric?"). Run:  python demos/03_process_effects.py
"""

import numpy as np

from fcmgap import back_project, builtin_models, project

frm = builtin_models()["itil-service-support"].frms["itil"]

print("processes:", ", ".join(frm.domain_nodes))
print("metrics:  ", ", ".join(frm.range_nodes))
print("relation matrix (+1 increases the metric, -1 decreases it):")
print(np.array(frm.relation, dtype=int))
print()

for process in frm.domain_nodes:
    summary = project(frm, frm.domain_activation([process]))
    moved = [f"{node} {direction}s" for node, _, direction in summary.effects
             if direction != "none"]
    print(f"implementing {process}: " + ("; ".join(moved) if moved else "no stated effects"))

print("\nimplementing incident + problem management together:")
summary = project(frm, frm.domain_activation(["IncidentMgmt", "ProblemMgmt"]))
for node, value, direction in summary.effects:
    print(f"  {node}: {direction} (aggregate {value:+.1f})")

print("\nwhich processes pull ResponseTime down?")
activation = [1.0 if node == "ResponseTime" else 0.0 for node in frm.range_nodes]
impact = back_project(frm, activation)
for process, value in zip(frm.domain_nodes, impact):
    if value:
        print(f"  {process}: {value:+.1f}")
