"""Hidden patterns of the service-support causal map.

Switch single goals on, iterate the thresholded dynamics, and read off
which other goals end up activated. Run:  python demos/01_hidden_patterns.py
"""

import numpy as np

from fcmgap import builtin_models, combine_fcms, hidden_pattern

doc = builtin_models()["itil-service-support"]
fcm = doc.fcms["binary"]

print("concepts:", ", ".join(fcm.concepts))
print("adjacency matrix (row = cause, column = effect):")
print(np.array(fcm.weights, dtype=int))
print()

for concept in fcm.concepts:
    attractor = hidden_pattern(fcm, fcm.initial_state([concept]))
    print(f"switch on {concept}:")
    for step, state in enumerate(attractor.trajectory):
        print(f"  step {step}: {state.values}")
    lit = attractor.final_state.on_concepts(fcm)
    print(f"  -> {attractor.kind}, period {attractor.period}: "
          f"{{{', '.join(lit)}}}\n")

# two experts drawing the same map reinforce it; clip keeps weights legal
merged = combine_fcms([fcm, fcm], normalization="clip")
print("combining the map with itself and clipping returns the sign pattern:")
print(np.array(merged.weights, dtype=int))

# a weighted variant propagates degrees instead of bits
weighted = doc.fcms["weighted"]
from fcmgap import continuous_run

run = continuous_run(weighted, weighted.initial_state(["ResponseTime"]))
print("\nweighted map, ResponseTime held at 1, saturating propagation:")
for step, state in enumerate(run.trajectory[:4]):
    print(f"  step {step}: {tuple(round(v, 3) for v in state.values)}")
print(f"  converged after {run.iterations} steps")
