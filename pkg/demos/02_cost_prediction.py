"""From four crisp service metrics to a cost-of-support percentage.

Walks the full inference pipeline on one input vector: fuzzification,
rule firing with degrees of support, the clipped output envelope, and
the centroid. Run:  python demos/02_cost_prediction.py
"""

from fcmgap import builtin_models, fuzzify, infer, predict_cost

doc = builtin_models()["itil-service-support"]
rb = doc.rule_bases["cost"]

metrics = {
    "InterruptTime": 420,       # minutes of service interruption per day
    "ResponseTime": 390,        # minutes to respond per day
    "ProcessOrientation": 55,   # % of work done through defined processes
    "AuthorizedChanges": 70,    # % of changes that went through approval
}

print("crisp inputs:")
for name, value in metrics.items():
    unit = rb.input_variable(name).unit
    print(f"  {name} = {value} {unit}")

print("\nfuzzified degrees (nonzero terms):")
for name, value in metrics.items():
    degrees = fuzzify(rb.input_variable(name), value)
    active = {term: round(d, 3) for term, d in degrees.items() if d > 0}
    print(f"  {name}: {active}")

result = infer(rb, metrics)
print("\nrule firing:")
for index, rule in enumerate(rb.rules):
    dos = dict(result.fired_rules).get(index, 0.0)
    marker = "*" if dos > 0 else " "
    print(f" {marker} rule {index + 1} (DoS {dos:.3f}): {rule.describe()}")

print("\nclipped output envelope:")
for term, height in result.aggregate.term_heights:
    if height > 0:
        print(f"  {term} clipped at {height:.3f}")

prediction = predict_cost(rb, metrics)
print(f"\npredicted cost of support: {prediction.crisp:.2f}% of budget "
      f"(centroid over {prediction.defuzz_resolution} samples)")

# sparse rule tables have gaps; those surface as an explicit status
from fcmgap import NoRuleFiredError

try:
    predict_cost(rb, {"InterruptTime": 0, "ResponseTime": 1440,
                      "ProcessOrientation": 50, "AuthorizedChanges": 50})
except NoRuleFiredError as err:
    print("\nuncovered input example: no rule fired; the engine reports the")
    print("fuzzified degrees so you can see which rule is missing:")
    for name, degrees in err.fuzzified.items():
        active = {t: round(d, 3) for t, d in degrees.items() if d > 0}
        print(f"  {name}: {active}")
