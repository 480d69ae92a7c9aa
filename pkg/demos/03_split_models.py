"""The beta-splitting family: exact weights, endpoints, and consistency.

Run with ``python demos/03_split_models.py``.
"""

from fractions import Fraction

from treepoly import (BETA_COMB, BETA_INFINITY, beta_distribution, beta_rule,
                      derive_lower_rule, display_name, marginalize)

print("Split weights q_n(i) are exact rational functions of the parameter.")
for beta in (Fraction(-3, 2), Fraction(0), Fraction(1), BETA_INFINITY):
    rule = beta_rule(5, beta)
    label = beta if isinstance(beta, Fraction) else "inf"
    weights = "  ".join(str(w) for w in rule.q)
    print(f"  beta={label}: {weights}")

print("\nWell known special points on 4 leaves:")
for label, beta in (("comb limit", BETA_COMB), ("uniform labeled trees", Fraction(-3, 2)),
                    ("even splits", Fraction(0)), ("termwise limit", BETA_INFINITY)):
    dist = beta_distribution(4, beta)
    cells = "  ".join(f"{display_name(t)}: {p}" for t, p in dist.items())
    print(f"  {label:22s} {cells}")

print("\nThe downward recurrence recovers each level from the one above:")
rule6 = beta_rule(6, Fraction(1, 2))
rule5 = derive_lower_rule(rule6)
print(f"  level 6 at beta=1/2: {[str(w) for w in rule6.q]}")
print(f"  derived level 5:     {[str(w) for w in rule5.q]}")
print(f"  direct level 5:      {[str(w) for w in beta_rule(5, Fraction(1, 2)).q]}")

print("\nSampling consistency, checked exactly by marginalization:")
for beta in (Fraction(0), Fraction(-3, 2)):
    left = marginalize(beta_distribution(7, beta), 5)
    right = beta_distribution(5, beta)
    print(f"  beta={beta}: project(level 7) == level 5 ? {left == right}")

print("\nThe five-leaf distribution sweeps a curve as the parameter grows:")
for beta in (Fraction(-2), Fraction(-1), Fraction(0), Fraction(4), Fraction(64), BETA_INFINITY):
    dist = beta_distribution(5, beta)
    label = beta if isinstance(beta, Fraction) else "inf"
    print(f"  beta={str(label):5s} -> ({', '.join(str(p) for p in dist.probs)})")
