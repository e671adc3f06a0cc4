"""How fast can the walk value be tiny? The left tail and its sandwich.

P(value <= s) decays faster than any power of s; the rate exponent F(s)
captures it up to bounded factors, and a two-sided simplex bound pins the
exact probability once the term count passes its critical value.

Run: python demos/left_tail_sandwich.py
"""

import math

from fragsim import (
    critical_term_count,
    left_tail_exponent,
    left_tail_sandwich,
    log_left_tail_upper,
    min_leaf_bracket,
    min_leaf_center,
    ModelParams,
    perpetuity_cdf,
    solve_min_leaf_center,
)

q = 0.5
print("two-sided sandwich vs the exact CDF (q = 0.5):")
print(f"{'m':>3} {'s':>8} | {'lower':>12} {'exact':>12} {'upper':>12}")
for m, s in ((1, 0.1), (2, 0.1), (3, 0.2), (4, 0.3)):
    lower, upper = left_tail_sandwich(q, m, s)
    exact = perpetuity_cdf(q, m - 1, s).value
    print(f"{m:>3} {s:>8.2f} | {lower:>12.6g} {exact:>12.6g} {upper:>12.6g}")

print()
print("rate exponent and critical term count as s -> 0:")
print(f"{'s':>10} {'F(s)':>10} {'m(s)':>6} {'log upper + F':>14}")
for j in (5, 10, 20, 30):
    s = math.exp(-j)
    F = left_tail_exponent(q, s)
    m = critical_term_count(q, s)
    gap = log_left_tail_upper(q, m, s) + F
    print(f"{'e^-' + str(j):>10} {F:>10.2f} {m:>6} {gap:>14.3f}")
print("(the last column stays bounded: the sandwich upper bound tracks exp(-F))")

print()
params = ModelParams(k=2, alpha=1.0)
print("where the minimum over a generation concentrates (k=2, alpha=1):")
print(f"{'n':>6} {'-log min, center':>18} {'exact center':>14} {'value bracket':>28}")
for n in (10, 100, 1000):
    w = min_leaf_center(params, n)
    z = solve_min_leaf_center(params, n)
    lo, hi = min_leaf_bracket(params, n)
    print(f"{n:>6} {w:>18.4f} {z:>14.4f}   [{lo:.3e}, {hi:.3e}]")
print("(expansion and exact center agree to O(log n / sqrt n))")
