"""Pooling several opinions with the generalized weighted average.

The exponent alpha moves the pooled judgement between cautious (alpha < 1)
and optimistic (alpha > 1) readings. Reliability is always the minimum.
"""
from lingconsensus import ScaleConfig, TwoDimULV, dulgwa, expectation

sc = ScaleConfig(7, 5)
opinions = [
    TwoDimULV(5, 5, 2, 3, sc),
    TwoDimULV(4, 4, 3, 4, sc),
    TwoDimULV(2, 3, 2, 3, sc),
]
weights = [0.5, 0.3, 0.2]

for alpha in (-1.0, 0.5, 1.0, 2.0, 4.0):
    pooled = dulgwa(opinions, weights, alpha)
    print(f"alpha={alpha:>4}: [{pooled.a:.3f}, {pooled.b:.3f}] reliability [{pooled.c:g}, {pooled.d:g}]"
          f"  E={expectation(pooled):.4f}")

# Unanimity is preserved exactly at any order.
same = [opinions[0]] * 3
assert dulgwa(same, weights, 3.0) == opinions[0]
print("unanimous panel returns its own opinion:", dulgwa(same, weights, 3.0))
