"""Two-dimensional uncertain linguistic values and their arithmetic.

A value ([a, b], [c, d]) pairs an interval judgement on a 7-term scale with
an interval of reliability on a 5-term scale. Arithmetic acts on the first
interval and keeps the weaker reliability.
"""
from lingconsensus import ScaleConfig, TwoDimULV, compare, expectation, hamming_distance

sc = ScaleConfig(l=7, z=5)

good_sure = TwoDimULV(5, 5, 3, 4, sc)
fair_unsure = TwoDimULV(3, 4, 1, 2, sc)

print("sum       ", good_sure + fair_unsure)
print("product   ", good_sure * fair_unsure)
print("0.5 * x   ", 0.5 * good_sure)
print("x ** 2    ", fair_unsure ** 2)

# Expectation folds both dimensions into a single score in [0, 1].
for name, v in (("good_sure", good_sure), ("fair_unsure", fair_unsure)):
    print(f"E({name}) = {expectation(v):.4f}")

print("distance  ", round(hamming_distance(good_sure, fair_unsure), 4))

# A confident "good" beats a hesitant "very good".
hesitant = TwoDimULV(6, 6, 0, 1, sc)
print("compare   ", compare(good_sure, hesitant))
