"""Where sums of few powers leave holes, measured exactly.

Run: python3 demos/gaps_and_windows.py
"""
from fractions import Fraction

from cantorwaring import TERNARY, PowerSumProblem
from cantorwaring.coverage import enumerate_image, gap_report, three_power_epsilon, \
    two_power_window

cov = enumerate_image(PowerSumProblem(TERNARY, 2, 2), 2)
print("two squares, level 2:", len(cov.intervals), "intervals, sup gap", gap_report(cov).sup_gap)

for m in (2, 3):
    print(f"m={m} windows missed by two powers:")
    for n, (a, b) in two_power_window(TERNARY, m, 6, cross_check_up_to=4):
        print(f"  n={n}: ({a}, {b})")

print("three powers cover [3 - eps, 3]:")
for m in (1, 2, 5, 10, 32):
    res = three_power_epsilon(m)
    print(f"  m={m:2d}  n={res.n}  eps={float(res.epsilon):.6f}  (>= 1/2: {res.epsilon >= Fraction(1, 2)})")
