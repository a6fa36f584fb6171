"""Write 7 as a sum of sixteen fourth powers of ternary Cantor points.

Run: python3 demos/real_decomposition.py
"""
from fractions import Fraction

from cantorwaring import TERNARY, PowerSumProblem, decompose
from cantorwaring.bounds import check_conditions, profile

m = 4
prof = profile(TERNARY, m)
rep = check_conditions(prof, 2 ** m - prof.k_star)
print(f"m={m}: n*={prof.n_star} k*={prof.k_star} lower bound {prof.lower_bound}, "
      f"conditions certified: {rep.certified}")

cert = decompose(PowerSumProblem(TERNARY, 16, m), Fraction(7), 40)
ok, err = cert.replay()
print(f"route {cert.route}, depth {cert.depth}")
for word, count in cert.entries:
    print(f"  {count:2d} x  {word}")
print(f"replay ok={ok}, |sum - 7| = {float(err):.3e} <= {float(cert.residual_bound):.3e}")
