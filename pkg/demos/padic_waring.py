"""The 3-adic Cantor set needs exactly four squares.

Run: python3 demos/padic_waring.py
"""
import random

from cantorwaring.padic import PadicCantorParams, decompose_linear, decompose_power, \
    residue_lower_bound

params = PadicCantorParams.make(3, 3, precision=30)
print("lower bound from residues mod 9:", residue_lower_bound(params, 2, 2))
cert = decompose_power(7, 2, params, 30)
print(f"7 = sum of {cert.size} squares mod 3^{cert.congruence_depth}: replay {cert.replay()}")
for w, x in zip(cert.summands, cert.values()):
    print(f"  word {''.join(map(str, w)) or '-':<32} value {x}")

rng = random.Random(0)
for p, g in ((3, 6), (2, 4), (5, 5)):
    pr = PadicCantorParams.make(p, g, precision=20)
    c = decompose_linear(rng.randrange(p ** 20), pr)
    print(f"p={p} gamma={g}: linear certificate with {c.size} summands, replay {c.replay()}")
