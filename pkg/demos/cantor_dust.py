"""Complex targets as sums of m-th powers of points x + iy with x, y in the Cantor set.

Run: python3 demos/cantor_dust.py
"""
from cantorwaring import TERNARY
from cantorwaring.dust import ComplexRational, decompose_complex, disk_cover_budget, symmetry_map

for m in (3, 4, 5, 6):
    t = ComplexRational.parse("-3/5,4/5")
    cert = decompose_complex(TERNARY, m, t, 30)
    ok, err2 = cert.replay()
    mirror = symmetry_map(cert)
    print(f"m={m}: budget {disk_cover_budget(m)}, used {cert.size}, route {cert.route}")
    print(f"   replay ok={ok}, |err|^2 = {float(err2):.2e}; mirrored target {mirror.target} "
          f"replays: {mirror.replay()[0]}")
