"""Regenerate the packaged zeta-zero dataset (ordinates up to height 5150).

Needs mpmath; takes about ten minutes.  The packaged file was produced by
exactly this script, so rerunning it reproduces the dataset bit for bit.
"""

import mpmath

HEIGHT = 5150.0
OUT = "src/shortintervals/data/zeta_zeros_5k.txt"

mpmath.mp.dps = 20
ordinates = []
n = 0
while True:
    n += 1
    g = float(mpmath.zetazero(n).imag)
    if g > HEIGHT:
        break
    ordinates.append(g)
    if n % 500 == 0:
        print(f"...{n} zeros, height {g:.1f}", flush=True)

assert all(b > a for a, b in zip(ordinates, ordinates[1:]))
with open(OUT, "w") as f:
    for g in ordinates:
        f.write(f"{g:.10f}\n")
print(f"wrote {len(ordinates)} ordinates, max {ordinates[-1]:.6f}")
