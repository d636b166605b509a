#!/usr/bin/env python3
"""Reference grid for Q(w, z) = Gamma(w, z) / Gamma(w) at 30 digits.

Covers the arguments the L-function oracle feeds the regularized
incomplete gamma: w = s + (k-1)/2 or 1 - s + (k-1)/2 and
z = 2 pi n y0^{+-1} on the rotated split. Prints C++ initializer rows
{wr, wi, zr, zi, qr, qi}.
"""
import math
import random
import mpmath as mp

mp.mp.dps = 30
random.seed(4)
rows = []
while len(rows) < 600:
    k = random.choice([12, 16, 18, 20, 22, 26])
    sigma = random.choice([-2.0, -0.3, 0.0, 0.5, 0.75, 1.0, 1.3, 1.5, 2.0, 3.0, random.uniform(-0.3, 1.5)])
    t = random.choice([0.0, 1.0, 5.0, 20.0, 60.0, 120.0, 200.0, random.uniform(-200, 200)])
    split = random.choice([1.0, 1.2])
    dual = random.random() < 0.5
    n = random.choice([1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987, 1440])
    theta0 = math.pi / 2 if t == 0 else min(math.pi / 2, 8 / abs(t))
    phi = math.copysign(math.pi / 2 - theta0, t) if t != 0 else 0.0
    y0 = split * complex(math.cos(phi), math.sin(phi))
    h = (k - 1) / 2
    s = complex(sigma, t)
    w = (1 - s + h) if dual else (s + h)
    z = 2 * math.pi * n * (1 / y0 if dual else y0)
    q = mp.gammainc(mp.mpc(w), mp.mpc(z), regularized=True)
    if abs(q) < 1e-280 or abs(q) > 1e280:
        continue
    rows.append((w.real, w.imag, z.real, z.imag, float(q.real), float(q.imag)))
print("// Generated by tools/qref.py.")
for r in rows:
    print("{%r, %r, %r, %r, %r, %r}," % r)
