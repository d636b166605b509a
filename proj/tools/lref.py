#!/usr/bin/env python3
"""High-precision reference values of L_f(s) for the test suite.

Uses the unrotated Mellin split at y = 1,

    L(s) = sum lambda(n) [n^-s Q(w, 2 pi n) + chi(s) n^(s-1) Q(w', 2 pi n)],

with w = s + (k-1)/2, w' = 1 - s + (k-1)/2, evaluated with mpmath at a
working precision large enough to absorb the cancellation at height t.
Coefficients come from a direct q-series product in Python integers.

usage: lref.py K SIGMA T [T ...]
       lref.py zero K T_GUESS   (root of Z_f near T_GUESS)
"""
import sys
import mpmath as mp

SIGMA_E = {0: 1, 4: 240, 6: -504, 8: 480, 10: -264, 14: -24}


def coeffs(k, n_max):
    eta = [0] * (n_max + 1)
    eta[0] = 1
    for m in range(1, n_max + 1):
        for _ in range(24):
            for i in range(n_max, m - 1, -1):
                eta[i] -= eta[i - m]
    j = k - 12
    e = [0] * (n_max + 1)
    e[0] = 1
    if j:
        for n in range(1, n_max + 1):
            e[n] = SIGMA_E[j] * sum(d ** (j - 1) for d in range(1, n + 1) if n % d == 0)
    return [0] + [sum(eta[i] * e[n - 1 - i] for i in range(n)) for n in range(1, n_max + 1)]


def lvalue(k, s, a):
    h = mp.mpf(k - 1) / 2
    w, wp = s + h, 1 - s + h
    chi = (-1) ** (k // 2) * (2 * mp.pi) ** (2 * s - 1) * mp.gamma(wp) / mp.gamma(w)
    total = mp.mpc(0)
    for n in range(1, len(a)):
        lam = a[n] / mp.mpf(n) ** h
        x = 2 * mp.pi * n
        term = lam * (mp.mpf(n) ** (-s) * mp.gammainc(w, x, regularized=True)
                      + chi * mp.mpf(n) ** (s - 1) * mp.gammainc(wp, x, regularized=True))
        total += term
        if n > 5 and abs(term) < mp.mpf(10) ** -30:
            break
    return total


def zvalue(k, t, a):
    s = mp.mpc(mp.mpf(1) / 2, t)
    theta = mp.im(mp.loggamma(mp.mpf(k) / 2 + 1j * t)) - t * mp.log(2 * mp.pi)
    if k % 4 == 2:
        theta += mp.pi / 2
    return mp.re(mp.expj(theta) * lvalue(k, s, a))


def zero(k, guess):
    a = coeffs(k, 60)
    mp.mp.dps = 40 + int(abs(guess) * 0.7)
    root = mp.findroot(lambda t: zvalue(k, t, a), mp.mpf(guess))
    print(mp.nstr(root, 20))


def main():
    if sys.argv[1] == "zero":
        zero(int(sys.argv[2]), float(sys.argv[3]))
        return
    k = int(sys.argv[1])
    sigma = mp.mpf(sys.argv[2])
    a = coeffs(k, 60)
    for t in sys.argv[3:]:
        t = mp.mpf(t)
        mp.mp.dps = 40 + int(abs(t) * 0.7)
        v = lvalue(k, mp.mpc(sigma, t), a)
        mp.mp.dps = 20
        print("%s %s %s %s" % (mp.nstr(sigma, 6), mp.nstr(t, 10), mp.nstr(v.real, 17), mp.nstr(v.imag, 17)))


if __name__ == "__main__":
    main()
