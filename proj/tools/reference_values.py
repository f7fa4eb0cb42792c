#!/usr/bin/env python3
"""Independent high-precision reference values for the test suite.

Re-implements the continued-fraction, a(M) and Dujella-Petho computations
with mpmath floats at 300 digits (no interval arithmetic) and prints the
numbers frozen in tests/. Run: python3 tools/reference_values.py
"""
import mpmath as mp

mp.mp.dps = 300


def cf(x, n):
    out = []
    for _ in range(n):
        a = int(mp.floor(x))
        out.append(a)
        x = 1 / (x - a)
    return out


def convergents(qs):
    p2, p1, q2, q1 = 0, 1, 1, 0
    out = []
    for a in qs:
        p, q = a * p1 + p2, a * q1 + q2
        out.append((p, q))
        p2, p1, q2, q1 = p1, p, q1, q
    return out


def a_of_m(qs, M):
    best = 0
    for t, (p, q) in enumerate(convergents(qs)):
        best = max(best, qs[t])
        if q > M:
            return t, q, best
    raise RuntimeError("expansion too short")


def dist(x):
    return abs(x - mp.nint(x))


def dujella_petho(tau, mu, A, B, M, tries=26):
    qs = cf(tau, 140)
    conv = convergents(qs)
    start = next(i for i, (_, q) in enumerate(conv) if q > 6 * M)
    for i in range(start, start + tries):
        q = conv[i][1]
        eps = dist(mu * q) - M * dist(tau * q)
        if eps > 0:
            x = mp.log(A * q / eps) / mp.log(B)
            return int(mp.ceil(x)) - 1, q, eps, i
    return None


def candidate(a1, a2, j, M):
    x1 = 2**a1 * 3**a2
    lg = mp.log(x1 + mp.sqrt(mp.mpf(x1) ** 2 - 1))
    return dujella_petho(mp.log(3) / lg, j * mp.log(2) / lg, 2 / lg, 3, M)


if __name__ == "__main__":
    t = mp.log(2) / mp.log(3)
    qs = cf(t, 70)
    print("cf log2/log3:", qs[:20])
    for M in (10, 862 * 10**26, 178 * 10**17, 12 * 10**18, 1179 * 10**16):
        print("a(M)", M, a_of_m(qs, M))
    for M in (862 * 10**26, 178 * 10**17, 12 * 10**18, 1179 * 10**16):
        N, q, a = a_of_m(qs, M)
        # 3^{a2/2} < 32·M²·M·(a(M)+2)
        print("legendre exponent", M, mp.nstr(2 * mp.log(32 * mp.mpf(M) ** 3 * (a + 2)) / mp.log(3), 12))
    print("acosh 3:", mp.nstr(mp.acosh(3), 30))
    print("shrink(1,10,0):", mp.nstr(20 * mp.log(10), 20))
    M4 = 1179 * 10**16
    for a1, a2, j in ((1, 1, 1), (5, 10, 3), (0, 1, 1), (5, 5, 1), (62, 195, 1)):
        r = candidate(a1, a2, j, M4)
        if r:
            print("dp", (a1, a2, j), "bound", r[0], "q", r[1], "eps", mp.nstr(r[2], 12), "index", r[3])
        else:
            print("dp", (a1, a2, j), "none")
