#!/usr/bin/env python3
"""Writes tests/golden/ from a brute force independent of the C++ code.

Fundamental solutions come from sympy; X_l from the integer recurrence;
sums of S-units by lookup in the full set of units up to max X_l.
"""
import json
import math
import pathlib

from sympy.solvers.diophantine.diophantine import diop_DN

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"


def x_seq(d, l_max):
    x1, y1 = diop_DN(d, 1)[0]
    xs, x, y = [], x1, y1
    for _ in range(l_max):
        xs.append(x)
        x, y = x1 * x + d * y1 * y, x1 * y + y1 * x
    return xs


def units_upto(primes, bound):
    units = {1}
    for p in primes:
        grown = set()
        for u in units:
            while u <= bound:
                grown.add(u)
                u *= p
        units = grown
    return units


def exponents(x, primes):
    out = []
    for p in primes:
        e = 0
        while x % p == 0:
            x //= p
            e += 1
        out.append(e)
    return out if x == 1 else None


def scan(d_max, l_max, primes, r, ordered):
    seqs = {d: x_seq(d, l_max) for d in range(2, d_max + 1) if math.isqrt(d) ** 2 != d}
    units = units_upto(primes, max(max(s) for s in seqs.values())) if r > 1 else set()
    found = []
    for d, xs in seqs.items():
        for l, x in enumerate(xs, 1):
            if r == 1:
                e = exponents(x, primes)
                ok = e is not None and (not ordered or e[0] <= e[1])
            else:
                ok = any(x - u in units and x - u <= u for u in units if 2 * u >= x and u < x)
            if ok:
                found.append({"d": d, "l": l, "X": str(x)})
    return found


def multi(found):
    per = {}
    for f in found:
        per.setdefault(f["d"], set()).add(f["l"])
    return [d for d, ls in sorted(per.items()) if len(ls) >= 2]


def write(name, params, found):
    body = dict(params, findings=found, multi_solution_d=multi(found))
    (OUT / name).write_text(json.dumps(body, indent=1) + "\n")


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    write("oracle_scan_d10_l5.json", {"d_max": 10, "l_max": 5, "primes": [2, 3], "r": 1, "ordered": True},
          scan(10, 5, [2, 3], 1, True))
    write("oracle_r2_d100_l10.json", {"d_max": 100, "l_max": 10, "primes": [2, 3, 5], "r": 2, "ordered": False},
          scan(100, 10, [2, 3, 5], 2, False))
    write("oracle_r1_d1000_l6.json", {"d_max": 1000, "l_max": 6, "primes": [2, 3], "r": 1, "ordered": False},
          scan(1000, 6, [2, 3], 1, False))
