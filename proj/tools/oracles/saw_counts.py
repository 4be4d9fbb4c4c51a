#!/usr/bin/env python3
"""Brute-force enumeration oracle for self-avoiding walk quantities on Z^d.

Produces the constants that are frozen into the C++ unit tests: walk counts,
endpoint-resolved counts, bridge counts (total and by span), half-space walk
counts, self-avoiding returns, and polygon counts.  Deliberately naive:
recursive DFS with a Python dict as the visited set, no symmetry tricks.
"""
import argparse
from collections import defaultdict


def nn_steps(d):
    out = []
    for i in range(d):
        for s in (1, -1):
            e = [0] * d
            e[i] = s
            out.append(tuple(e))
    return sorted(out)


def enumerate_saw(d, nmax):
    """Counts per length, endpoint tables, bridge/half-space/return data."""
    steps = nn_steps(d)
    c = [0] * (nmax + 1)
    cx = [defaultdict(int) for _ in range(nmax + 1)]
    b = [0] * (nmax + 1)
    bspan = [defaultdict(int) for _ in range(nmax + 1)]
    h = [0] * (nmax + 1)
    ret = [0] * (nmax + 1)

    origin = tuple([0] * d)
    visited = {origin}
    walk = [origin]

    def rec(pos, n, maxx1):
        c[n] += 1
        cx[n][pos] += 1
        if pos != origin and all(p[0] >= 1 for p in walk[1:]):
            h[n] += 1
            if pos[0] == maxx1:
                b[n] += 1
                bspan[n][pos[0]] += 1
        if n == nmax:
            return
        for s in steps:
            q = tuple(p + ds for p, ds in zip(pos, s))
            if q in visited:
                if q == origin and n + 1 <= nmax:
                    ret[n + 1] += 1  # closes at the origin; interior distinct
                continue
            visited.add(q)
            walk.append(q)
            rec(q, n + 1, max(maxx1, q[0]))
            walk.pop()
            visited.remove(q)

    rec(origin, 0, 0)
    # length-0 conventions: one empty bridge and one empty half-space walk
    b[0] = 1
    h[0] = 1
    return c, cx, b, bspan, h, ret


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--nmax", type=int, default=10)
    args = ap.parse_args()
    d, nmax = args.d, args.nmax

    c, cx, b, bspan, h, ret = enumerate_saw(d, nmax)
    e1 = tuple([1] + [0] * (d - 1))

    print(f"# d={d} nmax={nmax}")
    print("c_n        :", c)
    print("c_n(e1)    :", [cx[n].get(e1, 0) for n in range(nmax + 1)])
    print("b_n        :", b)
    print("h_n        :", h)
    print("returns_m  :", ret)
    qs = {}
    for m in range(4, nmax + 1, 2):
        num = ret[m]
        assert num % (2 * m) == 0, (m, num)
        qs[m] = num // (2 * m)
    print("q_{2n}     :", qs)
    for n in (min(6, nmax),):
        print(f"b_{n} by span:", dict(sorted(bspan[n].items())))
    # spot endpoint tables for the smallest orders
    for n in (2, 3):
        if n <= nmax:
            print(f"c_{n}(x)    :", dict(sorted(cx[n].items())))


if __name__ == "__main__":
    main()
