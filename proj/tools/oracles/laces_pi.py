#!/usr/bin/env python3
"""Oracle for lace-expansion coefficients on Z^d.

Two independent routes:
  (1) graph route: pi_m(x) as a sum over walks of J[0,m], where J is the sum
      over *all* connected graphs of prod U_st, classified by the size N of
      the lace extracted with the greedy rule; yields pi_m^{(N)}(x) >= 0.
  (2) recursion route: pi_m(x) recovered from walk counts via
      c_n(x) = (c_1 * c_{n-1})(x) + sum_{m=2}^n (pi_m * c_{n-m})(x),
      solved forward as a triangular system.
Both must agree; selected values are frozen into the C++ tests.
"""
import argparse
import itertools
from collections import defaultdict


def nn_steps(d):
    out = []
    for i in range(d):
        for s in (1, -1):
            e = [0] * d
            e[i] = s
            out.append(tuple(e))
    return sorted(out)


def is_connected(edges, a, b):
    """(a,b) is covered by the union of *open* intervals (s,t), st in edges,
    and a,b are both edge endpoints.  Abutting edges leave the shared
    endpoint uncovered, so {(0,1),(1,2)} is not connected on [0,2]."""
    if a == b:
        return True
    if not edges:
        return False
    if min(s for s, _ in edges) != a or max(t for _, t in edges) != b:
        return False
    for c in range(a, b):  # unit segment (c, c+1)
        if not any(s <= c < t for s, t in edges):
            return False
    for c in range(a + 1, b):  # interior lattice point c
        if not any(s < c < t for s, t in edges):
            return False
    return True


def lace_of(edges, a, b):
    """Greedy minimal connected subgraph: t1 = max{t: (a,t)}, then repeatedly
    t_{i+1} = max{t: exists s < t_i with (s,t)}, s_{i+1} = min{s: (s,t_{i+1})}."""
    assert is_connected(edges, a, b)
    t1 = max(t for s, t in edges if s == a)
    lace = [(a, t1)]
    ti = t1
    while ti < b:
        tnext = max(t for s, t in edges if s < ti)
        assert tnext > ti, "greedy rule must advance on a connected graph"
        snext = min(s for s, t in edges if t == tnext)
        lace.append((snext, tnext))
        ti = tnext
    return tuple(lace)


def pi_tables_graph_route(d, mmax):
    """pi^{(N)}_m(x) via per-walk connected-subgraph sums."""
    steps = nn_steps(d)
    piN = defaultdict(int)  # (m, N, x) -> value
    for m in range(1, mmax + 1):
        for choice in itertools.product(steps, repeat=m):
            w = [tuple([0] * d)]
            for s in choice:
                w.append(tuple(p + ds for p, ds in zip(w[-1], s)))
            edges = [(i, j) for i in range(m) for j in range(i + 1, m + 1)
                     if w[i] == w[j]]
            if not edges:
                continue
            x = w[m]
            # all subsets of the equality edge set that connect [0,m]
            for r in range(1, len(edges) + 1):
                for sub in itertools.combinations(edges, r):
                    if is_connected(list(sub), 0, m):
                        N = len(lace_of(list(sub), 0, m))
                        # prod U_st over sub = (-1)^r; pi^{(N)} = (-1)^N * sum
                        piN[(m, N, x)] += (-1) ** N * (-1) ** r
    return piN


def saw_tables(d, nmax):
    steps = nn_steps(d)
    cx = [defaultdict(int) for _ in range(nmax + 1)]
    visited = {tuple([0] * d)}

    def rec(pos, n):
        cx[n][pos] += 1
        if n == nmax:
            return
        for s in steps:
            q = tuple(p + ds for p, ds in zip(pos, s))
            if q in visited:
                continue
            visited.add(q)
            rec(q, n + 1)
            visited.remove(q)

    rec(tuple([0] * d), 0)
    return cx


def conv(t1, t2):
    out = defaultdict(int)
    for x1, v1 in t1.items():
        for x2, v2 in t2.items():
            out[tuple(a + b for a, b in zip(x1, x2))] += v1 * v2
    return out


def pi_tables_recursion_route(d, mmax):
    cx = saw_tables(d, mmax)
    pi = [defaultdict(int) for _ in range(mmax + 1)]
    for n in range(2, mmax + 1):
        rhs = conv(cx[1], cx[n - 1])
        for m in range(2, n):
            for x, v in conv(pi[m], cx[n - m]).items():
                rhs[x] += v
        for x in set(cx[n]) | set(rhs):
            val = cx[n].get(x, 0) - rhs.get(x, 0)
            if val:
                pi[n][x] = val
    return pi


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--mmax", type=int, default=6)
    args = ap.parse_args()
    d, mmax = args.d, args.mmax

    piN = pi_tables_graph_route(d, mmax)
    assert all(v >= 0 for v in piN.values()), "pi^{(N)} must be nonnegative"

    e1 = tuple([1] + [0] * (d - 1))
    zero = tuple([0] * d)
    print(f"# d={d} mmax={mmax}")
    print("pi^{(1)}_2(0)  :", piN.get((2, 1, zero), 0))
    print("pi^{(2)}_3(e1) :", piN.get((3, 2, e1), 0))
    nmaxN = max(N for (_, N, _) in piN) if piN else 0
    for m in range(2, mmax + 1):
        hat = [sum(v for (mm, N, _), v in piN.items() if mm == m and N == k)
               for k in range(1, nmaxN + 1)]
        print(f"pi_hat^(N)_{m}(0) for N=1..: {hat}")

    # signed sum pi_m(x) = sum_N (-1)^N pi^{(N)}_m(x), against route (2)
    pi_graph = [defaultdict(int) for _ in range(mmax + 1)]
    for (m, N, x), v in piN.items():
        pi_graph[m][x] += (-1) ** N * v
    pi_rec = pi_tables_recursion_route(d, mmax)
    for m in range(2, mmax + 1):
        g = {x: v for x, v in pi_graph[m].items() if v}
        r = {x: v for x, v in pi_rec[m].items() if v}
        assert g == r, (m, g, r)
    print("graph route == recursion route for all m <=", mmax)
    print("pi_2(x):", dict(sorted(pi_graph[2].items())))
    print("pi_4(x):", dict(sorted(pi_graph[4].items())))
    print("pi_hat_m(0) signed:", [sum(pi_graph[m].values()) for m in range(mmax + 1)])


if __name__ == "__main__":
    main()
