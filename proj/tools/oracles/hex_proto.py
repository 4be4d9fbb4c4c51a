#!/usr/bin/env python3
"""Prototype/oracle for the hexagonal-lattice parafermionic observable.

Brick-wall integer coordinates: vertices (x,y) in Z^2, A-type iff x+y even.
Edges: {(x,y),(x+1,y)} always ("slant"), {(x,y),(x,y+1)} iff x+y even
("horizontal" in the true embedding).  True positions:
    pos(x,y) = ((3/2) y + (1/2) [x+y even],  (sqrt3/2) x)
so every A-vertex has unit edge directions {0, 120, 240} degrees and every
B-vertex {60, 180, 300}: direction indices t in 0..5 meaning t*60 degrees.

A mid-edge walk starts at a boundary mid-edge a, traverses distinct vertices,
and ends at any mid-edge; l(walk) = number of vertices visited; the winding
is pi/3 times the sum of +-1 turns.  F_z(x) = sum over walks a->x of
z^l * exp(-i sigma W).  This script checks, in double precision:
  * the three-mid-edge vertex identity around every domain vertex,
  * negative controls (z != z_c or sigma != 5/8),
  * the strip domain S_{T,L}: boundary classification, windings, the
    identity 1 = c_alpha A + B + c_eps E at z_c, monotonicity in L,
  * the telescoped boundary form  sum_b exitdir(b) F(b) = 0 on arbitrary
    simply connected domains.
Small integer walk histograms are frozen into the C++ tests.
"""
import cmath
import math
from collections import defaultdict

ZC = 1.0 / math.sqrt(2.0 + math.sqrt(2.0))
SIGMA = 5.0 / 8.0


def is_a(x, y):
    return (x + y) % 2 == 0


def vertex_edges(x, y):
    """(edge key, direction index from (x,y) to the mid-edge)."""
    if is_a(x, y):
        return [(("S", x, y), 2), (("S", x - 1, y), 4), (("H", x, y), 0)]
    return [(("S", x, y), 1), (("S", x - 1, y), 5), (("H", x, y - 1), 3)]


def edge_endpoints(e):
    kind, x, y = e
    if kind == "S":
        return (x, y), (x + 1, y)
    return (x, y), (x, y + 1)


def enumerate_F(V, a, sigma, z):
    """F values per mid-edge; also integer histograms (l, turn) per mid-edge."""
    V = set(V)
    (u, w) = edge_endpoints(a)
    va = u if u in V else w
    assert (va in V) and not (u in V and w in V), "a must be a boundary mid-edge"
    hist = defaultdict(lambda: defaultdict(int))
    hist[a][(0, 0)] += 1
    dirs = dict(vertex_edges(*va))
    t_in0 = (dirs[a] + 3) % 6
    visited = set()

    def rec(v, t_in, ell, turn):
        visited.add(v)
        for e, t_out in vertex_edges(*v):
            if t_out == (t_in + 3) % 6:
                continue  # the edge we came on
            dturn = (t_out - t_in + 3) % 6 - 3
            assert dturn in (1, -1)
            hist[e][(ell + 1, turn + dturn)] += 1
            p, q = edge_endpoints(e)
            nxt = q if p == v else p
            if nxt in V and nxt not in visited:
                rec(nxt, t_out, ell + 1, turn + dturn)
        visited.discard(v)

    rec(va, t_in0, 0, 0)
    F = {}
    for e, h in hist.items():
        F[e] = sum(cnt * z ** l * cmath.exp(-1j * sigma * t * math.pi / 3)
                   for (l, t), cnt in sorted(h.items()))
    return F, hist


def domain_midedges(V):
    V = set(V)
    inner, boundary = set(), set()
    for v in V:
        for e, _ in vertex_edges(*v):
            p, q = edge_endpoints(e)
            if p in V and q in V:
                inner.add(e)
            else:
                boundary.add(e)
    return inner, boundary


def vertex_identity_residual(V, a, sigma, z):
    F, _ = enumerate_F(V, a, sigma, z)
    worst = 0.0
    for v in V:
        s = 0j
        for e, t in vertex_edges(*v):
            s += cmath.exp(1j * t * math.pi / 3) * F.get(e, 0j)
        worst = max(worst, abs(s))
    return worst


def telescoped_residual(V, a, sigma, z):
    F, _ = enumerate_F(V, a, sigma, z)
    _, boundary = domain_midedges(V)
    s = 0j
    for e in boundary:
        p, q = edge_endpoints(e)
        v = p if p in set(V) else q
        t = dict(vertex_edges(*v))[e]
        s += cmath.exp(1j * t * math.pi / 3) * F[e]
    return abs(s)


def strip(T, L):
    V = [(x, y) for y in range(T + 1)
         for x in range(-2 * L - y, 2 * L + 2 + y + 1)]
    a = ("H", 1, -1)
    return V, a


def strip_parts(T, L):
    V, a = strip(T, L)
    alpha = {("H", x, -1) for x in range(-2 * L + 1, 2 * L + 2, 2)}
    beta = {("H", x, T) for x in range(-2 * L - T, 2 * L + 2 + T + 1)
            if (x + T) % 2 == 0}
    eps = {("S", 2 * L + 2 + y, y) for y in range(T + 1)}
    epsbar = {("S", -2 * L - y - 1, y) for y in range(T + 1)}
    _, boundary = domain_midedges(V)
    assert boundary == alpha | beta | eps | epsbar, "boundary classification"
    return V, a, alpha, beta, eps, epsbar


def strip_sums(T, L, z):
    V, a, alpha, beta, eps, epsbar = strip_parts(T, L)
    _, hist = enumerate_F(V, a, SIGMA, z)
    wind = {}
    sums = {"A": 0.0, "B": 0.0, "E": 0.0}
    for part, name in ((alpha - {a}, "A"), (beta, "B"), (eps | epsbar, "E")):
        for e in part:
            for (l, t), cnt in hist.get(e, {}).items():
                wind.setdefault(name if name != "E" else
                                ("Etop" if e in eps else "Ebot"), set()).add(t)
                sums[name] += cnt * z ** l
    return sums, wind


def main():
    hexV = [(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (2, 1)]
    a_hex = ("S", -1, 0)  # outward edge of vertex (0,0), direction 240
    F, hist = enumerate_F(hexV, a_hex, 0.0, 1.0)
    print("single hexagon, unsigned counts F(sigma=0,z=1):")
    for e in sorted(F):
        print("   ", e, int(round(F[e].real)))
    print("single hexagon residuals:")
    print("  at (sigma=5/8, z=zc)      :", vertex_identity_residual(hexV, a_hex, SIGMA, ZC))
    print("  at (sigma=5/8, z=0.9zc)   :", vertex_identity_residual(hexV, a_hex, SIGMA, 0.9 * ZC))
    print("  at (sigma=1/2, z=zc)      :", vertex_identity_residual(hexV, a_hex, 0.5, ZC))

    two_hex = sorted(set(hexV) | {(0, 2), (1, 2), (2, 2)})  # hexagon stacked above
    print("two-hexagon vertex count:", len(two_hex))
    print("  identity residual (zc)   :", vertex_identity_residual(two_hex, a_hex, SIGMA, ZC))
    print("  telescoped residual (zc) :", telescoped_residual(two_hex, a_hex, SIGMA, ZC))
    print("  telescoped at z=0.5zc    :", telescoped_residual(two_hex, a_hex, SIGMA, 0.5 * ZC))

    c_alpha = math.cos(3 * math.pi / 8)
    c_eps = math.cos(math.pi / 4)
    for (T, L) in ((1, 1), (1, 2), (1, 3), (2, 1), (2, 2)):
        sums, wind = strip_sums(T, L, ZC)
        resid = abs(c_alpha * sums["A"] + sums["B"] + c_eps * sums["E"] - 1.0)
        print(f"strip T={T} L={L}: A={sums['A']:.12f} B={sums['B']:.12f} "
              f"E={sums['E']:.12f} |c_a A + B + c_e E - 1| = {resid:.3e}")
        print("   windings:", {k: sorted(v) for k, v in sorted(wind.items())})
    # monotонicity in L at fixed T
    prev = None
    for L in (1, 2, 3, 4):
        sums, _ = strip_sums(1, L, ZC)
        if prev:
            assert sums["A"] >= prev["A"] - 1e-15 and sums["B"] >= prev["B"] - 1e-15
            assert sums["E"] <= prev["E"] + 1e-15
        prev = sums
    print("A,B nondecreasing and E nonincreasing in L at z_c: ok")
    # small strip histogram freeze: (1,1) part sums as integer histograms
    V, a, alpha, beta, eps, epsbar = strip_parts(1, 1)
    _, hist = enumerate_F(V, a, SIGMA, ZC)
    agg = defaultdict(int)
    for name, part in (("A", alpha - {a}), ("B", beta), ("E", eps | epsbar)):
        for e in part:
            for (l, t), cnt in hist.get(e, {}).items():
                agg[(name, l)] += cnt
    print("strip (1,1) length histograms:", dict(sorted(agg.items())))


if __name__ == "__main__":
    main()
