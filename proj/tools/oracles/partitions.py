#!/usr/bin/env python3
"""Oracle for the number of partitions of A into distinct positive parts.

DP over (value, largest allowed part); also reports the asymptotic ratio
log P_D(A) / (pi*sqrt(A/3)) which should approach 1 from below slowly.
"""
import math


def distinct_partitions(nmax):
    # p[a] = number of partitions of a into distinct parts, built by
    # sweeping parts 1..nmax and updating downward (0/1-knapsack style)
    p = [0] * (nmax + 1)
    p[0] = 1
    for part in range(1, nmax + 1):
        for a in range(nmax, part - 1, -1):
            p[a] += p[a - part]
    return p


def main():
    p = distinct_partitions(5000)
    print("P_D(0..12):", p[: 13])
    print("P_D(20)   :", p[20])
    print("P_D(100)  :", p[100])
    for a in (50, 500, 5000):
        ratio = math.log(p[a]) / (math.pi * math.sqrt(a / 3))
        print(f"A={a:5d}  log P_D / (pi sqrt(A/3)) = {ratio:.6f}")


if __name__ == "__main__":
    main()
