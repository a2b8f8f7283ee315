#!/usr/bin/env python3
"""Brute-force reference values for the sparse-line catalog entry.

Coordinates: x_n = 2n for n <= 0, x_{2k} = 4k and x_{2k-1} = 4k - 3 for k > 0.
The map f sends x_n to x_{-n}. Values printed here are frozen into
tests/test_spaces_catalog.cpp and the acceptance suite.
"""
import itertools


def coord(n):
    if n <= 0:
        return 2 * n
    if n % 2 == 0:
        return 2 * n
    return 2 * n - 1


def defect(N):
    idx = list(range(-N, N + 1))
    best, wit = 0, (idx[0], idx[0])
    for a in idx:
        for b in idx:
            v = abs(abs(coord(-a) - coord(-b)) - abs(coord(a) - coord(b)))
            if v > best:
                best, wit = v, (a, b)
    return best, wit


def growth(N, R):
    pts = [coord(n) for n in range(-N, N + 1)]
    return max(sum(1 for q in pts if abs(p - q) <= R) for p in pts)


def isometries(N):
    pts = [coord(n) for n in range(-N, N + 1)]
    m = len(pts)
    count = 0
    for perm in itertools.permutations(range(m)):
        if all(abs(pts[perm[i]] - pts[perm[j]]) == abs(pts[i] - pts[j])
               for i in range(m) for j in range(i + 1, m)):
            count += 1
    return count


if __name__ == "__main__":
    for N in (5, 20):
        print("defect", N, defect(N))
    print("growth N=20 R=4", growth(20, 4))
    for N in (1, 2, 3):
        print("isometries", N, isometries(N))
