"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations


def corr_bruteforce(a: list[int], b: list[int], tau: int) -> int:
    L = len(a)
    return sum((-1) ** (a[i] ^ b[(i + tau) % L]) for i in range(L))


def bm_textbook(bits: list[int]) -> tuple[int, list[int]]:
    """Classical Berlekamp-Massey over GF(2) on lists; returns (l, c_0..c_l)."""
    n = len(bits)
    c, b = [1] + [0] * n, [1] + [0] * n
    l, m = 0, -1
    for i in range(n):
        d = bits[i]
        for j in range(1, l + 1):
            d ^= c[j] & bits[i - j]
        if d:
            t = c[:]
            shift = i - m
            for j in range(n + 1 - shift):
                c[j + shift] ^= b[j]
            if 2 * l <= i:
                l, m, b = i + 1 - l, i, t
    return l, c[: l + 1]


def diagonal_fill(L: int, u: int, v: int) -> list[list[int]]:
    """Literal walk down the main diagonal, wrapping at the edges."""
    grid = [[-1] * v for _ in range(u)]
    i = j = 0
    for k in range(L):
        grid[i][j] = k
        i, j = (i + 1) % u, (j + 1) % v
    return grid


def hamming_bruteforce(a, b, m: int, s: int, d: int) -> int:
    n = len(a)
    return sum(
        1
        for j in range(n)
        if a[(j + s) % n] is not None and b[j] is not None and (a[(j + s) % n] - b[j] - d) % m == 0
    )
