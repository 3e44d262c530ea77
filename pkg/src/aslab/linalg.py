"""Gaussian elimination over the prime field Z/p.

Vectors are lists of ints in range(p); matrices are lists of rows.
"""
from __future__ import annotations


def rref(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list[int]], p: int) -> int:
    return len(rref(rows, p)[1])


def solve(a: list[list[int]], b: list[int], p: int, ncols: int | None = None) -> list[int] | None:
    """One solution of a·x = b over Z/p, or None if the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if not a:
        return [0] * ncols
    aug = [list(row) + [bi % p] for row, bi in zip(a, b)]
    red, pivots = rref(aug, p)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    return x


def nullspace(a: list[list[int]], p: int, ncols: int) -> list[list[int]]:
    """Basis of {x : a·x = 0}."""
    if not a:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(a, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, c in zip(red, pivots):
            v[c] = (-row[f]) % p
        basis.append(v)
    return basis
