"""Multicolor Ramsey numbers R_r(s): brute force where feasible, recursive bounds elsewhere."""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb
from typing import Optional

from .errors import BudgetExceeded, DomainError


def has_mono_clique(n: int, coloring: dict, s: int) -> bool:
    """coloring maps each edge (i, j), i < j, of K_n to a color."""
    for verts in itertools.combinations(range(n), s):
        cols = {coloring[e] for e in itertools.combinations(verts, 2)}
        if len(cols) == 1:
            return True
    return False


def pentagon_coloring() -> dict:
    """K_5 with the 5-cycle in color 0 and its complement in color 1."""
    return {(i, j): 0 if (j - i) % 5 in (1, 4) else 1 for i, j in itertools.combinations(range(5), 2)}


def every_coloring_has_clique(n: int, s: int, r: int = 2) -> bool:
    edges = list(itertools.combinations(range(n), 2))
    return all(has_mono_clique(n, dict(zip(edges, cols)), s)
               for cols in itertools.product(range(r), repeat=len(edges)))


@lru_cache(maxsize=None)
def _brute_r23() -> int:
    if has_mono_clique(5, pentagon_coloring(), 3):
        raise AssertionError("pentagon coloring has a monochromatic triangle")
    if not every_coloring_has_clique(6, 3):
        raise AssertionError("some 2-coloring of K_6 avoids monochromatic triangles")
    return 6


def _exact(r: int, s: int) -> Optional[int]:
    if s == 1:
        return 1
    if s == 2:
        return 2
    if (r, s) == (2, 3):
        return _brute_r23()
    return None


def upper_bound(r: int, s: int) -> int:
    """R_2(s) <= C(2s-2, s-1); R_r(s) <= r(R_{r-1}(s) - 1) + 2; exact values where known."""
    e = _exact(r, s)
    if e is not None:
        return e
    if r == 2:
        return comb(2 * s - 2, s - 1)
    return r * (upper_bound(r - 1, s) - 1) + 2


def ramsey_value(r: int, s: int, require_exact: bool = False) -> tuple[Optional[int], int]:
    if r < 2 or s < 2:
        raise DomainError("need r >= 2 colors and cliques of size s >= 2")
    e = _exact(r, s)
    if e is None and require_exact:
        raise BudgetExceeded(f"R_{r}({s}) is beyond exhaustive search")
    return e, upper_bound(r, s)


def step4_constant(N: int, k: int) -> int:
    """N + R_2(N) + ... + R_k(N), each term by its exact value or upper bound."""
    if N < 1 or k < 1:
        raise DomainError("need N >= 1 and k >= 1")
    return N + sum(upper_bound(r, N) for r in range(2, k + 1))
