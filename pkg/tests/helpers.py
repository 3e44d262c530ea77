"""Shared hypothesis strategies and small independent oracles."""
from __future__ import annotations

import itertools

from hypothesis import strategies as st

from aslab.ff import GF, field_of_order
from aslab.ratfunc import RatFunc

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


def prime_powers(limit: int) -> list[tuple[int, int]]:
    out = []
    for p in range(2, limit + 1):
        if all(p % d for d in range(2, int(p**0.5) + 1)):
            k = 1
            while p**k <= limit:
                out.append((p, k))
                k += 1
    return sorted(out, key=lambda pk: pk[0] ** pk[1])


@st.composite
def ff_elems(draw, q=None, n=1):
    F = field_of_order(q if q is not None else draw(st.sampled_from(SMALL_Q)))
    picks = [F.from_index(draw(st.integers(0, F.q - 1))) for _ in range(n)]
    return picks[0] if n == 1 else tuple(picks)


@st.composite
def ratfuncs(draw, p=None, max_deg=8):
    """Laurent polynomials plus principal parts at rational poles."""
    p = p if p is not None else draw(st.sampled_from([2, 3]))
    x = RatFunc.const(p, draw(st.integers(0, p - 1)))
    for n in draw(st.lists(st.integers(-max_deg, max_deg), max_size=4)):
        x = x + RatFunc.monomial(p, draw(st.integers(1, p - 1)), n)
    for _ in range(draw(st.integers(0, 2))):
        c = draw(st.integers(0, p - 1))
        j = draw(st.integers(1, max_deg))
        lin = RatFunc(p, [(-c) % p, 1])
        x = x + RatFunc.const(p, draw(st.integers(1, p - 1))) / lin**j
    return x


@st.composite
def split_ratfuncs(draw, p):
    """Nonzero c·t^n·(t - b)^j: dividing by it keeps every pole rational."""
    c = draw(st.integers(1, p - 1))
    b = draw(st.integers(0, p - 1))
    lin = RatFunc(p, [(-b) % p, 1])
    return RatFunc.monomial(p, c, draw(st.integers(-3, 3))) * lin ** draw(st.integers(-2, 2))


def brute_wp_image(F) -> set:
    return {x**F.p - x for x in F.elements()}


def all_subsets(n: int):
    return itertools.chain.from_iterable(itertools.combinations(range(n), r) for r in range(n + 1))


__all__ = ["GF", "SMALL_Q", "prime_powers", "ff_elems", "ratfuncs", "split_ratfuncs", "brute_wp_image", "all_subsets"]


# -- ordered groups: an oracle that enumerates tails and samples [0, vp] ------------------


def tail_contains(start: int, coords) -> bool:
    return all(c == 0 for c in coords[:start])


def oracle_decomp(G, vp) -> tuple[int, int]:
    """Smallest tail containing vp and largest tail avoiding it, by enumeration."""
    n = len(G)
    containing = [s for s in range(n + 1) if tail_contains(s, vp.coords)]
    avoiding = [s for s in range(n + 1) if not tail_contains(s, vp.coords)]
    return max(containing), min(avoiding)


def interval_samples(G, vp):
    """Elements of [0, vp]: vp itself, small units in every lower component, vp minus them."""
    from fractions import Fraction

    j = vp.leading_index()
    out = [vp.coords]
    for i in range(j, len(G)):
        unit = [Fraction(0)] * len(G)
        unit[i] = Fraction(1)
        if i > j or unit[i] <= vp.coords[j]:
            out.append(tuple(unit))
            out.append(tuple(a - b for a, b in zip(vp.coords, unit)))
    return [c for c in out if G.element(c).coords >= (0,) * len(G) and c <= vp.coords]


def elem_p_divisible(G, coords, p: int) -> bool:
    return all(cls.contains(c / p) for cls, c in zip(G.components, coords))


# -- chain conditions: bitmask brute force over subset enumeration ------------------------


def to_mask(G, H) -> int:
    index = {x: i for i, x in enumerate(G.elements())}
    return sum(1 << index[x] for x in H.elements)


def _and_all(masks, full):
    acc = full
    for m in masks:
        acc &= m
    return acc


def brute_bs(masks, N, full) -> bool:
    for sub in itertools.combinations(range(len(masks)), N + 1):
        meet = _and_all((masks[i] for i in sub), full)
        if all(_and_all((masks[i] for i in sub if i != j), full) != meet for j in sub):
            return False
    return True


def brute_bsh(grid: dict, N, full) -> bool:
    dims = len(next(iter(grid)))
    shape = [max(k[a] for k in grid) + 1 for a in range(dims)]
    for choice in itertools.product(*(itertools.combinations(range(s), N + 1) for s in shape)):
        cells = list(itertools.product(*choice))
        meet = _and_all((grid[c] for c in cells), full)
        if all(_and_all((grid[c] for c in cells if c != k), full) != meet for k in cells):
            return False
    return True


def brute_cks_indices(masks, full) -> list[int]:
    meet = _and_all(masks, full)
    if len(masks) == 1:
        return [1]
    return [bin(_and_all((m for j, m in enumerate(masks) if j != i), full)).count("1") // bin(meet).count("1")
            for i in range(len(masks))]


def all_subgroups(G) -> list:
    """Every subgroup of G, as spans of subsets of elements, deduplicated (small G only)."""
    from aslab.conditions import subgroup

    seen = {}
    frontier = [subgroup(G, [])]
    while frontier:
        nxt = []
        for H in frontier:
            if H.elements in seen:
                continue
            seen[H.elements] = H
            for x in G.elements():
                if x not in H.elements:
                    nxt.append(subgroup(G, list(H.gens) + [x]))
        frontier = nxt
    return sorted(seen.values(), key=lambda H: (len(H), sorted(H.elements)))
