from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from aslab.errors import NonPositiveVp, ParseError
from aslab.ogroup import (GroupDescriptor, Int, Rat, RealLike, ZinvP, og_finitely_ramified, og_p_divisible,
                          og_roughly_p_divisible, og_standard_decomp, parse_elem, parse_group)
from helpers import elem_p_divisible, interval_samples, oracle_decomp

P = 3


def G(*comps):
    return GroupDescriptor(comps)


def test_decomp_examples():
    d = og_standard_decomp(G(Rat), G(Rat).element([1]))
    assert (d.delta0_start, d.deltap_start, d.quotient) == (0, 1, Rat)
    g = G(Int, ZinvP(P))
    d = og_standard_decomp(g, g.element([0, 1]))
    assert (d.delta0_start, d.deltap_start, d.quotient) == (1, 2, ZinvP(P))
    assert d.tail_str(g, 1) == "0 * Z[1/3^inf]" and d.tail_str(g, 2) == "{0}"
    g = G(Int, Int)
    d = og_standard_decomp(g, g.element([1, 0]))
    assert (d.delta0_start, d.quotient) == (0, Int) and d.tail_str(g, 1) == "0 * Z"


def test_divisibility_examples():
    assert og_p_divisible(G(Rat), P)
    g = G(Int, ZinvP(P))
    assert og_roughly_p_divisible(g, g.element([0, 1]), P)
    assert not og_p_divisible(g, P)
    assert not og_roughly_p_divisible(G(Int), G(Int).element([1]), P)


def test_ramification_examples():
    assert og_finitely_ramified(G(Int), G(Int).element([1])) == 1
    assert og_finitely_ramified(G(Int), G(Int).element([3])) == 3
    assert og_finitely_ramified(G(ZinvP(P)), G(ZinvP(P)).element([1])) is None


def test_nonpositive_vp():
    with pytest.raises(NonPositiveVp):
        og_standard_decomp(G(Int, Int), G(Int, Int).element([-1, 5]))
    with pytest.raises(NonPositiveVp):
        og_standard_decomp(G(Int), G(Int).element([0]))


def test_parse_group_roundtrip():
    g = parse_group("Z * Q * Z[1/p^inf] * R", 5)
    assert g.components == (Int, Rat, ZinvP(5), RealLike)
    assert parse_group(str(g)) == g
    assert parse_elem(g, "0, 1/2, 3/25, 7").coords[2] == Fraction(3, 25)
    with pytest.raises(ParseError):
        parse_group("Z * N")


classes = st.sampled_from([Int, Rat, RealLike, ZinvP(2), ZinvP(3)])


@st.composite
def group_and_vp(draw):
    comps = draw(st.lists(classes, min_size=1, max_size=4))
    g = GroupDescriptor(tuple(comps))
    j = draw(st.integers(0, len(comps) - 1))
    coords = [Fraction(0)] * len(comps)
    coords[j] = Fraction(draw(st.integers(1, 6)))
    for i in range(j + 1, len(comps)):
        coords[i] = Fraction(draw(st.integers(-6, 6)))
    return g, g.element(coords)


@given(group_and_vp())
def test_decomp_matches_tail_oracle(gv):
    g, vp = gv
    d = og_standard_decomp(g, vp)
    assert (d.delta0_start, d.deltap_start) == oracle_decomp(g, vp)
    assert d.deltap_start == d.delta0_start + 1
    assert d.quotient == g.components[d.delta0_start]


@given(group_and_vp(), st.sampled_from([2, 3]))
def test_rough_divisibility_matches_sampling(gv, p):
    g, vp = gv
    rough = og_roughly_p_divisible(g, vp, p)
    assert rough == all(elem_p_divisible(g, c, p) for c in interval_samples(g, vp))
    if og_p_divisible(g, p):
        assert rough


@given(group_and_vp())
def test_leading_index_monotone(gv):
    g, vp = gv
    j = og_standard_decomp(g, vp).delta0_start
    for i in range(j):
        coords = [Fraction(0)] * len(g)
        coords[i] = Fraction(1)
        assert og_standard_decomp(g, g.element(coords)).delta0_start <= j


@given(group_and_vp())
def test_finitely_ramified_iff_discrete_quotient(gv):
    g, vp = gv
    e = og_finitely_ramified(g, vp)
    d = og_standard_decomp(g, vp)
    assert (e is not None) == (d.quotient == Int)
    if e is not None:
        assert e == vp.coords[d.delta0_start] >= 1
