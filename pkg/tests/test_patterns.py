import itertools
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from aslab.carriers import parse_carrier
from aslab.errors import NonIntegralInput, ResidueMismatch, SearchExhausted
from aslab.hahn import HahnElem
from aslab.patterns import (IPPattern, IPnPattern, TP2Pattern, brute_consistent, consistent, format_pattern,
                            gen_ip, gen_ipn, gen_tp2, incidence_preserved, lift_pattern, parse_pattern, verify,
                            verify_ip, verify_ipn, verify_tp2)
from helpers import ratfuncs

FIXTURES = Path(__file__).parent / "fixtures" / "patterns"
FQ = parse_carrier("F2((Q))")


def complement_sum(o, rows, J):
    acc = o.zero()
    for i, a in enumerate(rows):
        if not J >> i & 1:
            acc = acc + a
    return acc


def monomial_ip(o, m):
    rows = [o.parse(f"t^{i}") for i in range(m)]
    return IPPattern(o, rows, {J: complement_sum(o, rows, J) for J in range(2**m)})


def test_monomial_ip_example_matches_generator():
    pat = monomial_ip(FQ, 3)
    assert verify_ip(pat).verified
    assert gen_ip(FQ, 3) == pat


def test_empty_patterns():
    empty = IPPattern(FQ, [], {0: FQ.zero()})
    assert verify_ip(empty).verified
    g = gen_ip(FQ, 0)
    assert g.m == 0 and verify_ip(g).verified
    lifted = lift_pattern(IPPattern(parse_carrier("F4"), [], {}), parse_carrier("F4((s))"))
    assert lifted.rows == [] and lifted.cols == {}


def test_corrupted_column():
    pat = monomial_ip(FQ, 3)
    pat.cols[0] = FQ.one()
    # 1/t and 1/t^2 lie in ℘ by telescoping, 1 itself does not
    assert verify_ip(pat).mismatches == [(1, 0), (2, 0)]
    pat.cols[0] = FQ.parse("t + t^2")
    assert verify_ip(pat).mismatches == [(0, 0)]


def test_ipn_example_matches_generator():
    a1 = [FQ.parse(f"t^{i}") for i in range(2)]
    a2 = [FQ.parse(f"t^{3 * j}") for j in range(2)]
    pat = IPnPattern(FQ, [a1, a2], {})
    cells = pat.cells()
    for J in range(2**4):
        acc = FQ.zero()
        for idx, (i, j) in enumerate(cells):
            if not J >> idx & 1:
                acc = acc + FQ.parse(f"t^{i + 3 * j}")
        pat.cols[J] = acc
    assert verify_ipn(pat).verified
    assert gen_ipn(FQ, 2, 2) == pat


def test_ipn_with_one_grid_is_ip():
    ip = monomial_ip(FQ, 3)
    ipn = IPnPattern(FQ, [ip.rows], dict(ip.cols))
    r1, r2 = verify_ip(ip), verify_ipn(ipn)
    assert {(c[0], J): v for (c, J), v in r2.incidence.items()} == r1.incidence


def test_ipn_corruption_reports_forced_cells():
    pat = gen_ipn(FQ, 2, 2)
    full = 2**4 - 1
    pat.cols[full] = FQ.one()
    # φ(1; a·b) fails only where a·b = 1, the cell (0, 0)
    assert verify_ipn(pat).mismatches == [((0, 0), full)]


F4 = parse_carrier("F4")


def test_tp2_coset_example():
    pat = parse_pattern((FIXTURES / "tp2_F4_cosets.txt").read_text())
    rep = verify_tp2(pat)
    assert rep.verified
    assert all(not ok for _, _, ok in rep.rows) and len(rep.paths) == 4


def test_tp2_equal_cells_fail_row_check():
    c = (F4.one(), F4.zero())
    rep = verify_tp2(TP2Pattern(F4, [[c, c]], 2))
    assert rep.mismatches == [("row", 0, (0, 1))]


def test_tp2_single_cell():
    pat = gen_tp2(parse_carrier("F2((t))"), 1, 1)
    assert verify_tp2(pat).verified and pat.shape == (1, 1)


def test_tp2_collapse_over_divisible_group():
    with pytest.raises(SearchExhausted):
        gen_tp2(FQ, 2, 3)


@pytest.mark.parametrize("m", range(1, 11))
def test_monomial_ip_up_to_ten(m):
    rep = verify_ip(gen_ip(FQ, m))
    assert rep.verified and len(rep.incidence) == m * 2**m


@pytest.mark.parametrize("q", ["F4", "F8", "F9", "F16"])
def test_consistency_matches_enumeration(q):
    o = parse_carrier(q)
    els = list(o.elements())
    for a, z, a2, z2 in itertools.islice(itertools.product(els[1:5], els[:4], els[1:5], els[:4]), 200):
        conds = [(a, z), (a2, z2)]
        assert consistent(o, conds)[0] == brute_consistent(o, conds)
        assert consistent(o, conds[:1])[0] == brute_consistent(o, conds[:1])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["F4", "F9", "F16"]), st.lists(st.tuples(st.integers(1, 15), st.integers(0, 15)),
                                                      min_size=1, max_size=3))
def test_consistency_random(q, raw):
    o = parse_carrier(q)
    F = o.field
    conds = [(F.from_index(a % (F.q - 1) + 1), F.from_index(z % F.q)) for a, z in raw]
    ok, x = consistent(o, conds)
    assert ok == brute_consistent(o, conds)
    if ok:
        assert all(o.sat_psi(x, a, z) for a, z in conds)


# -- lifting ------------------------------------------------------------------------


def fixture_patterns():
    return sorted(FIXTURES.glob("*.txt"))


@pytest.mark.parametrize("path", fixture_patterns(), ids=lambda p: p.stem)
def test_lift_preserves_incidence(path):
    pat = parse_pattern(path.read_text())
    target = parse_carrier(f"{pat.carrier.name}((s))")
    for pert in (None, target.parse("s + s^3")):
        lifted = lift_pattern(pat, target, pert)
        assert incidence_preserved(pat, lifted)


def test_lift_errors():
    pat = parse_pattern((FIXTURES / "ip_F4_r1.txt").read_text())
    with pytest.raises(ResidueMismatch):
        lift_pattern(pat, parse_carrier("F2((s))"))
    with pytest.raises(ResidueMismatch):
        lift_pattern(pat, parse_carrier("Z2"))
    target = parse_carrier("F4((s))")
    with pytest.raises(NonIntegralInput):
        lift_pattern(pat, target, target.parse("s^(-1)"))


def test_lift_residue_example():
    o = parse_carrier("F4((s))")
    w = F4.parse("[0,1]")
    src = IPPattern(F4, [F4.one()], {0: w, 1: F4.one()})
    lifted = lift_pattern(src, o, lambda role, key: o.parse("s") if key == 0 else None)
    assert o.fmt(lifted.cols[0]) == "[0,1] + s"
    assert verify(lifted).incidence == verify(src).incidence
    assert verify(lifted).verified


# -- file format --------------------------------------------------------------------

CARRIERS = ["F4", "F9", "F2((Q))", "F3((Z))", "F2((t))", "F4((s))", "F2(t)", "F3(t)"]


@st.composite
def elements(draw, o):
    if hasattr(o, "field"):
        return o.field.from_index(draw(st.integers(0, o.field.q - 1)))
    if hasattr(o, "base"):
        F = o.base
        dens = [1] if o.group.kind == "Z" else [1, 2, 3]
        terms = draw(st.lists(st.tuples(st.integers(-6, 6), st.sampled_from(dens), st.integers(1, F.q - 1)),
                              max_size=3))
        return HahnElem(F, o.group, [(Fraction(n, d), F.from_index(c)) for n, d, c in terms])
    return draw(ratfuncs(o.p, max_deg=4))


@st.composite
def patterns(draw):
    o = parse_carrier(draw(st.sampled_from(CARRIERS)))
    kind = draw(st.sampled_from(["ip", "ipn", "tp2"]))
    m = draw(st.integers(0 if kind == "ip" else 1, 3))
    if kind == "ip":
        rows = [draw(elements(o)) for _ in range(m)]
        return IPPattern(o, rows, {J: draw(elements(o)) for J in range(2**m)})
    if kind == "ipn":
        n = draw(st.integers(1, 2))
        grids = [[draw(elements(o)) for _ in range(m)] for _ in range(n)]
        keys = draw(st.sets(st.integers(0, 2 ** (m**n) - 1), max_size=4))
        return IPnPattern(o, grids, {J: draw(elements(o)) for J in sorted(keys)})
    r = draw(st.integers(1, 3))
    grid = [[(draw(elements(o)), draw(elements(o))) for _ in range(m)] for _ in range(r)]
    return TP2Pattern(o, grid, draw(st.integers(2, 3)))


@settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(patterns())
def test_pattern_file_roundtrip(pat):
    text = format_pattern(pat)
    back = parse_pattern(text)
    assert back == pat
    assert format_pattern(back) == text


def test_generation_is_deterministic():
    o = parse_carrier("F8")
    assert gen_tp2(o, 2, 2, seed=3) == gen_tp2(o, 2, 2, seed=3)
    assert format_pattern(gen_ip(FQ, 4)) == format_pattern(gen_ip(FQ, 4))
