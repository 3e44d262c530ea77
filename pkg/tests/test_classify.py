import copy
from dataclasses import fields
from pathlib import Path

import pytest
from hypothesis import assume, given, settings, strategies as st

from aslab.classify import (PSI_TEXT, VFDescriptor, classify, compose, format_descriptor, format_verdict,
                            parse_descriptor, phi_text, ramsey_value, semitame_eval, step4_constant)
from aslab.errors import BudgetExceeded, DomainError, IncompatibleComposition, InconsistentDescriptor, ParseError
from aslab.ogroup import parse_elem, parse_group
from aslab.ramsey import every_coloring_has_clique, has_mono_clique, pentagon_coloring

DESC = Path(__file__).parent / "fixtures" / "descriptors"


def load(name):
    return parse_descriptor((DESC / f"{name}.txt").read_text())


def desc(text):
    return parse_descriptor(text)


def test_fp_q_contradiction_emits_phi_two():
    v = classify(load("fp_q_nip2"))
    assert v.aj_case == "violation"
    facts = {c[0] for c in v.contradictions}
    assert {"k.as_closed", "K.nipn"} <= facts
    assert phi_text(2) in v.formulas


def test_qp_shape_is_finitely_ramified():
    v = classify(load("qp"))
    assert v.aj_case == "mixed_finitely_ramified" and not v.contradictions
    assert v.value("Dp.trivial") is True


def test_root_tower_has_ip_as_pure_field():
    v = classify(load("qp_root_tower"))
    assert v.value("K.nip") is False
    assert phi_text(1) in v.formulas
    rule = next(d.rule for d in v.derived if d.fact == "K.nip")
    assert rule == "coarsening-lift"


def test_semitame_examples():
    assert semitame_eval(desc("char: 0,0\ngroup: Z\nhenselian: true\np_henselian: true\n")) is True
    d = desc("char: 2,2\ngroup: Q\nresidue.perfect: true\ndefectless: true\n")
    assert semitame_eval(d) is True
    assert semitame_eval(desc("char: 2,2\ngroup: Z\n")) is False
    assert semitame_eval(desc("char: 2,2\ngroup: Q\ndefectless: true\n")) is None


def test_compose_examples():
    outer = desc("char: 2,2\ngroup: Q\nhenselian: true\np_henselian: true\nresidue.perfect: true\n"
                 "defectless: true\n")
    inner = desc("char: 2,2\ngroup: Q\nhenselian: true\np_henselian: true\nresidue.perfect: true\n"
                 "defectless: true\n")
    both = compose(outer, inner)
    assert semitame_eval(both) is True and str(both.group) == "Q * Q"
    bad = compose(load("compose_outer_eq0"), load("compose_inner_mixed_tame"))
    assert semitame_eval(bad) is False
    triv = desc("char: 2,2\ntrivial: true\n")
    assert compose(outer, triv) == outer
    with pytest.raises(IncompatibleComposition):
        compose(outer, desc("char: 3,3\ngroup: Z\n"))


def test_inconsistent_descriptors():
    with pytest.raises(InconsistentDescriptor):
        desc("char: 2,3\ngroup: Z\n")
    with pytest.raises(InconsistentDescriptor):
        desc("char: 0,2\ngroup: Z\n")
    with pytest.raises(InconsistentDescriptor):
        desc("char: 2,2\ntrivial: true\ngroup: Z\n")
    with pytest.raises(InconsistentDescriptor):
        desc("char: 2,2\ngroup: Z\nresidue.as_closed: true\nresidue.as_finite: false\n")
    with pytest.raises(ParseError):
        desc("char: 2,2\nbogus: 1\n")


def test_verdict_text_lines():
    text = format_verdict(classify(load("fp_z_ntp2")))
    assert text.startswith("descriptor: F2((t))\naj_case: none\n")
    assert f"formula: {PSI_TEXT}" in text
    assert all(line.startswith(("descriptor:", "aj_case:", "rule: ", "formula: ", "contradiction: "))
               for line in text.splitlines())


@pytest.mark.parametrize("path", sorted(DESC.glob("*.txt")), ids=lambda p: p.stem)
def test_descriptor_roundtrip_and_provenance(path):
    d = parse_descriptor(path.read_text())
    assert parse_descriptor(format_descriptor(d)) == d
    v = classify(d)
    assert all(dv.rule and dv.cite for dv in v.derived)
    assert bool(v.contradictions) == any(len(vals) == 2 for vals in v.facts.values())


# -- monotonicity -----------------------------------------------------------------------

TRI = st.sampled_from([None, True, False])
SHAPES = [((0, 0), "Z", None), ((0, 0), "Q", None), ((2, 2), "Z", None), ((2, 2), "Q", None),
          ((3, 3), "Z * Q", None), ((0, 2), "Z", "1"), ((0, 3), "Z * Z", "1,0"), ((0, 3), "Z[1/p^inf]", "1"),
          ((0, 2), "Q * Z", "0,2"), ((2, 2), None, None)]


@st.composite
def descriptors(draw):
    (ck, cr), g, vp = draw(st.sampled_from(SHAPES))
    d = VFDescriptor()
    d.char_pair = (ck, cr)
    d.trivial = g is None
    if g is not None:
        d.group = parse_group(g, cr or None)
        d.vp = parse_elem(d.group, vp) if vp else None
    d.henselian = draw(st.booleans())
    d.p_henselian = d.henselian or draw(st.booleans())
    for name in ("defectless", "alg_maximal", "sep_alg_maximal"):
        setattr(d, name, draw(TRI))
    for f in fields(d.residue):
        setattr(d.residue, f.name, draw(TRI))
    d.hyp.nip = draw(st.booleans())
    d.hyp.ntp2 = draw(st.booleans())
    try:
        from aslab.classify import check_descriptor

        check_descriptor(d)
    except InconsistentDescriptor:
        assume(False)
    return d


def extensions(d):
    """Descriptors carrying strictly more information than d."""
    out = []
    for f in fields(d.residue):
        if getattr(d.residue, f.name) is None:
            for val in (True, False):
                e = copy.deepcopy(d)
                setattr(e.residue, f.name, val)
                out.append(e)
    for name in ("nip", "ntp2"):
        if not getattr(d.hyp, name):
            e = copy.deepcopy(d)
            setattr(e.hyp, name, True)
            out.append(e)
    if d.hyp.nipn is None:
        e = copy.deepcopy(d)
        e.hyp.nipn = 2
        out.append(e)
    return out


def known(v):
    return {(fact, val) for fact, vals in v.facts.items() for val in vals}


@settings(max_examples=80, deadline=None)
@given(descriptors(), st.data())
def test_chaining_is_monotone(d, data):
    from aslab.classify import check_descriptor

    exts = extensions(d)
    assume(exts)
    e = data.draw(st.sampled_from(exts))
    try:
        check_descriptor(e)
    except InconsistentDescriptor:
        assume(False)
    assert known(classify(d)) <= known(classify(e))


@settings(max_examples=50, deadline=None)
@given(descriptors())
def test_unknown_inputs_stay_unknown(d):
    # with no hypotheses and an unknown residue, nothing is concluded about the residue's NIP status
    d.hyp.nip = d.hyp.ntp2 = False
    d.hyp.nipn = None
    for f in fields(d.residue):
        setattr(d.residue, f.name, None)
    v = classify(d)
    assert v.value("k.nip") is None


# -- Ramsey ---------------------------------------------------------------------------


def test_ramsey_examples():
    assert ramsey_value(2, 3) == (6, 6)
    assert ramsey_value(2, 2) == (2, 2)
    assert ramsey_value(3, 3) == (None, 17)
    assert step4_constant(3, 3) == 26
    with pytest.raises(BudgetExceeded):
        ramsey_value(3, 3, require_exact=True)
    with pytest.raises(DomainError):
        ramsey_value(1, 3)


def test_pentagon_and_k6():
    assert not has_mono_clique(5, pentagon_coloring(), 3)
    assert every_coloring_has_clique(6, 3)
    assert not every_coloring_has_clique(5, 3)


@given(st.integers(1, 6), st.integers(1, 5))
def test_step4_strictly_increasing(N, k):
    c = step4_constant(N, k)
    assert step4_constant(N + 1, k) > c
    assert step4_constant(N, k + 1) > c
    assert step4_constant(N, 1) == N
