"""Forward chaining over symbolic valued-field descriptors.

A descriptor records what is known about (K, v): characteristics, value group,
henselianity, maximality flags, residue-field flags and model-theoretic
hypotheses. Unknown entries stay None; rules only ever add facts, and a fact
that ends up with both truth values is reported as a contradiction.

Modeling choices: Kaplansky means a p-divisible value group with perfect,
AS-closed residue field; SAMK and AMK add separable-algebraic and algebraic
maximality, both taken as input flags.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Callable, Optional

from .errors import DomainError, IncompatibleComposition, InconsistentDescriptor, ParseError
from .ogroup import (ConvexDecomposition, GroupDescriptor, GroupElem, og_p_divisible, og_standard_decomp,
                     parse_elem, parse_group)
from .ramsey import ramsey_value, step4_constant  # noqa: F401  (re-exported)

Tri = Optional[bool]


def tri_and(*xs: Tri) -> Tri:
    if any(x is False for x in xs):
        return False
    if all(x is True for x in xs):
        return True
    return None


def tri_str(x: Tri) -> str:
    return "unknown" if x is None else str(x).lower()


def parse_tri(text: str) -> Tri:
    t = text.strip().lower()
    if t in ("true", "yes", "1"):
        return True
    if t in ("false", "no", "0"):
        return False
    if t in ("unknown", "?", ""):
        return None
    raise ParseError(f"expected true/false/unknown, got {text!r}")


@dataclass
class ResidueFlags:
    finite: Tri = None
    infinite: Tri = None
    perfect: Tri = None
    as_closed: Tri = None
    as_finite: Tri = None
    sep_closed: Tri = None
    pac: Tri = None
    nip: Tri = None
    nipn: Tri = None
    ntp2: Tri = None
    alg_over_prime: Tri = None


@dataclass
class FieldFlags:
    """Facts about K as a pure field, when known independently of v."""

    pac: Tri = None
    sep_closed: Tri = None
    as_closed: Tri = None
    as_finite: Tri = None


@dataclass
class Hypotheses:
    nip: bool = False
    nipn: Optional[int] = None
    ntp2: bool = False
    pure_field: bool = False  # asserted of K alone rather than of (K, v)

    def any(self) -> bool:
        return self.nip or self.nipn is not None or self.ntp2


@dataclass
class VFDescriptor:
    name: str = "K"
    char_pair: tuple[int, int] = (0, 0)
    group: Optional[GroupDescriptor] = None
    vp: Optional[GroupElem] = None
    trivial: bool = False
    henselian: bool = False
    p_henselian: bool = False
    defectless: Tri = None
    alg_maximal: Tri = None
    sep_alg_maximal: Tri = None
    residue: ResidueFlags = field(default_factory=ResidueFlags)
    field_flags: FieldFlags = field(default_factory=FieldFlags)
    # the places K -> k_0 -> k_p -> k of a mixed-characteristic valuation
    k0_alg_maximal: Tri = None
    k0_defectless: Tri = None
    kp_sep_alg_maximal: Tri = None
    kp_defectless: Tri = None
    semitame: Tri = None  # set by compose when the composition rule applies
    hyp: Hypotheses = field(default_factory=Hypotheses)

    @property
    def p(self) -> int:
        """Residue characteristic."""
        return self.char_pair[1]

    @property
    def kind(self) -> str:
        ck, cr = self.char_pair
        if ck == cr == 0:
            return "equichar0"
        return "equicharP" if ck == cr else "mixed"

    def decomposition(self) -> Optional[ConvexDecomposition]:
        if self.kind != "mixed" or self.vp is None:
            return None
        return og_standard_decomp(self.group, self.vp)


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def check_descriptor(d: VFDescriptor) -> None:
    ck, cr = d.char_pair
    if not ((ck == cr and (ck == 0 or _is_prime(ck))) or (ck == 0 and _is_prime(cr))):
        raise InconsistentDescriptor(f"characteristic pair {d.char_pair} is not (0,0), (p,p) or (0,p)")
    if d.trivial:
        if d.group is not None or d.vp is not None:
            raise InconsistentDescriptor("a trivial valuation has no value group")
        if d.kind == "mixed":
            raise InconsistentDescriptor("a trivial valuation cannot have mixed characteristic")
    elif d.group is None:
        raise InconsistentDescriptor("a nontrivial valuation needs a value group")
    if d.kind == "mixed":
        if d.vp is None:
            raise InconsistentDescriptor("mixed characteristic needs v(p)")
        try:
            og_standard_decomp(d.group, d.vp)
        except DomainError as exc:
            raise InconsistentDescriptor(str(exc)) from exc
    elif d.vp is not None:
        raise InconsistentDescriptor("v(p) only makes sense in mixed characteristic")
    r = d.residue
    if r.as_closed is True and r.as_finite is False:
        raise InconsistentDescriptor("an AS-closed residue field is AS-finite")
    if r.finite is not None and r.infinite is not None and r.finite == r.infinite:
        raise InconsistentDescriptor("residue.finite and residue.infinite disagree")
    f = d.field_flags
    if f.as_closed is True and f.as_finite is False:
        raise InconsistentDescriptor("an AS-closed field is AS-finite")
    if d.henselian and not d.p_henselian and not d.trivial:
        raise InconsistentDescriptor("henselian valuations are p-henselian")
    if d.hyp.nipn is not None and d.hyp.nipn < 1:
        raise InconsistentDescriptor("NIP_n needs n >= 1")


# -- text format -----------------------------------------------------------------

_SCALAR = ("trivial", "henselian", "p_henselian")
_TRI = ("defectless", "alg_maximal", "sep_alg_maximal", "k0_alg_maximal", "k0_defectless",
        "kp_sep_alg_maximal", "kp_defectless", "semitame")


def parse_descriptor(text: str) -> VFDescriptor:
    """`key: value` lines; see `format_descriptor` for the full key set."""
    d = VFDescriptor()
    group_text = vp_text = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        key, val = key.strip(), val.strip()
        try:
            if key == "name":
                d.name = val
            elif key == "char":
                a, b = (int(x) for x in val.split(","))
                d.char_pair = (a, b)
            elif key == "group":
                group_text = val
            elif key == "vp":
                vp_text = val
            elif key in _SCALAR:
                v = parse_tri(val)
                if v is None:
                    raise ParseError(f"{key} must be true or false")
                setattr(d, key, v)
            elif key in _TRI:
                setattr(d, key, parse_tri(val))
            elif key.startswith("residue."):
                _set_flag(d.residue, key[8:], val)
            elif key.startswith("field."):
                _set_flag(d.field_flags, key[6:], val)
            elif key == "hyp.nipn":
                d.hyp.nipn = int(val)
            elif key in ("hyp.nip", "hyp.ntp2", "hyp.pure_field"):
                v = parse_tri(val)
                setattr(d.hyp, key[4:], bool(v))
            else:
                raise ParseError(f"unknown key {key!r}")
        except (ValueError, DomainError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if group_text is not None:
        d.group = parse_group(group_text, d.p or None)
    if vp_text is not None:
        if d.group is None:
            raise ParseError("vp given without a group")
        d.vp = parse_elem(d.group, vp_text)
    check_descriptor(d)
    return d


def _set_flag(obj, name: str, val: str) -> None:
    if name not in {f.name for f in fields(obj)}:
        raise ParseError(f"unknown flag {name!r}")
    setattr(obj, name, parse_tri(val))


def format_descriptor(d: VFDescriptor) -> str:
    lines = [f"name: {d.name}", f"char: {d.char_pair[0]},{d.char_pair[1]}"]
    if d.group is not None:
        lines.append(f"group: {d.group}")
    if d.vp is not None:
        lines.append(f"vp: {d.vp}")
    lines += [f"{k}: {str(getattr(d, k)).lower()}" for k in _SCALAR]
    lines += [f"{k}: {tri_str(getattr(d, k))}" for k in _TRI if getattr(d, k) is not None]
    lines += [f"residue.{f.name}: {tri_str(getattr(d.residue, f.name))}"
              for f in fields(d.residue) if getattr(d.residue, f.name) is not None]
    lines += [f"field.{f.name}: {tri_str(getattr(d.field_flags, f.name))}"
              for f in fields(d.field_flags) if getattr(d.field_flags, f.name) is not None]
    if d.hyp.nip:
        lines.append("hyp.nip: true")
    if d.hyp.nipn is not None:
        lines.append(f"hyp.nipn: {d.hyp.nipn}")
    if d.hyp.ntp2:
        lines.append("hyp.ntp2: true")
    if d.hyp.pure_field:
        lines.append("hyp.pure_field: true")
    return "\n".join(lines) + "\n"


# -- formulas --------------------------------------------------------------------


def phi_text(n: int = 1) -> str:
    ys = "y" if n == 1 else "*".join(f"y{i}" for i in range(1, n + 1))
    return f"∃t x = {ys}*(t^p - t)"


PSI_TEXT = "∃t x + z = y*(t^p - t)"


# -- semitameness and composition ------------------------------------------------


def _pdiv(group: Optional[GroupDescriptor], start: int, p: int) -> Tri:
    if group is None or start >= len(group):
        return True
    return all(c.p_divisible(p) for c in group.components[start:])


def semitame_eval(d: VFDescriptor) -> Tri:
    if d.semitame is not None:
        return d.semitame
    if d.trivial or d.p == 0:
        return True
    return tri_and(og_p_divisible(d.group, d.p), d.residue.perfect, d.defectless)


def compose(outer: VFDescriptor, inner: VFDescriptor) -> VFDescriptor:
    """(K, v) composed with (k_v, w); the outer group is the more significant factor."""
    check_descriptor(outer)
    check_descriptor(inner)
    if inner.char_pair[0] != outer.char_pair[1]:
        raise IncompatibleComposition(
            f"outer residue characteristic {outer.char_pair[1]} differs from the inner field's {inner.char_pair[0]}")
    if inner.trivial:
        return outer
    name = f"{outer.name} o {inner.name}"
    if outer.trivial:
        return replace(inner, name=name, field_flags=outer.field_flags, hyp=Hypotheses())
    group = GroupDescriptor(outer.group.components + inner.group.components)
    char = (outer.char_pair[0], inner.char_pair[1])
    vp = None
    if char[0] == 0 and char[1] > 0:
        if outer.vp is not None:
            vp = group.element(list(outer.vp.coords) + [0] * len(inner.group))
        else:
            vp = group.element([0] * len(outer.group) + list(inner.vp.coords))
    guard = (semitame_eval(outer) is True and semitame_eval(inner) is True
             and outer.henselian and inner.henselian and outer.p > 0 and inner.p > 0)
    both = outer.defectless is True and inner.defectless is True
    out = VFDescriptor(
        name=name, char_pair=char, group=group, vp=vp, trivial=False,
        henselian=outer.henselian and inner.henselian,
        p_henselian=outer.p_henselian and inner.p_henselian,
        defectless=True if both else None,
        residue=replace(inner.residue), field_flags=replace(outer.field_flags),
        semitame=True if guard else None)
    check_descriptor(out)
    return out


# -- the engine ------------------------------------------------------------------


@dataclass
class Derivation:
    fact: str
    value: bool
    rule: str
    cite: str


@dataclass
class Verdict:
    name: str
    n: int
    derived: list = field(default_factory=list)
    aj_case: Optional[str] = None
    contradictions: list = field(default_factory=list)  # (fact, rule for true, rule for false)
    formulas: list = field(default_factory=list)
    facts: dict = field(default_factory=dict)

    def value(self, fact: str) -> Tri:
        vals = self.facts.get(fact, {})
        return next(iter(vals)) if len(vals) == 1 else None


class _State:
    def __init__(self, d: VFDescriptor):
        self.d = d
        self.n = d.hyp.nipn or 1
        self.facts: dict[str, dict[bool, str]] = {}
        self.derived: list[Derivation] = []
        self.formulas: list[str] = []

    def t(self, key: str) -> bool:
        return True in self.facts.get(key, {})

    def f(self, key: str) -> bool:
        return False in self.facts.get(key, {})

    def val(self, key: str) -> Tri:
        vals = self.facts.get(key, {})
        return next(iter(vals)) if len(vals) == 1 else None

    def add(self, key: str, value: bool, rule: "Rule", formula: Optional[str] = None) -> bool:
        slot = self.facts.setdefault(key, {})
        if value in slot:
            return False
        slot[value] = rule.id
        if rule.id != "input":
            self.derived.append(Derivation(key, value, rule.id, rule.cite))
        if formula and formula not in self.formulas:
            self.formulas.append(formula)
        return True


@dataclass(frozen=True)
class Rule:
    id: str
    cite: str
    fn: Callable


RULES: list[Rule] = []
_INPUT = Rule("input", "descriptor", lambda s: ())


def rule(rid: str, cite: str):
    def deco(fn):
        RULES.append(Rule(rid, cite, fn))
        return fn
    return deco


_SCOPES = ("K", "Kv", "k")
_SHARED = ("as_closed", "as_finite", "pac", "sep_closed", "infinite", "perfect", "nip", "nipn", "ntp2")


def _seed(st: _State) -> None:
    d = st.d
    put = lambda k, v: v is not None and st.add(k, bool(v), _INPUT)  # noqa: E731
    for f in fields(d.residue):
        put(f"k.{f.name}", getattr(d.residue, f.name))
    for f in fields(d.field_flags):
        put(f"K.{f.name}", getattr(d.field_flags, f.name))
    for key in ("defectless", "alg_maximal", "sep_alg_maximal"):
        put(f"v.{key}", getattr(d, key))
    put("k0.alg_maximal", d.k0_alg_maximal)
    put("k0.defectless", d.k0_defectless)
    put("kp.sep_alg_maximal", d.kp_sep_alg_maximal)
    put("kp.defectless", d.kp_defectless)
    scope = "K" if d.hyp.pure_field else "Kv"
    if d.hyp.nip:
        st.add(f"{scope}.nip", True, _INPUT)
    if d.hyp.nipn is not None:
        st.add(f"{scope}.nipn", True, _INPUT)
    if d.hyp.ntp2:
        st.add(f"{scope}.ntp2", True, _INPUT)
    if d.semitame is not None:
        st.add("v.semitame", d.semitame, Rule(
            "compose-semitame",
            "a composition of two semitame henselian valuations of residue characteristic p is semitame",
            lambda s: ()))


@rule("value-group", "convex subgroups of a lexicographic product are its tails")
def _r_group(st):
    d = st.d
    if d.trivial:
        return
    p = d.p
    if p:
        yield "G.pdiv", og_p_divisible(d.group, p), None
    if d.kind == "equicharP":
        yield "v.no_proper_p_coarsening", len(d.group) == 1, None
    if d.kind == "mixed":
        dec = d.decomposition()
        yield "v.finitely_ramified", dec.quotient.kind == "Int", None
        yield "D0.pdiv", _pdiv(d.group, dec.delta0_start, p), None
        yield "Dp.pdiv", _pdiv(d.group, dec.deltap_start, p), None
        yield "Dp.trivial", dec.deltap_start >= len(d.group), None
        yield "v.no_proper_p_coarsening", dec.deltap_start >= len(d.group), None


@rule("nontrivial-infinite", "a nontrivially valued field is infinite")
def _r_infinite(st):
    if not st.d.trivial:
        yield "K.infinite", True, None


@rule("trivial-valuation", "a trivially valued field is its own residue field")
def _r_trivial(st):
    if not st.d.trivial:
        return
    for flag in _SHARED:
        for a, b in (("K", "k"), ("k", "K"), ("K", "Kv"), ("Kv", "K")):
            for val in (True, False):
                if val in st.facts.get(f"{a}.{flag}", {}):
                    yield f"{b}.{flag}", val, None


@rule("finite-fields", "a finite field is perfect, NIP, not PAC, and has exactly one AS-extension")
def _r_finite(st):
    if st.t("k.finite"):
        yield from (("k.infinite", False, None), ("k.as_closed", False, None), ("k.as_finite", True, None),
                    ("k.perfect", True, None), ("k.nip", True, None), ("k.pac", False, None),
                    ("k.sep_closed", False, None))
    if st.f("k.finite"):
        yield "k.infinite", True, None
    if st.t("k.infinite"):
        yield "k.finite", False, None
    if st.f("k.infinite"):
        yield "k.finite", True, None


@rule("as-finite", "an AS-closed field is AS-finite")
def _r_asfin(st):
    for s in ("K", "k"):
        if st.t(f"{s}.as_closed"):
            yield f"{s}.as_finite", True, None
        if st.f(f"{s}.as_finite"):
            yield f"{s}.as_closed", False, None


@rule("nip-hierarchy", "NIP implies NIP_n and NTP2")
def _r_hier(st):
    for s in _SCOPES:
        if st.t(f"{s}.nip"):
            yield f"{s}.nipn", True, None
            yield f"{s}.ntp2", True, None
        if st.f(f"{s}.nipn") or st.f(f"{s}.ntp2"):
            yield f"{s}.nip", False, None


@rule("reduct", "the pure field is a reduct of the valued field")
def _r_reduct(st):
    for x in ("nip", "nipn", "ntp2"):
        if st.t(f"Kv.{x}"):
            yield f"K.{x}", True, None
        if st.f(f"K.{x}"):
            yield f"Kv.{x}", False, None


@rule("residue-interpretable", "the residue field is interpretable in the valued field")
def _r_interp(st):
    for x in ("nip", "nipn", "ntp2"):
        if st.t(f"Kv.{x}"):
            yield f"k.{x}", True, None
        if st.f(f"k.{x}"):
            yield f"Kv.{x}", False, None


def _char_p_scopes(st):
    ck, cr = st.d.char_pair
    if ck:
        yield "K"
    if cr:
        yield "k"


@rule("local-kswh", "in an infinite field of characteristic p, phi is NIP_n iff there is no AS-extension")
def _r_kswh(st):
    for s in _char_p_scopes(st):
        if not st.t(f"{s}.infinite"):
            continue
        if st.t(f"{s}.nipn") or st.t(f"{s}.nip"):
            yield f"{s}.as_closed", True, None
        if st.f(f"{s}.as_closed"):
            yield f"{s}.nipn", False, phi_text(st.n)
            yield f"{s}.nip", False, phi_text(1)


@rule("local-cks", "in a field of characteristic p, psi is NTP2 iff there are finitely many AS-extensions")
def _r_cks(st):
    for s in _char_p_scopes(st):
        if st.t(f"{s}.ntp2"):
            yield f"{s}.as_finite", True, None
        if st.f(f"{s}.as_finite"):
            yield f"{s}.ntp2", False, PSI_TEXT


@rule("as-descent", "an AS-polynomial over the valuation ring without residue roots has no roots")
def _r_descent(st):
    if st.d.kind == "equicharP" and st.f("k.as_closed"):
        yield "K.as_closed", False, None
    if st.d.kind == "equicharP" and st.f("k.as_finite"):
        yield "K.as_finite", False, None


@rule("imperfect-residue", "X^p - mX - a with v(m) > 0 has no root when the residue of a is not a p-th power")
def _r_imperfect(st):
    if st.d.kind == "equicharP" and not st.d.trivial and st.f("k.perfect"):
        yield "K.as_closed", False, None


def _lifts(st) -> bool:
    return st.d.p_henselian and st.d.p > 0


@rule("as-lift", "p-henselian lifting of phi from an infinite residue field that is not AS-closed")
def _r_lift(st):
    if _lifts(st) and st.t("k.infinite") and st.f("k.as_closed"):
        yield "K.nipn", False, phi_text(st.n)
        yield "K.nip", False, phi_text(1)


@rule("as-lift-tp2", "p-henselian lifting of TP2 patterns of psi from a residue field with infinitely many AS-extensions")
def _r_lift_tp2(st):
    if _lifts(st) and st.f("k.as_finite"):
        yield "K.ntp2", False, PSI_TEXT


@rule("coarsening-lift", "a nontrivial equicharacteristic-p place below K whose residue field is not "
                         "AS-closed, or is imperfect, lifts phi")
def _r_coarse(st):
    d = st.d
    if d.kind != "mixed" or not _lifts(st):
        return
    below = st.f("v.finitely_ramified") or st.f("Dp.trivial")
    if below and (st.f("k.as_closed") or st.f("k.perfect")):
        yield "K.nipn", False, phi_text(st.n)
        yield "K.nip", False, phi_text(1)


def _nipn(st) -> bool:
    return st.t("K.nipn") or st.t("K.nip")


@rule("equichar-p-samk", "NIP_n valued fields of equicharacteristic p are SAMK or trivial")
def _r_pp(st):
    if st.d.kind == "equicharP" and not st.d.trivial and _nipn(st):
        yield "v.samk", True, None


@rule("as-closed-samk", "a nontrivially valued AS-closed field of equicharacteristic p has p-divisible "
                        "value group, perfect AS-closed residue field and no separable immediate extensions")
def _r_asc_samk(st):
    if st.d.kind == "equicharP" and not st.d.trivial and st.t("K.as_closed"):
        yield from (("G.pdiv", True, None), ("k.perfect", True, None), ("k.as_closed", True, None),
                    ("v.sep_alg_maximal", True, None))


def _conj(st, head: str, parts: list[str]):
    # read each held value separately so a contradictory part cannot retract anything
    if all(st.t(p) for p in parts):
        yield head, True, None
    if any(st.f(p) for p in parts):
        yield head, False, None
    if st.t(head):
        for p in parts:
            yield p, True, None


@rule("kaplansky-def", "SAMK / AMK = separably / algebraically maximal and Kaplansky; Kaplansky = "
                       "p-divisible value group with perfect AS-closed residue field")
def _r_kap(st):
    if st.d.trivial or st.d.p == 0:
        return
    res = ["k.perfect", "k.as_closed"]
    yield from _conj(st, "v.kaplansky", ["G.pdiv", *res])
    yield from _conj(st, "v.samk", ["v.sep_alg_maximal", "v.kaplansky"])
    yield from _conj(st, "v.amk", ["v.alg_maximal", "v.kaplansky"])
    if st.t("v.alg_maximal"):
        yield "v.sep_alg_maximal", True, None
    if st.f("v.sep_alg_maximal"):
        yield "v.alg_maximal", False, None
    if st.d.kind == "mixed":
        if st.f("Dp.trivial"):
            yield from _conj(st, "kp.kaplansky", ["Dp.pdiv", *res])
            yield from _conj(st, "kp.samk", ["kp.sep_alg_maximal", "kp.kaplansky"])
        yield from _conj(st, "k0.kaplansky", ["D0.pdiv", *res])
        yield from _conj(st, "k0.amk", ["k0.alg_maximal", "k0.kaplansky"])


@rule("mixed-kp", "in mixed characteristic a nontrivial (k_p, v) below a NIP_n field is AS-closed, hence SAMK")
def _r_kp(st):
    if st.d.kind == "mixed" and _lifts(st) and _nipn(st) and st.f("Dp.trivial"):
        yield "kp.samk", True, None


@rule("mixed-cases", "NIP_n in mixed characteristic: finitely ramified with (k_p, v) SAMK or trivial, "
                     "or (k_0, v) AMK")
def _r_0p(st):
    if st.d.kind != "mixed" or not _lifts(st) or not _nipn(st):
        return
    if st.f("v.finitely_ramified") or (st.f("Dp.trivial") and st.f("kp.samk")):
        yield "k0.amk", True, None


@rule("perfect-residue", "NIP_n: only the coarsest coarsening with residue characteristic p may have "
                         "an imperfect residue field")
def _r_resperf(st):
    if _lifts(st) and _nipn(st) and st.f("k.perfect"):
        yield "v.no_proper_p_coarsening", True, None


@rule("perfect-residue-ntp2", "NTP2: an imperfect residue field of characteristic p sits at the coarsest "
                              "valuation with residue characteristic p")
def _r_resperf2(st):
    if _lifts(st) and st.t("K.ntp2") and st.f("k.perfect"):
        yield "v.no_proper_p_coarsening", True, None


@rule("asfin-semitame", "AS-finite valued fields of equicharacteristic p are semitame")
def _r_asfin_smtm(st):
    if st.d.kind == "equicharP" and st.t("K.as_finite"):
        yield "v.semitame", True, None
    if st.d.kind == "equicharP" and st.f("v.semitame"):
        yield "K.as_finite", False, None


@rule("semitame-def", "semitame: p-divisible value group, perfect residue field, defectless; "
                      "trivial valuations and residue characteristic 0 count as semitame")
def _r_smtm(st):
    d = st.d
    if d.trivial or d.p == 0:
        yield "v.semitame", True, None
        return
    yield from _conj(st, "v.semitame", ["G.pdiv", "k.perfect", "v.defectless"])
    if d.kind == "mixed":
        if st.t("Dp.trivial"):
            yield "kp.semitame", True, None
        elif st.f("Dp.trivial"):
            yield from _conj(st, "kp.semitame", ["Dp.pdiv", "k.perfect", "kp.defectless"])
        yield from _conj(st, "k0.semitame", ["D0.pdiv", "k.perfect", "k0.defectless"])


@rule("tame-def", "tame = semitame, henselian and defectless")
def _r_tame(st):
    if st.t("v.semitame") and (st.d.henselian or st.d.trivial) and st.t("v.defectless"):
        yield "v.tame", True, None
    if st.f("v.semitame") or st.f("v.defectless"):
        yield "v.tame", False, None


@rule("ntp2-cases", "NTP2 and p-henselian: equicharacteristic p and semitame, or mixed with (k_0, v) "
                    "semitame, or finitely ramified with (k_p, v) semitame; gdr as an imported label")
def _r_ntp2(st):
    d = st.d
    if not (_lifts(st) and st.t("K.ntp2")):
        return
    yield "v.gdr", True, None
    if d.kind == "equicharP":
        yield "v.semitame", True, None
    elif d.kind == "mixed":
        if st.f("v.finitely_ramified") or st.f("kp.semitame"):
            yield "k0.semitame", True, None
        if st.f("k0.semitame"):
            yield "v.finitely_ramified", True, None
            yield "kp.semitame", True, None


@rule("nip-transfer", "a NIP_n henselian valued field with NIP residue field is NIP")
def _r_nipres(st):
    if st.d.henselian and st.t("Kv.nipn") and st.t("k.nip"):
        yield "Kv.nip", True, None


@rule("algebraic-over-fp", "an algebraic extension of F_p is finite, algebraically closed, or PAC and not "
                           "separably closed, so it is NIP iff NIP_n")
def _r_algfp(st):
    if not st.t("k.alg_over_prime"):
        return
    yield "k.perfect", True, None
    if st.t("k.nipn"):
        yield "k.nip", True, None
    if st.f("k.nip"):
        yield "k.nipn", False, None
    if st.f("k.finite") and st.f("k.sep_closed"):
        yield "k.pac", True, None


@rule("pac-not-sep-closed", "PAC fields that are not separably closed have IP_n for every n")
def _r_pac(st):
    for s in ("K", "k"):
        if st.t(f"{s}.pac") and st.f(f"{s}.sep_closed"):
            yield f"{s}.nipn", False, None
            yield f"{s}.nip", False, None


@rule("henselian-nip", "a henselian valuation on a NIP field is NIP; IP of the residue field passes to K")
def _r_jahnke(st):
    if not st.d.henselian:
        return
    if st.t("K.nip"):
        yield "Kv.nip", True, None
    if st.f("Kv.nip") or st.f("k.nip"):
        yield "K.nip", False, None


def _run(d: VFDescriptor) -> _State:
    st = _State(d)
    _seed(st)
    changed = True
    while changed:
        changed = False
        for r in RULES:
            for key, value, formula in list(r.fn(st)):
                if st.add(key, value, r, formula):
                    changed = True
    return st


def _aj_case(st: _State, contradictions: list) -> Optional[str]:
    d = st.d
    if not (d.hyp.nip or d.hyp.nipn is not None):
        return None
    if contradictions:
        return "violation"
    if d.p > 0 and not d.p_henselian and not d.trivial:
        return None
    if d.kind == "equichar0":
        return "equichar0"
    if d.kind == "equicharP":
        if d.trivial or st.val("v.samk") is not False:
            return "equicharP_trivial_or_SAMK"
        return "violation"
    kp_ok = st.t("Dp.trivial") or st.val("kp.samk") is not False
    if st.t("v.finitely_ramified") and kp_ok:
        return "mixed_finitely_ramified"
    if st.val("k0.amk") is not False:
        return "mixed_k0_AMK"
    return "violation"


def classify(d: VFDescriptor) -> Verdict:
    check_descriptor(d)
    st = _run(d)
    contradictions = [(k, v[True], v[False]) for k, v in st.facts.items() if len(v) == 2]
    v = Verdict(d.name, st.n, st.derived, None, contradictions, st.formulas,
                {k: dict(vals) for k, vals in st.facts.items()})
    v.aj_case = _aj_case(st, contradictions)
    return v


def format_verdict(v: Verdict) -> str:
    lines = [f"descriptor: {v.name}", f"aj_case: {v.aj_case or 'none'}"]
    for dv in v.derived:
        lines.append(f"rule: {dv.rule} cites: {dv.cite} derives: {dv.fact} = {str(dv.value).lower()}")
    for f in v.formulas:
        lines.append(f"formula: {f}")
    for fact, rt, rf in v.contradictions:
        lines.append(f"contradiction: {fact} true by {rt}, false by {rf}")
    return "\n".join(lines) + "\n"
