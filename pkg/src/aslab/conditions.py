"""Baldwin-Saxl, BSH_n and CKS conditions on explicit families of subgroups.

Ambients are finite abelian groups Z/m1 x ... x Z/mr, or the additive group
of F_q written in coordinates over F_p. Subgroups are materialized as frozen
sets of coordinate tuples, so every check is plain set intersection.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .config import budget
from .errors import BudgetExceeded, DomainError, ParseError
from .ff import FiniteField, field_of_order

Elem = tuple


class FinAbGroup:
    def __init__(self, moduli: Sequence[int], field_tag: FiniteField | None = None):
        moduli = tuple(int(m) for m in moduli)
        if not moduli or any(m < 1 for m in moduli):
            raise DomainError("moduli must be positive integers")
        order = math.prod(moduli)
        if order > budget():
            raise BudgetExceeded(f"ambient of order {order} exceeds the budget {budget()}")
        self.moduli = moduli
        self.order = order
        self.field = field_tag

    @classmethod
    def of_field(cls, q: int) -> "FinAbGroup":
        F = field_of_order(q)
        return cls([F.p] * F.k, F)

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and (self.moduli, self.field) == (other.moduli, other.field)

    def __hash__(self):
        return hash(self.moduli)

    def __repr__(self) -> str:
        return self.field.name if self.field else "Z/" + " x Z/".join(map(str, self.moduli))

    def zero(self) -> Elem:
        return (0,) * len(self.moduli)

    def norm(self, x: Sequence[int]) -> Elem:
        if len(x) != len(self.moduli):
            raise DomainError(f"element {list(x)} has the wrong length for {self}")
        return tuple(int(c) % m for c, m in zip(x, self.moduli))

    def add(self, x: Elem, y: Elem) -> Elem:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def neg(self, x: Elem) -> Elem:
        return tuple((-a) % m for a, m in zip(x, self.moduli))

    def elements(self) -> Iterable[Elem]:
        return itertools.product(*(range(m) for m in self.moduli))

    def span(self, gens: Iterable[Sequence[int]]) -> frozenset:
        gens = [self.norm(g) for g in gens]
        seen = {self.zero()}
        frontier = [self.zero()]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def from_field(self, x) -> Elem:
        return tuple(x.c)

    def to_field(self, x: Elem):
        return self.field(list(x))


@dataclass(frozen=True)
class Subgroup:
    elements: frozenset
    gens: tuple = ()

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __len__(self) -> int:
        return len(self.elements)


def subgroup(G: FinAbGroup, gens: Iterable[Sequence[int]]) -> Subgroup:
    gens = tuple(G.norm(g) for g in gens)
    return Subgroup(G.span(gens), gens)


def wp_subgroup(F: FiniteField, a=None) -> tuple[FinAbGroup, Subgroup]:
    """a·℘(F_q) as a subgroup of the additive group of F_q (a = 1 by default)."""
    from .ff import ff_wp

    G = FinAbGroup([F.p] * F.k, F)
    a = F.one if a is None else F(a)
    gens = tuple(G.from_field(a * ff_wp(b)) for b in F.basis())
    return G, Subgroup(G.span(gens), gens)


@dataclass
class ConditionVerdict:
    holds: bool
    bound: int
    certificate: Optional[dict] = None
    witness_indices: Optional[tuple] = None
    indices: Optional[list] = None
    details: dict = field(default_factory=dict)


def _meet(groups: Iterable[Subgroup], G: FinAbGroup) -> frozenset:
    out = None
    for h in groups:
        out = h.elements if out is None else out & h.elements
    return frozenset(G.elements()) if out is None else out


def _pick(s: Iterable[Elem]) -> Elem:
    return min(s)


def bs_check(family: Sequence[Subgroup], N: int, G: FinAbGroup | None = None) -> ConditionVerdict:
    """Every N+1 members have the same meet as some N of them.

    Families with fewer than N+1 members satisfy the condition vacuously.
    A failure certificate maps j to some b_j outside H_j but inside every
    other member of the offending subfamily.
    """
    if N < 1:
        raise DomainError("N must be at least 1")
    m = len(family)
    _budget_combos(math.comb(m, N + 1) if m > N else 0)
    for idx in itertools.combinations(range(m), N + 1):
        full = _meet((family[i] for i in idx), G)
        if any(_meet((family[i] for i in idx if i != j), G) == full for j in idx):
            continue
        cert = {j: _pick(_meet((family[i] for i in idx if i != j), G) - family[j].elements) for j in idx}
        return ConditionVerdict(False, N, cert, idx)
    return ConditionVerdict(True, N)


def _budget_combos(n: int) -> None:
    if n > budget():
        raise BudgetExceeded(f"{n} subfamilies exceed the budget {budget()}")


def certificate_sums(cert: dict, G: FinAbGroup) -> dict:
    """b_I = Σ_{j ∈ I} b_j for every I ⊆ the certificate's indices.

    With the BS certificate, b_I lies in H_i exactly when i ∉ I.
    """
    keys = sorted(cert)
    out = {}
    for r in range(len(keys) + 1):
        for I in itertools.combinations(keys, r):
            acc = G.zero()
            for j in I:
                acc = G.add(acc, cert[j])
            out[frozenset(I)] = acc
    return out


def verify_certificate(family: Sequence[Subgroup], cert: dict) -> bool:
    """b_j ∉ H_j and b_j ∈ H_i for the other certified indices."""
    return all(
        (b not in family[j]) and all(b in family[i] for i in cert if i != j)
        for j, b in cert.items()
    )


def array_shape(arr: dict) -> tuple[int, ...]:
    keys = list(arr)
    n = len(keys[0])
    return tuple(max(k[a] for k in keys) + 1 for a in range(n))


def bsh_check(array: dict, N: int, G: FinAbGroup | None = None) -> ConditionVerdict:
    """BSH_n on an n-dimensional array {index tuple: subgroup}.

    For every choice of N+1 positions along each axis, some cell of the
    resulting grid must be removable without changing the grid's meet.
    """
    if N < 1:
        raise DomainError("N must be at least 1")
    shape = array_shape(array)
    if len(array) != math.prod(shape):
        raise DomainError("array is not rectangular")
    axes = [list(itertools.combinations(range(s), N + 1)) for s in shape]
    _budget_combos(math.prod(len(a) for a in axes))
    for choice in itertools.product(*axes):
        cells = list(itertools.product(*choice))
        full = _meet((array[c] for c in cells), G)
        if any(_meet((array[c] for c in cells if c != k), G) == full for k in cells):
            continue
        cert = {k: _pick(_meet((array[c] for c in cells if c != k), G) - array[k].elements) for k in cells}
        return ConditionVerdict(False, N, cert, choice)
    return ConditionVerdict(True, N)


def cks_check(family: Sequence[Subgroup], N: int, G: FinAbGroup | None = None) -> ConditionVerdict:
    """Some i has [H_{≠i} : H] ≤ N, where H is the meet of the whole family.

    For a one-member family H_{≠0} is taken to be H_0 itself.
    """
    if not family:
        raise DomainError("empty family")
    H = _meet(family, G)
    if len(family) == 1:
        idx = [1]
    else:
        idx = [len(_meet((h for j, h in enumerate(family) if j != i), G)) // len(H) for i in range(len(family))]
    good = [i for i, v in enumerate(idx) if v <= N]
    return ConditionVerdict(bool(good), N, None, tuple(good), idx)


# -- family file format ----------------------------------------------------------


@dataclass
class FamilyFile:
    ambient: FinAbGroup
    members: list[Subgroup]
    shape: Optional[tuple[int, ...]] = None

    def as_array(self) -> dict:
        if self.shape is None:
            return {(i,): h for i, h in enumerate(self.members)}
        cells = list(itertools.product(*(range(s) for s in self.shape)))
        return dict(zip(cells, self.members))


def _parse_list(text: str):
    import json

    try:
        return json.loads(text)
    except ValueError as exc:
        raise ParseError(f"bad list literal {text!r}") from exc


def parse_family(text: str) -> FamilyFile:
    ambient = None
    shape = None
    members: list[Subgroup] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        key, val = key.strip(), val.strip()
        if key == "ambient":
            if val.startswith("F"):
                ambient = FinAbGroup.of_field(int(val[1:]))
            else:
                ambient = FinAbGroup(_parse_list(val))
        elif key == "array":
            shape = tuple(int(s) for s in val.lower().split("x"))
        elif key == "subgroup":
            if ambient is None:
                raise ParseError(f"line {lineno}: subgroup before ambient")
            members.append(subgroup(ambient, _parse_list(val)))
        else:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
    if ambient is None:
        raise ParseError("missing ambient")
    if shape is not None and math.prod(shape) != len(members):
        raise ParseError(f"array {shape} needs {math.prod(shape)} subgroups, got {len(members)}")
    return FamilyFile(ambient, members, shape)


def format_family(ff: FamilyFile) -> str:
    G = ff.ambient
    lines = [f"ambient: {G.field.name if G.field else list(G.moduli)}"]
    if ff.shape is not None:
        lines.append("array: " + "x".join(map(str, ff.shape)))
    for h in ff.members:
        lines.append("subgroup: " + str([list(g) for g in h.gens]).replace(" ", ""))
    return "\n".join(lines) + "\n"


def format_verdict(kind: str, v: ConditionVerdict) -> str:
    lines = [f"condition: {kind}", f"bound: {v.bound}", f"holds: {str(v.holds).lower()}"]
    if v.indices is not None:
        lines.append("indices: " + " ".join(map(str, v.indices)))
    if v.witness_indices is not None and not v.holds:
        lines.append("subfamily: " + " ".join(map(str, v.witness_indices)))
    if v.certificate:
        lines.append("certificate:")
        for k in sorted(v.certificate):
            lines.append(f"  b {k} = {list(v.certificate[k])}")
    return "\n".join(lines) + "\n"
