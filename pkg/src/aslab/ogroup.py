"""Ordered abelian groups as finite lexicographic products of archimedean classes.

Every convex subgroup of such a product is a tail 0 x ... x 0 x G_j x ... x G_n,
so the convex hull questions around v(p) reduce to locating the first nonzero
coordinate. Component indices are 0-based throughout.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, NonPositiveVp, ParseError
from .ff import is_prime


@dataclass(frozen=True)
class ArchClass:
    """One archimedean component: Int, Rat, ZinvP(p) or RealLike."""

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Int", "Rat", "ZinvP", "RealLike"):
            raise DomainError(f"unknown archimedean class {self.kind!r}")
        if (self.kind == "ZinvP") != (self.p is not None):
            raise DomainError("only ZinvP carries a prime")
        if self.p is not None and not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")

    def contains(self, x: Fraction) -> bool:
        x = Fraction(x)
        if self.kind == "Int":
            return x.denominator == 1
        if self.kind == "ZinvP":
            d = x.denominator
            while d % self.p == 0:
                d //= self.p
            return d == 1
        return True

    def p_divisible(self, p: int) -> bool:
        if self.kind == "Int":
            return False
        if self.kind == "ZinvP":
            return self.p == p
        return True

    def __str__(self) -> str:
        return {"Int": "Z", "Rat": "Q", "RealLike": "R"}.get(self.kind) or f"Z[1/{self.p}^inf]"


Int = ArchClass("Int")
Rat = ArchClass("Rat")
RealLike = ArchClass("RealLike")


def ZinvP(p: int) -> ArchClass:
    return ArchClass("ZinvP", p)


@dataclass(frozen=True)
class GroupDescriptor:
    components: tuple[ArchClass, ...]

    def __post_init__(self):
        if not self.components:
            raise DomainError("a group needs at least one component")
        object.__setattr__(self, "components", tuple(self.components))

    def __len__(self) -> int:
        return len(self.components)

    def element(self, coords: Sequence) -> "GroupElem":
        return GroupElem(self, tuple(Fraction(c) for c in coords))

    def __str__(self) -> str:
        return " * ".join(map(str, self.components))


@dataclass(frozen=True, order=False)
class GroupElem:
    group: GroupDescriptor
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != len(self.group):
            raise DomainError(f"expected {len(self.group)} coordinates, got {len(self.coords)}")
        for c, cls in zip(self.coords, self.group.components):
            if not cls.contains(c):
                raise DomainError(f"coordinate {c} does not lie in {cls}")

    def leading_index(self) -> Optional[int]:
        return next((i for i, c in enumerate(self.coords) if c), None)

    def sign(self) -> int:
        j = self.leading_index()
        return 0 if j is None else (1 if self.coords[j] > 0 else -1)

    def __lt__(self, other: "GroupElem") -> bool:
        return self.coords < other.coords

    def __le__(self, other: "GroupElem") -> bool:
        return self.coords <= other.coords

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)


@dataclass(frozen=True)
class ConvexDecomposition:
    """Δ_0 is the tail from delta0_start, Δ_p the tail from deltap_start."""

    delta0_start: int
    deltap_start: int
    quotient: ArchClass

    def tail_str(self, group: GroupDescriptor, start: int) -> str:
        parts = ["0"] * start + [str(c) for c in group.components[start:]]
        return " * ".join(parts) if start < len(group) else "{0}"


def og_standard_decomp(G: GroupDescriptor, vp: GroupElem) -> ConvexDecomposition:
    if vp.group != G:
        raise DomainError("v(p) does not belong to the given group")
    if vp.sign() <= 0:
        raise NonPositiveVp(f"v(p) = ({vp}) must be positive")
    j = vp.leading_index()
    return ConvexDecomposition(j, j + 1, G.components[j])


def og_p_divisible(G, p: int) -> bool:
    if isinstance(G, ArchClass):
        return G.p_divisible(p)
    return all(c.p_divisible(p) for c in G.components)


def og_roughly_p_divisible(G: GroupDescriptor, vp: GroupElem, p: int) -> bool:
    """Every γ in [0, vp] is p-divisible in G.

    Such γ lie in the tail Δ_0, and any tail element below vp shows up there,
    so the test is p-divisibility of every component from the leading index on.
    """
    dec = og_standard_decomp(G, vp)
    return all(c.p_divisible(p) for c in G.components[dec.delta0_start:])


def og_finitely_ramified(G: GroupDescriptor, vp: GroupElem,
                         decomposition: ConvexDecomposition | None = None) -> Optional[int]:
    dec = decomposition or og_standard_decomp(G, vp)
    if dec.quotient.kind != "Int":
        return None
    return int(vp.coords[dec.delta0_start])


_CLASS = re.compile(r"^(Z|Q|R|Z\[1/(\d+)\^inf\])$")


def parse_group(text: str, p: int | None = None) -> GroupDescriptor:
    """`Z * Q * Z[1/p^inf] * R`, most significant first. `p` fills in a literal `Z[1/p^inf]`."""
    comps = []
    for raw in text.split("*"):
        tok = raw.strip().replace(" ", "")
        if p is not None:
            tok = tok.replace("[1/p^", f"[1/{p}^")
        m = _CLASS.match(tok)
        if not m:
            raise ParseError(f"unknown group component {raw.strip()!r}")
        if m.group(2):
            comps.append(ZinvP(int(m.group(2))))
        else:
            comps.append({"Z": Int, "Q": Rat, "R": RealLike}[tok])
    return GroupDescriptor(tuple(comps))


def parse_elem(G: GroupDescriptor, text: str) -> GroupElem:
    try:
        coords = [Fraction(c.strip()) for c in text.strip().strip("()").split(",")]
    except ValueError as exc:
        raise ParseError(f"bad group element {text!r}") from exc
    return G.element(coords)
