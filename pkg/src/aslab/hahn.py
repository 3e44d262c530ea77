"""Truncated generalized power series F_q((Γ)) and precision-bounded p-adics.

A HahnElem has finite support plus an optional cap N: the element is known
modulo terms of exponent >= N. Arithmetic propagates caps conservatively.
Γ is Z, Q or Z[1/p^∞], all viewed inside Q.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .errors import (CapExhausted, DivisionByZero, DomainError, InsufficientPrecision,
                     NonUnit, NonUnitLeadingCoefficient, NotAResidueRoot, ParseError, ZeroArgument)
from .ff import FFElem, FiniteField, ff_trace, ff_wp_preimage, frobenius
from .parse import fmt_exp, parse_with

DEFAULT_WITNESS_CAP = Fraction(8)
TELESCOPE_DEPTH = 4


@dataclass(frozen=True)
class ValueGroupTag:
    kind: str  # "Z", "Q" or "ZinvP"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "ZinvP"):
            raise DomainError(f"unknown value group {self.kind!r}")
        if (self.kind == "ZinvP") != (self.p is not None):
            raise DomainError("Z[1/p^inf] needs its prime, and only it")

    def contains(self, e: Fraction) -> bool:
        d = Fraction(e).denominator
        if self.kind == "Z":
            return d == 1
        if self.kind == "Q":
            return True
        while d % self.p == 0:
            d //= self.p
        return d == 1

    def p_divisible(self, p: int) -> bool:
        return self.kind == "Q" or (self.kind == "ZinvP" and self.p == p)

    def __str__(self) -> str:
        return f"Z[1/{self.p}^inf]" if self.kind == "ZinvP" else self.kind


IntZ = ValueGroupTag("Z")
RatQ = ValueGroupTag("Q")


def ZinvP(p: int) -> ValueGroupTag:
    return ValueGroupTag("ZinvP", p)


def _min_cap(*caps):
    finite = [c for c in caps if c is not None]
    return min(finite) if finite else None


class HahnElem:
    __slots__ = ("base", "group", "terms", "cap")

    def __init__(self, base: FiniteField, group: ValueGroupTag, terms=(), cap=None):
        if group.kind == "ZinvP" and group.p != base.p:
            raise DomainError("Z[1/p^inf] must use the characteristic of the coefficients")
        cap = None if cap is None else Fraction(cap)
        acc: dict[Fraction, FFElem] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for e, c in items:
            e = Fraction(e)
            c = base(c)
            if not group.contains(e):
                raise DomainError(f"exponent {e} is not in {group}")
            acc[e] = acc[e] + c if e in acc else c
        self.base = base
        self.group = group
        self.cap = cap
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c and (cap is None or e < cap)))

    # -- constructors ---------------------------------------------------------

    @classmethod
    def const(cls, base, group, c, cap=None):
        return cls(base, group, [(0, c)], cap)

    @classmethod
    def monomial(cls, base, group, c, e, cap=None):
        return cls(base, group, [(e, c)], cap)

    def _like(self, terms, cap) -> "HahnElem":
        return HahnElem(self.base, self.group, terms, cap)

    def with_cap(self, cap) -> "HahnElem":
        return self._like(self.terms, _min_cap(self.cap, None if cap is None else Fraction(cap)))

    # -- inspection -----------------------------------------------------------

    def is_exact(self) -> bool:
        return self.cap is None

    def is_zero(self) -> bool:
        """No known terms (an exact zero, or O(t^N))."""
        return not self.terms

    def coeff(self, e) -> FFElem:
        return dict(self.terms).get(Fraction(e), self.base.zero)

    def lowest(self):
        """Least known exponent; the cap for O(t^N); None for an exact zero."""
        return self.terms[0][0] if self.terms else self.cap

    def _check(self, other) -> "HahnElem":
        if isinstance(other, (int, FFElem)):
            return HahnElem.const(self.base, self.group, other)
        if not isinstance(other, HahnElem) or other.base is not self.base or other.group != self.group:
            raise DomainError("series over different carriers")
        return other

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        o = self._check(other)
        return self._like(list(self.terms) + list(o.terms), _min_cap(self.cap, o.cap))

    __radd__ = __add__

    def __neg__(self):
        return self._like([(e, -c) for e, c in self.terms], self.cap)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._check(other)
        if (self.is_exact() and self.is_zero()) or (o.is_exact() and o.is_zero()):
            return self._like([], None)
        lx, ly = self.lowest(), o.lowest()
        cap = _min_cap(None if self.cap is None else self.cap + ly,
                       None if o.cap is None else o.cap + lx)
        acc: dict[Fraction, FFElem] = {}
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                e = e1 + e2
                if cap is not None and e >= cap:
                    continue
                acc[e] = acc[e] + c1 * c2 if e in acc else c1 * c2
        return self._like(acc, cap)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return hs_div(self, self._check(other))

    def __pow__(self, n: int):
        if n < 0:
            return hs_div(HahnElem.const(self.base, self.group, 1), self ** (-n))
        out = HahnElem.const(self.base, self.group, 1)
        for _ in range(n):
            out = out * self
        return out

    def frobenius(self) -> "HahnElem":
        p = self.base.p
        cap = None if self.cap is None else p * self.cap
        return self._like([(p * e, c ** p) for e, c in self.terms], cap)

    def scale(self, c) -> "HahnElem":
        c = self.base(c)
        return self._like([(e, c * d) for e, d in self.terms], self.cap)

    def shift(self, e) -> "HahnElem":
        """Multiply by t^e."""
        e = Fraction(e)
        return self._like([(x + e, c) for x, c in self.terms], None if self.cap is None else self.cap + e)

    def __eq__(self, other):
        if isinstance(other, (int, FFElem)):
            other = HahnElem.const(self.base, self.group, other)
        return (isinstance(other, HahnElem) and self.base is other.base and self.group == other.group
                and self.terms == other.terms and self.cap == other.cap)

    def __hash__(self):
        return hash((self.base.q, str(self.group), self.terms, self.cap))

    def __str__(self) -> str:
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            else:
                mono = "t" if e == 1 else f"t^{fmt_exp(e)}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        if self.cap is not None:
            parts.append(f"O(t^{fmt_exp(self.cap)})")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def hs_div(x: HahnElem, y: HahnElem, cap=None) -> HahnElem:
    """x / y; `cap` bounds the output when the quotient has infinite support."""
    if not y.terms:
        if y.is_exact():
            raise DivisionByZero("division by the zero series")
        raise CapExhausted(f"divisor {y} has no known leading term")
    if x.is_exact() and x.is_zero():
        return x._like([], None)
    ly, lead = y.terms[0]
    lx = x.lowest()
    inv_lead = lead.inverse()
    h = [(e - ly, c * inv_lead) for e, c in y.terms[1:]]
    req = None if cap is None else Fraction(cap)
    bound = _min_cap(None if x.cap is None else x.cap - ly,
                     None if y.cap is None else lx - 2 * ly + y.cap)
    if not h:
        inv = HahnElem(x.base, x.group, [(-ly, inv_lead)], None if y.cap is None else y.cap - 2 * ly)
        return x * inv
    bound = _min_cap(bound, req)
    if bound is None:
        raise CapExhausted("quotient has infinite support; supply a cap")
    # S = sum (-h)^k below exponent B = bound - lx + ly
    B = bound - lx + ly
    neg_h = HahnElem(x.base, x.group, [(e, -c) for e, c in h], B)
    s = HahnElem(x.base, x.group, [(0, 1)], B)
    power = s
    while True:
        power = (power * neg_h).with_cap(B)
        if not power.terms:
            break
        s = s + power
    inv = s.shift(-ly).scale(inv_lead)
    out = (x * inv).with_cap(bound)
    if out.cap is not None and not out.terms and out.cap <= (lx - ly):
        raise CapExhausted(f"no representable term below O(t^{out.cap})")
    return out


def hs_arith(op: str, x: HahnElem, y: HahnElem, cap=None) -> HahnElem:
    if op == "add":
        return x + y
    if op == "mul":
        out = x * y
        if out.cap is not None and not out.terms and not (x.is_zero() or y.is_zero()):
            raise CapExhausted(f"product has no representable term below O(t^{out.cap})")
        return out
    if op == "div":
        return hs_div(x, y, cap)
    raise DomainError(f"unknown operation {op!r}")


def hs_val(x: HahnElem) -> Fraction:
    if not x.terms:
        raise ZeroArgument("valuation of zero")
    return x.terms[0][0]


def hs_residue(x: HahnElem) -> FFElem:
    if x.is_exact() and x.is_zero():
        raise ZeroArgument("residue of zero")
    if x.terms and x.terms[0][0] < 0:
        raise DomainError("residue needs v(x) >= 0")
    if x.cap is not None and x.cap <= 0:
        raise InsufficientPrecision("cap hides the constant term")
    return x.coeff(0)


def hs_lift(r: FFElem, base: FiniteField, group: ValueGroupTag) -> HahnElem:
    return HahnElem.const(base, group, r)


def hs_wp(x: HahnElem) -> HahnElem:
    return x.frobenius() - x


# -- Artin-Schreier obstruction ----------------------------------------------------


@dataclass(frozen=True)
class Obstruction:
    """Outcome of deciding x ∈ ℘(K).

    For `in-image`, ℘(witness) + Σ c·t^e over `tails` agrees with the input
    below the witness cap; tails are the next terms of infinite telescoping
    witnesses of negative exponents (empty over Γ = Z).
    """

    status: str  # "in-image" | "blocked-exponent" | "residue-obstruction"
    witness: Optional[HahnElem] = None
    exponent: Optional[Fraction] = None
    residue: Optional[FFElem] = None
    tails: tuple = field(default=())

    def in_image(self) -> bool:
        return self.status == "in-image"

    def describe(self) -> str:
        if self.status == "in-image":
            return f"in-image: witness {self.witness}"
        if self.status == "blocked-exponent":
            return f"not-in-image: blocked-exponent {fmt_exp(self.exponent)}"
        return f"not-in-image: residue-obstruction {self.residue}"


def _frob_inv(c: FFElem) -> FFElem:
    return frobenius(c, -1)


def _reduce_negative(x: HahnElem):
    """Split the negative part of x over Γ = Z into (residual, witness) term maps."""
    p = x.base.p
    local = {e: c for e, c in x.terms if e < 0}
    wit: dict[Fraction, FFElem] = {}
    # most negative first; moved terms land strictly closer to 0
    keys = sorted(local)
    i = 0
    while i < len(keys):
        e = keys[i]
        c = local.get(e)
        if c and e.numerator % p == 0:
            r = _frob_inv(c)
            f = e / p
            local[e] = x.base.zero
            if f in local:
                local[f] = local[f] + r
            else:
                local[f] = r
                keys = sorted(set(keys) | {f})
            wit[f] = wit[f] + r if f in wit else r
        i += 1
    residual = {e: c for e, c in local.items() if c}
    return residual, {e: c for e, c in wit.items() if c}


def hs_residual(y: HahnElem) -> dict:
    """F_p-linear coordinates of y in K/℘(K); empty iff y ∈ ℘(K).

    Keys are (exponent, i) for the i-th F_p-coordinate of a blocked negative
    coefficient (Γ = Z only) and "const" for the trace of the constant term.
    """
    if y.cap is not None and y.cap <= 0:
        raise InsufficientPrecision("cap hides nonpositive exponents")
    out = {}
    if y.group.kind == "Z":
        residual, _ = _reduce_negative(y)
        for e, c in residual.items():
            for i, v in enumerate(c.c):
                if v:
                    out[(e, i)] = v
    tr = ff_trace(y.coeff(0)).c[0]
    if tr:
        out["const"] = tr
    return out


def _positive_witness(pos: HahnElem, cap: Fraction) -> HahnElem:
    """-(y + y^p + y^(p^2) + ...) truncated below cap; ℘ of it is y mod t^cap."""
    acc = pos._like([], cap)
    y = pos.with_cap(cap)
    while y.terms:
        acc = acc - y
        y = y.frobenius().with_cap(cap)
    return acc


def hs_wp_obstruction(x: HahnElem, cap=None, depth: int = TELESCOPE_DEPTH) -> Obstruction:
    if x.cap is not None and x.cap <= 0:
        raise InsufficientPrecision(f"cap O(t^{x.cap}) hides nonpositive exponents")
    wcap = _min_cap(x.cap, None if cap is None else Fraction(cap))
    if wcap is None:
        wcap = DEFAULT_WITNESS_CAP
    base, group = x.base, x.group
    witness_terms: dict[Fraction, FFElem] = {}
    tails = []

    def put(e, c):
        witness_terms[e] = witness_terms[e] + c if e in witness_terms else c

    if group.kind == "Z":
        residual, wit = _reduce_negative(x)
        if residual:
            return Obstruction("blocked-exponent", exponent=min(residual))
        for e, c in wit.items():
            put(e, c)
    else:
        for e, c in x.terms:
            if e >= 0:
                break
            ck = c
            for k in range(1, depth + 1):
                ck = _frob_inv(ck)
                put(e / base.p**k, ck)
            tails.append((e / base.p**depth, ck))
    c0 = x.coeff(0)
    if ff_trace(c0):
        return Obstruction("residue-obstruction", residue=c0)
    if c0:
        put(Fraction(0), ff_wp_preimage(c0))
    pos = x._like([(e, c) for e, c in x.terms if e > 0], None)
    w = HahnElem(base, group, witness_terms, wcap) + _positive_witness(pos, wcap)
    return Obstruction("in-image", witness=w, tails=tuple(tails))


def check_obstruction(x: HahnElem, ob: Obstruction) -> bool:
    """Re-verify an in-image certificate: ℘(w) + tails ≡ x below the witness cap."""
    if not ob.in_image():
        return False
    w = ob.witness
    total = hs_wp(w) + HahnElem(x.base, x.group, list(ob.tails))
    diff = (total - x).with_cap(w.cap)
    return not diff.terms


def hs_coset_functional(x: HahnElem, a: HahnElem, cap=None) -> Obstruction:
    """Decide x ∈ a·℘(K) through the obstruction of x/a."""
    if a.is_zero():
        raise DivisionByZero("coset functional at a = 0")
    q = hs_div(x, a, cap if cap is not None else DEFAULT_WITNESS_CAP)
    return hs_wp_obstruction(q, cap)


# -- Hensel-Newton lifting of Artin-Schreier roots ---------------------------------


def hensel_steps(a: HahnElem, b: HahnElem, x0: FFElem, cap) -> Iterator[tuple[HahnElem, HahnElem]]:
    """Yield (x_n, f(x_n)) for Newton on f(x) = a(x^p - x) - b, all mod t^cap."""
    cap = Fraction(cap)
    if not a.terms or a.terms[0][0] != 0:
        raise NonUnitLeadingCoefficient("a must have valuation 0")
    if b.terms and b.terms[0][0] < 0:
        raise DomainError("b must have nonnegative valuation")
    inv_a = hs_div(HahnElem.const(a.base, a.group, 1), a, cap)
    x = HahnElem.const(a.base, a.group, x0)
    f = a * hs_wp(x) - b
    if f.terms and f.terms[0][0] <= 0:
        raise NotAResidueRoot(f"{x0} is not a root of the residue polynomial")
    while True:
        yield x, f
        f = f.with_cap(cap)
        if not f.terms:
            return
        x = (x + f * inv_a).with_cap(cap)
        f = a * hs_wp(x) - b


def hs_hensel_lift_as(a: HahnElem, b: HahnElem, x0: FFElem, cap=DEFAULT_WITNESS_CAP) -> HahnElem:
    """Root x of a(x^p - x) = b modulo t^cap with residue x0."""
    cap = Fraction(cap)
    prev = None
    x = None
    exact = True
    for x, f in hensel_steps(a, b, x0, cap):
        v = f.lowest()
        if prev is not None and v is not None:
            assert v >= min(2 * prev, cap), f"Newton defect valuation {v} did not double from {prev}"
        prev = v
        exact = f.is_exact() and f.is_zero()
    if exact and a.is_exact() and b.is_exact() and x.is_exact():
        return x
    return x.with_cap(cap)


@dataclass(frozen=True)
class PadicInt:
    p: int
    prec: int
    value: int

    def __post_init__(self):
        if self.prec < 1:
            raise DomainError("precision must be >= 1")
        object.__setattr__(self, "value", self.value % self.p**self.prec)

    def __str__(self) -> str:
        return f"{self.value} mod {self.p}^{self.prec}"


def _vp(n: int, p: int, prec: int) -> int:
    n %= p**prec
    if n == 0:
        return prec
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_hensel_steps(a: int, b: int, x0: int, p: int, prec: int) -> Iterator[tuple[int, int]]:
    """Yield (x_n, v_p(f(x_n))) for Newton on a(x^p - x) - b modulo p^prec."""
    m = p**prec
    if a % p == 0:
        raise NonUnit("a must be a p-adic unit")
    f = lambda x: (a * (pow(x, p, m) - x) - b) % m
    x = x0 % m
    if f(x) % p:
        raise NotAResidueRoot(f"{x0} is not a residue root")
    while True:
        fx = f(x)
        yield x, _vp(fx, p, prec)
        if fx == 0:
            return
        deriv = (a * (p * pow(x, p - 1, m) - 1)) % m
        x = (x - fx * pow(deriv, -1, m)) % m


def padic_hensel_lift_as(a, b, x0: int, prec: int | None = None, p: int | None = None) -> PadicInt:
    """Root of a(x^p - x) = b modulo p^prec with residue x0; a, b are PadicInt or ints."""
    if isinstance(a, PadicInt):
        p, prec = a.p, prec or a.prec
        a = a.value
    if isinstance(b, PadicInt):
        p, prec = b.p, prec or b.prec
        b = b.value
    if p is None or prec is None:
        raise DomainError("prime and precision are required")
    prev = None
    x = x0
    for x, v in padic_hensel_steps(a, b, x0, p, prec):
        if prev is not None:
            assert v >= min(2 * prev, prec), f"defect valuation {v} did not double from {prev}"
        prev = v
    return PadicInt(p, prec, x)


# -- literals ------------------------------------------------------------------------


class _HahnAdapter:
    variables = ("t", "s")

    def __init__(self, base: FiniteField, group: ValueGroupTag):
        self.base, self.group = base, group

    def const(self, n):
        return HahnElem.const(self.base, self.group, n)

    def ffconst(self, coeffs):
        return HahnElem.const(self.base, self.group, self.base(coeffs))

    def monomial(self, e):
        return HahnElem.monomial(self.base, self.group, 1, e)

    def pow(self, v, e):
        return v ** e

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)

    @staticmethod
    def div(a, b):
        return hs_div(a, b)

    def big_o(self, v):
        if len(v.terms) != 1 or v.terms[0][1] != 1 or not v.is_exact():
            raise ParseError("O(...) takes a single monomial t^N")
        return HahnElem(self.base, self.group, [], v.terms[0][0])


def parse_series(base: FiniteField, group: ValueGroupTag, text: str) -> HahnElem:
    return parse_with(text, _HahnAdapter(base, group))


# the homogenization encoder lives with the finite-field polynomials it acts on
from .encode import homogenize, no_common_root_encode  # noqa: E402,F401
