"""Field oracles deciding the two formulas the patterns are built on.

    phi(x; y1..yn):  x ∈ y1···yn·℘(K)
    psi(x; y, z):    x + z ∈ y·℘(K)

Every carrier exposes `residual(w)`, the F_p-linear coordinates of the class
of w in K/℘(K) (empty iff w ∈ ℘(K)). Both formulas reduce to it, and so does
the affine linear algebra behind TP2 consistency.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import (CapExhausted, DivisionByZero, DomainError, InsufficientPrecision, NonIntegralInput,
                     OracleDomainError, ParseError, UnsupportedPole)
from .ff import FFElem, FiniteField, ff_trace, field_of_order, is_prime, parse_ff
from .hahn import (HahnElem, IntZ, PadicInt, RatQ, ValueGroupTag, ZinvP, hs_div, hs_residual,
                   parse_series)
from .ratfunc import INF, RatFunc, parse_ratfunc, principal_parts, rf_as_reduce

# cap used when a quotient has infinite support; residuals only read exponents <= 0
RESIDUAL_CAP = Fraction(1)


class Carrier:
    name = "?"
    p: int
    tp2_capable = True

    def parse(self, text: str):
        raise NotImplementedError

    def fmt(self, x) -> str:
        return str(x)

    def zero(self):
        return self.parse("0")

    def one(self):
        return self.parse("1")

    def is_zero(self, x) -> bool:
        return not x

    def div(self, x, y):
        return x / y

    def residual(self, w) -> dict:
        raise NotImplementedError

    def member(self, w) -> bool:
        return not self.residual(w)

    def product(self, ys: Sequence):
        acc = self.one()
        for y in ys:
            acc = acc * y
        return acc

    def sat_phi(self, x, ys: Sequence) -> bool:
        """x ∈ y1···yn·℘(K); a zero product leaves only x = 0."""
        prod = self.product(ys)
        if self.is_zero(prod):
            return self.is_zero(x)
        try:
            return self.member(self.div(x, prod))
        except (UnsupportedPole, InsufficientPrecision) as exc:
            raise OracleDomainError(str(exc)) from exc

    def sat_psi(self, x, y, z) -> bool:
        return self.sat_phi(x + z, [y])

    def window(self, conds) -> tuple[list, bool]:
        """F_p-spanning set of candidate x for TP2 consistency, and whether it is complete."""
        raise OracleDomainError(f"{self.name} does not support TP2 consistency")

    def lift(self, c: FFElem):
        raise OracleDomainError(f"{self.name} is not a lifting target")

    def valuation(self, x):
        raise OracleDomainError(f"{self.name} has no valuation")

    def __eq__(self, other):
        return type(self) is type(other) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self) -> str:
        return self.name


class FiniteFieldCarrier(Carrier):
    """F_q; K/℘(K) ≅ F_p through the absolute trace."""

    def __init__(self, field: FiniteField):
        self.field = field
        self.p = field.p
        self.name = field.name

    def parse(self, text: str):
        return parse_ff(self.field, text)

    def zero(self):
        return self.field.zero

    def one(self):
        return self.field.one

    def residual(self, w) -> dict:
        tr = ff_trace(self.field(w)).c[0]
        return {"tr": tr} if tr else {}

    def window(self, conds):
        return self.field.basis(), True

    def elements(self):
        return self.field.elements()


class RatFuncCarrier(Carrier):
    def __init__(self, p: int):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}(t)"

    def parse(self, text: str):
        return parse_ratfunc(self.p, text)

    def zero(self):
        return RatFunc.const(self.p, 0)

    def one(self):
        return RatFunc.const(self.p, 1)

    def residual(self, w) -> dict:
        try:
            form, _ = rf_as_reduce(w)
        except UnsupportedPole as exc:
            raise OracleDomainError(str(exc)) from exc
        return form.coordinates()

    def window(self, conds):
        exps = set()
        poles: dict[int, int] = {}
        for a, z in conds:
            for v in (a, z):
                parts, _ = principal_parts(v)
                for pole, local in parts.items():
                    if pole == INF:
                        exps.update(local)
                    else:
                        poles[pole] = max(poles.get(pole, 0), max(local))
                exps.add(len(v.num) - len(v.den))
        lo = min(min(exps, default=0), 0) * self.p - 1
        hi = max(max(exps, default=0), 0) + 1
        basis = [RatFunc.monomial(self.p, 1, e) for e in range(lo, hi + 1)]
        for c, n in sorted(poles.items()):
            if c == 0:
                continue
            for j in range(1, n * self.p + 2):
                den = [1]
                for _ in range(j):
                    den = _mul_linear(den, c, self.p)
                basis.append(RatFunc(self.p, [1], den))
        return basis, False


def _mul_linear(a: list[int], c: int, p: int) -> list[int]:
    out = [0] * (len(a) + 1)
    for i, x in enumerate(a):
        out[i + 1] = (out[i + 1] + x) % p
        out[i] = (out[i] - c * x) % p
    return out


class HahnCarrier(Carrier):
    """F_q((Γ)) on finite-support elements with optional caps."""

    def __init__(self, base: FiniteField, group: ValueGroupTag, var: str = "t"):
        self.base = base
        self.group = group
        self.p = base.p
        self.var = var
        self.name = f"{base.name}(({var if group.kind == 'Z' and var != 't' else group}))"

    def parse(self, text: str):
        if self.var != "t":
            text = text.replace(self.var, "t")
        return parse_series(self.base, self.group, text)

    def fmt(self, x) -> str:
        return str(x) if self.var == "t" else str(x).replace("t", self.var)

    def zero(self):
        return HahnElem(self.base, self.group)

    def one(self):
        return HahnElem.const(self.base, self.group, 1)

    def is_zero(self, x) -> bool:
        return x.is_exact() and x.is_zero()

    def div(self, x, y):
        if self.is_zero(y):
            raise DivisionByZero("division by zero series")
        try:
            return hs_div(x, y, RESIDUAL_CAP)
        except CapExhausted:
            # the quotient is O(t^1): nothing at or below exponent 0
            return HahnElem(self.base, self.group, (), RESIDUAL_CAP)

    def residual(self, w) -> dict:
        return hs_residual(w)

    def lift(self, c: FFElem):
        return HahnElem.const(self.base, self.group, c)

    def valuation(self, x):
        return x.lowest()

    def window(self, conds):
        divisible = self.group.kind != "Z"
        monomial = all(len(a.terms) == 1 and a.is_exact() for a, _ in conds)
        beta = self.base.basis()

        def mono(e):
            return [HahnElem.monomial(self.base, self.group, b, e) for b in beta]

        if monomial and divisible:
            exps = sorted({a.terms[0][0] for a, _ in conds})
            return [w for e in exps for w in mono(e)], True
        gammas = {a.terms[0][0] for a, _ in conds}
        if monomial and len(gammas) == 1:
            (g,) = gammas
            heads = {Fraction(0)}
            for a, z in conds:
                for key in self.residual(self.div(z, a)):
                    if key != "const":
                        heads.add(key[0])
            exps = sorted({g + h * self.p**j for h in heads for j in range(self.base.k)})
            return [w for e in exps for w in mono(e)], True
        exps: set[Fraction] = set()
        for a, z in conds:
            for v in (a, z):
                exps.update(e for e, _ in v.terms)
        exps.add(Fraction(0))
        if divisible:
            grid = sorted(exps)
        else:
            lo = int(min(min(exps), 0)) * self.p - 1
            hi = int(max(exps)) + 1
            grid = [Fraction(e) for e in range(lo, hi + 1)]
        return [w for e in grid for w in mono(e)], False


class PadicCarrier(Carrier):
    """Z_p mod p^prec, for integral inputs only.

    For a unit-or-integral w, w ∈ ℘(Q_p) iff w ≡ 0 mod p: roots of T^p - T
    over F_p are simple, and v(℘(f)) = p·v(f) < 0 rules out non-integral f.
    """

    tp2_capable = False

    def __init__(self, p: int, prec: int = 8):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if prec < 1:
            raise DomainError("precision must be at least 1")
        self.p = p
        self.prec = prec
        self.name = f"Z{p}"

    def parse(self, text: str):
        try:
            v = int(text.strip())
        except ValueError as exc:
            raise ParseError(f"bad p-adic literal {text!r}") from exc
        return PadicInt(self.p, self.prec, v % self.p**self.prec)

    def fmt(self, x) -> str:
        return str(x.value)

    def zero(self):
        return PadicInt(self.p, self.prec, 0)

    def one(self):
        return PadicInt(self.p, self.prec, 1)

    def is_zero(self, x) -> bool:
        return x.value == 0

    def product(self, ys):
        acc = 1
        for y in ys:
            acc = acc * y.value % self.p**self.prec
        return PadicInt(self.p, self.prec, acc)

    def div(self, x, y):
        if y.value % self.p == 0:
            raise NonIntegralInput("divisor is not a p-adic unit")
        mod = self.p**self.prec
        return PadicInt(self.p, self.prec, x.value * pow(y.value, -1, mod) % mod)

    def residual(self, w) -> dict:
        r = w.value % self.p
        return {"res": r} if r else {}

    def sat_psi(self, x, y, z):
        return self.sat_phi(PadicInt(self.p, self.prec, (x.value + z.value) % self.p**self.prec), [y])

    def lift(self, c: FFElem):
        if c.field.k != 1 or c.field.p != self.p:
            raise DomainError("p-adic lifts need prime-field residues")
        return PadicInt(self.p, self.prec, c.c[0])

    def valuation(self, x):
        if x.value == 0:
            return None
        v, n = 0, x.value
        while n % self.p == 0:
            n //= self.p
            v += 1
        return v


_FINITE = re.compile(r"^F(\d+)$")
_RAT = re.compile(r"^F(\d+)\(([a-z])\)$")
_SERIES = re.compile(r"^F(\d+)\(\((.+)\)\)$")
_PADIC = re.compile(r"^Z(\d+)$")


def parse_carrier(text: str, prec: int | None = None) -> Carrier:
    """`F4`, `F2(t)`, `F2((Q))`, `F2((Z))`, `F2((t))`, `F4((s))`, `F3((Z[1/3^inf]))`, `Z3`."""
    s = text.replace(" ", "")
    if m := _FINITE.match(s):
        return FiniteFieldCarrier(field_of_order(int(m.group(1))))
    if m := _RAT.match(s):
        q = int(m.group(1))
        if not is_prime(q):
            raise ParseError("rational function carriers need a prime field")
        return RatFuncCarrier(q)
    if m := _SERIES.match(s):
        base = field_of_order(int(m.group(1)))
        g = m.group(2)
        if g == "Q":
            return HahnCarrier(base, RatQ)
        if g in ("Z", "t"):
            return HahnCarrier(base, IntZ)
        if g == "s":
            return HahnCarrier(base, IntZ, "s")
        gm = re.match(r"^Z\[1/(\d+)\^inf\]$", g)
        if gm:
            if int(gm.group(1)) != base.p:
                raise DomainError("Z[1/p^inf] must use the characteristic")
            return HahnCarrier(base, ZinvP(base.p))
        raise ParseError(f"unknown value group {g!r}")
    if m := _PADIC.match(s):
        return PadicCarrier(int(m.group(1)), prec or 8)
    raise ParseError(f"unknown carrier {text!r}")
