"""The rational function field F_p(t) and Artin-Schreier reduction on it.

Reduction works pole by pole on partial fractions. At a pole with local
parameter s (s = 1/(t - c) at a finite pole, s = t at infinity) a term
c·s^n with p | n is rewritten as ℘(c·s^(n/p)) + c·s^(n/p), using c^p = c in
F_p. What survives has every pole order prime to p plus a constant, and that
is the canonical representative of x + ℘(F_p(t)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import polyp
from .errors import DivisionByZero, DomainError, ParseError, UnsupportedPole
from .ff import is_prime
from .parse import parse_with

INF = "inf"
Pole = Union[int, str]


class RatFunc:
    """num/den over Z/p with den monic and gcd(num, den) = 1."""

    __slots__ = ("p", "num", "den")

    def __init__(self, p: int, num, den=(1,)):
        num, den = polyp.trim([c % p for c in num]), polyp.trim([c % p for c in den])
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            den = [1]
        else:
            g = polyp.gcd(num, den, p)
            if len(g) > 1:
                num = polyp.divmod_(num, g, p)[0]
                den = polyp.divmod_(den, g, p)[0]
            lead = pow(den[-1], -1, p)
            num, den = polyp.scale(num, lead, p), polyp.scale(den, lead, p)
        self.p = p
        self.num = tuple(num)
        self.den = tuple(den)

    @classmethod
    def const(cls, p: int, c: int) -> "RatFunc":
        return cls(p, [c])

    @classmethod
    def t(cls, p: int) -> "RatFunc":
        return cls(p, [0, 1])

    @classmethod
    def monomial(cls, p: int, c: int, n: int) -> "RatFunc":
        if n >= 0:
            return cls(p, [0] * n + [c])
        return cls(p, [c], [0] * (-n) + [1])

    def _check(self, other) -> "RatFunc":
        if isinstance(other, int):
            return RatFunc.const(self.p, other)
        if not isinstance(other, RatFunc) or other.p != self.p:
            raise DomainError("incompatible rational functions")
        return other

    def __add__(self, other):
        o, p = self._check(other), self.p
        n = polyp.add(polyp.mul(self.num, o.den, p), polyp.mul(o.num, self.den, p), p)
        return RatFunc(p, n, polyp.mul(self.den, o.den, p))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.p, [-c for c in self.num], self.den)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o, p = self._check(other), self.p
        return RatFunc(p, polyp.mul(self.num, o.num, p), polyp.mul(self.den, o.den, p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o, p = self._check(other), self.p
        if not o.num:
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(p, polyp.mul(self.num, o.den, p), polyp.mul(self.den, o.num, p))

    def __rtruediv__(self, other):
        return self._check(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return RatFunc.const(self.p, 1) / self ** (-e)
        out = RatFunc.const(self.p, 1)
        for _ in range(e):
            out = out * self
        return out

    def frobenius(self) -> "RatFunc":
        """x^p, computed as x(t^p) since coefficients lie in F_p."""
        p = self.p

        def spread(a):
            out = [0] * (p * (len(a) - 1) + 1) if a else []
            for i, c in enumerate(a):
                out[p * i] = c
            return out

        return RatFunc(p, spread(self.num), spread(self.den))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(self.p, other)
        return isinstance(other, RatFunc) and (self.p, self.num, self.den) == (other.p, other.num, other.den)

    def __hash__(self):
        return hash((self.p, self.num, self.den))

    def __str__(self) -> str:
        n = poly_str(self.num)
        if self.den == (1,):
            return n
        return f"({n})/({poly_str(self.den)})"

    __repr__ = __str__


def poly_str(a, var: str = "t") -> str:
    if not a:
        return "0"
    terms = []
    for i, c in enumerate(a):
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


def rf_wp(x: RatFunc) -> RatFunc:
    return x.frobenius() - x


@dataclass(frozen=True)
class ASReducedForm:
    """Canonical representative of a class in F_p(t)/℘(F_p(t)).

    `polar` holds (pole, order, coefficient) with p ∤ order; a pole may carry
    several orders. Finite poles come first in ascending order, then infinity.
    """

    p: int
    polar: tuple[tuple[Pole, int, int], ...]
    constant: int

    def is_zero(self) -> bool:
        return not self.polar and self.constant == 0

    def coordinates(self) -> dict:
        out = {(pole, n): c for pole, n, c in self.polar}
        if self.constant:
            out["const"] = self.constant
        return out

    def __str__(self) -> str:
        parts = [f"({pole},{n},{c})" for pole, n, c in self.polar]
        return "polar: [" + ", ".join(parts) + f"] constant: {self.constant}"


def _pole_key(entry):
    pole, n, _ = entry
    return (pole == INF, pole if pole != INF else 0, n)


def _local_term(p: int, pole: Pole, n: int, c: int) -> RatFunc:
    """c·s^n for the local parameter s at `pole`."""
    if pole == INF:
        return RatFunc.monomial(p, c, n)
    return RatFunc(p, [c], polyp.mul([1], _linear_power(pole, n, p), p))


def _linear_power(c: int, n: int, p: int) -> list[int]:
    out = [1]
    for _ in range(n):
        out = polyp.mul(out, [(-c) % p, 1], p)
    return out


def realize(form: ASReducedForm) -> RatFunc:
    p = form.p
    acc = RatFunc.const(p, form.constant)
    for pole, n, c in form.polar:
        acc = acc + _local_term(p, pole, n, c)
    return acc


def _split_denominator(den: tuple[int, ...], p: int) -> dict[int, int]:
    rest = list(den)
    mult: dict[int, int] = {}
    for c in range(p):
        while len(rest) > 1 and polyp.evaluate(rest, c, p) == 0:
            rest = polyp.divmod_(rest, [(-c) % p, 1], p)[0]
            mult[c] = mult.get(c, 0) + 1
    if len(rest) > 1:
        raise UnsupportedPole(f"denominator factor {poly_str(rest)} is not linear over F_{p}")
    return mult


def _series_div(a: list[int], b: list[int], n: int, p: int) -> list[int]:
    """First n coefficients of a/b as a power series; b[0] != 0."""
    inv0 = pow(b[0], -1, p)
    out = []
    a = list(a) + [0] * n
    for i in range(n):
        c = (a[i] * inv0) % p
        out.append(c)
        if c:
            for j, bj in enumerate(b):
                if i + j < len(a):
                    a[i + j] = (a[i + j] - c * bj) % p
    return out


def principal_parts(x: RatFunc) -> tuple[dict[Pole, dict[int, int]], int]:
    """Partial fractions: {pole: {order: coeff}} in local parameters, plus constant."""
    p = x.p
    mult = _split_denominator(x.den, p)
    quot, rem = polyp.divmod_(list(x.num), list(x.den), p)
    parts: dict[Pole, dict[int, int]] = {}
    for c, e in mult.items():
        g = polyp.divmod_(list(x.den), _linear_power(c, e, p), p)[0]
        s = _series_div(polyp.shift(rem, c, p), polyp.shift(g, c, p), e, p)
        local = {j: s[e - j] for j in range(1, e + 1) if s[e - j]}
        if local:
            parts[c] = local
    at_inf = {n: quot[n] for n in range(1, len(quot)) if quot[n]}
    if at_inf:
        parts[INF] = at_inf
    return parts, (quot[0] if quot else 0)


def _witness_from_terms(p: int, terms: dict[Pole, dict[int, int]]) -> RatFunc:
    acc = RatFunc.const(p, 0)
    for pole, local in terms.items():
        if not local:
            continue
        if pole == INF:
            num = [0] * (max(local) + 1)
            for n, c in local.items():
                num[n] = c
            acc = acc + RatFunc(p, num)
        else:
            top = max(local)
            num: list[int] = []
            for n, c in local.items():
                num = polyp.add(num, polyp.scale(_linear_power(pole, top - n, p), c, p), p)
            acc = acc + RatFunc(p, num, _linear_power(pole, top, p))
    return acc


def rf_as_reduce(x: RatFunc) -> tuple[ASReducedForm, RatFunc]:
    """Return (form, witness) with x = realize(form) + ℘(witness)."""
    p = x.p
    parts, constant = principal_parts(x)
    polar: list[tuple[Pole, int, int]] = []
    wit: dict[Pole, dict[int, int]] = {}
    for pole, local in parts.items():
        local = dict(local)
        w = wit.setdefault(pole, {})
        for n in range(max(local), 0, -1):
            c = local.get(n, 0)
            if c and n % p == 0:
                local[n] = 0
                local[n // p] = (local.get(n // p, 0) + c) % p
                w[n // p] = (w.get(n // p, 0) + c) % p
        polar.extend((pole, n, c) for n, c in local.items() if c)
        wit[pole] = {n: c for n, c in w.items() if c}
    polar.sort(key=_pole_key)
    return ASReducedForm(p, tuple(polar), constant % p), _witness_from_terms(p, wit)


def rf_wp_member(x: RatFunc, a: RatFunc) -> bool:
    """x ∈ a·℘(F_p(t))."""
    if not a:
        raise DivisionByZero("membership in 0·℘ is not defined here")
    form, _ = rf_as_reduce(x / a)
    return form.is_zero()


class _RatFuncAdapter:
    variables = ("t",)

    def __init__(self, p: int):
        self.p = p

    def const(self, n):
        return RatFunc.const(self.p, n)

    def ffconst(self, coeffs):
        if len(coeffs) > 1 and any(coeffs[1:]):
            raise ParseError("F_p(t) coefficients must lie in the prime field")
        return RatFunc.const(self.p, coeffs[0] if coeffs else 0)

    def monomial(self, e: Fraction):
        if e.denominator != 1:
            raise ParseError("rational functions take integer exponents")
        return RatFunc.monomial(self.p, 1, int(e))

    def pow(self, v, e):
        return v ** e

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    div = staticmethod(lambda a, b: a / b)
    neg = staticmethod(lambda a: -a)

    def big_o(self, v):
        raise ParseError("O(...) is not valid for rational functions")


def parse_ratfunc(p: int, text: str) -> RatFunc:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    return parse_with(text, _RatFuncAdapter(p))
