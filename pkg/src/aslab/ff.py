"""Finite fields F_q = F_p[x]/(m(x)) and the Artin-Schreier operator on them.

The modulus m is the lexicographically first monic irreducible of degree k,
where candidates are ordered by the integer whose base-p digits are the lower
coefficients (constant term least significant). Elements carry their
coefficient tuple; small fields get exp/log tables for multiplication.
"""
from __future__ import annotations

import functools
from typing import Iterator, Sequence

from . import linalg, polyp
from .config import budget
from .errors import DivisionByZero, DomainError, ParseError

TABLE_LIMIT = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^k, raising DomainError if q is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                break
            return p, k
    raise DomainError(f"{q} is not a prime power")


def first_irreducible(p: int, k: int) -> tuple[int, ...]:
    for n in range(p**k):
        low = [(n // p**i) % p for i in range(k)]
        cand = low + [1]
        if polyp.is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FiniteField:
    """The field with q = p^k elements (the PrimePower of the build contract)."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p) or p > 97:
            raise DomainError(f"characteristic must be a prime <= 97, got {p}")
        if k < 1:
            raise DomainError("extension degree must be >= 1")
        if p**k > budget():
            raise DomainError(f"F_{p}^{k} exceeds the enumeration budget {budget()}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = first_irreducible(p, k)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._wp_matrix: list[list[int]] | None = None

    def __repr__(self) -> str:
        return f"GF({self.p}, {self.k})"

    def __reduce__(self):
        return (GF, (self.p, self.k))

    @property
    def name(self) -> str:
        return f"F{self.q}"

    # -- element construction -------------------------------------------------

    def __call__(self, value) -> "FFElem":
        if isinstance(value, FFElem):
            if value.field is not self:
                raise DomainError(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, int):
            return FFElem(self, (value % self.p,) + (0,) * (self.k - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            # reduce a longer polynomial modulo the defining polynomial
            coeffs = polyp.mod(polyp.trim(coeffs), list(self.modulus), self.p)
        coeffs = list(coeffs) + [0] * (self.k - len(coeffs))
        return FFElem(self, tuple(coeffs))

    @property
    def zero(self) -> "FFElem":
        return self(0)

    @property
    def one(self) -> "FFElem":
        return self(1)

    @property
    def gen(self) -> "FFElem":
        """The class of x (ω in F_4)."""
        return self([0, 1]) if self.k > 1 else self(0)

    def from_index(self, n: int) -> "FFElem":
        return FFElem(self, tuple((n // self.p**i) % self.p for i in range(self.k)))

    def elements(self) -> Iterator["FFElem"]:
        for n in range(self.q):
            yield self.from_index(n)

    def basis(self) -> list["FFElem"]:
        return [self([0] * i + [1]) for i in range(self.k)]

    # -- arithmetic helpers ---------------------------------------------------

    def _index(self, c: tuple[int, ...]) -> int:
        n = 0
        for x in reversed(c):
            n = n * self.p + x
        return n

    def _tables(self) -> bool:
        if self._exp is not None:
            return True
        if self.q > TABLE_LIMIT or self.k == 1:
            return False
        factors = _prime_factors(self.q - 1)
        m, p = list(self.modulus), self.p
        for n in range(2, self.q):
            g = [(n // p**i) % p for i in range(self.k)]
            g = polyp.trim(g)
            if all(polyp.powmod(g, (self.q - 1) // f, m, p) != [1] for f in factors):
                break
        exp = [0] * (self.q - 1)
        log = [0] * self.q
        cur = [1]
        for i in range(self.q - 1):
            idx = self._index(tuple(cur + [0] * (self.k - len(cur))))
            exp[i] = idx
            log[idx] = i
            cur = polyp.mod(polyp.mul(cur, g, p), m, p)
        self._exp, self._log = exp, log
        return True

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        if self.k == 1:
            return ((a[0] * b[0]) % p,)
        if self._tables():
            ia, ib = self._index(a), self._index(b)
            if ia == 0 or ib == 0:
                return (0,) * self.k
            return self.from_index(self._exp[(self._log[ia] + self._log[ib]) % (self.q - 1)]).c
        prod = polyp.mod(polyp.mul(polyp.trim(a), polyp.trim(b), p), list(self.modulus), p)
        return tuple(prod) + (0,) * (self.k - len(prod))

    def _pow(self, a: tuple[int, ...], e: int) -> tuple[int, ...]:
        if self.k == 1:
            return (pow(a[0], e, self.p),)
        if self._tables():
            ia = self._index(a)
            if ia == 0:
                return a if e > 0 else (1,) + (0,) * (self.k - 1)
            return self.from_index(self._exp[(self._log[ia] * e) % (self.q - 1)]).c
        r = polyp.powmod(polyp.trim(a), e, list(self.modulus), self.p)
        return tuple(r) + (0,) * (self.k - len(r))

    def wp_matrix(self) -> list[list[int]]:
        """Matrix of ℘ over F_p in the power basis; column j is ℘(x^j)."""
        if self._wp_matrix is None:
            cols = [ff_wp(e).c for e in self.basis()]
            self._wp_matrix = [[cols[j][i] for j in range(self.k)] for i in range(self.k)]
        return self._wp_matrix


@functools.lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)


def field_of_order(q: int) -> FiniteField:
    return GF(*prime_power(q))


class FFElem:
    __slots__ = ("field", "c")

    def __init__(self, field: FiniteField, c: tuple[int, ...]):
        self.field = field
        self.c = c

    def _coerce(self, other) -> "FFElem":
        if isinstance(other, FFElem):
            if other.field is not self.field:
                raise DomainError(f"mixing {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FFElem(self.field, tuple((x + y) % p for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FFElem(self.field, tuple((-x) % p for x in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FFElem(self.field, tuple((x - y) % p for x, y in zip(self.c, o.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field._mul(self.c, o.c))

    __rmul__ = __mul__

    def inverse(self) -> "FFElem":
        if not self:
            raise DivisionByZero("inverse of zero in " + self.field.name)
        return FFElem(self.field, self.field._pow(self.c, self.field.q - 2))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FFElem(self.field, self.field._pow(self.c, e))

    def __bool__(self) -> bool:
        return any(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field(other)
        return isinstance(other, FFElem) and other.field is self.field and other.c == self.c

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.k, self.c))

    @property
    def index(self) -> int:
        return self.field._index(self.c)

    def is_prime_field(self) -> bool:
        return not any(self.c[1:])

    def __str__(self) -> str:
        if self.field.k == 1:
            return str(self.c[0])
        return "[" + ",".join(map(str, self.c)) + "]"

    __repr__ = __str__


def frobenius(x: FFElem, times: int = 1) -> FFElem:
    """x^(p^times); negative times apply the inverse Frobenius."""
    f = x.field
    times %= f.k
    for _ in range(times):
        x = x ** f.p
    return x


def ff_wp(x: FFElem) -> FFElem:
    """The Artin-Schreier operator x^p - x."""
    return x ** x.field.p - x


def ff_trace(x: FFElem) -> FFElem:
    acc, y = x, x
    for _ in range(x.field.k - 1):
        y = y ** x.field.p
        acc = acc + y
    return acc


def ff_wp_member(x: FFElem) -> bool:
    """x ∈ ℘(F_q), decided by additive Hilbert 90 (trace zero)."""
    return not ff_trace(x)


def ff_wp_preimage(x: FFElem) -> FFElem | None:
    """Some y with ℘(y) = x, or None when x has nonzero trace."""
    f = x.field
    sol = linalg.solve(f.wp_matrix(), list(x.c), f.p, f.k)
    return None if sol is None else f(sol)


def ff_as_ext_count(field: FiniteField) -> int:
    """Number of distinct Artin-Schreier extensions, (p^d - 1)/(p - 1), d = dim F_q/℘(F_q)."""
    d = field.k - linalg.rank(field.wp_matrix(), field.p)
    return (field.p**d - 1) // (field.p - 1)


def wp_image(field: FiniteField) -> set[FFElem]:
    """Brute-force image of ℘; the oracle behind the trace criterion."""
    return {ff_wp(x) for x in field.elements()}


def parse_ff(field: FiniteField, text: str) -> FFElem:
    """Element literal: an integer, or a coefficient list `[c0,c1,...]`."""
    s = text.strip()
    try:
        if s.startswith("["):
            if not s.endswith("]"):
                raise ParseError(f"bad field element literal {text!r}")
            body = s[1:-1].strip()
            coeffs: Sequence[int] = [int(c) for c in body.split(",")] if body else []
            return field(list(coeffs))
        return field(int(s))
    except ValueError as exc:
        raise ParseError(f"bad field element literal {text!r}") from exc
