"""Homogenized rootless polynomials and the no-common-root encoder.

If d has degree n and no root in F, then D(z1, z2) = z2^n d(z1/z2) vanishes
only at (0, 0). Nesting D(f1, D(f2, ... D(f_{m-1}, f_m))) therefore gives a
single polynomial whose roots are exactly the common roots of f1..fm.
Polynomials are lists of field elements, lowest degree first.
"""
from __future__ import annotations

from typing import Sequence

from .errors import DomainError, RootedD
from .ff import FFElem, FiniteField

Poly = list  # list[FFElem], lowest degree first


def ptrim(a: Sequence[FFElem]) -> list[FFElem]:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def padd(a: Sequence[FFElem], b: Sequence[FFElem]) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return ptrim(out)


def pmul(a: Sequence[FFElem], b: Sequence[FFElem]) -> Poly:
    if not a or not b:
        return []
    zero = a[0].field.zero
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return ptrim(out)


def peval(a: Sequence[FFElem], x: FFElem) -> FFElem:
    acc = x.field.zero
    for c in reversed(a):
        acc = acc * x + c
    return acc


def roots(a: Sequence[FFElem], field: FiniteField) -> list[FFElem]:
    """All roots in the field, by exhaustion. The zero polynomial has every root."""
    return [x for x in field.elements() if not peval(a, x)]


def poly_of(field: FiniteField, coeffs: Sequence) -> Poly:
    return ptrim(field(c) for c in coeffs)


def _is_rootless_separable(d: Sequence[FFElem], field: FiniteField) -> bool:
    if len(d) < 2 or roots(d, field):
        return False
    deriv = [c * i for i, c in enumerate(d)][1:]
    # a rootless quadratic or cubic is irreducible, so d' != 0 makes it separable
    return bool(ptrim(deriv))


def default_d(field: FiniteField) -> Poly:
    """First monic rootless separable quadratic, then cubic, in index order of the lower coefficients."""
    q = field.q
    for n in (2, 3):
        for idx in range(q**n):
            low = [field.from_index((idx // q**i) % q) for i in range(n)]
            d = low + [field.one]
            if _is_rootless_separable(d, field):
                return d
    raise DomainError(f"no rootless quadratic or cubic over {field.name}")  # unreachable


def homogenize(d: Sequence[FFElem]) -> dict[tuple[int, int], FFElem]:
    """D(z1, z2) = z2^n d(z1/z2) as {(i, n - i): d_i}."""
    d = ptrim(d)
    if not d:
        raise DomainError("cannot homogenize the zero polynomial")
    n = len(d) - 1
    return {(i, n - i): c for i, c in enumerate(d) if c}


def eval_hom(D: dict[tuple[int, int], FFElem], u: FFElem, v: FFElem) -> FFElem:
    acc = u.field.zero
    for (i, j), c in D.items():
        acc = acc + c * u**i * v**j
    return acc


def hom_str(D: dict[tuple[int, int], FFElem]) -> str:
    def mono(var, e):
        return "" if e == 0 else (var if e == 1 else f"{var}^{e}")

    parts = []
    for (i, j), c in sorted(D.items(), reverse=True):
        m = "*".join(x for x in (mono("z1", i), mono("z2", j)) if x)
        if not m:
            parts.append(str(c))
        else:
            parts.append(m if c == 1 else f"{c}*{m}")
    return " + ".join(parts) if parts else "0"


def _compose(D: dict[tuple[int, int], FFElem], f: Poly, g: Poly) -> Poly:
    out: Poly = []
    for (i, j), c in D.items():
        term = [c]
        for _ in range(i):
            term = pmul(term, f)
        for _ in range(j):
            term = pmul(term, g)
        out = padd(out, term)
    return out


def check_rootless(d: Sequence[FFElem], field: FiniteField) -> None:
    found = roots(ptrim(d), field)
    if found:
        raise RootedD(f"d has the root {found[0]} in {field.name}")


def no_common_root_encode(fs: Sequence[Sequence[FFElem]], d: Sequence[FFElem] | None = None,
                          field: FiniteField | None = None) -> Poly:
    """D(f1, D(f2, ... D(f_{m-1}, f_m))); its roots are the common roots of the fs."""
    fs = [ptrim(f) for f in fs]
    if field is None:
        field = next((c.field for f in fs for c in f), None) or (d[0].field if d else None)
    if field is None:
        raise DomainError("cannot infer the coefficient field")
    if d is None:
        d = default_d(field)
    check_rootless(d, field)
    if not fs:
        raise DomainError("need at least one polynomial")
    D = homogenize(d)
    acc = fs[-1]
    for f in reversed(fs[:-1]):
        acc = _compose(D, f, acc)
    return acc
