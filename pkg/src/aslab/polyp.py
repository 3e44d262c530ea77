"""Dense polynomials over Z/p as int lists, lowest degree first.

The zero polynomial is []. Every function returns trimmed lists.
"""
from __future__ import annotations


def trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: list[int]) -> int:
    return len(a) - 1  # -1 for zero


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def scale(a, c, p):
    c %= p
    return trim([(x * c) % p for x in a]) if c else []


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([v % p for v in out])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = (a[i] * inv) % p
        if c:
            q[i - db] = c
            for j, y in enumerate(b):
                a[i - db + j] = (a[i - db + j] - c * y) % p
    return trim(q), trim(a[:db] if db else [])


def mod(a, b, p):
    return divmod_(a, b, p)[1]


def monic(a, p):
    if not a:
        return []
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def powmod(a, e, m, p):
    result = [1]
    base = mod(a, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        e >>= 1
    return result


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def derivative(a, p):
    return trim([(i * c) % p for i, c in enumerate(a)][1:])


def shift(a, c, p):
    """a(t + c) via Horner's rule."""
    out: list[int] = []
    for coef in reversed(a):
        out = add(mul(out, [c % p, 1], p), [coef % p], p)
    return out


def is_irreducible(f, p) -> bool:
    """Ben-Or test: no factor of degree <= deg(f)/2."""
    n = deg(f)
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        h = powmod(h, p, f, p)
        if deg(gcd(f, sub(h, x, p), p)) > 0:
            return False
    return True
