"""Finite IP, IP_n and TP2 patterns for phi and psi over carrier oracles.

Orientation: a column b_J satisfies phi(b_J; a_i) exactly when i ∈ J. Column
keys are bitmasks over the row cells, with cells of an IP_n grid enumerated
in `itertools.product(range(m), repeat=n)` order.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import linalg
from .carriers import Carrier, FiniteFieldCarrier, HahnCarrier, PadicCarrier, RatFuncCarrier
from .config import budget
from .encode import check_rootless, default_d
from .errors import (BudgetExceeded, DomainError, NonIntegralInput, OracleDomainError, ParseError,
                     ResidueMismatch, SearchExhausted, WindowTooSmall)
from .ff import ff_trace

MAX_IP_ROWS = 20
FULL_COLUMN_LIMIT = 256


@dataclass
class IPPattern:
    carrier: Carrier
    rows: list
    cols: dict  # bitmask -> element

    @property
    def m(self) -> int:
        return len(self.rows)


@dataclass
class IPnPattern:
    carrier: Carrier
    grids: list  # grids[k][i] = a^(k+1)_i
    cols: dict  # bitmask over cells -> element

    @property
    def n(self) -> int:
        return len(self.grids)

    @property
    def m(self) -> int:
        return len(self.grids[0]) if self.grids else 0

    def cells(self) -> list[tuple[int, ...]]:
        return list(itertools.product(range(self.m), repeat=self.n))


@dataclass
class TP2Pattern:
    carrier: Carrier
    grid: list  # grid[i][j] = (a, z)
    k: int = 2

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.grid), (len(self.grid[0]) if self.grid else 0)


@dataclass
class VerifyReport:
    incidence: dict
    expected: dict
    mismatches: list
    rows: list = field(default_factory=list)  # TP2: (row, subset, consistent)
    paths: list = field(default_factory=list)  # TP2: (path, consistent, witness)

    @property
    def verified(self) -> bool:
        return not self.mismatches


# -- verification ----------------------------------------------------------------


def verify_ip(pat: IPPattern, oracle: Carrier | None = None) -> VerifyReport:
    o = oracle or pat.carrier
    if pat.m > MAX_IP_ROWS:
        raise DomainError(f"at most {MAX_IP_ROWS} rows")
    inc, exp, bad = {}, {}, []
    for J in sorted(pat.cols):
        for i, a in enumerate(pat.rows):
            cell = (i, J)
            inc[cell] = o.sat_phi(pat.cols[J], [a])
            exp[cell] = bool(J >> i & 1)
            if inc[cell] != exp[cell]:
                bad.append(cell)
    return VerifyReport(inc, exp, bad)


def verify_ipn(pat: IPnPattern, oracle: Carrier | None = None) -> VerifyReport:
    o = oracle or pat.carrier
    cells = pat.cells()
    inc, exp, bad = {}, {}, []
    for J in sorted(pat.cols):
        for idx, cell in enumerate(cells):
            ys = [pat.grids[k][i] for k, i in enumerate(cell)]
            key = (cell, J)
            inc[key] = o.sat_phi(pat.cols[J], ys)
            exp[key] = bool(J >> idx & 1)
            if inc[key] != exp[key]:
                bad.append(key)
    return VerifyReport(inc, exp, bad)


def designated_columns(m: int, n: int) -> list[int]:
    """All subsets when there are few enough, else ∅, full, singletons and their complements."""
    cells = m**n
    if 2**cells <= FULL_COLUMN_LIMIT:
        return list(range(2**cells))
    full = (1 << cells) - 1
    cols = {0, full}
    for i in range(cells):
        cols.add(1 << i)
        cols.add(full ^ (1 << i))
    return sorted(cols)


def consistent(o: Carrier, conds: Sequence[tuple]) -> tuple[bool, Optional[object]]:
    """Decide whether some x satisfies psi(x; a, z) for every (a, z); return a witness.

    Equal parameters a reduce to congruences of the z's. Otherwise x is sought
    in the carrier's window by affine algebra over F_p; a failure there is
    conclusive only when the window is complete.
    """
    conds = list(conds)
    if not conds:
        return True, o.zero()
    forced = [z for a, z in conds if o.is_zero(a)]
    if forced:
        x = -forced[0]
        return all(o.sat_psi(x, a, z) for a, z in conds), x
    a0 = conds[0][0]
    if all(a == a0 for a, _ in conds):
        x = -conds[0][1]
        ok = all(o.sat_psi(x, a, z) for a, z in conds)
        return ok, (x if ok else None)
    basis, complete = o.window(conds)
    keys: dict = {}
    cols = []
    for w in basis:
        cols.append([o.residual(o.div(w, a)) for a, _ in conds])
    targets = [o.residual(o.div(z, a)) for a, z in conds]
    for ci in range(len(conds)):
        for key in set().union(targets[ci], *(c[ci] for c in cols)):
            keys[(ci, key)] = len(keys)
    p = o.p
    mat = [[0] * len(basis) for _ in keys]
    rhs = [0] * len(keys)
    for (ci, key), r in keys.items():
        for j, c in enumerate(cols):
            mat[r][j] = c[ci].get(key, 0) % p
        rhs[r] = (-targets[ci].get(key, 0)) % p
    sol = linalg.solve(mat, rhs, p, len(basis)) if keys else [0] * len(basis)
    if sol is None:
        if complete:
            return False, None
        raise WindowTooSmall(f"no witness in a window of {len(basis)} elements; undecided")
    x = o.zero()
    for lam, w in zip(sol, basis):
        if lam:
            x = x + w * lam
    assert all(o.sat_psi(x, a, z) for a, z in conds), "window witness failed re-verification"
    return True, x


def verify_tp2(pat: TP2Pattern, oracle: Carrier | None = None, paths="all") -> VerifyReport:
    o = oracle or pat.carrier
    r, m = pat.shape
    k = pat.k
    if r * m > budget():
        raise BudgetExceeded("pattern too large")
    inc, exp, bad = {}, {}, []
    row_table = []
    for i, row in enumerate(pat.grid):
        for sub in itertools.combinations(range(m), k):
            ok, _ = consistent(o, [row[j] for j in sub])
            row_table.append((i, sub, ok))
            inc[("row", i, sub)] = ok
            exp[("row", i, sub)] = False
            if ok:
                bad.append(("row", i, sub))
    if paths == "all":
        if m**r > budget():
            raise BudgetExceeded(f"{m}^{r} paths exceed the budget")
        path_list = list(itertools.product(range(m), repeat=r))
    else:
        path_list = [tuple(f) for f in paths]
    path_table = []
    for f in path_list:
        ok, x = consistent(o, [pat.grid[i][j] for i, j in enumerate(f)])
        path_table.append((f, ok, x))
        inc[("path", f)] = ok
        exp[("path", f)] = True
        if not ok:
            bad.append(("path", f))
    return VerifyReport(inc, exp, bad, row_table, path_table)


def brute_consistent(o: FiniteFieldCarrier, conds) -> bool:
    """Enumerate every x of a finite carrier; the oracle behind `consistent`."""
    return any(all(o.sat_psi(x, a, z) for a, z in conds) for x in o.elements())


# -- generation ------------------------------------------------------------------


def _nontrace_unit(o: Carrier):
    """A constant c with nonzero absolute trace (1 unless the degree is divisible by p)."""
    if isinstance(o, HahnCarrier):
        F = o.base
        c = next(x for x in F.elements() if ff_trace(x))
        return o.lift(c)
    one = o.one()
    if o.member(one):
        raise SearchExhausted(f"1 lies in ℘ over {o.name}")
    return one


def _is_divisible_series(o: Carrier) -> bool:
    return isinstance(o, HahnCarrier) and o.group.kind != "Z"


def _monomial(o: Carrier, e):
    if isinstance(o, HahnCarrier):
        return o.parse(f"t^({e})") if e else o.one()
    if isinstance(o, RatFuncCarrier):
        return o.parse(f"t^({e})") if e else o.one()
    raise OracleDomainError(f"{o.name} has no monomials")


def _window_basis(o: Carrier, radius: int) -> list:
    """Monomials of |exponent| <= radius, plus low-order poles at the other rational points."""
    if isinstance(o, HahnCarrier):
        return [o.parse(f"[{','.join('1' if t == s else '0' for t in range(o.base.k))}]*t^({e})")
                for e in range(-radius, radius + 1) for s in range(o.base.k)]
    basis = [_monomial(o, e) for e in range(-radius, radius + 1)]
    for c in range(1, o.p):
        basis.extend(o.parse(f"(t-{c})^({-n})") for n in range(1, radius + 1))
    return basis


def _dual_basis(o: Carrier, alist: Sequence, basis: Sequence) -> Optional[list]:
    """e_j with e_j ∈ a_i·℘(K) iff i != j, as F_p-combinations of `basis`; None if absent."""
    p = o.p
    res = [[o.residual(o.div(w, a)) for a in alist] for w in basis]
    out = []
    for j in range(len(alist)):
        found = None
        zero_rows = []
        for i in range(len(alist)):
            if i != j:
                for key in sorted({key for r in res for key in r[i]}, key=str):
                    zero_rows.append([r[i].get(key, 0) % p for r in res])
        for kj in sorted({key for r in res for key in r[j]}, key=str):
            mat = zero_rows + [[r[j].get(kj, 0) % p for r in res]]
            sol = linalg.solve(mat, [0] * len(zero_rows) + [1], p, len(basis))
            if sol is not None:
                found = o.zero()
                for lam, w in zip(sol, basis):
                    if lam:
                        found = found + w * lam
                break
        if found is None:
            return None
        out.append(found)
    return out


def _row_candidates(o: HahnCarrier, m: int) -> list:
    return [_monomial(o, e) for e in range(-2 * m - 2, 2 * m + 3)]


def _search_rows(o: Carrier, m: int, radius: int, max_checks: int = 60):
    """Greedy row selection: keep a candidate whenever the enlarged set still has a dual basis."""
    basis = _window_basis(o, radius)
    rows: list = []
    es = None
    for checks, cand in enumerate(_row_candidates(o, m)):
        if len(rows) == m or checks >= max_checks:
            break
        got = _dual_basis(o, rows + [cand], basis)
        if got is not None:
            rows.append(cand)
            es = got
    if len(rows) < m:
        raise SearchExhausted(f"greedy search stalled at {len(rows)} of {m} rows over {o.name}")
    return rows, es


def _finite_rows(o: FiniteFieldCarrier, m: int):
    basis = o.field.basis()
    for rows in itertools.combinations([x for x in o.elements() if x], m):
        es = _dual_basis(o, list(rows), basis)
        if es is not None:
            return list(rows), es
    raise SearchExhausted(f"{o.name} carries no IP pattern with {m} rows")


def _complement_sums(o: Carrier, es: Sequence, cols: Sequence[int]) -> dict:
    out = {}
    for J in cols:
        acc = o.zero()
        for j, e in enumerate(es):
            if not J >> j & 1:
                acc = acc + e
        out[J] = acc
    return out


def gen_ip(o: Carrier, m: int) -> IPPattern:
    if m < 0 or m > MAX_IP_ROWS:
        raise DomainError(f"rows must lie in 0..{MAX_IP_ROWS}")
    if m == 0:
        return IPPattern(o, [], {0: o.zero()})
    if isinstance(o, FiniteFieldCarrier):
        rows, es = _finite_rows(o, m)
    elif _is_divisible_series(o):
        rows = [_monomial(o, i) for i in range(m)]
        c = _nontrace_unit(o)
        es = [c * r for r in rows]
    elif isinstance(o, (HahnCarrier, RatFuncCarrier)):
        rows = [_monomial(o, i) for i in range(m)]
        es = _dual_basis(o, rows, _window_basis(o, o.p * m + 2))
        if es is None and isinstance(o, HahnCarrier):
            rows, es = _search_rows(o, m, o.p * (2 * m + 2) + 2)
        elif es is None:
            raise SearchExhausted(f"monomial rows admit no dual basis over {o.name} for m = {m}")
    else:
        raise OracleDomainError(f"IP generation is not available over {o.name}")
    pat = IPPattern(o, rows, _complement_sums(o, es, range(2**m)))
    assert verify_ip(pat).verified, "generated IP pattern failed verification"
    return pat


def gen_ipn(o: Carrier, n: int, m: int) -> IPnPattern:
    if n < 1 or m < 1:
        raise DomainError("n and m must be positive")
    grids = [[_monomial(o, i * (m + 1) ** k) for i in range(m)] for k in range(n)]
    cells = list(itertools.product(range(m), repeat=n))
    prods = [o.product([grids[k][i] for k, i in enumerate(c)]) for c in cells]
    if _is_divisible_series(o):
        c = _nontrace_unit(o)
        es = [c * pr for pr in prods]
    elif isinstance(o, (HahnCarrier, RatFuncCarrier)):
        es = _dual_basis(o, prods, _window_basis(o, o.p * (m + 1) ** n + 2))
        if es is None:
            raise SearchExhausted(f"no dual basis for the monomial IP_n grid over {o.name}")
    else:
        raise OracleDomainError(f"IP_n generation is not available over {o.name}")
    pat = IPnPattern(o, grids, _complement_sums(o, es, designated_columns(m, n)))
    assert verify_ipn(pat).verified, "generated IP_n pattern failed verification"
    return pat


def _tp2_pool(o: Carrier) -> list[tuple]:
    if isinstance(o, FiniteFieldCarrier):
        nz = [x for x in o.elements() if x]
        return [(a, z) for a in nz for z in o.elements()]
    if isinstance(o, HahnCarrier) and o.group.kind == "Z":
        a_exps, z_exps = [0, -1, 1], [-1, -2, -3, -5, 0]
    elif isinstance(o, HahnCarrier):
        a_exps, z_exps = [0, -1, 1], [-1, 0, 1, -2]
    elif isinstance(o, RatFuncCarrier):
        a_exps, z_exps = [0, -1, 1], [-1, -2, -3, -5, 0]
    else:
        raise OracleDomainError(f"TP2 search is not available over {o.name}")
    avals = [_monomial(o, e) for e in a_exps]
    zvals = []
    for r in range(len(z_exps) + 1):
        for S in itertools.combinations(z_exps, r):
            acc = o.zero()
            for e in S:
                acc = acc + _monomial(o, e)
            zvals.append(acc)
    return [(a, z) for a in avals for z in zvals]


def _inconsistent(o: Carrier, conds) -> bool:
    try:
        ok, _ = consistent(o, conds)
    except WindowTooSmall:
        return False
    return not ok


def _rows(o: Carrier, pool: list, m: int, k: int, limit: int):
    """Yield up to `limit` m-tuples of cells whose k-subsets are all inconsistent."""
    found = 0

    def extend(chosen, start):
        nonlocal found
        if found >= limit:
            return
        if len(chosen) == m:
            found += 1
            yield tuple(chosen)
            return
        for idx in range(start, len(pool)):
            cell = pool[idx]
            if len(chosen) + 1 >= k and not all(
                _inconsistent(o, [*sub, cell]) for sub in itertools.combinations(chosen, k - 1)
            ):
                continue
            yield from extend(chosen + [cell], idx + 1)
            if found >= limit:
                return

    yield from extend([], 0)


def gen_tp2(o: Carrier, r: int, m: int, k: int = 2, seed: int = 0, row_limit: int = 64) -> TP2Pattern:
    """Seeded search for r rows of m cells, rows k-inconsistent, every path consistent."""
    if r < 1 or m < 1 or k < 2:
        raise DomainError("need r >= 1, m >= 1, k >= 2")
    if r * m > 12:
        raise BudgetExceeded("TP2 search is limited to 12 cells")
    pool = _tp2_pool(o)
    random.Random(seed).shuffle(pool)
    if m < k:
        rows = [tuple(pool[i * m:(i + 1) * m]) for i in range(r)]
        pat = TP2Pattern(o, [list(row) for row in rows], k)
        if verify_tp2(pat).verified:
            return pat
        raise SearchExhausted("trivial rows are not path-consistent")
    # rows share one parameter a: their cells are then decided by the complete
    # congruence test, and only paths need the window
    by_a: dict = {}
    for cell in pool:
        by_a.setdefault(cell[0], []).append(cell)
    per = max(1, row_limit // len(by_a))
    candidates = [row for cells in by_a.values() for row in _rows(o, cells, m, k, per)]
    if not candidates:
        raise SearchExhausted(f"no row of {m} pairwise {k}-inconsistent cells over {o.name}")

    def paths_ok(rows):
        try:
            return all(consistent(o, [rows[i][j] for i, j in enumerate(f)])[0]
                       for f in itertools.product(range(m), repeat=len(rows)))
        except WindowTooSmall:
            return False

    def search(chosen):
        if len(chosen) == r:
            return chosen
        for cand in candidates:
            if cand in chosen:
                continue
            nxt = chosen + [cand]
            if paths_ok(nxt):
                got = search(nxt)
                if got:
                    return got
        return None

    rows = search([])
    if rows is None:
        raise SearchExhausted(f"no path-consistent {r}x{m} arrangement in the search space")
    pat = TP2Pattern(o, [list(row) for row in rows], k)
    assert verify_tp2(pat).verified, "generated TP2 pattern failed verification"
    return pat


# -- lifting ---------------------------------------------------------------------


def _check_target(src: Carrier, target: Carrier) -> None:
    if not isinstance(src, FiniteFieldCarrier):
        raise ResidueMismatch("patterns lift from a finite residue field")
    if isinstance(target, HahnCarrier):
        if target.base is not src.field:
            raise ResidueMismatch(f"target residue field {target.base.name} differs from {src.name}")
    elif isinstance(target, PadicCarrier):
        if src.field.k != 1 or src.field.p != target.p:
            raise ResidueMismatch(f"{target.name} has residue field F{target.p}, not {src.name}")
    else:
        raise ResidueMismatch(f"{target.name} is not a valued lifting target")


def _lift_param(target: Carrier, c, extra=None):
    x = target.lift(c)
    if extra is not None:
        v = target.valuation(extra)
        if v is not None and v <= 0:
            raise NonIntegralInput("perturbations must have positive valuation")
        x = x + extra
    return x


def _lift_row(target: Carrier, c):
    if not c:
        raise NonIntegralInput("row parameters must lift to units")
    return target.lift(c)


Perturbation = Optional[object]


def _perturb(perturbation, role, key):
    if perturbation is None:
        return None
    if callable(perturbation):
        return perturbation(role, key)
    return perturbation


def lift_pattern(pat, target: Carrier, perturbation: Perturbation = None):
    """Coefficient-wise lift to a henselian target with the same residue field.

    Row parameters must be units; a perturbation (an element, or a function of
    (role, key)) of positive valuation may be added to the other parameters.
    """
    _check_target(pat.carrier, target)
    if isinstance(pat, IPPattern):
        rows = [_lift_row(target, a) for a in pat.rows]
        cols = {J: _lift_param(target, b, _perturb(perturbation, "b", J)) for J, b in pat.cols.items()}
        return IPPattern(target, rows, cols)
    if isinstance(pat, IPnPattern):
        grids = [[_lift_row(target, a) for a in g] for g in pat.grids]
        cols = {J: _lift_param(target, b, _perturb(perturbation, "b", J)) for J, b in pat.cols.items()}
        return IPnPattern(target, grids, cols)
    if isinstance(pat, TP2Pattern):
        if not target.tp2_capable:
            raise OracleDomainError(f"{target.name} does not support TP2 patterns")
        check_rootless(default_d(pat.carrier.field), pat.carrier.field)
        grid = [[(_lift_row(target, a), _lift_param(target, z, _perturb(perturbation, "z", (i, j))))
                 for j, (a, z) in enumerate(row)] for i, row in enumerate(pat.grid)]
        return TP2Pattern(target, grid, pat.k)
    raise DomainError("unknown pattern type")


def verify(pat, oracle: Carrier | None = None) -> VerifyReport:
    if isinstance(pat, IPPattern):
        return verify_ip(pat, oracle)
    if isinstance(pat, IPnPattern):
        return verify_ipn(pat, oracle)
    return verify_tp2(pat, oracle)


def incidence_preserved(src, lifted) -> bool:
    return verify(src).incidence == verify(lifted).incidence


# -- pattern files ---------------------------------------------------------------
#
#   carrier: F2((Q))
#   kind: ip | ipn | tp2
#   k: 2                 (tp2 only)
#   rows:                ip:  <i>: <expr>
#   cols:                <mask>: <expr>
#   grid:                ipn: <k> <i>: <expr>    tp2: <i> <j>: <a> ; <z>


def format_pattern(pat) -> str:
    o = pat.carrier
    f = o.fmt
    if isinstance(pat, TP2Pattern):
        lines = [f"carrier: {o.name}", "kind: tp2", f"k: {pat.k}", "grid:"]
        lines += [f"  {i} {j}: {f(a)} ; {f(z)}" for i, row in enumerate(pat.grid) for j, (a, z) in enumerate(row)]
        return "\n".join(lines) + "\n"
    if isinstance(pat, IPPattern):
        lines = [f"carrier: {o.name}", "kind: ip", "rows:"]
        lines += [f"  {i}: {f(a)}" for i, a in enumerate(pat.rows)]
    elif isinstance(pat, IPnPattern):
        lines = [f"carrier: {o.name}", "kind: ipn", "grid:"]
        lines += [f"  {k} {i}: {f(a)}" for k, g in enumerate(pat.grids) for i, a in enumerate(g)]
    else:
        raise DomainError("unknown pattern type")
    lines.append("cols:")
    lines += [f"  {J}: {f(b)}" for J, b in sorted(pat.cols.items())]
    return "\n".join(lines) + "\n"


def _dense(d: dict, what: str) -> list:
    if sorted(d) != list(range(len(d))):
        raise ParseError(f"{what} indices must run 0..{len(d) - 1}")
    return [d[i] for i in range(len(d))]


def parse_pattern(text: str, prec: int | None = None):
    from .carriers import parse_carrier

    o = kind = block = None
    k = 2
    rows: dict = {}
    grid: dict = {}
    cols: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'key: value'")
        key, val = key.strip(), val.strip()
        try:
            if line[0].isspace():
                if block is None or o is None or kind is None:
                    raise ParseError("entry outside a rows/cols/grid block")
                idx = [int(v) for v in key.split()]
                if block == "rows" and kind == "ip" and len(idx) == 1:
                    rows[idx[0]] = o.parse(val)
                elif block == "cols" and kind in ("ip", "ipn") and len(idx) == 1:
                    cols[idx[0]] = o.parse(val)
                elif block == "grid" and kind == "ipn" and len(idx) == 2:
                    grid.setdefault(idx[0], {})[idx[1]] = o.parse(val)
                elif block == "grid" and kind == "tp2" and len(idx) == 2:
                    a, bar, z = val.partition(";")
                    if not bar:
                        raise ParseError("a tp2 cell reads 'a ; z'")
                    grid.setdefault(idx[0], {})[idx[1]] = (o.parse(a.strip()), o.parse(z.strip()))
                else:
                    raise ParseError(f"unexpected entry {key!r} in block {block!r}")
            elif key == "carrier":
                o = parse_carrier(val, prec)
            elif key == "kind":
                if val not in ("ip", "ipn", "tp2"):
                    raise ParseError(f"unknown pattern kind {val!r}")
                kind = val
            elif key == "k":
                k = int(val)
            elif key in ("rows", "cols", "grid") and not val:
                block = key
            else:
                raise ParseError(f"unknown key {key!r}")
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if o is None or kind is None:
        raise ParseError("missing carrier or kind")
    if kind == "ip":
        return IPPattern(o, _dense(rows, "row"), cols)
    if kind == "ipn":
        grids = [_dense(g, "grid") for g in _dense(grid, "grid")]
        if len({len(g) for g in grids}) > 1:
            raise ParseError("grids must have equal length")
        return IPnPattern(o, grids, cols)
    return TP2Pattern(o, [_dense(r, "cell") for r in _dense(grid, "row")], k)


def format_report(pat, rep: VerifyReport) -> str:
    lines = [f"verified: {str(rep.verified).lower()}", f"cells: {len(rep.incidence)}"]
    if isinstance(pat, TP2Pattern):
        lines.append("rows:")
        lines += [f"  {i} {' '.join(map(str, sub))}: {'consistent' if ok else 'inconsistent'}"
                  for i, sub, ok in rep.rows]
        lines.append("paths:")
        lines += [f"  {' '.join(map(str, f))}: " + (f"consistent x = {pat.carrier.fmt(x)}" if ok else "inconsistent")
                  for f, ok, x in rep.paths]
    lines.append("mismatches:")
    lines += [f"  {_cell_str(c)}" for c in rep.mismatches]
    return "\n".join(lines) + "\n"


def _cell_str(cell) -> str:
    if cell[0] == "row":
        return f"row {cell[1]} {' '.join(map(str, cell[2]))}"
    if cell[0] == "path":
        return "path " + " ".join(map(str, cell[1]))
    where, J = cell
    return f"{' '.join(map(str, where)) if isinstance(where, tuple) else where} J={J}"
