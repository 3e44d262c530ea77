"""Command-line front end.

Exit codes: 0 success or verified, 1 mathematically falsified (not in the
image, check fails, pattern mismatch, contradiction), 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import config
from .carriers import FiniteFieldCarrier, HahnCarrier, PadicCarrier, RatFuncCarrier, parse_carrier
from .classify import classify, compose, format_descriptor, format_verdict, parse_descriptor, semitame_eval, tri_str
from .conditions import bs_check, bsh_check, cks_check, format_verdict as format_condition, parse_family
from .encode import default_d, hom_str, homogenize, no_common_root_encode, poly_of, roots
from .errors import AslabError
from .ff import ff_trace, ff_wp, ff_wp_preimage, field_of_order, parse_ff
from .hahn import DEFAULT_WITNESS_CAP, PadicInt, hs_coset_functional, hs_hensel_lift_as, hs_wp, hs_wp_obstruction, \
    padic_hensel_lift_as
from .ogroup import og_finitely_ramified, og_roughly_p_divisible, og_standard_decomp, parse_elem, parse_group
from .patterns import (format_pattern, format_report, gen_ip, gen_ipn, gen_tp2, lift_pattern, parse_pattern,
                       verify)
from .ramsey import ramsey_value, step4_constant
from .ratfunc import realize, rf_as_reduce, rf_wp


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"aslab: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise AslabError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cap(args):
    return Fraction(args.prec) if args.prec else None


def _describe(o: HahnCarrier, ob) -> str:
    if ob.in_image():
        return f"in-image: witness {o.fmt(ob.witness)}"
    return ob.describe()


def _carrier(args):
    return parse_carrier(args.carrier, args.prec)


# -- Artin-Schreier commands ---------------------------------------------------------


def cmd_wp(args) -> int:
    o = _carrier(args)
    x = o.parse(args.x)
    if isinstance(o, FiniteFieldCarrier):
        y = ff_wp(x)
    elif isinstance(o, RatFuncCarrier):
        y = rf_wp(x)
    elif isinstance(o, HahnCarrier):
        y = hs_wp(x)
    else:
        m = o.p**o.prec
        y = PadicInt(o.p, o.prec, (pow(x.value, o.p, m) - x.value) % m)
    print(o.fmt(y))
    return 0


def cmd_member(args) -> int:
    o = _carrier(args)
    x, a = o.parse(args.x), o.parse(args.a)
    if isinstance(o, HahnCarrier):
        ob = hs_coset_functional(x, a, _cap(args))
        print(_describe(o, ob))
        return 0 if ob.in_image() else 1
    q = o.div(x, a)
    if isinstance(o, FiniteFieldCarrier):
        w = ff_wp_preimage(q)
        print(f"in-image: witness {w}" if w is not None else f"not-in-image: trace {ff_trace(q)}")
        return 0 if w is not None else 1
    if isinstance(o, RatFuncCarrier):
        form, w = rf_as_reduce(q)
        print(f"in-image: witness {o.fmt(w)}" if form.is_zero() else f"not-in-image: {form}")
        return 0 if form.is_zero() else 1
    r = o.residual(q)
    print("in-image" if not r else f"not-in-image: residue {r['res']}")
    return 0 if not r else 1


def cmd_reduce(args) -> int:
    o = RatFuncCarrier(args.p)
    x = o.parse(args.x)
    form, w = rf_as_reduce(x)
    print(f"form: {form}")
    print(f"representative: {realize(form)}")
    print(f"witness: {w}")
    return 0


def cmd_lift_as(args) -> int:
    o = _carrier(args)
    if isinstance(o, PadicCarrier):
        root = padic_hensel_lift_as(int(args.a), int(args.b), int(args.x0), o.prec, o.p)
        print(f"root: {root}")
        return 0
    if not isinstance(o, HahnCarrier):
        raise AslabError("lift-as needs a series or p-adic carrier")
    x0 = parse_ff(o.base, args.x0)
    root = hs_hensel_lift_as(o.parse(args.a), o.parse(args.b), x0, _cap(args) or DEFAULT_WITNESS_CAP)
    print(f"root: {o.fmt(root)}")
    return 0


def cmd_obstruction(args) -> int:
    o = _carrier(args)
    if not isinstance(o, HahnCarrier):
        raise AslabError("obstruction needs a series carrier")
    ob = hs_wp_obstruction(o.parse(args.x), _cap(args))
    print(_describe(o, ob))
    for e, c in ob.tails:
        print(f"tail: {c}*{o.var}^({e})")
    return 0 if ob.in_image() else 1


# -- patterns ------------------------------------------------------------------------


def cmd_pattern(args) -> int:
    if args.action == "gen":
        o = _carrier(args)
        if args.kind == "ip":
            pat = gen_ip(o, args.rows)
        elif args.kind == "ipn":
            pat = gen_ipn(o, args.n, args.rows)
        else:
            pat = gen_tp2(o, args.rows, args.cols, args.k, args.seed)
        _emit(format_pattern(pat), args.out)
        return 0
    pat = parse_pattern(_read(args.file), args.prec)
    if args.action == "verify":
        rep = verify(pat)
        sys.stdout.write(format_report(pat, rep))
        return 0 if rep.verified else 1
    target = parse_carrier(args.target, args.prec)
    pert = target.parse(args.perturb) if args.perturb else None
    lifted = lift_pattern(pat, target, pert)
    _emit(format_pattern(lifted), args.out)
    return 0


# -- conditions and groups -----------------------------------------------------------


def cmd_check(args) -> int:
    fam = parse_family(_read(args.file))
    G = fam.ambient
    if args.condition == "bs":
        v = bs_check(fam.members, args.N, G)
    elif args.condition == "bsh":
        v = bsh_check(fam.as_array(), args.N, G)
    else:
        v = cks_check(fam.members, args.N, G)
    sys.stdout.write(format_condition(args.condition, v))
    return 0 if v.holds else 1


def cmd_decomp(args) -> int:
    G = parse_group(args.group, args.p)
    vp = parse_elem(G, args.vp)
    dec = og_standard_decomp(G, vp)
    ram = og_finitely_ramified(G, vp, dec)
    print(f"delta0: {dec.tail_str(G, dec.delta0_start)}")
    print(f"deltap: {dec.tail_str(G, dec.deltap_start)}")
    print(f"quotient: {dec.quotient}")
    print(f"finitely-ramified: {'yes, e = ' + str(ram) if ram is not None else 'no'}")
    if args.p:
        print(f"roughly-p-divisible: {str(og_roughly_p_divisible(G, vp, args.p)).lower()}")
    return 0


# -- classification ------------------------------------------------------------------


def cmd_classify(args) -> int:
    v = classify(parse_descriptor(_read(args.file)))
    sys.stdout.write(format_verdict(v))
    return 1 if v.contradictions else 0


def cmd_semitame(args) -> int:
    val = semitame_eval(parse_descriptor(_read(args.file)))
    print(f"semitame: {tri_str(val)}")
    return 1 if val is False else 0


def cmd_compose(args) -> int:
    d = compose(parse_descriptor(_read(args.outer)), parse_descriptor(_read(args.inner)))
    _emit(format_descriptor(d), args.out)
    if args.out:
        print(f"semitame: {tri_str(semitame_eval(d))}")
    else:
        print(f"# semitame: {tri_str(semitame_eval(d))}")
    return 0


def cmd_ramsey(args) -> int:
    if args.step4:
        N, k = args.step4
        print(f"step4: {step4_constant(N, k)}")
        return 0
    exact, upper = ramsey_value(args.r, args.s, args.exact)
    print(f"exact: {exact if exact is not None else 'unknown'}")
    if exact is None:
        print(f"upper: {upper}")
    return 0


def cmd_encode(args) -> int:
    F = field_of_order(args.q)

    def poly(text):
        return poly_of(F, [parse_ff(F, c) for c in text.split(",")])

    fs = [poly(f) for f in args.f]
    d = poly(args.d) if args.d else default_d(F)
    enc = no_common_root_encode(fs, d, F)
    print(f"D: {hom_str(homogenize(d))}")
    print("encoded: " + ",".join(str(c) for c in enc))
    found = roots(enc, F)
    print("roots: " + (" ".join(map(str, found)) if found else "none"))
    return 0


# -- wiring --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    glob = argparse.ArgumentParser(add_help=False)
    glob.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    glob.add_argument("--budget", type=int, default=None, help="enumeration cap (overrides ASLAB_BUDGET)")
    glob.add_argument("--prec", type=int, default=None, help="p-adic precision or series witness cap")

    ap = _Parser(prog="aslab", description="Artin-Schreier tools for valued fields", parents=[glob])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, parents=[glob])
        p.set_defaults(fn=fn)
        return p

    p = add("wp", cmd_wp, "compute x^p - x")
    p.add_argument("--carrier", required=True)
    p.add_argument("--x", required=True)

    p = add("member", cmd_member, "decide x ∈ a·℘(K)")
    p.add_argument("--carrier", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--a", default="1")

    p = add("reduce", cmd_reduce, "AS-reduced form of a rational function")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--x", required=True)

    p = add("lift-as", cmd_lift_as, "Hensel-lift a root of a(x^p - x) = b")
    p.add_argument("--carrier", required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--x0", required=True)

    p = add("obstruction", cmd_obstruction, "obstruction or witness for x ∈ ℘(K) over a series field")
    p.add_argument("--carrier", required=True)
    p.add_argument("--x", required=True)

    p = add("pattern", cmd_pattern, "generate, verify or lift IP/IP_n/TP2 patterns")
    psub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    g = psub.add_parser("gen", parents=[glob])
    g.add_argument("kind", choices=["ip", "ipn", "tp2"])
    g.add_argument("--carrier", required=True)
    g.add_argument("--rows", type=int, required=True)
    g.add_argument("--n", type=int, default=2, help="arity for ipn")
    g.add_argument("--cols", type=int, default=3, help="cells per row for tp2")
    g.add_argument("--k", type=int, default=2, help="inconsistency arity for tp2")
    g.add_argument("--out")
    v = psub.add_parser("verify", parents=[glob])
    v.add_argument("--file", required=True)
    lf = psub.add_parser("lift", parents=[glob])
    lf.add_argument("--file", required=True)
    lf.add_argument("--target", required=True)
    lf.add_argument("--perturb")
    lf.add_argument("--out")

    p = add("check", cmd_check, "Baldwin-Saxl, BSH_n or CKS on a subgroup family")
    p.add_argument("condition", choices=["bs", "bsh", "cks"])
    p.add_argument("--file", required=True)
    p.add_argument("--N", type=int, required=True)

    p = add("decomp", cmd_decomp, "standard decomposition around v(p)")
    p.add_argument("--group", required=True)
    p.add_argument("--vp", required=True)
    p.add_argument("--p", type=int)

    p = add("classify", cmd_classify, "run the rule engine on a descriptor")
    p.add_argument("--file", required=True)

    p = add("semitame", cmd_semitame, "evaluate semitameness of a descriptor")
    p.add_argument("--file", required=True)

    p = add("compose", cmd_compose, "compose two valued-field descriptors")
    p.add_argument("--outer", required=True)
    p.add_argument("--inner", required=True)
    p.add_argument("--out")

    p = add("ramsey", cmd_ramsey, "Ramsey numbers and the step-4 constant")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--exact", action="store_true", help="fail unless the value is known exactly")
    p.add_argument("--step4", type=int, nargs=2, metavar=("N", "K"))

    p = add("encode-no-common-root", cmd_encode, "homogenized encoding of a common-root question")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--f", action="append", required=True, help="coefficients, constant term first")
    p.add_argument("--d", help="rootless separable d, constant term first")
    return ap


def run(argv=None) -> int:
    """Parse argv, dispatch, and return the exit code."""
    ap = build_parser()
    args = ap.parse_args(argv)
    config.set_budget(args.budget)
    try:
        return args.fn(args)
    except AslabError as exc:
        print(f"aslab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    finally:
        config.set_budget(None)


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
