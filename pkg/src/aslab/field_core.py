"""Finite fields F_q and rational function fields F_p(t): ℘, trace membership, AS reduction."""
from .ff import (FFElem, FiniteField, GF, ff_as_ext_count, ff_trace, ff_wp, ff_wp_member, ff_wp_preimage,
                 field_of_order, frobenius, parse_ff, prime_power, wp_image)
from .ratfunc import ASReducedForm, RatFunc, parse_ratfunc, realize, rf_as_reduce, rf_wp, rf_wp_member

__all__ = [
    "FFElem", "FiniteField", "GF", "ff_as_ext_count", "ff_trace", "ff_wp", "ff_wp_member", "ff_wp_preimage",
    "field_of_order", "frobenius", "parse_ff", "prime_power", "wp_image",
    "ASReducedForm", "RatFunc", "parse_ratfunc", "realize", "rf_as_reduce", "rf_wp", "rf_wp_member",
]
