"""Exact calculus for the algebra spanned by ``diag(alpha) U_f``.

The building blocks are partial injections of the positive integers that are
affine on residue classes (:mod:`gammacalc.pinj`), eventually periodic
sequences with symbolic decay (:mod:`gammacalc.seqspace`) and finite sums of
``diag(alpha) U_f`` (:mod:`gammacalc.gami`).
"""

from .cohn import CohnElem, CohnWord, minf_embed, rho
from .crossed import CrossedElem, cp_mul, cp_to_gami
from .decomp import FinMatrix, decompose
from .gami import OpSum, equal, ideal_member, polar, unit_witness
from .pinj import PInj, ProgressionSet, parse_pinj
from .scalars import QQ, QQI, ZZ, int_mod_ring, ring_by_name
from .seqspace import IdealTag, SymSeq, act, member
from .sumring import LazyOp, oplus, phi

__version__ = "0.1.0"

__all__ = [
    "CohnElem", "CohnWord", "minf_embed", "rho", "CrossedElem", "cp_mul", "cp_to_gami",
    "FinMatrix", "decompose", "OpSum", "equal", "ideal_member", "polar", "unit_witness",
    "PInj", "ProgressionSet", "parse_pinj", "QQ", "QQI", "ZZ", "int_mod_ring", "ring_by_name",
    "IdealTag", "SymSeq", "act", "member", "LazyOp", "oplus", "phi",
]
