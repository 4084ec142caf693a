"""JSON/CSV rendering of high-precision values.

Reals serialize as ``{"dec": <decimal string>, "hex": <hex float>}``; the
decimal carries as many digits as the working precision supports and the hex
form is bit-exact for replay. Complex values nest the same under re/im.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

import mpmath
from mpmath import mp

from .hp import hex_float


def digits_for(bits: int) -> int:
    return max(1, int(bits * math.log10(2)))


def _bits_of(v) -> int:
    """Working precision or the mantissa width of ``v``, whichever is larger."""
    bits = mp.prec
    if isinstance(v, mpmath.mpf):
        bits = max(bits, v._mpf_[3])
    return max(bits, 53)


def hp_str(v, digits: int | None = None) -> str:
    bits = _bits_of(v)
    digits = digits or digits_for(bits)
    with mp.workprec(bits + 8):
        return mpmath.nstr(mpmath.mpf(v), digits, strip_zeros=False)


def hp_json(v, digits: int | None = None):
    if isinstance(v, (bool, str)) or v is None:
        return v
    if isinstance(v, int):
        return {"dec": str(v), "hex": hex(v)}
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, mpmath.mpc) or isinstance(v, complex):
        v = mpmath.mpc(v)
        return {"re": hp_json(v.real, digits), "im": hp_json(v.imag, digits)}
    return {"dec": hp_str(v, digits), "hex": hex_float(v)}


def plain_number(v, digits: int | None = None) -> str:
    """Compact rendering for CSV: integers without a decimal point."""
    if isinstance(v, int):
        return str(v)
    if not isinstance(v, mpmath.mpf):
        v = mpmath.mpf(v)
    if v == int(v) and abs(v) < mpmath.mpf(2) ** 200:
        return str(int(v))
    return hp_str(v, digits)


def dumps(obj, indent: int | None = None) -> str:
    """Deterministic JSON: keys in construction order, fixed separators."""
    seps = (",", ":") if indent is None else (",", ": ")
    return json.dumps(obj, indent=indent, separators=seps)
