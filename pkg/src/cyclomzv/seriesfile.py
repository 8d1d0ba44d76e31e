"""Text format for truncated series and Lyndon coordinates.

::

    N=2 W=3 ring=C p=192
    1 : 1.0e+0 0.0e+0
    w^1 : 6.931...e-1 0.0e+0
    ...

One term per line, ``<word> : <coeff>``, ordered by weight and then
lexicographically.  The empty word is written ``1``; since the one-letter
word ``e_1`` would print the same way, it is written ``w^0`` instead (any
longer word uses the plain ``1`` token).  Exact coefficients are ``p/q``;
complex ones are ``<re> <im>`` in exponent notation, with enough digits to
read back the same binary value.  Lyndon coordinates add ``basis=lyndon``
to the header.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, TextIO, Tuple

import mpmath
from mpmath.libmp import to_str

from .alphabet import E1, EMPTY, Word, format_word, parse_word, validate_word
from .series import CC, QQ, Ring, Series, SeriesError

_HEADER = re.compile(
    r"^N=(?P<n>\d+)\s+W=(?P<w>\d+)\s+ring=(?P<ring>Q|C\s+p=(?P<bits>\d+))"
    r"(?:\s+basis=(?P<basis>\w+))?\s*$")


class SeriesFileError(ValueError):
    """Malformed series file."""


def word_text(w: Word) -> str:
    if w == EMPTY:
        return "1"
    if w == (E1,):
        return "w^0"
    return format_word(w)


def parse_word_text(s: str, level: int) -> Word:
    s = s.strip()
    if s == "1":
        return EMPTY
    return parse_word(s, level)


def _real_text(x, digits: int) -> str:
    s = to_str(x._mpf_, digits, min_fixed=1, max_fixed=0)
    return s if "e" in s else s + "e+0"


def coeff_text(c, ring: Ring) -> str:
    if ring.exact:
        c = Fraction(c)
        return f"{c.numerator}/{c.denominator}"
    digits = math.ceil(ring.bits * math.log10(2)) + 2
    with ring.context():
        c = mpmath.mpc(c)
        return f"{_real_text(c.real, digits)} {_real_text(c.imag, digits)}"


def parse_coeff(s: str, ring: Ring):
    s = s.strip()
    if ring.exact:
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise SeriesFileError(f"bad rational coefficient {s!r}") from None
    parts = s.split()
    if len(parts) != 2:
        raise SeriesFileError(f"complex coefficient needs '<re> <im>', got {s!r}")
    with ring.context():
        try:
            return mpmath.mpc(mpmath.mpf(parts[0]), mpmath.mpf(parts[1]))
        except ValueError:
            raise SeriesFileError(f"bad complex coefficient {s!r}") from None


def header(level: int, trunc: int, ring: Ring, basis: str = "") -> str:
    h = f"N={level} W={trunc} ring={ring}"
    return h + (f" basis={basis}" if basis else "")


def _term_lines(terms: Dict[Word, object], ring: Ring):
    for w in sorted(terms, key=lambda u: (len(u), u)):
        yield f"{word_text(w)} : {coeff_text(terms[w], ring)}"


def dumps(x: Series) -> str:
    lines = [header(x.level, x.trunc, x.ring)]
    lines.extend(_term_lines(dict(x.items()), x.ring))
    return "\n".join(lines) + "\n"


def dumps_lyndon(coords: Dict[Word, Fraction], level: int, trunc: int) -> str:
    lines = [header(level, trunc, QQ, "lyndon")]
    lines.extend(_term_lines({w: c for w, c in coords.items() if c}, QQ))
    return "\n".join(lines) + "\n"


def _parse(text: str) -> Tuple[int, int, Ring, str, Dict[Word, object]]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise SeriesFileError("empty series file")
    m = _HEADER.match(lines[0].strip())
    if not m:
        raise SeriesFileError(f"bad header line {lines[0]!r}")
    level, trunc = int(m["n"]), int(m["w"])
    ring = QQ if m["ring"] == "Q" else CC(int(m["bits"]))
    basis = m["basis"] or ""
    terms: Dict[Word, object] = {}
    for ln in lines[1:]:
        if ":" not in ln:
            raise SeriesFileError(f"term line without ':' {ln!r}")
        wtext, ctext = ln.split(":", 1)
        try:
            w = validate_word(parse_word_text(wtext, level), level)
        except ValueError as e:
            raise SeriesFileError(f"bad word in {ln!r}: {e}") from None
        if w in terms:
            raise SeriesFileError(f"word {wtext.strip()!r} listed twice")
        if len(w) > trunc:
            raise SeriesFileError(f"word {wtext.strip()!r} exceeds W={trunc}")
        terms[w] = parse_coeff(ctext, ring)
    return level, trunc, ring, basis, terms


def loads(text: str) -> Series:
    """Parse a series; a ``basis=lyndon`` file is expanded into words."""
    level, trunc, ring, basis, terms = _parse(text)
    if basis == "lyndon":
        from .lie import from_coords
        return from_coords(terms, level, trunc)
    if basis:
        raise SeriesFileError(f"unknown basis {basis!r}")
    try:
        return Series(level, trunc, terms, ring)
    except SeriesError as e:
        raise SeriesFileError(str(e)) from None


def loads_lyndon(text: str) -> Tuple[int, int, Dict[Word, Fraction]]:
    level, trunc, ring, basis, terms = _parse(text)
    if basis != "lyndon":
        raise SeriesFileError("not a Lyndon-coordinate file")
    return level, trunc, terms


def read(path: str) -> Series:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write(x: Series, out: TextIO) -> None:
    out.write(dumps(x))
