"""Plain-text notation for elements of the resolution and of cochains.

Elements of the bimodule resolution are written as sums of terms
``c omegaI x|u|y`` where ``x`` and ``y`` are words in the algebra
generators (or parenthesised sums of words), ``u`` is the name of a dual
basis element (``eps``, ``alpha3``, ``alpha2beta`` ...) and the optional
``omegaI`` marks the periodicity summand.  Cochains are written
``c omega*I u|x``.  The parsers here only do syntax; turning terms into
vectors is done by the resolution and cochain modules.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple

TensorTerm = Tuple[Fraction, int, str, str, str]   # coef, omega, x, u, y
CochainTerm = Tuple[Fraction, int, str, str]        # coef, omega, u, x


def split_terms(s: str) -> List[str]:
    """Split at top level ``+``/``-`` signs, keeping the sign on each term."""
    s = s.strip()
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch in "+-" and depth == 0 and cur.strip():
            out.append(cur.strip())
            cur = ch
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {s!r}")
        cur += ch
    if depth:
        raise ValueError(f"unbalanced parentheses in {s!r}")
    if cur.strip():
        out.append(cur.strip())
    return out


_COEF = re.compile(r"^([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*")


def _take_coef(s: str) -> Tuple[Fraction, str, bool]:
    m = _COEF.match(s)
    sign, num = m.group(1), m.group(2)
    c = Fraction(num) if num else Fraction(1)
    if sign == "-":
        c = -c
    return c, s[m.end():], num is not None


def parse_word_sum(s: str) -> List[Tuple[Fraction, str]]:
    """``"(ab+bc)"`` -> [(1,'ab'), (1,'bc')]; a bare word is a one term sum."""
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    out = []
    for t in split_terms(s):
        c, rest, _ = _take_coef(t)
        rest = rest.strip()
        if rest in ("", "1"):
            rest = ""
        if not re.fullmatch(r"[A-Za-z]*", rest):
            raise ValueError(f"bad word {rest!r}")
        out.append((c, rest))
    return out


def parse_tensor(s: str) -> List[TensorTerm]:
    """Parse ``"2a|alpha3|bac - omega1 c|eps|c + (ab+bc)|beta3|1"``."""
    out: List[TensorTerm] = []
    for t in split_terms(s):
        c, rest, had = _take_coef(t)
        omega = 0
        m = re.match(r"omega(\d+)\s+", rest)
        if m:
            omega = int(m.group(1))
            rest = rest[m.end():]
            c2, rest, had2 = _take_coef(rest)
            c *= c2
            had = had or had2
        parts = rest.split("|")
        if len(parts) != 3:
            raise ValueError(f"term {t!r} is not of the form x|u|y")
        left, u, right = (p.strip() for p in parts)
        if left == "":
            if not had:
                raise ValueError(f"empty left factor in {t!r}")
            left = "1"
        for cl, wl in parse_word_sum(left):
            for cr, wr in parse_word_sum(right):
                out.append((c * cl * cr, omega, wl, u, wr))
    return out


def parse_cochain(s: str) -> List[CochainTerm]:
    """Parse ``"alpha|a+beta|b"``, ``"(alphabeta+alphagamma)|1"``, ``"omega*1 eps|1"``."""
    out: List[CochainTerm] = []
    for t in split_terms(s):
        c, rest, _ = _take_coef(t)
        omega = 0
        m = re.match(r"omega\*(\d+)\s+", rest)
        if m:
            omega = int(m.group(1))
            rest = rest[m.end():]
        parts = rest.split("|")
        if len(parts) != 2:
            raise ValueError(f"cochain term {t!r} is not of the form u|x")
        duals, alg = parts[0].strip(), parts[1].strip()
        if duals.startswith("(") and duals.endswith(")"):
            dterms = [_take_coef(d)[:2] for d in split_terms(duals[1:-1])]
        else:
            dterms = [(Fraction(1), duals)]
        for cd, d in dterms:
            for ca, w in parse_word_sum(alg):
                out.append((c * cd * ca, omega, d.strip(), w))
    return out


def fmt_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
