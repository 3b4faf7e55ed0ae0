"""Sanity checks of the Gerstenhaber algebra axioms on computed brackets."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .brackets import Brackets, NoEngine, antisymmetry_sign


@dataclass
class AxiomReport:
    name: str
    checked: int = 0
    failures: List[dict] = field(default_factory=list)
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.failures

    def as_dict(self) -> dict:
        return {"axiom": self.name, "checked": self.checked, "skipped": self.skipped,
                "failures": self.failures, "ok": self.ok}


def check_antisymmetry(B: Brackets) -> AxiomReport:
    """Engine value of ``[X_i, X_j]`` against the sign-adjusted oracle value of
    ``[X_j, X_i]`` for all ordered pairs of generators."""
    rep = AxiomReport("antisymmetry")
    G = B.G
    n = len(G)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            x, y = G[i], G[j]
            engine = B.generator_bracket(i, j).value
            other = B.oracle(y, x).value
            s = antisymmetry_sign(x.degree, y.degree)
            rep.checked += 1
            if engine != other.scale(B.F(s)):
                rep.failures.append({"pair": [i, j], "engine": B.P.format(engine),
                                     "reversed": B.P.format(other)})
    return rep


def _fits(B: Brackets, *degrees: int) -> bool:
    return sum(degrees) <= B.C.max_degree


def jacobi_triples(B: Brackets, count: int, seed: int) -> List[Tuple[int, int, int]]:
    """Triples with ``x, y`` of degree at most one, so every bracket has an engine."""
    low = [g.index for g in B.G if g.degree <= 1]
    every = [g.index for g in B.G]
    triples = sorted({(x, y, z) for x in low for y in low for z in every})
    rng = random.Random(seed)
    return sorted(rng.sample(triples, min(count, len(triples))))


def check_jacobi(B: Brackets, count: int = 40, seed: int = 0,
                 triples: Optional[List[Tuple[int, int, int]]] = None) -> AxiomReport:
    """``[x,[y,z]] = [[x,y],z] + (-1)^{(|x|-1)(|y|-1)} [y,[x,z]]``."""
    rep = AxiomReport("jacobi")
    G = B.G
    for i, j, k in triples or jacobi_triples(B, count, seed):
        try:
            ok, lhs, rhs = jacobi_holds(B, G[i], G[j], G[k])
        except NoEngine:
            rep.skipped += 1
            continue
        rep.checked += 1
        if not ok:
            rep.failures.append({"triple": [i, j, k], "lhs": B.P.format(lhs), "rhs": B.P.format(rhs)})
    return rep


def leibniz_triples(B: Brackets, count: int, seed: int) -> List[Tuple[int, int, int]]:
    """Triples ``(x, y, z)`` with ``z`` of degree at most one and ``xy`` computable."""
    gens = list(B.G)
    cands = sorted({(x.index, y.index, z.index) for x in gens for y in gens
                    for z in gens if z.degree <= 1 and _fits(B, x.degree, y.degree)})
    rng = random.Random(seed)
    return sorted(rng.sample(cands, min(count, len(cands))))


def leibniz_holds(B: Brackets, x, y, z) -> Tuple[bool, object, object]:
    """``[x y, z] = [x, z] y + (-1)^{|x|(|z|-1)} x [y, z]``; returns (ok, lhs, rhs)."""
    C, F = B.C, B.F
    lhs = B.bracket(C.cup(x, y), z).value
    sign = -1 if (x.degree * (z.degree - 1)) % 2 else 1
    rhs = C.cup(B.bracket(x, z).value, y) + C.cup(x, B.bracket(y, z).value).scale(F(sign))
    return lhs == rhs, lhs, rhs


def jacobi_holds(B: Brackets, x, y, z) -> Tuple[bool, object, object]:
    lhs = B.bracket(x, B.bracket(y, z).value).value
    sign = -1 if ((x.degree - 1) * (y.degree - 1)) % 2 else 1
    rhs = (B.bracket(B.bracket(x, y).value, z).value
           + B.bracket(y, B.bracket(x, z).value).value.scale(B.F(sign)))
    return lhs == rhs, lhs, rhs


def antisymmetry_holds(B: Brackets, x, y) -> Tuple[bool, object, object]:
    lhs = B.bracket(x, y).value
    rhs = B.bracket(y, x).value.scale(B.F(antisymmetry_sign(x.degree, y.degree)))
    return lhs == rhs, lhs, rhs


def check_leibniz(B: Brackets, count: int = 40, seed: int = 0,
                  triples: Optional[List[Tuple[int, int, int]]] = None) -> AxiomReport:
    rep = AxiomReport("leibniz")
    G = B.G
    for i, j, k in triples or leibniz_triples(B, count, seed):
        try:
            ok, lhs, rhs = leibniz_holds(B, G[i], G[j], G[k])
        except NoEngine:
            rep.skipped += 1
            continue
        rep.checked += 1
        if not ok:
            rep.failures.append({"triple": [i, j, k], "lhs": B.P.format(lhs), "rhs": B.P.format(rhs)})
    return rep


def axiom_check(B: Brackets, x, y, z) -> dict:
    """All three axioms on one triple of classes, as a report dict."""
    out = {}
    for name, fn, args in (("antisymmetry", antisymmetry_holds, (x, y)),
                           ("jacobi", jacobi_holds, (x, y, z)),
                           ("leibniz", leibniz_holds, (x, y, z))):
        try:
            ok, lhs, rhs = fn(B, *args)
            out[name] = {"ok": ok, "lhs": B.P.format(lhs), "rhs": B.P.format(rhs)}
        except NoEngine as exc:
            out[name] = {"ok": None, "reason": str(exc)}
    return out
