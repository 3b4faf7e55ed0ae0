"""Checks of printed homotopy and lifting data against the resolution.

Each printed value is checked against its defining equation whenever every
other value entering that equation is also printed (or is known to vanish).
Entries whose equation needs unprinted data are reported as skipped.
"""

from __future__ import annotations

import json
from fractions import Fraction
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .algebra import DATA_DIR
from .chainmaps import DerivationLifting, commutator_map
from .linalg import Vec, vclean, vsub
from .resolution import Resolution, act


@dataclass
class FactCheck:
    source: str
    degree: int
    generator: str
    status: str            # "pass", "fail" or "skipped"
    detail: str = ""

    def as_dict(self) -> dict:
        return {"source": self.source, "degree": self.degree, "generator": self.generator,
                "status": self.status, "detail": self.detail}


@dataclass
class FactReport:
    checks: List[FactCheck] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(c.status == "pass" for c in self.checks)

    @property
    def failed(self) -> List[FactCheck]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def skipped(self) -> List[FactCheck]:
        return [c for c in self.checks if c.status == "skipped"]

    @property
    def ok(self) -> bool:
        return not self.failed and self.passed > 0


def _terms(raw) -> list:
    return [(Fraction(c), om, x, u, y) for c, om, x, u, y in raw]


def _load(path: Optional[Path], name: str) -> dict:
    with open(path or DATA_DIR / name) as fh:
        return json.load(fh)


def verify_homotopies(R: Resolution, path: Optional[Path] = None) -> FactReport:
    """``eta_0 = delta h_0`` and ``eta_n = h_{n-1} delta_n + delta_{n+1} h_n``."""
    data = _load(path, "facts_homotopies.json")
    report = FactReport()
    for fam in data["homotopies"]:
        z = R.A.parse(fam["central_element"])
        label = f"homotopy[{fam['central_element']}]"
        h: Dict[Tuple[int, int], Vec] = {}
        for entry in fam["values"]:
            n = entry["degree"]
            if n + 1 > R.depth:
                continue
            g = R.generator_of(n, entry["argument"])
            h[(n, g)] = R.parse(n + 1, _terms(entry["image"]))
        for entry in fam["values"]:
            n = entry["degree"]
            arg = entry["argument"]
            if n + 1 > R.depth:
                report.checks.append(FactCheck(label, n, arg, "skipped", "beyond resolution depth"))
                continue
            g = R.generator_of(n, arg)
            eta = commutator_map(R, z, n).images[g]
            rhs = R.delta[n + 1].apply(h[(n, g)])
            missing = []
            if n >= 1:
                for f, c in R.delta[n].images[g].items():
                    gg, x, y = R.P[n - 1].split(f)
                    if (n - 1, gg) not in h:
                        missing.append(R.P[n - 1].names[gg])
                if not missing:
                    acc: Vec = {}
                    M = R.P[n]
                    for f, c in R.delta[n].images[g].items():
                        gg, x, y = R.P[n - 1].split(f)
                        part = act(M, {x: R.field(1)}, h[(n - 1, gg)], {y: R.field(1)})
                        for k, v in part.items():
                            acc[k] = acc.get(k, 0) + c * v
                    rhs = vclean({k: rhs.get(k, 0) + acc.get(k, 0) for k in set(rhs) | set(acc)})
            if missing:
                report.checks.append(FactCheck(label, n, arg, "skipped",
                                               "needs unprinted values on " + ", ".join(sorted(set(missing)))))
                continue
            diff = vclean(vsub(eta, rhs))
            report.checks.append(FactCheck(label, n, arg, "pass" if not diff else "fail",
                                           "" if not diff else R.P[n].fmt(diff)))
    return report


def _zero_family(R: Resolution, letter: str, n: int) -> List[int]:
    """Generators ``letter_n`` (pure powers of one dual letter) of ``P_n``."""
    name = letter if n == 1 else f"{letter}{n}"
    M = R.P[n]
    return [g for g, nm in enumerate(M.names) if nm == name]


def lifting_presets(R: Resolution, entry: dict) -> Dict[int, Dict[int, Vec]]:
    """Printed corrections (and printed zero families) by degree and generator."""
    pre: Dict[int, Dict[int, Vec]] = {}
    for v in entry["values"]:
        gtext = v["generator"]
        n = _generator_degree(R, gtext)
        if n > R.depth:
            continue
        g = R.generator_of(n, gtext)
        pre.setdefault(n, {})[g] = R.parse(n, _terms(v["image"]))
    for letter in entry.get("zero_families", []):
        for n in range(1, R.depth + 1):
            for g in _zero_family(R, letter, n):
                pre.setdefault(n, {}).setdefault(g, {})
    return pre


def _generator_degree(R: Resolution, text: str) -> int:
    from .notation import parse_tensor
    ((_, om, _, u, _),) = parse_tensor(text)
    k, _ = R.D.parse_name(u)
    return k + R.period * om


def verify_liftings(R: Resolution, path: Optional[Path] = None) -> FactReport:
    """``delta_n(q_u) = rho_{n-1}(delta_n(1|u|1))`` for every printed ``q_u``."""
    data = _load(path, "facts_liftings.json")
    report = FactReport()
    for entry in data["liftings"]:
        gens = entry["derivation_on_generators"]
        label = "lifting[" + ",".join(f"{k}->{v}" for k, v in sorted(gens.items())) + "]"
        rho = R.A.derivation_from_generators({k: R.A.parse(v) for k, v in gens.items()})
        pre = lifting_presets(R, entry)
        L = DerivationLifting(R, rho)
        printed = {(n, g) for n, d in pre.items() for g in d}
        # the highest degree with a non-family (explicitly printed) value
        top = max(_generator_degree(R, v["generator"]) for v in entry["values"])
        for n in range(1, min(top, R.depth) + 1):
            M = R.P[n]
            for g in sorted(pre.get(n, {})):
                name = M.names[g]
                needed = set()
                if n >= 2:
                    for f in R.delta[n].images[g]:
                        gg, _, _ = R.P[n - 1].split(f)
                        needed.add(gg)
                missing = [R.P[n - 1].names[gg] for gg in needed if (n - 1, gg) not in printed]
                if missing:
                    report.checks.append(FactCheck(label, n, name, "skipped",
                                                   "needs unprinted values on " + ", ".join(sorted(missing))))
                    continue
                L._q = {0: L._q[0]}
                for m in range(1, n):
                    L._q[m] = [pre.get(m, {}).get(k, {}) for k in range(R.P[m].rank)]
                diff = L.residual(n, g, pre[n][g])
                report.checks.append(FactCheck(label, n, name, "pass" if not diff else "fail",
                                               "" if not diff else M.fmt(diff)))
    return report


def verify_cup_identities(P, path: Optional[Path] = None) -> FactReport:
    """Each printed cocycle reduces to the class of its polynomial, and each
    printed relation between generator products holds."""
    data = _load(path, "cup_identities.json")
    C = P.C
    report = FactReport()
    for e in data["identities"]:
        lhs = C.class_of_text(e["cochain"])
        rhs = P.evaluate(e["expression"])
        ok = lhs == rhs
        report.checks.append(FactCheck(f"cup[{e['group']}]", lhs.degree, e["expression"],
                                       "pass" if ok else "fail",
                                       "" if ok else f"cochain reduces to {P.format(lhs)}"))
    for e in data["relations"]:
        lhs = P.evaluate(e["lhs"])
        rhs = P.evaluate(e["rhs"], lhs.bidegree)
        ok = lhs == rhs
        report.checks.append(FactCheck("cup[relation]", lhs.degree, f"{e['lhs']} = {e['rhs']}",
                                       "pass" if ok else "fail", "" if ok else P.format(lhs - rhs)))
    return report
