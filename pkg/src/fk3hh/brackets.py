"""Gerstenhaber brackets on Hochschild cohomology.

Engines
-------
``hh0``
    ``[phi, z]`` for a central ``z``: contract ``v -> z v - v z`` by a null
    homotopy ``h`` and take the class of ``phi o h_{n-1}``.
``hh1``
    ``[x, phi]`` for a degree-one class ``x``: turn ``x`` into a derivation
    ``D`` with ``G(D) i_1 = x``, lift ``D`` to operators ``D_n`` on the
    resolution and take the class of ``D phi - phi D_n``.
``descent``
    recover ``[y, z]`` from ``a_y [y, z] = (-1)^{m-1}(a_x [x,z] + [a_x,z] x - [a_y,z] y)``
    when ``a_x x = a_y y`` and multiplication by ``a_y`` is injective.
``degree-vanishing``
    zero whenever the target bidegree of the bracket is zero.
``oracle``
    the chain-level bracket on the bar resolution, transported through
    the comparison maps.  Used only for validation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import DATA_DIR
from .bar import (I_GUARD, P_GUARD, BarComplex, central_insertion, chain_bracket, cup_on_bar,
                  pullback_to_bar, restrict_to_resolution)
from .chainmaps import DerivationLifting, NullHomotopy, central_homotopy
from .cohomology import Cohomology, CohomologyClass, GeneratorTable, Polynomials
from .linalg import Elimination, Vec, axpy, infeasibility_certificate, vclean


def antisymmetry_sign(m: int, n: int) -> int:
    """``s`` with ``[x, y] = s [y, x]`` for ``|x| = m`` and ``|y| = n``."""
    return 1 if ((m - 1) * (n - 1)) % 2 else -1


@dataclass
class BracketResult:
    left: str
    right: str
    value: CohomologyClass
    method: str
    certificate: dict = field(default_factory=dict)

    def as_dict(self, P: Optional[Polynomials] = None) -> dict:
        F = P.C.field if P else None
        out = {"left": self.left, "right": self.right, "method": self.method,
               "bidegree": list(self.value.bidegree),
               "coordinates": [F.fmt(c) if F else str(c) for c in self.value.coords],
               "certificate": self.certificate}
        if P is not None:
            out["value"] = P.format(self.value)
        return out


class NoEngine(ValueError):
    """Raised when no engine applies to a pair of classes."""


class Brackets:
    """All bracket engines over one cohomology object."""

    def __init__(self, G: GeneratorTable, polys: Optional[Polynomials] = None,
                 reverse: Optional[bool] = None):
        self.G = G
        self.C: Cohomology = G.C
        self.R = self.C.R
        self.A = self.R.A
        self.F = self.R.field
        self.P = polys or Polynomials(G)
        self.reverse = reverse
        self._homotopies: Dict[CohomologyClass, NullHomotopy] = {}
        self._liftings: Dict[CohomologyClass, DerivationLifting] = {}
        self._bar: Optional[BarComplex] = None
        self._cache: Dict[Tuple[CohomologyClass, CohomologyClass], BracketResult] = {}

    # ---- names ----------------------------------------------------------
    def name(self, cls: CohomologyClass) -> str:
        for g in self.G:
            if g.cls == cls:
                return g.name
        return self.P.format(cls)

    def target_bidegree(self, x: CohomologyClass, y: CohomologyClass) -> Tuple[int, int]:
        return x.degree + y.degree - 1, x.internal + y.internal

    def _zero_result(self, x, y, method, **cert) -> BracketResult:
        n, t = self.target_bidegree(x, y)
        val = self.C.zero(n, t) if n >= 0 else CohomologyClass(n, t, ())
        return BracketResult(self.name(x), self.name(y), val, method, dict(cert))

    # ---- degree zero -------------------------------------------------------
    def central_element(self, z: CohomologyClass) -> Vec:
        if z.degree != 0:
            raise ValueError("a central element comes from a degree-zero class")
        rep = self.C.representative(z)
        N = self.A.dim
        return {s % N: c for s, c in rep.items()}

    def homotopy(self, z: CohomologyClass) -> NullHomotopy:
        h = self._homotopies.get(z)
        if h is None:
            h = self._homotopies[z] = central_homotopy(self.R, self.central_element(z), self.reverse)
        return h

    def hh0(self, phi: CohomologyClass, z: CohomologyClass) -> BracketResult:
        """``[phi, z]`` for ``z`` in degree zero."""
        if z.degree != 0:
            raise ValueError("hh0 needs a degree-zero right argument")
        if phi.degree == 0 or z.is_zero() or phi.is_zero():
            return self._zero_result(phi, z, "hh0", reason="trivial")
        n = phi.degree
        h = self.homotopy(z)
        cochain = self.C.precompose(n, self.C.representative(phi), h[n - 1])
        val = self.C.classify(n - 1, cochain, phi.internal + z.internal)
        return BracketResult(self.name(phi), self.name(z), val, "hh0",
                             {"central_element": self.A.fmt(self.central_element(z)),
                              "homotopy_degree": n - 1,
                              "homotopy_terms": sum(len(v) for v in h[n - 1].images)})

    # ---- degree one --------------------------------------------------------
    def derivation(self, x: CohomologyClass) -> Tuple[List[Vec], Dict[str, Vec]]:
        """Derivation ``D`` with ``G(D) i_1 = x`` (images on the basis and on generators)."""
        if x.degree != 1:
            raise ValueError("a derivation comes from a degree-one class")
        R, A = self.R, self.A
        rep = self.C.representative(x)
        N = A.dim
        bar = self.bar()
        gens_images: Dict[str, Vec] = {}
        i1 = bar.i_generators(1)
        for g in range(R.P[1].rank):
            (key, s), = i1[g].items()            # i_1(1|g*|1) = s 1|a_g|1
            letter = A.words[key[1]]
            val = {k % N: c for k, c in rep.items() if k // N == g}
            gens_images[letter] = {k: c / s for k, c in val.items()}
        return A.derivation_from_generators(dict(gens_images)), gens_images

    def lifting(self, x: CohomologyClass) -> DerivationLifting:
        L = self._liftings.get(x)
        if L is None:
            images, _ = self.derivation(x)
            L = self._liftings[x] = DerivationLifting(self.R, images, self.reverse)
        return L

    def hh1(self, x: CohomologyClass, phi: CohomologyClass) -> BracketResult:
        """``[x, phi]`` for ``x`` in degree one."""
        if x.degree != 1:
            raise ValueError("hh1 needs a degree-one left argument")
        n, t = self.target_bidegree(x, phi)
        if x.is_zero() or phi.is_zero():
            return self._zero_result(x, phi, "hh1", reason="trivial")
        L = self.lifting(x)
        C = self.C
        N = self.A.dim
        rep = C.representative(phi)
        m = phi.degree
        qs = L.q(m)
        out: Vec = {}
        by_gen: Dict[int, Vec] = {}
        for s, c in rep.items():
            by_gen.setdefault(s // N, {})[s % N] = c
        for g in range(self.R.P[m].rank):
            val: Vec = {}
            for xi, c in by_gen.get(g, {}).items():
                axpy(val, c, L.rho[xi])
            if qs[g]:
                axpy(val, -1, C.evaluate(m, rep, qs[g]))
            for xi, c in vclean(val).items():
                out[g * N + xi] = c
        val = C.classify(n, out, t)
        _, gens = self.derivation(x)
        return BracketResult(self.name(x), self.name(phi), val, "hh1",
                             {"derivation": {k: self.A.fmt(v) for k, v in sorted(gens.items()) if v},
                              "lifting_degree": m,
                              "correction_terms": sum(len(q) for q in qs)})

    # ---- degree argument --------------------------------------------------
    def degree_vanishing(self, x: CohomologyClass, y: CohomologyClass) -> Optional[BracketResult]:
        n, t = self.target_bidegree(x, y)
        if n < 0 or self.C.dim(n, t) == 0:
            return self._zero_result(x, y, "degree-vanishing", target=[n, t], dimension=0)
        if x == y and x.degree % 2 == 1:
            # [x, x] = -[x, x] when (m-1)^2 is even
            return self._zero_result(x, y, "degree-vanishing", target=[n, t], reason="antisymmetry")
        return None

    # ---- descent ------------------------------------------------------------
    def descent(self, x: CohomologyClass, y: CohomologyClass, a_x: CohomologyClass,
                a_y: CohomologyClass, z: CohomologyClass, bracket=None) -> BracketResult:
        """``[y, z]`` through ``a_x x = a_y y`` and injectivity of ``v -> a_y v``."""
        C = self.C
        br = bracket or self.bracket
        if C.cup(a_x, x) != C.cup(a_y, y):
            raise ValueError("descent hypothesis a_x x = a_y y fails")
        m = z.degree
        n, t = self.target_bidegree(y, z)
        basis = C.basis(n, t)
        images = [C.cup(a_y, v) for v in basis]
        if basis:
            cols = [{i: c for i, c in enumerate(w.coords) if c} for w in images]
            tn, tt = a_y.degree + n, a_y.internal + t
            el = Elimination(cols, C.dim(tn, tt))
            if el.rank != len(basis):
                raise ValueError("multiplication by a_y is not injective on the candidate space")
        rhs = C.cup(a_x, br(x, z).value) + C.cup(br(a_x, z).value, x) - C.cup(br(a_y, z).value, y)
        if (m - 1) % 2:
            rhs = -rhs
        if not basis:
            if not rhs.is_zero():
                raise ValueError("descent right-hand side is nonzero but the candidate space is zero")
            return self._zero_result(y, z, "descent", candidate_dimension=0)
        sol = el.solve({i: c for i, c in enumerate(rhs.coords) if c})
        coords = tuple(sol.get(k, self.F(0)) for k in range(len(basis)))
        val = CohomologyClass(n, t, coords)
        if C.cup(a_y, val) != rhs:
            raise ValueError("descent right-hand side is not a multiple of a_y")
        return BracketResult(self.name(y), self.name(z), val, "descent",
                             {"x": self.name(x), "a_x": self.P.format(a_x), "a_y": self.P.format(a_y),
                              "candidate_dimension": len(basis), "injective": True})

    # ---- bar oracle -------------------------------------------------------------
    def bar(self) -> BarComplex:
        if self._bar is None:
            self._bar = BarComplex(self.R, self.reverse)
        return self._bar

    def oracle(self, x: CohomologyClass, y: CohomologyClass) -> BracketResult:
        """Chain-level bracket of ``p^* x`` and ``p^* y``, pulled back by ``i``."""
        if x.degree + y.degree - 1 > I_GUARD or max(x.degree, y.degree) > P_GUARD:
            raise ValueError(f"oracle limited to factors of degree at most {P_GUARD} "
                             f"and total degree at most {I_GUARD + 1}")
        n, t = self.target_bidegree(x, y)
        if n < 0:
            return self._zero_result(x, y, "oracle", reason="negative degree")
        B = self.bar()
        C = self.C
        f = pullback_to_bar(B, C, x.degree, C.representative(x))
        g = pullback_to_bar(B, C, y.degree, C.representative(y))
        h = chain_bracket(f, g)
        cochain = restrict_to_resolution(B, C, h)
        val = C.classify(n, cochain, t)
        return BracketResult(self.name(x), self.name(y), val, "oracle",
                             {"bar_degree": n, "p_values": len(B._p)})

    def oracle_cup(self, x: CohomologyClass, y: CohomologyClass) -> CohomologyClass:
        """Cup product computed on the bar resolution and pulled back by ``i``."""
        if x.degree + y.degree > I_GUARD or max(x.degree, y.degree) > P_GUARD:
            raise ValueError("bar cup limited by the truncation guards")
        B, C = self.bar(), self.C
        f = pullback_to_bar(B, C, x.degree, C.representative(x))
        g = pullback_to_bar(B, C, y.degree, C.representative(y))
        h = cup_on_bar(self.A, f, g)
        return C.classify(h.n, restrict_to_resolution(B, C, h), x.internal + y.internal)

    def oracle_central(self, phi: CohomologyClass, z: CohomologyClass) -> BracketResult:
        """``[phi, z] = class(F(p^* phi) o t_{n-1} o i_{n-1})`` with the insertion map ``t``."""
        if z.degree != 0:
            raise ValueError("central oracle needs a degree-zero right argument")
        n = phi.degree
        if n == 0:
            return self._zero_result(phi, z, "oracle", reason="trivial")
        B, C, A = self.bar(), self.C, self.A
        zz = self.central_element(z)
        phi_rep = C.representative(phi)
        N = A.dim
        out: Vec = {}
        for g, img in enumerate(B.i_generators(n - 1)):
            val: Vec = {}
            for key, c in central_insertion(B, zz, img).items():
                mid = C.evaluate(n, phi_rep, B.p_generator(key[1:-1]))
                if mid:
                    axpy(val, c, A.mul(A.mul({key[0]: 1}, mid), {key[-1]: 1}))
            for xi, c in vclean(val).items():
                out[g * N + xi] = c
        val = C.classify(n - 1, out, phi.internal + z.internal)
        return BracketResult(self.name(phi), self.name(z), val, "oracle", {"insertion": True})

    # ---- general routing ------------------------------------------------------------
    def swapped(self, r: BracketResult, x: CohomologyClass, y: CohomologyClass) -> BracketResult:
        """``[x, y]`` from a computed ``[y, x]``."""
        s = antisymmetry_sign(x.degree, y.degree)
        return BracketResult(self.name(x), self.name(y), r.value.scale(self.F(s)), r.method,
                             dict(r.certificate, via_antisymmetry=True))

    def direct(self, x: CohomologyClass, y: CohomologyClass) -> Optional[BracketResult]:
        """An engine evaluation of ``[x, y]`` that does not use antisymmetry."""
        if y.degree == 0:
            return self.hh0(x, y)
        if x.degree == 1:
            return self.hh1(x, y)
        return None

    def bracket(self, x: CohomologyClass, y: CohomologyClass) -> BracketResult:
        """``[x, y]`` for arbitrary classes, when an engine (or antisymmetry) applies."""
        key = (x, y)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if x.is_zero() or y.is_zero():
            r = self._zero_result(x, y, "degree-vanishing", reason="zero argument")
        else:
            r = self.direct(x, y)
        if r is None:
            if x.degree == 0 or y.degree == 1:
                r = self.swapped(self.direct(y, x), x, y)
            else:
                r = self.degree_vanishing(x, y)
                if r is None:
                    r = self._generator_route(x, y)
        self._cache[key] = r
        return r

    # ---- the generator table --------------------------------------------------
    def _descent_data(self):
        G = self.G
        return G[14], G[13], self.P.evaluate("6*X_3"), G[8]

    def _generator_route(self, x: CohomologyClass, y: CohomologyClass) -> BracketResult:
        G = self.G
        names = {g.cls: g.index for g in G}
        i, j = names.get(x), names.get(y)
        if i is None or j is None:
            raise NoEngine(f"no engine for [{self.name(x)}, {self.name(y)}]")
        X14, X13, a_x, a_y = self._descent_data()
        if i == 13:
            return self.descent(X14, X13, a_x, a_y, y)
        if j == 13:
            return self.swapped(self.descent(X14, X13, a_x, a_y, x), x, y)
        raise NoEngine(f"no engine for [X_{i}, X_{j}]")

    def generator_bracket(self, i: int, j: int) -> BracketResult:
        """``[X_i, X_j]`` routed as in the table: HH^0 by homotopies, HH^1 by
        liftings, the remaining ones by descent or by the degree argument."""
        G = self.G
        x, y = G[i], G[j]
        lo = min(i, j)
        if lo <= 3:
            if j <= 3:
                r = self.hh0(x, y)
            elif i <= 3:
                r = self.swapped(self.hh0(y, x), x, y)
            else:
                r = self.hh0(x, y)
        elif lo <= 8:
            r = self.hh1(x, y) if i == lo else self.swapped(self.hh1(y, x), x, y)
        else:
            r = self.degree_vanishing(x, y) if 13 not in (i, j) or i == j else None
            if r is None:
                r = self._generator_route(x, y)
        r.left, r.right = G.generators[i - 1].name, G.generators[j - 1].name
        return r

    def table(self, pairs: Optional[Sequence[Tuple[int, int]]] = None) -> Dict[Tuple[int, int], BracketResult]:
        if pairs is None:
            pairs = [(i, j) for i in range(1, 15) for j in range(i, 15)]
        return {(i, j): self.generator_bracket(i, j) for i, j in pairs}


# --------------------------------------------------------------------------
# expected values
# --------------------------------------------------------------------------


def load_expected(path: Optional[Path] = None) -> Dict[Tuple[int, int], str]:
    with open(path or DATA_DIR / "expected_table.json") as fh:
        raw = json.load(fh)
    out = {}
    for e in raw["entries"]:
        out[(int(e["left"].split("_")[1]), int(e["right"].split("_")[1]))] = e["value"]
    return out


@dataclass
class TableEntry:
    i: int
    j: int
    result: BracketResult
    expected: str
    expected_class: CohomologyClass
    match: bool

    def as_dict(self, P: Polynomials) -> dict:
        d = self.result.as_dict(P)
        d.update({"expected": self.expected,
                  "expected_coordinates": [P.C.field.fmt(c) for c in self.expected_class.coords],
                  "status": "match" if self.match else "mismatch"})
        return d


def compare_table(B: Brackets, expected: Optional[Dict[Tuple[int, int], str]] = None,
                  full: bool = True,
                  computed: Optional[Dict[Tuple[int, int], BracketResult]] = None) -> List[TableEntry]:
    """Every upper-triangle entry against its expected polynomial; with
    ``full`` the lower triangle is filled by antisymmetry and compared too.
    ``computed`` supplies precomputed upper-triangle results."""
    expected = expected or load_expected()
    rows: List[TableEntry] = []
    G = B.G
    for (i, j), expr in sorted(expected.items()):
        r = computed[(i, j)] if computed is not None else B.generator_bracket(i, j)
        want = B.P.evaluate(expr, r.value.bidegree)
        rows.append(TableEntry(i, j, r, expr, want, want == r.value))
        if full and i != j:
            s = antisymmetry_sign(G[j].degree, G[i].degree)
            low = BracketResult(G.generators[j - 1].name, G.generators[i - 1].name,
                                r.value.scale(B.F(s)), r.method, {"via_antisymmetry": True})
            want_low = want.scale(B.F(s))
            rows.append(TableEntry(j, i, low, f"{s}*({expr})" if s != 1 else expr,
                                   want_low, want_low == low.value))
    return rows


# --------------------------------------------------------------------------
# the BV obstruction
# --------------------------------------------------------------------------


@dataclass
class BVReport:
    feasible: bool
    unknowns: int
    equations: int
    certificate: Optional[Dict[str, str]]
    certificate_verified: bool
    skipped_pairs: List[Tuple[int, int]]
    chain: List[dict]

    @property
    def ok(self) -> bool:
        return (not self.feasible) and self.certificate_verified and all(s["ok"] for s in self.chain)

    def as_dict(self) -> dict:
        return {"feasible": self.feasible, "unknowns": self.unknowns, "equations": self.equations,
                "certificate_support": len(self.certificate or {}),
                "certificate_verified": self.certificate_verified,
                "skipped_pairs": [list(p) for p in self.skipped_pairs],
                "chain": self.chain, "ok": self.ok}


def bv_obstruction(B: Brackets) -> BVReport:
    """Look for a degree ``-1`` operator ``Delta`` preserving internal degree with
    ``[x,y] = (-1)^{|x|}(Delta(xy) - Delta(x) y - (-1)^{|x|} x Delta(y))`` on all
    generator pairs.  Unknowns are the matrices of ``Delta`` on every bidegree
    component met by a generator or a product of two generators.
    """
    C, G, F = B.C, B.G, B.F
    gens = list(G)
    top = C.max_degree
    skipped = []
    pairs = []
    for gi in gens:
        for gj in gens:
            if gi.degree + gj.degree > top:
                skipped.append((gi.index, gj.index))
            else:
                pairs.append((gi, gj))
    # bidegrees where Delta is needed
    comps = set()
    for g in gens:
        comps.add(g.cls.bidegree)
    for gi, gj in pairs:
        comps.add((gi.degree + gj.degree, gi.internal + gj.internal))
    comps = sorted(c for c in comps if c[0] >= 1 and C.dim(*c) > 0)
    # unknown (comp, target coordinate, source coordinate)
    var: Dict[Tuple, int] = {}
    for (n, t) in comps:
        dsrc, dtgt = C.dim(n, t), C.dim(n - 1, t)
        for a in range(dtgt):
            for b in range(dsrc):
                var[((n, t), a, b)] = len(var)

    def delta_terms(cls: CohomologyClass) -> List[Tuple[int, CohomologyClass]]:
        """``Delta(cls)`` as a list of (unknown, basis class of the target)."""
        if cls.degree < 1 or cls.is_zero():
            return []
        basis = C.basis(cls.degree - 1, cls.internal)
        out = []
        for b, c in enumerate(cls.coords):
            if c:
                for a, e in enumerate(basis):
                    out.append((var[(cls.bidegree, a, b)], e.scale(c)))
        return out

    cols: Dict[int, Vec] = {k: {} for k in range(len(var))}
    rhs: Vec = {}
    row_of: Dict[Tuple, int] = {}
    labels: Dict[int, str] = {}
    for gi, gj in pairs:
        x, y = gi.cls, gj.cls
        n, t = gi.degree + gj.degree - 1, gi.internal + gj.internal
        dim = C.dim(n, t)
        if dim == 0:
            continue
        sx = -1 if gi.degree % 2 else 1
        br = B.generator_bracket(gi.index, gj.index).value
        contrib: List[Tuple[int, CohomologyClass]] = []
        # (-1)^{|x|} Delta(xy)
        contrib += [(v, e.scale(F(sx))) for v, e in delta_terms(C.cup(x, y))]
        # -(-1)^{|x|} Delta(x) y
        contrib += [(v, C.cup(e, y).scale(F(-sx))) for v, e in delta_terms(x)]
        # -x Delta(y)
        contrib += [(v, C.cup(x, e).scale(F(-1))) for v, e in delta_terms(y)]
        for k in range(dim):
            key = (gi.index, gj.index, k)
            r = row_of.setdefault(key, len(row_of))
            labels[r] = f"[X_{gi.index},X_{gj.index}] coordinate {k}"
            if br.coords[k]:
                rhs[r] = br.coords[k]
        for v, e in contrib:
            for k, c in enumerate(e.coords):
                if c:
                    r = row_of[(gi.index, gj.index, k)]
                    cols[v][r] = cols[v].get(r, 0) + c
    columns = [vclean(cols[k]) for k in range(len(var))]
    cert = infeasibility_certificate(columns, len(row_of), rhs)
    verified = False
    cert_out = None
    if cert is not None:
        ok_rows = all(not sum((col.get(r, 0) * c for r, c in cert.items()), F(0)) for col in columns)
        val = sum((rhs.get(r, 0) * c for r, c in cert.items()), F(0))
        verified = ok_rows and val == 1
        cert_out = {labels[r]: F.fmt(c) for r, c in sorted(cert.items())}
    return BVReport(cert is None, len(var), len(row_of), cert_out,
                    verified, skipped, bv_chain(B))


def bv_chain(B: Brackets) -> List[dict]:
    """The explicit contradiction, step by step, each step checked."""
    C, G, P, F = B.C, B.G, B.P, B.F
    steps: List[dict] = []

    def step(claim: str, ok: bool, **info):
        steps.append({"claim": claim, "ok": bool(ok), **info})

    X = G.__getitem__
    one = C.unit()
    # Delta lowers the degree by one and there is nothing in degree -1
    step("Delta(HH^0) = 0 because HH^-1 = 0", C.dim(-1, 0) == 0)
    # Delta(X_8) lies in HH^0 of internal degree 0, spanned by 1; with
    # Delta(X_3) = 0 and X_8 X_3 = 0 the pair (X_8, X_3) gives [X_8, X_3] = Delta(X_8) X_3
    h00 = C.basis(0, 0)
    step("HH^0 in internal degree 0 is spanned by 1", len(h00) == 1 and h00[0] == one)
    step("X_8 X_3 = 0", C.cup(X(8), X(3)).is_zero())
    b83 = B.generator_bracket(8, 3).value
    step("[X_8, X_3] = -4*X_3", b83 == X(3).scale(F(-4)), value=P.format(b83))
    el = Elimination([{i: c for i, c in enumerate(C.cup(one, X(3)).coords) if c}], C.dim(*X(3).bidegree))
    lam = el.solve({i: c for i, c in enumerate(b83.coords) if c}).get(0, F(0))
    delta8 = one.scale(lam)
    step("Delta(X_8) = -4", lam == F(-4), value=F.fmt(lam))
    # the pair (X_3, X_9): X_3 Delta(X_9) = 0 for any value, so Delta(X_3 X_9) = [X_3, X_9]
    step("X_3 Delta(X_9) = 0 for every possible value of Delta(X_9)",
         all(C.cup(X(3), v).is_zero() for v in C.basis(1, -2)))
    b39 = B.generator_bracket(3, 9).value
    step("[X_3, X_9] = -2*X_4", b39 == X(4).scale(F(-2)), value=P.format(b39))
    step("X_3 X_9 = X_4 X_8", C.cup(X(3), X(9)) == C.cup(X(4), X(8)))
    # the pair (X_4, X_8): [X_4,X_8] = -Delta(X_4 X_8) + Delta(X_4) X_8 - X_4 Delta(X_8)
    b48 = B.generator_bracket(4, 8).value
    step("[X_4, X_8] = 2*X_4", b48 == X(4).scale(F(2)), value=P.format(b48))
    required = b48 + b39 + C.cup(X(4), delta8)
    step("Delta(X_4) X_8 + 4 X_4 = 0, i.e. Delta(X_4) X_8 = -4 X_4",
         required == X(4).scale(F(-4)), value=P.format(required))
    # Delta(X_4) lies in HH^0 of internal degree 2, spanned by X_1 and X_2
    span = [{i: c for i, c in enumerate(v.coords) if c} for v in (X(1), X(2))]
    step("HH^0 in internal degree 2 is spanned by X_1, X_2",
         C.dim(0, 2) == 2 and Elimination(span, 2).rank == 2)
    vecs = [C.cup(X(1), X(8)), C.cup(X(2), X(8)), X(4)]
    dim = C.dim(1, 2)
    cols = [{i: c for i, c in enumerate(v.coords) if c} for v in vecs]
    step("X_1 X_8, X_2 X_8, X_4 are linearly independent", Elimination(cols, dim).rank == 3)
    cert = infeasibility_certificate(cols[:2], dim, {i: c for i, c in enumerate(required.coords) if c})
    step("k_1 X_1 X_8 + k_2 X_2 X_8 = -4 X_4 has no solution", cert is not None,
         certificate={str(k): F.fmt(v) for k, v in sorted((cert or {}).items())})
    return steps
