"""Hochschild cochains on the resolution, cohomology classes and cup products.

A cochain of degree ``n`` is a bimodule map ``P_n -> A``; it is determined
by the images of the generators, so it is stored as a sparse vector over
the symbols ``g*N + x`` meaning "generator ``g`` goes to basis element
``x``".  The symbol order (periodicity level, dual label, algebra label)
is the order used for all echelon forms, which makes class coordinates
canonical.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .algebra import DATA_DIR
from .linalg import Elimination, Quotient, Subspace, Vec, axpy, vclean
from .notation import parse_cochain
from .resolution import BimoduleMap, Resolution


@dataclass(frozen=True)
class CohomologyClass:
    """A class in ``HH^degree`` of the given internal degree.

    ``coords`` are the canonical coordinates over the computed basis of
    that bidegree, so two classes are equal iff their fields are.
    """

    degree: int
    internal: int
    coords: Tuple

    @property
    def bidegree(self) -> Tuple[int, int]:
        return self.degree, self.internal

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if other.bidegree != self.bidegree:
            raise ValueError(f"cannot add classes of bidegrees {self.bidegree} and {other.bidegree}")
        return CohomologyClass(self.degree, self.internal,
                               tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "CohomologyClass":
        return CohomologyClass(self.degree, self.internal, tuple(-a for a in self.coords))

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self + (-other)

    def scale(self, c) -> "CohomologyClass":
        return CohomologyClass(self.degree, self.internal, tuple(c * a for a in self.coords))


class CochainSymbols:
    """Index bookkeeping for the cochains ``P_n -> A``."""

    def __init__(self, R: Resolution, n: int):
        self.R = R
        self.n = n
        self.module = R.P[n]
        self.N = R.A.dim
        self._by_internal: Dict[int, List[int]] = {}
        for g in range(self.module.rank):
            for x in range(self.N):
                s = g * self.N + x
                self._by_internal.setdefault(self.internal(s), []).append(s)

    def split(self, s: int) -> Tuple[int, int]:
        return divmod(s, self.N)

    def internal(self, s: int) -> int:
        g, x = self.split(s)
        return self.R.A.degree[x] - self.module.gdeg[g]

    def in_internal_degree(self, t: int) -> List[int]:
        return self._by_internal.get(t, [])

    def internal_degrees(self) -> List[int]:
        return sorted(self._by_internal)

    def name(self, s: int) -> str:
        g, x = self.split(s)
        i, k, j = self.module.gens[g]
        dual = self.R.D.name(k, j)
        prefix = f"omega*{i} " if i else ""
        return f"{prefix}{dual}|{self.R.A.name(x)}"

    def fmt(self, v: Vec) -> str:
        if not v:
            return "0"
        F = self.R.field
        out = []
        for s in sorted(v):
            c = F.fmt(v[s])
            neg = c.startswith("-")
            mag = c.lstrip("-")
            out.append(("-" if neg else "+") + ("" if mag == "1" else mag + "*") + self.name(s))
        txt = "".join(out)
        return txt[1:] if txt[0] == "+" else txt


class ClassSpace:
    """Cocycles, coboundaries and their quotient in one bidegree."""

    def __init__(self, C: "Cohomology", n: int, t: int):
        self.n, self.t = n, t
        syms = C.symbols(n)
        self.symbols = syms.in_internal_degree(t)
        self.pos = {s: r for r, s in enumerate(self.symbols)}
        dim = len(self.symbols)
        # cocycles: kernel of the differential restricted to this bidegree
        nxt = C.symbols(n + 1).in_internal_degree(t)
        npos = {s: r for r, s in enumerate(nxt)}
        cols = []
        for s in self.symbols:
            img = C.differential(n, {s: C.field(1)})
            cols.append({npos[k]: v for k, v in img.items()})
        el = Elimination(cols, len(nxt), one=C.field(1))
        self.Z = Subspace(dim, el.kernel())
        # coboundaries: image of the previous differential
        B = Subspace(dim)
        if n >= 1:
            for s in C.symbols(n - 1).in_internal_degree(t):
                img = C.differential(n - 1, {s: C.field(1)})
                B.add({self.pos[k]: v for k, v in img.items()})
        self.B = B
        self.Q = Quotient(self.Z, B)

    @property
    def dim(self) -> int:
        return self.Q.dim

    def local(self, phi: Vec) -> Vec:
        try:
            return {self.pos[s]: v for s, v in phi.items()}
        except KeyError as exc:
            raise ValueError(f"cochain has a term outside internal degree {self.t}") from exc

    def is_cocycle(self, phi: Vec) -> bool:
        return self.local(phi) in self.Z

    def globalise(self, v: Vec) -> Vec:
        return {self.symbols[r]: c for r, c in v.items()}


class CocycleLift:
    """Chain map ``phi_k : P_{n+k} -> P_k`` lifting a cocycle ``phi``.

    ``phi_0(e) = sum_x phi(e)_x x|eps|1`` and ``phi_k`` solves
    ``delta_k phi_k = phi_{k-1} delta_{n+k}`` on generators.
    """

    def __init__(self, C: "Cohomology", n: int, t: int, phi: Vec, reverse: Optional[bool] = None):
        self.C = C
        self.R = C.R
        self.n, self.t = n, t
        self.phi = dict(phi)
        self.reverse = reverse
        self._maps: Dict[int, BimoduleMap] = {}

    def __getitem__(self, k: int) -> BimoduleMap:
        if k not in self._maps:
            self._maps[k] = self._build(k)
        return self._maps[k]

    def _build(self, k: int) -> BimoduleMap:
        R = self.R
        if self.n + k > R.depth:
            raise ValueError(f"lifting to P_{self.n + k} exceeds resolution depth {R.depth}")
        src, tgt = R.P[self.n + k], R.P[k]
        N = R.A.dim
        if k == 0:
            u = R.A.unit
            images = [dict() for _ in range(src.rank)]
            for s, c in self.phi.items():
                g, x = divmod(s, N)
                images[g][tgt.flat(0, x, u)] = c
            return BimoduleMap(src, tgt, images, shift=self.t)
        prev = self[k - 1]
        S = R.solver(k, self.reverse)
        images = []
        for g in range(src.rank):
            rhs = prev.apply(R.delta[self.n + k].images[g])
            images.append(S.solve(rhs, src.gdeg[g] + self.t))
        return BimoduleMap(src, tgt, images, shift=self.t)


class Cohomology:
    """Hochschild cohomology computed from a (truncated) resolution."""

    def __init__(self, R: Resolution, reverse: Optional[bool] = None):
        self.R = R
        self.A = R.A
        self.field = R.field
        self.reverse = reverse
        self._symbols: Dict[int, CochainSymbols] = {}
        self._spaces: Dict[Tuple[int, int], ClassSpace] = {}
        self._lifts: Dict[CohomologyClass, CocycleLift] = {}
        self._cups: Dict[Tuple[CohomologyClass, CohomologyClass], CohomologyClass] = {}

    @property
    def max_degree(self) -> int:
        """Largest cohomological degree whose classes can be computed."""
        return self.R.depth - 1

    # ---- cochains ----------------------------------------------------------
    def symbols(self, n: int) -> CochainSymbols:
        if n not in self._symbols:
            self._symbols[n] = CochainSymbols(self.R, n)
        return self._symbols[n]

    def evaluate(self, n: int, phi: Vec, elem: Vec) -> Vec:
        """Value in ``A`` of the cochain ``phi`` on an element of ``P_n``."""
        A = self.A
        M = self.R.P[n]
        N = A.dim
        by_gen: Dict[int, List[Tuple[int, object]]] = {}
        for s, c in phi.items():
            g, x = divmod(s, N)
            by_gen.setdefault(g, []).append((x, c))
        out: Vec = {}
        for f, c in elem.items():
            g, x, y = M.split(f)
            for z, cz in by_gen.get(g, ()):
                left = A.mult[x][z]
                for i, ci in left.items():
                    for j, cj in A.mult[i][y].items():
                        w = out.get(j)
                        v = c * cz * ci * cj
                        out[j] = v if w is None else w + v
        return vclean(out)

    def precompose(self, n: int, phi: Vec, M: BimoduleMap) -> Vec:
        """The cochain ``phi o M`` for a map ``M : P_m -> P_n``."""
        N = self.A.dim
        out: Vec = {}
        for g, img in enumerate(M.images):
            for x, c in self.evaluate(n, phi, img).items():
                out[g * N + x] = c
        return out

    def differential(self, n: int, phi: Vec) -> Vec:
        if n + 1 > self.R.depth:
            raise ValueError(f"the differential on Q^{n} needs resolution depth {n + 1}")
        return self.precompose(n, phi, self.R.delta[n + 1])

    def parse(self, text: str) -> Tuple[int, Vec]:
        """Degree and vector of a cochain written like ``"alpha|a+beta|b"``."""
        R = self.R
        degree = None
        out: Vec = {}
        N = self.A.dim
        for c, om, u, x in parse_cochain(text):
            k, uvec = R.D.parse_name(u)
            n = k + R.period * om
            if degree is None:
                degree = n
            elif degree != n:
                raise ValueError(f"cochain {text!r} mixes degrees {degree} and {n}")
            xv = self.A.parse(x or "1")
            M = R.P[n]
            for j, cu in uvec.items():
                g = M.gindex[(om, k, j)]
                for xi, cx in xv.items():
                    axpy(out, self.field(c) * cu * cx, {g * N + xi: 1})
        if degree is None:
            raise ValueError("empty cochain")
        return degree, vclean(out)

    def internal_degree(self, n: int, phi: Vec) -> int:
        ts = {self.symbols(n).internal(s) for s in phi}
        if len(ts) != 1:
            raise ValueError("cochain is zero or not homogeneous")
        return ts.pop()

    # ---- classes -----------------------------------------------------------
    def space(self, n: int, t: int) -> ClassSpace:
        key = (n, t)
        if key not in self._spaces:
            if n > self.max_degree:
                raise ValueError(f"HH^{n} needs resolution depth {n + 1} (have {self.R.depth})")
            self._spaces[key] = ClassSpace(self, n, t)
        return self._spaces[key]

    def dim(self, n: int, t: int) -> int:
        if n < 0 or not self.symbols(n).in_internal_degree(t):
            return 0
        return self.space(n, t).dim

    def zero(self, n: int, t: int) -> CohomologyClass:
        d = self.dim(n, t)
        return CohomologyClass(n, t, tuple(self.field(0) for _ in range(d)))

    def classify(self, n: int, phi: Vec, t: Optional[int] = None) -> CohomologyClass:
        """Class of a cocycle; raises ValueError if ``phi`` is not closed."""
        phi = vclean(dict(phi))
        if not phi:
            if t is None:
                raise ValueError("the internal degree of a zero cochain must be given")
            return self.zero(n, t)
        t0 = self.internal_degree(n, phi)
        if t is not None and t != t0:
            raise ValueError(f"cochain has internal degree {t0}, expected {t}")
        S = self.space(n, t0)
        loc = S.local(phi)
        if loc not in S.Z:
            raise ValueError("cochain is not a cocycle")
        coords = S.Q.coordinates(loc, check=False)
        return CohomologyClass(n, t0, tuple(self.field(c) for c in coords))

    def representative(self, cls: CohomologyClass) -> Vec:
        S = self.space(cls.degree, cls.internal)
        return S.globalise(S.Q.representative(cls.coords))

    def basis(self, n: int, t: int) -> List[CohomologyClass]:
        d = self.dim(n, t)
        F = self.field
        return [CohomologyClass(n, t, tuple(F(1) if i == k else F(0) for i in range(d)))
                for k in range(d)]

    def class_of_text(self, text: str) -> CohomologyClass:
        n, phi = self.parse(text)
        return self.classify(n, phi)

    # ---- cup product -------------------------------------------------------
    def lift(self, cls: CohomologyClass) -> CocycleLift:
        L = self._lifts.get(cls)
        if L is None:
            L = self._lifts[cls] = CocycleLift(self, cls.degree, cls.internal,
                                               self.representative(cls), self.reverse)
        return L

    def cup(self, x: CohomologyClass, y: CohomologyClass) -> CohomologyClass:
        """Cup product ``x y`` (Gerstenhaber's convention, no Koszul sign).

        Computed as the class of ``rep(x) o lift(y)_{|x|}``: on the bar
        resolution this composite is exactly ``x`` applied to the first
        ``|x|`` arguments times ``y`` applied to the rest.
        """
        key = (x, y)
        hit = self._cups.get(key)
        if hit is not None:
            return hit
        n = x.degree + y.degree
        t = x.internal + y.internal
        if x.is_zero() or y.is_zero() or self.dim(n, t) == 0:
            res = self.zero(n, t)
        else:
            L = self.lift(y)
            phi = self.precompose(x.degree, self.representative(x), L[x.degree])
            res = self.classify(n, phi, t)
        self._cups[key] = res
        return res

    def product(self, factors: Sequence[CohomologyClass]) -> CohomologyClass:
        """Left-to-right product of a sequence of classes."""
        acc = self.unit()
        for f in factors:
            acc = self.cup(acc, f)
        return acc

    def unit(self) -> CohomologyClass:
        return self.classify(0, {self.A.unit: self.field(1)})

    # ---- dimension table ---------------------------------------------------
    def dims(self, max_degree: Optional[int] = None) -> Dict[int, Dict[int, int]]:
        top = self.max_degree if max_degree is None else max_degree
        table: Dict[int, Dict[int, int]] = {}
        for n in range(top + 1):
            row = {}
            for t in self.symbols(n).internal_degrees():
                row[t] = self.dim(n, t)
            table[n] = row
        return table

    def recursion_checks(self, max_degree: Optional[int] = None) -> List[dict]:
        """Compare ``dim H^n_m`` (internal degree ``m-n``) for ``m <= 1`` with the
        periodicity prediction: ``H^{n+2m-2}_1`` for odd ``m`` and
        ``H^{n+2m}_0`` for even ``m``.
        """
        top = self.max_degree if max_degree is None else max_degree
        out = []
        for n in range(top + 1):
            degs = self.symbols(n).internal_degrees()
            lowest_m = min(degs) + n
            for m in range(1, lowest_m - 1, -1):
                if m % 2:
                    n2, m2 = n + 2 * m - 2, 1
                else:
                    n2, m2 = n + 2 * m, 0
                lhs = self.dim(n, m - n)
                rhs = self.dim(n2, m2 - n2) if n2 >= 0 else 0
                out.append({"n": n, "m": m, "lhs": lhs, "rhs_degree": n2, "rhs_m": m2,
                            "rhs": rhs, "ok": lhs == rhs})
        return out


# --------------------------------------------------------------------------
# generators and polynomial expressions in them
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    name: str
    index: int
    degree: int
    internal: int
    text: str
    cocycle: Tuple[Tuple[int, object], ...]
    cls: CohomologyClass


class GeneratorTable:
    """The fourteen printed generator cocycles and their classes."""

    def __init__(self, C: Cohomology, path: Optional[Path] = None):
        self.C = C
        with open(path or DATA_DIR / "generators.json") as fh:
            raw = json.load(fh)
        self.generators: List[Generator] = []
        for k, entry in enumerate(raw["generators"], start=1):
            n, phi = C.parse(entry["cochain"])
            if n != entry["degree"]:
                raise ValueError(f"{entry['name']}: cochain has degree {n}, listed {entry['degree']}")
            t = C.internal_degree(n, phi)
            if t != entry["internal"]:
                raise ValueError(f"{entry['name']}: internal degree {t}, listed {entry['internal']}")
            cls = C.classify(n, phi)  # raises if not a cocycle
            self.generators.append(Generator(entry["name"], k, n, t, entry["cochain"],
                                             tuple(sorted(phi.items())), cls))
        self.by_name = {g.name: g for g in self.generators}
        for g in self.generators:
            self.by_name[g.name.replace("_", "")] = g

    def __getitem__(self, key) -> CohomologyClass:
        if isinstance(key, int):
            return self.generators[key - 1].cls
        return self.by_name[key].cls

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def counts_by_degree(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for g in self.generators:
            out[g.degree] = out.get(g.degree, 0) + 1
        return dict(sorted(out.items()))

    def monomial(self, indices: Sequence[int]) -> CohomologyClass:
        return self.C.product([self[i] for i in indices])


class Polynomials:
    """Evaluate and recover polynomial expressions in the generators."""

    def __init__(self, G: GeneratorTable):
        self.G = G
        self.C = G.C
        self._bases: Dict[Tuple[int, int], Tuple[List[Tuple[int, ...]], Quotient, List]] = {}

    # ---- evaluation ---------------------------------------------------------
    def evaluate(self, expr: str, bidegree: Optional[Tuple[int, int]] = None) -> CohomologyClass:
        """Class of an expression such as ``"(4/3)*X_9*X_10 - X_11**2"``.

        Products are taken in the written order.  ``"0"`` needs ``bidegree``.
        """
        import sympy

        names = {f"X{g.index}": sympy.Symbol(f"X{g.index}", commutative=False) for g in self.G}
        src = expr.replace("X_", "X")
        e = sympy.expand(sympy.sympify(src, locals=names))
        F = self.C.field
        total: Optional[CohomologyClass] = None
        for term in sympy.Add.make_args(e):
            if term == 0:
                continue
            coef, factors = term.args_cnc()
            c = sympy.Mul(*coef)
            if not c.is_Rational:
                raise ValueError(f"non-rational coefficient in {expr!r}")
            seq: List[int] = []
            for f in factors:
                base, exp = f.as_base_exp()
                seq.extend([int(str(base)[1:])] * int(exp))
            cls = self.G.monomial(seq).scale(F(f"{c.p}/{c.q}"))
            total = cls if total is None else total + cls
        if total is None:
            if bidegree is None:
                raise ValueError("the bidegree of a zero expression must be given")
            return self.C.zero(*bidegree)
        if bidegree is not None and total.bidegree != tuple(bidegree):
            raise ValueError(f"{expr!r} has bidegree {total.bidegree}, expected {tuple(bidegree)}")
        return total

    # ---- recovery -----------------------------------------------------------
    def monomials(self, n: int, t: int) -> List[Tuple[int, ...]]:
        """Ordered generator monomials of bidegree ``(n, t)``.

        Factors appear in increasing index order; odd generators appear at
        most once (they square to zero in characteristic not two).
        """
        pos = [g for g in self.G if g.degree > 0]
        zero = [g for g in self.G if g.degree == 0]
        found: List[Tuple[int, ...]] = []

        def positive(start: int, left: int, chosen: List[int]):
            if left == 0:
                yield list(chosen)
                return
            for k in range(start, len(pos)):
                g = pos[k]
                if g.degree > left:
                    continue
                nxt = k + 1 if g.degree % 2 else k
                chosen.append(g.index)
                yield from positive(nxt, left - g.degree, chosen)
                chosen.pop()

        def central(start: int, left: int, chosen: List[int]):
            if left == 0:
                yield list(chosen)
                return
            for k in range(start, len(zero)):
                g = zero[k]
                if 0 < g.internal <= left:
                    chosen.append(g.index)
                    yield from central(k, left - g.internal, chosen)
                    chosen.pop()

        for p in positive(0, n, []):
            rest = t - sum(self.G.generators[i - 1].internal for i in p)
            if rest < 0:
                continue
            for z in central(0, rest, []):
                found.append(tuple(z + p))
        found.sort(key=lambda m: (len(m), m))
        return found

    def basis(self, n: int, t: int):
        key = (n, t)
        if key not in self._bases:
            chosen: List[Tuple[int, ...]] = []
            vecs: List[Vec] = []
            span = Subspace(self.C.dim(n, t))
            for m in self.monomials(n, t):
                if span.rank == span.dim:
                    break
                cls = self.G.monomial(m)
                v = {i: c for i, c in enumerate(cls.coords) if c}
                if span.add(v):
                    chosen.append(m)
                    vecs.append(v)
            el = Elimination(vecs, span.dim)
            self._bases[key] = (chosen, el, span)
        return self._bases[key]

    def express(self, cls: CohomologyClass) -> Optional[Dict[Tuple[int, ...], object]]:
        """Coefficients of ``cls`` on a monomial basis; None if not generated."""
        if cls.is_zero():
            return {}
        chosen, el, span = self.basis(cls.degree, cls.internal)
        v = {i: c for i, c in enumerate(cls.coords) if c}
        if v not in span:
            return None
        sol = el.solve(v)
        return {chosen[k]: c for k, c in sorted(sol.items())}

    def format(self, cls: CohomologyClass) -> str:
        coeffs = self.express(cls)
        if coeffs is None:
            return "<not in the generated subalgebra>"
        return format_polynomial(coeffs, self.C.field)


def monomial_name(m: Tuple[int, ...]) -> str:
    if not m:
        return "1"
    parts = []
    for idx, grp in itertools.groupby(m):
        e = len(list(grp))
        parts.append(f"X{idx}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts)


def format_polynomial(coeffs: Dict[Tuple[int, ...], object], field) -> str:
    if not coeffs:
        return "0"
    out = []
    for m in sorted(coeffs, key=lambda m: (len(m), m)):
        c = field.fmt(coeffs[m])
        neg = c.startswith("-")
        mag = c.lstrip("-")
        body = monomial_name(m)
        if mag != "1":
            body = f"{mag}*{body}" if m else mag
        out.append(("-" if neg else "+") + body)
    s = "".join(out)
    return s[1:] if s[0] == "+" else s
