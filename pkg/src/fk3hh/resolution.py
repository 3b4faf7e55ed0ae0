"""The periodic minimal bimodule resolution built on the Koszul complex.

``P_n`` is the free bimodule on symbols ``omega_i 1|u|1`` with ``u`` running
over the dual basis of ``(A^!_{n-4i})^*``.  Its differential is the Koszul
differential on each summand plus a periodicity map
``f_j : K_j -> K_{j+3}`` that links summand ``i`` to summand ``i-1``.
``f_0`` is recovered from printed data; the later ``f_j`` are solved in
blocks so that the assembled differential squares to zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import DATA_DIR, FiniteAlgebra, KoszulDual
from .linalg import (Elimination, InconsistentSystem, Vec, axpy,
                     vclean)
from .notation import parse_tensor

# a term (generator, x, y, coefficient) of a bimodule element
Term = Tuple[int, int, int, object]


class FreeBimodule:
    """Free graded A-bimodule on a finite list of generators.

    The basis element ``x|g|y`` is stored as the integer
    ``g*N*N + x*N + y`` where ``N = dim A``.
    """

    def __init__(self, A: FiniteAlgebra, gens: Sequence, gen_degrees: Sequence[int],
                 names: Optional[Sequence[str]] = None):
        self.A = A
        self.gens = list(gens)
        self.gdeg = list(gen_degrees)
        self.names = list(names) if names is not None else [str(g) for g in gens]
        self.gindex = {g: k for k, g in enumerate(self.gens)}
        self.N = A.dim
        self.NN = A.dim * A.dim
        self._by_degree: Dict[int, List[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.gens)

    def flat(self, g: int, x: int, y: int) -> int:
        return g * self.NN + x * self.N + y

    def split(self, f: int) -> Tuple[int, int, int]:
        g, r = divmod(f, self.NN)
        x, y = divmod(r, self.N)
        return g, x, y

    def degree(self, f: int) -> int:
        g, x, y = self.split(f)
        return self.gdeg[g] + self.A.degree[x] + self.A.degree[y]

    def basis_in_degree(self, d: int) -> List[int]:
        hit = self._by_degree.get(d)
        if hit is None:
            A = self.A
            hit = []
            for g, gd in enumerate(self.gdeg):
                for x in range(self.N):
                    rest = d - gd - A.degree[x]
                    for y in A.by_degree.get(rest, []):
                        hit.append(self.flat(g, x, y))
            self._by_degree[d] = hit
        return hit

    def degrees(self) -> range:
        lo = min(self.gdeg) if self.gdeg else 0
        hi = max(self.gdeg) + 2 * self.A.top if self.gdeg else -1
        return range(lo, hi + 1)

    def generator(self, g: int) -> Vec:
        u = self.A.unit
        return {self.flat(g, u, u): self.A.field(1)}

    def fmt(self, v: Vec) -> str:
        if not v:
            return "0"
        F = self.A.field
        parts = []
        for f in sorted(v):
            g, x, y = self.split(f)
            c = F.fmt(v[f])
            sign = "-" if c.startswith("-") else "+"
            mag = c.lstrip("-")
            parts.append(f"{sign}{'' if mag == '1' else mag + '*'}"
                         f"{self.A.name(x)}|{self.names[g]}|{self.A.name(y)}")
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s


class BimoduleMap:
    """Bimodule morphism between free bimodules, given on generators."""

    def __init__(self, source: FreeBimodule, target: FreeBimodule,
                 images: Sequence[Vec], shift: int = 0):
        self.source = source
        self.target = target
        self.shift = shift
        self.images = [dict(v) for v in images]
        self._terms: List[List[Term]] = []
        for v in self.images:
            ts = []
            for f, c in v.items():
                g, x, y = target.split(f)
                ts.append((g, x, y, c))
            self._terms.append(ts)

    def apply(self, elem: Vec) -> Vec:
        A = self.source.A
        mult = A.mult
        T = self.target
        NN, N = T.NN, T.N
        out: Vec = {}
        for f, c in elem.items():
            g, x, y = self.source.split(f)
            for tg, tx, ty, tc in self._terms[g]:
                left = mult[x][tx]
                if not left:
                    continue
                right = mult[ty][y]
                if not right:
                    continue
                base = tg * NN
                cc = c * tc
                for i, a in left.items():
                    ca = cc * a
                    bi = base + i * N
                    for j, b in right.items():
                        k = bi + j
                        w = out.get(k)
                        out[k] = ca * b if w is None else w + ca * b
        return vclean(out)

    def compose(self, other: "BimoduleMap") -> "BimoduleMap":
        """``self o other``."""
        return BimoduleMap(other.source, self.target,
                           [self.apply(v) for v in other.images], self.shift + other.shift)

    def columns(self, d: int) -> Tuple[List[Vec], List[int], List[int]]:
        """Matrix of the map from source degree ``d`` to target degree ``d+shift``."""
        src = self.source.basis_in_degree(d)
        tgt = self.target.basis_in_degree(d + self.shift)
        pos = {f: r for r, f in enumerate(tgt)}
        cols = []
        for f in src:
            img = self.apply({f: self.source.A.field(1)})
            cols.append({pos[k]: v for k, v in img.items()})
        return cols, src, tgt

    def is_zero(self) -> bool:
        return all(not v for v in self.images)


class DegreeSolver:
    """Solves ``M x = b`` for a bimodule map restricted to one internal degree.

    The elimination is computed once and replayed for every right-hand side.
    """

    def __init__(self, M: BimoduleMap, d: int, reverse: bool = False):
        cols, self.src, self.tgt = M.columns(d)
        self.pos = {f: r for r, f in enumerate(self.tgt)}
        order = list(range(len(cols)))
        if reverse:
            order.reverse()
        self.el = Elimination(cols, len(self.tgt), order)

    def solve(self, b: Vec) -> Vec:
        try:
            rb = {self.pos[k]: v for k, v in b.items()}
        except KeyError as exc:  # element outside the expected degree
            raise InconsistentSystem(f"right-hand side has a term of wrong degree: {exc}")
        x = self.el.solve(rb)
        return {self.src[j]: v for j, v in x.items()}

    @property
    def rank(self) -> int:
        return self.el.rank


class SolverCache:
    """Caches one :class:`DegreeSolver` per internal degree of a map."""

    def __init__(self, M: BimoduleMap, reverse: bool = False):
        self.M = M
        self.reverse = reverse
        self._cache: Dict[int, DegreeSolver] = {}

    def at(self, d: int) -> DegreeSolver:
        s = self._cache.get(d)
        if s is None:
            s = self._cache[d] = DegreeSolver(self.M, d, self.reverse)
        return s

    def solve(self, b: Vec, d: int) -> Vec:
        """Solve for ``b`` lying in target degree ``d + shift``."""
        if not b:
            return {}
        return self.at(d).solve(b)


def act(M: FreeBimodule, x: Vec, v: Vec, y: Vec) -> Vec:
    """Bimodule action ``x . v . y`` for algebra elements ``x`` and ``y``."""
    A = M.A
    out: Vec = {}
    for f, c in v.items():
        g, a, b = M.split(f)
        left = A.mul(x, {a: 1})
        right = A.mul({b: 1}, y)
        for i, ci in left.items():
            for j, cj in right.items():
                axpy(out, c * ci * cj, {M.flat(g, i, j): 1})
    return out


def element_degree(M: FreeBimodule, v: Vec) -> Optional[int]:
    ds = {M.degree(f) for f in v}
    if not ds:
        return None
    if len(ds) > 1:
        raise ValueError("inhomogeneous element")
    return ds.pop()


# --------------------------------------------------------------------------
# resolution
# --------------------------------------------------------------------------

SIGN_VARIANTS = {
    # (sign of the left sum, sign of the right sum) as functions of n
    1: (lambda n: 1, lambda n: (-1) ** n),
    2: (lambda n: -1, lambda n: -((-1) ** n)),
    3: (lambda n: (-1) ** n, lambda n: 1),
    4: (lambda n: -((-1) ** n), lambda n: -1),
}


@dataclass(frozen=True)
class ResolutionConfig:
    """Choices that determine the resolution.

    ``orientation`` selects how the dual acts in the Koszul differential:
    ``"right-left"`` contracts the left tensor factor with the last letter
    of a dual word (``w -> u(w g*)``) and the right factor with the first
    letter; ``"left-right"`` swaps the two.  ``sign_variant`` is one of the
    four sign patterns of :data:`SIGN_VARIANTS`.
    """

    depth: int = 8
    orientation: str = "left-right"
    sign_variant: int = 3
    solve_order: str = "natural"


class Resolution:
    """The resolution ``P_0 <- P_1 <- ... <- P_depth``."""

    def __init__(self, A: FiniteAlgebra, D: KoszulDual, config: ResolutionConfig = ResolutionConfig(),
                 fb0_path: Optional[Path] = None):
        self.A = A
        self.D = D
        self.field = A.field
        self.config = config
        self.depth = config.depth
        per = A.pres.periodicity or {"degree": 4, "internal_degree": 6}
        self.period = per["degree"]
        self.omega_degree = per["internal_degree"]
        D.ensure(self.depth + 1)
        self.K = [self._koszul_module(k) for k in range(self.depth + 1)]
        self.dK: Dict[int, BimoduleMap] = {k: self._koszul_differential(k) for k in range(1, self.depth + 1)}
        self.fb0_path = fb0_path or DATA_DIR / "fb0_fact.json"
        self.f: Dict[int, BimoduleMap] = {}
        if self.depth >= self.period - 1:
            self.f[0] = self._import_f0()
        top = self.depth - self.period  # largest j with f_j needed
        block = self.period - 1
        for j0 in range(1, top + 1, block):
            self._solve_f_block(range(j0, min(j0 + block, top + 1)))
        self.P = [self._module(n) for n in range(self.depth + 1)]
        self.delta: Dict[int, BimoduleMap] = {n: self._differential(n) for n in range(1, self.depth + 1)}
        self._solvers: Dict[Tuple[int, bool], SolverCache] = {}

    # ---- Koszul complex ----------------------------------------------------
    def _koszul_module(self, k: int) -> FreeBimodule:
        n = self.D.dim(k)
        return FreeBimodule(self.A, list(range(n)), [k] * n, [self.D.name(k, j) for j in range(n)])

    def _koszul_differential(self, k: int) -> BimoduleMap:
        A, D = self.A, self.D
        left_sign, right_sign = SIGN_VARIANTS[self.config.sign_variant]
        ls, rs = self.field(left_sign(k)), self.field(right_sign(k))
        src, tgt = self.K[k], self.K[k - 1]
        images = []
        for j in range(D.dim(k)):
            u = {j: self.field(1)}
            v: Vec = {}
            for g, G in zip(A.gens, D.gens):
                gi = A.index[g]
                if self.config.orientation == "right-left":
                    lu = D.act_dual(G, u, "", k)   # w -> u(w G)
                    ru = D.act_dual("", u, G, k)   # w -> u(G w)
                elif self.config.orientation == "left-right":
                    lu = D.act_dual("", u, G, k)
                    ru = D.act_dual(G, u, "", k)
                else:
                    raise ValueError(f"unknown orientation {self.config.orientation!r}")
                for jj, c in lu.items():
                    axpy(v, ls * c, {tgt.flat(jj, gi, A.unit): 1})
                for jj, c in ru.items():
                    axpy(v, rs * c, {tgt.flat(jj, A.unit, gi): 1})
            images.append(v)
        return BimoduleMap(src, tgt, images)

    # ---- periodicity maps --------------------------------------------------
    def parse_element(self, module: FreeBimodule, dual_degree_of, text_or_terms) -> Vec:
        """Vector of a printed element of a free bimodule (see :mod:`notation`).

        ``dual_degree_of(omega, dual_degree, dual_index)`` returns the
        generator index, or raises KeyError.
        """
        terms = parse_tensor(text_or_terms) if isinstance(text_or_terms, str) else text_or_terms
        F = self.field
        out: Vec = {}
        for c, om, x, u, y in terms:
            k, uvec = self.D.parse_name(u)
            xv = self.A.parse(x or "1") if isinstance(x, str) else x
            yv = self.A.parse(y or "1") if isinstance(y, str) else y
            for j, cu in uvec.items():
                g = dual_degree_of(om, k, j)
                for xi, cx in xv.items():
                    for yi, cy in yv.items():
                        axpy(out, F(c) * cu * cx * cy, {module.flat(g, xi, yi): 1})
        return out

    def _import_f0(self) -> BimoduleMap:
        """Recover ``f_0(1|eps|1)`` from its printed left and right translates."""
        with open(self.fb0_path) as fh:
            raw = json.load(fh)
        K3, K0 = self.K[3], self.K[0]
        F = self.field

        def kidx(om, k, j):
            if om != 0 or k != 3:
                raise KeyError("f_0 values must lie in K_3")
            return j

        known: List[Tuple[str, int, Vec]] = []
        for entry in raw["values"]:
            arg = entry["argument"]
            x, u, y = (p.strip() for p in arg.split("|"))
            val = self.parse_element(K3, kidx, entry["image"])
            if x != "1":
                known.append(("left", self.A.index[x], val))
            else:
                known.append(("right", self.A.index[y], val))
        d = self.omega_degree
        basis = K3.basis_in_degree(d)
        # unknown F = sum_k c_k basis[k]; equations: g.F = value, F.g = value
        row_index: Dict[Tuple[int, int], int] = {}
        cols: List[Vec] = [dict() for _ in basis]
        for e, (side, gi, _) in enumerate(known):
            gv = {gi: F(1)}
            for k, f in enumerate(basis):
                g, x, y = K3.split(f)
                if side == "left":
                    prod = {K3.flat(g, i, y): c for i, c in self.A.mul(gv, {x: 1}).items()}
                else:
                    prod = {K3.flat(g, x, i): c for i, c in self.A.mul({y: 1}, gv).items()}
                for t, c in prod.items():
                    r = row_index.setdefault((e, t), len(row_index))
                    cols[k][r] = c
        rhs: Vec = {}
        for e, (_, _, val) in enumerate(known):
            for t, c in val.items():
                r = row_index.setdefault((e, t), len(row_index))
                rhs[r] = c
        el = Elimination(cols, len(row_index))
        if el.rank != len(basis):
            raise ValueError("printed values do not determine f_0 uniquely")
        sol = el.solve(rhs)  # raises InconsistentSystem if the data disagree
        Fvec = {basis[k]: v for k, v in sol.items()}
        self.f0_generator = Fvec
        return BimoduleMap(K0, K3, [Fvec], shift=d)

    def _solve_f_block(self, js: Sequence[int]) -> None:
        """Solve for ``f_j`` (``j`` in ``js``, consecutive) in one linear system.

        The conditions are those making ``delta`` square to zero:
        ``d_{j+3} f_j + f_{j-1} d_j = 0`` and ``f_j f_{j-3} = 0``.  A block
        of three consecutive indices is chosen so that the second family is
        linear: ``f_{j-3}`` is always already known.  The returned solution is
        the canonical one of the whole block.
        """
        shift = self.period - 1
        F = self.field
        one = F(1)
        js = list(js)
        rows: Dict[Tuple, int] = {}

        def row(key) -> int:
            r = rows.get(key)
            if r is None:
                r = rows[key] = len(rows)
            return r

        cols: List[Vec] = []
        owner: List[Tuple[int, int, int]] = []
        for j in js:
            src, tgt = self.K[j], self.K[j + shift]
            dtgt = self.dK[j + shift]
            # f_j f_{j-3} is a component of delta^2 on omega_2 K_{j-3}, a
            # summand of P_{j-3+2*period}; impose it only within the depth
            needed = j - shift + 2 * self.period <= self.depth
            prev = self.f.get(j - shift) if needed else None
            nxt = self.dK.get(j + 1) if (j + 1) in js else None
            for g in range(src.rank):
                for b in tgt.basis_in_degree(src.gdeg[g] + self.omega_degree):
                    col: Vec = {}

                    def put(key, c):
                        r = row(key)
                        w = col.get(r, 0) + c
                        if w:
                            col[r] = w
                        else:
                            col.pop(r, None)

                    for t, c in dtgt.apply({b: one}).items():
                        put(("d", j, g, t), c)
                    if nxt is not None:
                        # f_j appears in f_j d_{j+1}(g') through the terms x|u_g|y
                        for g2, img in enumerate(nxt.images):
                            for f, c in img.items():
                                h, x, y = nxt.target.split(f)
                                if h == g:
                                    for t, c2 in act(tgt, {x: one}, {b: one}, {y: one}).items():
                                        put(("d", j + 1, g2, t), c * c2)
                    if prev is not None:
                        for v, img in enumerate(prev.images):
                            for f, c in img.items():
                                h, x, y = prev.target.split(f)
                                if h == g:
                                    for t, c2 in act(tgt, {x: one}, {b: one}, {y: one}).items():
                                        put(("ff", j, v, t), c * c2)
                    cols.append(col)
                    owner.append((j, g, b))
        j0 = js[0]
        rhs: Vec = {}
        known = self.f[j0 - 1].compose(self.dK[j0])
        for g, img in enumerate(known.images):
            for t, c in img.items():
                rhs[row(("d", j0, g, t))] = -c
        el = Elimination(cols, len(rows))
        sol = el.solve(rhs)
        images = {j: [dict() for _ in range(self.K[j].rank)] for j in js}
        for k, v in sol.items():
            j, g, b = owner[k]
            images[j][g][b] = v
        for j in js:
            self.f[j] = BimoduleMap(self.K[j], self.K[j + shift], images[j], shift=self.omega_degree)

    # ---- the resolution itself ----------------------------------------------
    def _module(self, n: int) -> FreeBimodule:
        gens, degs, names = [], [], []
        for i in range(n // self.period + 1):
            k = n - self.period * i
            for j in range(self.D.dim(k)):
                gens.append((i, k, j))
                degs.append(k + self.omega_degree * i)
                nm = self.D.name(k, j)
                names.append(nm if i == 0 else f"omega{i} {nm}")
        return FreeBimodule(self.A, gens, degs, names)

    def generator_index(self, n: int, omega: int, k: int, j: int) -> int:
        return self.P[n].gindex[(omega, k, j)]

    def _differential(self, n: int) -> BimoduleMap:
        src, tgt = self.P[n], self.P[n - 1]
        images = []
        for (i, k, j) in src.gens:
            v: Vec = {}
            if k >= 1:
                for f, c in self.dK[k].images[j].items():
                    jj, x, y = self.K[k - 1].split(f)
                    axpy(v, c, {tgt.flat(tgt.gindex[(i, k - 1, jj)], x, y): 1})
            if i >= 1:
                for f, c in self.f[k].images[j].items():
                    jj, x, y = self.K[k + self.period - 1].split(f)
                    axpy(v, c, {tgt.flat(tgt.gindex[(i - 1, k + self.period - 1, jj)], x, y): 1})
            images.append(v)
        return BimoduleMap(src, tgt, images)

    def augmentation(self, v: Vec) -> Vec:
        """``x|eps|y -> xy`` on ``P_0``."""
        out: Vec = {}
        for f, c in v.items():
            _, x, y = self.P[0].split(f)
            axpy(out, c, self.A.mult[x][y])
        return out

    def solver(self, n: int, reverse: Optional[bool] = None) -> SolverCache:
        """Cached solver for ``delta_n`` (``n >= 1``)."""
        if reverse is None:
            reverse = self.config.solve_order == "reversed"
        key = (n, reverse)
        s = self._solvers.get(key)
        if s is None:
            s = self._solvers[key] = SolverCache(self.delta[n], reverse)
        return s

    # ---- parsing printed elements of P_n ------------------------------------
    def parse(self, n: int, text_or_terms) -> Vec:
        M = self.P[n]

        def gidx(om, k, j):
            if k != n - self.period * om:
                raise KeyError(f"dual degree {k} with omega{om} is not in P_{n}")
            return M.gindex[(om, k, j)]

        return self.parse_element(M, gidx, text_or_terms)

    def generator_of(self, n: int, text: str) -> int:
        """Index of the generator written like ``"1|alpha2|1"`` or ``"omega1 1|eps|1"``."""
        v = self.parse(n, text)
        if len(v) != 1:
            raise ValueError(f"{text!r} is not a single generator")
        (f, c), = v.items()
        g, x, y = self.P[n].split(f)
        if x != self.A.unit or y != self.A.unit or c != 1:
            raise ValueError(f"{text!r} is not a generator")
        return g

    # ---- checks ---------------------------------------------------------------
    def check_square_zero(self) -> Dict[int, bool]:
        out = {}
        for n in range(2, self.depth + 1):
            comp = self.delta[n - 1].compose(self.delta[n])
            out[n] = comp.is_zero()
        if 1 in self.delta:
            out[1] = all(not self.augmentation(v) for v in self.delta[1].images)
        return out

    def rank_profile(self, n: int, d: int) -> int:
        cols, _, tgt = self.delta[n].columns(d)
        return Elimination(cols, len(tgt)).rank

    def check_exactness(self, upto: Optional[int] = None) -> Dict[Tuple[int, int], bool]:
        """Exactness at ``P_n`` for ``0 <= n < upto`` in every internal degree.

        At ``P_0`` this compares ``im delta_1`` with ``ker`` of the
        augmentation; elsewhere ``rank delta_n + rank delta_{n+1} = dim``.
        """
        upto = self.depth if upto is None else upto
        result = {}
        ranks: Dict[Tuple[int, int], int] = {}

        def rk(n, d):
            if (n, d) not in ranks:
                ranks[(n, d)] = self.rank_profile(n, d)
            return ranks[(n, d)]

        for n in range(0, upto):
            for d in self.P[n].degrees():
                dim = len(self.P[n].basis_in_degree(d))
                if dim == 0:
                    continue
                if n == 0:
                    cols = []
                    tgt = self.A.by_degree.get(d, [])
                    pos = {t: r for r, t in enumerate(tgt)}
                    for f in self.P[0].basis_in_degree(d):
                        cols.append({pos[k]: v for k, v in self.augmentation({f: self.field(1)}).items()})
                    r0 = Elimination(cols, len(tgt)).rank
                else:
                    r0 = rk(n, d)
                result[(n, d)] = r0 + rk(n + 1, d) == dim
        return result

    def check_minimality(self) -> bool:
        """Every differential has image inside ``A_+ P + P A_+``."""
        u = self.A.unit
        for n, M in self.delta.items():
            for v in M.images:
                for f in v:
                    _, x, y = M.target.split(f)
                    if x == u and y == u:
                        return False
        return True
