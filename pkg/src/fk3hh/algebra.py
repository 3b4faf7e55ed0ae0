"""Quadratic algebras given by generators and relations.

:class:`FiniteAlgebra` is the finite dimensional quotient ``T(V)/(R)`` with a
chosen monomial basis; its structure constants are obtained by reducing
words modulo the two-sided ideal, degree by degree, in the full tensor
power.  :class:`KoszulDual` is the quadratic dual ``T(V*)/(R^perp)``; it is
infinite dimensional, so its graded pieces are built lazily by the
recursion ``A_n = (A_{n-1} (x) V) / (A_{n-2} (x) R)``.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .linalg import (QQ, Elimination, Field, Subspace, Vec,
                     axpy, kernel_basis, vclean)

DATA_DIR = Path(__file__).with_name("data")


@dataclass
class Presentation:
    """Generators, quadratic relations and the chosen bases."""

    name: str
    generators: List[str]
    relations: List[Dict[str, str]]
    basis: List[List[str]]
    dual_generators: List[str]
    dual_names: Dict[str, str]
    dual_basis_pattern: List[List[List[str]]]
    periodicity: Dict[str, int] = dc_field(default_factory=dict)

    @classmethod
    def load(cls, path: Optional[Path] = None) -> "Presentation":
        path = Path(path) if path else DATA_DIR / "presentations" / "fk3.json"
        with open(path) as fh:
            raw = json.load(fh)
        return cls(**raw)


def _relation_vectors(words_of_len2: List[str], relations, field: Field) -> List[Vec]:
    index = {w: i for i, w in enumerate(words_of_len2)}
    return [{index[w]: field(c) for w, c in r.items()} for r in relations]


# --------------------------------------------------------------------------
# the finite dimensional algebra
# --------------------------------------------------------------------------


class FiniteAlgebra:
    """A finite dimensional graded quadratic algebra with a monomial basis.

    Basis elements are indexed ``0..dim-1`` in the order of the
    presentation, degree by degree; elements are sparse vectors over these
    indices.
    """

    def __init__(self, pres: Presentation, field: Field = QQ):
        self.pres = pres
        self.field = field
        self.gens = list(pres.generators)
        self.words: List[str] = [w for layer in pres.basis for w in layer]
        self.degree: List[int] = [len(w) for w in self.words]
        self.index = {w: i for i, w in enumerate(self.words)}
        self.dim = len(self.words)
        self.top = max(self.degree)
        self.by_degree: Dict[int, List[int]] = {}
        for i, d in enumerate(self.degree):
            self.by_degree.setdefault(d, []).append(i)
        self.graded_dims = [len(layer) for layer in pres.basis]
        self._normal_forms: Dict[str, Vec] = {}
        self.top_vanishing_checked = False
        self._build()
        self.unit = self.index[""]
        self.mult: List[List[Vec]] = [
            [self.word(self.words[i] + self.words[j]) for j in range(self.dim)]
            for i in range(self.dim)
        ]

    # degree by degree reduction in the full tensor power
    def _build(self) -> None:
        F = self.field
        for n in range(0, self.top + 2):
            words = ["".join(t) for t in itertools.product(self.gens, repeat=n)]
            pos = {w: i for i, w in enumerate(words)}
            ideal = Subspace(len(words))
            if n >= 2:
                for i in range(n - 1):
                    for left in itertools.product(self.gens, repeat=i):
                        for right in itertools.product(self.gens, repeat=n - 2 - i):
                            l, r = "".join(left), "".join(right)
                            for rel in self.pres.relations:
                                ideal.add({pos[l + w + r]: F(c) for w, c in rel.items()})
            qdim = len(words) - ideal.rank
            labels = self.pres.basis[n] if n < len(self.pres.basis) else []
            if qdim != len(labels):
                raise ValueError(f"degree {n}: quotient has dimension {qdim}, "
                                 f"basis lists {len(labels)} words")
            if n == self.top + 1:
                self.top_vanishing_checked = qdim == 0
            if not labels:
                for w in words:
                    self._normal_forms[w] = {}
                continue
            lab_vecs = [ideal.reduce({pos[w]: F(1)}) for w in labels]
            el = Elimination(lab_vecs, len(words))
            if el.rank != len(labels):
                raise ValueError(f"degree {n}: chosen basis words are dependent")
            offset = self.by_degree[n][0]
            for w in words:
                x = el.solve(ideal.reduce({pos[w]: F(1)}))
                self._normal_forms[w] = {offset + k: v for k, v in x.items()}

    # ---- elementary operations -------------------------------------------
    def word(self, w: str) -> Vec:
        """Normal form of a word in the generators."""
        if len(w) > self.top:
            return {}
        return dict(self._normal_forms[w])

    def basis_vector(self, i: int) -> Vec:
        return {i: self.field(1)}

    def mul(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            row = self.mult[i]
            for j, b in v.items():
                axpy(out, a * b, row[j])
        return out

    def mul3(self, u: Vec, v: Vec, w: Vec) -> Vec:
        return self.mul(self.mul(u, v), w)

    def element_degree(self, u: Vec) -> Optional[int]:
        ds = {self.degree[i] for i in u}
        if len(ds) > 1:
            raise ValueError("element is not homogeneous")
        return ds.pop() if ds else None

    # ---- text form ---------------------------------------------------------
    def name(self, i: int) -> str:
        return self.words[i] or "1"

    def parse(self, s: str) -> Vec:
        """Parse a signed sum like ``"ab+bc-2ac"`` or ``"(aba-abc)"``."""
        return parse_linear(s, self._parse_monomial, self.field)

    def _parse_monomial(self, tok: str) -> Vec:
        if tok in ("", "1"):
            return self.word("")
        if not set(tok) <= set(self.gens):
            raise ValueError(f"bad monomial {tok!r}")
        return self.word(tok)

    def fmt(self, u: Vec) -> str:
        return format_linear(u, self.name, self.field)

    # ---- derived structures -----------------------------------------------
    def center(self, degree: Optional[int] = None) -> List[Vec]:
        """Basis of the centre (optionally of one graded piece)."""
        idx = list(range(self.dim)) if degree is None else self.by_degree.get(degree, [])
        cols = []
        for i in idx:
            # image of e_i under  x -> (g x - x g)_g  over all generators g
            col: Vec = {}
            for gi, g in enumerate(self.gens):
                gv = self.word(g)
                comm = self.mul(gv, {i: 1})
                axpy(comm, -1, self.mul({i: 1}, gv))
                for k, v in comm.items():
                    col[gi * self.dim + k] = v
            cols.append(col)
        ker = kernel_basis(cols, len(self.gens) * self.dim)
        return [{idx[k]: v for k, v in z.items()} for z in ker]

    def derivations(self, t: int) -> List[List[Vec]]:
        """Basis of derivations of internal degree ``t``.

        A derivation is returned as the list of images of the basis.  The
        unknowns are the full matrix entries of a degree ``t`` linear
        endomorphism, and the Leibniz rule is imposed on every pair of
        basis elements.
        """
        unknowns = [(i, j) for i in range(self.dim) for j in range(self.dim)
                    if self.degree[j] == self.degree[i] + t]
        upos = {u: k for k, u in enumerate(unknowns)}
        # equation rows: (x, y, k) component k of D(xy) - D(x)y - xD(y)
        rows: Dict[Tuple[int, int, int], Vec] = {}

        def add(key, unk, c):
            if unk in upos and c:
                r = rows.setdefault(key, {})
                r[upos[unk]] = r.get(upos[unk], 0) + c

        for x in range(self.dim):
            for y in range(self.dim):
                xy = self.mult[x][y]
                for m, c in xy.items():
                    for k in range(self.dim):
                        add((x, y, k), (m, k), c)
                for m in range(self.dim):
                    # D(x) y : unknown (x, m) times (m*y)
                    for k, c in self.mult[m][y].items():
                        add((x, y, k), (x, m), -c)
                    for k, c in self.mult[x][m].items():
                        add((x, y, k), (y, m), -c)
        keys = sorted(rows)
        kpos = {k: i for i, k in enumerate(keys)}
        cols: List[Vec] = [dict() for _ in unknowns]
        for key, r in rows.items():
            for u, c in r.items():
                if c:
                    cols[u][kpos[key]] = c
        ker = kernel_basis(cols, len(keys))
        out = []
        for z in ker:
            images: List[Vec] = [dict() for _ in range(self.dim)]
            for u, c in z.items():
                i, j = unknowns[u]
                images[i][j] = c
            out.append(images)
        return out

    def inner_derivations(self, t: int) -> List[List[Vec]]:
        """Spanning set of inner derivations ``x -> zx - xz`` of degree ``t``."""
        out = []
        for z in self.by_degree.get(t, []):
            images = []
            for i in range(self.dim):
                v = self.mul({z: 1}, {i: 1})
                axpy(v, -1, self.mul({i: 1}, {z: 1}))
                images.append(v)
            out.append(images)
        return out

    def derivation_from_generators(self, images: Dict[str, Vec]) -> List[Vec]:
        """Extend generator images by the Leibniz rule along basis words.

        Raises ValueError if the extension does not respect the relations.
        """
        for g in self.gens:
            images.setdefault(g, {})

        @lru_cache(maxsize=None)
        def on_word(w: str) -> Tuple[Tuple[int, object], ...]:
            out: Vec = {}
            for k, g in enumerate(w):
                axpy(out, 1, self.mul(self.mul(self.word(w[:k]), images[g]), self.word(w[k + 1:])))
            return tuple(sorted(out.items()))

        for rel in self.pres.relations:
            tot: Vec = {}
            for w, c in rel.items():
                for k, v in on_word(w):
                    tot[k] = tot.get(k, 0) + self.field(c) * v
            if vclean(tot):
                raise ValueError("generator images do not define a derivation")
        return [dict(on_word(w)) for w in self.words]


# --------------------------------------------------------------------------
# the quadratic dual
# --------------------------------------------------------------------------


def _eval_exponent(expr: str, n: int) -> int:
    expr = expr.replace(" ", "")
    if expr == "n":
        return n
    m = re.fullmatch(r"n([+-]\d+)", expr)
    if m:
        return n + int(m.group(1))
    return int(expr)


class KoszulDual:
    """The quadratic dual algebra, built lazily degree by degree.

    Degree ``n`` has a basis of words given by the presentation's pattern;
    ``right[n][g]`` is the matrix (list of columns) of right multiplication
    by the dual generator ``g`` from degree ``n`` to degree ``n+1``.
    """

    def __init__(self, pres: Presentation, field: Field = QQ):
        self.pres = pres
        self.field = field
        self.gens = list(pres.dual_generators)
        self.gpos = {g: i for i, g in enumerate(self.gens)}
        self.relations = self._orthogonal_relations()
        self.words: Dict[int, List[str]] = {0: [""]}
        self.right: Dict[int, Dict[str, List[Vec]]] = {}
        self._reduced_labels: Dict[int, Tuple[Subspace, Elimination]] = {}
        self._word_cache: Dict[str, Vec] = {"": {0: field(1)}}

    def _orthogonal_relations(self) -> List[Vec]:
        """Basis of R^perp in V* (x) V*, as vectors over pairs (g, h)."""
        F = self.field
        g = self.pres.generators
        pairs = [x + y for x in g for y in g]
        rels = _relation_vectors(pairs, self.pres.relations, F)
        # R^perp = kernel of the pairing matrix (rows: relations)
        cols = [{r: rel.get(j, 0) for r, rel in enumerate(rels) if rel.get(j)} for j in range(len(pairs))]
        return kernel_basis(cols, len(rels))

    def relation_words(self) -> List[Dict[str, object]]:
        out = []
        for r in self.relations:
            out.append({self.gens[k // len(self.gens)] + self.gens[k % len(self.gens)]: v
                        for k, v in r.items()})
        return out

    def pattern_words(self, n: int) -> List[str]:
        seen, out = set(), []
        for entry in self.pres.dual_basis_pattern:
            exps = [(g, _eval_exponent(e, n)) for g, e in entry]
            if any(e < 0 for _, e in exps):
                continue
            w = "".join(g * e for g, e in exps)
            if len(w) == n and w not in seen:
                seen.add(w)
                out.append(w)
        return out

    def ensure(self, n: int) -> None:
        """Build degrees up to ``n``."""
        m = max(self.words)
        while m < n:
            self._extend(m + 1)
            m += 1

    def _extend(self, n: int) -> None:
        F = self.field
        ng = len(self.gens)
        prev = self.words[n - 1]
        dimU = len(prev) * ng
        ideal = Subspace(dimU)
        if n >= 2:
            for k in range(len(self.words[n - 2])):
                for rel in self.relations:
                    vec: Vec = {}
                    for pair, c in rel.items():
                        x, y = divmod(pair, ng)
                        for j, v in self.right[n - 2][self.gens[x]][k].items():
                            idx = j * ng + y
                            vec[idx] = vec.get(idx, 0) + c * v
                    ideal.add(vclean(vec))
        labels = self.pattern_words(n)
        qdim = dimU - ideal.rank
        if qdim != len(labels):
            raise ValueError(f"dual degree {n}: quotient dimension {qdim}, pattern gives {len(labels)}")

        def tensor(w: str) -> Vec:
            head = self.word_vec(w[:-1])
            y = self.gpos[w[-1]]
            return {j * ng + y: v for j, v in head.items()}

        lab = [ideal.reduce(tensor(w)) for w in labels]
        el = Elimination(lab, dimU)
        if el.rank != len(labels):
            raise ValueError(f"dual degree {n}: basis words are dependent")
        self.words[n] = labels
        self._reduced_labels[n] = (ideal, el)
        self.right[n - 1] = {
            g: [el.solve(ideal.reduce({j * ng + self.gpos[g]: F(1)})) for j in range(len(prev))]
            for g in self.gens
        }

    def dim(self, n: int) -> int:
        if n < 0:
            return 0
        self.ensure(n)
        return len(self.words[n])

    def word_vec(self, w: str) -> Vec:
        """Coordinates of a word in the degree ``len(w)`` basis."""
        hit = self._word_cache.get(w)
        if hit is not None:
            return hit
        self.ensure(len(w))
        head = self.word_vec(w[:-1])
        out: Vec = {}
        cols = self.right[len(w) - 1][w[-1]]
        for j, v in head.items():
            axpy(out, v, cols[j])
        self._word_cache[w] = out
        return out

    def apply_words(self, left: str, vec: Vec, right: str, n: int) -> Vec:
        """``left * x * right`` for ``x`` given by coordinates in degree ``n``."""
        out: Vec = {}
        for j, v in vec.items():
            axpy(out, v, self.word_vec(left + self.words[n][j] + right))
        return out

    # dual functionals: (u . f . v)(w) = f(v w u)
    def act_dual(self, u: str, f: Vec, v: str, n: int) -> Vec:
        """Bimodule action on a functional ``f`` of degree ``n``.

        Returns the functional ``w -> f(v w u)`` of degree ``n-|u|-|v|``.
        """
        m = n - len(u) - len(v)
        if m < 0:
            return {}
        self.ensure(n)
        out: Vec = {}
        for j, w in enumerate(self.words[m]):
            val = 0
            for k, c in self.word_vec(v + w + u).items():
                fk = f.get(k)
                if fk:
                    val = val + fk * c
            if val:
                out[j] = val
        return out

    # ---- names ----------------------------------------------------------------
    def name(self, n: int, k: int) -> str:
        w = self.words[n][k]
        if not w:
            return "eps"
        out = []
        for g, grp in itertools.groupby(w):
            e = len(list(grp))
            out.append(self.pres.dual_names[g] + ("" if e == 1 else str(e)))
        return "".join(out)

    def parse_name(self, s: str) -> Tuple[int, Vec]:
        """Word for a name like ``alpha2beta``; returns (degree, coordinates)."""
        if s in ("eps", "1"):
            return 0, {0: self.field(1)}
        inv = {v: k for k, v in self.pres.dual_names.items()}
        pat = "|".join(sorted(inv, key=len, reverse=True))
        toks = re.findall(rf"({pat})(\d*)", s)
        if "".join(a + b for a, b in toks) != s:
            raise ValueError(f"bad dual basis name {s!r}")
        w = "".join(inv[a] * (int(b) if b else 1) for a, b in toks)
        return len(w), dict(self.word_vec(w))


# --------------------------------------------------------------------------
# small text helpers shared with the cochain code
# --------------------------------------------------------------------------

_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z0-9]*)")


def parse_linear(s: str, monomial, field: Field) -> Vec:
    """Parse ``c1 m1 + c2 m2 - ...`` using ``monomial`` for each word."""
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    out: Vec = {}
    pos = 0
    if not s:
        raise ValueError("empty expression")
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {s!r} at {pos}")
        sign, coef, word = m.groups()
        c = field(coef) if coef else field(1)
        if sign == "-":
            c = -c
        if not word and not coef:
            raise ValueError(f"cannot parse {s!r}")
        axpy(out, c, monomial(word))
        pos = m.end()
    return out


def format_linear(u: Vec, name, field: Field) -> str:
    if not u:
        return "0"
    parts = []
    for k in sorted(u):
        c = u[k]
        txt = field.fmt(c)
        neg = txt.startswith("-")
        mag = txt[1:] if neg else txt
        term = name(k) if mag == "1" else f"{mag}*{name(k)}"
        parts.append(("-" if neg else "+") + term)
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s
