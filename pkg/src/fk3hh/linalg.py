"""Exact sparse linear algebra over Q and over prime fields.

Vectors are plain ``dict`` objects mapping an integer index to a nonzero
field element.  Matrices are given by their columns (one sparse vector per
column) because every matrix in this package arises as "apply a linear map
to each basis element of the source".

The central object is :class:`Elimination`, a Gaussian elimination that
records its row operations so that the same factorization can be replayed
against many right-hand sides.  Pivot columns are taken in a fixed order,
which makes kernels and particular solutions canonical: free variables are
set to zero and the solution is determined by the pivot columns alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

try:  # gmpy2 is much faster than Fraction, but optional
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _mpq = None

Vec = Dict[int, object]


class InconsistentSystem(ValueError):
    """Raised when a linear system has no solution."""


# --------------------------------------------------------------------------
# fields
# --------------------------------------------------------------------------


class ModP:
    """Element of F_p.  Supports the arithmetic operators used by the solver."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            return other.v
        return int(other) % self.p

    def __add__(self, other):
        return ModP(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return ModP(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return ModP(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return ModP(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return ModP(self._coerce(other), self.p) / self

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.v == other.v
        try:
            return self.v == int(other) % self.p
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


@dataclass(frozen=True)
class Field:
    """A coefficient field: ``char == 0`` means Q, otherwise F_char."""

    char: int = 0

    @property
    def name(self) -> str:
        return "rational" if self.char == 0 else f"fp:{self.char}"

    def __call__(self, x):
        """Convert an int, Fraction, element or ``"p/q"`` string."""
        if self.char == 0:
            if isinstance(x, str):
                x = Fraction(x)
            if _mpq is not None:
                if isinstance(x, Fraction):
                    return _mpq(x.numerator, x.denominator)
                return _mpq(x)
            return Fraction(x)
        if isinstance(x, ModP):
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction) or (_mpq is not None and type(x) is type(_mpq(0))):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.char == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {self.char}")
            return ModP(num * pow(den, -1, self.char), self.char)
        return ModP(int(x), self.char)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def fmt(self, x) -> str:
        """Deterministic text form: ``"p/q"`` over Q, a residue over F_p."""
        if self.char == 0:
            f = Fraction(int(x.numerator), int(x.denominator))
            return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
        return str(x.v)

    @staticmethod
    def parse(spec: str) -> "Field":
        if spec in ("rational", "Q", "q"):
            return Field(0)
        if spec.startswith("fp:"):
            p = int(spec[3:])
            if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"{p} is not prime")
            return Field(p)
        raise ValueError(f"unknown field {spec!r}")


QQ = Field(0)


# --------------------------------------------------------------------------
# sparse vector helpers
# --------------------------------------------------------------------------


def axpy(y: Vec, a, x: Vec) -> None:
    """In place ``y += a*x`` dropping zeros."""
    for k, v in x.items():
        w = y.get(k)
        if w is None:
            y[k] = a * v
        else:
            w = w + a * v
            if w:
                y[k] = w
            else:
                del y[k]


def vscale(a, x: Vec) -> Vec:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


def vadd(*vs: Vec) -> Vec:
    out: Vec = {}
    for v in vs:
        axpy(out, 1, v)
    return out


def vsub(x: Vec, y: Vec) -> Vec:
    out = dict(x)
    axpy(out, -1, y)
    return out


def vclean(x: Vec) -> Vec:
    return {k: v for k, v in x.items() if v}


def combine(coeffs: Vec, vectors: Sequence[Vec]) -> Vec:
    """``sum coeffs[k] * vectors[k]``."""
    out: Vec = {}
    for k, c in coeffs.items():
        axpy(out, c, vectors[k])
    return out


# --------------------------------------------------------------------------
# elimination with replayable row operations
# --------------------------------------------------------------------------


class Elimination:
    """Gaussian elimination of a sparse matrix given by columns.

    Parameters
    ----------
    columns:
        ``columns[j]`` is column ``j`` as a sparse vector over row indices.
    nrows:
        Number of rows (only used for bookkeeping).
    column_order:
        Order in which columns are offered as pivots.  The default is the
        natural order.  Any permutation gives a valid factorization; a
        different order changes which solution :meth:`solve` returns.

    Within a column the pivot row is the one with fewest nonzeros (ties
    broken by the smaller row index), which keeps fill-in small on the
    very sparse matrices of the resolution.
    """

    def __init__(self, columns: Sequence[Vec], nrows: int,
                 column_order: Optional[Sequence[int]] = None, one=None):
        self.ncols = len(columns)
        self.nrows = nrows
        order = list(range(self.ncols)) if column_order is None else list(column_order)
        if sorted(order) != list(range(self.ncols)):
            raise ValueError("column_order must be a permutation")
        rows: Dict[int, Vec] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows.setdefault(i, {})[j] = v
        where: Dict[int, set] = {}
        for i, r in rows.items():
            for j in r:
                where.setdefault(j, set()).add(i)
        ops: List[Tuple[int, int, object]] = []
        pivots: List[Tuple[int, int, Vec]] = []  # (column, row, row copy)
        used: set = set()
        for j in order:
            cand = where.get(j)
            if not cand:
                continue
            # the sparsest candidate row becomes the pivot
            p = min(cand, key=lambda i: (len(rows[i]), i))
            prow = rows[p]
            pv = prow[j]
            for i in sorted(cand):
                if i == p:
                    continue
                r = rows[i]
                m = r[j] / pv
                for k, v in prow.items():
                    w = r.get(k)
                    if w is None:
                        r[k] = -m * v
                        where.setdefault(k, set()).add(i)
                    else:
                        w = w - m * v
                        if w:
                            r[k] = w
                        else:
                            del r[k]
                            where[k].discard(i)
                ops.append((i, p, m))
            used.add(p)
            for k in prow:
                where[k].discard(p)
            pivots.append((j, p, prow))
            del rows[p]
        self._ops = ops
        self._pivots = pivots
        self.pivot_columns = [j for j, _, _ in pivots]
        pcs = set(self.pivot_columns)
        self.free_columns = [j for j in order if j not in pcs]
        self.pivot_rows = {p for _, p, _ in pivots}
        self.rank = len(pivots)
        # a field one of the right type, for kernel seeds
        self._one = 1 if one is None else one
        for col in ([] if one is not None else columns):
            for v in col.values():
                if v:
                    self._one = v / v
                    break
            else:
                continue
            break

    # forward substitution on a right-hand side
    def _reduce(self, b: Vec) -> Vec:
        b = dict(b)
        for i, p, m in self._ops:
            bp = b.get(p)
            if bp:
                w = b.get(i)
                w = -m * bp if w is None else w - m * bp
                if w:
                    b[i] = w
                else:
                    b.pop(i, None)
        return b

    def _back(self, b: Vec, x: Vec) -> Vec:
        for j, p, prow in reversed(self._pivots):
            s = b.get(p, 0)
            for k, v in prow.items():
                if k != j:
                    xk = x.get(k)
                    if xk:
                        s = s - v * xk
            if s:
                x[j] = s / prow[j]
        return x

    def is_consistent(self, b: Vec) -> bool:
        rb = self._reduce(b)
        return all(i in self.pivot_rows for i, v in rb.items() if v)

    def solve(self, b: Vec) -> Vec:
        """Particular solution of ``M x = b`` with free variables zero."""
        rb = self._reduce(b)
        bad = [i for i, v in rb.items() if v and i not in self.pivot_rows]
        if bad:
            raise InconsistentSystem(f"no solution (residual in rows {bad[:5]})")
        return self._back(rb, {})

    def kernel(self) -> List[Vec]:
        """One kernel vector per free column (that column set to 1)."""
        out = []
        for f in self.free_columns:
            x = self._back({}, {f: self._one})
            out.append(vclean(x))
        return out


def rank(columns: Sequence[Vec], nrows: int) -> int:
    return Elimination(columns, nrows).rank


def kernel_basis(columns: Sequence[Vec], nrows: int) -> List[Vec]:
    return Elimination(columns, nrows).kernel()


def solve(columns: Sequence[Vec], nrows: int, b: Vec) -> Vec:
    return Elimination(columns, nrows).solve(b)


def transpose(columns: Sequence[Vec], nrows: int) -> List[Vec]:
    """Columns of the transposed matrix (i.e. the rows of the original)."""
    out: List[Vec] = [dict() for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            out[i][j] = v
    return out


def infeasibility_certificate(columns: Sequence[Vec], nrows: int, b: Vec) -> Optional[Vec]:
    """Return ``y`` with ``y^T M = 0`` and ``y^T b = 1``, or None if solvable.

    Such a ``y`` exists exactly when ``M x = b`` has no solution, so it is
    a checkable witness of infeasibility.
    """
    ncols = len(columns)
    rows = transpose(columns, nrows)  # columns of M^T, indexed by row of M
    # system [M^T ; b^T] y = e_{ncols}: the extra row is b^T
    aug = [dict(r) for r in rows]
    for i, v in b.items():
        if v:
            aug[i][ncols] = v
    el = Elimination(aug, ncols + 1)
    try:
        y = el.solve({ncols: 1})
    except InconsistentSystem:
        return None
    return y


# --------------------------------------------------------------------------
# subspaces in reduced row echelon form
# --------------------------------------------------------------------------


class Subspace:
    """A subspace of k^dim held as a fully reduced row echelon basis.

    The pivot of a row is its smallest index, normalised to 1, and every
    pivot index is absent from all other rows.  This is the canonical
    basis of the subspace, so two subspaces are equal iff their bases are.
    """

    def __init__(self, dim: int, vectors: Iterable[Vec] = ()):
        self.dim = dim
        self.rows: Dict[int, Vec] = {}  # pivot -> row
        for v in vectors:
            self.add(v)

    def reduce(self, v: Vec) -> Vec:
        """Canonical representative of ``v`` modulo the subspace.

        Rows are fully reduced, so subtracting one never creates an entry
        at another pivot and a single pass suffices.
        """
        v = dict(v)
        for p in [p for p in v if p in self.rows]:
            axpy(v, -v[p], self.rows[p])
        return v

    reduce_full = reduce

    def add(self, v: Vec) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        r = vscale(1 / r[p], r)
        for row in self.rows.values():
            c = row.get(p)
            if c:
                axpy(row, -c, r)
        self.rows[p] = r
        return True

    def __contains__(self, v: Vec) -> bool:
        return not self.reduce(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> List[Vec]:
        return [self.rows[p] for p in sorted(self.rows)]

    def pivots(self) -> List[int]:
        return sorted(self.rows)


class Quotient:
    """Quotient ``Z / B`` of two nested subspaces with canonical coordinates.

    The basis of the quotient is obtained by reducing the echelon basis of
    ``Z`` modulo ``B`` and echelonising again; coordinates of a vector are
    read off at the pivots of that reduced basis.
    """

    def __init__(self, Z: Subspace, B: Subspace):
        self.Z = Z
        self.B = B
        R = Subspace(Z.dim)
        for z in Z.basis():
            R.add(B.reduce_full(z))
        self.R = R
        self.pivots = R.pivots()
        self.basis = [R.rows[p] for p in self.pivots]  # canonical representatives

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def coordinates(self, v: Vec, check: bool = True) -> List:
        """Coordinates of the class of ``v`` (which must lie in Z)."""
        r = self.B.reduce_full(v)
        coords = [r.get(p, 0) for p in self.pivots]
        if check:
            rest = dict(r)
            for c, b in zip(coords, self.basis):
                if c:
                    axpy(rest, -c, b)
            if rest:
                raise ValueError("vector does not lie in the cycle space")
        return coords

    def representative(self, coords: Sequence) -> Vec:
        out: Vec = {}
        for c, b in zip(coords, self.basis):
            if c:
                axpy(out, c, b)
        return out


# --------------------------------------------------------------------------
# an independent dense oracle
# --------------------------------------------------------------------------


def bareiss_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    Independent of :class:`Elimination`; used as a cross-check oracle.
    """
    M = [list(map(int, r)) for r in matrix]
    if not M:
        return 0
    n, m = len(M), len(M[0])
    r = 0
    prev = 1
    for c in range(m):
        piv = next((i for i in range(r, n) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, n):
            for j in range(c + 1, m):
                M[i][j] = (M[r][c] * M[i][j] - M[i][c] * M[r][j]) // prev
            M[i][c] = 0
        prev = M[r][c]
        r += 1
        if r == n:
            break
    return r


def to_dense(columns: Sequence[Vec], nrows: int) -> List[List]:
    out = [[0] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            out[i][j] = v
    return out
