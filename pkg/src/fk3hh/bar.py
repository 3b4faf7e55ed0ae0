"""The bar resolution in low degrees and the chain-level bracket.

Elements of ``B_n = A^{(n+2)}`` are sparse dicts keyed by tuples of basis
indices ``(a_0, ..., a_{n+1})``.  Bar cochains are handled through the
isomorphism with multilinear maps ``A^{n} -> A`` and are evaluated lazily on
the tuples that are actually needed, so nothing of size ``12^n`` is ever
materialised unless a comparison map asks for it.

Comparison maps:

* ``i_0``, ``i_1`` are the obvious ones; ``i_n`` for ``n >= 2`` is
  ``s o i_{n-1} o delta_n`` with the contracting homotopy
  ``s(a_0|...|a_{n+1}) = 1|a_0|...|a_{n+1}``.
* ``p_m`` (``m <= 4``) is solved on each ``1|a_1|...|a_m|1``.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Tuple

from .linalg import Vec, axpy, vclean
from .resolution import Resolution, act

BarElem = Dict[Tuple[int, ...], object]

#: largest degree for which ``p_m`` may be built (``12^m`` solves)
P_GUARD = 4
#: largest degree for which ``i_n`` may be built
I_GUARD = 7


def _badd(out: BarElem, key: Tuple[int, ...], c) -> None:
    w = out.get(key)
    w = c if w is None else w + c
    if w:
        out[key] = w
    else:
        out.pop(key, None)


class BarComplex:
    """Truncated bar resolution of ``A`` with comparison maps to ``P``."""

    def __init__(self, R: Resolution, reverse: Optional[bool] = None):
        self.R = R
        self.A = R.A
        self.F = R.field
        self.reverse = reverse
        self._i: Dict[int, List[BarElem]] = {}
        self._p: Dict[Tuple[int, ...], Vec] = {}

    # ---- structure -----------------------------------------------------
    def differential(self, x: BarElem) -> BarElem:
        """``d(a_0|...|a_{n+1}) = sum_j (-1)^j a_0|...|a_j a_{j+1}|...``."""
        mult = self.A.mult
        out: BarElem = {}
        for key, c in x.items():
            n = len(key) - 2
            for j in range(n + 1):
                sgn = c if j % 2 == 0 else -c
                for k, v in mult[key[j]][key[j + 1]].items():
                    _badd(out, key[:j] + (k,) + key[j + 2:], sgn * v)
        return out

    def augmentation(self, x: BarElem) -> Vec:
        out: Vec = {}
        for (a, b), c in x.items():
            axpy(out, c, self.A.mult[a][b])
        return vclean(out)

    def contract(self, x: BarElem) -> BarElem:
        u = self.A.unit
        return {(u,) + k: c for k, c in x.items()}

    def act(self, left: int, x: BarElem, right: int) -> BarElem:
        """``left . x . right`` for basis elements ``left`` and ``right``."""
        mult = self.A.mult
        out: BarElem = {}
        for key, c in x.items():
            for i, ci in mult[left][key[0]].items():
                for j, cj in mult[key[-1]][right].items():
                    _badd(out, (i,) + key[1:-1] + (j,), c * ci * cj)
        return out

    # ---- P -> B ---------------------------------------------------------
    def i_generators(self, n: int) -> List[BarElem]:
        """``i_n`` on the generators ``1|u|1`` of ``P_n``."""
        if n in self._i:
            return self._i[n]
        if n > I_GUARD:
            raise ValueError(f"i_{n} exceeds the bar truncation guard {I_GUARD}")
        R, u = self.R, self.A.unit
        if n == 0:
            imgs = [{(u, u): self.F(1)}]
        elif n == 1:
            # d_1(1|g|1) = g|1 - 1|g must match i_0 delta_1(1|g*|1)
            imgs = []
            M = R.P[1]
            for g in range(M.rank):
                img = R.delta[1].images[g]
                left = {x: c for f, c in img.items()
                        for _, x, y in [R.P[0].split(f)] if y == u}
                if len(left) != 1:
                    raise ValueError("delta_1 is not of the expected two-term shape")
                (x, c), = left.items()
                imgs.append({(u, x, u): c})
                chk = self.differential(imgs[-1])
                want = self.apply_i(0, img)
                if vclean({k: chk.get(k, 0) - want.get(k, 0) for k in set(chk) | set(want)}):
                    raise ValueError("i_1 is not a chain map for this sign convention")
        else:
            imgs = [self.contract(self.apply_i(n - 1, v)) for v in R.delta[n].images]
        self._i[n] = imgs
        return imgs

    def apply_i(self, n: int, v: Vec) -> BarElem:
        gens = self.i_generators(n)
        M = self.R.P[n]
        out: BarElem = {}
        for f, c in v.items():
            g, x, y = M.split(f)
            for key, cv in self.act(x, gens[g], y).items():
                _badd(out, key, c * cv)
        return out

    # ---- B -> P ---------------------------------------------------------
    def p_generator(self, mids: Tuple[int, ...]) -> Vec:
        """``p_m(1|a_1|...|a_m|1)`` in ``P_m``."""
        hit = self._p.get(mids)
        if hit is not None:
            return hit
        m = len(mids)
        if m > P_GUARD:
            raise ValueError(f"p_{m} exceeds the bar truncation guard {P_GUARD}")
        R, u = self.R, self.A.unit
        if m == 0:
            val = R.P[0].generator(0)
        else:
            rhs = self.apply_p(self.differential({(u,) + mids + (u,): self.F(1)}))
            deg = sum(self.A.degree[a] for a in mids)
            val = R.solver(m, self.reverse).solve(rhs, deg)
        self._p[mids] = val
        return val

    def apply_p(self, x: BarElem) -> Vec:
        R = self.R
        out: Vec = {}
        for key, c in x.items():
            m = len(key) - 2
            M = R.P[m]
            img = self.p_generator(key[1:-1])
            one = self.F(1)
            axpy(out, c, act(M, {key[0]: one}, img, {key[-1]: one}))
        return vclean(out)


class BarCochain:
    """A multilinear map ``A^{n} -> A`` evaluated lazily on basis tuples."""

    def __init__(self, n: int, fn: Callable[[Tuple[int, ...]], Vec]):
        self.n = n
        self._fn = fn
        self._memo: Dict[Tuple[int, ...], Vec] = {}

    def __call__(self, args: Tuple[int, ...]) -> Vec:
        v = self._memo.get(args)
        if v is None:
            v = self._memo[args] = self._fn(args)
        return v

    def on_element(self, args: List[Vec]) -> Vec:
        """Value on a tuple of arbitrary algebra elements (multilinearity)."""
        out: Vec = {}

        def rec(k: int, prefix: Tuple[int, ...], c):
            if k == len(args):
                axpy(out, c, self(prefix))
                return
            for i, ci in args[k].items():
                rec(k + 1, prefix + (i,), c * ci)

        rec(0, (), 1)
        return vclean(out)


def pullback_to_bar(B: BarComplex, C, n: int, phi: Vec) -> BarCochain:
    """``F(phi o p_n)`` for a cochain ``phi`` on ``P_n``."""
    def fn(args):
        return C.evaluate(n, phi, B.p_generator(tuple(args)))
    return BarCochain(n, fn)


def circle(f: BarCochain, g: BarCochain) -> BarCochain:
    """Gerstenhaber's ``f o g`` with the sign ``(-1)^{(n-1)(i-1)}``."""
    m, n = f.n, g.n
    if m == 0:
        return BarCochain(n - 1, lambda args: {})

    def fn(args):
        out: Vec = {}
        for i in range(1, m + 1):
            sign = -1 if ((n - 1) * (i - 1)) % 2 else 1
            inner = g(tuple(args[i - 1:i - 1 + n]))
            if not inner:
                continue
            elems = [{a: 1} for a in args[:i - 1]] + [inner] + [{a: 1} for a in args[i - 1 + n:]]
            axpy(out, sign, f.on_element(elems))
        return vclean(out)

    return BarCochain(m + n - 1, fn)


def chain_bracket(f: BarCochain, g: BarCochain) -> BarCochain:
    """``[f, g] = f o g - (-1)^{(m-1)(n-1)} g o f``."""
    fg, gf = circle(f, g), circle(g, f)
    eps = -1 if ((f.n - 1) * (g.n - 1)) % 2 else 1

    def fn(args):
        out = dict(fg(args))
        axpy(out, -eps, gf(args))
        return vclean(out)

    return BarCochain(f.n + g.n - 1, fn)


def restrict_to_resolution(B: BarComplex, C, h: BarCochain) -> Vec:
    """The cochain ``G(h) o i_n`` on ``P_n``, as cochain symbols."""
    n = h.n
    A = B.A
    N = A.dim
    out: Vec = {}
    for g, img in enumerate(B.i_generators(n)):
        val: Vec = {}
        for key, c in img.items():
            mid = h(key[1:-1])
            if mid:
                axpy(val, c, A.mul(A.mul({key[0]: 1}, mid), {key[-1]: 1}))
        for x, c in vclean(val).items():
            out[g * N + x] = c
    return out


def central_insertion(B: BarComplex, z: Vec, x: BarElem) -> BarElem:
    """``t(a_0|...|a_{n+1}) = sum_j (-1)^j a_0|...|a_j|z|a_{j+1}|...|a_{n+1}``."""
    out: BarElem = {}
    for key, c in x.items():
        for j in range(len(key) - 1):
            sgn = c if j % 2 == 0 else -c
            for zi, cz in z.items():
                _badd(out, key[:j + 1] + (zi,) + key[j + 1:], sgn * cz)
    return out


def cup_on_bar(A, f: BarCochain, g: BarCochain) -> BarCochain:
    """``(f g)(a_1, ..., a_{m+n}) = f(a_1, ..., a_m) g(a_{m+1}, ..., a_{m+n})``."""
    m = f.n

    def fn(args):
        left = f(tuple(args[:m]))
        if not left:
            return {}
        return A.mul(left, g(tuple(args[m:])))

    return BarCochain(m + g.n, fn)
