"""Chain-level constructions over the resolution.

* null homotopies of degree-0 chain maps lifting zero (used for brackets
  with central elements),
* liftings of derivations to operators on the resolution (brackets with
  degree-one classes),
* lifts of cocycles to chain maps (Yoneda products).

All solves use the cached per-degree eliminations of the resolution, so the
solution picked is always the canonical one for the configured pivot order.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence

from .linalg import InconsistentSystem, Vec, axpy, vclean, vsub
from .resolution import BimoduleMap, Resolution, act


def commutator_map(R: Resolution, z: Vec, n: int) -> BimoduleMap:
    """The chain map ``v -> z v - v z`` on ``P_n`` for a central ``z``."""
    M = R.P[n]
    one = {R.A.unit: R.field(1)}
    images = []
    for g in range(M.rank):
        e = M.generator(g)
        images.append(vclean(vsub(act(M, z, e, one), act(M, one, e, z))))
    shift = R.A.element_degree(z) or 0
    return BimoduleMap(M, M, images, shift=shift)


class NullHomotopy:
    """``h_n : P_n -> P_{n+1}`` with ``g_0 = d h_0`` and ``g_n = h d + d h``.

    ``maps(n)`` returns the chain map ``g_n`` on ``P_n``; it must lift zero.
    Components are solved lazily, generator by generator.
    """

    def __init__(self, R: Resolution, maps: Callable[[int], BimoduleMap], shift: int,
                 reverse: Optional[bool] = None):
        self.R = R
        self.maps = maps
        self.shift = shift
        self.reverse = reverse
        self._h: Dict[int, BimoduleMap] = {}

    def __getitem__(self, n: int) -> BimoduleMap:
        if n not in self._h:
            self._h[n] = self._solve(n)
        return self._h[n]

    def _solve(self, n: int) -> BimoduleMap:
        R = self.R
        if n + 1 > R.depth:
            raise ValueError(f"homotopy component h_{n} needs resolution depth {n + 1}")
        g = self.maps(n)
        prev = self[n - 1] if n >= 1 else None
        S = R.solver(n + 1, self.reverse)
        src, tgt = R.P[n], R.P[n + 1]
        images = []
        for k in range(src.rank):
            rhs = dict(g.images[k])
            if prev is not None:
                rhs = vclean(vsub(rhs, prev.apply(R.delta[n].images[k])))
            try:
                images.append(S.solve(rhs, src.gdeg[k] + self.shift))
            except InconsistentSystem as exc:
                raise InconsistentSystem(
                    f"no homotopy component on {src.names[k]} in degree {n}: {exc}") from exc
        return BimoduleMap(src, tgt, images, shift=self.shift)


def central_homotopy(R: Resolution, z: Vec, reverse: Optional[bool] = None) -> NullHomotopy:
    shift = R.A.element_degree(z) or 0
    cache: Dict[int, BimoduleMap] = {}

    def maps(n: int) -> BimoduleMap:
        if n not in cache:
            cache[n] = commutator_map(R, z, n)
        return cache[n]

    return NullHomotopy(R, maps, shift, reverse)


class DerivationLifting:
    """Operators ``rho_n`` on ``P_n`` lifting a derivation ``rho``.

    ``rho_n(omega_i x|u|y) = x q_u y + omega_i rho(x)|u|y + omega_i x|u|rho(y)``
    where the correction ``q_u`` on each generator solves
    ``delta_n(q_u) = rho_{n-1}(delta_n(1|u|1))`` and ``q = 0`` on ``P_0``.
    """

    def __init__(self, R: Resolution, images: Sequence[Vec], reverse: Optional[bool] = None,
                 preset: Optional[Dict[int, Dict[int, Vec]]] = None):
        self.R = R
        self.rho = [dict(v) for v in images]
        degs = {R.A.degree[j] - R.A.degree[i] for i, v in enumerate(self.rho) for j in v}
        if len(degs) > 1:
            raise ValueError("derivation is not homogeneous")
        self.degree = degs.pop() if degs else 0
        self.reverse = reverse
        self._q: Dict[int, List[Vec]] = {0: [dict() for _ in range(R.P[0].rank)]}
        self._preset = preset or {}

    def q(self, n: int) -> List[Vec]:
        if n not in self._q:
            self._q[n] = self._solve(n)
        return self._q[n]

    def apply(self, n: int, v: Vec) -> Vec:
        R = self.R
        M = R.P[n]
        A = R.A
        q = self.q(n)
        out: Vec = {}
        for f, c in v.items():
            g, x, y = M.split(f)
            if q[g]:
                axpy(out, c, act(M, {x: A.field(1)}, q[g], {y: A.field(1)}))
            for xi, cx in self.rho[x].items():
                axpy(out, c * cx, {M.flat(g, xi, y): 1})
            for yi, cy in self.rho[y].items():
                axpy(out, c * cy, {M.flat(g, x, yi): 1})
        return vclean(out)

    def _solve(self, n: int) -> List[Vec]:
        R = self.R
        S = R.solver(n, self.reverse)
        M = R.P[n]
        fixed = self._preset.get(n, {})
        out = []
        for g in range(M.rank):
            if g in fixed:
                out.append(dict(fixed[g]))
                continue
            rhs = self.apply(n - 1, R.delta[n].images[g])
            try:
                out.append(S.solve(rhs, M.gdeg[g] + self.degree))
            except InconsistentSystem as exc:
                raise InconsistentSystem(f"no lifting correction on {M.names[g]}: {exc}") from exc
        return out

    def residual(self, n: int, g: int, q: Vec) -> Vec:
        """``delta_n(q) - rho_{n-1}(delta_n(1|u|1))`` for a proposed correction."""
        R = self.R
        return vclean(vsub(R.delta[n].apply(q), self.apply(n - 1, R.delta[n].images[g])))
