"""Type-A cross-check through double Grothendieck polynomials.

G_{w0}(x; y) = prod_{i+j <= N} (x_i + y_j - x_i y_j), and
G_{w s_i} = pi_i G_w whenever l(w s_i) < l(w), with the isobaric divided
difference pi_i f = d_i((1 - x_{i+1}) f).  The polynomial algebra runs in
sympy, independently of the Demazure recursion in :mod:`kring`.

Convention dictionary (fixed by the A1 case, then frozen):
    y_j        -> 1 - e^{-eps_j}
    x_i at vB  -> 1 - e^{eps_{v(i)}}
    G_w        -> O^w
"""

from __future__ import annotations

from functools import cached_property

import sympy
from sympy.polys.rings import PolyElement

from .kring import Expansion, FlagK, KClass
from .laurent import LaurentPoly, NotDivisible, divide_exact
from .weyl import WeylElement

Perm = tuple[int, ...]


class OracleError(RuntimeError):
    pass


class DoubleGrothendieck:
    """All double Grothendieck polynomials of S_N, as sparse sympy ring elements over ZZ."""

    def __init__(self, N: int):
        self.N = N
        names = [f"x{i}" for i in range(1, N + 1)] + [f"y{j}" for j in range(1, N + 1)]
        self.ring, *gens = sympy.ring(names, sympy.ZZ)
        self.x, self.y = tuple(gens[:N]), tuple(gens[N:])
        self.gens = self.x + self.y
        top = self.ring.one
        for i in range(1, N + 1):
            for j in range(1, N + 1 - i):
                xi, yj = self.x[i - 1], self.y[j - 1]
                top *= xi + yj - xi * yj
        w0 = tuple(range(N, 0, -1))
        self.polys: dict[Perm, PolyElement] = {w0: top}
        level = [w0]
        while level:
            nxt = []
            for w in level:
                for i in range(N - 1):
                    if w[i] > w[i + 1]:
                        ws = w[:i] + (w[i + 1], w[i]) + w[i + 2 :]
                        if ws not in self.polys:
                            self.polys[ws] = self.isobaric(i, self.polys[w])
                            nxt.append(ws)
            level = nxt

    def divided_difference(self, i: int, f: PolyElement) -> PolyElement:
        """d_i f = (f - s_i f) / (x_i - x_{i+1}), zero-based i, termwise:

        (x^a y^b - x^b y^a) / (x - y) = sum_{k=0}^{a-b-1} x^{a-1-k} y^{b+k} for a > b.
        """
        out: dict[tuple[int, ...], int] = {}
        for monom, c in f.items():
            a, b = monom[i], monom[i + 1]
            if a == b:
                continue
            hi, lo, sign = (a, b, c) if a > b else (b, a, -c)
            m = list(monom)
            for k in range(hi - lo):
                m[i], m[i + 1] = hi - 1 - k, lo + k
                key = tuple(m)
                out[key] = out.get(key, 0) + sign
        return self.ring({k: v for k, v in out.items() if v})

    def isobaric(self, i: int, f: PolyElement) -> PolyElement:
        """pi_i f = d_i((1 - x_{i+1}) f)."""
        return self.divided_difference(i, (1 - self.x[i + 1]) * f)

    def __getitem__(self, w: Perm) -> PolyElement:
        return self.polys[w]


def double_grothendieck(w: Perm) -> PolyElement:
    return DoubleGrothendieck(len(w))[tuple(w)]


class GrothendieckOracle:
    """Structure constants of O^u O^v in type A_n computed from double Grothendieck polynomials."""

    def __init__(self, K: FlagK):
        if K.rs.cartan_type != "A":
            raise ValueError(f"the Grothendieck oracle is type A only, got {K.rs.name}")
        self.K = K
        self.n = K.rs.rank
        self.N = self.n + 1
        self.dg = DoubleGrothendieck(self.N)
        # eps_k in fundamental-weight coordinates: omega_k - omega_{k-1}
        self.eps = [
            tuple(int(j == k) - int(j == k - 1) for j in range(self.n)) for k in range(self.N)
        ]

    def permutation(self, w: WeylElement) -> Perm:
        """One-line notation (1-based) of w, defined by w(eps_i) = eps_{w(i)}."""
        index = {e: k for k, e in enumerate(self.eps)}
        return tuple(index[w.act(e)] + 1 for e in self.eps)

    def _localize(self, poly: PolyElement, v: WeylElement) -> LaurentPoly:
        """Evaluate at x_i = 1 - e^{eps_{v(i)}}, y_j = 1 - e^{-eps_j}."""
        perm = self.permutation(v)
        x_images = [self._one_minus(self.eps[perm[i] - 1]) for i in range(self.N)]
        y_images = [self._one_minus(tuple(-c for c in self.eps[j])) for j in range(self.N)]
        images = x_images + y_images
        powers: dict[tuple[int, int], LaurentPoly] = {}
        out = LaurentPoly.zero(self.n)
        for monom, coeff in poly.items():
            term = LaurentPoly.const(int(coeff), self.n)
            for k, d in enumerate(monom):
                if d:
                    p = powers.get((k, d))
                    if p is None:
                        p = powers[(k, d)] = images[k] ** d
                    term = term * p
            out = out + term
        return out

    def _one_minus(self, lam) -> LaurentPoly:
        return LaurentPoly({(0,) * self.n: 1, tuple(lam): -1})

    @cached_property
    def classes(self) -> list[KClass]:
        """Localized G_w for every w, in the engine's element order."""
        out = []
        for w in self.K.W:
            poly = self.dg[self.permutation(w)]
            out.append(KClass(tuple(self._localize(poly, v) for v in self.K.W)))
        return out

    def _leading_point(self, k: int) -> int:
        """The minimal-length fixed point in the support of G_w (it is w itself)."""
        supp = self.classes[k].support()
        if not supp:
            raise OracleError(f"localized Grothendieck polynomial {k} vanishes")
        return min(supp, key=lambda j: (self.K.W[j].length, j))

    def structure_constants(self, u: WeylElement, v: WeylElement) -> Expansion:
        """Expand G_u G_v in {G_w}, eliminating leading terms from the bottom up."""
        G = self.classes
        residual = list((G[u.index] * G[v.index]).values)
        lead = {k: self._leading_point(k) for k in range(len(G))}
        by_point = {p: k for k, p in lead.items()}
        if len(by_point) != len(G):
            raise OracleError("leading points are not distinct")
        coeffs: dict[WeylElement, LaurentPoly] = {}
        for p in sorted(by_point, key=lambda j: (self.K.W[j].length, j)):
            if not residual[p]:
                continue
            k = by_point[p]
            try:
                a = divide_exact(residual[p], G[k].values[p])
            except NotDivisible as exc:
                raise OracleError(f"elimination failed at {self.K.W[p].label}") from exc
            coeffs[self.K.W[k]] = a
            residual = [r - a * g for r, g in zip(residual, G[k].values)]
        if any(residual):
            raise OracleError("elimination left a nonzero residual")
        return Expansion("O_upper", coeffs, self.n)


def oracle_structure_constants(K: FlagK, u: WeylElement, v: WeylElement) -> Expansion:
    if K.rs.rank > 3:
        raise ValueError("the oracle is limited to rank <= 3")
    oracle = K.memo.setdefault("grothendieck_oracle", {})
    if "oracle" not in oracle:
        oracle["oracle"] = GrothendieckOracle(K)
    return oracle["oracle"].structure_constants(u, v)


__all__ = [
    "DoubleGrothendieck",
    "GrothendieckOracle",
    "OracleError",
    "double_grothendieck",
    "oracle_structure_constants",
]
