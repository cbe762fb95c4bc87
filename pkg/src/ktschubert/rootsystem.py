"""Finite crystallographic root systems in fundamental-weight coordinates.

A weight is a tuple of ints ``(c_1, ..., c_n)`` with ``c_i = <lambda, alpha_i^vee>``.
The simple root ``alpha_j`` is column ``j`` of the Cartan matrix, where
``cartan[i][j] = <alpha_i^vee, alpha_j>`` (Bourbaki numbering throughout).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

Weight = tuple[int, ...]

MAX_RANK = 6


class ConfigurationError(ValueError):
    """Invalid root-system type or rank."""


def cartan_matrix(cartan_type: str, rank: int) -> list[list[int]]:
    t, n = cartan_type.upper(), rank
    valid = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 4,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }
    if t not in valid or not valid[t]:
        raise ConfigurationError(f"no simple root system of type {cartan_type}{rank}")
    if n > MAX_RANK:
        raise ConfigurationError(f"rank {n} exceeds the guard of {MAX_RANK}")

    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j], a[j][i] = aij, aji

    if t in "ABC":
        for i in range(n - 1):
            bond(i, i + 1)
        if t == "B":  # alpha_n short
            bond(n - 2, n - 1, -1, -2)
        elif t == "C":  # alpha_n long
            bond(n - 2, n - 1, -2, -1)
    elif t == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif t == "E":
        bond(0, 2)
        bond(1, 3)
        for i in range(2, n - 1):
            bond(i, i + 1)
    elif t == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    else:  # G2, alpha_1 short
        bond(0, 1, -3, -1)
    return a


def _symmetrizer(a: list[list[int]]) -> list[int]:
    """Positive integers d_i with d_i a_ij = d_j a_ji, i.e. d_i = (alpha_i, alpha_i)/2 up to scale."""
    n = len(a)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and a[i][j] != 0 and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    scale = lcm(*(x.denominator for x in d))
    ints = [int(x * scale) for x in d]
    g = gcd(*ints)
    return [x // g for x in ints]


def _inverse(a: list[list[int]]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


@dataclass(frozen=True)
class RootSystem:
    cartan_type: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    simple_roots: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...]
    # root-lattice coordinates of positive_roots, same order
    positive_root_coords: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]
    _inverse_cartan: tuple[tuple[Fraction, ...], ...] = field(repr=False, compare=False)
    _positive_set: frozenset = field(repr=False, compare=False)

    @property
    def name(self) -> str:
        return f"{self.cartan_type}{self.rank}"

    def __str__(self) -> str:
        return self.name

    def zero(self) -> Weight:
        return (0,) * self.rank

    def reflect(self, i: int, lam: Weight) -> Weight:
        """s_i(lam) = lam - <lam, alpha_i^vee> alpha_i, with i zero-based."""
        if not 0 <= i < self.rank:
            raise IndexError(f"simple index {i} out of range for {self.name}")
        c = lam[i]
        if c == 0:
            return lam
        a = self.simple_roots[i]
        return tuple(x - c * y for x, y in zip(lam, a))

    def rho(self) -> Weight:
        return (1,) * self.rank

    def is_positive_root(self, lam: Weight) -> bool:
        return lam in self._positive_set

    def is_root(self, lam: Weight) -> bool:
        return lam in self._positive_set or tuple(-x for x in lam) in self._positive_set

    def to_root_coords(self, lam: Weight) -> tuple[int, ...]:
        """Coordinates of ``lam`` in the basis of simple roots; raises if not in the root lattice."""
        out = []
        for row in self._inverse_cartan:
            v = sum((r * x for r, x in zip(row, lam)), Fraction(0))
            if v.denominator != 1:
                raise ValueError(f"weight {lam} is not in the root lattice of {self.name}")
            out.append(int(v))
        return tuple(out)

    def from_root_coords(self, r: tuple[int, ...]) -> Weight:
        return tuple(sum(self.cartan[i][j] * r[j] for j in range(self.rank)) for i in range(self.rank))

    def inner(self, lam: Weight, mu: Weight) -> Fraction:
        """W-invariant form with (alpha_i, alpha_i) = 2 d_i; mu must lie in the root lattice."""
        r = self.to_root_coords(mu)
        return Fraction(sum(rj * lam[j] * self.symmetrizer[j] for j, rj in enumerate(r)))

    def coroot_pairing(self, lam: Weight, root: Weight) -> int:
        """<lam, root^vee> for an arbitrary root."""
        v = 2 * self.inner(lam, root) / self.inner(root, root)
        assert v.denominator == 1
        return int(v)

    def reflect_root(self, root: Weight, lam: Weight) -> Weight:
        """s_root(lam) for an arbitrary root."""
        c = self.coroot_pairing(lam, root)
        return tuple(x - c * y for x, y in zip(lam, root))

    def two_rho(self) -> Weight:
        """Sum of the positive roots."""
        return tuple(sum(col) for col in zip(*self.positive_roots))

    def braid_order(self, i: int, j: int) -> int:
        """Order of s_i s_j."""
        if i == j:
            return 1
        return {0: 2, 1: 3, 2: 4, 3: 6}[self.cartan[i][j] * self.cartan[j][i]]


def build_root_system(cartan_type: str, rank: int) -> RootSystem:
    """Root system of the given type; positive roots by closure under simple reflections."""
    a = cartan_matrix(cartan_type, rank)
    n = rank
    simple = tuple(tuple(a[i][j] for i in range(n)) for j in range(n))
    unit = [tuple(int(i == j) for i in range(n)) for j in range(n)]

    # BFS on (weight coords, root coords); keep positive images only
    seen = {simple[j]: unit[j] for j in range(n)}
    order = list(simple)
    queue = list(simple)
    while queue:
        beta = queue.pop(0)
        r = seen[beta]
        for i in range(n):
            c = beta[i]
            if c == 0:
                continue
            img = tuple(x - c * y for x, y in zip(beta, simple[i]))
            rimg = tuple(x - (c if k == i else 0) for k, x in enumerate(r))
            if all(x >= 0 for x in rimg) and any(rimg) and img not in seen:
                seen[img] = rimg
                order.append(img)
                queue.append(img)
    order.sort(key=lambda b: (sum(seen[b]), tuple(-x for x in seen[b])))
    return RootSystem(
        cartan_type=cartan_type.upper(),
        rank=n,
        cartan=tuple(tuple(row) for row in a),
        simple_roots=simple,
        positive_roots=tuple(order),
        positive_root_coords=tuple(seen[b] for b in order),
        symmetrizer=tuple(_symmetrizer(a)),
        _inverse_cartan=tuple(tuple(row) for row in _inverse(a)),
        _positive_set=frozenset(order),
    )


def reflect(rs: RootSystem, i: int, lam: Weight) -> Weight:
    return rs.reflect(i, lam)


def rho(rs: RootSystem) -> Weight:
    return rs.rho()
