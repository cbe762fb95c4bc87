"""Weyl groups: enumeration, length, reduced words, Bruhat order, Demazure products."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .rootsystem import RootSystem, Weight

Matrix = tuple[tuple[int, ...], ...]

DEFAULT_MAX_ORDER = 1200
BRUHAT_PRECOMPUTE_LIMIT = 1200


class ResourceCapError(RuntimeError):
    """The group is larger than the configured cap."""


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _apply(m: Matrix, lam: Weight) -> Weight:
    return tuple(sum(r * x for r, x in zip(row, lam)) for row in m)


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element, stored as its matrix on fundamental-weight coordinates.

    ``index`` is the position in :attr:`WeylGroup.elements` (sorted by length,
    then by reduced word); ``word`` is the lexicographically least reduced word,
    with zero-based letters.
    """

    matrix: Matrix
    length: int
    word: tuple[int, ...]
    index: int = field(default=-1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"WeylElement({self.label})"

    @property
    def label(self) -> str:
        return "".join(f"s{i + 1}" for i in self.word) or "e"

    def act(self, lam: Weight) -> Weight:
        return _apply(self.matrix, lam)

    def root_images(self, rs: RootSystem) -> tuple[Weight, ...]:
        """w(alpha_i) for each simple root; a faithful invariant of w."""
        return tuple(self.act(a) for a in rs.simple_roots)


class WeylGroup:
    """All elements of W(rs), enumerated breadth-first by right multiplication."""

    def __init__(self, rs: RootSystem, max_order: int = DEFAULT_MAX_ORDER):
        self.root_system = rs
        n = rs.rank
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        # s_i: lam -> lam - lam_i alpha_i
        self.simple_matrices: list[Matrix] = [
            tuple(
                tuple(int(r == c) - (rs.simple_roots[i][r] if c == i else 0) for c in range(n))
                for r in range(n)
            )
            for i in range(n)
        ]

        words: dict[Matrix, tuple[int, ...]] = {ident: ()}
        level = [ident]
        while level:
            nxt: list[Matrix] = []
            for m in level:  # level is sorted by word, so the first hit is lex-least
                for i in range(n):
                    mi = _matmul(m, self.simple_matrices[i])
                    if mi not in words:
                        words[mi] = words[m] + (i,)
                        nxt.append(mi)
                        if len(words) > max_order:
                            raise ResourceCapError(
                                f"|W({rs.name})| exceeds the cap of {max_order}"
                            )
            nxt.sort(key=words.__getitem__)
            level = nxt

        order = sorted(words, key=lambda m: (len(words[m]), words[m]))
        self.elements: list[WeylElement] = [
            WeylElement(m, len(words[m]), words[m], k) for k, m in enumerate(order)
        ]
        self._by_matrix = {w.matrix: w for w in self.elements}
        for w in self.elements:
            assert w.length == self._inversion_count(w), "BFS depth disagrees with root count"
        self.identity = self.elements[0]
        self.longest = self.elements[-1]
        # right multiplication table by simple reflections
        self._right = [
            [self._by_matrix[_matmul(w.matrix, s)].index for s in self.simple_matrices]
            for w in self.elements
        ]
        self._left = [
            [self._by_matrix[_matmul(s, w.matrix)].index for s in self.simple_matrices]
            for w in self.elements
        ]
        self._down: dict[int, frozenset[int]] = {}
        if len(self.elements) <= BRUHAT_PRECOMPUTE_LIMIT:
            for w in self.elements:
                self.lower_interval(w)

    # basic structure

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, k: int) -> WeylElement:
        return self.elements[k]

    @property
    def rank(self) -> int:
        return self.root_system.rank

    def _inversion_count(self, w: WeylElement) -> int:
        rs = self.root_system
        return sum(1 for b in rs.positive_roots if not rs.is_positive_root(w.act(b)))

    def from_matrix(self, m: Matrix) -> WeylElement:
        return self._by_matrix[m]

    def from_word(self, word: Iterable[int]) -> WeylElement:
        """Ordinary product s_{i1} ... s_{ik} (zero-based letters)."""
        k = 0
        for i in word:
            if not 0 <= i < self.rank:
                raise IndexError(f"simple index {i} out of range")
            k = self._right[k][i]
        return self.elements[k]

    def right_simple(self, w: WeylElement, i: int) -> WeylElement:
        return self.elements[self._right[w.index][i]]

    def left_simple(self, i: int, w: WeylElement) -> WeylElement:
        return self.elements[self._left[w.index][i]]

    def mul(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self._by_matrix[_matmul(a.matrix, b.matrix)]

    def inverse(self, w: WeylElement) -> WeylElement:
        return self.from_word(reversed(w.word))

    def reflection(self, root: Weight) -> WeylElement:
        """The reflection s_beta for a root beta."""
        rs = self.root_system
        n = rs.rank
        cols = [rs.reflect_root(root, tuple(int(k == j) for k in range(n))) for j in range(n)]
        return self._by_matrix[tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))]

    def reflections(self) -> list[WeylElement]:
        return [self.reflection(b) for b in self.root_system.positive_roots]

    def is_right_descent(self, w: WeylElement, i: int) -> bool:
        return self.right_simple(w, i).length < w.length

    # Bruhat order

    def lower_interval(self, w: WeylElement) -> frozenset[int]:
        """Indices of {v : v <= w}, as products of subwords of w's reduced word."""
        got = self._down.get(w.index)
        if got is None:
            reach = {0}
            for i in w.word:
                reach |= {self._right[k][i] for k in reach}
            got = self._down[w.index] = frozenset(reach)
        return got

    def bruhat_leq(self, v: WeylElement, w: WeylElement) -> bool:
        return v.index in self.lower_interval(w)

    def bruhat_leq_reflections(self, v: WeylElement, w: WeylElement) -> bool:
        """Independent criterion: w is reached from v by length-increasing reflections."""
        if v.length > w.length:
            return False
        refl = self._reflection_matrices()
        seen = {v.index}
        frontier = [v]
        while frontier:
            nxt = []
            for x in frontier:
                if x == w:
                    return True
                for t in refl:
                    y = self._by_matrix[_matmul(x.matrix, t)]
                    if y.length > x.length and y.length <= w.length and y.index not in seen:
                        seen.add(y.index)
                        nxt.append(y)
            frontier = nxt
        return False

    def _reflection_matrices(self) -> list[Matrix]:
        if not hasattr(self, "_refl"):
            self._refl = [t.matrix for t in self.reflections()]
        return self._refl

    def upper_interval(self, w: WeylElement) -> list[int]:
        return [v.index for v in self.elements if w.index in self.lower_interval(v)]

    # Demazure product and parabolics

    def demazure_product(self, word: Sequence[int]) -> WeylElement:
        """Fold with w*s_i = ws_i if that is longer, else w (the 0-Hecke monoid)."""
        k = 0
        for i in word:
            if not 0 <= i < self.rank:
                raise IndexError(f"simple index {i} out of range")
            nk = self._right[k][i]
            if self.elements[nk].length > self.elements[k].length:
                k = nk
        return self.elements[k]

    def minimal_coset_reps(self, parabolic: Iterable[int]) -> list[WeylElement]:
        """W^P = {w : l(w s_i) > l(w) for i in parabolic}."""
        par = sorted(set(parabolic))
        if any(not 0 <= i < self.rank for i in par):
            raise IndexError(f"parabolic subset {par} out of range")
        return [w for w in self.elements if all(not self.is_right_descent(w, i) for i in par)]

    def parabolic_subgroup(self, parabolic: Iterable[int]) -> list[WeylElement]:
        par = set(parabolic)
        return [w for w in self.elements if set(w.word) <= par]


def generate(rs: RootSystem, max_order: int = DEFAULT_MAX_ORDER) -> WeylGroup:
    return WeylGroup(rs, max_order=max_order)
