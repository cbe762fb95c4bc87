"""Sparse integer Laurent polynomials: the representation ring Z[Lambda].

Exponents are integer tuples (weights); coefficients are Python ints, so
nothing ever overflows.  Lexicographic order on exponent tuples is a group
order on Z^n, which is what makes exact division by leading terms work.
"""

from __future__ import annotations

import heapq
from collections.abc import Callable, Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class NotDivisible(ArithmeticError):
    """Raised by :func:`divide_exact`; ``remainder`` is the witness."""

    def __init__(self, dividend: "LaurentPoly", divisor: "LaurentPoly", remainder: "LaurentPoly"):
        super().__init__(f"{divisor} does not divide {dividend}")
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder


class NotInYRing(ArithmeticError):
    """The y-expansion did not terminate within the degree cap."""

    def __init__(self, poly: "LaurentPoly", residual: "LaurentPoly", multi_index: tuple[int, ...], cap: int):
        super().__init__(f"{poly} has no terminating y-expansion within degree {cap}")
        self.poly = poly
        self.residual = residual
        self.multi_index = multi_index
        self.cap = cap


def _add(a: Exponent, b: Exponent) -> Exponent:
    return tuple([x + y for x, y in zip(a, b)])


def _sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple([x - y for x, y in zip(a, b)])


class LaurentPoly:
    """Immutable element of Z[Z^n].  ``terms`` maps exponent tuples to nonzero ints."""

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, int] = {}
        for e, c in items:
            e = tuple(e)
            acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in acc.items() if c}
        if nvars is None:
            if not self._terms:
                raise ValueError("nvars is required for the zero polynomial")
            nvars = len(next(iter(self._terms)))
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, int], nvars: int) -> "LaurentPoly":
        # trusted constructor: no zero coefficients in ``terms``
        p = object.__new__(cls)
        p._terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw({}, nvars)

    @classmethod
    def const(cls, c: int, nvars: int) -> "LaurentPoly":
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        exp = tuple(exp)
        return cls._raw({exp: coeff} if coeff else {}, len(exp))

    # inspection

    @property
    def terms(self) -> Mapping[Exponent, int]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        return sorted(self._terms.items())

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.nvars, 0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == LaurentPoly.const(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            if not any(e):
                parts.append(str(c))
            else:
                mono = "e^(" + ",".join(map(str, e)) + ")"
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # ring operations

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"lattice rank mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                del out[e]
        return LaurentPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()}, self.nvars)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exponent, int] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([x + y for x, y in zip(ea, eb)])
                out[e] = get(e, 0) + ca * cb
        return LaurentPoly._raw({e: c for e, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial() or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("only unit monomials have negative powers")
            ((e, c),) = self._terms.items()
            return LaurentPoly.monomial(tuple(-x * (-k) for x in e), c ** (-k))
        out = LaurentPoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, exp: Exponent) -> "LaurentPoly":
        """Multiply by the monomial e^exp."""
        return LaurentPoly._raw({_add(e, exp): c for e, c in self._terms.items()}, self.nvars)

    def map_exponents(self, f: Callable[[Exponent], Exponent], nvars: int | None = None) -> "LaurentPoly":
        """Apply a group homomorphism on exponents (merging collisions)."""
        out: dict[Exponent, int] = {}
        for e, c in self._terms.items():
            fe = tuple(f(e))
            out[fe] = out.get(fe, 0) + c
        n = self.nvars if nvars is None else nvars
        return LaurentPoly._raw({e: c for e, c in out.items() if c}, n)

    def specialize_at_one(self) -> int:
        """Image under e^lambda -> 1 (non-equivariant specialization)."""
        return sum(self._terms.values())

    def __truediv__(self, other) -> "LaurentPoly":
        return divide_exact(self, self._coerce(other))

    # serialization

    def to_json(self) -> list:
        return [[list(e), c] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list, nvars: int) -> "LaurentPoly":
        return cls(((tuple(e), c) for e, c in data), nvars=nvars)


def multiply(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def weyl_act(w, p: LaurentPoly) -> LaurentPoly:
    """w . e^lam = e^{w lam}; ``w`` is anything with an ``act`` method on weights."""
    return p.map_exponents(w.act, p.nvars)


def divide_exact(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return q with q*d == p, or raise :class:`NotDivisible` carrying the remainder.

    Leading-term division in lex order.  If d | p then Newt(p) = Newt(q) + Newt(d),
    so every quotient exponent lies in a box computed coordinatewise from p and d.
    Leaving the box proves non-divisibility; the box is finite, so the loop ends.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    dt = d._terms
    if len(dt) == 1:
        ((de, dc),) = dt.items()
        out = {}
        for e, c in p._terms.items():
            qc, r = divmod(c, dc)
            if r:
                raise NotDivisible(p, d, p)
            out[_sub(e, de)] = qc
        return LaurentPoly._raw(out, p.nvars)

    lead_d = max(dt)
    lead_c = dt[lead_d]
    n = p.nvars
    lo = [min(e[k] for e in p._terms) - min(e[k] for e in dt) for k in range(n)]
    hi = [max(e[k] for e in p._terms) - max(e[k] for e in dt) for k in range(n)]
    rest = [(e, c) for e, c in dt.items() if e != lead_d]

    rem = dict(p._terms)
    heap = [tuple(-x for x in e) for e in rem]  # max-heap via negation
    heapq.heapify(heap)
    quotient: dict[Exponent, int] = {}
    while rem:
        while True:
            top = tuple(-x for x in heapq.heappop(heap))
            if top in rem:
                break
        qe = _sub(top, lead_d)
        qc, r = divmod(rem[top], lead_c)
        if r or any(x < a or x > b for x, a, b in zip(qe, lo, hi)):
            heapq.heappush(heap, tuple(-x for x in top))
            raise NotDivisible(p, d, LaurentPoly._raw(dict(rem), p.nvars))
        quotient[qe] = qc
        del rem[top]
        for e, c in rest:
            t = _add(e, qe)
            v = rem.get(t, 0) - qc * c
            if v:
                if t not in rem:
                    heapq.heappush(heap, tuple(-x for x in t))
                rem[t] = v
            elif t in rem:
                del rem[t]
    return LaurentPoly._raw(quotient, p.nvars)


def try_divide(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly | None:
    try:
        return divide_exact(p, d)
    except NotDivisible:
        return None


def restrict_to_subtorus(p: LaurentPoly, matrix: Sequence[Sequence[int]]) -> LaurentPoly:
    """e^lambda -> e^{M lambda}; M is r x n with n == p.nvars."""
    r = len(matrix)
    if any(len(row) != p.nvars for row in matrix):
        raise ValueError(f"subtorus matrix must have {p.nvars} columns")
    rows = [tuple(row) for row in matrix]
    return p.map_exponents(lambda e: tuple(sum(a * x for a, x in zip(row, e)) for row in rows), nvars=r)


class YPolynomial:
    """Integer polynomial in y_i = e^{-b_i} - 1, where b_i are the coordinate basis vectors."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Mapping[tuple[int, ...], int], nvars: int):
        self.terms = {J: c for J, c in terms.items() if c}
        self.nvars = nvars

    def __eq__(self, other) -> bool:
        return isinstance(other, YPolynomial) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for J, c in sorted(self.terms.items()):
            mono = "*".join(f"y{i + 1}" + (f"^{j}" if j > 1 else "") for i, j in enumerate(J) if j)
            parts.append(str(c) if not mono else mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    def __neg__(self) -> "YPolynomial":
        return YPolynomial({J: -c for J, c in self.terms.items()}, self.nvars)

    def scale(self, k: int) -> "YPolynomial":
        return YPolynomial({J: k * c for J, c in self.terms.items()}, self.nvars)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.terms.values())

    def degree(self) -> int:
        return max((sum(J) for J in self.terms), default=0)

    def evaluate(self) -> LaurentPoly:
        """Substitute y_i = e^{-b_i} - 1."""
        n = self.nvars
        ys = [LaurentPoly({tuple(-int(k == i) for k in range(n)): 1, (0,) * n: -1}) for i in range(n)]
        out = LaurentPoly.zero(n)
        for J, c in self.terms.items():
            t = LaurentPoly.const(c, n)
            for i, j in enumerate(J):
                if j:
                    t = t * ys[i] ** j
            out = out + t
        return out

    def to_json(self) -> list:
        return [[list(J), c] for J, c in sorted(self.terms.items())]


def _delta(p: LaurentPoly, i: int, at_one: LaurentPoly, x_minus_one: LaurentPoly) -> LaurentPoly:
    return divide_exact(p - at_one, x_minus_one)


def _specialize_var(p: LaurentPoly, i: int) -> LaurentPoly:
    return p.map_exponents(lambda e: e[:i] + (0,) + e[i + 1 :])


def expand_in_y(p: LaurentPoly, degree_cap: int) -> YPolynomial:
    """Coefficients c_J of p = sum_J c_J prod_i (e^{-b_i} - 1)^{j_i}.

    Iterated difference quotients at e^{-b_i} = 1, one variable at a time.
    Raises :class:`NotInYRing` with the nonzero residual when the expansion
    does not terminate within total degree ``degree_cap``.
    """
    n = p.nvars
    out: dict[tuple[int, ...], int] = {}
    # x_i - 1 with x_i = e^{-b_i}
    x_minus_one = [LaurentPoly({tuple(-int(k == i) for k in range(n)): 1, (0,) * n: -1}) for i in range(n)]

    def rec(q: LaurentPoly, i: int, prefix: tuple[int, ...]) -> None:
        if q.is_zero():
            return
        if i == n:
            out[prefix] = out.get(prefix, 0) + q.constant_term()
            return
        budget = degree_cap - sum(prefix)
        j = 0
        while not q.is_zero():
            if j > budget:
                raise NotInYRing(p, q, prefix + (j,) + (0,) * (n - i - 1), degree_cap)
            q1 = _specialize_var(q, i)
            rec(q1, i + 1, prefix + (j,))
            q = divide_exact(q - q1, x_minus_one[i])
            j += 1

    rec(p, 0, ())
    return YPolynomial(out, n)
