"""T-equivariant K-theory of G/B in the fixed-point (GKM) model.

A class is its tuple of restrictions to the fixed points vB, indexed by
``WeylElement.index``.  Conventions, all pinned by the duality tests:

* the point class O_e restricts at e to prod_{a > 0} (1 - e^a);
* the fiber of L_lam at vB has character e^{-v lam};
* chi(f) = sum_v f(v) / prod_{a > 0} (1 - e^{v a});
* O^w is the w0-translate of O_{w0 w}.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .laurent import LaurentPoly, NotDivisible, divide_exact
from .rootsystem import Weight
from .weyl import WeylElement, WeylGroup

BASES = ("O_lower", "O_upper", "xi_lower", "xi_upper", "dualizing")

# which bases have support {v >= w} (upper) rather than {v <= w}
_UPWARD = {"O_lower": False, "xi_lower": False, "O_upper": True, "xi_upper": True, "dualizing": True}


class InvariantViolation(AssertionError):
    """An internal consistency check failed; the inputs or the engine are corrupt."""


@dataclass(frozen=True)
class KClass:
    values: tuple[LaurentPoly, ...]

    @property
    def nvars(self) -> int:
        return self.values[0].nvars

    def __getitem__(self, v: WeylElement | int) -> LaurentPoly:
        return self.values[v if isinstance(v, int) else v.index]

    def __len__(self) -> int:
        return len(self.values)

    def support(self) -> list[int]:
        return [k for k, p in enumerate(self.values) if p]

    def is_zero(self) -> bool:
        return not any(self.values)

    def __add__(self, other: "KClass") -> "KClass":
        return KClass(tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "KClass") -> "KClass":
        return KClass(tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "KClass":
        return KClass(tuple(-a for a in self.values))

    def __mul__(self, other) -> "KClass":
        if isinstance(other, KClass):
            return KClass(tuple(a * b for a, b in zip(self.values, other.values)))
        return KClass(tuple(a * other for a in self.values))

    __rmul__ = __mul__


@dataclass
class Expansion:
    """Coefficients of a class in one of the named bases; zero coefficients are omitted."""

    basis: str
    coefficients: dict[WeylElement, LaurentPoly]
    nvars: int
    source: KClass | None = field(default=None, repr=False, compare=False)

    def __getitem__(self, w: WeylElement) -> LaurentPoly:
        return self.coefficients.get(w, LaurentPoly.zero(self.nvars))

    def items(self):
        return sorted(self.coefficients.items(), key=lambda kv: kv[0].index)

    def support(self) -> list[WeylElement]:
        return [w for w, _ in self.items()]

    def with_coefficient(self, w: WeylElement, value: LaurentPoly) -> "Expansion":
        coeffs = dict(self.coefficients)
        if value:
            coeffs[w] = value
        else:
            coeffs.pop(w, None)
        return Expansion(self.basis, coeffs, self.nvars, self.source)


class FlagK:
    """K_T(G/B) for the Weyl group ``W``; basis classes are built once and memoized."""

    def __init__(self, W: WeylGroup, tables: Mapping[str, Sequence[KClass]] | None = None):
        self.W = W
        self.rs = W.root_system
        self.n = self.rs.rank
        self.N = len(W)
        self.zero_poly = LaurentPoly.zero(self.n)
        self.one_poly = LaurentPoly.const(1, self.n)
        self._w0 = W.longest
        self._flip_index = [W.mul(self._w0, v).index for v in W]
        self._act_cache: dict[int, dict] = {}
        self._down = [sorted(W.lower_interval(w)) for w in W]
        self._up = [[] for _ in W]
        for w in W:
            for v in self._down[w.index]:
                self._up[v].append(w.index)
        self._basis: dict[str, list[KClass]] = {}
        # scratch space for derived data owned by other modules
        self.memo: dict[str, dict] = {}
        if tables:
            for tag, classes in tables.items():
                self._basis[tag] = list(classes)

    # elementary pieces

    def char(self, lam: Weight) -> LaurentPoly:
        return LaurentPoly.monomial(lam)

    def weyl_act(self, w: WeylElement, p: LaurentPoly) -> LaurentPoly:
        """e^lam -> e^{w lam}."""
        cache = self._act_cache.setdefault(w.index, {})
        return p.map_exponents(lambda e: cache.get(e) or cache.setdefault(e, w.act(e)))

    def constant(self, p: LaurentPoly | int) -> KClass:
        if isinstance(p, int):
            p = LaurentPoly.const(p, self.n)
        return KClass((p,) * self.N)

    def unit(self) -> KClass:
        return self.constant(1)

    def zero(self) -> KClass:
        return self.constant(0)

    def from_values(self, values: Mapping[WeylElement, LaurentPoly]) -> KClass:
        out = [self.zero_poly] * self.N
        for v, p in values.items():
            out[v.index] = p
        return KClass(tuple(out))

    # GKM condition

    def gkm_violations(self, f: KClass) -> list[tuple[WeylElement, Weight]]:
        """Pairs (v, a) where f(v) - f(s_a v) is not divisible by 1 - e^{v a}."""
        bad = []
        for v in self.W:
            for a in self.rs.positive_roots:
                va = v.act(a)
                u = self.W.mul(self.W.reflection(va), v)
                if u.index < v.index:
                    continue
                diff = f[v] - f[u]
                if diff and _try_div(diff, self.one_poly - self.char(va)) is None:
                    bad.append((v, a))
        return bad

    def is_gkm(self, f: KClass) -> bool:
        return not self.gkm_violations(f)

    # Demazure operators

    def demazure(self, i: int, f: KClass) -> KClass:
        """(D_i f)(v) = (f(v) - e^{v a_i} f(v s_i)) / (1 - e^{v a_i})."""
        out = []
        a = self.rs.simple_roots[i]
        for v in self.W:
            e = self.char(v.act(a))
            num = f[v] - e * f[self.W.right_simple(v, i)]
            try:
                out.append(divide_exact(num, self.one_poly - e))
            except NotDivisible as exc:
                raise InvariantViolation(f"D_{i + 1} not exact at {v.label}: input fails GKM") from exc
        return KClass(tuple(out))

    # basis classes

    def _table(self, tag: str) -> list[KClass]:
        got = self._basis.get(tag)
        if got is not None:
            return got
        if tag == "O_lower":
            got = self._build_schubert()
        elif tag == "O_upper":
            got = [self.flip(self._table("O_lower")[k]) for k in self._flip_index]
        elif tag == "xi_lower":
            O = self._table("O_lower")
            got = [self._alternating(O, self._down[w.index], w) for w in self.W]
        elif tag == "xi_upper":
            O = self._table("O_upper")
            got = [self._alternating(O, self._up[w.index], w) for w in self.W]
        elif tag == "dualizing":
            twist = self.omega_twist()
            got = [twist * xi for xi in self._table("xi_upper")]
        elif "|" in tag:
            got = self._build_parabolic(tag)
        else:
            raise ValueError(f"unknown basis {tag!r}; expected one of {BASES}")
        self._basis[tag] = got
        return got

    def parabolic_tag(self, tag: str, parabolic: Iterable[int]) -> str:
        """Basis tag for the classes pulled back from G/P; plain ``tag`` when P = B."""
        parabolic = sorted(set(parabolic))
        if not parabolic:
            return tag
        if tag not in ("O_upper", "xi_upper"):
            raise ValueError(f"basis {tag!r} has no G/P version")
        if any(not 0 <= i < self.n for i in parabolic):
            raise ValueError(f"parabolic indices out of range for rank {self.n}")
        return tag + "|" + ",".join(map(str, parabolic))

    def _parabolic_points(self, tag: str) -> list[int] | None:
        if "|" not in tag:
            return None
        parabolic = [int(i) for i in tag.split("|")[1].split(",")]
        return [w.index for w in self.W.minimal_coset_reps(parabolic)]

    def _build_parabolic(self, tag: str) -> list[KClass]:
        # O^w for w in W^P; xi^w_P from O^w = sum_{v in W^P, v >= w} xi^v_P
        base = tag.split("|")[0]
        reps = self._parabolic_points(tag)
        rep_set = set(reps)
        O = self._table("O_upper")
        got = [self.zero()] * self.N
        for k in sorted(reps, reverse=True):
            cls = O[k]
            if base == "xi_upper":
                for j in self._up[k]:
                    if j != k and j in rep_set:
                        cls = cls - got[j]
            got[k] = cls
        return got

    def _build_schubert(self) -> list[KClass]:
        O: list[KClass | None] = [None] * self.N
        point = self.one_poly
        for a in self.rs.positive_roots:
            point = point * (self.one_poly - self.char(a))
        O[0] = self.from_values({self.W.identity: point})
        for w in self.W.elements[1:]:
            i = w.word[-1]
            parent = self.W.right_simple(w, i)
            O[w.index] = self.demazure(i, O[parent.index])
        return O  # type: ignore[return-value]

    def _alternating(self, O: list[KClass], indices: Iterable[int], w: WeylElement) -> KClass:
        acc = self.zero()
        for k in indices:
            sign = -1 if (self.W[k].length - w.length) % 2 else 1
            acc = acc + O[k] * sign
        return acc

    def flip(self, f: KClass) -> KClass:
        """(Phi f)(v) = w0 . f(w0 v)."""
        return KClass(tuple(self.weyl_act(self._w0, f.values[self._flip_index[k]]) for k in range(self.N)))

    def basis_class(self, tag: str, w: WeylElement) -> KClass:
        return self._table(tag)[w.index]

    def schubert_class(self, w: WeylElement) -> KClass:
        """O_w = [O_{X_w}]."""
        return self._table("O_lower")[w.index]

    def opposite_schubert_class(self, w: WeylElement) -> KClass:
        """O^w = [O_{X^w}]."""
        return self._table("O_upper")[w.index]

    def xi_class(self, w: WeylElement, variant: str = "upper") -> KClass:
        if variant not in ("lower", "upper"):
            raise ValueError("variant must be 'lower' or 'upper'")
        return self._table(f"xi_{variant}")[w.index]

    def line_bundle_class(self, lam: Weight) -> KClass:
        """L_lam = G x^B C_{-lam}: restriction e^{-v lam} at vB."""
        return KClass(tuple(self.char(tuple(-x for x in v.act(lam))) for v in self.W))

    def omega_twist(self) -> KClass:
        """e^{rho} L_{-rho}: the factor turning xi^w into the dualizing class of X^w."""
        rho = self.rs.rho()
        return KClass(tuple(self.char(tuple(a + b for a, b in zip(rho, v.act(rho)))) for v in self.W))

    def canonical_class(self) -> KClass:
        """omega_{G/B} = L_{-2 rho}."""
        return self.line_bundle_class(tuple(-2 * x for x in self.rs.rho()))

    def dualizing_class(self, w: WeylElement) -> KClass:
        """[omega_{X^w}] = e^{rho} L_{-rho} xi^w."""
        return self._table("dualizing")[w.index]

    def richardson_class(self, v: WeylElement, w: WeylElement) -> KClass:
        """[O_{X_v cap X^w}] = O_v . O^w; zero unless w <= v."""
        return self.schubert_class(v) * self.opposite_schubert_class(w)

    # pushforward and pairing

    def product(self, f: KClass, g: KClass) -> KClass:
        return f * g

    def euler_characteristic(self, f: KClass, check: bool = False) -> LaurentPoly:
        """chi(f) = sum of the O_w-coefficients of f, since chi(O_w) = 1."""
        coeffs = self._solve(f, "O_lower")
        chi = self.zero_poly
        for a in coeffs.values():
            chi = chi + a
        if check:
            loc = self.euler_localization(f)
            if loc != chi:
                raise InvariantViolation(f"chi by expansion {chi} != chi by localization {loc}")
        return chi

    def euler_localization(self, f: KClass) -> LaurentPoly:
        """Localization sum over a common denominator prod_{b > 0} (1 - e^b)."""
        num = self.zero_poly
        for v in self.W:
            if not f[v]:
                continue
            shift = [0] * self.n
            for a in self.rs.positive_roots:
                va = v.act(a)
                if not self.rs.is_positive_root(va):
                    shift = [s - x for s, x in zip(shift, va)]
            term = f[v].shift(tuple(shift))
            num = num + (-term if v.length % 2 else term)
        for b in self.rs.positive_roots:
            try:
                num = divide_exact(num, self.one_poly - self.char(b))
            except NotDivisible as exc:
                raise InvariantViolation("localization sum is not a Laurent polynomial") from exc
        return num

    def pairing(self, f: KClass, g: KClass) -> LaurentPoly:
        return self.euler_characteristic(f * g)

    # basis expansion

    def _diagonal(self, tag: str, k: int) -> LaurentPoly:
        return self._table(tag)[k].values[k]

    def _solve(self, f: KClass, tag: str) -> dict[int, LaurentPoly]:
        """Triangular solve of f = sum_w a_w B_w against the support order of the basis."""
        basis = self._table(tag)
        upward = _UPWARD[tag.split("|")[0]]
        residual = list(f.values)
        points = self._parabolic_points(tag)
        if points is not None:
            order = sorted(points)
        else:
            order = range(self.N) if upward else range(self.N - 1, -1, -1)
        reach = self._up if upward else self._down
        out: dict[int, LaurentPoly] = {}
        for k in order:
            r = residual[k]
            if not r:
                continue
            try:
                a = divide_exact(r, basis[k].values[k])
            except NotDivisible as exc:
                raise InvariantViolation(f"{tag} expansion is not exact at {self.W[k].label}") from exc
            out[k] = a
            bk = basis[k].values
            for j in reach[k]:
                if bk[j]:
                    residual[j] = residual[j] - a * bk[j]
        if any(residual):
            where = "outside the pulled-back span" if points is not None else "after expansion"
            raise InvariantViolation(f"nonzero residual in {tag} {where}")
        return out

    def expand(self, f: KClass, tag: str) -> Expansion:
        coeffs = self._solve(f, tag)
        return Expansion(tag, {self.W[k]: a for k, a in coeffs.items()}, self.n, f)

    def reconstruct(self, exp: Expansion) -> KClass:
        acc = self.zero()
        basis = self._table(exp.basis)
        for w, a in exp.coefficients.items():
            acc = acc + basis[w.index] * a
        return acc

    def structure_constants(self, u: WeylElement, v: WeylElement, tag: str = "O_upper") -> Expansion:
        """Expansion of B_u . B_v in the basis B (for 'dualizing', of B_u B_v / omega_X)."""
        prod = self.basis_class(tag, u) * self.basis_class(tag, v)
        if tag == "dualizing":
            rho2 = tuple(2 * x for x in self.rs.rho())
            prod = KClass(tuple(p.shift(tuple(-x for x in w.act(rho2))) for p, w in zip(prod.values, self.W)))
        return self.expand(prod, tag)

    def parabolic_reduce(self, exp: Expansion, parabolic: Iterable[int]) -> Expansion:
        """Restrict an expansion to W^P, asserting it vanishes off W^P."""
        reps = set(self.W.minimal_coset_reps(parabolic))
        stray = [w for w in exp.coefficients if w not in reps]
        if stray:
            raise InvariantViolation(
                "coefficients outside W^P: " + ", ".join(w.label for w in sorted(stray, key=lambda w: w.index))
            )
        return Expansion(exp.basis, dict(exp.coefficients), exp.nvars, exp.source)

    def xi_classes(self, variant: str = "upper") -> list[KClass]:
        return [self.xi_class(w, variant) for w in self.W]

    # alternate names
    demazure_step = demazure
    kproduct = product
    expand_in_basis = expand

    def parabolic_structure_constants(
        self, u: WeylElement, v: WeylElement, parabolic: Iterable[int], tag: str = "O_upper"
    ) -> Expansion:
        """Expansion of B^P_u B^P_v in the G/P basis B^P (pulled back to G/B)."""
        ptag = self.parabolic_tag(tag, parabolic)
        if self._table(ptag)[u.index].is_zero() or self._table(ptag)[v.index].is_zero():
            raise ValueError(f"{u.label}, {v.label} must be minimal coset representatives")
        return self.expand(self.basis_class(ptag, u) * self.basis_class(ptag, v), ptag)


def _try_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly | None:
    try:
        return divide_exact(p, d)
    except NotDivisible:
        return None
