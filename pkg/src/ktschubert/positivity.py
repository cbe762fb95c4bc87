"""Sign-alternation checks for equivariant K-theoretic structure constants.

Every coefficient is rewritten in the variables y_i = e^{-a_i} - 1 (or
e^{a_i} - 1 for the dualizing basis), multiplied by its expected sign, and
required to have nonnegative integer coefficients.  Failures keep the
offending coefficient and the y-expansion residual as a witness.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from .kring import Expansion, FlagK, InvariantViolation, KClass
from .laurent import LaurentPoly, NotInYRing, YPolynomial, expand_in_y, restrict_to_subtorus
from .weyl import WeylElement

CLAIMS = ("grku51", "grku52", "grra53", "dualizing", "richardson")

FaultHook = Callable[[tuple[WeylElement, ...], Expansion], Expansion]


@dataclass(frozen=True)
class SubtorusBasis:
    """Integer r x n matrix; column i holds the beta-coordinates of alpha_i restricted to S."""

    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def identity(cls, n: int) -> "SubtorusBasis":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def ones_row(cls, n: int) -> "SubtorusBasis":
        return cls(((1,) * n,))

    @classmethod
    def trivial(cls, n: int) -> "SubtorusBasis":
        return cls(((0,) * n,))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def ncols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def is_positive(self) -> bool:
        return all(x >= 0 for row in self.matrix for x in row)

    def is_full(self) -> bool:
        if not self.is_positive():
            return False
        cols = {tuple(row[j] for row in self.matrix) for j in range(self.ncols)}
        return all(tuple(int(i == k) for i in range(self.rank)) in cols for k in range(self.rank))

    def to_json(self) -> list:
        return [list(row) for row in self.matrix]


@dataclass
class Violation:
    indices: tuple[str, ...]
    reason: str
    coefficient: LaurentPoly | None = None
    y_expansion: YPolynomial | None = None
    residual: LaurentPoly | None = None

    def to_json(self) -> dict:
        return {
            "indices": list(self.indices),
            "reason": self.reason,
            "coefficient": None if self.coefficient is None else self.coefficient.to_json(),
            "y_expansion": None if self.y_expansion is None else self.y_expansion.to_json(),
            "residual": None if self.residual is None else self.residual.to_json(),
        }


@dataclass
class PositivityReport:
    claim: str
    group: str
    parabolic: tuple[int, ...] = ()
    instances_checked: int = 0
    violations: list[Violation] = field(default_factory=list)
    exploratory: bool = False
    subtorus: SubtorusBasis | None = None

    @property
    def status(self) -> str:
        return "fail" if self.violations else "pass"

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: "PositivityReport") -> "PositivityReport":
        self.instances_checked += other.instances_checked
        self.violations.extend(other.violations)
        return self

    def to_json(self) -> dict:
        out = {
            "claim": self.claim,
            "group": self.group,
            "parabolic": [i + 1 for i in self.parabolic],
            "instances": self.instances_checked,
            "status": self.status,
            "violations": [v.to_json() for v in self.violations],
        }
        if self.subtorus is not None:
            out["subtorus"] = self.subtorus.to_json()
        if self.exploratory:
            out["exploratory"] = True
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    def summary(self) -> str:
        tag = " (exploratory)" if self.exploratory else ""
        return (
            f"{self.claim:<11} {self.group:<4} instances={self.instances_checked:<6} "
            f"violations={len(self.violations):<4} {self.status.upper()}{tag}"
        )


def to_y(
    K: FlagK,
    c: LaurentPoly,
    degree_cap: int | None,
    variables: str = "minus",
    subtorus: SubtorusBasis | None = None,
    base_cap: int = 0,
) -> YPolynomial:
    """y-expansion of a coefficient over the root lattice (optionally restricted to S).

    ``variables='minus'`` uses e^{-a_i} - 1, ``'plus'`` uses e^{a_i} - 1.
    With ``degree_cap=None`` the cap is ``base_cap`` raised to the total degree
    of ``c`` in the variables e^{-b_i}, so only genuine non-members hit it.
    Raises ValueError off the root lattice and NotInYRing on nontermination.
    """
    r = c.map_exponents(K.rs.to_root_coords)
    if variables == "plus":
        r = r.map_exponents(lambda e: tuple(-x for x in e))
    elif variables != "minus":
        raise ValueError(f"variables must be 'minus' or 'plus', not {variables!r}")
    if subtorus is not None:
        r = restrict_to_subtorus(r, subtorus.matrix)
    if degree_cap is None:
        degree_cap = max([base_cap] + [-sum(e) for e in r.terms])
    return expand_in_y(r, degree_cap)


def check_alternation(
    K: FlagK,
    exp: Expansion,
    grading: Callable[[WeylElement], int],
    indices: tuple[str, ...] = (),
    variables: str = "minus",
    subtorus: SubtorusBasis | None = None,
    degree_cap: int | None = None,
    base_cap: int | None = None,
) -> list[Violation]:
    """Require (-1)^grading(w) * coefficient_w to lie in N[y] for every w."""
    if base_cap is None:
        base_cap = len(K.rs.positive_roots)
    bad = []
    for w, c in exp.items():
        key = indices + (w.label,)
        try:
            y = to_y(K, c, degree_cap, variables, subtorus, base_cap)
        except ValueError:
            bad.append(Violation(key, "coefficient is not in the root lattice", c))
            continue
        except NotInYRing as exc:
            bad.append(Violation(key, f"y-expansion does not terminate by degree {exc.cap}", c, residual=exc.residual))
            continue
        if grading(w) % 2:
            y = -y
        if not y.is_nonnegative():
            bad.append(Violation(key, "negative coefficient after grading sign", c, y_expansion=y))
    return bad


def _default_cap(K: FlagK, *elements: WeylElement) -> int:
    return sum(w.length for w in elements) + len(K.rs.positive_roots)


def _reconstruction(K: FlagK, exp: Expansion, target: KClass, key: tuple[str, ...]) -> list[Violation]:
    if K.reconstruct(exp) != target:
        return [Violation(key, f"expansion in {exp.basis} does not reproduce the product")]
    return []


def _pairs(K: FlagK, parabolic: Sequence[int], pairs) -> list[tuple[WeylElement, WeylElement]]:
    if pairs is not None:
        return list(pairs)
    reps = K.W.minimal_coset_reps(parabolic)
    return [(u, v) for u in reps for v in reps]


def _product_suite(
    K: FlagK,
    claim: str,
    tag: str,
    variables: str,
    signed: bool,
    parabolic: Sequence[int],
    pairs,
    degree_cap: int | None,
    fault: FaultHook | None,
    shadow: bool = False,
) -> PositivityReport:
    report = PositivityReport(claim, K.rs.name, tuple(sorted(parabolic)))
    inverse_canonical = KClass(tuple(p ** -1 for p in K.canonical_class().values))
    ptag = K.parabolic_tag(tag, parabolic)
    for u, v in _pairs(K, parabolic, pairs):
        key = (u.label, v.label)
        prod = K.basis_class(ptag, u) * K.basis_class(ptag, v)
        if tag == "dualizing":
            prod = prod * inverse_canonical
        try:
            exp = K.expand(prod, ptag)
        except InvariantViolation as exc:
            report.violations.append(Violation(key, str(exc)))
            report.instances_checked += 1
            continue
        if fault is not None:
            exp = fault((u, v), exp)
        report.instances_checked += max(1, len(exp.coefficients))
        report.violations += _reconstruction(K, exp, prod, key)

        def grading(w: WeylElement) -> int:
            return (w.length - u.length - v.length) if signed else 0

        base = _default_cap(K, u, v)
        report.violations += check_alternation(K, exp, grading, key, variables, None, degree_cap, base)
        if shadow:
            report.violations += check_nonequivariant(exp, grading, key)
    return report


def check_nonequivariant(exp: Expansion, grading: Callable[[WeylElement], int], indices=()) -> list[Violation]:
    """Specialize every coefficient at e^lam = 1; require sign (-1)^grading or zero."""
    bad = []
    for w, c in exp.items():
        k = c.specialize_at_one()
        if grading(w) % 2:
            k = -k
        if k < 0:
            bad.append(Violation(tuple(indices) + (w.label,), f"non-equivariant specialization {k} has the wrong sign", c))
    return bad


def verify_grra(
    K: FlagK,
    parabolic: Sequence[int] = (),
    pairs=None,
    degree_cap: int | None = None,
    fault: FaultHook | None = None,
    shadow: bool = True,
) -> PositivityReport:
    """(-1)^{l(w)-l(u)-l(v)} c_uv^w in N[e^{-a_i} - 1] for O^u O^v = sum c_uv^w O^w."""
    return _product_suite(K, "grra53", "O_upper", "minus", True, parabolic, pairs, degree_cap, fault, shadow)


def verify_grku_prime(
    K: FlagK,
    parabolic: Sequence[int] = (),
    pairs=None,
    degree_cap: int | None = None,
    fault: FaultHook | None = None,
) -> PositivityReport:
    """(-1)^{l(w)-l(u)-l(v)} p_uv^w in N[e^{-a_i} - 1] for xi^u xi^v = sum p_uv^w xi^w."""
    return _product_suite(K, "grku52", "xi_upper", "minus", True, parabolic, pairs, degree_cap, fault)


def verify_dualizing(
    K: FlagK,
    pairs=None,
    degree_cap: int | None = None,
    fault: FaultHook | None = None,
    cross_check: bool = True,
) -> PositivityReport:
    """d_uv^w in N[e^{a_i} - 1] for [w_{X^u}][w_{X^v}] = sum d_uv^w [w_{X^w}][w_{G/B}].

    With ``cross_check`` every d_uv^w is recomputed from the xi-basis constants
    through the line-bundle twist and compared.
    """
    report = _product_suite(K, "dualizing", "dualizing", "plus", False, (), pairs, degree_cap, fault)
    if cross_check:
        for u, v in _pairs(K, (), pairs):
            direct = K.structure_constants(u, v, "dualizing")
            if fault is not None:
                direct = fault((u, v), direct)
            via_xi = dualizing_from_xi(K, u, v)
            for w in K.W:
                if direct[w] != via_xi[w]:
                    report.violations.append(
                        Violation((u.label, v.label, w.label), "dualizing constant disagrees with the xi-basis route", direct[w])
                    )
    return report


def dualizing_from_xi(K: FlagK, u: WeylElement, v: WeylElement) -> Expansion:
    """d_uv^w = e^rho sum_x p_uv^x m_x^w, where L_rho xi^x = sum_w m_x^w xi^w."""
    rho = K.rs.rho()
    L = K.line_bundle_class(rho)
    p = K.structure_constants(u, v, "xi_upper")
    acc: dict[WeylElement, LaurentPoly] = {}
    memo = K.memo.setdefault("line_bundle_rho_on_xi", {})
    for x, px in p.items():
        m = memo.get(x)
        if m is None:
            m = memo[x] = K.expand(L * K.xi_class(x, "upper"), "xi_upper")
        for w, mxw in m.items():
            acc[w] = acc.get(w, K.zero_poly) + px * mxw
    coeffs = {w: c.shift(rho) for w, c in acc.items() if c}
    return Expansion("dualizing", coeffs, K.n)


def verify_grku_richardson(
    K: FlagK,
    v: WeylElement,
    w: WeylElement,
    basis: SubtorusBasis | None = None,
    degree_cap: int | None = None,
    exploratory: bool = False,
    fault: FaultHook | None = None,
) -> PositivityReport:
    """Richardson Y = X_v cap X^w: (-1)^{dim Y - l(u)} a_u in N[e^{-b_i} - 1] for [O_Y] = sum a_u O_u."""
    basis = basis or SubtorusBasis.identity(K.n)
    if basis.ncols != K.n:
        raise ValueError(f"subtorus matrix needs {K.n} columns, got {basis.ncols}")
    if not basis.is_positive() and not exploratory:
        raise ValueError("subtorus basis is not positive; pass exploratory=True to run anyway")
    if not K.W.bruhat_leq(w, v):
        raise ValueError(f"Richardson variety X_{v.label} cap X^{w.label} is empty")
    report = PositivityReport("grku51", K.rs.name, (), 0, [], exploratory=not basis.is_positive(), subtorus=basis)
    cls = K.richardson_class(v, w)
    exp = K.expand(cls, "O_lower")
    if fault is not None:
        exp = fault((v, w), exp)
    key = (v.label, w.label)
    report.instances_checked += max(1, len(exp.coefficients))
    report.violations += _reconstruction(K, exp, cls, key)
    dim = v.length - w.length
    base = _default_cap(K, v, w)
    report.violations += check_alternation(K, exp, lambda u: dim - u.length, key, "minus", basis, degree_cap, base)
    return report


def verify_richardson_family(
    K: FlagK,
    bases: Iterable[SubtorusBasis] | None = None,
    pairs=None,
    degree_cap: int | None = None,
    fault: FaultHook | None = None,
    claim: str = "richardson",
) -> PositivityReport:
    """Richardson check over every nonempty X_v cap X^w and every given subtorus basis."""
    bases = list(bases) if bases is not None else [SubtorusBasis.identity(K.n), SubtorusBasis.ones_row(K.n)]
    if pairs is None:
        pairs = [(v, w) for v in K.W for w in K.W if K.W.bruhat_leq(w, v)]
    else:
        pairs = [(v, w) for v, w in pairs if K.W.bruhat_leq(w, v)]
    report = PositivityReport(claim, K.rs.name)
    report.exploratory = any(not b.is_positive() for b in bases)
    if len(bases) == 1:
        report.subtorus = bases[0]
    for b in bases:
        for v, w in pairs:
            part = verify_grku_richardson(K, v, w, b, degree_cap, exploratory=True, fault=fault)
            if len(bases) > 1:
                for viol in part.violations:
                    viol.indices = viol.indices + ("M=" + json.dumps(b.to_json(), separators=(",", ":")),)
            report.merge(part)
    return report


def inject_term(exp: Expansion, w: WeylElement, term: LaurentPoly) -> Expansion:
    """Return a copy of ``exp`` with ``term`` added to the coefficient of ``w``."""
    return exp.with_coefficient(w, exp[w] + term)
