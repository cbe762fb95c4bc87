from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ktschubert.laurent import (
    LaurentPoly,
    NotDivisible,
    NotInYRing,
    YPolynomial,
    divide_exact,
    expand_in_y,
    restrict_to_subtorus,
    try_divide,
    weyl_act,
)


def lp(d):
    return LaurentPoly(d)


def polys(nvars, max_terms=4, span=3):
    exps = st.tuples(*[st.integers(-span, span)] * nvars)
    return st.dictionaries(exps, st.integers(-4, 4), max_size=max_terms).map(lambda d: LaurentPoly(d, nvars))


def test_arithmetic_examples():
    x = LaurentPoly.monomial((1, 0))
    y = LaurentPoly.monomial((0, 1))
    one = LaurentPoly.const(1, 2)
    assert (x + y) * (x - y) == x * x - y * y
    assert x ** -2 == LaurentPoly.monomial((-2, 0))
    assert (one - x) * 0 == LaurentPoly.zero(2)
    assert (one - x).shift((1, 1)) == y * x - y * x * x
    assert LaurentPoly.const(3, 2) == 3


def test_negative_power_of_non_monomial_rejected():
    with pytest.raises(ValueError):
        LaurentPoly({(1,): 1, (0,): 1}) ** -1


def test_divide_examples():
    one = LaurentPoly.const(1, 1)
    x = LaurentPoly.monomial((1,))
    assert divide_exact(one - x ** 3, one - x) == one + x + x * x
    assert divide_exact(x ** -1 - x, one - x) == x ** -1 + one
    with pytest.raises(NotDivisible) as err:
        divide_exact(one + x ** 3, one - x)
    assert err.value.remainder != LaurentPoly.zero(1)
    assert try_divide(one + x, one - x) is None
    with pytest.raises(ZeroDivisionError):
        divide_exact(one, LaurentPoly.zero(1))


@settings(max_examples=10_000, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(polys(n), polys(n))))
def test_multiply_then_divide_round_trip(pq):
    p, q = pq
    if q.is_zero():
        return
    assert divide_exact(p * q, q) == p


@settings(max_examples=300, deadline=None)
@given(polys(2), polys(2, max_terms=2))
def test_non_multiples_signal(p, q):
    # p*q + monomial far outside the Newton box of p*q is never a multiple of a binomial q
    if len(q.terms) < 2:
        return
    bump = LaurentPoly.monomial((50, 50))
    with pytest.raises(NotDivisible):
        divide_exact(p * q + bump, q)


def test_y_expansion_examples():
    # e^{-2b} = (1 + y)^2
    assert expand_in_y(LaurentPoly.monomial((-2,)), 4).terms == {(0,): 1, (1,): 2, (2,): 1}
    # 1 - e^{-b1 - b2} = -(y1 + y2 + y1 y2)
    p = LaurentPoly({(0, 0): 1, (-1, -1): -1})
    assert expand_in_y(p, 2).terms == {(1, 0): -1, (0, 1): -1, (1, 1): -1}


@pytest.mark.parametrize("k", range(0, 7))
def test_y_expansion_binomial_oracle(k):
    got = expand_in_y(LaurentPoly.monomial((-k, 0)), k)
    assert got.terms == {(j, 0): comb(k, j) for j in range(k + 1)}


@pytest.mark.parametrize("cap", [0, 1, 3, 6])
def test_y_expansion_truncated_series(cap):
    # e^{b} = 1 / (1 + y) = sum_k (-y)^k never terminates; the residual is +-e^{b}
    with pytest.raises(NotInYRing) as err:
        expand_in_y(LaurentPoly.monomial((1,)), cap)
    assert err.value.cap == cap
    assert err.value.residual == LaurentPoly.monomial((1,), (-1) ** (cap + 1))
    assert err.value.multi_index == (cap + 1,)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda n: st.dictionaries(st.tuples(*[st.integers(0, 3)] * n), st.integers(-5, 5), max_size=5).map(lambda d: (d, n))
))
def test_y_round_trip(dn):
    d, n = dn
    y = YPolynomial(d, n)
    assert expand_in_y(y.evaluate(), 3 * n) == y


def test_restrict_to_subtorus():
    p = LaurentPoly({(1, 0): 1, (0, 1): 2, (0, 0): -1})
    assert restrict_to_subtorus(p, [[1, 1]]) == LaurentPoly({(1,): 3, (0,): -1})
    assert restrict_to_subtorus(p, [[1, 0], [0, 1]]) == p
    assert restrict_to_subtorus(p, [[0, 0]]) == LaurentPoly.const(2, 1)
    with pytest.raises(ValueError):
        restrict_to_subtorus(p, [[1, 1, 1]])


def test_specialize_and_json():
    p = LaurentPoly({(1, -1): 3, (0, 2): -1})
    assert p.specialize_at_one() == 2
    assert LaurentPoly.from_json(p.to_json(), 2) == p


def test_weyl_act_on_characters():
    class Swap:
        def act(self, e):
            return (e[1], e[0])

    p = LaurentPoly({(1, 0): 1, (0, 0): -1})
    assert weyl_act(Swap(), p) == LaurentPoly({(0, 1): 1, (0, 0): -1})


@settings(max_examples=200, deadline=None)
@given(polys(2), polys(2), polys(2))
def test_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
