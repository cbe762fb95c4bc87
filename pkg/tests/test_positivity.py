import json

import pytest

from conftest import elt, engine
from ktschubert.laurent import LaurentPoly, NotInYRing
from ktschubert.positivity import (
    PositivityReport,
    SubtorusBasis,
    check_alternation,
    check_nonequivariant,
    inject_term,
    to_y,
    verify_dualizing,
    verify_grku_prime,
    verify_grku_richardson,
    verify_grra,
    verify_richardson_family,
)


def test_to_y_a1():
    K = engine("A", 1)
    c = K.structure_constants(K.W[1], K.W[1], "O_upper")[K.W[1]]
    # 1 - e^{-alpha} = -y
    assert to_y(K, c, None).terms == {(1,): -1}
    # 1 - e^{-alpha} = y'/(1 + y') is not a polynomial in y' = e^{alpha} - 1
    with pytest.raises(NotInYRing):
        to_y(K, c, 6, "plus")
    with pytest.raises(ValueError):
        to_y(K, LaurentPoly.monomial((1,)), None)  # omega is off the root lattice


def test_to_y_plus_variables():
    K = engine("A", 1)
    # e^{alpha} - 1 is y' for the plus variables
    assert to_y(K, LaurentPoly({(2,): 1, (0,): -1}), None, "plus").terms == {(1,): 1}


def test_to_y_subtorus():
    K = engine("A", 2)
    c = LaurentPoly({(0, 0): 1, (-1, -1): -1})  # 1 - e^{-a1 - a2}
    assert to_y(K, c, None, subtorus=SubtorusBasis.ones_row(2)).terms == {(1,): -2, (2,): -1}


def test_subtorus_basis_flags():
    assert SubtorusBasis.identity(3).is_full()
    assert SubtorusBasis.ones_row(3).is_full()
    assert SubtorusBasis(((1, 2),)).is_full()
    assert not SubtorusBasis(((2, 3),)).is_full()
    assert SubtorusBasis(((2, 3),)).is_positive()
    assert not SubtorusBasis(((1, -1),)).is_positive()
    assert SubtorusBasis.trivial(2).rank == 1


@pytest.mark.parametrize("tn", [("A", 1), ("A", 2), ("B", 2)])
def test_suites_pass(tn):
    K = engine(*tn)
    assert verify_grra(K).passed
    assert verify_grku_prime(K).passed
    assert verify_dualizing(K).passed
    assert verify_richardson_family(K).passed


def test_grku52_fails_with_the_small_degree_cap():
    # -e^{-2 a1 - 2 a2} = -(1 + y1)^2 (1 + y2)^2 needs degree 4 > l(e) + l(e) + |R+| = 3
    K = engine("A", 2)
    e = K.W.identity
    assert verify_grku_prime(K, pairs=[(e, e)]).passed
    rep = verify_grku_prime(K, pairs=[(e, e)], degree_cap=3)
    assert not rep.passed
    assert "does not terminate" in rep.violations[0].reason


def test_alternation_detects_wrong_sign():
    K = engine("A", 2)
    s1 = elt(K, "1")
    exp = K.structure_constants(s1, s1, "O_upper")
    assert not check_alternation(K, exp, lambda w: w.length - 2)
    bad = check_alternation(K, exp, lambda w: w.length - 1)
    assert bad and bad[0].y_expansion is not None


def test_nonequivariant_shadow():
    K = engine("A", 2)
    s1, s2 = elt(K, "1"), elt(K, "2")
    exp = K.structure_constants(s1, s2, "O_upper")
    assert not check_nonequivariant(exp, lambda w: w.length - 2)
    assert check_nonequivariant(exp, lambda w: 0)


def test_fault_injection_is_detected():
    K = engine("A", 2)
    s1 = elt(K, "1")

    def fault(key, exp):
        return inject_term(exp, K.W.longest, K.char(K.rs.simple_roots[0]))

    for verify in (verify_grra, verify_grku_prime):
        assert not verify(K, pairs=[(s1, s1)], fault=fault).passed
    assert not verify_dualizing(K, pairs=[(s1, s1)], fault=fault).passed
    assert not verify_grku_richardson(K, K.W.longest, s1, fault=fault).passed


def test_richardson_preconditions():
    K = engine("A", 2)
    s1, s2 = elt(K, "1"), elt(K, "2")
    with pytest.raises(ValueError):
        verify_grku_richardson(K, s1, s2)
    with pytest.raises(ValueError):
        verify_grku_richardson(K, K.W.longest, s1, SubtorusBasis(((1, -1),)))
    rep = verify_grku_richardson(K, K.W.longest, s1, SubtorusBasis(((1, -1),)), exploratory=True)
    assert rep.exploratory


def test_richardson_point_class():
    # X_w cap X^w is the single point wB
    K = engine("A", 2)
    w = elt(K, "12")
    exp = K.expand(K.richardson_class(w, w), "O_lower")
    assert K.reconstruct(exp) == K.richardson_class(w, w)
    assert verify_grku_richardson(K, w, w).passed


def test_parabolic_grku52_uses_pulled_back_classes():
    K = engine("A", 3)
    assert verify_grku_prime(K, parabolic=[0, 2]).passed
    assert verify_grra(K, parabolic=[0, 2]).passed


def test_report_json():
    K = engine("A", 1)
    rep = verify_grra(K, parabolic=[])
    data = json.loads(rep.dumps())
    assert data["claim"] == "grra53" and data["status"] == "pass" and data["group"] == "A1"
    merged = PositivityReport("grra53", "A1").merge(rep)
    assert merged.instances_checked == rep.instances_checked
