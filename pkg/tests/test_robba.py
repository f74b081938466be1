# tests/test_robba.py

from fractions import Fraction

import pytest

from isolab.errors import InputError, PrecisionError
from isolab.services import robba
from isolab.services.constants import FILTRATION_PRESETS, ISOCRYSTAL_PRESETS
from isolab.services.isocrystal import FilteredIsocrystal, Isocrystal, twist
from isolab.services.padic_core import INF, CompositumField, CyclotomicElement, UnramifiedElement, unramified_field


def _filtered(name, p=2, prec=10):
    iso_name, hodge, flags = FILTRATION_PRESETS[name]
    iso = Isocrystal.from_rationals(p, ISOCRYSTAL_PRESETS[iso_name](p), 1, prec)
    return FilteredIsocrystal.from_flags(iso, hodge, flags)


def test_integer_helpers():
    assert robba.ceil_log(1, 2) == 0
    assert robba.ceil_log(5, 2) == 3
    assert robba.ceil_log(9, 3) == 2
    assert robba.factorial_valuation(10, 2) == 8
    assert robba.factorial_valuation(9, 3) == 4
    with pytest.raises(InputError):
        robba.ceil_log(0, 2)
    print("[TEST] Integer helpers passed.")


def test_t_element_and_window():
    field = unramified_field(2)
    t = robba.t_element(field, 4, 1, 10)
    assert t.lo == 1 and t.hi == 4
    assert t.coefficient(2).equals_at_precision(UnramifiedElement(field, [Fraction(-1, 2)], 10))
    with pytest.raises(PrecisionError):
        t.coefficient(5)
    with pytest.raises(InputError):
        robba.t_element(field, 0)
    print("[TEST] t element passed.")


def test_v_r_of_polynomials():
    """v_r(f) = min (v_p(a_i) + i r), exact for Laurent polynomials."""
    field = unramified_field(3)
    f = robba.RobbaElement.from_dict(field, {0: 9, 1: 3, 2: 1}, 1, 10)
    value = f.v_r()
    assert value.exact and value.neg_log == 2
    assert f.v_r(Fraction(1, 2)).neg_log == 1
    with pytest.raises(InputError):
        f.v_r(2)
    print("[TEST] v_r passed.")


def test_phi_of_t_is_p_t():
    for p in (2, 3):
        field = unramified_field(p)
        t = robba.t_element(field, 6, 1, 12)
        phi_t = robba.phi_act(t)
        assert phi_t.r == Fraction(1, p)
        for i in range(1, phi_t.hi + 1):
            assert (phi_t.coefficient(i) - t.coefficient(i) * p).is_zero(), (p, i)
        assert robba.phi_t_ratio_valuation(p) == 1
    print("[TEST] phi(t) = p t passed.")


def test_gamma_on_pi():
    """gamma(pi) = (1 + pi)^gamma - 1 starts with gamma pi."""
    field = unramified_field(2)
    pi = robba.RobbaElement.pi(field, 1, 10)
    image = robba.gamma_act(pi, 3)
    assert image.coefficient(0).is_zero()
    assert image.coefficient(1).equals_at_precision(UnramifiedElement(field, [3], 10))
    assert robba.gamma_act(pi, 1) is pi
    with pytest.raises(InputError):
        robba.gamma_act(pi, 4)
    print("[TEST] Gamma on pi passed.")


def test_theta_of_pi_and_t():
    """
    theta_n(pi) = (eps_n - 1) + eps_n (exp(t) - 1) and theta_n(t) = t.
    """
    field = unramified_field(2)
    series = robba.theta_n(robba.RobbaElement.pi(field, 1, 10), 1, 3)
    F = series.field
    assert series.coeffs[0].equals_at_precision(CyclotomicElement(F, [-2], 10))
    assert series.coeffs[1].equals_at_precision(CyclotomicElement(F, [-1], 10))
    assert series.coeffs[2].equals_at_precision(CyclotomicElement(F, [Fraction(-1, 2)], 10))

    t = robba.t_element(field, 10, 1, 14)
    theta_t = robba.theta_n(t, 1, 2)
    assert theta_t.equals_at_precision(robba.TSeries.t(theta_t.field, 2, 14))
    print("[TEST] theta_n passed.")


def test_theta_rejects_unsupported_inputs():
    with pytest.raises(InputError):
        robba.theta_n(robba.RobbaElement.pi(unramified_field(2), 1, 10), 0, 2)
    narrow = robba.RobbaElement.pi(unramified_field(3), Fraction(1, 4), 10)
    with pytest.raises(InputError):
        robba.theta_n(narrow, 1, 2)
    print("[TEST] theta_n input checks passed.")


def test_commutative_diagrams():
    for p in (2, 3):
        field = unramified_field(p)
        f = robba.RobbaElement.from_dict(field, {0: 1, 1: 2, 2: 1, 3: 5}, 1, 10)
        assert robba.base_change_diagram_check(f, 1, 4).ok
        assert robba.theta_gamma_check(f, 1, 3, p + 1 if p == 2 else 2).ok
        assert robba.phi_gamma_commutation_check(f, 5 if p == 2 else 4).ok
    print("[TEST] Commutative diagrams passed.")


def test_v_r_is_multiplicative():
    """v_r(fg) = v_r(f) + v_r(g) on polynomials, at the radius and inside it."""
    field = unramified_field(3)
    f = robba.RobbaElement.from_dict(field, {0: 3, 1: 1}, 1, 10)
    g = robba.RobbaElement.from_dict(field, {0: 9, 2: 1}, 1, 10)
    for s in (Fraction(1), Fraction(1, 2), Fraction(1, 3)):
        product = (f * g).v_r(s)
        assert product.exact
        assert product.neg_log == f.v_r(s).neg_log + g.v_r(s).neg_log, s
    print("[TEST] v_r multiplicativity passed.")


def test_gamma_actions_compose():
    """gamma_1(gamma_2 f) = (gamma_1 gamma_2) f on the common window."""
    for p, g1, g2 in ((2, 3, 5), (3, 2, 4)):
        field = unramified_field(p)
        f = robba.RobbaElement.from_dict(field, {0: 1, 1: 2, 3: 1}, 1, 10)
        twice = robba.gamma_act(robba.gamma_act(f, g2), g1)
        once = robba.gamma_act(f, g1 * g2)
        assert twice.equals_at_precision(once), p
    print("[TEST] Gamma composition passed.")


def test_theta_is_multiplicative():
    for p in (2, 3):
        field = unramified_field(p)
        f = robba.RobbaElement.from_dict(field, {0: 1, 1: 2, 2: 1}, 1, 12)
        g = robba.RobbaElement.from_dict(field, {0: 3, 1: 1}, 1, 12)
        together = robba.theta_n(f * g, 1, 3)
        apart = robba.theta_n(f, 1, 3) * robba.theta_n(g, 1, 3)
        assert together.equals_at_precision(apart), p
    print("[TEST] theta_n multiplicativity passed.")


def test_base_change_of_t_keeps_its_tail():
    """phi(t) = p t has an unknown tail, and theta_2(phi t) still comes out as p t."""
    for p in (2, 3):
        field = unramified_field(p)
        t = robba.t_element(field, 40, 1, 14)
        image = robba.phi_act(t)
        assert image.tail is not None and image.tail.frobenius is not None
        lhs = robba.theta_n(image, 2, 8)
        assert lhs.equals_at_precision(robba.TSeries.t(lhs.field, 8, 14).scale_t(p)), p
        assert robba.base_change_diagram_check(t, 1, 8).ok
    print("[TEST] Base change of t passed.")


def test_diagrams_with_negative_powers():
    for p in (2, 3):
        field = unramified_field(p)
        f = robba.RobbaElement.from_dict(field, {-1: 1, 0: 1, 2: 3}, 1, 20)
        image = robba.phi_act(f)
        assert image.lo < -p
        assert image.r == Fraction(1, p)
        assert not robba.theta_n(image, 2, 3).coeffs[0].is_zero()
        assert robba.base_change_diagram_check(f, 1, 3).ok
        assert robba.theta_gamma_check(f, 1, 3, 3 if p == 2 else 2).ok
        assert robba.phi_gamma_commutation_check(f, 5 if p == 2 else 4).ok
    print("[TEST] Negative powers passed.")


def test_base_change_over_unramified_coefficients():
    """Over Q_{p^2} the bottom arrow applies sigma to the coefficients."""
    field = unramified_field(2, 2)
    assert robba.base_change_diagram_check(robba.RobbaElement.from_dict(field, {0: 1, 1: 1}, 1, 10), 1, 3).ok

    f = robba.RobbaElement.from_dict(field, {0: [0, 1], 1: 1}, 1, 10)
    assert robba.base_change_diagram_check(f, 1, 3).ok
    lhs = robba.theta_n(robba.phi_act(f), 2, 3)
    assert isinstance(lhs.field, CompositumField)
    without_sigma = robba.theta_n(f, 1, 3).embed(2).scale_t(2)
    assert lhs.residual(without_sigma) != INF
    print("[TEST] Base change over Q_4 passed.")


def test_diagram_check_json():
    check = robba.DiagramCheck("base_change", True, float("inf"), {"n": 1})
    assert check.to_json() == {"test": "base_change", "status": "pass", "residual": "inf", "n": 1}
    print("[TEST] Diagram check JSON passed.")


def test_local_modification_determinant():
    """det P has t-adic valuation -t_H."""
    FD = _filtered("ord2-generic")
    mod = robba.local_modification(FD)
    assert mod.det_t_valuation == -1
    assert len(mod.matrix) == 2
    print("[TEST] Local modification passed.")


def test_modification_follows_the_flag_across_levels():
    """
    At level n the flag is phi^n(Fil): for ord2-generic the line (1, 1)
    becomes (1, 2^n), so the projector changes while det stays t^-t_H.
    """
    FD = _filtered("ord2-generic")
    field = FD.iso.field
    first, second = robba.local_modification(FD, 1), robba.local_modification(FD, 2)
    assert (first.level, second.level) == (1, 2)
    assert first.det_t_valuation == second.det_t_valuation == -1
    assert first.matrix[0][1].terms[-1].equals_at_precision(UnramifiedElement(field, [Fraction(1, 2)], 10))
    assert second.matrix[0][1].terms[-1].equals_at_precision(UnramifiedElement(field, [Fraction(1, 4)], 10))
    assert not (first.matrix[0][1] - second.matrix[0][1]).is_zero()
    assert first.det_leading.valuation() == 0
    with pytest.raises(InputError):
        robba.level_basis(FD, 0)
    print("[TEST] Modification across levels passed.")


def test_degree_identity():
    """deg of the modified module equals t_N - t_H, admissible or not."""
    assert robba.berger_degree(_filtered("ord2-generic")).degree == 0
    assert robba.berger_degree(_filtered("ord2-special")).degree == 0
    shifted = twist(_filtered("ss2-line"), 0, 1)
    result = robba.berger_degree(shifted, sweep=True)
    assert result.degree == -2
    assert result.det_t_valuations == {1: -3, 2: -3, 3: -3}
    print("[TEST] Degree identity passed.")


if __name__ == "__main__":
    test_integer_helpers()
    test_t_element_and_window()
    test_v_r_of_polynomials()
    test_phi_of_t_is_p_t()
    test_gamma_on_pi()
    test_theta_of_pi_and_t()
    test_theta_rejects_unsupported_inputs()
    test_commutative_diagrams()
    test_v_r_is_multiplicative()
    test_gamma_actions_compose()
    test_theta_is_multiplicative()
    test_base_change_of_t_keeps_its_tail()
    test_diagrams_with_negative_powers()
    test_base_change_over_unramified_coefficients()
    test_diagram_check_json()
    test_local_modification_determinant()
    test_modification_follows_the_flag_across_levels()
    test_degree_identity()
