# tests/test_seminorms.py

import random
from dataclasses import dataclass
from fractions import Fraction

import pytest

from isolab.errors import InputError
from isolab.services import seminorms as sn
from isolab.services.padic_core import INF, PadicScalar
from isolab.services.perfect_rings import PerfectLaurentElement, random_perfect_element, residue_field
from isolab.services.witt import WittVector, teichmuller, witt_from_integer


@dataclass(frozen=True)
class InvertedAbsolute(sn.PointEvaluator):
    """|x|_p^(-1): multiplicative but not ultrametric."""

    p: int
    kind = "inverted"

    def evaluate(self, x):
        if x == 0:
            return sn.SeminormValue(INF, self.p)
        return sn.SeminormValue(-Fraction(sn.valuation_of_rational(x, self.p)), self.p)


@dataclass(frozen=True)
class ChoppedAbsolute(sn.PointEvaluator):
    """|x|_p cut to 0 once v_p(x) >= 3: on Z a seminorm, not definite, not multiplicative."""

    p: int
    kind = "chopped"

    def evaluate(self, x):
        v = sn.valuation_of_rational(x, self.p) if x else INF
        return sn.SeminormValue(INF if v >= 3 else Fraction(v), self.p)


def _perfect(p):
    F = residue_field(p)
    return F, PerfectLaurentElement.X(F), PerfectLaurentElement.one(F)


def test_seminorm_value_json_and_bounds():
    value = sn.SeminormValue(Fraction(1, 2), 3)
    assert value.to_json(3) == {"neg_log": "1/2", "neg_log_p": "1/2", "base": "3", "exact": True, "bound": "exact"}
    assert "neg_log_p" not in value.to_json(2)
    assert sn.SeminormValue.zero(2).to_json(5)["neg_log_p"] == "inf"

    small = sn.SeminormValue(2, 2)
    big = sn.SeminormValue(1, 2)
    assert big.is_at_least(small) is True
    assert small.is_at_least(big) is False
    assert sn.SeminormValue(2, 2, sn.UPPER).is_at_least(small) is None
    with pytest.raises(InputError):
        sn.SeminormValue(1, 2, sn.UPPER) * sn.SeminormValue(1, 2, sn.LOWER)
    with pytest.raises(InputError):
        sn.SeminormValue(1, 2, "sideways")
    print("[TEST] Seminorm values passed.")


def test_padic_absolute_value():
    padic = sn.PadicAbsolute(2)
    assert padic.evaluate(12).neg_log == 2
    assert padic.evaluate(Fraction(1, 4)).neg_log == -2
    assert padic.evaluate(0).is_zero()
    vanished = padic.evaluate(PadicScalar.zero(2, 6))
    assert vanished.bound == sn.UPPER and vanished.neg_log == 6
    with pytest.raises(InputError):
        padic.evaluate("12")
    print("[TEST] p-adic absolute value passed.")


def test_comb_points():
    """
    n = p^a m goes to (1 - c)^a; c = 1 is |n mod p| and c = 0 trivial.
    """
    half = sn.CombPoint(3, Fraction(1, 2))
    value = half.evaluate(18)
    assert value.neg_log == 2 and value.base == 2
    assert half.plane_coordinates() == (Fraction(1, 6), Fraction(1, 18))

    residue = sn.CombPoint(3, 1)
    assert residue.evaluate(3).is_zero()
    assert residue.evaluate(2).neg_log == 0
    assert sn.CombPoint(3, 0).is_trivial()

    with pytest.raises(InputError):
        sn.CombPoint(3, 2)
    with pytest.raises(InputError):
        half.evaluate(Fraction(1, 2))
    print("[TEST] Comb points passed.")


def test_gauss_and_disc_points():
    gauss = sn.GaussNorm(sn.PadicAbsolute(2))
    assert gauss.evaluate([4, Fraction(1, 2), 8]).neg_log == -1
    assert gauss.to_json() == {"kind": "gauss", "base": {"kind": "padic", "p": 2}}

    at_one = sn.DiscPoint(2, 1, INF)
    assert at_one.evaluate([-1, 1]).is_zero()
    assert at_one.evaluate([1, 1]).neg_log == 1

    small_disc = sn.DiscPoint(2, 0, 1)
    assert small_disc.evaluate([0, 1]).neg_log == 1
    assert sn.DiscPoint(2, 5, 0).evaluate([1, 3, 1]).compare(gauss.evaluate([1, 3, 1])) == 0
    print("[TEST] Gauss and disc points passed.")


def test_x_adic_point():
    F, X, one = _perfect(2)
    assert sn.XAdicPoint(2).evaluate(X + X.pth_root()).neg_log == Fraction(1, 2)
    assert sn.XAdicPoint(2, 2).evaluate(X).neg_log == 2
    assert sn.XAdicPoint(2).evaluate(one).neg_log == 0
    with pytest.raises(InputError):
        sn.XAdicPoint(2, 0)
    print("[TEST] X-adic point passed.")


def test_lambda_reads_teichmuller_digits():
    """2[X] = (0, X^2, 0) in Witt coordinates has digits (0, X, 0)."""
    F, X, one = _perfect(2)
    w = 2 * teichmuller(X, 3)
    value = sn.lambda_map(sn.XAdicPoint(2), w)
    assert value.exact and value.neg_log == 2

    deep = sn.lambda_map(sn.XAdicPoint(2), 2 * teichmuller(X ** 4, 3))
    assert not deep.exact and deep.neg_log == 3

    with pytest.raises(InputError):
        sn.lambda_map(sn.PadicAbsolute(3), teichmuller(X, 2))
    print("[TEST] lambda on Teichmueller digits passed.")


def test_retraction_mu_after_lambda():
    """mu(lambda(alpha)) = alpha on sampled elements."""
    F, X, one = _perfect(3)
    alpha = sn.XAdicPoint(3)
    lifted = sn.WittPoint(3, "lambda", alpha)
    rng = random.Random(11)
    for _ in range(20):
        r = random_perfect_element(F, rng)
        lhs, rhs = sn.mu_map(lifted, r, 4), alpha.evaluate(r)
        if lhs.exact:
            assert lhs.compare(rhs) == 0
    assert sn.mu_map(lifted, X.pth_root_iterated(2), 4).neg_log == Fraction(1, 9)
    print("[TEST] Retraction passed.")


def test_specialization_point_values():
    F, X, one = _perfect(2)
    beta = sn.WittPoint(2, "x_to_p")
    value = sn.mu_map(beta, X, 3)
    assert value.exact and value.neg_log == 1
    assert beta.to_json() == {"kind": "witt", "p": 2, "mode": "x_to_p"}
    with pytest.raises(InputError):
        sn.WittPoint(2, "lambda")
    with pytest.raises(InputError):
        beta.evaluate(X)
    print("[TEST] Specialization point passed.")


def test_domination_and_strictness():
    """
    lambda(mu(beta)) >= beta everywhere, strictly on p[1] - [X].
    """
    p, n = 2, 3
    F, X, one = _perfect(p)
    beta = sn.WittPoint(p, "x_to_p")
    rng = random.Random(5)
    for _ in range(15):
        w = WittVector(p, [random_perfect_element(F, rng) for _ in range(n)])
        verdict = sn.lambda_map(sn.MuPoint(beta, n), w).is_at_least(beta.evaluate(w))
        assert verdict is not False

    w = witt_from_integer(p, one, n) - teichmuller(X, n)
    lhs = sn.lambda_map(sn.MuPoint(beta, n), w)
    rhs = beta.evaluate(w)
    assert lhs.exact and lhs.neg_log == 1
    assert not rhs.exact and rhs.neg_log == n
    print("[TEST] Domination and strictness passed.")


def test_vr_tilde():
    F, X, one = _perfect(2)
    assert sn.vr_tilde(teichmuller(X, 3), Fraction(1, 2)).neg_log == Fraction(1, 2)
    assert sn.vr_tilde(2 * teichmuller(X, 3), 1).neg_log == 2
    with pytest.raises(InputError):
        sn.vr_tilde(teichmuller(X, 3), 0)
    print("[TEST] v_r passed.")


def test_powers_and_omega():
    alpha = sn.XAdicPoint(2)
    assert sn.seminorm_power(alpha, 1) is alpha
    squared = sn.seminorm_power(alpha, 2)
    assert sn.seminorm_power(squared, 3).c == 6
    trivial = sn.TrivialNorm(2)
    assert sn.seminorm_power(trivial, 5) is trivial
    assert sn.omega_neg_log(2) == 2
    assert sn.log_omega(1, 3) == Fraction(2, 3)
    print("[TEST] Powers and omega passed.")


def test_axiom_checker():
    """Each of (a), (b), (b'), (c), (c') is reported on its own."""
    rationals = lambda r: Fraction(r.randint(-100, 100), r.randint(1, 50))
    padic = sn.check_seminorm_axioms(sn.PadicAbsolute(2), rationals, 100, 0)
    assert padic.ok and padic.is_norm
    assert all(padic.holds(axiom) for axiom in sn.AXIOMS)

    broken = sn.check_seminorm_axioms(InvertedAbsolute(2), rationals, 100, 0)
    assert broken.checked == 100
    assert not broken.ok and not broken.holds("a")
    assert broken.holds("b") and broken.holds("c'")

    integers = lambda r: r.randint(-100, 100)
    chopped = sn.check_seminorm_axioms(ChoppedAbsolute(2), integers, 100, 0)
    assert chopped.holds("a") and chopped.holds("b") and chopped.holds("c")
    assert not chopped.holds("b'") and not chopped.holds("c'")
    assert not chopped.ok

    F, X, one = _perfect(2)
    x_adic = sn.check_seminorm_axioms(sn.XAdicPoint(2), lambda r: random_perfect_element(F, r), 50, 1, one=one)
    assert x_adic.is_norm
    shifted = sn.check_seminorm_axioms(sn.XAdicPoint(2), lambda r: random_perfect_element(F, r), 10, 1, one=X)
    assert not shifted.holds("c") and not shifted.holds("c'")

    report = chopped.to_json()
    assert report["axioms"]["b'"] == {"name": "definite", "holds": False, "failures": len(chopped.failures["b'"])}
    with pytest.raises(InputError):
        chopped.holds("d")
    print("[TEST] Axiom checker passed.")


if __name__ == "__main__":
    test_seminorm_value_json_and_bounds()
    test_padic_absolute_value()
    test_comb_points()
    test_gauss_and_disc_points()
    test_x_adic_point()
    test_lambda_reads_teichmuller_digits()
    test_retraction_mu_after_lambda()
    test_specialization_point_values()
    test_domination_and_strictness()
    test_vr_tilde()
    test_powers_and_omega()
    test_axiom_checker()
