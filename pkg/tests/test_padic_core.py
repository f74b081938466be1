# tests/test_padic_core.py

from fractions import Fraction

import pytest

from isolab.errors import DivisionByZeroError, FieldMismatchError, InputError
from isolab.services.padic_core import (
    INF,
    CyclotomicElement,
    NewtonPolygon,
    PadicScalar,
    UnramifiedElement,
    cyclotomic_field,
    default_modulus,
    eisenstein_poly,
    newton_polygon_of,
    reduce_rational,
    unramified_field,
)


def test_reduce_rational_canonical_representative():
    """
    Units are inverted modulo p^N; values beyond the precision vanish.
    """
    assert reduce_rational(Fraction(1, 3), 2, 4) == 11
    assert reduce_rational(-1, 3, 2) == 8
    assert reduce_rational(Fraction(1, 2), 2, 3) == Fraction(1, 2)
    assert reduce_rational(32, 2, 5) == 0
    print("[TEST] reduce_rational passed.")


def test_scalar_valuation_and_unit():
    x = PadicScalar.from_rational(2, 12, 5)
    assert x.val == 2 and x.unit == 3
    assert PadicScalar.zero(2, 5).val == INF
    assert PadicScalar.from_rational(2, 64, 5).is_zero()
    print("[TEST] Scalar valuation passed.")


def test_scalar_arithmetic_tracks_precision():
    """
    Products gain the other factor's valuation in absolute precision;
    inverses keep relative precision.
    """
    two = PadicScalar.from_rational(2, 2, 5)
    four = PadicScalar.from_rational(2, 4, 5)
    product = two * four
    assert product.to_fraction() == 8
    assert product.prec == 6

    inv = two.inverse()
    assert inv.to_fraction() == Fraction(1, 2)
    assert inv.prec == 3

    three = PadicScalar.from_rational(2, 3, 5)
    assert three.inverse().to_fraction() == 11
    assert (three * three.inverse()).equals_at_precision(PadicScalar.one(2, 5))
    assert (three - 3).is_zero()
    print("[TEST] Scalar arithmetic passed.")


def test_scalar_errors():
    with pytest.raises(DivisionByZeroError):
        PadicScalar.zero(3, 4).inverse()
    with pytest.raises(ZeroDivisionError):
        PadicScalar.zero(3, 4).inverse()
    with pytest.raises(FieldMismatchError):
        PadicScalar.one(2, 5) + PadicScalar.one(3, 5)
    with pytest.raises(InputError):
        PadicScalar(1, 0, 1, 5)
    print("[TEST] Scalar errors passed.")


def test_default_modulus_is_smallest_irreducible():
    assert default_modulus(2, 1) == (0, 1)
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(3, 2) == (1, 0, 1)
    with pytest.raises(InputError):
        unramified_field(2, 2, (1, 0, 1))
    print("[TEST] Default modulus passed.")


def test_unramified_frobenius_on_q4():
    """
    In Q_4 = Q_2[y]/(y^2 + y + 1) the Frobenius swaps the two roots.
    """
    field = unramified_field(2, 2)
    y = UnramifiedElement.generator(field, 10)
    sigma_y = y.frobenius()
    assert sigma_y.equals_at_precision(UnramifiedElement(field, [-1, -1], 10))
    assert y.frobenius(2).equals_at_precision(y)

    a = UnramifiedElement(field, [3, 5], 10)
    b = UnramifiedElement(field, [1, 6], 10)
    assert (a * b).frobenius().equals_at_precision(a.frobenius() * b.frobenius())
    print("[TEST] Unramified Frobenius passed.")


def test_unramified_inverse():
    field = unramified_field(3, 2)
    a = UnramifiedElement(field, [1, 2], 8)
    assert (a * a.inverse()).equals_at_precision(UnramifiedElement.one(field, 6))
    with pytest.raises(DivisionByZeroError):
        UnramifiedElement.zero(field, 8).inverse()
    print("[TEST] Unramified inverse passed.")


def test_eisenstein_polynomials():
    assert eisenstein_poly(2, 1) == (2, 1)
    assert eisenstein_poly(3, 1) == (3, 3, 1)
    assert eisenstein_poly(2, 2) == (2, 2, 1)
    with pytest.raises(InputError):
        eisenstein_poly(2, 0)
    print("[TEST] Eisenstein polynomials passed.")


def test_cyclotomic_uniformizer_and_galois():
    """
    x = eps - 1 has valuation 1/(p-1)p^(n-1); gamma acts by eps -> eps^gamma.
    """
    field = cyclotomic_field(2, 2)
    x = CyclotomicElement(field, [0, 1], 10)
    assert x.valuation() == Fraction(1, 2)

    field3 = cyclotomic_field(3, 1)
    eps = CyclotomicElement.epsilon(field3, 10)
    assert eps.galois(2).equals_at_precision(eps ** 2)
    with pytest.raises(InputError):
        eps.galois(3)
    print("[TEST] Cyclotomic Galois action passed.")


def test_cyclotomic_embedding():
    """eps_1 = eps_2^p, and eps_1 = -1 when p = 2."""
    eps1 = CyclotomicElement.epsilon(cyclotomic_field(2, 1), 10)
    embedded = eps1.embed(2)
    assert (embedded + 1).is_zero()
    with pytest.raises(InputError):
        CyclotomicElement.epsilon(cyclotomic_field(2, 2), 10).embed(1)
    print("[TEST] Cyclotomic embedding passed.")


def test_newton_polygon_of_polynomial():
    """
    Collinear points are dropped; root valuations are minus the slopes.
    """
    poly = newton_polygon_of([2, 1, 0])
    assert poly.vertices == ((0, Fraction(2)), (2, Fraction(0)))
    assert poly.root_valuations() == [1, 1]

    eisenstein = newton_polygon_of([1, INF, 0])
    assert eisenstein.slopes() == [Fraction(-1, 2), Fraction(-1, 2)]
    with pytest.raises(InputError):
        newton_polygon_of([0, INF])
    with pytest.raises(InputError):
        newton_polygon_of([INF, INF])
    print("[TEST] Newton polygon of a polynomial passed.")


def test_newton_polygon_skips_zero_roots():
    """T (T^2 - p): the factor T is dropped and the hull starts at the first finite point."""
    polygon = newton_polygon_of([INF, 1, INF, 0])
    assert polygon.vertices == ((0, Fraction(1)), (2, Fraction(0)))
    assert polygon.root_valuations() == [Fraction(1, 2), Fraction(1, 2)]

    monomial = newton_polygon_of([INF, INF, 3])
    assert monomial.vertices == ((0, Fraction(3)),)
    assert monomial.slopes() == []
    print("[TEST] Newton polygon with zero roots passed.")


def test_polygon_from_slopes_and_comparison():
    poly = NewtonPolygon.from_slopes([1, 0, Fraction(1, 2)])
    assert poly.vertices == (
        (0, Fraction(0)),
        (1, Fraction(0)),
        (2, Fraction(1, 2)),
        (3, Fraction(3, 2)),
    )

    hodge = NewtonPolygon.from_slopes([0, 1])
    newton = NewtonPolygon.from_slopes([Fraction(1, 2), Fraction(1, 2)])
    assert hodge.lies_on_or_below(newton)
    assert not newton.lies_on_or_below(hodge)
    assert newton.value_at(1) == Fraction(1, 2)
    with pytest.raises(InputError):
        NewtonPolygon(((1, Fraction(0)),))
    print("[TEST] Polygon comparison passed.")


if __name__ == "__main__":
    test_reduce_rational_canonical_representative()
    test_scalar_valuation_and_unit()
    test_scalar_arithmetic_tracks_precision()
    test_scalar_errors()
    test_default_modulus_is_smallest_irreducible()
    test_unramified_frobenius_on_q4()
    test_unramified_inverse()
    test_eisenstein_polynomials()
    test_cyclotomic_uniformizer_and_galois()
    test_cyclotomic_embedding()
    test_newton_polygon_of_polynomial()
    test_newton_polygon_skips_zero_roots()
    test_polygon_from_slopes_and_comparison()
