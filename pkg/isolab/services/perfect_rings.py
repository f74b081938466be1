"""
Perfect rings of characteristic p used as Witt-vector coefficients.

* :class:`FqElement` - the finite field F_q, q = p^s, as F_p[y]/(h).
* :class:`PerfectLaurentElement` - finite sums c_e X^e, e in Z[1/p], in the
  perfection of F_q[X] (or of F_q[X, X^-1] when ``laurent`` is set).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_gcdex, gf_mul, gf_mul_ground, gf_neg, gf_pow_mod, gf_rem

from isolab.errors import DivisionByZeroError, FieldMismatchError, InputError
from isolab.services.padic_core import INF, default_modulus, is_irreducible_mod_p


def is_p_power(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


def p_power_exponent(n: int, p: int) -> int:
    """k with n = p^k; InputError otherwise."""
    if not is_p_power(n, p):
        raise InputError(f"{n} is not a power of {p}")
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


# ---------------------------------------------------------------------------
# F_q
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidueField:
    """F_p[y]/(modulus) for a monic irreducible modulus (low to high)."""

    p: int
    modulus: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def order(self) -> int:
        return self.p ** self.degree

    def _dense_modulus(self) -> List[int]:
        return [c % self.p for c in reversed(self.modulus)]

    def element(self, coeffs: Iterable[int]) -> "FqElement":
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.degree:
            dense = gf_rem(_to_dense(coeffs), self._dense_modulus(), self.p, ZZ)
            coeffs = _from_dense(dense, self.degree)
        coeffs = coeffs + [0] * (self.degree - len(coeffs))
        return FqElement(self, tuple(coeffs))

    def zero(self) -> "FqElement":
        return self.element([])

    def one(self) -> "FqElement":
        return self.element([1])

    def generator(self) -> "FqElement":
        """Class of y (for s = 1, the root of the linear modulus)."""
        if self.degree == 1:
            return self.element([-self.modulus[0]])
        return self.element([0, 1])

    def elements(self) -> List["FqElement"]:
        out = []
        for index in range(self.order):
            coeffs, k = [], index
            for _ in range(self.degree):
                coeffs.append(k % self.p)
                k //= self.p
            out.append(self.element(coeffs))
        return out

    def random_element(self, rng: random.Random, nonzero: bool = False) -> "FqElement":
        while True:
            x = self.element([rng.randrange(self.p) for _ in range(self.degree)])
            if not (nonzero and x.is_zero()):
                return x


@lru_cache(maxsize=None)
def residue_field(p: int, s: int = 1, modulus: Optional[Tuple[int, ...]] = None) -> ResidueField:
    """F_{p^s}; the default modulus matches :func:`padic_core.default_modulus`."""
    modulus = tuple(modulus) if modulus is not None else default_modulus(p, s)
    if len(modulus) != s + 1 or modulus[-1] != 1 or not is_irreducible_mod_p(modulus, p):
        raise InputError(f"modulus {modulus} is not monic irreducible of degree {s} mod {p}")
    return ResidueField(p, modulus)


def _to_dense(coeffs_low_to_high) -> List[int]:
    dense = list(reversed(list(coeffs_low_to_high)))
    while dense and dense[0] == 0:
        dense.pop(0)
    return dense


def _from_dense(dense: List[int], length: int) -> List[int]:
    coeffs = [int(c) for c in reversed(dense)]
    return coeffs + [0] * (length - len(coeffs))


@dataclass(frozen=True)
class FqElement:
    field: ResidueField
    coeffs: Tuple[int, ...]

    @property
    def p(self) -> int:
        return self.field.p

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self == self.field.one()

    def _check(self, other) -> "FqElement":
        if isinstance(other, int):
            return self.field.element([other])
        if not isinstance(other, FqElement) or other.field != self.field:
            raise FieldMismatchError(f"cannot combine F_q element with {other!r}")
        return other

    def _dense(self) -> List[int]:
        return _to_dense(self.coeffs)

    def _wrap(self, dense) -> "FqElement":
        return FqElement(self.field, tuple(_from_dense(dense, self.field.degree)))

    def __add__(self, other):
        other = self._check(other)
        return self._wrap(gf_add(self._dense(), other._dense(), self.p, ZZ))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(gf_neg(self._dense(), self.p, ZZ))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        product = gf_mul(self._dense(), other._dense(), self.p, ZZ)
        return self._wrap(gf_rem(product, self.field._dense_modulus(), self.p, ZZ))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if self.is_zero():
            return self.field.one() if k == 0 else self
        return self._wrap(gf_pow_mod(self._dense(), k, self.field._dense_modulus(), self.p, ZZ))

    def inverse(self) -> "FqElement":
        if self.is_zero():
            raise DivisionByZeroError("inverse of 0 in F_q")
        modulus = self.field._dense_modulus()
        s, _, g = gf_gcdex(self._dense(), modulus, self.p, ZZ)
        if len(g) != 1:
            raise DivisionByZeroError("element shares a factor with the modulus")
        # gcd is a unit; scale so that s * self == 1
        s = gf_mul_ground(s, pow(int(g[0]), -1, self.p), self.p, ZZ)
        return self._wrap(gf_rem(s, modulus, self.p, ZZ))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def frobenius(self) -> "FqElement":
        return self ** self.p

    def pth_root(self) -> "FqElement":
        """Inverse Frobenius, i.e. sigma^(s-1)."""
        result = self
        for _ in range(self.field.degree - 1):
            result = result.frobenius()
        return result

    def __repr__(self) -> str:
        if self.field.degree == 1:
            return str(self.coeffs[0])
        terms = [f"{c}*g^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return "(" + (" + ".join(terms) or "0") + ")"


# ---------------------------------------------------------------------------
# perfected (Laurent) polynomial ring
# ---------------------------------------------------------------------------

Scalar = Union[int, FqElement]


class PerfectLaurentElement:
    """
    Finite sum of terms c_e X^e with e in Z[1/p] and c_e in F_q.

    ``terms`` is kept sorted by exponent with zero coefficients removed.
    Without ``laurent`` every exponent must be nonnegative.
    """

    __slots__ = ("field", "terms", "laurent")

    def __init__(self, field: ResidueField, terms: Union[Dict, Iterable] = (), laurent: bool = False):
        items = terms.items() if isinstance(terms, dict) else terms
        merged: Dict[Fraction, FqElement] = {}
        for exponent, coeff in items:
            exponent = Fraction(exponent)
            if not is_p_power(exponent.denominator, field.p):
                raise InputError(f"exponent {exponent} has a denominator that is not a power of {field.p}")
            if not laurent and exponent < 0:
                raise InputError(f"negative exponent {exponent} in a non-Laurent element")
            coeff = field.element([coeff]) if isinstance(coeff, int) else coeff
            if coeff.field != field:
                raise FieldMismatchError("coefficient from a different residue field")
            merged[exponent] = merged.get(exponent, field.zero()) + coeff
        ordered = tuple((e, c) for e, c in sorted(merged.items()) if not c.is_zero())
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", ordered)
        object.__setattr__(self, "laurent", bool(laurent))

    def __setattr__(self, key, value):
        raise AttributeError("perfect ring elements are immutable")

    # -- construction ------------------------------------------------------

    @classmethod
    def zero(cls, field: ResidueField, laurent: bool = False):
        return cls(field, (), laurent)

    @classmethod
    def constant(cls, field: ResidueField, c: Scalar, laurent: bool = False):
        return cls(field, [(0, c)], laurent)

    @classmethod
    def one(cls, field: ResidueField, laurent: bool = False):
        return cls.constant(field, 1, laurent)

    @classmethod
    def monomial(cls, field: ResidueField, exponent, coeff: Scalar = 1, laurent: bool = False):
        return cls(field, [(exponent, coeff)], laurent or Fraction(exponent) < 0)

    @classmethod
    def X(cls, field: ResidueField, laurent: bool = False):
        return cls.monomial(field, 1, 1, laurent)

    # -- views --------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponent) -> FqElement:
        exponent = Fraction(exponent)
        for e, c in self.terms:
            if e == exponent:
                return c
        return self.field.zero()

    def x_adic_valuation(self) -> Union[Fraction, float]:
        """Smallest exponent carrying a nonzero coefficient (INF for 0)."""
        return self.terms[0][0] if self.terms else INF

    def has_negative_exponents(self) -> bool:
        return bool(self.terms) and self.terms[0][0] < 0

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = PerfectLaurentElement.constant(self.field, other)
        if not isinstance(other, PerfectLaurentElement):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.field, self.terms))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(repr(c))
            else:
                parts.append(f"{c!r}*X^{e}" if not c.is_one() else f"X^{e}")
        return " + ".join(parts)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "PerfectLaurentElement":
        if isinstance(other, PerfectLaurentElement):
            if other.field != self.field:
                raise FieldMismatchError("perfect ring elements over different residue fields")
            return other
        if isinstance(other, (int, FqElement)):
            return PerfectLaurentElement.constant(self.field, other, self.laurent)
        raise FieldMismatchError(f"cannot combine perfect ring element with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return PerfectLaurentElement(self.field, list(self.terms) + list(other.terms),
                                     self.laurent or other.laurent)

    __radd__ = __add__

    def __neg__(self):
        return PerfectLaurentElement(self.field, [(e, -c) for e, c in self.terms], self.laurent)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        products = [(e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms]
        return PerfectLaurentElement(self.field, products, self.laurent or other.laurent)

    __rmul__ = __mul__

    def inverse(self) -> "PerfectLaurentElement":
        """Only monomials are units; the result is a Laurent element."""
        if not self.is_monomial():
            raise InputError("only monomials c*X^e are invertible")
        (e, c), = self.terms
        return PerfectLaurentElement(self.field, [(-e, c.inverse())], True)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        # a^k = prod (a^(p^i))^(d_i) over the base-p digits d_i of k
        result = PerfectLaurentElement.one(self.field, self.laurent)
        power = self
        while k:
            k, digit = divmod(k, self.p)
            for _ in range(digit):
                result = result * power
            if k:
                power = power.frobenius()
        return result

    def frobenius(self) -> "PerfectLaurentElement":
        """The p-power map, additive in characteristic p."""
        return PerfectLaurentElement(
            self.field, [(e * self.p, c.frobenius()) for e, c in self.terms], self.laurent
        )

    def pth_root(self) -> "PerfectLaurentElement":
        """Unique b with b^p = self."""
        return PerfectLaurentElement(
            self.field, [(e / self.p, c.pth_root()) for e, c in self.terms], self.laurent
        )

    def pth_root_iterated(self, k: int) -> "PerfectLaurentElement":
        result = self
        for _ in range(k):
            result = result.pth_root()
        return result


def pth_root(a: Union[FqElement, PerfectLaurentElement]):
    return a.pth_root()


def x_adic_valuation(a: PerfectLaurentElement):
    return a.x_adic_valuation()


def random_perfect_element(field: ResidueField, rng: random.Random, max_terms: int = 3,
                           max_den_pow: int = 2, max_exponent: int = 3,
                           laurent: bool = False) -> PerfectLaurentElement:
    """Random finite sum with exponents in (1/p^max_den_pow) Z."""
    den = field.p ** max_den_pow
    low = -max_exponent * den if laurent else 0
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        terms.append((Fraction(rng.randint(low, max_exponent * den), den), field.random_element(rng)))
    return PerfectLaurentElement(field, terms, laurent)
