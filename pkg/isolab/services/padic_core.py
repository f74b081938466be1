"""
Finite-precision arithmetic for Q_p, unramified extensions Q_{p^s} and the
cyclotomic fields Q_p(eps_n), plus Newton polygons of polynomials.

Every element carries an absolute precision N: it stands for any value
congruent to its representative modulo p^N (coefficientwise for extension
elements). Representatives are exact :class:`fractions.Fraction` objects whose
denominators are powers of p, so all arithmetic is exact on representatives
and only the precision bookkeeping is pessimistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Poly, QQ, Symbol
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from isolab.errors import DivisionByZeroError, FieldMismatchError, InputError, PrecisionError

INF = float("inf")

Valuation = Union[int, Fraction, float]
RationalLike = Union[int, Fraction]

_X = Symbol("X")


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def valuation_of_int(n: int, p: int) -> Union[int, float]:
    """p-adic valuation of an integer (INF for 0)."""
    if n == 0:
        return INF
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation_of_rational(x: RationalLike, p: int) -> Union[int, float]:
    """p-adic valuation of a rational number (INF for 0)."""
    x = Fraction(x)
    if x == 0:
        return INF
    return valuation_of_int(x.numerator, p) - valuation_of_int(x.denominator, p)


def reduce_rational(x: RationalLike, p: int, prec: int) -> Fraction:
    """
    Canonical representative of x modulo p^prec.

    The result is p^v * u with 0 < u < p^(prec - v) prime to p, or 0 when
    v >= prec. Denominators prime to p are inverted modulo p^(prec - v).
    """
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    v = valuation_of_rational(x, p)
    if v >= prec:
        return Fraction(0)
    num, den = x.numerator, x.denominator
    if v >= 0:
        num //= p ** v
    else:
        den //= p ** (-v)
    modulus = p ** (prec - v)
    unit = (num * pow(den, -1, modulus)) % modulus
    return Fraction(unit) * Fraction(p) ** v


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    # sympy Rational / Integer
    return Fraction(int(c.p), int(c.q))


# ---------------------------------------------------------------------------
# Q_p scalars
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PadicScalar:
    """
    An element u * p^val of Q_p known modulo p^prec.

    ``val`` is INF for the zero-at-precision element, in which case ``unit``
    is 0.
    """

    p: int
    val: Union[int, float]
    unit: int
    prec: int

    # -- construction ------------------------------------------------------

    @classmethod
    def from_rational(cls, p: int, x: RationalLike, prec: int) -> "PadicScalar":
        rep = reduce_rational(x, p, prec)
        if rep == 0:
            return cls(p, INF, 0, prec)
        v = valuation_of_rational(rep, p)
        unit = rep / Fraction(p) ** v
        return cls(p, v, int(unit), prec)

    @classmethod
    def zero(cls, p: int, prec: int) -> "PadicScalar":
        return cls(p, INF, 0, prec)

    @classmethod
    def one(cls, p: int, prec: int) -> "PadicScalar":
        return cls.from_rational(p, 1, prec)

    def __post_init__(self):
        if self.p < 2:
            raise InputError(f"prime must be >= 2, got {self.p}")

    # -- views --------------------------------------------------------------

    def to_fraction(self) -> Fraction:
        if self.val == INF:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def valuation(self) -> Union[int, float]:
        return self.val

    def is_zero(self) -> bool:
        return self.val == INF

    def equals_at_precision(self, other) -> bool:
        return (self - other).is_zero()

    def __repr__(self) -> str:
        if self.is_zero():
            return f"O({self.p}^{self.prec})"
        return f"{self.to_fraction()} + O({self.p}^{self.prec})"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "PadicScalar":
        if isinstance(other, PadicScalar):
            if other.p != self.p:
                raise FieldMismatchError(f"mixed primes {self.p} and {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            return PadicScalar.from_rational(self.p, other, self.prec)
        raise FieldMismatchError(f"cannot combine PadicScalar with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        prec = min(self.prec, other.prec)
        return PadicScalar.from_rational(self.p, self.to_fraction() + other.to_fraction(), prec)

    __radd__ = __add__

    def __neg__(self):
        return PadicScalar.from_rational(self.p, -self.to_fraction(), self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        prec = _product_precision(self.prec, self.val, other.prec, other.val)
        return PadicScalar.from_rational(self.p, self.to_fraction() * other.to_fraction(), prec)

    __rmul__ = __mul__

    def inverse(self) -> "PadicScalar":
        """Inverse; keeps the relative precision (prec - val)."""
        if self.is_zero():
            raise DivisionByZeroError(f"inverse of zero at precision p^{self.prec}")
        prec = self.prec - 2 * self.val
        return PadicScalar.from_rational(self.p, 1 / self.to_fraction(), prec)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        return _power(self, k, PadicScalar.one(self.p, self.prec))


def _product_precision(prec_a, val_a, prec_b, val_b) -> int:
    if val_a == INF and val_b == INF:
        return prec_a + prec_b
    return int(min(prec_a + val_b, prec_b + val_a))


def _power(x, k: int, one):
    if k < 0:
        return _power(x.inverse(), -k, one)
    result = one
    base = x
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


# ---------------------------------------------------------------------------
# extension fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionField:
    """
    Descriptor of Q_p[X]/(modulus) for a monic integer modulus (low to high).

    ``kind`` is ``"unramified"`` (modulus irreducible mod p) or
    ``"cyclotomic"`` (modulus the Eisenstein polynomial of eps_n - 1).
    """

    p: int
    modulus: Tuple[int, ...]
    kind: str
    level: int = 0

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def ramification(self) -> int:
        return self.degree if self.kind == "cyclotomic" else 1


def _gf_dense(coeffs_low_to_high: Sequence[int], p: int) -> List[int]:
    dense = [c % p for c in reversed(coeffs_low_to_high)]
    while dense and dense[0] == 0:
        dense.pop(0)
    return dense


def is_irreducible_mod_p(modulus: Sequence[int], p: int) -> bool:
    dense = _gf_dense(modulus, p)
    if len(dense) != len(modulus):
        return False
    return bool(gf_irreducible_p(dense, p, ZZ))


@lru_cache(maxsize=None)
def default_modulus(p: int, s: int) -> Tuple[int, ...]:
    """Smallest monic irreducible polynomial of degree s over F_p (low to high)."""
    if s < 1:
        raise InputError(f"degree must be >= 1, got {s}")
    for index in range(p ** s):
        coeffs = []
        k = index
        for _ in range(s):
            coeffs.append(k % p)
            k //= p
        candidate = tuple(coeffs) + (1,)
        if is_irreducible_mod_p(candidate, p):
            return candidate
    raise InputError(f"no irreducible polynomial of degree {s} mod {p}")  # unreachable


@lru_cache(maxsize=None)
def unramified_field(p: int, s: int = 1, modulus: Optional[Tuple[int, ...]] = None) -> ExtensionField:
    """Q_{p^s} presented by ``modulus`` (default: smallest irreducible mod p)."""
    modulus = tuple(modulus) if modulus is not None else default_modulus(p, s)
    if len(modulus) != s + 1 or modulus[-1] != 1:
        raise InputError(f"modulus {modulus} is not monic of degree {s}")
    if not is_irreducible_mod_p(modulus, p):
        raise InputError(f"modulus {modulus} is not irreducible mod {p}")
    return ExtensionField(p, modulus, "unramified")


@lru_cache(maxsize=None)
def cyclotomic_field(p: int, n: int) -> ExtensionField:
    """Q_p(eps_n) presented by the Eisenstein polynomial of x = eps_n - 1."""
    return ExtensionField(p, eisenstein_poly(p, n), "cyclotomic", n)


def eisenstein_poly(p: int, n: int) -> Tuple[int, ...]:
    """
    ((1+X)^(p^n) - 1) / ((1+X)^(p^(n-1)) - 1), low to high.

    The quotient equals sum_{k<p} (1+X)^(k p^(n-1)).
    """
    if n < 1:
        raise InputError(f"cyclotomic level must be >= 1, got {n}")
    step = p ** (n - 1)
    degree = step * (p - 1)
    coeffs = [0] * (degree + 1)
    for k in range(p):
        e = k * step
        for j in range(e + 1):
            coeffs[j] += comb(e, j)
    return tuple(coeffs)


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] += ai * bj
    return out


def _poly_reduce(c: List[Fraction], modulus: Sequence[int]) -> List[Fraction]:
    d = len(modulus) - 1
    c = list(c)
    for k in range(len(c) - 1, d - 1, -1):
        lead = c[k]
        if lead:
            for j in range(d):
                c[k - d + j] -= lead * modulus[j]
        c[k] = Fraction(0)
    c = c[:d]
    return c + [Fraction(0)] * (d - len(c))


def quotient_mul(a: Sequence[Fraction], b: Sequence[Fraction], modulus: Sequence[int]) -> List[Fraction]:
    """Exact product in Q[X]/(modulus)."""
    return _poly_reduce(_poly_mul(a, b), modulus)


def quotient_inverse(a: Sequence[Fraction], modulus: Sequence[int]) -> List[Fraction]:
    """Exact inverse in Q[X]/(modulus) for an irreducible modulus."""
    d = len(modulus) - 1
    if d == 1:
        return [1 / Fraction(a[0])]
    f = Poly(list(reversed([Fraction(c) for c in a])), _X, domain=QQ)
    g = Poly(list(reversed([Fraction(c) for c in modulus])), _X, domain=QQ)
    coeffs = [_to_fraction(c) for c in reversed(f.invert(g).all_coeffs())]
    return coeffs + [Fraction(0)] * (d - len(coeffs))


class ExtensionElement:
    """
    Element of an :class:`ExtensionField`, stored as coefficients of the
    generator (low to high), each known modulo p^prec.
    """

    __slots__ = ("field", "coeffs", "prec")

    def __init__(self, field: ExtensionField, coeffs: Sequence[RationalLike], prec: int):
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > field.degree:
            coeffs = _poly_reduce(coeffs, field.modulus)
        coeffs = coeffs + [Fraction(0)] * (field.degree - len(coeffs))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "prec", int(prec))
        object.__setattr__(
            self, "coeffs", tuple(reduce_rational(c, field.p, int(prec)) for c in coeffs)
        )

    def __setattr__(self, key, value):
        raise AttributeError("extension elements are immutable")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_rational(cls, field: ExtensionField, x: RationalLike, prec: int):
        return cls(field, [x], prec)

    @classmethod
    def zero(cls, field: ExtensionField, prec: int):
        return cls(field, [], prec)

    @classmethod
    def one(cls, field: ExtensionField, prec: int):
        return cls(field, [1], prec)

    @classmethod
    def generator(cls, field: ExtensionField, prec: int):
        if field.degree == 1:
            return cls(field, [-field.modulus[0]], prec)
        return cls(field, [0, 1], prec)

    # -- views --------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def coordinates(self) -> Tuple[PadicScalar, ...]:
        return tuple(PadicScalar.from_rational(self.p, c, self.prec) for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def coefficient_valuation(self) -> Union[int, float]:
        return min(valuation_of_rational(c, self.p) for c in self.coeffs)

    def valuation(self) -> Union[Fraction, float]:
        """Valuation normalized by v(p) = 1 (rational for ramified fields)."""
        e = self.field.ramification
        best: Union[Fraction, float] = INF
        for i, c in enumerate(self.coeffs):
            if c:
                best = min(best, valuation_of_rational(c, self.p) + Fraction(i, e))
        if best != INF:
            best = Fraction(best)
        return best

    def equals_at_precision(self, other) -> bool:
        return (self - other).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtensionElement):
            return NotImplemented
        return self.field == other.field and self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.prec, self.coeffs))

    def __repr__(self) -> str:
        name = "x" if self.field.kind == "cyclotomic" else "y"
        terms = [f"{c}*{name}^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c]
        return f"({' + '.join(terms) or '0'}) + O({self.p}^{self.prec})"

    # -- arithmetic ---------------------------------------------------------

    def _new(self, coeffs, prec):
        return type(self)(self.field, coeffs, prec)

    def _coerce(self, other) -> "ExtensionElement":
        if isinstance(other, ExtensionElement):
            if other.field != self.field:
                raise FieldMismatchError(f"mixed fields {self.field} and {other.field}")
            return other
        if isinstance(other, PadicScalar):
            if other.p != self.p:
                raise FieldMismatchError(f"mixed primes {self.p} and {other.p}")
            return self._new([other.to_fraction()], other.prec)
        if isinstance(other, (int, Fraction)):
            return self._new([other], self.prec)
        raise FieldMismatchError(f"cannot combine field element with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return self._new([a + b for a, b in zip(self.coeffs, other.coeffs)], min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return self._new([-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        prec = _product_precision(
            self.prec, self.coefficient_valuation(), other.prec, other.coefficient_valuation()
        )
        product = _poly_reduce(_poly_mul(self.coeffs, other.coeffs), self.field.modulus)
        return self._new(product, prec)

    __rmul__ = __mul__

    def inverse(self):
        """
        Inverse computed exactly on the representative.

        An input error of valuation >= N moves the inverse by at most
        N - 2 v(a) in field valuation; the reported precision converts that
        bound back to coefficient units.
        """
        if self.is_zero():
            raise DivisionByZeroError(f"inverse of zero at precision p^{self.prec}")
        e = self.field.ramification
        w = self.valuation()
        bound = self.prec - 2 * w - Fraction(e - 1, e)
        prec = math.ceil(bound)
        if self.field.degree == 1:
            return self._new([1 / self.coeffs[0]], prec)
        return self._new(quotient_inverse(self.coeffs, self.field.modulus), prec)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        return _power(self, k, self._new([1], self.prec))

    def with_precision(self, prec: int):
        """Same representative, reported at a lower (or equal) precision."""
        return self._new(self.coeffs, min(prec, self.prec))

    def evaluate_polynomial_at(self, coeffs: Sequence["ExtensionElement"]):
        """Horner evaluation of sum coeffs[i] * self^i."""
        result = self._new([], self.prec)
        for c in reversed(list(coeffs)):
            result = result * self + c
        return result


class UnramifiedElement(ExtensionElement):
    """Element of Q_{p^s}; carries the Witt-vector Frobenius lift."""

    __slots__ = ()

    def frobenius(self, times: int = 1) -> "UnramifiedElement":
        """sigma^times, where sigma lifts the p-power map on the residue field."""
        s = self.field.degree
        times %= s
        result = self
        for _ in range(times):
            result = frobenius_lift(result)
        return result


class CyclotomicElement(ExtensionElement):
    """Element of Q_p(eps_n) written in powers of x = eps_n - 1."""

    __slots__ = ()

    @property
    def level(self) -> int:
        return self.field.level

    @classmethod
    def epsilon(cls, field: ExtensionField, prec: int) -> "CyclotomicElement":
        return cls(field, [1, 1], prec)

    def embed(self, level: int) -> "CyclotomicElement":
        """Image in Q_p(eps_level) under eps_n = eps_level^(p^(level - n))."""
        if level < self.level:
            raise InputError(f"cannot embed level {self.level} into level {level}")
        if level == self.level:
            return self
        target = cyclotomic_field(self.p, level)
        eps = CyclotomicElement.epsilon(target, self.prec)
        x_image = eps ** (self.p ** (level - self.level)) - 1
        coeffs = [CyclotomicElement(target, [c], self.prec) for c in self.coeffs]
        return x_image.evaluate_polynomial_at(coeffs)

    def galois(self, gamma: int) -> "CyclotomicElement":
        """Automorphism eps_n -> eps_n^gamma for gamma prime to p."""
        if gamma % self.p == 0:
            raise InputError("gamma must be a p-adic unit")
        g = gamma % self.p ** self.level
        eps = CyclotomicElement.epsilon(self.field, self.prec)
        x_image = eps ** g - 1
        coeffs = [CyclotomicElement(self.field, [c], self.prec) for c in self.coeffs]
        return x_image.evaluate_polynomial_at(coeffs)


@dataclass(frozen=True)
class CompositumField:
    """
    K_0 (x) Q_p(eps_n) for K_0 = Q_{p^f}, presented as Q_p(eps_n)[y]/(h) with
    h the (integral) modulus of K_0.
    """

    base: ExtensionField
    cyclotomic: ExtensionField

    kind = "compositum"

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def level(self) -> int:
        return self.cyclotomic.level

    @property
    def degree(self) -> int:
        return self.base.degree * self.cyclotomic.degree

    @property
    def ramification(self) -> int:
        return self.cyclotomic.degree


@lru_cache(maxsize=None)
def compositum_field(base: ExtensionField, n: int) -> CompositumField:
    if base.kind != "unramified":
        raise InputError("the compositum needs an unramified base field")
    return CompositumField(base, cyclotomic_field(base.p, n))


class CompositumElement:
    """sum_k c_k y^k with c_k in Q_p(eps_n); sigma acts on y and fixes eps_n."""

    __slots__ = ("field", "coords")

    def __init__(self, field: CompositumField, coords: Sequence[Union[CyclotomicElement, RationalLike]], prec: int):
        cyclotomic = field.cyclotomic
        items = [c if isinstance(c, CyclotomicElement) else CyclotomicElement(cyclotomic, [c], prec)
                 for c in coords]
        f = field.base.degree
        modulus = field.base.modulus
        for k in range(len(items) - 1, f - 1, -1):
            lead = items[k]
            for j in range(f):
                items[k - f + j] = items[k - f + j] - lead * modulus[j]
        items = items[:f]
        items += [CyclotomicElement.zero(cyclotomic, prec)] * (f - len(items))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", tuple(items))

    def __setattr__(self, key, value):
        raise AttributeError("compositum elements are immutable")

    @classmethod
    def zero(cls, field: CompositumField, prec: int) -> "CompositumElement":
        return cls(field, [], prec)

    @classmethod
    def one(cls, field: CompositumField, prec: int) -> "CompositumElement":
        return cls(field, [1], prec)

    @classmethod
    def from_unramified(cls, field: CompositumField, a: UnramifiedElement) -> "CompositumElement":
        if a.field != field.base:
            raise FieldMismatchError(f"{a.field} is not the base of {field}")
        return cls(field, list(a.coeffs), a.prec)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def level(self) -> int:
        return self.field.level

    @property
    def prec(self) -> int:
        return min(c.prec for c in self.coords)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def valuation(self) -> Union[Fraction, float]:
        """min over y-coordinates: 1, y, ..., y^(f-1) reduce to a basis of the residue field."""
        return min(c.valuation() for c in self.coords)

    def equals_at_precision(self, other) -> bool:
        return (self - other).is_zero()

    def __repr__(self) -> str:
        terms = [f"{c!r}*y^{k}" if k else repr(c) for k, c in enumerate(self.coords) if not c.is_zero()]
        return " + ".join(terms) or f"0 + O({self.p}^{self.prec})"

    def _coerce(self, other) -> "CompositumElement":
        if isinstance(other, CompositumElement):
            if other.field != self.field:
                raise FieldMismatchError(f"mixed fields {self.field} and {other.field}")
            return other
        if isinstance(other, CyclotomicElement):
            if other.field != self.field.cyclotomic:
                raise FieldMismatchError(f"{other.field} does not embed in {self.field}")
            return CompositumElement(self.field, [other], other.prec)
        if isinstance(other, (int, Fraction)):
            return CompositumElement(self.field, [other], self.prec)
        raise FieldMismatchError(f"cannot combine compositum element with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return CompositumElement(self.field, [a + b for a, b in zip(self.coords, other.coords)], self.prec)

    __radd__ = __add__

    def __neg__(self):
        return CompositumElement(self.field, [-c for c in self.coords], self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        product: List[CyclotomicElement] = []
        for i, a in enumerate(self.coords):
            for j, b in enumerate(other.coords):
                if i + j < len(product):
                    product[i + j] = product[i + j] + a * b
                else:
                    product.append(a * b)
        return CompositumElement(self.field, product, min(self.prec, other.prec))

    __rmul__ = __mul__

    def frobenius(self, times: int = 1) -> "CompositumElement":
        """sigma (x) 1: substitute sigma(y) for y, coordinates untouched."""
        base = self.field.base
        times %= base.degree
        if times == 0 or self.is_zero():
            return self
        working = self.prec - min(0, math.floor(self.valuation()))
        z = CompositumElement(self.field, list(sigma_of_generator(base, max(working, 1))), working)
        result = self
        for _ in range(times):
            acc = CompositumElement.zero(self.field, result.prec)
            for c in reversed(result.coords):
                acc = acc * z + c
            result = acc
        return result

    def inverse(self) -> "CompositumElement":
        """a^-1 = (sigma(a) ... sigma^(f-1)(a)) / N(a), N(a) in Q_p(eps_n)."""
        if self.is_zero():
            raise DivisionByZeroError(f"inverse of zero at precision p^{self.prec}")
        cofactor = CompositumElement.one(self.field, self.prec)
        conjugate = self
        for _ in range(self.field.base.degree - 1):
            conjugate = conjugate.frobenius()
            cofactor = cofactor * conjugate
        norm = (self * cofactor).coords[0]
        return cofactor * norm.inverse()

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int):
        return _power(self, k, CompositumElement.one(self.field, self.prec))

    def with_precision(self, prec: int) -> "CompositumElement":
        return CompositumElement(self.field, [c.with_precision(prec) for c in self.coords], prec)

    def galois(self, gamma: int) -> "CompositumElement":
        return CompositumElement(self.field, [c.galois(gamma) for c in self.coords], self.prec)

    def embed(self, level: int) -> "CompositumElement":
        target = compositum_field(self.field.base, level)
        return CompositumElement(target, [c.embed(level) for c in self.coords], self.prec)


def unramified(field: ExtensionField, x, prec: int) -> UnramifiedElement:
    """Build an unramified element from a rational, a coefficient list or a scalar."""
    if isinstance(x, UnramifiedElement):
        return x
    if isinstance(x, PadicScalar):
        return UnramifiedElement(field, [x.to_fraction()], x.prec)
    if isinstance(x, (list, tuple)):
        return UnramifiedElement(field, list(x), prec)
    return UnramifiedElement(field, [x], prec)


# ---------------------------------------------------------------------------
# Frobenius on Q_{p^s}
# ---------------------------------------------------------------------------

def _quotient_eval(poly_coeffs: Sequence[int], z: List[Fraction], modulus) -> List[Fraction]:
    d = len(modulus) - 1
    acc = [Fraction(0)] * d
    for c in reversed(poly_coeffs):
        acc = quotient_mul(acc, z, modulus)
        acc[0] += c
    return acc


@lru_cache(maxsize=None)
def sigma_of_generator(field: ExtensionField, prec: int) -> Tuple[Fraction, ...]:
    """
    The root sigma(y) of the modulus with sigma(y) = y^p mod p, to precision p^prec.

    Computed by Newton iteration starting from y^p, doubling precision each step.
    """
    if field.kind != "unramified":
        raise InputError("Frobenius lift is only defined on unramified fields")
    h = field.modulus
    p = field.p
    d = field.degree
    if d == 1:
        return (Fraction(-h[0]),)
    derivative = [i * h[i] for i in range(1, len(h))]
    gen = [Fraction(0), Fraction(1)] + [Fraction(0)] * (d - 2)
    z = [Fraction(1)] + [Fraction(0)] * (d - 1)
    for _ in range(p):
        z = quotient_mul(z, gen, h)
    z = [reduce_rational(c, p, 1) for c in z]
    g = Poly(list(reversed([Fraction(c) for c in h])), _X, domain=QQ)
    current = 1
    while current < prec:
        current = min(2 * current, prec)
        hz = _quotient_eval(h, z, h)
        dz = _quotient_eval(derivative, z, h)
        inv = Poly(list(reversed(dz)), _X, domain=QQ).invert(g)
        inv_coeffs = [_to_fraction(c) for c in reversed(inv.all_coeffs())]
        inv_coeffs += [Fraction(0)] * (d - len(inv_coeffs))
        step = quotient_mul(hz, inv_coeffs, h)
        z = [reduce_rational(zc - sc, p, current) for zc, sc in zip(z, step)]
    residual = _quotient_eval(h, z, h)
    if any(reduce_rational(c, p, prec) != 0 for c in residual):
        raise PrecisionError("Hensel lift of the Frobenius root did not converge")
    return tuple(z)


def frobenius_lift(a: UnramifiedElement) -> UnramifiedElement:
    """sigma(a): substitute sigma(y) for the generator; identity on Q_p."""
    field = a.field
    if field.kind != "unramified":
        raise InputError("frobenius_lift expects an unramified element")
    if field.degree == 1 or a.is_zero():
        return a
    cv = a.coefficient_valuation()
    working = a.prec - min(0, int(cv))
    z = list(sigma_of_generator(field, max(working, 1)))
    acc = [Fraction(0)] * field.degree
    for c in reversed(a.coeffs):
        acc = quotient_mul(acc, z, field.modulus)
        acc[0] += c
    return UnramifiedElement(field, acc, a.prec)


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex polygon given by integer-abscissa vertices."""

    vertices: Tuple[Tuple[int, Fraction], ...]

    def __post_init__(self):
        xs = [x for x, _ in self.vertices]
        if not xs or xs[0] != 0 or any(b <= a for a, b in zip(xs, xs[1:])):
            raise InputError(f"invalid polygon vertices {self.vertices}")

    @property
    def length(self) -> int:
        return self.vertices[-1][0]

    @property
    def end(self) -> Tuple[int, Fraction]:
        return self.vertices[-1]

    def slopes(self) -> List[Fraction]:
        """Slopes with multiplicity (segment width), ascending."""
        out: List[Fraction] = []
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            out.extend([Fraction(y1 - y0, 1) / (x1 - x0)] * (x1 - x0))
        return out

    def root_valuations(self) -> List[Fraction]:
        """Valuations of the roots of the polynomial the polygon came from."""
        return sorted(-s for s in self.slopes())

    def value_at(self, x: RationalLike) -> Fraction:
        x = Fraction(x)
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x0 <= x <= x1:
                return Fraction(y0) + (Fraction(y1) - Fraction(y0)) * (x - x0) / (x1 - x0)
        if x == self.vertices[0][0]:
            return Fraction(self.vertices[0][1])
        raise InputError(f"abscissa {x} outside polygon")

    def lies_on_or_below(self, other: "NewtonPolygon") -> bool:
        if self.length != other.length:
            return False
        return all(self.value_at(x) <= other.value_at(x) for x in range(self.length + 1))

    @classmethod
    def from_slopes(cls, slopes: Iterable[RationalLike]) -> "NewtonPolygon":
        """Polygon from (0, 0) with the given slopes sorted ascending."""
        vertices = [(0, Fraction(0))]
        ordered = sorted(Fraction(s) for s in slopes)
        x, y = 0, Fraction(0)
        for i, s in enumerate(ordered):
            x, y = x + 1, y + s
            if i + 1 == len(ordered) or ordered[i + 1] != s:
                vertices.append((x, y))
        return cls(tuple(vertices))


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon_of(valuations: Sequence[Union[RationalLike, float]]) -> NewtonPolygon:
    """
    Lower convex hull of the points (i, v_i), skipping infinite valuations.

    ``valuations[i]`` is the valuation of the coefficient of T^i. When the
    low coefficients vanish, T^k divides the polynomial; the hull then starts
    at the first finite point, shifted to abscissa 0, and its slopes describe
    the nonzero roots only.
    """
    points = [(i, Fraction(v)) for i, v in enumerate(valuations) if v != INF]
    if not points:
        raise InputError("all valuations are infinite")
    if points[-1][0] != len(valuations) - 1:
        raise InputError("leading coefficient must have finite valuation")
    k = points[0][0]
    lower: List[Tuple[int, Fraction]] = []
    for i, v in points:
        pt = (i - k, v)
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    return NewtonPolygon(tuple(lower))
