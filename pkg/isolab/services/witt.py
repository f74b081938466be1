"""
Truncated p-typical Witt vectors.

Structure polynomials are obtained by inverting the ghost map over Z:
with w_j(x) = sum_{i<=j} p^i x_i^(p^(j-i)), the j-th sum polynomial is

    S_j = (w_j(x) + w_j(y) - sum_{i<j} p^i S_i^(p^(j-i))) / p^j

and likewise for products and differences. Every division is checked to be
exact. Polynomials are memoised per (p, n) and persisted through
:class:`isolab.storage.cache.StructurePolynomialCache`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.rings import PolyRing, ring

from isolab.config import get_settings
from isolab.errors import FieldMismatchError, InputError, WittDerivationError
from isolab.services.padic_core import INF, valuation_of_int
from isolab.services.perfect_rings import FqElement, PerfectLaurentElement, p_power_exponent
from isolab.storage.cache import StructurePolynomialCache
from isolab.utils.logging import get_logger

FAMILIES = ("sum", "product", "difference")


@dataclass(frozen=True)
class WittStructurePolys:
    """
    Sum, product and difference polynomials for length-n Witt vectors.

    Variables are x_0..x_{n-1}, y_0..y_{n-1} of ``ring`` in that order.
    """

    p: int
    n: int
    ring: PolyRing
    sums: Tuple[Any, ...]
    products: Tuple[Any, ...]
    differences: Tuple[Any, ...]

    def family(self, name: str) -> Tuple[Any, ...]:
        return {"sum": self.sums, "product": self.products, "difference": self.differences}[name]


_MEMO: Dict[Tuple[int, int], WittStructurePolys] = {}
_MEMO_LOCK = threading.Lock()


def _ghost_polys(gens, p: int, n: int):
    return [sum(p ** i * gens[i] ** (p ** (j - i)) for i in range(j + 1)) for j in range(n)]


def _invert_ghost(target, p: int, n: int, family: str) -> List[Any]:
    """Solve sum_{i<=j} p^i Z_i^(p^(j-i)) = target_j for Z_0..Z_{n-1}."""
    found: List[Any] = []
    for j in range(n):
        remainder = target[j] - sum(p ** i * found[i] ** (p ** (j - i)) for i in range(j))
        q = p ** j
        if any(int(c) % q for c in remainder.values()):
            raise WittDerivationError(
                f"inexact division by {p}^{j} while deriving {family} polynomial {j}"
            )
        found.append(remainder.quo_ground(q))
    return found


def _derive(p: int, n: int) -> Tuple[PolyRing, Dict[str, List[Any]]]:
    names = [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)]
    R, *gens = ring(",".join(names), ZZ)
    xs, ys = gens[:n], gens[n:]
    wx, wy = _ghost_polys(xs, p, n), _ghost_polys(ys, p, n)
    families = {
        "sum": _invert_ghost([a + b for a, b in zip(wx, wy)], p, n, "sum"),
        "product": _invert_ghost([a * b for a, b in zip(wx, wy)], p, n, "product"),
        "difference": _invert_ghost([a - b for a, b in zip(wx, wy)], p, n, "difference"),
    }
    return R, families


def _empty_ring(n: int) -> PolyRing:
    names = [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)]
    R, *_ = ring(",".join(names), ZZ)
    return R


def structure_polys(p: int, n: int, use_disk_cache: bool = True) -> WittStructurePolys:
    """
    Structure polynomials for length ``n`` (bounded by ``witt_max_length``).

    Raises
    ------
    InputError
        If n is out of range.
    WittDerivationError
        If some division by a power of p is inexact.
    """
    limit = get_settings().witt_max_length
    if n < 1 or n > limit:
        raise InputError(f"Witt length must be in [1, {limit}], got {n}")
    key = (p, n)
    with _MEMO_LOCK:
        if key in _MEMO:
            return _MEMO[key]

        logger = get_logger()
        cache = StructurePolynomialCache() if use_disk_cache else None
        stored = cache.load(p, n) if cache else None
        if stored is not None and set(stored) == set(FAMILIES):
            R = _empty_ring(n)
            families = {name: [R.from_dict(dict(terms)) for terms in polys] for name, polys in stored.items()}
            logger.debug(f"Loaded structure polynomials p={p} n={n} from cache", source="witt")
        else:
            R, families = _derive(p, n)
            logger.info(f"Derived structure polynomials p={p} n={n}", source="witt")
            if cache:
                cache.store(p, n, {name: [list(poly.terms()) for poly in polys]
                                   for name, polys in families.items()})

        polys = WittStructurePolys(
            p, n, R, tuple(families["sum"]), tuple(families["product"]), tuple(families["difference"])
        )
        _MEMO[key] = polys
        return polys


def clear_structure_cache() -> None:
    with _MEMO_LOCK:
        _MEMO.clear()


# ---------------------------------------------------------------------------
# Witt vectors
# ---------------------------------------------------------------------------

def _is_char_p(x) -> bool:
    return isinstance(x, (FqElement, PerfectLaurentElement))


def _zero_like(x):
    return x - x


def _evaluate(poly, values: Sequence[Any], p: int, char_p: bool):
    """Evaluate an integer polynomial at ``values`` (coefficients mod p in char p)."""
    powers: Dict[Tuple[int, int], Any] = {}
    total = _zero_like(values[0])
    for monom, coeff in poly.terms():
        c = int(coeff) % p if char_p else int(coeff)
        if c == 0:
            continue
        term = None
        for var, exp in enumerate(monom):
            if exp == 0:
                continue
            key = (var, exp)
            if key not in powers:
                powers[key] = values[var] ** exp
            term = powers[key] if term is None else term * powers[key]
        if term is None:
            term = _zero_like(values[0]) + 1
        total = total + (term if c == 1 else c * term)
    return total


class WittVector:
    """
    A truncated Witt vector stored by its Witt coordinates a_0..a_{n-1}.

    Components may be integers (or integer-valued objects) for ghost-map
    checks, or elements of a perfect ring of characteristic p. Over a
    perfect ring the vector equals sum_{i<n} p^i [x_i] with Teichmueller
    digits x_i = a_i^(1/p^i); see :meth:`teichmuller_digits`.
    """

    __slots__ = ("p", "components")

    def __init__(self, p: int, components: Sequence[Any]):
        if not components:
            raise InputError("Witt vectors need at least one component")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "components", tuple(components))

    def __setattr__(self, key, value):
        raise AttributeError("Witt vectors are immutable")

    @property
    def length(self) -> int:
        return len(self.components)

    def is_char_p(self) -> bool:
        return _is_char_p(self.components[0])

    def ghost_components(self) -> List[Any]:
        x = self.components
        return [sum((self.p ** i * x[i] ** (self.p ** (j - i)) for i in range(1, j + 1)), x[0] ** (self.p ** j))
                for j in range(self.length)]

    def teichmuller_digits(self) -> List[Any]:
        """The x_i with self = sum p^i [x_i]; needs a perfect ring of characteristic p."""
        if not self.is_char_p():
            raise InputError("Teichmueller digits need components in a perfect ring")
        digits = []
        for i, a in enumerate(self.components):
            for _ in range(i):
                a = a.pth_root()
            digits.append(a)
        return digits

    def is_zero(self) -> bool:
        return all(c == 0 if isinstance(c, int) else c.is_zero() for c in self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WittVector):
            return NotImplemented
        return self.p == other.p and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.p, self.components))

    def __repr__(self) -> str:
        return f"W_{self.p}({', '.join(repr(c) for c in self.components)})"

    def _check(self, other: "WittVector") -> None:
        if not isinstance(other, WittVector):
            raise FieldMismatchError(f"cannot combine a Witt vector with {type(other).__name__}")
        if other.p != self.p or other.length != self.length:
            raise FieldMismatchError(
                f"Witt parameters differ: (p={self.p}, n={self.length}) vs (p={other.p}, n={other.length})"
            )

    def _apply(self, other: "WittVector", family: str) -> "WittVector":
        self._check(other)
        polys = structure_polys(self.p, self.length).family(family)
        values = list(self.components) + list(other.components)
        char_p = self.is_char_p() or other.is_char_p()
        return WittVector(self.p, [_evaluate(poly, values, self.p, char_p) for poly in polys])

    def __add__(self, other):
        return self._apply(other, "sum")

    def __sub__(self, other):
        return self._apply(other, "difference")

    def __mul__(self, other):
        if isinstance(other, int):
            return self * witt_from_integer_like(other, self)
        return self._apply(other, "product")

    def __rmul__(self, other):
        if isinstance(other, int):
            return witt_from_integer_like(other, self) * self
        return NotImplemented

    def __neg__(self):
        return self.zero_like() - self

    def zero_like(self) -> "WittVector":
        zero = _zero_like(self.components[0])
        return WittVector(self.p, [zero] * self.length)

    def frobenius(self) -> "WittVector":
        """Componentwise p-th power; the Witt Frobenius over a perfect ring."""
        return WittVector(self.p, [c ** self.p for c in self.components])

    def inverse_frobenius(self) -> "WittVector":
        return WittVector(self.p, [c.pth_root() for c in self.components])

    def truncate(self, length: int) -> "WittVector":
        if length < 1 or length > self.length:
            raise InputError(f"cannot truncate length {self.length} to {length}")
        return WittVector(self.p, self.components[:length])


def witt_add(a: WittVector, b: WittVector) -> WittVector:
    return a + b


def witt_sub(a: WittVector, b: WittVector) -> WittVector:
    return a - b


def witt_mul(a: WittVector, b: WittVector) -> WittVector:
    return a * b


def witt_frobenius(a: WittVector) -> WittVector:
    return a.frobenius()


def teichmuller(r, n: int, p: Optional[int] = None) -> WittVector:
    """[r] = (r, 0, ..., 0) of length n."""
    if p is None:
        if not hasattr(r, "p"):
            raise InputError("teichmuller needs p for integer components")
        p = r.p
    zero = _zero_like(r)
    return WittVector(p, [r] + [zero] * (n - 1))


def witt_from_integer(m: int, one, n: int) -> WittVector:
    """
    The image of the integer m in W_n(R), where ``one`` is 1 in R.

    Components are Teichmueller digits of m mod p^n in F_p inside R.
    """
    p = one.p
    modulus = p ** n
    r = m % modulus
    components = []
    for i in range(n):
        digit = (r // p ** i) % p
        components.append(digit * one)
        k = n - i
        teich = pow(digit, p ** (k - 1), p ** k)
        r = (r - p ** i * teich) % modulus
    return WittVector(p, components)


def witt_from_integer_like(m: int, like: WittVector) -> WittVector:
    c = like.components[0]
    if _is_char_p(c):
        return witt_from_integer(m, _zero_like(c) + 1, like.length)
    return WittVector(like.p, [m] + [0] * (like.length - 1)) if m in (0, 1) else _integer_vector(m, like)


def _integer_vector(m: int, like: WittVector) -> WittVector:
    one = WittVector(like.p, [1] + [0] * (like.length - 1))
    total = one.zero_like()
    for _ in range(abs(m)):
        total = total + one
    return total if m >= 0 else -total


# ---------------------------------------------------------------------------
# W(R)/([X] - p)
# ---------------------------------------------------------------------------

class RootOfPElement:
    """
    Element sum_f A_f p^f of Z_p[p^(1/p^inf)] modulo p^n, indexed by the
    fractional parts f in [0, 1) of the exponents.

    Distinct f give valuations v_p(A_f) + f in distinct classes mod Z, so the
    valuation is the minimum with no cancellation.
    """

    __slots__ = ("p", "n", "coeffs")

    def __init__(self, p: int, n: int, coeffs: Dict[Fraction, int]):
        modulus = p ** n
        self.p = p
        self.n = n
        self.coeffs = {f: a % modulus for f, a in coeffs.items() if a % modulus}

    @classmethod
    def monomial(cls, p: int, n: int, exponent: Fraction, coeff: int = 1) -> "RootOfPElement":
        whole = exponent.numerator // exponent.denominator
        frac = exponent - whole
        if whole >= n:
            return cls(p, n, {})
        return cls(p, n, {frac: coeff * p ** whole})

    def __add__(self, other: "RootOfPElement") -> "RootOfPElement":
        merged = dict(self.coeffs)
        for f, a in other.coeffs.items():
            merged[f] = merged.get(f, 0) + a
        return RootOfPElement(self.p, self.n, merged)

    def __mul__(self, other: "RootOfPElement") -> "RootOfPElement":
        out: Dict[Fraction, int] = {}
        for f1, a1 in self.coeffs.items():
            for f2, a2 in other.coeffs.items():
                f = f1 + f2
                a = a1 * a2
                if f >= 1:
                    f -= 1
                    a *= self.p
                out[f] = out.get(f, 0) + a
        return RootOfPElement(self.p, self.n, out)

    def scale(self, k: int) -> "RootOfPElement":
        return RootOfPElement(self.p, self.n, {f: a * k for f, a in self.coeffs.items()})

    def __pow__(self, k: int) -> "RootOfPElement":
        result = RootOfPElement(self.p, self.n, {Fraction(0): 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def valuation(self) -> Union[Fraction, float]:
        if not self.coeffs:
            return INF
        return min(valuation_of_int(a, self.p) + f for f, a in self.coeffs.items())


@dataclass(frozen=True)
class SpecializationResult:
    """
    Valuation of the image in the p-adic completion of Z_p[p^(1/p^inf)].

    When the image vanishes modulo p^n, ``valuation`` is the lower bound n and
    ``exact`` is False.
    """

    p: int
    valuation: Fraction
    precision_bound: int
    exact: bool

    @property
    def norm(self) -> float:
        """p^(-valuation) (an upper bound when not exact)."""
        return float(self.p) ** (-float(self.valuation))


def _teichmuller_image(x: PerfectLaurentElement, n: int) -> RootOfPElement:
    p = x.p
    root_scale = p ** (n - 1)
    lift = RootOfPElement(p, n, {})
    for exponent, coeff in x.terms:
        digit = coeff.coeffs[0]
        lift = lift + RootOfPElement.monomial(p, n, exponent / root_scale, digit)
    return lift ** root_scale


def specialize_X_to_p(a: WittVector) -> SpecializationResult:
    """
    Valuation of the image of ``a`` under [X^(1/p^k)] -> p^(1/p^k).

    The length n of ``a`` doubles as the precision: the image is known modulo
    p^n, so valuations below n are exact and anything else is only a bound.
    """
    components = a.components
    if not all(isinstance(c, PerfectLaurentElement) for c in components):
        raise InputError("specialization expects components in the perfected polynomial ring")
    field = components[0].field
    if field.degree != 1:
        raise InputError("specialization is implemented over F_p coefficients only")
    if any(c.has_negative_exponents() for c in components):
        raise InputError("specialization requires nonnegative exponents")
    for c in components:
        for exponent, _ in c.terms:
            p_power_exponent(exponent.denominator, a.p)

    n = a.length
    image = RootOfPElement(a.p, n, {})
    for i, c in enumerate(a.teichmuller_digits()):
        if c.is_zero():
            continue
        image = image + _teichmuller_image(c, n).scale(a.p ** i)
    v = image.valuation()
    if v == INF:
        return SpecializationResult(a.p, Fraction(n), n, False)
    return SpecializationResult(a.p, Fraction(v), n, True)
