"""
Truncated elements of the Robba ring over Q_{p^s}, the phi and Gamma actions,
t = log(1 + pi), the maps theta_n into Q_p(eps_n)[[t]] and the local
modification of a filtered isocrystal at the theta_n divisors.

A :class:`RobbaElement` knows its coefficients a_i exactly (up to their
p-adic precision) on a finite window lo <= i <= hi. Everything beyond hi is
summarized by a :class:`TailBound`; ``tail is None`` means the element is the
Laurent polynomial shown.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from isolab.errors import ConsistencyError, InputError, PrecisionError
from isolab.services import linalg
from isolab.services.isocrystal import FilteredIsocrystal
from isolab.services.padic_core import (
    INF,
    CompositumElement,
    CompositumField,
    CyclotomicElement,
    ExtensionField,
    UnramifiedElement,
    compositum_field,
    cyclotomic_field,
    quotient_inverse,
    quotient_mul,
    unramified_field,
)
from isolab.services.seminorms import EXACT, LOWER, SeminormValue
from isolab.utils.logging import get_logger


def ceil_log(i: int, p: int) -> int:
    """Smallest k with p^k >= i (i >= 1)."""
    if i < 1:
        raise InputError(f"ceil_log needs i >= 1, got {i}")
    k, q = 0, 1
    while q < i:
        q *= p
        k += 1
    return k


def factorial_valuation(j: int, p: int) -> int:
    """v_p(j!) by Legendre's formula."""
    total, q = 0, p
    while q <= j:
        total += j // q
        q *= p
    return total


@dataclass(frozen=True)
class FrobeniusTail:
    """
    What phi(g) inherits from g beyond its window. For 0 < s <= 1/(p-1) the
    valuation of phi(pi) at radius s is p s, so the dropped part of phi(g)
    is controlled by the tail of g and by the window terms of g whose image
    reaches past the window (``head``, pairs (i, v_p(a_i))), all at radius p s.
    """

    source: "TailBound"
    head: Tuple[Tuple[int, Fraction], ...] = ()

    def vs(self, s: Fraction, p: int) -> Optional[Fraction]:
        if s * (p - 1) > 1:
            return None
        stretched = s * p
        values = [self.source.vs(stretched, p)] + [Fraction(v) + i * stretched for i, v in self.head]
        return min(values)


@dataclass(frozen=True)
class TailBound:
    """
    For every i >= order: v_p(a_i) >= c - w * ceil(log_p i).

    ``frobenius`` optionally records that the tail is the image of another
    tail under phi, which sharpens :meth:`vs` at small radii.
    """

    order: int
    c: Fraction
    w: int = 0
    frobenius: Optional[FrobeniusTail] = None

    def __post_init__(self):
        if self.order < 1:
            raise InputError(f"tail bounds start at a positive exponent, got {self.order}")
        object.__setattr__(self, "c", Fraction(self.c))

    def at(self, i: int, p: int) -> Fraction:
        return self.c - self.w * ceil_log(i, p)

    def vs(self, s: Fraction, p: int) -> Fraction:
        """Lower bound for min_{i >= order} (v_p(a_i) + i s)."""
        s = Fraction(s)
        k0 = ceil_log(self.order, p)
        best: Optional[Fraction] = None
        k = k0
        for _ in range(256):
            start = self.order if k == k0 else p ** (k - 1) + 1
            value = self.c - self.w * k + s * start
            if best is None or value < best:
                best = value
            if k > k0 and s * (p ** k - p ** (k - 1)) >= self.w:
                break
            k += 1
        if self.frobenius is not None:
            sharper = self.frobenius.vs(s, p)
            if sharper is not None and sharper > best:
                best = sharper
        return best


_ZERO_TAIL = Fraction(10 ** 6)


def _combine_tails(order: int, bounds: Iterable[Tuple[Fraction, int]]) -> TailBound:
    bounds = [(Fraction(c), w) for c, w in bounds if c != INF]
    if not bounds:
        # every dropped coefficient was zero
        return TailBound(order, _ZERO_TAIL, 0)
    return TailBound(order, min(c for c, _ in bounds), max(w for _, w in bounds))


def _shift(lo: int, p: int) -> int:
    return ceil_log(-lo + 1, p) if lo < 0 else 0


class RobbaElement:
    """Laurent series sum a_i pi^i converging for 0 < v_p(pi) <= r."""

    __slots__ = ("field", "lo", "coeffs", "r", "tail")

    def __init__(self, field: ExtensionField, lo: int, coeffs: Sequence[UnramifiedElement],
                 r: Fraction, tail: Optional[TailBound] = None):
        if not coeffs:
            raise PrecisionError("window exhausted: no coefficients left")
        r = Fraction(r)
        if r <= 0:
            raise InputError(f"convergence radius parameter must be positive, got {r}")
        hi = lo + len(coeffs) - 1
        if tail is not None and tail.order != hi + 1:
            raise InputError("tail must start right after the window")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "tail", tail)

    def __setattr__(self, key, value):
        raise AttributeError("Robba elements are immutable")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_dict(cls, field: ExtensionField, coeffs: Dict[int, Any], r, prec: int,
                  tail: Optional[TailBound] = None) -> "RobbaElement":
        items = {int(i): _element(field, c, prec) for i, c in coeffs.items()}
        if not items:
            items = {0: UnramifiedElement.zero(field, prec)}
        hi = max(items) if tail is None else tail.order - 1
        lo = min(min(items), hi)
        zero = UnramifiedElement.zero(field, prec)
        return cls(field, lo, [items.get(i, zero) for i in range(lo, hi + 1)], r, tail)

    @classmethod
    def constant(cls, field: ExtensionField, c, r=1, prec: int = 10) -> "RobbaElement":
        return cls.from_dict(field, {0: c}, r, prec)

    @classmethod
    def pi(cls, field: ExtensionField, r=1, prec: int = 10) -> "RobbaElement":
        return cls.from_dict(field, {1: 1}, r, prec)

    # -- views --------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    @property
    def prec(self) -> int:
        return min(c.prec for c in self.coeffs)

    def coefficient(self, i: int) -> UnramifiedElement:
        if i < self.lo:
            return UnramifiedElement.zero(self.field, self.prec)
        if i > self.hi:
            if self.tail is not None:
                raise PrecisionError(f"coefficient of pi^{i} lies beyond the known window")
            return UnramifiedElement.zero(self.field, self.prec)
        return self.coeffs[i - self.lo]

    def items(self) -> List[Tuple[int, UnramifiedElement]]:
        return [(self.lo + k, c) for k, c in enumerate(self.coeffs) if not c.is_zero()]

    def min_coefficient_valuation(self):
        return min((c.valuation() for _, c in self.items()), default=INF)

    def __repr__(self) -> str:
        terms = [f"({c!r})*pi^{i}" for i, c in self.items()]
        tail = f" + O(pi^{self.tail.order})" if self.tail else ""
        return (" + ".join(terms) or "0") + tail

    def v_r(self, s=None) -> SeminormValue:
        """
        min_i (v_p(a_i) + i s) for 0 < s <= r.

        Exact when the tail bound (and the precision of coefficients that
        vanish at precision) exceeds the minimum found on the window.
        """
        s = self.r if s is None else Fraction(s)
        if not 0 < s <= self.r:
            raise InputError(f"v_r needs 0 < s <= r = {self.r}, got {s}")
        known = INF
        unresolved = INF
        for k, c in enumerate(self.coeffs):
            i = self.lo + k
            if c.is_zero():
                unresolved = min(unresolved, c.prec + i * s)
            else:
                known = min(known, c.valuation() + i * s)
        if self.tail is not None:
            unresolved = min(unresolved, self.tail.vs(s, self.p))
        if known == INF:
            if unresolved == INF:
                return SeminormValue(INF, self.p)
            return SeminormValue(unresolved, self.p, LOWER)
        return SeminormValue(known, self.p, EXACT if unresolved > known else LOWER)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other) -> "RobbaElement":
        if isinstance(other, (int, Fraction, UnramifiedElement)):
            return RobbaElement.constant(self.field, other, self.r, self.prec)
        if not isinstance(other, RobbaElement) or other.field != self.field:
            raise InputError("Robba elements over different coefficient fields")
        return other

    def truncate(self, hi: int) -> "RobbaElement":
        """Keep exponents <= hi; the dropped ones are folded into the tail."""
        if hi >= self.hi:
            return self
        dropped = self.coeffs[hi - self.lo + 1:]
        bounds = [(min((c.valuation() for c in dropped if not c.is_zero()), default=INF), 0)]
        if self.tail is not None:
            bounds.append((self.tail.c, self.tail.w))
        return RobbaElement(self.field, self.lo, self.coeffs[: hi - self.lo + 1], self.r,
                            _combine_tails(hi + 1, bounds))

    def __add__(self, other):
        other = self._check(other)
        tails = [t for t in (self.tail, other.tail) if t is not None]
        hi = min(t.order for t in tails) - 1 if tails else max(self.hi, other.hi)
        merged: Dict[int, UnramifiedElement] = {}
        for i, c in list(enumerate(self.coeffs, self.lo)) + list(enumerate(other.coeffs, other.lo)):
            merged[i] = merged[i] + c if i in merged else c
        return _assemble(self.field, merged, min(self.r, other.r), hi,
                         [(t.c, t.w) for t in tails] if tails else None)

    __radd__ = __add__

    def __neg__(self):
        return RobbaElement(self.field, self.lo, [-c for c in self.coeffs], self.r, self.tail)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        p = self.p
        limits = []
        bounds: List[Tuple[Fraction, int]] = []
        vf, vg = self.min_coefficient_valuation(), other.min_coefficient_valuation()
        if other.tail is not None:
            limits.append(other.hi + self.lo)
            if vf != INF:
                bounds.append((vf + other.tail.c - other.tail.w * _shift(self.lo, p), other.tail.w))
        if self.tail is not None:
            limits.append(self.hi + other.lo)
            if vg != INF:
                bounds.append((vg + self.tail.c - self.tail.w * _shift(other.lo, p), self.tail.w))
        if self.tail is not None and other.tail is not None:
            bounds.append((self.tail.c + other.tail.c, self.tail.w + other.tail.w))
        hi = min(limits) if limits else self.hi + other.hi
        merged: Dict[int, UnramifiedElement] = {}
        for i, a in enumerate(self.coeffs, self.lo):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs, other.lo):
                if b.is_zero():
                    continue
                merged[i + j] = merged[i + j] + a * b if i + j in merged else a * b
        if not merged:
            merged[self.lo + other.lo] = self.coeffs[0] * other.coeffs[0]
        return _assemble(self.field, merged, min(self.r, other.r), hi, bounds if limits else None)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative powers of Robba elements are not supported")
        result = RobbaElement.constant(self.field, 1, self.r, self.prec)
        for _ in range(k):
            result = result * self
        return result

    def equals_at_precision(self, other: "RobbaElement", hi: Optional[int] = None) -> bool:
        """Coefficientwise equality on the common window (up to ``hi``)."""
        top = min(self.hi, other.hi) if hi is None else hi
        bottom = min(self.lo, other.lo)
        return all((self.coefficient(i) - other.coefficient(i)).is_zero() for i in range(bottom, top + 1))


def _element(field: ExtensionField, c, prec: int) -> UnramifiedElement:
    if isinstance(c, UnramifiedElement):
        return c
    if isinstance(c, (list, tuple)):
        return UnramifiedElement(field, list(c), prec)
    return UnramifiedElement(field, [Fraction(c)], prec)


def _assemble(field: ExtensionField, merged: Dict[int, UnramifiedElement], r, hi: int,
              tail_bounds: Optional[List[Tuple[Fraction, int]]]) -> RobbaElement:
    """Window [min key, hi]; keys beyond hi are folded into the tail."""
    prec = min(c.prec for c in merged.values())
    zero = UnramifiedElement.zero(field, prec)
    if tail_bounds is None:
        lo = min(merged)
        top = max(merged)
        return RobbaElement(field, lo, [merged.get(i, zero) for i in range(lo, top + 1)], r)
    if hi < 0:
        raise PrecisionError("window exhausted: the known part would end below pi^0")
    lo = min(min(merged), hi)
    dropped = [c for i, c in merged.items() if i > hi and not c.is_zero()]
    bounds = list(tail_bounds)
    if dropped:
        bounds.append((min(c.valuation() for c in dropped), 0))
    return RobbaElement(field, lo, [merged.get(i, zero) for i in range(lo, hi + 1)], r,
                        _combine_tails(hi + 1, bounds))


def t_element(field: ExtensionField, m: int, r=1, prec: int = 10) -> RobbaElement:
    """t = log(1 + pi) = sum (-1)^(i-1) pi^i / i, known through pi^m."""
    if m < 1:
        raise InputError(f"t needs at least one term, got m = {m}")
    coeffs = {i: Fraction((-1) ** (i - 1), i) for i in range(1, m + 1)}
    return RobbaElement.from_dict(field, coeffs, r, prec, TailBound(m + 1, Fraction(0), 1))


# ---------------------------------------------------------------------------
# phi and Gamma
# ---------------------------------------------------------------------------

def _truncated_product(a: Dict[int, UnramifiedElement], b: Dict[int, UnramifiedElement],
                       top: int) -> Dict[int, UnramifiedElement]:
    out: Dict[int, UnramifiedElement] = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= top:
                out[i + j] = out[i + j] + x * y if i + j in out else x * y
    return {k: v for k, v in out.items() if not v.is_zero()}


def _substitute(f: RobbaElement, image: Dict[int, UnramifiedElement],
                inverse_image: Optional[Dict[int, UnramifiedElement]], top: int,
                coefficient_map=None) -> Dict[int, UnramifiedElement]:
    """
    sum a_i image^i truncated at ``top``; image^-1 = inverse_image (a Laurent dict).

    Powers are built by successive products, so each exponent costs one
    multiplication.
    """
    one = UnramifiedElement.one(f.field, f.prec)
    items = f.items()
    if any(i < 0 for i, _ in items) and inverse_image is None:
        raise InputError("negative powers of pi are not supported by this substitution")
    powers: Dict[int, Dict[int, UnramifiedElement]] = {0: {0: one}}
    for sign, step in ((1, image), (-1, inverse_image)):
        extent = max((sign * i for i, _ in items), default=0)
        acc = {0: one}
        for k in range(1, extent + 1):
            acc = _truncated_product(acc, step, top)
            powers[sign * k] = acc
    merged: Dict[int, UnramifiedElement] = {}
    for i, a in items:
        a = coefficient_map(a) if coefficient_map else a
        for k, v in powers[i].items():
            merged[k] = merged[k] + a * v if k in merged else a * v
    if not merged:
        merged[f.lo] = UnramifiedElement.zero(f.field, f.prec)
    return merged


def _phi_inverse_image(field: ExtensionField, prec: int) -> Tuple[Dict[int, UnramifiedElement], int]:
    """
    ((1 + pi)^p - 1)^-1 = pi^-p (1 + sum_{0<k<p} C(p, k) pi^(k-p))^-1 as a
    series in pi^-1, cut where its terms vanish at p^prec (the coefficient
    of pi^(-p-d) has valuation >= d/(p-1)). Returns the dict and the number
    of kept terms.
    """
    p = field.p
    depth = (p - 1) * prec
    unit = [UnramifiedElement.one(field, prec)]
    unit += [UnramifiedElement(field, [math.comb(p, p - j)], prec) for j in range(1, p)]
    inverse = _series_inverse(unit, depth + 1)
    return {-p - d: c for d, c in enumerate(inverse) if not c.is_zero()}, depth


def phi_act(f: RobbaElement) -> RobbaElement:
    """
    sum sigma(a_i) ((1 + pi)^p - 1)^i; r becomes r/p.

    Negative powers use the expansion of :func:`_phi_inverse_image`, so the
    image of pi^-k starts at pi^(-pk - depth). A Laurent polynomial maps to a
    Laurent polynomial. A tailed element keeps its window end; the new tail
    is bounded through the old one read at p times the radius.
    """
    p = f.p
    prec = f.prec
    u = {k: UnramifiedElement(f.field, [math.comb(p, k)], prec) for k in range(1, p + 1)}
    inverse_image, depth, bottom = None, 0, f.lo
    if f.lo < 0:
        inverse_image, depth = _phi_inverse_image(f.field, prec)
        bottom = p * f.lo - depth
    top = f.hi * p if f.tail is None else f.hi
    merged = _substitute(f, u, inverse_image, top, lambda a: a.frobenius())
    merged = {k: v for k, v in merged.items() if k >= bottom}
    if bottom < 0:
        merged.setdefault(bottom, UnramifiedElement.zero(f.field, prec))
    if f.tail is None:
        return _assemble(f.field, merged, f.r / p, top, None)
    head = tuple((i, a.prec if a.is_zero() else a.valuation())
                 for i, a in enumerate(f.coeffs, f.lo) if i * p > f.hi)
    bounds = [(f.tail.c, f.tail.w), (min((v for _, v in head), default=INF), 0)]
    image = _assemble(f.field, merged, f.r / p, top, bounds)
    tail = TailBound(image.tail.order, image.tail.c, image.tail.w, FrobeniusTail(f.tail, head))
    return RobbaElement(f.field, image.lo, image.coeffs, image.r, tail)


def _binomial(gamma: int, k: int) -> int:
    num, den = 1, 1
    for j in range(k):
        num *= gamma - j
        den *= j + 1
    return num // den


def _series_inverse(coeffs: List[UnramifiedElement], length: int) -> List[UnramifiedElement]:
    """Inverse of a power series with unit constant term, to ``length`` terms."""
    inv0 = coeffs[0].inverse()
    out = [inv0]
    for k in range(1, length):
        acc = coeffs[0] - coeffs[0]
        for j in range(1, min(k, len(coeffs) - 1) + 1):
            acc = acc + coeffs[j] * out[k - j]
        out.append(-(acc * inv0))
    return out


def gamma_act(f: RobbaElement, gamma: int, gamma_prec: Optional[int] = None,
              top: Optional[int] = None) -> RobbaElement:
    """
    sum a_i ((1 + pi)^gamma - 1)^i for a p-adic unit gamma.

    ``gamma_prec`` is the precision to which the integer ``gamma`` represents
    the unit; None means gamma is exact. ``top`` is the last exponent of the
    result's window. It defaults to ``f.hi`` and may only exceed it when f is
    a Laurent polynomial.
    """
    p = f.p
    if gamma % p == 0:
        raise InputError("gamma must be a p-adic unit")
    if gamma == 1:
        return f
    top = f.hi if top is None else top
    if f.tail is not None and top > f.hi:
        raise InputError(f"window can only extend past pi^{f.hi} for Laurent polynomials")
    # v^-i = pi^-i u^-i needs u^-1 through degree top - lo
    span = top - min(f.lo, 0) + 2
    prec = f.prec if gamma_prec is None else min(f.prec, gamma_prec - factorial_valuation(span, p))
    if prec < 1:
        raise PrecisionError("gamma is not known precisely enough for this window")
    v = {k: UnramifiedElement(f.field, [_binomial(gamma, k)], prec) for k in range(1, span + 1)}
    inverse_image = None
    if f.lo < 0:
        unit = [v[k + 1] for k in range(span - 1)]
        inv = _series_inverse(unit, span - 1)
        inverse_image = {k - 1: c for k, c in enumerate(inv)}
    merged = _substitute(f, v, inverse_image, top)
    merged = {k: c.with_precision(prec) for k, c in merged.items()}
    bounds = [(f.min_coefficient_valuation(), 0)]
    if f.tail is not None:
        bounds.append((f.tail.c, f.tail.w))
    return _assemble(f.field, merged, f.r, top, bounds)


# ---------------------------------------------------------------------------
# power series in t over K_0(eps_n)
# ---------------------------------------------------------------------------

TCoefficientField = Union[ExtensionField, CompositumField]


def _coefficient_type(field: TCoefficientField):
    return CompositumElement if isinstance(field, CompositumField) else CyclotomicElement


def _level_field(field: TCoefficientField, level: int) -> TCoefficientField:
    if isinstance(field, CompositumField):
        return compositum_field(field.base, level)
    return cyclotomic_field(field.p, level)


class TSeries:
    """
    sum_{j <= order} c_j t^j with c_j in Q_p(eps_n), or in the compositum
    K_0(eps_n) for unramified K_0; products truncate at ``order``.
    """

    __slots__ = ("field", "coeffs", "order")

    def __init__(self, field: TCoefficientField, coeffs: Sequence[Any], order: int):
        if order < 0:
            raise InputError("truncation order must be nonnegative")
        coeffs = list(coeffs)[: order + 1]
        prec = min((c.prec for c in coeffs), default=10)
        zero = _coefficient_type(field).zero(field, prec)
        coeffs += [zero] * (order + 1 - len(coeffs))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, key, value):
        raise AttributeError("t-series are immutable")

    @classmethod
    def constant(cls, field: TCoefficientField, c, order: int, prec: int) -> "TSeries":
        kind = _coefficient_type(field)
        if isinstance(c, CyclotomicElement) and kind is CompositumElement:
            c = CompositumElement(field, [c], c.prec)
        elif not isinstance(c, kind):
            c = kind(field, [Fraction(c)], prec)
        return cls(field, [c], order)

    @classmethod
    def t(cls, field: TCoefficientField, order: int, prec: int) -> "TSeries":
        kind = _coefficient_type(field)
        return cls(field, [kind.zero(field, prec), kind.one(field, prec)], order)

    @property
    def level(self) -> int:
        return self.field.level

    @property
    def p(self) -> int:
        return self.field.p

    def _check(self, other) -> "TSeries":
        if isinstance(other, (int, Fraction, CyclotomicElement, CompositumElement)):
            prec = min(c.prec for c in self.coeffs)
            return TSeries.constant(self.field, other, self.order, prec)
        if not isinstance(other, TSeries) or other.field != self.field:
            raise InputError("t-series over different coefficient fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        order = min(self.order, other.order)
        return TSeries(self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)], order)

    __radd__ = __add__

    def __neg__(self):
        return TSeries(self.field, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        order = min(self.order, other.order)
        out = []
        for k in range(order + 1):
            acc = self.coeffs[0] * other.coeffs[k]
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * other.coeffs[k - j]
            out.append(acc)
        return TSeries(self.field, out, order)

    __rmul__ = __mul__

    def inverse(self) -> "TSeries":
        inv0 = self.coeffs[0].inverse()
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = self.coeffs[1] * out[k - 1]
            for j in range(2, k + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out.append(-(acc * inv0))
        return TSeries(self.field, out, self.order)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        prec = min(c.prec for c in self.coeffs)
        result = TSeries.constant(self.field, 1, self.order, prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale_t(self, c) -> "TSeries":
        """t -> c t."""
        c = Fraction(c)
        return TSeries(self.field, [a * (c ** j) for j, a in enumerate(self.coeffs)], self.order)

    def embed(self, level: int) -> "TSeries":
        target = _level_field(self.field, level)
        return TSeries(target, [c.embed(level) for c in self.coeffs], self.order)

    def frobenius(self) -> "TSeries":
        """sigma on the K_0 factor; eps_n and t are fixed."""
        if not isinstance(self.field, CompositumField):
            return self
        return TSeries(self.field, [c.frobenius() for c in self.coeffs], self.order)

    def gamma_act(self, gamma: int) -> "TSeries":
        """eps_n -> eps_n^gamma on coefficients and t -> gamma t."""
        return TSeries(self.field, [c.galois(gamma) for c in self.coeffs], self.order).scale_t(gamma)

    def t_valuation(self):
        for j, c in enumerate(self.coeffs):
            if not c.is_zero():
                return j
        return INF

    def residual(self, other: "TSeries"):
        """Smallest valuation among coefficient differences (INF when equal at precision)."""
        other = self._check(other)
        return min((d.valuation() for d in (a - b for a, b in zip(self.coeffs, other.coeffs))
                    if not d.is_zero()), default=INF)

    def equals_at_precision(self, other: "TSeries") -> bool:
        return self.residual(other) == INF

    def __repr__(self) -> str:
        terms = [f"{c!r}*t^{j}" for j, c in enumerate(self.coeffs) if not c.is_zero()]
        return (" + ".join(terms) or "0") + f" + O(t^{self.order + 1})"


# exact t-series over Q[x]/(modulus): lists (t-degree) of coordinate lists (x-degree)

def _exact_series_mul(a, b, order: int, modulus) -> List[List[Fraction]]:
    d = len(modulus) - 1
    out = []
    for k in range(order + 1):
        acc = [Fraction(0)] * d
        for j in range(k + 1):
            if any(a[j]) and any(b[k - j]):
                acc = [u + v for u, v in zip(acc, quotient_mul(a[j], b[k - j], modulus))]
        out.append(acc)
    return out


def _exact_series_inverse(a, order: int, modulus) -> List[List[Fraction]]:
    d = len(modulus) - 1
    inv0 = quotient_inverse(a[0], modulus)
    out = [inv0]
    for k in range(1, order + 1):
        acc = [Fraction(0)] * d
        for j in range(1, k + 1):
            acc = [u + v for u, v in zip(acc, quotient_mul(a[j], out[k - j], modulus))]
        out.append([-c for c in quotient_mul(acc, inv0, modulus)])
    return out


def _exact_powers(image, exponents: Iterable[int], order: int, modulus) -> Dict[int, List[List[Fraction]]]:
    """image^i for each requested i, by successive products (one inversion for i < 0)."""
    d = len(modulus) - 1
    exponents = list(exponents)
    one = [[Fraction(1)] + [Fraction(0)] * (d - 1)] + [[Fraction(0)] * d for _ in range(order)]
    powers = {0: one}
    for sign in (1, -1):
        extent = max((sign * i for i in exponents), default=0)
        if extent <= 0:
            continue
        step = image if sign > 0 else _exact_series_inverse(image, order, modulus)
        acc = one
        for k in range(1, extent + 1):
            acc = _exact_series_mul(acc, step, order, modulus)
            powers[sign * k] = acc
    return powers


def _term_bound(i: int, j: int, e: int, p: int) -> Fraction:
    """Lower bound for v_p of the t^j coefficient of theta_n(pi^i)."""
    bound = Fraction(i, e) - Fraction(j, p - 1)
    if i >= 0:
        bound = max(bound, Fraction(i - j, e) - factorial_valuation(j, p))
    return bound


def theta_n(f: RobbaElement, n: int, m: int) -> TSeries:
    """
    Image of f under pi -> (eps_n - 1) + eps_n (exp(t) - 1), to order t^m.

    Coefficients in Q_{p^s}, s > 1, land in the compositum K_0(eps_n) and
    are left alone. The series is summed exactly on the representatives;
    the precision of each t^j coefficient comes from explicit bounds. On the
    disc v_p(t) > 1/(p-1) the image of pi has constant valuation 1/e,
    e = p^(n-1)(p-1), so an error of valuation N in a_i moves the t^j
    coefficient by valuation at least N + i/e - j/(p-1). The unknown tail is
    bounded the same way through its v at radius 1/e.

    Raises
    ------
    InputError
        If f does not converge at eps_n - 1.
    PrecisionError
        If the precision or the tail of f leaves no p-adic digit of some coefficient.
    """
    p = f.p
    if n < 1 or m < 0:
        raise InputError(f"theta_n needs n >= 1 and m >= 0, got n={n}, m={m}")
    e = p ** (n - 1) * (p - 1)
    if f.r < Fraction(1, e):
        raise InputError(f"f converges only for v_p(pi) <= {f.r}, below 1/{e}")
    cyclotomic = cyclotomic_field(p, n)
    modulus = cyclotomic.modulus
    d = cyclotomic.degree
    one = [Fraction(1)] + [Fraction(0)] * (d - 1)
    x = quotient_mul([Fraction(0), Fraction(1)], one, modulus)
    eps = [a + b for a, b in zip(x, one)]
    image = [x] + [[c / math.factorial(j) for c in eps] for j in range(1, m + 1)]

    items = f.items()
    powers = _exact_powers(image, {i for i, _ in items}, m, modulus)
    s = f.field.degree
    sums = [[[Fraction(0)] * d for _ in range(m + 1)] for _ in range(s)]
    for i, a in items:
        for k, q in enumerate(a.coeffs):
            if q:
                for j in range(m + 1):
                    sums[k][j] = [u + q * v for u, v in zip(sums[k][j], powers[i][j])]

    # valuation bounds convert to coordinate precision after losing (e-1)/e
    slack = Fraction(e - 1, e)
    tail_v = f.tail.vs(Fraction(1, e), p) if f.tail is not None else None
    caps = []
    for j in range(m + 1):
        bound = min(c.prec + _term_bound(i, j, e, p) for i, c in enumerate(f.coeffs, f.lo))
        cap = math.ceil(bound - slack)
        if cap <= 0:
            raise PrecisionError(f"coefficient precision of f leaves no digit of the t^{j} coefficient")
        if tail_v is not None:
            loss = min(Fraction(j, e) + factorial_valuation(j, p), Fraction(j, p - 1))
            tail_cap = math.ceil(tail_v - loss - slack)
            if tail_cap <= 0:
                raise PrecisionError(
                    f"tail of f is too large to determine the t^{j} coefficient; enlarge the window"
                )
            cap = min(cap, tail_cap)
        caps.append(cap)

    if s == 1:
        return TSeries(cyclotomic, [CyclotomicElement(cyclotomic, sums[0][j], caps[j]) for j in range(m + 1)], m)
    F = compositum_field(f.field, n)
    coeffs = [
        CompositumElement(F, [CyclotomicElement(cyclotomic, sums[k][j], caps[j]) for k in range(s)], caps[j])
        for j in range(m + 1)
    ]
    return TSeries(F, coeffs, m)


@dataclass
class DiagramCheck:
    """Outcome of comparing two routes around a commutative square."""

    name: str
    ok: bool
    residual: Any
    details: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        residual = "inf" if self.residual == INF else str(self.residual)
        return {"test": self.name, "status": "pass" if self.ok else "fail", "residual": residual,
                **self.details}


def base_change_diagram_check(f: RobbaElement, n: int, m: int) -> DiagramCheck:
    """
    theta_{n+1}(phi f) against theta_n(f) pushed to level n+1 by the bottom
    arrow: sigma on K_0, eps_n fixed, t -> p t.
    """
    p = f.p
    if f.r > Fraction(p, p - 1):
        raise InputError(f"diagram check needs r <= p/(p-1), got {f.r}")
    lhs = theta_n(phi_act(f), n + 1, m)
    rhs = theta_n(f, n, m).frobenius().embed(n + 1).scale_t(p)
    residual = lhs.residual(rhs)
    return DiagramCheck("base_change", residual == INF, residual, {"n": n, "m": m})


def _theta_window(f: RobbaElement, n: int, m: int) -> int:
    """
    Window end for gamma(f) so that its tail leaves a digit in every t^j
    coefficient of theta_n, j <= m. Only polynomials can be extended.
    """
    if f.tail is not None:
        return f.hi
    p = f.p
    e = p ** (n - 1) * (p - 1)
    c = f.min_coefficient_valuation()
    floor_c = 0 if c == INF else min(math.floor(c), 0)
    return max(f.hi, m + e * (factorial_valuation(m, p) + 2 - floor_c))


def theta_gamma_check(f: RobbaElement, n: int, m: int, gamma: int) -> DiagramCheck:
    """theta_n(gamma f) against the Gamma action on theta_n(f)."""
    lhs = theta_n(gamma_act(f, gamma, top=_theta_window(f, n, m)), n, m)
    rhs = theta_n(f, n, m).gamma_act(gamma)
    residual = lhs.residual(rhs)
    return DiagramCheck("theta_gamma", residual == INF, residual, {"n": n, "m": m, "gamma": gamma})


def phi_gamma_commutation_check(f: RobbaElement, gamma: int) -> DiagramCheck:
    lhs = phi_act(gamma_act(f, gamma))
    rhs = gamma_act(phi_act(f), gamma)
    top = min(lhs.hi, rhs.hi)
    diffs = [(lhs.coefficient(i) - rhs.coefficient(i)) for i in range(min(lhs.lo, rhs.lo), top + 1)]
    residual = min((d.valuation() for d in diffs if not d.is_zero()), default=INF)
    return DiagramCheck("phi_gamma_commute", residual == INF, residual, {"gamma": gamma})


# ---------------------------------------------------------------------------
# local modification
# ---------------------------------------------------------------------------

class TPoly:
    """Laurent polynomial in t with coefficients in Q_{p^s}."""

    __slots__ = ("field", "prec", "terms")

    def __init__(self, field: ExtensionField, terms: Dict[int, UnramifiedElement], prec: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "terms", {k: v for k, v in terms.items() if not v.is_zero()})

    def __setattr__(self, key, value):
        raise AttributeError("immutable")

    def _check(self, other) -> "TPoly":
        if isinstance(other, TPoly):
            return other
        return TPoly(self.field, {0: UnramifiedElement(self.field, [Fraction(other)], self.prec)}, self.prec)

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return TPoly(self.field, terms, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return TPoly(self.field, {k: -v for k, v in self.terms.items()}, self.prec)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        terms: Dict[int, UnramifiedElement] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                terms[i + j] = terms[i + j] + a * b if i + j in terms else a * b
        return TPoly(self.field, terms, min(self.prec, other.prec))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def t_valuation(self):
        return min(self.terms) if self.terms else INF

    def shift(self, k: int) -> "TPoly":
        return TPoly(self.field, {i + k: v for i, v in self.terms.items()}, self.prec)

    def to_json(self) -> Dict[str, Any]:
        return {str(k): [str(c) for c in v.coeffs] for k, v in sorted(self.terms.items())}


@dataclass
class LocalModification:
    """P = B_n diag(t^-w) B_n^-1 at the theta_n divisor, with the leading term of det P."""

    matrix: List[List[TPoly]]
    det_t_valuation: int
    det_leading: UnramifiedElement
    level: int
    order: int


def level_basis(FD: FilteredIsocrystal, n: int) -> linalg.Matrix:
    """
    Adapted basis of the flag seen at the theta_n divisor.

    Localizing at level n pulls back through phi^-n, so in the basis of D the
    flag there is phi^n(Fil), spanned by Phi sigma(Phi) ... sigma^(n-1)(Phi) sigma^n(B).
    """
    if n < 1:
        raise InputError(f"levels start at 1, got {n}")
    return linalg.mat_mul(FD.iso.linearized_power(n), linalg.mat_sigma(FD.basis, n))


def local_modification(FD: FilteredIsocrystal, n: int = 1, m: int = 4) -> LocalModification:
    """
    Change-of-lattice matrix sum_i t^-i (projector onto gr^i) at level n,
    built from the adapted basis of the flag localized there.

    The determinant is computed on the polynomial matrix t^(w_max) P, so
    its t-adic valuation is exact.
    """
    field, prec = FD.iso.field, FD.iso.prec
    d = FD.rank
    B = level_basis(FD, n)
    Binv = linalg.inverse(B)
    w_max = max(FD.weights)
    matrix: List[List[TPoly]] = []
    for i in range(d):
        row = []
        for j in range(d):
            terms: Dict[int, UnramifiedElement] = {}
            for k in range(d):
                e = -FD.weights[k]
                contribution = B[i][k] * Binv[k][j]
                terms[e] = terms[e] + contribution if e in terms else contribution
            row.append(TPoly(field, terms, prec))
        matrix.append(row)
    shifted = [[entry.shift(w_max) for entry in row] for row in matrix]
    cp = linalg.charpoly(shifted)
    det_shifted = cp[0] if d % 2 == 0 else -cp[0]
    if det_shifted.is_zero():
        raise PrecisionError("modification matrix is singular at this precision")
    low = det_shifted.t_valuation()
    truncated = [[TPoly(field, {k: v for k, v in e.terms.items() if k <= m}, prec) for e in row] for row in matrix]
    return LocalModification(truncated, low - d * w_max, det_shifted.terms[low], n, m)


def phi_t_ratio_valuation(p: int, m: int = 6, prec: int = 12) -> Fraction:
    """v_p(phi(t)/t), read off the pi^1 coefficients of phi(t) and t."""
    field = unramified_field(p, 1)
    t = t_element(field, m, 1, prec)
    phi_t = phi_act(t)
    ratio = phi_t.coefficient(1) / t.coefficient(1)
    return Fraction(ratio.valuation())


@dataclass
class BergerDegree:
    degree: int
    t_N: int
    t_H: int
    det_t_valuations: Dict[int, int]


def berger_degree(FD: FilteredIsocrystal, n: int = 1, sweep: bool = False) -> BergerDegree:
    """
    deg of the modified phi-module: t_N - t_H, cross-checked level by level.

    phi carries the lattice at the theta_n divisor to the one at theta_{n+1}
    and sends t to phi(t). The modified module therefore has degree
    v_p(det Phi) + v_p(phi applied to the leading term of det P_n)
    - v_p(leading term of det P_{n+1}), which must agree with t_N - t_H.

    Raises
    ------
    ConsistencyError
        If the two computations disagree.
    """
    t_N, t_H = FD.t_N(), FD.t_H()
    levels = [1, 2, 3] if sweep else [n]
    ratio = phi_t_ratio_valuation(FD.iso.p)
    mods: Dict[int, LocalModification] = {}

    def at(level: int) -> LocalModification:
        if level not in mods:
            mods[level] = local_modification(FD, level)
        return mods[level]

    for level in levels:
        here, there = at(level), at(level + 1)
        if here.det_t_valuation != -t_H:
            raise ConsistencyError(
                f"det t-valuation {here.det_t_valuation} differs from -t_H = {-t_H} at level {level}"
            )
        carried = here.det_t_valuation * ratio + here.det_leading.frobenius().valuation()
        cross = t_N + carried - there.det_leading.valuation()
        if cross != t_N - t_H:
            raise ConsistencyError(
                f"degree across levels {level}->{level + 1} is {cross}, not t_N - t_H = {t_N - t_H}"
            )
    get_logger().debug(
        "berger degree computed",
        source="robba.berger_degree",
        category="verify",
        context={"tN": t_N, "tH": t_H, "levels": levels},
    )
    return BergerDegree(t_N - t_H, t_N, t_H, {level: mods[level].det_t_valuation for level in levels})
