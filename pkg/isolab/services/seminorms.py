"""
Multiplicative seminorm evaluators and the lambda / mu transfer maps between
seminorms on a perfect ring R and on its Witt vectors W(R).

Values are carried as exact -log coordinates: a :class:`SeminormValue` with
``neg_log = v`` and ``base = b`` stands for b^(-v), with v = INF for 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from isolab.errors import InputError
from isolab.services.padic_core import INF, PadicScalar, ExtensionElement, valuation_of_int, valuation_of_rational
from isolab.services.perfect_rings import FqElement, PerfectLaurentElement
from isolab.services.witt import WittVector, specialize_X_to_p, teichmuller

EXACT = "exact"
UPPER = "upper"  # true value <= reported value
LOWER = "lower"  # true value >= reported value

NegLog = Union[Fraction, float]


@dataclass(frozen=True)
class SeminormValue:
    """
    The number base^(-neg_log), optionally only a bound.

    ``bound`` is ``"exact"``, ``"upper"`` (the true value is at most this) or
    ``"lower"`` (the true value is at least this).
    """

    neg_log: NegLog
    base: Fraction
    bound: str = EXACT

    def __post_init__(self):
        if self.neg_log != INF:
            object.__setattr__(self, "neg_log", Fraction(self.neg_log))
        object.__setattr__(self, "base", Fraction(self.base))
        if self.bound not in (EXACT, UPPER, LOWER):
            raise InputError(f"unknown bound flag {self.bound!r}")

    @classmethod
    def zero(cls, base) -> "SeminormValue":
        return cls(INF, Fraction(base))

    @classmethod
    def one(cls, base) -> "SeminormValue":
        return cls(Fraction(0), Fraction(base))

    @property
    def exact(self) -> bool:
        return self.bound == EXACT

    def is_zero(self) -> bool:
        return self.neg_log == INF

    def as_float(self) -> float:
        if self.neg_log == INF:
            return 0.0
        return float(self.base) ** (-float(self.neg_log))

    def __mul__(self, other: "SeminormValue") -> "SeminormValue":
        self._same_base(other)
        bound = _combine_bounds(self.bound, other.bound)
        return SeminormValue(self.neg_log + other.neg_log, self.base, bound)

    def power(self, c: Fraction) -> "SeminormValue":
        c = Fraction(c)
        if c <= 0:
            raise InputError(f"seminorm exponent must be positive, got {c}")
        neg_log = INF if self.neg_log == INF else self.neg_log * c
        return SeminormValue(neg_log, self.base, self.bound)

    def _same_base(self, other: "SeminormValue") -> None:
        if self.base != other.base and not (self.neg_log in (0, INF) or other.neg_log in (0, INF)):
            raise InputError(f"cannot combine values in bases {self.base} and {other.base}")

    def compare(self, other: "SeminormValue") -> int:
        """-1, 0, 1 comparing the reported values (bounds ignored)."""
        if self.base == other.base or INF in (self.neg_log, other.neg_log) or 0 in (self.neg_log, other.neg_log):
            a, b = self.neg_log, other.neg_log
            return (a < b) - (a > b)
        x, y = self.as_float(), other.as_float()
        return (x > y) - (x < y)

    def is_at_least(self, other: "SeminormValue") -> Optional[bool]:
        """
        Whether the true value of self is >= the true value of other.

        ``None`` when the bound flags leave the answer undecided.
        """
        cmp = self.compare(other)
        if self.exact and other.exact:
            return cmp >= 0
        if cmp >= 0:
            # self may be smaller than reported, or other larger
            if self.bound != UPPER and other.bound != LOWER:
                return True
            return None
        if self.bound != LOWER and other.bound != UPPER:
            return False
        return None

    def to_json(self, p: Optional[int] = None) -> Dict[str, Any]:
        """
        ``neg_log`` is -log of the value in ``base``. ``neg_log_p`` is added
        when the value is also an exact power of the prime ``p``.
        """
        neg_log = "inf" if self.neg_log == INF else str(self.neg_log)
        document = {"neg_log": neg_log, "base": str(self.base), "exact": self.exact, "bound": self.bound}
        if p is not None and (self.base == p or self.neg_log in (0, INF)):
            document["neg_log_p"] = neg_log
        return document

    def __repr__(self) -> str:
        if self.neg_log == INF:
            return "0"
        flag = "" if self.exact else f" ({self.bound} bound)"
        return f"{self.base}^(-{self.neg_log}){flag}"


def _combine_bounds(a: str, b: str) -> str:
    if a == EXACT:
        return b
    if b == EXACT or a == b:
        return a
    raise InputError("cannot combine an upper bound with a lower bound")


def seminorm_max(values: Sequence[SeminormValue]) -> SeminormValue:
    best = values[0]
    for v in values[1:]:
        if v.compare(best) > 0:
            best = v
    return best


def _is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    if isinstance(x, (list, tuple)):
        return all(_is_zero(c) for c in x)
    return x.is_zero()


# ---------------------------------------------------------------------------
# evaluators
# ---------------------------------------------------------------------------

class PointEvaluator:
    """A point of a Gel'fand spectrum: evaluates elements of its domain."""

    kind = "abstract"

    def evaluate(self, x) -> SeminormValue:  # pragma: no cover - interface
        raise NotImplementedError

    @property
    def base(self) -> Fraction:
        return Fraction(2)

    def is_trivial(self) -> bool:
        return False

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind}


@dataclass(frozen=True)
class TrivialNorm(PointEvaluator):
    """1 on every nonzero element."""

    p: int = 2
    kind = "trivial"

    @property
    def base(self) -> Fraction:
        return Fraction(self.p)

    def evaluate(self, x) -> SeminormValue:
        return SeminormValue(INF if _is_zero(x) else Fraction(0), self.p)

    def is_trivial(self) -> bool:
        return True

    def to_json(self):
        return {"kind": self.kind, "p": self.p}


@dataclass(frozen=True)
class PadicAbsolute(PointEvaluator):
    """Normalized p-adic absolute value on Q and Q_p (|p| = 1/p)."""

    p: int
    kind = "padic"

    @property
    def base(self) -> Fraction:
        return Fraction(self.p)

    def evaluate(self, x) -> SeminormValue:
        if isinstance(x, (int, Fraction)):
            return SeminormValue(Fraction(valuation_of_rational(x, self.p)) if x else INF, self.p)
        if isinstance(x, PadicScalar):
            if x.is_zero():
                return SeminormValue(Fraction(x.prec), self.p, UPPER)
            return SeminormValue(Fraction(x.val), self.p)
        if isinstance(x, ExtensionElement):
            if x.is_zero():
                return SeminormValue(Fraction(x.prec), self.p, UPPER)
            return SeminormValue(x.valuation(), self.p)
        raise InputError(f"p-adic norm is not defined on {type(x).__name__}")

    def to_json(self):
        return {"kind": self.kind, "p": self.p}


@dataclass(frozen=True)
class CombPoint(PointEvaluator):
    """
    The point of Spec Z with n = p^a m -> (1 - c)^a, for 0 <= c <= 1.

    c = 0 is the trivial norm and c = 1 the seminorm |n mod p|. Values are
    reported in the base 1/(1 - c), so (1 - c)^a has neg_log a.
    """

    p: int
    c: Fraction
    kind = "comb"

    def __post_init__(self):
        c = Fraction(self.c)
        if not 0 <= c <= 1:
            raise InputError(f"comb parameter must lie in [0, 1], got {c}")
        object.__setattr__(self, "c", c)

    @property
    def base(self) -> Fraction:
        if self.c in (0, 1):
            return Fraction(self.p)
        return 1 / (1 - self.c)

    def is_trivial(self) -> bool:
        return self.c == 0

    def plane_coordinates(self) -> Tuple[Fraction, Fraction]:
        """Position (c/p, c/p^2) of the point when the comb is drawn in the plane."""
        return self.c / self.p, self.c / self.p ** 2

    def evaluate(self, x) -> SeminormValue:
        if not isinstance(x, int):
            raise InputError(f"comb points evaluate integers, got {type(x).__name__}")
        if x == 0:
            return SeminormValue(INF, self.base)
        a = valuation_of_int(x, self.p)
        if self.c == 0:
            return SeminormValue(Fraction(0), self.base)
        if self.c == 1:
            return SeminormValue(INF if a > 0 else Fraction(0), self.base)
        return SeminormValue(Fraction(a), self.base)

    def to_json(self):
        return {"kind": self.kind, "p": self.p, "c": str(self.c)}


@dataclass(frozen=True)
class GaussNorm(PointEvaluator):
    """sum a_i T^i -> max_i base(a_i) on polynomials given as coefficient lists."""

    inner: PointEvaluator
    kind = "gauss"

    @property
    def base(self) -> Fraction:
        return self.inner.base

    def evaluate(self, x) -> SeminormValue:
        if not isinstance(x, (list, tuple)):
            raise InputError("Gauss norm evaluates coefficient lists")
        if not x:
            return SeminormValue.zero(self.base)
        return seminorm_max([self.inner.evaluate(c) for c in x])

    def to_json(self):
        return {"kind": self.kind, "base": self.inner.to_json()}


@dataclass(frozen=True)
class DiscPoint(PointEvaluator):
    """
    f -> max_i |f^(i)(z) / i!| r^i on Q[T], with r = p^(-radius_neg_log).

    ``radius_neg_log = INF`` is the radius-0 point f -> |f(z)|.
    """

    p: int
    z: Fraction
    radius_neg_log: NegLog
    kind = "disc"

    def __post_init__(self):
        object.__setattr__(self, "z", Fraction(self.z))
        if self.radius_neg_log != INF:
            object.__setattr__(self, "radius_neg_log", Fraction(self.radius_neg_log))

    @property
    def base(self) -> Fraction:
        return Fraction(self.p)

    def taylor_coefficients(self, f: Sequence) -> List[Fraction]:
        """Coefficients of f(z + T), computed exactly with binomials."""
        coeffs = [Fraction(a) for a in f]
        out = []
        for i in range(len(coeffs)):
            out.append(sum((comb(k, i) * coeffs[k] * self.z ** (k - i) for k in range(i, len(coeffs))),
                           Fraction(0)))
        return out

    def evaluate(self, x) -> SeminormValue:
        if not isinstance(x, (list, tuple)):
            raise InputError("disc points evaluate coefficient lists")
        best: NegLog = INF
        for i, t in enumerate(self.taylor_coefficients(x)):
            if t == 0:
                continue
            if i > 0 and self.radius_neg_log == INF:
                continue
            term = valuation_of_rational(t, self.p) + (i * self.radius_neg_log if i else 0)
            best = min(best, term)
        return SeminormValue(best, self.p)

    def to_json(self):
        r = "inf" if self.radius_neg_log == INF else str(self.radius_neg_log)
        return {"kind": self.kind, "p": self.p, "z": str(self.z), "radius_neg_log": r}


@dataclass(frozen=True)
class XAdicPoint(PointEvaluator):
    """x -> p^(-const * v_X(x)) on the perfected polynomial ring."""

    p: int
    const: Fraction = Fraction(1)
    kind = "x_adic"

    def __post_init__(self):
        const = Fraction(self.const)
        if const <= 0:
            raise InputError("X-adic normalization constant must be positive")
        object.__setattr__(self, "const", const)

    @property
    def base(self) -> Fraction:
        return Fraction(self.p)

    def evaluate(self, x) -> SeminormValue:
        if isinstance(x, FqElement):
            return SeminormValue(INF if x.is_zero() else Fraction(0), self.p)
        if not isinstance(x, PerfectLaurentElement):
            raise InputError(f"X-adic point evaluates perfect ring elements, got {type(x).__name__}")
        v = x.x_adic_valuation()
        return SeminormValue(INF if v == INF else self.const * v, self.p)

    def to_json(self):
        return {"kind": self.kind, "p": self.p, "const": str(self.const)}


@dataclass(frozen=True)
class WittPoint(PointEvaluator):
    """
    A point of W(R): either lambda(inner) for a point ``inner`` of R, or the
    specialization W(R) -> W(R)/([X] - p) followed by the p-adic norm.
    """

    p: int
    mode: str
    inner: Optional[PointEvaluator] = None
    kind = "witt"

    def __post_init__(self):
        if self.mode not in ("lambda", "x_to_p"):
            raise InputError(f"unknown Witt point mode {self.mode!r}")
        if self.mode == "lambda" and self.inner is None:
            raise InputError("lambda points need a seminorm on R")

    @property
    def base(self) -> Fraction:
        return Fraction(self.p)

    def evaluate(self, x) -> SeminormValue:
        if not isinstance(x, WittVector):
            raise InputError(f"Witt points evaluate Witt vectors, got {type(x).__name__}")
        if self.mode == "lambda":
            return lambda_map(self.inner, x)
        result = specialize_X_to_p(x)
        return SeminormValue(result.valuation, self.p, EXACT if result.exact else UPPER)

    def to_json(self):
        payload = {"kind": self.kind, "p": self.p, "mode": self.mode}
        if self.inner is not None:
            payload["inner"] = self.inner.to_json()
        return payload


@dataclass(frozen=True)
class MuPoint(PointEvaluator):
    """mu(beta): r -> beta([r]) for a point beta of W(R), at Witt length n."""

    beta: PointEvaluator
    length: int
    kind = "mu"

    @property
    def base(self) -> Fraction:
        return self.beta.base

    def evaluate(self, x) -> SeminormValue:
        return mu_map(self.beta, x, self.length)

    def to_json(self):
        return {"kind": self.kind, "beta": self.beta.to_json(), "length": self.length}


@dataclass(frozen=True)
class PowerOf(PointEvaluator):
    """x -> inner(x)^c."""

    inner: PointEvaluator
    c: Fraction
    kind = "power"

    def __post_init__(self):
        c = Fraction(self.c)
        if c <= 0:
            raise InputError(f"seminorm exponent must be positive, got {c}")
        object.__setattr__(self, "c", c)

    @property
    def base(self) -> Fraction:
        return self.inner.base

    def is_trivial(self) -> bool:
        return self.inner.is_trivial()

    def evaluate(self, x) -> SeminormValue:
        return self.inner.evaluate(x).power(self.c)

    def to_json(self):
        return {"kind": self.kind, "inner": self.inner.to_json(), "c": str(self.c)}


def evaluate(e: PointEvaluator, x) -> SeminormValue:
    return e.evaluate(x)


# ---------------------------------------------------------------------------
# transfer maps
# ---------------------------------------------------------------------------

def lambda_map(alpha: PointEvaluator, w: WittVector) -> SeminormValue:
    """
    lambda(alpha)(sum p^i [x_i]) = max_i p^(-i) alpha(x_i).

    Values at or below p^(-n) are only upper bounds for a length-n vector.
    """
    if alpha.base != w.p and not alpha.is_trivial():
        raise InputError(f"lambda needs a seminorm normalized in base {w.p}")
    n = w.length
    digits = w.teichmuller_digits() if w.is_char_p() else w.components
    best: NegLog = INF
    for i, x in enumerate(digits):
        value = alpha.evaluate(x)
        if value.neg_log != INF:
            best = min(best, i + value.neg_log)
    if best < n:
        return SeminormValue(best, w.p)
    return SeminormValue(Fraction(n), w.p, UPPER)


def mu_map(beta: PointEvaluator, r, length: int = 3) -> SeminormValue:
    """mu(beta)(r) = beta([r]), evaluated at Witt length ``length``."""
    return beta.evaluate(teichmuller(r, length))


def vr_tilde(w: WittVector, r: Fraction) -> SeminormValue:
    """
    min_i (i + r v_X(x_i)) as a value in base p (so p^(-v_r) is the norm).

    Exact when the minimum is below the Witt length.
    """
    r = Fraction(r)
    if r <= 0:
        raise InputError(f"r must be positive, got {r}")
    n = w.length
    if not all(isinstance(x, PerfectLaurentElement) for x in w.components):
        raise InputError("v_r needs components in the perfected Laurent ring")
    best: NegLog = INF
    for i, x in enumerate(w.teichmuller_digits()):
        v = x.x_adic_valuation()
        if v != INF:
            best = min(best, i + r * v)
    if best != INF and best < n:
        return SeminormValue(best, w.p)
    if best != INF:
        return SeminormValue(best, w.p, UPPER)
    return SeminormValue(Fraction(n), w.p, UPPER)


def omega_neg_log(p: int) -> Fraction:
    """-log_p omega for omega = p^(-p/(p-1))."""
    return Fraction(p, p - 1)


def log_omega(rho_neg_log: NegLog, p: int) -> Fraction:
    """log_omega(rho) for rho = p^(-rho_neg_log)."""
    return Fraction(rho_neg_log) / omega_neg_log(p)


def seminorm_power(e: PointEvaluator, c) -> PointEvaluator:
    c = Fraction(c)
    if c <= 0:
        raise InputError(f"seminorm exponent must be positive, got {c}")
    if e.is_trivial() or c == 1:
        return e
    if isinstance(e, PowerOf):
        return PowerOf(e.inner, e.c * c)
    return PowerOf(e, c)


# ---------------------------------------------------------------------------
# axiom checks
# ---------------------------------------------------------------------------

# (a) ultrametric, (b) |0| = 0, (b') |g| = 0 only for g = 0,
# (c) |1| = 1 and submultiplicative, (c') |1| = 1 and multiplicative
AXIOMS: Dict[str, str] = {
    "a": "ultrametric",
    "b": "zero",
    "b'": "definite",
    "c": "submultiplicative",
    "c'": "multiplicative",
}


@dataclass
class AxiomReport:
    """Counts of checked pairs and, per axiom, the first few violating samples."""

    checked: int = 0
    failures: Dict[str, List[Tuple[Any, ...]]] = field(default_factory=lambda: {a: [] for a in AXIOMS})

    def holds(self, axiom: str) -> bool:
        if axiom not in AXIOMS:
            raise InputError(f"unknown axiom {axiom!r}; choose from {sorted(AXIOMS)}")
        return not self.failures[axiom]

    @property
    def ok(self) -> bool:
        """A multiplicative seminorm: (a), (b), (c) and (c')."""
        return all(self.holds(a) for a in ("a", "b", "c", "c'"))

    @property
    def is_norm(self) -> bool:
        return self.ok and self.holds("b'")

    def to_json(self) -> Dict[str, Any]:
        return {
            "checked": self.checked,
            "axioms": {a: {"name": name, "holds": self.holds(a), "failures": len(self.failures[a])}
                       for a, name in AXIOMS.items()},
        }


def check_seminorm_axioms(e: PointEvaluator, sample: Callable[[random.Random], Any],
                          pairs: int = 200, seed: int = 0, keep: int = 5, one: Any = 1) -> AxiomReport:
    """
    Report which of the axioms (a), (b), (b'), (c), (c') hold on random pairs.

    ``one`` is the unit of the sampled ring; zero is ``one - one``. Pairs
    whose values are only bounds are counted but not judged.
    """
    rng = random.Random(seed)
    report = AxiomReport()

    def fail(axiom: str, *witness) -> None:
        if len(report.failures[axiom]) < keep:
            report.failures[axiom].append(witness)

    if not e.evaluate(one - one).is_zero():
        fail("b", one - one)
    unit = e.evaluate(one)
    if unit.exact and unit.neg_log != 0:
        fail("c", one)
        fail("c'", one)

    for _ in range(pairs):
        a, b = sample(rng), sample(rng)
        ea, eb = e.evaluate(a), e.evaluate(b)
        report.checked += 1
        for x, ex in ((a, ea), (b, eb)):
            if ex.exact and ex.is_zero() and not _is_zero(x):
                fail("b'", x)
        if not (ea.exact and eb.exact):
            continue
        product = e.evaluate(a * b)
        if product.exact:
            cmp = product.compare(_product_value(ea, eb))
            if cmp > 0:
                fail("c", a, b)
            if cmp != 0:
                fail("c'", a, b)
        top = seminorm_max([ea, eb])
        for combined in (a + b, a - b):
            if e.evaluate(combined).compare(top) > 0:
                fail("a", a, b)
    return report


def _product_value(a: SeminormValue, b: SeminormValue) -> SeminormValue:
    if a.is_zero() or b.is_zero():
        return SeminormValue(INF, a.base)
    base = a.base if a.neg_log != 0 else b.base
    return SeminormValue(a.neg_log + b.neg_log, base)
