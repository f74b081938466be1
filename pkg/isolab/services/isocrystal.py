"""
Isocrystals over Q_{p^s} and filtered isocrystals.

Convention: the Frobenius matrix ``phi`` has the images phi(e_j) as columns,
so phi(v) = Phi sigma(v) and a change of basis P gives P^-1 Phi sigma(P).

Filtrations live on the same coefficient field and are stored by an adapted
basis (columns of ``basis``) with one Hodge-Tate weight per column:
Fil^i = span{b_j : weights[j] >= i}.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from isolab.config import get_settings
from isolab.errors import InputError, PrecisionError, SplittingError
from isolab.services import linalg
from isolab.services.padic_core import (
    INF,
    ExtensionField,
    NewtonPolygon,
    UnramifiedElement,
    newton_polygon_of,
    unramified_field,
)
from isolab.utils.logging import get_logger

Matrix = List[List[UnramifiedElement]]


def hodge_polygon(weights: Sequence[int]) -> NewtonPolygon:
    """Polygon of the sorted weights, from (0, 0) to (len, sum)."""
    return NewtonPolygon.from_slopes(weights)


# ---------------------------------------------------------------------------
# isocrystals
# ---------------------------------------------------------------------------

class Isocrystal:
    """A finite-dimensional Q_{p^s}-space with a sigma-semilinear bijection phi."""

    def __init__(self, field: ExtensionField, phi: Sequence[Sequence[Any]], prec: int):
        if field.kind != "unramified":
            raise InputError("isocrystals are defined over unramified fields")
        d = len(phi)
        if d == 0 or any(len(row) != d for row in phi):
            raise InputError("Frobenius matrix must be square and nonempty")
        self.field = field
        self.prec = prec
        self.phi: Matrix = [[_as_element(field, x, prec) for x in row] for row in phi]
        self._det = None

    @classmethod
    def from_rationals(cls, p: int, phi, s: int = 1, prec: Optional[int] = None) -> "Isocrystal":
        prec = prec or get_settings().default_precision
        return cls(unramified_field(p, s), phi, prec)

    # -- basic invariants ----------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def s(self) -> int:
        return self.field.degree

    @property
    def rank(self) -> int:
        return len(self.phi)

    def one(self) -> UnramifiedElement:
        return UnramifiedElement.one(self.field, self.prec)

    def zero(self) -> UnramifiedElement:
        return UnramifiedElement.zero(self.field, self.prec)

    def determinant(self) -> UnramifiedElement:
        if self._det is None:
            self._det = linalg.det(self.phi)
        return self._det

    def degree(self) -> int:
        """v_p(det Phi)."""
        d = self.determinant()
        if d.is_zero():
            raise PrecisionError(
                f"det(Phi) vanishes modulo p^{d.prec}; increase the precision to resolve the degree"
            )
        return int(d.valuation())

    def slope(self) -> Fraction:
        return Fraction(self.degree(), self.rank)

    # -- Frobenius -----------------------------------------------------------

    def apply_phi(self, v: Sequence[UnramifiedElement]) -> List[UnramifiedElement]:
        return linalg.mat_vec(self.phi, [x.frobenius() for x in v])

    def apply_phi_power(self, v: Sequence[UnramifiedElement], times: int) -> List[UnramifiedElement]:
        for _ in range(times):
            v = self.apply_phi(v)
        return list(v)

    def linearized_power(self, a: Optional[int] = None) -> Matrix:
        """Phi sigma(Phi) ... sigma^(a-1)(Phi), the matrix of phi^a composed with sigma^-a."""
        a = self.s if a is None else a
        result = self.phi
        for k in range(1, a):
            result = linalg.mat_mul(result, linalg.mat_sigma(self.phi, k))
        return result

    def char_poly(self) -> List[UnramifiedElement]:
        """Characteristic polynomial (low to high) of the linear map phi^s."""
        limit = get_settings().newton_max_size
        if self.s * self.rank > limit:
            raise InputError(f"s * rank = {self.s * self.rank} exceeds the configured bound {limit}")
        return linalg.charpoly(self.linearized_power())

    def newton_slopes(self) -> List[Fraction]:
        """Slopes with multiplicity, ascending."""
        coeffs = self.char_poly()
        valuations = [INF if c.is_zero() else c.valuation() for c in coeffs]
        if valuations[0] == INF:
            raise PrecisionError("constant term of the characteristic polynomial vanishes at precision")
        polygon = newton_polygon_of(valuations)
        for i, c in enumerate(coeffs):
            if c.is_zero() and c.prec < polygon.value_at(i):
                raise PrecisionError(
                    f"coefficient of T^{i} is only known modulo p^{c.prec}, below the Newton polygon"
                )
        return sorted(v / self.s for v in polygon.root_valuations())

    def newton_polygon(self) -> NewtonPolygon:
        return NewtonPolygon.from_slopes(self.newton_slopes())

    def change_basis(self, P: Matrix) -> "Isocrystal":
        """Matrix of phi in the basis given by the columns of P."""
        phi = linalg.mat_mul(linalg.mat_mul(linalg.inverse(P), self.phi), linalg.mat_sigma(P))
        return Isocrystal(self.field, phi, self.prec)

    # -- Dieudonne-Manin -------------------------------------------------------

    def restriction_matrix(self, a: int, b: int) -> List[List[Fraction]]:
        """Q_p-matrix of v -> phi^a(v) - p^b v on Q_p^(rank * s)."""
        d, s = self.rank, self.s
        columns = []
        for j in range(d):
            for k in range(s):
                basis = [self.zero() for _ in range(d)]
                basis[j] = UnramifiedElement(self.field, [0] * k + [1], self.prec)
                image = self.apply_phi_power(basis, a)
                shifted = [x - y * Fraction(self.p) ** b for x, y in zip(image, basis)]
                columns.append([c for x in shifted for c in x.coeffs])
        return [[col[i] for col in columns] for i in range(d * s)]

    def eigenvectors(self, a: int, b: int) -> Tuple[List[List[UnramifiedElement]], int]:
        """Q_p-basis of {v : phi^a v = p^b v}, as vectors over Q_{p^s}."""
        vectors, kprec = linalg.qp_kernel(self.restriction_matrix(a, b), self.p, self.prec)
        s = self.s
        out = []
        for vec in vectors:
            out.append([UnramifiedElement(self.field, vec[j * s:(j + 1) * s], max(kprec, 1))
                        for j in range(self.rank)])
        return out, kprec

    def dm_data(self, seed: int = 0, attempts: int = 32) -> "DMData":
        return dm_data(self, seed=seed, attempts=attempts)

    def to_json(self) -> Dict[str, Any]:
        from isolab.utils.serialization import isocrystal_to_json
        return isocrystal_to_json(self)


def _as_element(field: ExtensionField, x, prec: int) -> UnramifiedElement:
    if isinstance(x, UnramifiedElement):
        if x.field != field:
            raise InputError("matrix entry from a different coefficient field")
        return x
    if isinstance(x, (list, tuple)):
        return UnramifiedElement(field, list(x), prec)
    return UnramifiedElement(field, [Fraction(x)], prec)


def standard_block(field: ExtensionField, a: int, b: int, prec: int) -> Matrix:
    """Companion form of slope b/a: ones below the diagonal, p^b in the top right."""
    zero = UnramifiedElement.zero(field, prec)
    one = UnramifiedElement.one(field, prec)
    block = [[zero for _ in range(a)] for _ in range(a)]
    for i in range(1, a):
        block[i][i - 1] = one
    block[0][a - 1] = block[0][a - 1] + Fraction(field.p) ** b
    return block


@dataclass
class DMData:
    """
    Dieudonne-Manin decomposition: standard summands (a, b) of rank a and
    slope b/a, and the basis change whose columns realize them in order.
    """

    summands: List[Tuple[int, int]]
    basis_change: Matrix
    offsets: List[int] = field(default_factory=list)

    def summand_columns(self, index: int) -> List[int]:
        start = self.offsets[index]
        a, _ = self.summands[index]
        return list(range(start, start + a))

    def is_multiplicity_free(self) -> bool:
        return len(set(self.summands)) == len(self.summands)

    def slopes(self) -> List[Fraction]:
        return sorted(Fraction(b, a) for a, b in self.summands for _ in range(a))


def _phi_orbit(D: Isocrystal, v, a: int) -> List[List[UnramifiedElement]]:
    orbit = [list(v)]
    for _ in range(a - 1):
        orbit.append(D.apply_phi(orbit[-1]))
    return orbit


def dm_data(D: Isocrystal, seed: int = 0, attempts: int = 32) -> DMData:
    """
    Split D into standard summands.

    For each reduced slope b/a the fixed space of p^-b phi^a is computed over
    Q_p; a vector v of it gives the summand v, phi v, ..., phi^(a-1) v.
    Vectors are chosen greedily (then by seeded random combinations) while
    they stay independent of the summands already chosen.

    Raises
    ------
    SplittingError
        When the fixed spaces do not fill D over this residue field.
    """
    logger = get_logger()
    slopes = D.newton_slopes()
    counts = Counter(slopes)
    rng = random.Random(seed)
    chosen: List[List[UnramifiedElement]] = []
    summands: List[Tuple[int, int]] = []
    offsets: List[int] = []

    for slope in sorted(counts):
        a, b = slope.denominator, slope.numerator
        needed = counts[slope] // a
        candidates, _ = D.eigenvectors(a, b)
        picked = 0
        pool = list(candidates)
        tries = 0
        while picked < needed and (pool or tries < attempts):
            if pool:
                v = pool.pop(0)
            else:
                tries += 1
                if not candidates:
                    break
                v = _random_combination(candidates, rng)
            orbit = _phi_orbit(D, v, a)
            trial = chosen + orbit
            if linalg.rank(linalg.from_columns(trial)) == len(trial):
                offsets.append(len(chosen))
                chosen = trial
                summands.append((a, b))
                picked += 1
        if picked < needed:
            logger.warning(
                "Dieudonne-Manin splitting unavailable",
                source="isocrystal.dm_data",
                context={"slope": str(slope), "needed": needed, "found": picked, "s": D.s},
            )
            raise SplittingError(
                f"DM unavailable: slope {slope} splits only {picked}/{needed} times over F_{{{D.p}^{D.s}}}; "
                "retry with a larger residue degree"
            )
    return DMData(summands, linalg.from_columns(chosen), offsets)


def dm_normal_form(D: Isocrystal, dm: DMData) -> Matrix:
    """B^-1 Phi sigma(B) for the basis change B of ``dm``."""
    return D.change_basis(dm.basis_change).phi


def expected_normal_form(D: Isocrystal, dm: DMData) -> Matrix:
    blocks = [standard_block(D.field, a, b, D.prec) for a, b in dm.summands]
    return linalg.block_diag(blocks, D.zero())


def _random_combination(vectors, rng: random.Random):
    total = None
    for vec in vectors:
        c = rng.randint(-3, 3)
        if c == 0:
            continue
        scaled = [x * c for x in vec]
        total = scaled if total is None else [x + y for x, y in zip(total, scaled)]
    if total is None:
        return list(vectors[0])
    return total


# ---------------------------------------------------------------------------
# filtered isocrystals
# ---------------------------------------------------------------------------

class FilteredIsocrystal:
    """An isocrystal with a decreasing exhaustive filtration, by adapted basis."""

    def __init__(self, iso: Isocrystal, basis: Matrix, weights: Sequence[int]):
        d = iso.rank
        if len(basis) != d or any(len(row) != d for row in basis) or len(weights) != d:
            raise InputError("adapted basis must be square of the isocrystal's rank")
        if linalg.rank(basis) != d:
            raise InputError("adapted basis is not invertible at this precision")
        self.iso = iso
        self.basis = [list(row) for row in basis]
        self.weights = [int(w) for w in weights]

    @classmethod
    def from_flags(cls, iso: Isocrystal, hodge: Sequence[int],
                   flags: Mapping[int, Sequence[Sequence[Any]]]) -> "FilteredIsocrystal":
        """
        Build from spanning sets of Fil^i (columns of ``flags[i]``) at each jump i.

        The flag at the lowest jump may be omitted (it is all of D). Working
        down from the highest jump, each flag's columns extend the basis chosen
        so far whenever they raise its rank.
        """
        d = iso.rank
        if len(hodge) != d:
            raise InputError(f"{len(hodge)} Hodge-Tate weights for rank {d}")
        jumps = sorted(set(int(h) for h in hodge))
        unknown = set(int(i) for i in flags) - set(jumps)
        if unknown:
            raise InputError(f"flags given at non-jumps {sorted(unknown)}")
        chosen: List[List[UnramifiedElement]] = []
        weights: List[int] = []
        for i in reversed(jumps):
            target = sum(1 for h in hodge if h >= i)
            if i in flags or str(i) in flags:
                raw = flags[i] if i in flags else flags[str(i)]
                F = [[_as_element(iso.field, x, iso.prec) for x in row] for row in raw]
                if len(F) != d:
                    raise InputError(f"flag Fil^{i} must have {d} rows")
                cols = linalg.columns(F)
            elif i == jumps[0]:
                cols = linalg.columns(linalg.identity(d, iso.one()))
            else:
                raise InputError(f"missing flag for jump {i}")
            if i in flags or str(i) in flags:
                if linalg.rank(linalg.from_columns(cols)) != target:
                    raise InputError(f"Fil^{i} has the wrong dimension (expected {target})")
                if chosen and linalg.rank(linalg.from_columns(list(cols) + chosen)) != target:
                    raise InputError(f"filtration is not decreasing at Fil^{i}")
            for col in cols:
                if len(chosen) == target:
                    break
                trial = chosen + [list(col)]
                if linalg.rank(linalg.from_columns(trial)) == len(trial):
                    chosen = trial
                    weights.append(i)
            if len(chosen) != target:
                raise InputError(f"flag dimensions inconsistent at Fil^{i}")
        return cls(iso, linalg.from_columns(chosen), weights)

    # -- invariants ------------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.iso.rank

    def hodge_tate_weights(self) -> List[int]:
        return sorted(self.weights)

    def t_N(self) -> int:
        return self.iso.degree()

    def t_H(self) -> int:
        return sum(self.weights)

    def hodge_polygon(self) -> NewtonPolygon:
        return hodge_polygon(self.weights)

    def newton_polygon(self) -> NewtonPolygon:
        return self.iso.newton_polygon()

    def fil(self, i: int) -> List[List[UnramifiedElement]]:
        """Basis columns of Fil^i."""
        cols = linalg.columns(self.basis)
        return [c for c, w in zip(cols, self.weights) if w >= i]

    # -- sub-objects -------------------------------------------------------------

    def sub_t_N(self, V: Sequence[Sequence[UnramifiedElement]]) -> int:
        """Degree of the phi-stable subspace spanned by the columns ``V``."""
        Vm = linalg.from_columns(V)
        rows = linalg.independent_rows(Vm)
        image = linalg.from_columns([self.iso.apply_phi(v) for v in V])
        square = [Vm[i] for i in rows]
        A = linalg.mat_mul(linalg.inverse(square), [image[i] for i in rows])
        d = linalg.det(A)
        if d.is_zero():
            raise PrecisionError("restricted Frobenius is singular at this precision")
        return int(d.valuation())

    def sub_t_H(self, V: Sequence[Sequence[UnramifiedElement]]) -> int:
        """Sum of the weights of the induced filtration on span(V)."""
        k = len(V)
        levels = sorted(set(self.weights))
        dims = []
        for i in levels:
            F = self.fil(i)
            joined = linalg.rank(linalg.from_columns(list(V) + F)) if F else k
            dims.append(k + len(F) - joined)
        dims.append(0)
        return sum(i * (dims[n] - dims[n + 1]) for n, i in enumerate(levels))

    # -- constructions -------------------------------------------------------------

    def tensor(self, other: "FilteredIsocrystal") -> "FilteredIsocrystal":
        return tensor(self, other)

    def to_json(self) -> Dict[str, Any]:
        from isolab.utils.serialization import filtered_to_json
        return filtered_to_json(self)


def unit_object(field: ExtensionField, prec: int, phi_scalar=1, weight: int = 0) -> FilteredIsocrystal:
    """Rank-one filtered isocrystal with Phi = (phi_scalar) and one weight."""
    iso = Isocrystal(field, [[phi_scalar]], prec)
    return FilteredIsocrystal(iso, [[iso.one()]], [weight])


def tensor(A: FilteredIsocrystal, B: FilteredIsocrystal) -> FilteredIsocrystal:
    """Kronecker products of Frobenius and adapted bases; weights add pairwise."""
    if A.iso.field != B.iso.field:
        raise InputError("tensor product needs a common coefficient field")
    prec = min(A.iso.prec, B.iso.prec)
    iso = Isocrystal(A.iso.field, linalg.kronecker(A.iso.phi, B.iso.phi), prec)
    basis = linalg.kronecker(A.basis, B.basis)
    weights = [wa + wb for wa in A.weights for wb in B.weights]
    return FilteredIsocrystal(iso, basis, weights)


def dual(A: FilteredIsocrystal) -> FilteredIsocrystal:
    """Frobenius (Phi^T)^-1; dual adapted basis with negated weights."""
    phi = linalg.inverse(linalg.transpose(A.iso.phi))
    iso = Isocrystal(A.iso.field, phi, A.iso.prec)
    basis = linalg.transpose(linalg.inverse(A.basis))
    return FilteredIsocrystal(iso, basis, [-w for w in A.weights])


def direct_sum(A: FilteredIsocrystal, B: FilteredIsocrystal) -> FilteredIsocrystal:
    if A.iso.field != B.iso.field:
        raise InputError("direct sum needs a common coefficient field")
    zero = A.iso.zero()
    prec = min(A.iso.prec, B.iso.prec)
    iso = Isocrystal(A.iso.field, linalg.block_diag([A.iso.phi, B.iso.phi], zero), prec)
    basis = linalg.block_diag([A.basis, B.basis], zero)
    return FilteredIsocrystal(iso, basis, A.weights + B.weights)


def twist(A: FilteredIsocrystal, b: int, i: Optional[int] = None) -> FilteredIsocrystal:
    """
    Tensor with the rank-one object (p^b, weight i).

    ``i`` defaults to ``b``, the Tate twist, which preserves weak admissibility.
    """
    weight = b if i is None else i
    unit = unit_object(A.iso.field, A.iso.prec, Fraction(A.iso.p) ** b, weight)
    return tensor(A, unit)


# ---------------------------------------------------------------------------
# weak admissibility
# ---------------------------------------------------------------------------

@dataclass
class WADecision:
    """
    Outcome of the weak-admissibility test.

    ``status`` is ``"true"``, ``"false"`` or ``"unknown"``. ``witness`` is a
    list of summand indices (exact path), a list of basis columns (search
    path) or None.
    """

    status: str
    t_N: int
    t_H: int
    path: str
    witness: Optional[Any] = None
    evidence: List[str] = field(default_factory=list)

    @property
    def decided(self) -> bool:
        return self.status != "unknown"

    def to_json(self) -> Dict[str, Any]:
        from isolab.utils.serialization import decision_to_json
        return decision_to_json(self)


def weakly_admissible(FD: FilteredIsocrystal, samples: int = 200, seed: int = 0) -> WADecision:
    """
    Decide weak admissibility.

    When the Dieudonne-Manin splitting exists and is multiplicity free, the
    sub-isocrystals are exactly the sums of summands, so every subset is
    checked. Otherwise the search path applies the necessary tests and then
    looks for violating phi-stable subspaces among phi-closures of random
    eigenvector combinations.
    """
    logger = get_logger()
    t_N, t_H = FD.t_N(), FD.t_H()
    try:
        dm = FD.iso.dm_data(seed=seed)
    except SplittingError as e:
        dm = None
        reason = str(e)
    else:
        reason = "" if dm.is_multiplicity_free() else "repeated Dieudonne-Manin summands"

    if dm is not None and dm.is_multiplicity_free():
        decision = _exact_path(FD, dm, t_N, t_H)
    else:
        decision = _search_path(FD, t_N, t_H, samples, seed)
        decision.evidence.insert(0, f"exact path unavailable: {reason}")
    logger.debug(
        f"weak admissibility: {decision.status}",
        source="isocrystal.weakly_admissible",
        category="verify",
        context={"path": decision.path, "tN": t_N, "tH": t_H},
    )
    return decision


def _exact_path(FD: FilteredIsocrystal, dm: DMData, t_N: int, t_H: int) -> WADecision:
    if t_N != t_H:
        return WADecision("false", t_N, t_H, "exact", None, [f"t_N = {t_N} != t_H = {t_H}"])
    cols = linalg.columns(dm.basis_change)
    k = len(dm.summands)
    for size in range(1, k):
        for subset in combinations(range(k), size):
            V = [cols[c] for idx in subset for c in dm.summand_columns(idx)]
            sub_n = sum(dm.summands[idx][1] for idx in subset)
            sub_h = FD.sub_t_H(V)
            if sub_n < sub_h:
                return WADecision(
                    "false", t_N, t_H, "exact", list(subset),
                    [f"summands {list(subset)}: t_N = {sub_n} < t_H = {sub_h}"],
                )
    return WADecision("true", t_N, t_H, "exact")


def _phi_closure(FD: FilteredIsocrystal, vectors) -> List[List[UnramifiedElement]]:
    span: List[List[UnramifiedElement]] = []
    frontier = [list(v) for v in vectors]
    while frontier:
        v = frontier.pop(0)
        trial = span + [v]
        if linalg.rank(linalg.from_columns(trial)) == len(trial):
            span = trial
            frontier.append(FD.iso.apply_phi(v))
    return span


def _eigen_pool(FD: FilteredIsocrystal) -> List[List[UnramifiedElement]]:
    pool = []
    for slope in sorted(set(FD.iso.newton_slopes())):
        vectors, _ = FD.iso.eigenvectors(slope.denominator, slope.numerator)
        pool.extend(vectors)
    return pool


def _slopes_dominate_weights(FD: FilteredIsocrystal) -> bool:
    slopes = FD.iso.newton_slopes()
    weights = sorted(FD.weights, reverse=True)
    return all(sum(slopes[:k]) >= sum(weights[:k]) for k in range(1, FD.rank))


def _search_path(FD: FilteredIsocrystal, t_N: int, t_H: int, samples: int, seed: int) -> WADecision:
    evidence: List[str] = []
    if t_N != t_H:
        return WADecision("false", t_N, t_H, "search", None, [f"t_N = {t_N} != t_H = {t_H}"])
    if not FD.hodge_polygon().lies_on_or_below(FD.newton_polygon()):
        return WADecision("false", t_N, t_H, "search", None, ["Hodge polygon lies above the Newton polygon"])
    evidence.append("Hodge polygon lies on or below the Newton polygon")
    if _slopes_dominate_weights(FD):
        # t_N(D') >= k smallest slopes >= k largest weights >= t_H(D')
        evidence.append("each sum of k smallest slopes is at least the sum of the k largest weights")
        return WADecision("true", t_N, t_H, "search", None, evidence)

    pool = _eigen_pool(FD)
    if not pool:
        evidence.append("no Frobenius eigenvectors found at this residue degree")
        return WADecision("unknown", t_N, t_H, "search", None, evidence)
    rng = random.Random(seed)
    seen = set()
    tested = 0
    d = FD.rank
    for attempt in range(samples):
        if attempt < len(pool):
            seeds = [pool[attempt]]
        else:
            seeds = [_random_combination(pool, rng) for _ in range(rng.randint(1, 2))]
        V = _phi_closure(FD, seeds)
        if not 0 < len(V) < d:
            continue
        key = tuple(tuple(x.coeffs for x in col) for col in V)
        if key in seen:
            continue
        seen.add(key)
        tested += 1
        sub_n, sub_h = FD.sub_t_N(V), FD.sub_t_H(V)
        if sub_n < sub_h:
            evidence.append(f"subspace of dimension {len(V)}: t_N = {sub_n} < t_H = {sub_h}")
            return WADecision("false", t_N, t_H, "search", V, evidence)
    evidence.append(f"{tested} distinct phi-stable subspaces tested, none violating")
    return WADecision("unknown", t_N, t_H, "search", None, evidence)


def exhaustive_wa(FD: FilteredIsocrystal) -> bool:
    """
    Brute-force check over phi-closures of every subset of the eigenvector basis.

    Only meaningful when these closures exhaust the sub-isocrystals, as they
    do for split isocrystals of small rank.
    """
    if FD.t_N() != FD.t_H():
        return False
    pool = _eigen_pool(FD)
    d = FD.rank
    for size in range(1, len(pool) + 1):
        for subset in combinations(pool, size):
            V = _phi_closure(FD, subset)
            if 0 < len(V) < d and FD.sub_t_N(V) < FD.sub_t_H(V):
                return False
    return True
