"""
Property suites behind ``isolab verify`` and ``isolab robba check``.

Every suite draws from one ``random.Random(seed)`` and returns a report
``{"suite", "seed", "passed", "checks": [{"test", "status", "residual", "detail"}]}``
with no timestamps, so two runs with the same seed serialize identically.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List

from pydantic import BaseModel, ConfigDict, Field

from isolab.errors import InputError, IsolabError
from isolab.services import isocrystal as iso_mod
from isolab.services import linalg
from isolab.services import robba
from isolab.services import seminorms as sn
from isolab.services.constants import (
    EXPECTED_DECISIONS,
    FILTRATION_PRESETS,
    ISOCRYSTAL_PRESETS,
    VERIFY_SUITES,
)
from isolab.services.padic_core import INF, unramified_field
from isolab.services.perfect_rings import PerfectLaurentElement, random_perfect_element, residue_field
from isolab.services.scan import chart_point, free_positions
from isolab.services.witt import WittVector, structure_polys, teichmuller, witt_from_integer
from isolab.utils.logging import get_logger
from isolab.utils.serialization import format_rational


class VerifyConfig(BaseModel):
    """Sizes of the property suites."""

    model_config = ConfigDict(frozen=True)

    seed: int = 0
    pairs: int = Field(default=100, ge=1)
    char_p_pairs: int = Field(default=20, ge=1)
    filtrations: int = Field(default=50, ge=1)
    primes: List[int] = Field(default_factory=lambda: [2, 3, 5])
    witt_lengths: Dict[int, int] = Field(default_factory=lambda: {2: 4, 3: 3, 5: 2})
    prec: int = Field(default=10, ge=2)
    robba_order: int = Field(default=6, ge=1)


@dataclass
class Check:
    test: str
    ok: bool
    residual: Any = None
    detail: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        return {
            "test": self.test,
            "status": "pass" if self.ok else "fail",
            "residual": _format_residual(self.residual),
            "detail": self.detail,
        }


def _format_residual(value):
    if value is None:
        return None
    if value == INF:
        return "inf"
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    return str(value)


def _guard(name: str, run: Callable[[], Check]) -> Check:
    try:
        return run()
    except IsolabError as exc:
        get_logger().error(f"Check {name} raised", source="verification._guard", error=exc, category="verify")
        return Check(name, False, None, {"error": f"{type(exc).__name__}: {exc}"})


# ---------------------------------------------------------------------------
# witt
# ---------------------------------------------------------------------------

def _structure_check(p: int, n: int) -> Check:
    polys = structure_polys(p, n)
    sizes = {name: sum(len(poly.terms()) for poly in polys.family(name))
             for name in ("sum", "product", "difference")}
    return Check(f"structure_polys_p{p}_n{n}", True, None, {"terms": sizes})


def _ghost_check(p: int, n: int, pairs: int, rng: random.Random) -> Check:
    failures = 0
    for _ in range(pairs):
        a = WittVector(p, [rng.randint(-20, 20) for _ in range(n)])
        b = WittVector(p, [rng.randint(-20, 20) for _ in range(n)])
        ga, gb = a.ghost_components(), b.ghost_components()
        if ((a + b).ghost_components() != [x + y for x, y in zip(ga, gb)]
                or (a * b).ghost_components() != [x * y for x, y in zip(ga, gb)]
                or (a - b).ghost_components() != [x - y for x, y in zip(ga, gb)]):
            failures += 1
    return Check(f"ghost_homomorphism_p{p}_n{n}", failures == 0, failures, {"pairs": pairs})


def _char_p_check(p: int, n: int, pairs: int, rng: random.Random) -> Check:
    """Teichmueller multiplicativity and additivity of Frobenius over the perfect ring."""
    F = residue_field(p, 1)
    failures = 0
    for _ in range(pairs):
        x = random_perfect_element(F, rng, max_terms=2, max_den_pow=1, max_exponent=2)
        y = random_perfect_element(F, rng, max_terms=2, max_den_pow=1, max_exponent=2)
        a = WittVector(p, [random_perfect_element(F, rng, 2, 1, 2) for _ in range(n)])
        b = WittVector(p, [random_perfect_element(F, rng, 2, 1, 2) for _ in range(n)])
        if teichmuller(x, n) * teichmuller(y, n) != teichmuller(x * y, n):
            failures += 1
        elif (a + b).frobenius() != a.frobenius() + b.frobenius():
            failures += 1
        elif (a + b) - b != a or a.frobenius().inverse_frobenius() != a:
            failures += 1
    return Check(f"char_p_identities_p{p}_n{n}", failures == 0, failures, {"pairs": pairs})


def witt_suite(config: VerifyConfig) -> List[Check]:
    rng = random.Random(config.seed)
    checks = []
    for p in config.primes:
        n = config.witt_lengths.get(p, 2)
        checks.append(_guard(f"structure_polys_p{p}_n{n}", lambda: _structure_check(p, n)))
        checks.append(_guard(f"ghost_homomorphism_p{p}_n{n}", lambda: _ghost_check(p, n, config.pairs, rng)))
        m = min(n, 3)
        checks.append(_guard(f"char_p_identities_p{p}_n{m}",
                             lambda: _char_p_check(p, m, config.char_p_pairs, rng)))
    return checks


# ---------------------------------------------------------------------------
# seminorms
# ---------------------------------------------------------------------------

def _retraction_check(p: int, alpha: sn.PointEvaluator, pairs: int, rng: random.Random) -> Check:
    """(mu o lambda)(alpha) = alpha on random perfected-Laurent elements."""
    F = residue_field(p, 1)
    length = 4
    lifted = sn.WittPoint(p, "lambda", alpha)
    failures = 0
    for _ in range(pairs):
        r = random_perfect_element(F, rng)
        lhs, rhs = sn.mu_map(lifted, r, length), alpha.evaluate(r)
        if lhs.exact:
            failures += lhs.compare(rhs) != 0
        else:
            failures += not rhs.neg_log >= lhs.neg_log
    return Check(f"retraction_{alpha.kind}_p{p}", failures == 0, failures, {"samples": pairs})


def _domination_check(p: int, pairs: int, rng: random.Random) -> Check:
    """(lambda o mu)(beta) >= beta for beta the specialization [X] -> p."""
    F = residue_field(p, 1)
    n = 3
    beta = sn.WittPoint(p, "x_to_p")
    failures = undecided = 0
    for _ in range(pairs):
        w = WittVector(p, [random_perfect_element(F, rng) for _ in range(n)])
        verdict = sn.lambda_map(sn.MuPoint(beta, n), w).is_at_least(beta.evaluate(w))
        if verdict is None:
            undecided += 1
        elif not verdict:
            failures += 1
    return Check(f"domination_p{p}", failures == 0, failures, {"samples": pairs, "undecided": undecided})


def _strictness_check(p: int) -> Check:
    """p[1] - [X] is killed by the specialization but not by lambda o mu."""
    F = residue_field(p, 1)
    n = 3
    X = PerfectLaurentElement.X(F)
    w = witt_from_integer(p, PerfectLaurentElement.one(F), n) - teichmuller(X, n)
    beta = sn.WittPoint(p, "x_to_p")
    lhs = sn.lambda_map(sn.MuPoint(beta, n), w)
    rhs = beta.evaluate(w)
    ok = lhs.exact and lhs.neg_log == 1 and not rhs.exact and rhs.neg_log == n
    return Check(f"strict_domination_p{p}", ok, lhs.neg_log, {"lambda_mu": lhs.to_json(p), "beta": rhs.to_json(p)})


def _point_values_check(p: int) -> Check:
    failures = []
    comb = sn.CombPoint(p, Fraction(1, 2))
    for a in range(5):
        for m in (1, p + 1, 2 * p + 1):
            value = comb.evaluate(p ** a * m)
            if value.neg_log != a or value.base != 2:
                failures.append(f"comb({p ** a * m})")
    X = PerfectLaurentElement.X(residue_field(p, 1))
    mu_x = sn.mu_map(sn.WittPoint(p, "x_to_p"), X, 3)
    if not (mu_x.exact and mu_x.neg_log == 1):
        failures.append("mu(beta)(X)")
    return Check(f"point_values_p{p}", not failures, len(failures), {"failed": failures})


def _gauss_check(p: int, pairs: int, rng: random.Random) -> Check:
    """The disc of radius 1 around any integer is the Gauss point."""
    gauss = sn.GaussNorm(sn.PadicAbsolute(p))
    failures = 0
    for _ in range(pairs):
        f = [Fraction(rng.randint(-50, 50), rng.choice([1, p, p * p, 3 * p + 1])) for _ in range(rng.randint(1, 5))]
        disc = sn.DiscPoint(p, rng.randint(-10, 10), 0)
        failures += disc.evaluate(f).compare(gauss.evaluate(f)) != 0
    return Check(f"gauss_reduction_p{p}", failures == 0, failures, {"samples": pairs})


def _axioms_check(p: int, pairs: int, seed: int) -> Check:
    """Both points are norms: every axiom, (b') included, must hold."""
    F = residue_field(p, 1)
    reports = {
        "padic": sn.check_seminorm_axioms(
            sn.PadicAbsolute(p), lambda r: Fraction(r.randint(-100, 100), r.randint(1, 50)), pairs, seed
        ),
        "x_adic": sn.check_seminorm_axioms(sn.XAdicPoint(p), lambda r: random_perfect_element(F, r), pairs, seed,
                                           one=PerfectLaurentElement.one(F)),
    }
    bad = [f"{name}({axiom})" for name, report in reports.items() for axiom in sn.AXIOMS if not report.holds(axiom)]
    return Check(f"seminorm_axioms_p{p}", not bad, len(bad), {"failed": bad, "checked": reports["padic"].checked})


def seminorm_suite(config: VerifyConfig) -> List[Check]:
    rng = random.Random(config.seed)
    checks = []
    for p in config.primes[:2]:
        for alpha in (sn.TrivialNorm(p), sn.XAdicPoint(p)):
            checks.append(_guard(f"retraction_{alpha.kind}_p{p}",
                                 lambda: _retraction_check(p, alpha, config.pairs, rng)))
        checks.append(_guard(f"domination_p{p}", lambda: _domination_check(p, config.pairs, rng)))
        checks.append(_guard(f"strict_domination_p{p}", lambda: _strictness_check(p)))
        checks.append(_guard(f"point_values_p{p}", lambda: _point_values_check(p)))
        checks.append(_guard(f"gauss_reduction_p{p}", lambda: _gauss_check(p, config.pairs, rng)))
        checks.append(_guard(f"seminorm_axioms_p{p}", lambda: _axioms_check(p, config.pairs, config.seed)))
    return checks


# ---------------------------------------------------------------------------
# isocrystals
# ---------------------------------------------------------------------------

EXPECTED_SLOPES = {
    "ord2": [0, 1],
    "ss2": [Fraction(1, 2), Fraction(1, 2)],
    "mf3": [0, Fraction(1, 2), Fraction(1, 2)],
    "tri2": [0, 1],
    "unit2": [0, 0],
    "scalar2": [1, 1],
}

# presets with a multiplicity-free splitting, and the weights scanned on them
ORACLE_PRESETS = {"ord2": [0, 1], "ss2": [0, 1], "mf3": [0, 0, 1]}


def _preset(name: str, p: int, prec: int) -> iso_mod.Isocrystal:
    return iso_mod.Isocrystal.from_rationals(p, ISOCRYSTAL_PRESETS[name](p), 1, prec)


def _random_point(D: iso_mod.Isocrystal, weights: List[int], rng: random.Random) -> iso_mod.FilteredIsocrystal:
    coords = [[rng.randrange(D.p ** 3)] for _ in free_positions(weights)]
    return chart_point(D, weights, coords)


def _slopes_check(p: int, prec: int) -> Check:
    wrong = {}
    for name, expected in EXPECTED_SLOPES.items():
        got = _preset(name, p, prec).newton_slopes()
        if got != [Fraction(x) for x in expected]:
            wrong[name] = [format_rational(s) for s in got]
    return Check(f"newton_slopes_p{p}", not wrong, len(wrong), {"wrong": wrong})


def _normal_form_check(p: int, prec: int, seed: int) -> Check:
    residual = INF
    for name in ("ord2", "ss2", "mf3", "tri2"):
        D = _preset(name, p, prec)
        dm = D.dm_data(seed=seed)
        got, expected = iso_mod.dm_normal_form(D, dm), iso_mod.expected_normal_form(D, dm)
        diff = linalg.mat_sub(got, expected)
        residual = min(residual, linalg.min_valuation(diff))
    return Check(f"dm_normal_form_p{p}", residual == INF, residual)


def _preset_decisions_check(p: int, prec: int) -> Check:
    wrong = {}
    for name, (iso_name, hodge, flags) in FILTRATION_PRESETS.items():
        FD = iso_mod.FilteredIsocrystal.from_flags(_preset(iso_name, p, prec), hodge, flags)
        status = iso_mod.weakly_admissible(FD).status
        if status != EXPECTED_DECISIONS[name]:
            wrong[name] = status
    return Check(f"preset_decisions_p{p}", not wrong, len(wrong), {"wrong": wrong})


def _oracle_check(p: int, prec: int, count: int, rng: random.Random) -> Check:
    """Exact-path decisions against brute force over eigenvector-spanned subspaces."""
    mismatches = []
    hodge_violations = 0
    for name, weights in ORACLE_PRESETS.items():
        D = _preset(name, p, prec)
        for k in range(count):
            FD = _random_point(D, weights, rng)
            decision = iso_mod.weakly_admissible(FD)
            brute = iso_mod.exhaustive_wa(FD)
            if decision.path != "exact" or decision.status != ("true" if brute else "false"):
                mismatches.append(f"{name}#{k}")
            if decision.status == "true" and not FD.hodge_polygon().lies_on_or_below(FD.newton_polygon()):
                hodge_violations += 1
    D = _preset("ord2", p, prec)
    special = iso_mod.FilteredIsocrystal.from_flags(D, [0, 1], {1: [[1], [0]]})
    decision = iso_mod.weakly_admissible(special)
    if decision.status != "false" or decision.witness is None:
        mismatches.append("ord2-forced")
    ok = not mismatches and hodge_violations == 0
    return Check(f"wa_oracle_p{p}", ok, len(mismatches) + hodge_violations,
                 {"points": count * len(ORACLE_PRESETS) + 1, "mismatches": mismatches[:5]})


def _tensor_check(p: int, prec: int, count: int, rng: random.Random) -> Check:
    """Tensor products with rank-one objects stay weakly admissible."""
    failures = 0
    for _ in range(count):
        name = rng.choice(["ord2", "ss2"])
        FD = _random_point(_preset(name, p, prec), ORACLE_PRESETS[name], rng)
        if iso_mod.weakly_admissible(FD).status != "true":
            continue
        b = rng.randint(-1, 2)
        unit = iso_mod.unit_object(FD.iso.field, prec, Fraction(p) ** b, b)
        if iso_mod.weakly_admissible(iso_mod.tensor(FD, unit)).status != "true":
            failures += 1
    return Check(f"tensor_rank_one_p{p}", failures == 0, failures, {"pairs": count})


def _additivity_check(p: int, prec: int, rng: random.Random) -> Check:
    A = _random_point(_preset("ord2", p, prec), [0, 1], rng)
    B = _random_point(_preset("ss2", p, prec), [0, 1], rng)
    S = iso_mod.direct_sum(A, B)
    Dual = iso_mod.dual(A)
    ok = (S.t_N() == A.t_N() + B.t_N() and S.t_H() == A.t_H() + B.t_H()
          and Dual.t_N() == -A.t_N() and Dual.t_H() == -A.t_H())
    return Check(f"additivity_p{p}", ok, None, {"sum": [S.t_N(), S.t_H()], "dual": [Dual.t_N(), Dual.t_H()]})


def isocrystal_suite(config: VerifyConfig) -> List[Check]:
    rng = random.Random(config.seed)
    checks = []
    for p in config.primes[:2]:
        checks.append(_guard(f"newton_slopes_p{p}", lambda: _slopes_check(p, config.prec)))
        checks.append(_guard(f"dm_normal_form_p{p}", lambda: _normal_form_check(p, config.prec, config.seed)))
        checks.append(_guard(f"preset_decisions_p{p}", lambda: _preset_decisions_check(p, config.prec)))
        checks.append(_guard(f"wa_oracle_p{p}", lambda: _oracle_check(p, config.prec, config.filtrations, rng)))
        checks.append(_guard(f"tensor_rank_one_p{p}", lambda: _tensor_check(p, config.prec, config.filtrations, rng)))
        checks.append(_guard(f"additivity_p{p}", lambda: _additivity_check(p, config.prec, rng)))
    return checks


# ---------------------------------------------------------------------------
# robba
# ---------------------------------------------------------------------------

def _window_residual(lhs: robba.RobbaElement, rhs: robba.RobbaElement):
    top = min(lhs.hi, rhs.hi)
    diffs = [lhs.coefficient(i) - rhs.coefficient(i) for i in range(min(lhs.lo, rhs.lo), top + 1)]
    return min((d.valuation() for d in diffs if not d.is_zero()), default=INF)


def _random_polynomial(p: int, prec: int, rng: random.Random, degree: int = 5) -> robba.RobbaElement:
    field = unramified_field(p, 1)
    coeffs = {i: rng.randint(-p ** 3, p ** 3) for i in range(rng.randint(1, degree) + 1)}
    return robba.RobbaElement.from_dict(field, coeffs, 1, prec)


def _phi_t_check(p: int, prec: int, m: int) -> Check:
    t = robba.t_element(unramified_field(p, 1), m, 1, prec)
    residual = _window_residual(robba.phi_act(t), t * p)
    return Check(f"phi_t_p{p}", residual == INF, residual, {"m": m})


def _gamma_t_check(p: int, prec: int, m: int) -> Check:
    t = robba.t_element(unramified_field(p, 1), m, 1, prec)
    gamma = 1 + p
    image = robba.gamma_act(t, gamma)
    residual = _window_residual(image, t * gamma)
    return Check(f"gamma_t_p{p}", residual == INF, residual, {"m": m, "gamma": gamma})


def _diagram_checks(p: int, prec: int, order: int, rng: random.Random, count: int) -> Check:
    failures = []
    worst = INF
    for k in range(count):
        f = _random_polynomial(p, prec, rng)
        for n in (1, 2):
            result = robba.base_change_diagram_check(f, n, order)
            if not result.ok:
                failures.append(f"base_change#{k}@n={n}")
                worst = min(worst, result.residual)
        gamma = 1 + p * rng.randint(1, 3)
        for result in (robba.theta_gamma_check(f, 1, order, gamma), robba.phi_gamma_commutation_check(f, gamma)):
            if not result.ok:
                failures.append(f"{result.name}#{k}")
                worst = min(worst, result.residual)
    return Check(f"robba_diagrams_p{p}", not failures, worst, {"elements": count, "failed": failures[:5]})


def _degree_identity_check(p: int, prec: int, count: int, rng: random.Random) -> Check:
    """det t-valuation = -t_H everywhere, and degree 0 on weakly admissible presets."""
    failures = []
    for name, (iso_name, hodge, flags) in FILTRATION_PRESETS.items():
        FD = iso_mod.FilteredIsocrystal.from_flags(_preset(iso_name, p, prec), hodge, flags)
        result = robba.berger_degree(FD)
        if EXPECTED_DECISIONS[name] == "true" and result.degree != 0:
            failures.append(name)
    for k in range(count):
        name = rng.choice(sorted(ORACLE_PRESETS))
        weights = sorted(rng.randint(-1, 2) for _ in ORACLE_PRESETS[name])
        FD = _random_point(_preset(name, p, prec), weights, rng)
        if robba.local_modification(FD).det_t_valuation != -FD.t_H():
            failures.append(f"{name}#{k}")
    return Check(f"degree_identity_p{p}", not failures, len(failures), {"random": count, "failed": failures[:5]})


def robba_suite(config: VerifyConfig) -> List[Check]:
    rng = random.Random(config.seed)
    checks = []
    m, order = config.robba_order + 2, config.robba_order
    count = max(1, config.filtrations // 10)
    for p in config.primes[:2]:
        checks.append(_guard(f"phi_t_p{p}", lambda: _phi_t_check(p, config.prec, m)))
        checks.append(_guard(f"gamma_t_p{p}", lambda: _gamma_t_check(p, config.prec, m)))
        checks.append(_guard(f"robba_diagrams_p{p}", lambda: _diagram_checks(p, config.prec, order, rng, count)))
        checks.append(_guard(f"degree_identity_p{p}",
                             lambda: _degree_identity_check(p, config.prec, config.filtrations, rng)))
    return checks


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

SUITES: Dict[str, Callable[[VerifyConfig], List[Check]]] = {
    "witt": witt_suite,
    "seminorm": seminorm_suite,
    "isocrystal": isocrystal_suite,
    "robba": robba_suite,
}


def run_suite(name: str, config: VerifyConfig) -> Dict[str, Any]:
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; choose from {VERIFY_SUITES + ['all']}")
    checks = SUITES[name](config)
    passed = all(c.ok for c in checks)
    get_logger().info(
        f"Suite {name} {'passed' if passed else 'failed'}",
        source="verification.run_suite",
        category="verify",
        event_type="suite",
        context={"suite": name, "seed": config.seed, "checks": len(checks),
                 "failed": [c.test for c in checks if not c.ok]},
    )
    return {"suite": name, "seed": config.seed, "passed": passed, "checks": [c.to_json() for c in checks]}


def run_verification(suite: str, config: VerifyConfig) -> Dict[str, Any]:
    """One suite, or every suite in a fixed order for ``all``."""
    if suite != "all":
        return run_suite(suite, config)
    reports = [run_suite(name, config) for name in VERIFY_SUITES]
    return {"suite": "all", "seed": config.seed, "passed": all(r["passed"] for r in reports), "suites": reports}
