# tests/test_isocrystal.py

from fractions import Fraction

import pytest

from isolab.config import reset_settings
from isolab.errors import InputError, PrecisionError
from isolab.services import isocrystal as iso_mod
from isolab.services import linalg
from isolab.services.constants import EXPECTED_DECISIONS, FILTRATION_PRESETS, ISOCRYSTAL_PRESETS
from isolab.services.padic_core import INF


def _preset(name, p=2, s=1, prec=10):
    return iso_mod.Isocrystal.from_rationals(p, ISOCRYSTAL_PRESETS[name](p), s, prec)


def _filtered(name, p=2, prec=10):
    iso_name, hodge, flags = FILTRATION_PRESETS[name]
    return iso_mod.FilteredIsocrystal.from_flags(_preset(iso_name, p, prec=prec), hodge, flags)


def test_degree_slope_and_newton_polygon():
    """
    diag(1, p) has degree 1, slope 1/2 and Newton slopes 0 and 1.
    """
    D = _preset("ord2")
    assert D.degree() == 1
    assert D.slope() == Fraction(1, 2)
    assert D.newton_slopes() == [0, 1]
    assert D.newton_polygon().vertices == ((0, 0), (1, 0), (2, 1))
    print("[TEST] Degree and Newton polygon passed.")


def test_supersingular_slopes():
    for p in (2, 3, 5):
        assert _preset("ss2", p).newton_slopes() == [Fraction(1, 2), Fraction(1, 2)]
    assert _preset("ss2", 3, s=2).newton_slopes() == [Fraction(1, 2), Fraction(1, 2)]
    assert _preset("mf3", 3).newton_slopes() == [0, Fraction(1, 2), Fraction(1, 2)]
    assert _preset("scalar2", 3).newton_slopes() == [1, 1]
    assert _preset("tri2", 5).newton_slopes() == [0, 1]
    print("[TEST] Supersingular slopes passed.")


def test_invalid_isocrystals():
    with pytest.raises(InputError):
        iso_mod.Isocrystal.from_rationals(2, [[1, 0]], 1, 10)
    with pytest.raises(InputError):
        iso_mod.Isocrystal.from_rationals(2, [], 1, 10)
    with pytest.raises(PrecisionError):
        iso_mod.Isocrystal.from_rationals(2, [[0, 0], [0, 1]], 1, 10).degree()
    print("[TEST] Invalid isocrystals passed.")


def test_newton_size_bound(monkeypatch):
    monkeypatch.setenv("ISOLAB_NEWTON_MAX_SIZE", "2")
    reset_settings()
    with pytest.raises(InputError):
        _preset("mf3").newton_slopes()
    print("[TEST] Newton size bound passed.")


def test_dieudonne_manin_data():
    """
    Summands (a, b) have rank a and slope b/a; repeated summands are flagged.
    """
    assert sorted(_preset("ord2").dm_data().summands) == [(1, 0), (1, 1)]
    assert _preset("ss2").dm_data().summands == [(2, 1)]
    mf3 = _preset("mf3", 3).dm_data()
    assert sorted(mf3.summands) == [(1, 0), (2, 1)]
    assert mf3.is_multiplicity_free()
    assert mf3.slopes() == [0, Fraction(1, 2), Fraction(1, 2)]
    assert not _preset("scalar2").dm_data().is_multiplicity_free()
    print("[TEST] Dieudonne-Manin data passed.")


def test_normal_form_matches_standard_blocks():
    for name in ("ord2", "ss2", "mf3", "tri2"):
        D = _preset(name, 3)
        dm = D.dm_data(seed=0)
        diff = linalg.mat_sub(iso_mod.dm_normal_form(D, dm), iso_mod.expected_normal_form(D, dm))
        assert linalg.min_valuation(diff) == INF, name
    print("[TEST] Dieudonne-Manin normal form passed.")


def test_filtration_invariants():
    FD = _filtered("ord2-generic")
    assert FD.hodge_tate_weights() == [0, 1]
    assert FD.t_N() == 1 and FD.t_H() == 1
    assert FD.hodge_polygon().vertices == ((0, 0), (1, 0), (2, 1))
    assert iso_mod.hodge_polygon([1, 0, 0]).vertices == ((0, 0), (2, 0), (3, 1))
    print("[TEST] Filtration invariants passed.")


def test_invalid_flags():
    D = _preset("ord2")
    with pytest.raises(InputError):
        iso_mod.FilteredIsocrystal.from_flags(D, [0, 1, 2], {})
    with pytest.raises(InputError):
        iso_mod.FilteredIsocrystal.from_flags(D, [0, 1], {3: [[1], [0]]})
    with pytest.raises(InputError):
        iso_mod.FilteredIsocrystal.from_flags(D, [0, 1], {1: [[1, 0], [0, 1]]})
    with pytest.raises(InputError):
        iso_mod.FilteredIsocrystal.from_flags(D, [0, 1], {})
    with pytest.raises(InputError):
        iso_mod.FilteredIsocrystal.from_flags(D, [0, 1], {1: [[0], [0]]})
    print("[TEST] Invalid flags passed.")


def test_preset_decisions():
    for name, expected in EXPECTED_DECISIONS.items():
        decision = iso_mod.weakly_admissible(_filtered(name))
        assert decision.status == expected, name
    print("[TEST] Preset decisions passed.")


def test_special_line_has_a_witness():
    """
    Fil^1 = <e0> on diag(1, p) makes the slope-0 line destabilizing.
    """
    decision = iso_mod.weakly_admissible(_filtered("ord2-special"))
    assert decision.status == "false"
    assert decision.path == "exact"
    assert decision.witness is not None
    assert decision.t_N == 1 and decision.t_H == 1
    assert not iso_mod.exhaustive_wa(_filtered("ord2-special"))
    assert iso_mod.exhaustive_wa(_filtered("ord2-generic"))
    print("[TEST] Destabilizing witness passed.")


def test_search_path_decisions():
    """
    Repeated summands go through the search path; the slope bound settles unit2.
    """
    decision = iso_mod.weakly_admissible(_filtered("unit2-trivial"))
    assert decision.path == "search"
    assert decision.status == "true"
    assert decision.decided
    assert decision.evidence[0].startswith("exact path unavailable")

    mismatch = iso_mod.weakly_admissible(_filtered("scalar2-trivial"))
    assert mismatch.status == "false"
    assert mismatch.t_N == 2 and mismatch.t_H == 0
    print("[TEST] Search path passed.")


def test_operations_are_additive():
    A = _filtered("ord2-generic")
    B = _filtered("ss2-line")
    S = iso_mod.direct_sum(A, B)
    assert S.rank == 4
    assert S.t_N() == A.t_N() + B.t_N() and S.t_H() == A.t_H() + B.t_H()

    Dual = iso_mod.dual(A)
    assert Dual.t_N() == -A.t_N() and Dual.t_H() == -A.t_H()
    assert Dual.hodge_tate_weights() == [-1, 0]

    T = iso_mod.tensor(A, B)
    assert T.rank == 4
    assert T.t_N() == A.t_N() * 2 + B.t_N() * 2
    assert T.t_H() == A.t_H() * 2 + B.t_H() * 2
    print("[TEST] Additivity passed.")


def test_admissibility_ignores_the_choice_of_basis():
    """
    Rewriting Phi in another basis of D, or choosing another adapted basis
    of the same flag, leaves t_N, t_H and the decision unchanged.
    """
    for name in ("ord2-generic", "ord2-special", "ss2-line"):
        FD = _filtered(name)
        D = FD.iso
        one, zero = D.one(), D.zero()
        P = [[one, one], [zero, one]]
        moved = iso_mod.FilteredIsocrystal(
            D.change_basis(P), linalg.mat_mul(linalg.inverse(P), FD.basis), FD.weights
        )
        assert moved.t_N() == FD.t_N() and moved.t_H() == FD.t_H()
        assert iso_mod.weakly_admissible(moved).status == EXPECTED_DECISIONS[name], name

        # weights are (1, 0): scale the Fil^1 vector and add it to the other one
        Q = [[one * 3, one], [zero, one]]
        rebased = iso_mod.FilteredIsocrystal(D, linalg.mat_mul(FD.basis, Q), FD.weights)
        assert linalg.rank(linalg.from_columns(rebased.fil(1) + FD.fil(1))) == 1
        assert iso_mod.weakly_admissible(rebased).status == EXPECTED_DECISIONS[name], name
    print("[TEST] Basis invariance passed.")


def test_tensor_degree_formula():
    """deg(A (x) B) = rk(B) deg(A) + rk(A) deg(B), for unequal ranks too."""
    A = _filtered("ord2-generic")
    line = iso_mod.unit_object(A.iso.field, A.iso.prec, Fraction(2) ** 3, 2)
    B = iso_mod.direct_sum(_filtered("ss2-line"), line)
    for X, Y in ((A, line), (A, B), (B, line)):
        T = iso_mod.tensor(X, Y)
        assert T.rank == X.rank * Y.rank
        assert T.t_N() == Y.rank * X.t_N() + X.rank * Y.t_N()
        assert T.t_H() == Y.rank * X.t_H() + X.rank * Y.t_H()
    print("[TEST] Tensor degree passed.")


def test_tate_twist_preserves_admissibility():
    FD = _filtered("ord2-generic")
    twisted = iso_mod.twist(FD, 1)
    assert twisted.t_N() == FD.t_N() + 2
    assert twisted.hodge_tate_weights() == [1, 2]
    assert iso_mod.weakly_admissible(twisted).status == "true"

    shifted = iso_mod.twist(FD, 0, 1)
    assert iso_mod.weakly_admissible(shifted).status == "false"
    print("[TEST] Tate twist passed.")


def test_json_views():
    FD = _filtered("ss2-line")
    payload = FD.to_json()
    assert payload["tN"] == 1 and payload["tH"] == 1
    assert payload["isocrystal"]["p"] == 2
    decision = iso_mod.weakly_admissible(FD).to_json()
    assert decision["wa"] == "true" and decision["path"] == "exact"
    print("[TEST] JSON views passed.")


if __name__ == "__main__":
    test_degree_slope_and_newton_polygon()
    test_supersingular_slopes()
    test_invalid_isocrystals()
    test_dieudonne_manin_data()
    test_normal_form_matches_standard_blocks()
    test_filtration_invariants()
    test_invalid_flags()
    test_preset_decisions()
    test_special_line_has_a_witness()
    test_search_path_decisions()
    test_operations_are_additive()
    test_admissibility_ignores_the_choice_of_basis()
    test_tensor_degree_formula()
    test_tate_twist_preserves_admissibility()
    test_json_views()
