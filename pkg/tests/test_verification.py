# tests/test_verification.py

import pytest

from isolab.errors import InputError, PrecisionError
from isolab.services import verification
from isolab.services.verification import VerifyConfig, run_suite, run_verification
from isolab.utils.serialization import dumps

SMALL = VerifyConfig(seed=3, pairs=4, char_p_pairs=2, filtrations=2, primes=[2, 3], robba_order=3)


def _failed(report):
    return [c["test"] for c in report["checks"] if c["status"] != "pass"]


def test_witt_suite_passes():
    report = run_suite("witt", SMALL)
    assert report["passed"], _failed(report)
    assert report["suite"] == "witt" and report["seed"] == 3
    assert {c["test"] for c in report["checks"]} >= {"structure_polys_p2_n4", "ghost_homomorphism_p3_n3"}
    print("[TEST] Witt suite passed.")


def test_seminorm_suite_passes():
    report = run_suite("seminorm", SMALL)
    assert report["passed"], _failed(report)
    print("[TEST] Seminorm suite passed.")


def test_isocrystal_suite_passes():
    report = run_suite("isocrystal", SMALL)
    assert report["passed"], _failed(report)
    print("[TEST] Isocrystal suite passed.")


def test_robba_suite_passes():
    report = run_suite("robba", SMALL.model_copy(update={"primes": [2]}))
    assert report["passed"], _failed(report)
    assert [c["test"] for c in report["checks"]] == [
        "phi_t_p2", "gamma_t_p2", "robba_diagrams_p2", "degree_identity_p2",
    ]
    print("[TEST] Robba suite passed.")


def test_reports_are_reproducible():
    """Same seed, same bytes."""
    config = SMALL.model_copy(update={"primes": [2]})
    assert dumps(run_suite("seminorm", config)) == dumps(run_suite("seminorm", config))
    print("[TEST] Reproducible reports passed.")


def test_all_runs_every_suite_in_order():
    config = VerifyConfig(seed=0, pairs=2, char_p_pairs=1, filtrations=1, primes=[2], robba_order=2)
    report = run_verification("all", config)
    assert [r["suite"] for r in report["suites"]] == ["witt", "seminorm", "isocrystal", "robba"]
    assert report["passed"] == all(r["passed"] for r in report["suites"])
    print("[TEST] Full verification passed.")


def test_unknown_suite_and_guarded_checks():
    with pytest.raises(InputError):
        run_suite("galois", SMALL)

    def explode():
        raise PrecisionError("no digits left")

    check = verification._guard("exploding", explode)
    assert not check.ok
    assert check.to_json()["detail"] == {"error": "PrecisionError: no digits left"}
    print("[TEST] Guarded checks passed.")


if __name__ == "__main__":
    test_witt_suite_passes()
    test_seminorm_suite_passes()
    test_isocrystal_suite_passes()
    test_robba_suite_passes()
    test_reports_are_reproducible()
    test_all_runs_every_suite_in_order()
    test_unknown_suite_and_guarded_checks()
