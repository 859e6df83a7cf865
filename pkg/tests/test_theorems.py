import pytest

from skewclean import rings
from skewclean.rings import NotLocalError
from skewclean.skewtri import MatrixError
from skewclean.theorems import (
    recheck_witness,
    reports_to_records,
    run_suite,
    sweep_strongly_clean,
    verify_case5_variants,
    verify_corollaries,
    verify_prop_2_6,
    verify_theorem_2_1,
    verify_theorem_3_1,
    verify_theorem_4_1,
)

# keep the default budget (idempotent enumerations stay allowed) but keep
# sampled sweeps small
FAST = dict(sample_size=300, seed=0)


def by_id(reports):
    return {r.claim_id: r for r in reports}


def test_full_suite_zmod4(zmod4, zmod4_id):
    reports = run_suite(zmod4, zmod4_id, "all")
    claims = by_id(reports)
    assert set(claims) == {
        "thm2.1-forward", "thm2.1-backward", "thm3.1", "thm3.1-case5",
        "thm4.1", "prop2.6", "cor2.2", "cor2.3", "cor3.2", "cor3.3",
        "cor4.2", "cor4.3",
    }
    assert all(r.status == "holds" for r in reports)
    assert claims["thm3.1"].mode == "exhaustive"
    assert claims["thm3.1-case5"].details == {
        "corrected_verified": 512, "printed_verified": 256, "total": 512,
    }
    assert claims["prop2.6"].details["two_is_unit"] is False
    assert claims["prop2.6"].details["all_strongly_clean"] is True


def test_suite_zmod5_skips():
    ring = rings.get_ring("zmod:5")
    sigma = rings.get_endomorphism(ring, "id")
    claims = by_id(run_suite(ring, sigma, "all"))
    assert claims["cor4.2"].status == "skipped"
    assert "sum of two units" in claims["cor4.2"].reason
    assert claims["cor4.3"].status == "skipped"
    assert claims["prop2.6"].status == "holds"
    assert claims["prop2.6"].details["two_is_unit"] is True
    assert claims["thm2.1-forward"].status == "holds"
    assert claims["thm2.1-backward"].status == "holds"


def test_suite_dual_negx_skips_only_cor43(dual4):
    sigma = rings.get_endomorphism(dual4, "negx")
    claims = by_id(run_suite(dual4, sigma, "all", **FAST))
    statuses = {cid: r.status for cid, r in claims.items()}
    assert statuses.pop("cor4.3") == "skipped"
    assert "not idempotent" in claims["cor4.3"].reason
    assert set(statuses.values()) == {"holds"}


def test_suite_groupring_aug_all_hold(z4g):
    sigma = rings.get_endomorphism(z4g, "aug")
    reports = run_suite(z4g, sigma, "all", **FAST)
    assert all(r.status in ("holds", "skipped") for r in reports)
    claims = by_id(reports)
    # Every hypothesis applies for this ring, so nothing is skipped.
    assert all(r.status == "holds" for r in reports), [
        (r.claim_id, r.status, r.reason) for r in reports
    ]
    assert claims["cor4.3"].details == {
        "t2_strongly_clean": True, "t3_strongly_clean": True, "condition": True,
    }


def test_theorem_2_1_sides_recorded(zmod4, zmod4_id):
    forward, backward = verify_theorem_2_1(zmod4, zmod4_id)
    assert forward.details == {"condition_holds": True, "all_strongly_clean": True}
    assert backward.details == forward.details
    assert forward.mode == backward.mode == "exhaustive"
    assert backward.checked == 64


def test_theorem_3_1_sampled_mode_is_reported(z4g):
    sigma = rings.get_endomorphism(z4g, "aug")
    report = verify_theorem_3_1(z4g, sigma, sample_size=200, seed=9)
    assert report.status == "holds"
    assert report.mode == "sampled"  # 16^6 is over the constructive sweep cap
    assert report.seed == 9


def test_budget_skip_reports_reason(z4g):
    sigma = rings.get_endomorphism(z4g, "aug")
    report = verify_theorem_4_1(z4g, sigma, budget=1000, sample_size=50, seed=0)
    assert report.status == "skipped"
    assert "over budget" in report.reason and "16777216" in report.reason


def test_verifiers_require_local():
    ring = rings.get_ring("zmod:6")
    sigma = rings.get_endomorphism(ring, "id")
    with pytest.raises(NotLocalError):
        verify_theorem_2_1(ring, sigma)
    with pytest.raises(NotLocalError):
        verify_theorem_3_1(ring, sigma)
    with pytest.raises(NotLocalError):
        verify_theorem_4_1(ring, sigma)
    with pytest.raises(NotLocalError):
        verify_prop_2_6(ring, sigma)
    with pytest.raises(NotLocalError):
        verify_corollaries(ring, sigma)


def test_determinism_of_reports(zmod4, zmod4_id):
    first = reports_to_records(run_suite(zmod4, zmod4_id, "all"))
    second = reports_to_records(run_suite(zmod4, zmod4_id, "all"))
    assert first == second


def test_sampled_determinism(z4g):
    sigma = rings.get_endomorphism(z4g, "aug")
    kw = dict(sample_size=300, seed=5)
    first = reports_to_records([verify_theorem_3_1(z4g, sigma, **kw)])
    second = reports_to_records([verify_theorem_3_1(z4g, sigma, **kw)])
    assert first == second


def test_record_schema(zmod4, zmod4_id):
    records = reports_to_records(run_suite(zmod4, zmod4_id, "2.1"), include_timing=True)
    assert [r["claim_id"] for r in records] == sorted(r["claim_id"] for r in records)
    for record in records:
        assert list(record) == [
            "claim_id", "ring", "sigma", "status", "checked", "witness",
            "elapsed_ms", "seed", "mode", "reason", "details",
        ]
        assert record["elapsed_ms"] is not None
    no_timing = reports_to_records(run_suite(zmod4, zmod4_id, "2.1"))
    assert all(r["elapsed_ms"] is None for r in no_timing)


def test_recheck_genuine_witnesses(zmod4, zmod4_id):
    # x -> 2x misses 1 mod 4
    assert recheck_witness(zmod4, zmod4_id, {
        "kind": "non_surjective_map", "a": 2, "b": 0, "power": 1, "missing": 1,
    })
    # but x -> x does not miss anything
    assert not recheck_witness(zmod4, zmod4_id, {
        "kind": "non_surjective_map", "a": 1, "b": 0, "power": 1, "missing": 1,
    })
    # the identity matrix is strongly clean
    assert not recheck_witness(zmod4, zmod4_id, {
        "kind": "matrix_not_strongly_clean", "n": 2, "entries": [1, 0, 1],
    })
    assert not recheck_witness(zmod4, zmod4_id, {
        "kind": "matrix_not_very_clean", "n": 2, "entries": [1, 0, 1],
    })
    assert not recheck_witness(zmod4, zmod4_id, {
        "kind": "decompose_failed", "n": 2, "entries": [3, 1, 2],
    })
    assert not recheck_witness(zmod4, zmod4_id, {
        "kind": "t2_replay_failed", "a": 1, "b": 0, "v": 3,
    })
    assert not recheck_witness(zmod4, zmod4_id, {
        "kind": "t3_corner_failed", "a": 3, "b": 2, "v": 1,
    })
    assert not recheck_witness(zmod4, zmod4_id, {
        "kind": "solver_mismatch", "a": 3, "b": 2, "v": 1, "x": 0,
    })
    with pytest.raises(ValueError):
        recheck_witness(zmod4, zmod4_id, {"kind": "unheard-of"})


def test_case5_report_modes():
    ring = rings.get_ring("quot:zmod:3;x^2+x+1")
    sigma = rings.get_endomorphism(ring, "id")
    report = verify_case5_variants(ring, sigma)
    assert report.status == "holds"
    assert report.mode == "exhaustive"
    assert report.details["total"] == 3 * 36 * 729
    assert report.details["corrected_verified"] == report.details["total"]
    assert report.details["printed_verified"] < report.details["total"]


def test_sweep_constructive_and_brute(zmod4, zmod4_id):
    result = sweep_strongly_clean(zmod4, zmod4_id, 2, "constructive")
    assert result.all_clean and result.mode == "exhaustive" and result.checked == 64
    result = sweep_strongly_clean(zmod4, zmod4_id, 2, "brute")
    assert result.all_clean and result.checked == 64
    result = sweep_strongly_clean(zmod4, zmod4_id, 3, "constructive",
                                  sweep_limit=1000, sample_size=250, seed=1)
    assert result.all_clean and result.mode == "sampled" and result.seed == 1


def test_sweep_t4_brute_zmod2():
    ring = rings.get_ring("zmod:2")
    sigma = rings.get_endomorphism(ring, "id")
    result = sweep_strongly_clean(ring, sigma, 4, "brute")
    assert result.all_clean and result.checked == 1024


def test_sweep_rejects_constructive_t4(zmod4, zmod4_id):
    with pytest.raises(MatrixError, match="n = 4"):
        sweep_strongly_clean(zmod4, zmod4_id, 4, "constructive")


def test_unknown_suite(zmod4, zmod4_id):
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite(zmod4, zmod4_id, "5.1")


@pytest.mark.parametrize("spec", ["zmod:9", "zmod:27"])
def test_prime_power_moduli_are_strongly_clean(spec):
    # nil radical, so both directions hold for any endomorphism
    ring = rings.get_ring(spec)
    sigma = rings.get_endomorphism(ring, "id")
    forward, backward = verify_theorem_2_1(ring, sigma)
    assert forward.status == backward.status == "holds"
    assert backward.mode == "exhaustive"


def test_quotient_of_zmod9_strongly_clean():
    ring = rings.get_ring("quot:zmod:9;x^2+x+1")
    sigma = rings.get_endomorphism(ring, "id")
    forward, backward = verify_theorem_2_1(ring, sigma, sample_size=2000)
    assert forward.status == backward.status == "holds"
    assert backward.mode == "sampled"  # 81^3 is over the oracle sweep cap
