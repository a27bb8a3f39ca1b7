import random
from fractions import Fraction

import pytest

from qfuzzy.checks import check_alpha_subgroup, check_qfuzzy_subgroup
from qfuzzy.fuzzy import alpha_restrict, make_qfuzzy
from qfuzzy.groups import standard_group
from qfuzzy.lab import (
    CLAIM_ORDER,
    EXPECTED_VERIFIED,
    RECORDED_CLAIMS,
    AuditConfig,
    ReproductionError,
    audit,
    random_qfuzzy,
    random_qfuzzy_subgroup,
    replay_failure,
    reproduce_example,
    search_counterexample,
    validate_witness,
)

F = Fraction
Q = ("q",)

SMALL = AuditConfig(
    catalog=("cyclic2", "cyclic6", "symmetric3"),
    trials=25,
    map_pairs=(("cyclic2", "cyclic2"), ("symmetric3", "cyclic2")),
    product_pairs=(("cyclic2", "cyclic3"),),
)


def test_config_normalizes_pool_and_rejects_bad_values():
    cfg = AuditConfig(grade_pool=(F(1), F(0), F(1, 2)))
    assert cfg.grade_pool == (F(0), F(1, 2), F(1))
    with pytest.raises(ValueError):
        AuditConfig(trials=0)
    with pytest.raises(ValueError):
        AuditConfig(grade_pool=())
    assert AuditConfig(q_size=2).q_labels() == ("q1", "q2")


def test_random_subgroup_generator_is_sound():
    # postcondition re-checked against the independent scanner
    pool = AuditConfig().grade_pool
    for name in ["cyclic2", "cyclic6", "klein4", "symmetric3", "quaternion8"]:
        g = standard_group(name)
        for trial in range(40):
            rng = random.Random(f"gen|{name}|{trial}")
            theta = random_qfuzzy_subgroup(g, Q, rng, pool)
            assert check_qfuzzy_subgroup(theta).verdict


def test_random_qfuzzy_draws_from_pool():
    g = standard_group("cyclic6")
    pool = (F(0), F(1, 2))
    theta = random_qfuzzy(g, Q, random.Random(0), pool)
    assert all(row[0] in pool for row in theta.grades)


def test_audit_rejects_unknown_claims():
    with pytest.raises(ValueError, match="unknown claim"):
        audit({"P9.9"}, SMALL)


def test_audit_is_deterministic():
    first = audit({"P4.2", "P4.11", "P5.8"}, SMALL)
    second = audit({"P4.2", "P4.11", "P5.8"}, SMALL)
    assert first == second


def test_audit_accounting_invariants():
    reports = audit(set(CLAIM_ORDER), SMALL)
    assert [r.prop_id for r in reports] == sorted(
        (r.prop_id for r in reports), key=CLAIM_ORDER.index
    )
    for r in reports:
        assert r.trials == r.passes + len(r.failures)
        if r.prop_id in EXPECTED_VERIFIED:
            assert not r.failures, (r.prop_id, r.carrier, r.failures[0])
            assert r.status.startswith("verified")
        if r.prop_id in RECORDED_CLAIMS:
            assert r.status == "recorded"


def test_p4_11_notes_report_literal_findings():
    reports = [r for r in audit({"P4.11"}, SMALL) if r.carrier == "cyclic6"]
    assert len(reports) == 1
    assert "literal min-form claim" in reports[0].notes


def test_p5_8_pass_criterion_is_injective_maps():
    reports = audit({"P5.8"}, SMALL)
    assert all("injective" in r.notes for r in reports)
    assert all(not r.failures for r in reports)


def test_search_r4_3_first_witness():
    witness = search_counterexample("R4.3", SMALL)
    assert witness["theta"]["group"] == "cyclic2"
    assert witness["theta"]["grades"] == {"0": {"q": "0"}, "1": {"q": "9/100"}}
    assert witness["alpha"] == "0"
    assert validate_witness(witness)


def test_search_r4_9_first_witness():
    witness = search_counterexample("R4.9", SMALL)
    assert witness["theta"]["group"] == "cyclic6"
    theta_hi = {e for e, row in witness["theta"]["grades"].items() if row["q"] != "0"}
    sigma_hi = {e for e, row in witness["sigma"]["grades"].items() if row["q"] != "0"}
    assert theta_hi == {"0", "3"}
    assert sigma_hi == {"0", "2", "4"}
    assert validate_witness(witness)


def test_search_p4_11_literal_witness():
    cfg = AuditConfig(catalog=("cyclic2",), grade_pool=(F(3, 10), F(1, 2)))
    witness = search_counterexample("P4.11-literal", cfg)
    assert witness["theta"]["grades"] == {"0": {"q": "1/2"}, "1": {"q": "3/10"}}
    assert witness["alpha"] == "1/2"
    assert validate_witness(witness)


def test_search_unknown_claim_rejected():
    with pytest.raises(ValueError):
        search_counterexample("P1.1", SMALL)


def test_replay_failure_round_trip():
    failing = {
        "claim": "P4.2",
        "theta": {
            "group": "cyclic3",
            "q_labels": ["q"],
            "grades": {"0": {"q": "1/10"}, "1": {"q": "9/10"}, "2": {"q": "9/10"}},
        },
        "alpha": "1",
        "violation": "synthetic",
    }
    assert replay_failure(failing)
    passing = {
        "claim": "P4.2",
        "theta": {
            "group": "cyclic3",
            "q_labels": ["q"],
            "grades": {"0": {"q": "1/2"}, "1": {"q": "1/10"}, "2": {"q": "1/10"}},
        },
        "alpha": "1",
        "violation": "synthetic",
    }
    assert not replay_failure(passing)


def test_reproduce_example_4_5():
    report = reproduce_example("4.5")
    assert report.status == "verified-exhaustive"
    assert "lhs = 3/10 < rhs = 2/5 at (a, b, q)" in report.notes


def test_reproduce_example_4_10():
    report = reproduce_example("4.10")
    assert report.status == "verified-exhaustive"
    assert "lhs = 1/10 < rhs = 1/5 at (2, 3, q)" in report.notes


def test_reproduce_unknown_example_rejected():
    with pytest.raises(ValueError):
        reproduce_example("1.1")


def test_example_4_10_values_match_by_hand():
    from qfuzzy.lab import example_4_10_subsets

    theta, sigma, pi = example_4_10_subsets()
    assert theta.grade(0, 0) == F(2, 5) and theta.grade(6, 0) == F(2, 5)
    assert theta.grade(4, 0) == F(0)
    assert sigma.grade(2, 0) == F(1, 5) and sigma.grade(5, 0) == F(1, 10)
    assert pi.grade(10, 0) == F(1) and pi.grade(7, 0) == F(0)


def test_p4_7_translation_failure_is_materialized_and_replays():
    # feed a hand-built failing input through the shared conclusion check
    from qfuzzy.lab import _alpha_payload, _check_p4_7

    g = standard_group("cyclic4")
    theta = make_qfuzzy(g, Q, [[F(1, 2)], [F(1, 2)], [F(1, 2)], [F(1, 10)]])
    phi = alpha_restrict(theta, F(1))
    assert not check_alpha_subgroup(phi).verdict  # not a subgroup, so P4.7 can fail
    ok, detail = _check_p4_7(phi)
    assert not ok and "at (" in detail
    record = {"claim": "P4.7", "phi": _alpha_payload(phi), "violation": detail}
    assert replay_failure(record)
