import random

import pytest

from permcover.formulas import dn_weak_lower, lmax_pq, r_pq
from permcover.perms import distance_to_code
from permcover.witnesses import (
    WitnessBundle,
    verify_witness,
    witness_dn,
    witness_dn_refined,
    witness_lmax,
    witness_pq,
)


def test_pq_trivial_cases():
    for p, q in [(1, 1), (4, 1), (5, 2)]:
        b = witness_pq(p, q)
        assert b.r0 == p - 1
        assert distance_to_code(b.completed, b.code) > b.r0


def test_pq_lambda_trace():
    b = witness_pq(5, 4)
    # r(G_{5,4}) = 6, so the codimension is k = 4
    assert b.r0 == r_pq(5, 4) - 1 == 5
    assert b.trace["k"] == 4
    assert b.trace["lambda"] == [4, 3, 5, 6]
    assert b.trace["I"] == 2
    assert b.placement.as_dict() == {9: 1, 8: 2}


def test_pq_tightness_small():
    # the witness sits at distance exactly r(G_{p,q}) for small degrees
    for total in range(6, 10):
        for q in range(3, total // 2 + 1):
            p = total - q
            if p < q:
                continue
            b = witness_pq(p, q)
            assert distance_to_code(b.completed, b.code) == r_pq(p, q)


def test_lmax_regimes():
    for p, q, case in [(5, 3, "q=3"), (6, 6, "q=k(k+1)"), (8, 7, None)]:
        b = witness_lmax(p, q)
        assert b.r0 == lmax_pq(p, q) - 1
        assert b.conjugator is not None
        if case is not None:
            assert b.trace["case"] == case
        assert distance_to_code(b.completed, b.code) > b.r0


def test_dn_trace():
    b = witness_dn(12)
    assert b.r0 == dn_weak_lower(12) - 1 == 6
    assert b.trace["k"] == 12 - b.r0 - 1
    assert distance_to_code(b.completed, b.code) > b.r0


def test_dn_refined_families():
    for n, m in [(30, 6), (29, 6), (28, 6), (42, 7), (41, 7), (40, 7)]:
        b = witness_dn_refined(n)
        assert b.params["m"] == m
        assert b.r0 == n - m - 1
        assert distance_to_code(b.completed, b.code) > b.r0


def test_dn_refined_rejections():
    with pytest.raises(ValueError):
        witness_dn_refined(35)  # not m(m-1) - c for c in {0,1,2}
    with pytest.raises(ValueError):
        witness_dn_refined(20)  # m = 5 has no constructive schedule


def test_exposure_is_completion_independent():
    # any completion of the placement stays exposed, not just the canonical one
    rng = random.Random(99)
    bundles = [
        witness_pq(7, 5),
        witness_lmax(8, 6),
        witness_dn(17),
        witness_dn_refined(30),
    ]
    for b in bundles:
        for _ in range(50):
            f = b.placement.complete_random(rng)
            assert distance_to_code(f, b.code) > b.r0


def test_verify_witness_reports_failures():
    b = witness_pq(4, 3)
    ok, report = verify_witness(b)
    assert ok and all(e["exposing_position"] is not None for e in report)
    assert len(report) == len(b.code)
    broken = WitnessBundle(
        family="pq",
        params=b.params,
        code=b.code,
        r0=b.r0,
        placement=b.placement,
        completed=tuple(range(1, 8)),
    )
    ok, report = verify_witness(broken)
    assert not ok
    assert any(e["exposing_position"] is None for e in report)


def test_json_bundle_shape():
    payload = witness_lmax(6, 4).to_json_dict()
    assert payload["verified"] is True
    assert payload["family"] == "lmax"
    assert payload["conjugator"] is not None
    assert isinstance(payload["placement"], list)
    assert payload["code"]["kind"] == "relabeled"


def test_input_validation():
    with pytest.raises(ValueError):
        witness_pq(2, 3)
    with pytest.raises(ValueError):
        witness_lmax(5, 2)
    with pytest.raises(ValueError):
        witness_dn(9)
