import json

import pytest

from wildjet import Arc, field, intersect, parse_biseries
from wildjet.cover import ASCover, ElemAbelianCover, KummerCover, jet_threshold, wild_jumps_on_arc
from wildjet.lab import (
    JetSample, all_nontrivial_characters, generic_jump_scan, perturb_jet, sample_arc, scan_table,
    strong_filtration_check, swan_infinity_estimate, trial_rng, verify_jet_order,
)

F3 = field(3)
PREC = 96


def E(text="1"):
    return parse_biseries(text, F3, PREC)


def AS(m1, m2, eps="1"):
    return ASCover(m1, m2, E(eps))


def A(t, u):
    return Arc.parse((t, u), F3, PREC)


def test_sample_arc_examples():
    assert sample_arc(JetSample(1, 1, (1,)), F3, PREC) == A("X", "X")
    assert sample_arc(JetSample(2, 3, (1, 1)), F3, PREC) == A("X^2 + X^3", "X")
    assert sample_arc(JetSample(1, 2, (0, 1)), F3, PREC) == A("X", "X^2")
    assert sample_arc(JetSample(1, 2, (0, 0)), F3, PREC) == A("X", "0")
    with pytest.raises(ValueError):
        JetSample(2, 3, (0, 1))
    with pytest.raises(ValueError):
        JetSample(1, 3, (1,))


def test_perturb_keeps_lower_coefficients():
    js = JetSample(2, 6, (1, 2, 0, 1, 1))
    rng = trial_rng(0, 1)
    d = perturb_jet(js, 4, 6, rng, F3)
    assert d.coeffs[:2] == js.coeffs[:2] and d.coeffs[2] != js.coeffs[2]
    c, e = sample_arc(js, F3, PREC), sample_arc(d, F3, PREC)
    assert intersect(c, e) == 4
    with pytest.raises(ValueError):
        perturb_jet(js, 1, 6, rng, F3)


def test_verify_examples():
    cv = AS(1, 0)
    c, d = A("X", "X"), A("X + X^2", "X")
    assert intersect(c, d) == 2 and jet_threshold(cv, c, d) == 2
    assert wild_jumps_on_arc(cv, c) == wild_jumps_on_arc(cv, d) == [1]
    cv = AS(1, 3)
    c, d = A("X", "X"), A("X + X^4", "X")
    assert intersect(c, d) == 4 and jet_threshold(cv, c, d) == 6


def test_unbranched_cover_gives_zero_jumps():
    cv = AS(0, 0, "1 + T + U^2")
    rep = verify_jet_order(cv, trials=10, seed=3, prec=PREC)
    assert rep.aggregate["above_pass"]
    for rec in rep.records:
        for arm in ("above", "below"):
            if rec.get(arm) and "jumps_C" in rec[arm]:
                assert rec[arm]["jumps_C"] == rec[arm]["jumps_D"] == [0]
    scan = generic_jump_scan(cv, r_max=4, samples_per_r=5, seed=1, prec=PREC)
    assert all(row["w_max"] == 0 for row in scan.records)
    strong = strong_filtration_check(cv, trials=5, seed=1, prec=PREC)
    assert strong.aggregate["pass"]
    assert all(r["jumps_C"] == r["jumps_D"] == [] for r in strong.records if "jumps_C" in r)


def test_verify_report_shape_and_determinism():
    cv = AS(2, 1, "1 + T + 2*U")
    a = verify_jet_order(cv, trials=12, seed=9, prec=PREC)
    b = verify_jet_order(cv, trials=12, seed=9, prec=PREC, workers=2)
    assert a.to_jsonl() == b.to_jsonl()
    lines = [json.loads(x) for x in a.to_jsonl().splitlines()]
    assert lines[0]["type"] == "config" and lines[0]["experiment"] == "verify-jet-order"
    assert lines[-1]["type"] == "summary" and lines[-1]["above_pass"] is True
    assert sum(1 for x in lines if x["type"] == "trial") == 12
    c = verify_jet_order(cv, trials=12, seed=10, prec=PREC)
    assert c.to_jsonl() != a.to_jsonl()


def test_verify_rejects_kummer():
    with pytest.raises(ValueError):
        verify_jet_order(KummerCover(2, 1, 0, E()), 1, 0)


def test_generic_scan_single_pole():
    rep = generic_jump_scan(AS(1, 0), r_max=6, samples_per_r=15, seed=2, prec=PREC)
    table = scan_table(rep)
    assert [row["w_max"] for row in table] == [r - (r % 3 == 0) for r in range(1, 7)]
    assert table[0]["w_max"] == 1 and str(table[0]["ratio"]) == "1"


def test_strong_check_example():
    cv = ElemAbelianCover((AS(1, 0), AS(2, 0)))
    rep = strong_filtration_check(cv, trials=10, seed=4, prec=PREC)
    assert rep.aggregate["pass"] and rep.aggregate["run"] == 10
    assert all(r["jumps_C"] == [[1, 9], [4, 3]] for r in rep.records)


def test_swan_estimate():
    cv = ElemAbelianCover((AS(1, 0), AS(2, 0)))
    rep = swan_infinity_estimate(cv, all_nontrivial_characters(3, 2), r_max=1, seed=0, samples_per_r=5, prec=PREC)
    assert rep.records[0]["swan_max"] == 14
    empty = swan_infinity_estimate(cv, [], r_max=3, seed=0, samples_per_r=3, prec=PREC)
    assert all(r["swan_max"] == 0 for r in empty.records)
    single = ASCover(1, 0, E())
    sw = swan_infinity_estimate(single, [(1,)], r_max=6, seed=2, samples_per_r=15, prec=PREC)
    scan = generic_jump_scan(single, r_max=6, samples_per_r=15, seed=2, prec=PREC)
    assert [r["swan_max"] for r in sw.records] == [row["w_max"] for row in scan.records]
    with pytest.raises(ValueError):
        swan_infinity_estimate(cv, [(1,)], r_max=1, seed=0)
