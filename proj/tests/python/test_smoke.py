import math

import pytest

import drivestyle as ds


def test_omega_hand_values():
    assert ds.omega([-1.0, 1.0, -1.0, 1.0]) == pytest.approx(math.exp(-1.0), rel=1e-12)
    assert ds.omega([-4.0, 4.0, -4.0, 4.0]) == pytest.approx(math.exp(-0.5), rel=1e-12)
    assert ds.omega([2.0, 2.0, 2.0]) == 0.0
    assert ds.jerk_stats([0.0, 2.0]) == (1.0, 1.0)


def test_errors_surface_as_value_errors():
    with pytest.raises(ds.DrivestyleError):
        ds.omega([])
    with pytest.raises(ValueError):
        ds.parse_tdrive_line("7,2008-02-02,116.0")


def test_tdrive_line_round_trip():
    log = ds.parse_tdrive_line("1,2008-02-02 15:36:08,116.51172,39.92123")
    assert log.driver_id == "1"
    assert log.timestamp == 1201937768
    assert log.longitude == 116.51172
    assert ds.parse_tdrive_line(ds.format_tdrive_line(log)) == log


def test_haversine_one_degree_of_latitude():
    assert ds.haversine_m(116.0, 40.0, 116.0, 41.0) == pytest.approx(111194.93, abs=0.01)


def test_preprocess_and_kinematics():
    logs = [("9", 1000 + 5 * i, 116.3 + 1e-4 * i, 39.9) for i in range(25)]
    logs.insert(3, logs[2])
    patterns, summary = ds.preprocess(logs)
    assert [len(p) for p in patterns] == [13, 12]
    assert summary["duplicates_removed"] == 1
    assert summary["patterns_out"] == 2
    k = ds.kinematics(patterns[0])
    assert len(k["jerk"]["values"]) == len(patterns[0]) - 3


def test_cubic_jerk():
    t = list(range(12))
    p = ds.MovementPattern("c", t, [float(i**3) for i in t], [0.0] * 12)
    for j in ds.kinematics(p)["jerk"]["values"]:
        assert j == pytest.approx(6.0, rel=1e-6)


def test_ward_and_silhouette_examples():
    assert ds.ward_pairwise([0.0], [1.0]) == 0.5
    assert ds.ward_pairwise([1.0, 2.0], [4.0]) == pytest.approx(26 / 3)
    assert ds.ward_standard([1.0, 2.0], [4.0]) == pytest.approx(4.166667, rel=1e-6)
    d = ds.agglomerate([0.0, 1.0, 10.0])
    assert d.merges[0] == (0, 1, 0.5, 2)
    assert ds.cut(d, 2) == [1, 1, 2]
    si = ds.silhouette([1, 1, 2], [0.0, 1.0, 10.0])
    assert si == pytest.approx([0.9, 8 / 9, 0.0], abs=1e-12)


def test_benchmark_clusters_into_four():
    patterns, truth = ds.generate_benchmark(42)
    assert len(patterns) == 330
    records = ds.feature_table(patterns)
    result = ds.cluster_report([r.pattern_id for r in records], [r.omega for r in records])
    assert result["k"] == 4
    noisy = [pid for pid, profile in truth.items() if profile == "noisy"]
    assert all(result["labels"][pid] == 4 for pid in noisy)
    assert all(truth[pid] == "calm" for pid, label in result["labels"].items() if label == 1)


def test_pattern_json_round_trip():
    patterns, _ = ds.generate_benchmark(3)
    text = ds.patterns_to_json(patterns[:5])
    back = ds.patterns_from_json(text)
    assert [p.id for p in back] == [p.id for p in patterns[:5]]
    # Files hold nine significant digits.
    assert back[0].x == pytest.approx(patterns[0].x, rel=1e-8, abs=1e-9)
    assert back[0].t == patterns[0].t
