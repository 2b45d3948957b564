import math
import pathlib

import pytest

import msm_mean

DATA = pathlib.Path(__file__).resolve().parents[2] / "data" / "ItalyPowerDemand_TRAIN.tsv"


def test_golden_distance():
    assert math.isclose(msm_mean.distance([4, 5, 5, 10], [10, 7, 8], 0.1), 8.3, abs_tol=1e-9)
    assert msm_mean.distance([5], [5], 1.0) == 0.0
    assert msm_mean.distance([1, 2], [1], 0.5) == 1.5


def test_two_pair_mean_matches_enumeration():
    series = [[0, 0], [0, 2]]
    r = msm_mean.mean(series, 0.5)
    _, brute_cost = msm_mean.brute_force_mean(series, 0.5, r.max_length)
    assert r.cost == 2.0
    assert math.isclose(r.cost, brute_cost, abs_tol=1e-9)
    assert math.isclose(msm_mean.sum_distance(series, r.mean, 0.5), r.cost, abs_tol=1e-9)


def test_single_series_is_its_own_mean():
    r = msm_mean.mean([[3.0, 1.0, 4.0]], 0.1)
    assert r.cost == 0.0
    assert r.mean == [3.0, 1.0, 4.0]


def test_heuristics():
    series = [[0.1, 0.5, 1.2, 0.7], [0.3, 0.9, 1.1, 0.2], [0.0, 0.6, 1.4, 0.9]]
    exact = msm_mean.mean(series, 0.1)
    windowed = msm_mean.mean(series, 0.1, window=1)
    bucketed = msm_mean.mean(series, 0.1, buckets=3)
    assert windowed.cost >= exact.cost - 1e-9
    assert windowed.entries_skipped > 0
    assert bucketed.cost >= exact.cost - 1e-9


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        msm_mean.distance([1], [2], -1.0)
    with pytest.raises(ValueError):
        msm_mean.mean([[1, 2, 3], [1]], 0.1, window=1)
    with pytest.raises(MemoryError):
        msm_mean.mean([[1, 2, 3], [1, 2]], 0.1, mem_cap_gib=1e-15)
    with pytest.raises(ValueError):
        msm_mean.mean([[1.0, float("nan")]], 0.1)


def test_sampling_and_mean_on_ucr_data():
    drawn = msm_mean.sample(str(DATA), k=3, n=12, seed=4)
    assert len(drawn) == 3
    assert len({label for label, _ in drawn}) == 1
    r = msm_mean.mean([values for _, values in drawn], 0.1, max_length=12)
    assert 1 <= r.mean_length <= 12
    again = msm_mean.mean([values for _, values in msm_mean.sample(str(DATA), k=3, n=12, seed=4)], 0.1,
                          max_length=12)
    assert again.cost == r.cost


def test_verify_small_budget():
    report = msm_mean.verify(seed=42, instances=10, metric_samples=100)
    assert report["passed"]
    assert [c["name"] for c in report["checks"]][0] == "metric axioms"
