from fractions import Fraction

import pytest

import robexplore

LINE = {
    "topology": "line",
    "coordinates": ["0", "1", "3"],
    "deadlines": [None, None, None],
    "robots": {"mode": "fixed", "positions": [1]},
    "faults": 0,
}


def test_solve_and_verify_round_trip():
    result = robexplore.solve(LINE)
    assert result["feasible"]
    assert result["optimum"] == Fraction(4)
    report = robexplore.verify(LINE, result["schedule"])
    assert report["pass"]
    assert report["makespan"] == Fraction(4)


def test_agrees_with_brute_force():
    assert robexplore.oracle(LINE)["optimum"] == robexplore.solve(LINE)["optimum"]


def test_infeasible_deadline():
    tight = dict(LINE, deadlines=["1/2", None, None])
    result = robexplore.solve(tight)
    assert not result["feasible"]
    assert result["optimum"] is None


def test_reduced_matching_instance():
    instance = robexplore.n3dm_instance([1], [1], [1], 3)
    assert len(instance["coordinates"]) == 96
    assert robexplore.decide(instance, 35)
    assert not robexplore.decide(instance, 34)


def test_partition_star():
    assert robexplore.decide(robexplore.partition_instance([1, 1]), 10)
    assert not robexplore.solve(robexplore.partition_instance([1, 3]))["feasible"]


def test_resilience():
    free = {
        "topology": "line",
        "coordinates": ["0", "1", "2", "3", "4"],
        "deadlines": [None] * 5,
        "robots": {"mode": "free", "count": 6},
        "faults": 0,
    }
    assert robexplore.resilience(free, 2) == 2


def test_errors():
    with pytest.raises(robexplore.InstanceError):
        robexplore.solve({"topology": "line"})
    too_fast = {"robots": [{"start": "1", "waypoints": [{"t": "0", "x": "1"}, {"t": "1/2", "x": "0"}]}]}
    with pytest.raises(robexplore.ScheduleError):
        robexplore.verify(LINE, too_fast)
