import pytest

import diagcx


def test_forest_counts():
    assert [len(diagcx.enumerate_forests(n)) for n in range(1, 5)] == [0, 2, 15, 124]
    assert len(diagcx.enumerate_forests(3, include_empty=True)) == 16


def test_prufer_round_trip():
    for parent in diagcx.enumerate_forests(4):
        word = diagcx.prufer_encode(4, parent)
        assert diagcx.prufer_decode(word) == parent


def test_series():
    assert diagcx.series_wh_free(3) == "1 + 6t + 9t^2"
    assert diagcx.wh_free_euler_characteristic(3) == 4


def test_torus_and_snf():
    assert diagcx.torus_betti(2) == [1, 2]
    assert diagcx.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == ["2", "6", "12"]


def test_orbits():
    rows = diagcx.orbits(3, [2, 1])
    assert len(rows) == 8
    assert sum(r["orbit_size"] for r in rows) == 15


def test_presentation():
    rep = diagcx.verify_presentation(3, [2], "fr")
    assert rep["generators"] == 6 and rep["failures"] == 0
    assert diagcx.verify_presentation(2, [2], "flat-literal")["failures"] > 0


def test_cli_and_errors():
    code, out, _ = diagcx.run_cli(["forests", "enumerate", "--n", "3", "--count-only"])
    assert (code, out) == (0, "15\n")
    with pytest.raises(ValueError):
        diagcx.prufer_decode([7, 7])
