import pytest

from graphmdl.schemas.params import DiscoveryParams
from graphmdl.services.discovery import discover
from graphmdl.services.sweep import DEFAULT_THRESHOLDS, sweep_thresholds


def test_default_thresholds():
    assert DEFAULT_THRESHOLDS == (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)


def test_exact_repeats_favour_zero_threshold(two_triangles):
    report = sweep_thresholds(two_triangles, DiscoveryParams(), [0.5, 0.0, 1.0])
    assert [row.threshold for row in report.rows] == [0.5, 0.0, 1.0]
    assert report.optimal.threshold == 0.0


def test_single_threshold_row(two_triangles):
    report = sweep_thresholds(two_triangles, DiscoveryParams(), [0.0])
    (row,) = report.rows
    best = discover(two_triangles, DiscoveryParams())[0]
    assert row.compression == pytest.approx(best.compression.compression)
    assert row.compression < 1
    assert row.dl_substructure + row.dl_compressed == pytest.approx(row.compression * row.dl_original)
    assert len(row.definition.vertices) == 3


@pytest.mark.parametrize("thresholds", [[], [-0.1], [0.2, 1.1]])
def test_bad_thresholds(two_triangles, thresholds):
    with pytest.raises(ValueError):
        sweep_thresholds(two_triangles, DiscoveryParams(), thresholds)
