from __future__ import annotations

import logging
from typing import Sequence

from graphmdl.models.graph import LabeledGraph
from graphmdl.schemas.params import DiscoveryParams
from graphmdl.schemas.report import DefinitionOut, SweepReport, SweepRow
from graphmdl.services.discovery import discover

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLDS = tuple(round(0.1 * k, 1) for k in range(11))


def sweep_thresholds(
    g: LabeledGraph,
    params: DiscoveryParams,
    thresholds: Sequence[float] = DEFAULT_THRESHOLDS,
) -> SweepReport:
    """
    One discover run per threshold, rows in the given order. The optimal row has the
    lowest compression; ties go to the smaller threshold.
    """
    if not thresholds:
        raise ValueError("threshold list is empty")
    for t in thresholds:
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"threshold {t} is outside [0, 1]")

    rows = []
    for t in thresholds:
        best = discover(g, params.model_copy(update={"threshold": t}))[0]
        report = best.compression
        assert report is not None
        rows.append(
            SweepRow(
                threshold=t,
                dl_original=report.dl_original,
                dl_substructure=report.dl_substructure,
                dl_compressed=report.dl_compressed,
                compression=report.compression,
                definition=DefinitionOut.of(best.definition),
            )
        )
        logger.info("threshold=%.2f compression=%.4f", t, report.compression)

    optimal = min(rows, key=lambda row: (row.compression, row.threshold))
    return SweepReport(rows=rows, optimal=optimal)
