from __future__ import annotations

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from graphmdl.core.config import settings
from graphmdl.models.graph import LabeledGraph


class DistortionCosts(BaseModel):
    model_config = ConfigDict(frozen=True)

    vertex_delete: float = Field(default=1.0, ge=0)
    vertex_insert: float = Field(default=1.0, ge=0)
    vertex_substitute: float = Field(default=1.0, ge=0)
    edge_delete: float = Field(default=1.0, ge=0)
    edge_insert: float = Field(default=1.0, ge=0)
    edge_substitute: float = Field(default=1.0, ge=0)


class MatchBudget(BaseModel):
    """Search-node limit for the matcher: `limit` if given, else ceil(factor * n1 * n2)."""

    model_config = ConfigDict(frozen=True)

    factor: float = Field(default_factory=lambda: settings.MATCH_NODE_FACTOR, gt=0)
    limit: int | None = Field(default=None, ge=1)

    def node_limit(self, n1: int, n2: int) -> int:
        if self.limit is not None:
            return self.limit
        return max(1, math.ceil(self.factor * n1 * n2))


class RuleWeights(BaseModel):
    model_config = ConfigDict(frozen=True)

    compactness_exp: float = 0.0
    connectivity_exp: float = 0.0
    coverage_exp: float = 0.0
    label_pref_exp: float = 0.0
    hierarchy_exp: float = 0.0

    label_prefs: dict[str, float] = Field(default_factory=dict)
    # inverse used by connectivity when weighted external connections average 0; None -> v(G)
    connectivity_cap: float | None = Field(default=None, gt=0)

    @field_validator("label_prefs")
    @classmethod
    def _positive_prefs(cls, v: dict[str, float]) -> dict[str, float]:
        for name, pref in v.items():
            if not pref > 0:
                raise ValueError(f"label preference for '{name}' must be positive")
        return v


class DiscoveryParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    beam_width: int = Field(default_factory=lambda: settings.BEAM_WIDTH, ge=1)
    threshold: float = Field(default=0.0, ge=0.0, le=1.0)
    eval_limit: int = Field(default=0, ge=0)
    prune: bool = False
    nbest: int = Field(default_factory=lambda: settings.NBEST, ge=1)

    costs: DistortionCosts = Field(default_factory=DistortionCosts)
    budget: MatchBudget = Field(default_factory=MatchBudget)
    weights: RuleWeights = Field(default_factory=RuleWeights)


class GenParams(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    target_sub: LabeledGraph
    size_factor: int = Field(default_factory=lambda: settings.GEN_SIZE_FACTOR, ge=2)
    label_factor: Literal[1, 2] = 1
    external_conns: Literal[1, 2] = 1
    coverage_frac: float = Field(default=0.6, gt=0.0, le=1.0)
    distortions: Literal[0, 1, 2] = 0
    seed: int = Field(default=0, ge=0, lt=2**64)
