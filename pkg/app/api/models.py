from pydantic import BaseModel, Field, field_validator
from typing import List, Optional, Dict, Any

from app import config


def _strictly_decreasing(word: List[int]) -> List[int]:
    if any(j < 0 for j in word):
        raise ValueError(f"degeneracy indices must be >= 0, got {word}")
    if any(a <= b for a, b in zip(word, word[1:])):
        raise ValueError(f"degeneracy indices must be strictly decreasing, got {word}")
    return word


class SimplexRef(BaseModel):
    degens: List[int] = Field(default_factory=list)
    target: str

    @field_validator("degens")
    @classmethod
    def check_degens(cls, v: List[int]) -> List[int]:
        return _strictly_decreasing(v)


class CellModel(BaseModel):
    id: str
    dim: int = Field(ge=0)
    faces: List[SimplexRef] = Field(default_factory=list)


class ObjectModel(BaseModel):
    """Interchange form of a finite pointed simplicial set"""
    name: Optional[str] = None
    dim_cap: int = Field(ge=0)
    basepoint: str
    cells: List[CellModel]


class AssignmentModel(BaseModel):
    cell: str
    degens: List[int] = Field(default_factory=list)
    target: str

    @field_validator("degens")
    @classmethod
    def check_degens(cls, v: List[int]) -> List[int]:
        return _strictly_decreasing(v)


class MapModel(BaseModel):
    source: str
    target: str
    assign: List[AssignmentModel]


class Caps(BaseModel):
    """Every cap a run used; echoed in each report"""
    dim_cap: int = Field(default_factory=lambda: config.DIM_CAP, ge=0)
    level_cap: int = Field(default_factory=lambda: config.LEVEL_CAP, ge=0)
    sigma_max: int = Field(default_factory=lambda: config.SIGMA_MAX, ge=0)
    node_budget: int = Field(default_factory=lambda: config.NODE_BUDGET, ge=1)


class CheckResult(BaseModel):
    """Outcome of a single law or recovery check"""
    name: str
    verdict: str  # "pass", "fail", "conditional", "error"
    witness: Optional[Any] = None
    error_message: Optional[str] = None


class Report(BaseModel):
    command: str
    caps: Caps
    checks: List[CheckResult] = Field(default_factory=list)
    timing_ms: Optional[float] = None
    data: Dict[str, Any] = Field(default_factory=dict)

    @property
    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if c.verdict in ("fail", "error")]

    def verdict_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for c in self.checks:
            counts[c.verdict] = counts.get(c.verdict, 0) + 1
        return dict(sorted(counts.items()))
