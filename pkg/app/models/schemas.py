"""
Pydantic schemas for command configuration and exported documents
"""
from enum import Enum
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator


class ExportFormat(str, Enum):
    DOT = "dot"
    JSON = "json"


class CliConfig(BaseModel):
    input_path: Optional[Path] = None
    iterations: int = Field(default=1, ge=0)
    format: ExportFormat = ExportFormat.DOT
    output: Optional[Path] = None
    budget: int = Field(default=100000, ge=2, description="Maximum carrier size")
    demo: Optional[int] = None
    stage: str = "jsm"
    machine_readable: bool = False
    numeric_labels: bool = False

    @field_validator("demo")
    @classmethod
    def demo_exists(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value not in (1, 2):
            raise ValueError(f"unknown demo {value}; choose 1 or 2")
        return value

    @field_validator("stage")
    @classmethod
    def stage_exists(cls, value: str) -> str:
        if value not in ("copy", "flip", "flat", "jsm"):
            raise ValueError(f"unknown stage '{value}'")
        return value

    @model_validator(mode="after")
    def stage_needs_an_input_relation(self) -> "CliConfig":
        if self.stage != "jsm" and self.iterations < 1:
            raise ValueError("a single-morphism stage needs at least one iteration")
        return self


class TypeEntry(BaseModel):
    id: int = Field(..., ge=0)
    name: str
    rank: int = Field(..., ge=0)


class RelationDocument(BaseModel):
    iteration: int = Field(..., ge=0)
    types: List[TypeEntry]
    hasse_edges: List[Tuple[int, int]]

    @model_validator(mode="after")
    def ids_are_dense_and_edges_valid(self) -> "RelationDocument":
        if [t.id for t in self.types] != list(range(len(self.types))):
            raise ValueError("type ids must be dense and in order from 0")
        for sub, sup in self.hasse_edges:
            if not (0 <= sub < len(self.types) and 0 <= sup < len(self.types)):
                raise ValueError(f"edge [{sub}, {sup}] references an unknown type id")
            if sub == sup:
                raise ValueError(f"self-loop on type id {sub}")
        return self


class ExportDocument(BaseModel):
    format: ExportFormat
    payload: str


class StepStats(BaseModel):
    iteration: int
    carrier_size: int
    new_types: int
    hasse_edges: int
