"""Choice oracle selection model."""

from enum import Enum
from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .field_description import ExceptionEntry


class OracleTag(str, Enum):
    """Available stand-ins for the representative map."""

    STRIP_EXCEPTIONS = "strip_exceptions"
    ADVERSARIAL = "adversarial"


class OracleKind(BaseModel):
    """
    Oracle selection: {"oracle": "strip_exceptions"} or
    {"oracle": "adversarial", "corruption": [{"point": [...], "value": v}, ...]}.
    """

    tag: OracleTag = Field(
        OracleTag.STRIP_EXCEPTIONS,
        alias="oracle",
        description="Which representative map to use",
    )
    corruption: List[ExceptionEntry] = Field(
        default_factory=list,
        description="Fixed perturbation applied by the adversarial oracle",
    )

    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    @model_validator(mode="after")
    def _check_corruption(self) -> "OracleKind":
        if self.tag is OracleTag.STRIP_EXCEPTIONS and self.corruption:
            raise ValueError("corruption is only allowed for the adversarial oracle")
        keys = [tuple(entry.point) for entry in self.corruption]
        if len(set(keys)) != len(keys):
            raise ValueError("corruption points must be pairwise distinct")
        return self
