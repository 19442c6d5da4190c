"""Set-size distribution model (the discrete law of |X| before collapsing)."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SizeKind(str, Enum):
    FIXED = "fixed"
    POISSON = "poisson"
    GEOMETRIC = "geometric"


class SizeDistribution(BaseModel):
    """
    Discrete distribution of the number of draws k.

    - fixed(k): always k draws
    - poisson(mean): k ~ Poisson(mean)
    - geometric(p): P(k) = p * (1 - p)**k for k = 0, 1, 2, ...
    """

    kind: SizeKind = Field(..., description="Distribution family")
    k: Optional[int] = Field(None, ge=0, description="Draw count for fixed")
    mean: Optional[float] = Field(None, gt=0, description="Mean for poisson")
    p: Optional[float] = Field(None, gt=0, lt=1, description="Success rate for geometric")

    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        json_schema_extra={"example": {"kind": "poisson", "mean": 3.0}},
    )

    @model_validator(mode="after")
    def _check_parameters(self) -> "SizeDistribution":
        required = {
            SizeKind.FIXED: "k",
            SizeKind.POISSON: "mean",
            SizeKind.GEOMETRIC: "p",
        }[self.kind]
        if getattr(self, required) is None:
            raise ValueError(f"{self.kind.value} distribution requires '{required}'")
        for name in ("k", "mean", "p"):
            if name != required and getattr(self, name) is not None:
                raise ValueError(
                    f"'{name}' is not a parameter of the {self.kind.value} distribution"
                )
        return self

    @classmethod
    def from_token(cls, token: str) -> "SizeDistribution":
        """
        Parse the compact command-line form.

        Examples:
            >>> SizeDistribution.from_token("fixed:5").k
            5
            >>> SizeDistribution.from_token("poisson:3").mean
            3.0
        """
        kind, sep, raw = token.partition(":")
        if not sep:
            raise ValueError(f"expected '<kind>:<parameter>', got '{token}'")
        kind = kind.strip().lower()
        if kind == SizeKind.FIXED.value:
            return cls(kind=SizeKind.FIXED, k=int(raw))
        if kind == SizeKind.POISSON.value:
            return cls(kind=SizeKind.POISSON, mean=float(raw))
        if kind == SizeKind.GEOMETRIC.value:
            return cls(kind=SizeKind.GEOMETRIC, p=float(raw))
        raise ValueError(f"unknown size distribution '{kind}'")
