"""Output and input schemas for the command line."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field, field_validator


class InvariantReport(BaseModel):
    """Schema for one computed invariant."""

    name: str = Field(..., description="Catalog name or the word text itself")
    kind: str = Field(..., description="phi, theta, homflypt, psi or m")
    d: int = Field(..., ge=1)
    D: Optional[List[int]] = Field(None, description="Subset of Z/d; absent for the generic transverse invariant")
    components: int = Field(..., ge=1)
    epsilon: int
    strands: int = Field(..., ge=1)
    value: str = Field(..., description="Canonical serialization of the value")
    parity: int = Field(..., ge=0, le=1)

    @field_validator("kind")
    @classmethod
    def validate_kind(cls, v: str) -> str:
        """Validate the invariant kind."""
        if v not in ("phi", "theta", "homflypt", "psi", "m"):
            raise ValueError(f"Unknown invariant kind {v!r}")
        return v


class CompareReport(BaseModel):
    """Schema for comparing two words, or Θ against the rescaled Homflypt polynomial."""

    kind: str
    d: int = Field(..., ge=1)
    D: Optional[List[int]] = None
    left: str
    right: str
    status: str = Field(..., description="EQUAL, DIFFER or a Θ/P comparison status")
    left_value: str
    right_value: str


class TraceReport(BaseModel):
    """Schema for a trace and the statistics of its computation."""

    word: str
    d: int = Field(..., ge=1)
    D: Optional[List[int]] = None
    strategy: str
    value: str
    statistics: Dict[str, object] = Field(default_factory=dict)


class ESolutionReport(BaseModel):
    """Schema for one E-system solution."""

    d: int = Field(..., ge=1)
    D: List[int]
    E: str
    values: List[str]
    character: bool


class SuiteReport(BaseModel):
    """Schema for one passed property suite."""

    suite: str
    d: int = Field(..., ge=1)
    checks: int = Field(..., ge=0)
    status: str = "ok"


class CatalogLine(BaseModel):
    """Schema for one line of a catalog file."""

    name: str = Field(..., min_length=1)
    word: Optional[str] = Field(None, description="Braid text in the word grammar; absent for name-only entries")
    kind: str = Field("classical", description="classical, framed or singular")
    source: str = Field("file")
    expected_components: Optional[int] = Field(None, ge=1)
    expected_self_linking: Optional[int] = None

    @field_validator("name")
    @classmethod
    def validate_name(cls, v: str) -> str:
        """Validate names carry no tab or newline."""
        if "\t" in v or "\n" in v:
            raise ValueError("Name cannot contain tabs or newlines")
        if v != v.strip():
            raise ValueError("Name cannot start or end with whitespace")
        return v
