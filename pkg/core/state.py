from pydantic import BaseModel, Field, field_validator, model_validator
from typing import Dict, List, Any, Optional
import re

FRACTION_PATTERN = re.compile(r'^-?\d+(/\d+)?$')


def _check_fractions(values: List[str]) -> List[str]:
    for v in values:
        if not FRACTION_PATTERN.match(v):
            raise ValueError(f"Coefficient {v!r} is not an exact fraction string")
    return values


class HasseEdge(BaseModel):
    """One arrow of the Hasse diagram of Y"""
    src: str
    dst: str
    coeff: int = Field(gt=0)
    new_in_Y: bool = False


class SpectralShape(BaseModel):
    """Decomposition mu(T) = T^k P(T^c)"""
    k: int = Field(ge=0)
    c: int = Field(gt=0)
    P: List[str]

    @field_validator('P')
    @classmethod
    def validate_P(cls, v):
        return _check_fractions(v)


class SpectralReport(BaseModel):
    """Exact spectral data of a quantum multiplication operator"""
    operator: str
    specialization: Dict[str, str] = Field(default_factory=dict)
    char_poly: List[str]
    min_poly: List[str]
    shape: Optional[SpectralShape] = None
    nonzero_simple: bool
    kernel_dim: int = Field(ge=0)

    @field_validator('char_poly', 'min_poly')
    @classmethod
    def validate_polys(cls, v):
        return _check_fractions(v)

    @model_validator(mode='after')
    def validate_degrees(self):
        if len(self.min_poly) > len(self.char_poly):
            raise ValueError("Minimal polynomial has larger degree than the characteristic polynomial")
        return self


class VarietyRecord(BaseModel):
    """Catalog entry for one (type, rank, variant) triple"""
    dynkin_type: str
    rank: int = Field(gt=0)
    variant: str
    weight_label: str
    X_name: str
    parabolic_label: str
    aut0_Y_name: Optional[str] = None
    h1_Y_TY: Optional[int] = None
    jordan_algebra: Optional[str] = None
    jordan_rank: Optional[int] = None
    big_ambient_name: Optional[str] = None
    dim_X: Optional[int] = None
    c1_X: Optional[int] = None

    @field_validator('dynkin_type')
    @classmethod
    def validate_dynkin_type(cls, v):
        if v not in ("A", "B", "C", "D", "E", "F", "G"):
            raise ValueError(f"Unknown Dynkin type {v!r}")
        return v

    @model_validator(mode='after')
    def validate_h1(self):
        if self.jordan_rank is not None and self.h1_Y_TY != max(0, self.jordan_rank - 3):
            raise ValueError(
                f"h1(Y, T_Y) = {self.h1_Y_TY} disagrees with max(0, rk - 3) for rk = {self.jordan_rank}"
            )
        return self


class JordanRow(BaseModel):
    """Row of the table presenting X as a hyperplane section of a bigger homogeneous space"""
    jordan_algebra: str
    big_ambient_name: str
    X_name: str
    aut0_Y_name: str
    jordan_rank: int
    h1_Y_TY: int

    @model_validator(mode='after')
    def validate_h1(self):
        if self.h1_Y_TY != max(0, self.jordan_rank - 3):
            raise ValueError(f"{self.jordan_algebra}: h1 = {self.h1_Y_TY} but rk = {self.jordan_rank}")
        return self


class CheckResult(BaseModel):
    """Outcome of one verification check"""
    name: str
    description: str = ""
    status: str
    details: Dict[str, Any] = Field(default_factory=dict)
    error_message: Optional[str] = None
    duration: Optional[float] = None


class VerificationReport(BaseModel):
    """All checks run for one context"""
    context: str
    success: bool
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status == "failed"]
