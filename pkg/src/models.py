"""Data models for the SPARSEFIT pipeline."""

from __future__ import annotations

from datetime import datetime, timezone
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


def _readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


class TransformKind(str, Enum):
    """Monotone map from the uniform variable theta to the abscissa x."""

    IDENTITY = "Identity"          # x = theta
    EXP = "Exp"                    # x = exp(theta)
    EXP_MINUS_ONE = "ExpMinusOne"  # x = exp(theta) - 1


class WeightKind(str, Enum):
    UNIT = "Unit"                          # rho(x) = 1
    INVERSE_X = "InverseX"                 # rho(x) = 1 / x
    INVERSE_ONE_PLUS_X = "InverseOnePlusX"  # rho(x) = 1 / (1 + x)


class FamilyKind(str, Enum):
    RATIONAL_RAW = "RationalRaw"          # 1 / (1 + v x)
    EXP_RAW = "ExpRaw"                    # exp(-v x)
    RATIONAL_PINNED = "RationalPinned"    # 1 / (1 + v x) - 1 / (1 + v)
    EXP_PINNED = "ExpPinned"              # exp(-v x) - 1


class TargetKind(str, Enum):
    POWER_NEG = "PowerNeg"          # x^(-alpha)
    STRETCHED_EXP = "StretchedExp"  # exp(-x^alpha)
    PLANTED = "Planted"             # offset + sum u_i phi(x, v_i)


class Spacing(str, Enum):
    GEOMETRIC = "Geometric"
    UNIFORM = "Uniform"


class TerminationReason(str, Enum):
    KKT_SATISFIED = "KktSatisfied"
    MAX_ITERATIONS = "MaxIterations"


class _ArrayModel(BaseModel):
    """Frozen model holding numpy arrays."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class Term(BaseModel):
    """One (u, v) pair of an approximant."""

    model_config = ConfigDict(frozen=True)

    u: float
    v: float


class QuadratureGrid(_ArrayModel):
    """Midpoint nodes x_j and weights w_j = rho(x_j) * x'(theta_j) * dtheta."""

    nodes: np.ndarray
    weights: np.ndarray
    n: int
    a: float
    b: float
    beta: float  # length of the theta interval
    transform: TransformKind
    weight: WeightKind

    @field_validator("nodes", "weights", mode="before")
    @classmethod
    def _as_array(cls, v):
        return _readonly(v)


class BasisFamily(BaseModel):
    """Parametric atom phi(x, v); pinned families add pin_value = f(a) as offset."""

    model_config = ConfigDict(frozen=True)

    tag: FamilyKind
    pin_value: float = 0.0

    @property
    def pinned(self) -> bool:
        return self.tag in (FamilyKind.RATIONAL_PINNED, FamilyKind.EXP_PINNED)


class CandidateSet(_ArrayModel):
    """Sorted candidate values of the nonlinear parameter on [c, d]."""

    values: np.ndarray
    c: float
    d: float
    spacing: Spacing = Spacing.GEOMETRIC

    @field_validator("values", mode="before")
    @classmethod
    def _as_array(cls, v):
        return _readonly(v)

    @property
    def l(self) -> int:  # noqa: E743
        return int(self.values.size)


class TargetFunction(BaseModel):
    """Function to approximate."""

    model_config = ConfigDict(frozen=True)

    tag: TargetKind
    alpha: Optional[float] = None

    # Planted targets only
    planted_family: Optional[FamilyKind] = None
    planted_terms: list[Term] = Field(default_factory=list)
    planted_offset: float = 0.0

    @model_validator(mode="after")
    def _check(self) -> "TargetFunction":
        if self.tag == TargetKind.PLANTED:
            if self.planted_family is None or not self.planted_terms:
                raise ValueError("planted target needs planted_family and planted_terms")
        elif self.alpha is None or not 0.0 < self.alpha < 1.0:
            raise ValueError(f"{self.tag.value} target requires 0 < alpha < 1, got {self.alpha}")
        return self


class DesignSystem(_ArrayModel):
    """Row-weighted system: ||rhs - matrix @ u||^2 equals the discrete residual functional."""

    matrix: np.ndarray  # (n, l): sqrt(w_j) * phi(x_j, v_k)
    rhs: np.ndarray     # (n,):   sqrt(w_j) * (f(x_j) - pin_value)
    grid: QuadratureGrid
    candidates: CandidateSet
    family: BasisFamily
    target: TargetFunction

    @field_validator("matrix", "rhs", mode="before")
    @classmethod
    def _as_array(cls, v):
        return _readonly(v)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def objective(self, coefficients: np.ndarray) -> float:
        r = self.rhs - self.matrix @ np.asarray(coefficients, dtype=float)
        return float(r @ r)


class IterationRecord(_ArrayModel):
    """State after one completed outer NNLS iteration."""

    iter: int
    residual_norm: float
    support_size: int
    coefficients: np.ndarray
    degenerate: bool = False

    @field_validator("coefficients", mode="before")
    @classmethod
    def _as_array(cls, v):
        return _readonly(v)


class NnlsTrace(_ArrayModel):
    """Full outer-iteration history of one NNLS solve plus its provenance."""

    records: list[IterationRecord] = Field(default_factory=list)
    terminated: TerminationReason
    zero_tol: float
    candidate_values: np.ndarray
    family: BasisFamily
    target: Optional[TargetFunction] = None

    @field_validator("candidate_values", mode="before")
    @classmethod
    def _as_array(cls, v):
        return _readonly(v)

    @property
    def final(self) -> int:
        return len(self.records) - 1

    @property
    def attained_sizes(self) -> list[int]:
        return sorted({r.support_size for r in self.records})


class SparseApproximant(BaseModel):
    """pin_value + sum u_i phi(x, v_i), terms sorted by ascending v."""

    model_config = ConfigDict(frozen=True)

    terms: list[Term] = Field(default_factory=list)
    pin_value: float = 0.0
    family: BasisFamily
    target: Optional[TargetFunction] = None
    selected_iter: int = 0
    residual_norm: float = 0.0

    @field_validator("terms")
    @classmethod
    def _check_terms(cls, terms: list[Term]) -> list[Term]:
        for t in terms:
            if not t.u > 0:
                raise ValueError(f"coefficients must be positive, got u={t.u}")
        vs = [t.v for t in terms]
        if any(v2 <= v1 for v1, v2 in zip(vs, vs[1:])):
            raise ValueError("term parameters v must be distinct and ascending")
        return terms

    @property
    def m(self) -> int:
        return len(self.terms)


class ErrorReport(_ArrayModel):
    """Pointwise accuracy eps(x_j) and the weighted residual on a grid."""

    nodes: np.ndarray
    epsilon: np.ndarray
    max_epsilon: float
    residual_norm: float

    @field_validator("nodes", "epsilon", mode="before")
    @classmethod
    def _as_array(cls, v):
        return _readonly(v)


class ExperimentConfig(BaseModel):
    """Fully specified approximation run."""

    model_config = ConfigDict(frozen=True)

    name: str = "custom"
    target: TargetFunction
    family: BasisFamily
    a: float
    b: float
    transform: TransformKind
    weight: WeightKind
    n: int = Field(ge=1)
    l: int = Field(ge=1)  # noqa: E741
    c: float
    d: float
    spacing: Spacing = Spacing.GEOMETRIC
    m: int = Field(ge=1)
    max_outer: int = Field(default=500, ge=1)
    eval_n: int = Field(default=0, ge=0)  # 0: evaluate on the fitting grid


class RunManifest(BaseModel):
    """Record of one CLI run: config echo, files written, timings, solver summary."""

    command: str
    config: Optional[ExperimentConfig] = None
    outputs: list[str] = Field(default_factory=list)
    timing: dict[str, float] = Field(default_factory=dict)
    solver_summary: dict = Field(default_factory=dict)
    error: str = ""
    created_at: datetime = Field(default_factory=lambda: datetime.now(timezone.utc))
