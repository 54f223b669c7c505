from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from nilquiver import __version__
from nilquiver.models.quiver import Arrow, Quiver

Entry = Union[int, str]


class ArrowSpec(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    source: str = Field(..., alias="from")
    target: str = Field(..., alias="to")


class QuiverFile(BaseModel):
    vertices: List[str]
    arrows: List[ArrowSpec] = []

    def to_quiver(self) -> Quiver:
        return Quiver(
            vertices=tuple(self.vertices),
            arrows=tuple(Arrow(a.name, a.source, a.target) for a in self.arrows),
        )

    @classmethod
    def from_quiver(cls, q: Quiver) -> "QuiverFile":
        return cls(
            vertices=list(q.vertices),
            arrows=[ArrowSpec(name=a.name, source=a.source, target=a.target) for a in q.arrows],
        )


class AlgebraDescriptor(BaseModel):
    # quiver file path (relative to the module file) or the quiver itself
    quiver: Union[str, QuiverFile]
    kind: Literal["kQ/Js", "NsQ"]
    s: int

    @field_validator("s")
    @classmethod
    def positive_s(cls, v: int) -> int:
        if v < 1:
            raise ValueError("s must be positive")
        return v


class FieldSpec(BaseModel):
    p: int


class ModuleFile(BaseModel):
    algebra: AlgebraDescriptor
    dims: Dict[str, int]
    matrices: Dict[str, List[List[Entry]]] = {}
    field: Optional[FieldSpec] = None  # absent: entries are rationals


class RunInfo(BaseModel):
    version: str = __version__
    seed: int
    field: str
    samples: int  # 0 for exact commands


class NsqReport(BaseModel):
    run: RunInfo
    s: int
    staircase: QuiverFile
    relations: List[str]
    dim: int
    basis: List[str]
    semisimple: bool
    auslander_algebra: bool


class VerdictReport(BaseModel):
    run: RunInfo
    dd: str
    verdict: Literal["rigid-found", "no-rigid-among-samples"]
    witness: Optional[ModuleFile] = None
    sample_index: Optional[int] = None
    rational_ext1: Optional[int] = None
    min_ext1: Optional[int] = None
    histogram: Dict[str, int] = {}


class FibreReport(BaseModel):
    dd: str
    grassmannian_dims: str
    nonempty_possible: bool
    qr_dims: Dict[str, int]
    end_equals_euler: bool


class AnalyzeReport(BaseModel):
    run: RunInfo
    dims: Dict[str, int]
    dim_c: str
    dim_r: str
    ext1_corner: int
    ext1_c: int
    ext1_r: int
    rigid_corner: bool
    rigid_c: bool
    rigid_r: bool
    relaxed_property: bool
    psi_rank: int
    end_qr: int
    fibre: Optional[FibreReport] = None


class ComponentEntry(BaseModel):
    dd: str
    dim: int
    witness: ModuleFile


class ComponentsReport(BaseModel):
    run: RunInfo
    d: List[int]
    s: int
    components: List[ComponentEntry]
    histogram: Dict[str, int]
    filtrations: int
    truncated: bool = False


class SummandEntry(BaseModel):
    label: str
    multiplicity: int


class A2Report(BaseModel):
    run: RunInfo
    dd: str
    x_hat: List[int]
    y_hat: List[int]
    summands: List[SummandEntry]
    ext1: int
    certificate: str


class SepQuiverReport(BaseModel):
    run: RunInfo
    separation_quiver: QuiverFile
    dynkin_types: Optional[List[str]] = None
    obstruction: Optional[str] = None
    representation_finite: bool
    verdict: str


class QHEntry(BaseModel):
    index: str
    projective: str
    injective: str
    standard: str
    costandard: str
    tilting: str
    res: bool
    cores: bool
    filt: bool


class QHReport(BaseModel):
    run: RunInfo
    s: int
    rows: List[QHEntry]


class ProjectiveLiftReport(BaseModel):
    run: RunInfo
    index: str
    dd: str
    hom_eP: int
    hom_P: int
    hom_difference: int
    euler_P: int
    euler_equals_hom: bool
    corner_iso: bool
    fibre_formula: int
