import json
import logging
import os
from typing import Any, Optional, Union

from pydantic import ValidationError

from nilquiver.core.config import settings
from nilquiver.core.exact_linalg import ExactField, PrimeField, RationalField
from nilquiver.core.exceptions import ParseError
from nilquiver.models.algebra import BoundQuiverAlgebra, NilpotentQuiverAlgebra
from nilquiver.models.module import Module
from nilquiver.models.quiver import Quiver
from nilquiver.models.schemas import AlgebraDescriptor, FieldSpec, ModuleFile, QuiverFile
from nilquiver.services.algebra_service import algebra_service
from nilquiver.services.repmod_service import repmod_service

logger = logging.getLogger(__name__)


class FileService:
    """JSON quiver and module files."""

    def load_json(self, path: str) -> Any:
        try:
            with open(path, "r", encoding="utf-8") as f:
                return json.load(f)
        except OSError as e:
            raise ParseError(f"cannot read {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ParseError(f"{path} is not valid JSON: {e}") from e

    def quiver_from_data(self, data: Any) -> Quiver:
        try:
            return QuiverFile.model_validate(data).to_quiver()
        except ValidationError as e:
            raise ParseError(f"invalid quiver: {e}") from e

    def load_quiver(self, path: str) -> Quiver:
        return self.quiver_from_data(self.load_json(path))

    def field_for(self, spec: Optional[FieldSpec]) -> ExactField:
        if spec is None:
            return RationalField(settings.RATIONAL_SAMPLE_BOUND)
        try:
            return PrimeField(spec.p)
        except ValueError as e:
            raise ParseError(f"field p={spec.p}: {e}") from e

    def algebra_for(self, descriptor: AlgebraDescriptor, base_dir: str = ".") -> BoundQuiverAlgebra:
        if isinstance(descriptor.quiver, str):
            q = self.load_quiver(os.path.join(base_dir, descriptor.quiver))
        else:
            q = self.quiver_from_data(descriptor.quiver.model_dump(by_alias=True))
        if descriptor.kind == "NsQ":
            return algebra_service.nilpotent_quiver_algebra(q, descriptor.s)
        return algebra_service.truncated_path_algebra(q, descriptor.s)

    def module_from_file(self, mf: ModuleFile, base_dir: str = ".") -> Module:
        algebra = self.algebra_for(mf.algebra, base_dir)
        field = self.field_for(mf.field)
        unknown = set(mf.dims) - set(algebra.vertices)
        if unknown:
            raise ParseError(f"dims name unknown vertices {sorted(unknown)}")
        unknown = set(mf.matrices) - set(algebra.quiver.arrow_map)
        if unknown:
            raise ParseError(f"matrices name unknown arrows {sorted(unknown)}")
        try:
            matrices = {a: [[field.scalar(x) for x in row] for row in m] for a, m in mf.matrices.items()}
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad matrix entry: {e}") from e
        return repmod_service.make_module(algebra, mf.dims, matrices, field)

    def load_module(self, path: str) -> Module:
        try:
            mf = ModuleFile.model_validate(self.load_json(path))
        except ValidationError as e:
            raise ParseError(f"invalid module file {path}: {e}") from e
        return self.module_from_file(mf, os.path.dirname(os.path.abspath(path)))

    def module_to_file(self, M: Module, quiver: Optional[Union[str, Quiver]] = None) -> ModuleFile:
        """ModuleFile for M; the quiver is embedded unless a file reference is given."""
        algebra = M.algebra
        base = algebra.base if isinstance(algebra, NilpotentQuiverAlgebra) else algebra.quiver
        if quiver is None:
            quiver = base
        ref = quiver if isinstance(quiver, str) else QuiverFile.from_quiver(quiver)
        field = M.field
        return ModuleFile(
            algebra=AlgebraDescriptor(quiver=ref, kind=algebra.kind, s=algebra.s),  # type: ignore[arg-type]
            dims={v: d for v, d in M.dims.items()},
            matrices={
                a: [[field.format(x) for x in row] for row in m.tolist()]
                for a, m in M.matrices.items()
                if m.size
            },
            field=FieldSpec(p=field.p) if isinstance(field, PrimeField) else None,
        )


file_service = FileService()
