from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from nilquiver.core.exact_linalg import ExactField
from nilquiver.models.algebra import BoundQuiverAlgebra, Relation

VertexMatrices = Dict[str, np.ndarray]


class Module:
    """A representation of a bound quiver algebra: one space per vertex, one matrix per arrow.

    Matrices are target-dim x source-dim and act on column vectors (left modules).
    Instances are treated as immutable; path actions are memoised.
    """

    def __init__(
        self,
        algebra: BoundQuiverAlgebra,
        field: ExactField,
        dims: Dict[str, int],
        matrices: VertexMatrices,
    ):
        self.algebra = algebra
        self.field = field
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        self.matrices = matrices
        self._actions: Dict[int, np.ndarray] = {}

    @property
    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def matrix(self, arrow: str) -> np.ndarray:
        return self.matrices[arrow]

    def word_action(self, word: Tuple[str, ...]) -> np.ndarray:
        out = self.matrices[word[0]]
        for name in word[1:]:
            out = self.field.matmul(self.matrices[name], out)
        return out

    def action(self, index: int) -> np.ndarray:
        """Matrix by which the basis element ``index`` acts."""
        if index not in self._actions:
            element = self.algebra.basis[index]
            if element.word:
                self._actions[index] = self.word_action(element.word)
            else:
                self._actions[index] = self.field.identity(self.dims[element.source])
        return self._actions[index]

    def relation_value(self, relation: Relation) -> np.ndarray:
        first = relation.terms[0][1]
        src = self.algebra.arrow(first[0]).source
        tgt = self.algebra.arrow(first[-1]).target
        total = self.field.zeros(self.dims[tgt], self.dims[src])
        for coef, word in relation.terms:
            total = self.field.add(total, self.field.scale(coef, self.word_action(word)))
        return total

    def offsets(self) -> Dict[str, int]:
        out, acc = {}, 0
        for v in self.algebra.vertices:
            out[v] = acc
            acc += self.dims[v]
        return out

    def __repr__(self) -> str:
        support = {v: d for v, d in self.dims.items() if d}
        return f"Module({self.algebra.kind}, s={self.algebra.s}, dims={support})"


class HomSpace(NamedTuple):
    source: Module
    target: Module
    basis: List[VertexMatrices]

    @property
    def dim(self) -> int:
        return len(self.basis)


class ModuleMap(NamedTuple):
    """A module homomorphism given by one matrix per vertex."""

    source: Module
    target: Module
    matrices: VertexMatrices

    def at(self, vertex: str) -> np.ndarray:
        return self.matrices[vertex]


class Submodule(NamedTuple):
    """A submodule as a module together with its inclusion."""

    module: Module
    inclusion: ModuleMap


class Quotient(NamedTuple):
    module: Module
    projection: ModuleMap
    lift: VertexMatrices  # columns spanning a complement, one block per vertex


class MonObject(NamedTuple):
    """Tuple (M_1 -> M_2 -> ... -> M_s) of corner modules with connecting maps."""

    modules: List[Module]
    maps: List[VertexMatrices]  # maps[t-1]: M_t -> M_{t+1}
    is_mono: bool

    @property
    def s(self) -> int:
        return len(self.modules)


class ResolutionStep(NamedTuple):
    """One projective term: generators (vertex, vector of the previous term or of M)."""

    vertices: List[str]
    projective: Module
    labels: Dict[str, List[Tuple[int, int]]]  # vertex -> (generator, basis path) per coordinate
    differential: Optional[List[np.ndarray]]  # image of each generator in the previous term


class ProjectiveResolution(NamedTuple):
    module: Module
    steps: List[ResolutionStep]
    complete: bool

    @property
    def length(self) -> int:
        return max(len(self.steps) - 1, 0)
