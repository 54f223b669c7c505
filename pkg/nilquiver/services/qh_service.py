"""Quasi-hereditary structure of N_s(Q).

Simples are indexed by layered vertices i_t. Standard modules are built in
closed form; costandard modules come from the injective coresolution and
tilting modules are inflated injectives of the layer quotients.
"""

import logging
from typing import Dict, Optional, Union

from nilquiver.core.exact_linalg import ExactField, RationalField, default_field
from nilquiver.core.exceptions import InvalidInput, NegativeMultiplicity
from nilquiver.models.algebra import NilpotentQuiverAlgebra
from nilquiver.models.module import Module, ModuleMap, VertexMatrices
from nilquiver.models.quiver import DimFiltration
from nilquiver.services.algebra_service import algebra_service
from nilquiver.services.repmod_service import repmod_service

logger = logging.getLogger(__name__)

DimVector = Dict[str, int]


class QHService:
    def _check_index(self, n: NilpotentQuiverAlgebra, i: str, t: int) -> str:
        if i not in n.base.vertices or not 1 <= t <= n.s:
            raise InvalidInput(f"no layered simple {i}_{t} for s={n.s}")
        return n.staircase.vertex(i, t)

    def projective(
        self, n: NilpotentQuiverAlgebra, i: str, t: int, field: Optional[ExactField] = None
    ) -> Module:
        v = self._check_index(n, i, t)
        return repmod_service.projective_module(n, v, field or default_field())

    def injective(
        self, n: NilpotentQuiverAlgebra, i: str, t: int, field: Optional[ExactField] = None
    ) -> Module:
        v = self._check_index(n, i, t)
        return repmod_service.injective_module(n, v, field or default_field())

    def standard_module(
        self, n: NilpotentQuiverAlgebra, i: str, t: int, field: Optional[ExactField] = None
    ) -> Module:
        """Δ(i_t): k at i_t, ..., i_s joined by identity verticals, diagonals zero."""
        self._check_index(n, i, t)
        field = field or default_field()
        st = n.staircase
        dims = {st.vertex(i, u): 1 for u in range(t, n.s + 1)}
        mats = {st.vertical(i, u): [[1]] for u in range(t, n.s)}
        return repmod_service.make_module(n, dims, mats, field, validate=False)

    def _injective_step(
        self, n: NilpotentQuiverAlgebra, i: str, t: int, field: ExactField
    ) -> ModuleMap:
        """I(i_t) -> I(i_{t-1}), dual to left multiplication by b(i_{t-1})."""
        st = n.staircase
        upper = repmod_service.injective_module(n, st.vertex(i, t), field)
        lower = repmod_service.injective_module(n, st.vertex(i, t - 1), field)
        b = n.arrow_element(st.vertical(i, t - 1))
        mats: VertexMatrices = {}
        for w in n.vertices:
            cols = [p for p in n.basis_to(st.vertex(i, t)) if n.basis[p].source == w]
            rows = [q for q in n.basis_to(st.vertex(i, t - 1)) if n.basis[q].source == w]
            position = {p: k for k, p in enumerate(cols)}
            m = field.zeros(len(rows), len(cols))
            for r, q in enumerate(rows):
                p = n.compose(b, q) if b is not None else None
                if p is not None:
                    m[r, position[p]] = field.scalar(1)
            mats[w] = m
        return ModuleMap(upper, lower, mats)

    def _largest_submodule_with_factors(
        self, M: Module, allowed: set
    ) -> Module:
        """Largest submodule of M whose composition factors sit at ``allowed`` vertices."""
        field = M.field
        spaces = {v: field.zeros(M.dims[v], 0) for v in M.algebra.vertices}
        while True:
            quotient = repmod_service.quotient(M, spaces)
            socle = repmod_service.socle(quotient.module)
            grow = {v: x for v, x in socle.items() if v in allowed and x.shape[1]}
            if not grow:
                break
            for v, x in grow.items():
                spaces[v] = field.hstack(
                    [spaces[v], field.matmul(quotient.lift[v], x)], M.dims[v]
                )
        return repmod_service.submodule_from_spaces(M, spaces).module

    def costandard_module(
        self, n: NilpotentQuiverAlgebra, i: str, t: int, field: Optional[ExactField] = None
    ) -> Module:
        """∇(i_t): kernel of I(i_t) -> I(i_{t-1}); for t = 1 the socle-series construction."""
        self._check_index(n, i, t)
        field = field or default_field()
        st = n.staircase
        if t == 1:
            allowed = {v for v in n.vertices if st.layer(v) > 1} | {st.vertex(i, 1)}
            return self._largest_submodule_with_factors(
                repmod_service.injective_module(n, st.vertex(i, 1), field), allowed
            )
        step = self._injective_step(n, i, t, field)
        if any(
            field.rank(step.at(v)) != step.target.dims[v] for v in n.vertices
        ):
            logger.warning("⚠️ I(%s_%d) -> I(%s_%d) is not onto", i, t, i, t - 1)
        return repmod_service.kernel(step).module

    def inflate(self, n: NilpotentQuiverAlgebra, M: Module, shift: int) -> Module:
        """Pull a module over N_s/(E_shift) ≅ N_{s-shift} back to N_s."""
        quotient, _ = algebra_service.layer_quotient(n, shift)
        if M.algebra is not quotient:
            raise InvalidInput("module does not live over the requested layer quotient")
        st, small = n.staircase, quotient.staircase
        dims = {}
        for v, d in M.dims.items():
            i, u = small.locate(v)
            dims[st.vertex(i, u + shift)] = d
        mats = {}
        for name, m in M.matrices.items():
            kind, label, u = small.kind(name)
            if kind == "vertical":
                mats[st.vertical(label, u + shift)] = m
            else:
                mats[st.diagonal(label, u + shift)] = m
        return repmod_service.make_module(n, dims, mats, M.field)

    def tilting_module(
        self, n: NilpotentQuiverAlgebra, i: str, t: int, field: Optional[ExactField] = None
    ) -> Module:
        """T(i_t): the injective hull of the top simple over N_{s-t+1}, inflated."""
        self._check_index(n, i, t)
        field = field or default_field()
        quotient, _ = algebra_service.layer_quotient(n, t - 1)
        top = quotient.staircase.vertex(i, quotient.s)
        hull = repmod_service.injective_module(quotient, top, field)
        return self.inflate(n, hull, t - 1)

    def is_delta_filtered(self, M: Module) -> bool:
        """Every vertical arrow acts injectively."""
        st = M.algebra.staircase  # type: ignore[attr-defined]
        return all(
            M.field.rank(M.matrices[b]) == M.matrices[b].shape[1]
            for b in st.vertical_arrows()
        )

    def delta_decomposition(
        self, n: NilpotentQuiverAlgebra, dd: Union[DimFiltration, DimVector]
    ) -> Dict[str, int]:
        """Multiplicities m with dd = Σ m_{i_t} [Δ(i_t)]."""
        st = n.staircase
        dims = st.dims_of(dd) if isinstance(dd, DimFiltration) else dd
        out: Dict[str, int] = {}
        for t in range(1, n.s + 1):
            for i in n.base.vertices:
                below = dims.get(st.vertex(i, t - 1), 0) if t > 1 else 0
                m = dims.get(st.vertex(i, t), 0) - below
                if m < 0:
                    raise NegativeMultiplicity(st.vertex(i, t), m)
                out[st.vertex(i, t)] = m
        return out

    def nabla_decomposition(
        self, n: NilpotentQuiverAlgebra, dims: DimVector, field: Optional[ExactField] = None
    ) -> Dict[str, int]:
        """Multiplicities m with dims = Σ m_{i_t} [∇(i_t)]; the classes [∇(i_t)] form a basis."""
        field = field or default_field()
        st = n.staircase
        columns = [self.costandard_module(n, *st.locate(v), field).dims for v in n.vertices]
        qq = RationalField()
        a = qq.array([[c[w] for c in columns] for w in n.vertices])
        b = qq.array([[dims.get(w, 0)] for w in n.vertices])
        x = qq.solve_matrix(a, b)
        if x is None:
            raise InvalidInput("costandard classes do not span the dimension vector")
        out: Dict[str, int] = {}
        for v, m in zip(n.vertices, x[:, 0]):
            if m.denominator != 1:
                raise InvalidInput(f"∇-multiplicity of {v} is not an integer: {m}")
            if m < 0:
                raise NegativeMultiplicity(v, int(m), kind="∇")
            out[v] = int(m)
        return out

    def is_nabla_filtered(self, M: Module) -> bool:
        """Ext^1(Δ(i_t), M) = 0 for every layered vertex i_t."""
        n = M.algebra
        st = n.staircase  # type: ignore[attr-defined]
        return all(
            repmod_service.ext_dim(self.standard_module(n, *st.locate(v), M.field), M, 1) == 0  # type: ignore[arg-type]
            for v in n.vertices
        )

    # ------------------------------------------------------------------
    # dimension identities of the (co)resolutions and tilting filtrations
    # ------------------------------------------------------------------

    def res_holds(self, n: NilpotentQuiverAlgebra, i: str, t: int, field: ExactField) -> bool:
        """[P(i_t)] - Σ_{a:i->j} [P(j_{t-1})] = [Δ(i_t)] for t >= 2."""
        if t < 2:
            return True
        lhs = dict(self.projective(n, i, t, field).dims)
        for a in n.base.arrows_from(i):
            for v, d in self.projective(n, a.target, t - 1, field).dims.items():
                lhs[v] -= d
        return lhs == self.standard_module(n, i, t, field).dims

    def cores_holds(self, n: NilpotentQuiverAlgebra, i: str, t: int, field: ExactField) -> bool:
        """[∇(i_t)] = [I(i_t)] - [I(i_{t-1})] for t >= 2."""
        if t < 2:
            return True
        upper = self.injective(n, i, t, field).dims
        lower = self.injective(n, i, t - 1, field).dims
        expected = {v: upper[v] - lower[v] for v in n.vertices}
        return expected == self.costandard_module(n, i, t, field).dims

    def filt_holds(self, n: NilpotentQuiverAlgebra, i: str, t: int, field: ExactField) -> bool:
        """[T(i_t)] = [Δ(i_t)] + Σ_{a:j->i} [T(j_{t+1})]."""
        expected = dict(self.standard_module(n, i, t, field).dims)
        if t < n.s:
            for a in n.base.arrows_to(i):
                for v, d in self.tilting_module(n, a.source, t + 1, field).dims.items():
                    expected[v] += d
        return expected == self.tilting_module(n, i, t, field).dims


qh_service = QHService()
