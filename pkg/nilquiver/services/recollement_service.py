"""The recollement of N_s(Q) at the top idempotent e = Σ e(i_s).

The corner algebra e N_s(Q) e is identified with kQ/J^s. ``r_of`` and
``c_of`` use the socle and radical series of a corner module; ``generic_r``
and ``ell_of`` compute the adjoint functors from their definitions and are
used to cross-check the closed forms.
"""

import logging
from typing import Dict, List, NamedTuple, Tuple

import numpy as np

from nilquiver.core.exceptions import IncompatibleModules, NilquiverError, TransferViolation
from nilquiver.models.algebra import NilpotentQuiverAlgebra, TruncatedPathAlgebra
from nilquiver.models.module import Module, ModuleMap, Quotient, VertexMatrices
from nilquiver.models.quiver import DimFiltration, Path, Quiver
from nilquiver.services.algebra_service import algebra_service
from nilquiver.services.qh_service import qh_service
from nilquiver.services.quiver_service import quiver_service
from nilquiver.services.repmod_service import repmod_service

logger = logging.getLogger(__name__)


class RecollementContext(NamedTuple):
    nsq: NilpotentQuiverAlgebra
    corner: TruncatedPathAlgebra
    e: Dict[int, int]
    phi: List[int]  # corner basis index -> N_s(Q) basis index

    @property
    def s(self) -> int:
        return self.nsq.s

    @property
    def base(self) -> Quiver:
        return self.nsq.base


class FibreData(NamedTuple):
    qr: Module
    grassmannian_dims: DimFiltration  # dd - Dim c(M)
    nonempty_possible: bool  # Dim c(M) <= dd <= Dim r(M)


class DesingularisationCheck(NamedTuple):
    fibre_possible: bool
    end_equals_euler: bool
    end_dim: int
    euler_one: int


class RecollementService:
    def context(self, q: Quiver, s: int) -> RecollementContext:
        n = algebra_service.nilpotent_quiver_algebra(q, s)
        corner = algebra_service.truncated_path_algebra(q, s)
        if not algebra_service.check_corner_isomorphism(n):
            raise NilquiverError(f"e N_{s}(Q) e is not identified with kQ/J^{s}")
        phi = [algebra_service.phi_iso(n, corner.key(k)) for k in range(corner.dim)]
        return RecollementContext(n, corner, algebra_service.top_idempotent(n), phi)  # type: ignore[arg-type]

    def dim_filtration(self, ctx: RecollementContext, N: Module) -> DimFiltration:
        return ctx.nsq.staircase.filtration_of(N.dims)

    # ------------------------------------------------------------------
    # e and its adjoints
    # ------------------------------------------------------------------

    def restrict_e(self, ctx: RecollementContext, N: Module) -> Module:
        """e N over kQ/J^s: spaces N_{i_s}, an arrow a acting as b(j_{s-1}) a_s."""
        st, s, field = ctx.nsq.staircase, ctx.s, N.field
        dims = {i: N.dims[st.vertex(i, s)] for i in ctx.base.vertices}
        mats = {}
        for a in ctx.base.arrows:
            if s == 1:
                continue
            mats[a.name] = field.matmul(
                N.matrices[st.vertical(a.target, s - 1)], N.matrices[st.diagonal(a.name, s)]
            )
        return repmod_service.make_module(ctx.corner, dims, mats, field)

    def _layered(self, ctx: RecollementContext, M: Module, layers: List[VertexMatrices]) -> Module:
        """N_s(Q)-module on nested subspaces layers[t-1] of M; verticals include, diagonals restrict."""
        st, field = ctx.nsq.staircase, M.field
        dims: Dict[str, int] = {}
        mats: VertexMatrices = {}
        for t in range(1, ctx.s + 1):
            for i in ctx.base.vertices:
                dims[st.vertex(i, t)] = layers[t - 1][i].shape[1]
        for t in range(1, ctx.s):
            for i in ctx.base.vertices:
                x = field.solve_matrix(layers[t][i], layers[t - 1][i])
                if x is None:
                    raise IncompatibleModules(f"layer {t} at {i} is not inside layer {t + 1}")
                mats[st.vertical(i, t)] = x
        for t in range(2, ctx.s + 1):
            for a in ctx.base.arrows:
                image = field.matmul(M.matrices[a.name], layers[t - 1][a.source])
                x = field.solve_matrix(layers[t - 2][a.target], image)
                if x is None:
                    raise IncompatibleModules(f"{a.name} does not lower layer {t}")
                mats[st.diagonal(a.name, t)] = x
        return repmod_service.make_module(ctx.nsq, dims, mats, field)

    def _socle_layers(self, ctx: RecollementContext, M: Module) -> List[VertexMatrices]:
        layers = [repmod_service.socle_power(M, t) for t in range(1, ctx.s)]
        layers.append({i: M.field.identity(M.dims[i]) for i in ctx.base.vertices})
        return layers

    def _radical_layers(self, ctx: RecollementContext, M: Module) -> List[VertexMatrices]:
        return [repmod_service.radical_power(M, ctx.s - t) for t in range(1, ctx.s + 1)]

    def r_of(self, ctx: RecollementContext, M: Module) -> Module:
        """r(M) with layer t equal to soc^t(M)."""
        return self._layered(ctx, M, self._socle_layers(ctx, M))

    def c_of(self, ctx: RecollementContext, M: Module) -> Module:
        """c(M) with layer t equal to J^{s-t} M."""
        return self._layered(ctx, M, self._radical_layers(ctx, M))

    def c_to_r_map(self, ctx: RecollementContext, M: Module) -> ModuleMap:
        """c(M) -> r(M) induced by J^{s-t} M ⊆ soc^t(M)."""
        field, st = M.field, ctx.nsq.staircase
        socle, radical = self._socle_layers(ctx, M), self._radical_layers(ctx, M)
        mats: VertexMatrices = {}
        for t in range(1, ctx.s + 1):
            for i in ctx.base.vertices:
                x = field.solve_matrix(socle[t - 1][i], radical[t - 1][i])
                if x is None:
                    raise TransferViolation(f"J^{ctx.s - t}M is not inside soc^{t}M at {i}")
                mats[st.vertex(i, t)] = x
        f = ModuleMap(self.c_of(ctx, M), self.r_of(ctx, M), mats)
        if not repmod_service.is_injective(f):
            raise TransferViolation("c(M) -> r(M) is not injective")
        return f

    def ell_of(self, ctx: RecollementContext, M: Module) -> Module:
        """ℓ(M) as the cokernel of ℓ(P_1) -> ℓ(P_0), ℓ((kQ/J^s)e_i) = P(i_s)."""
        n, st, field = ctx.nsq, ctx.nsq.staircase, M.field
        if M.is_zero():
            return repmod_service.zero_module(n, field)
        res = repmod_service.minimal_projective_resolution(M, max_len=1, truncate=True)
        top = res.steps[0]
        lp0, labels0 = repmod_service.projective_sum(
            n, [st.vertex(v, ctx.s) for v in top.vertices], field
        )
        if len(res.steps) == 1:
            return lp0
        rel = res.steps[1]
        lp1, labels1 = repmod_service.projective_sum(
            n, [st.vertex(v, ctx.s) for v in rel.vertices], field
        )
        position = {v: {lab: k for k, lab in enumerate(labs)} for v, labs in labels0.items()}
        # image of each relation generator in ℓ(P_0): Σ c φ(p) g
        images: List[List[Tuple[int, int, object]]] = []
        for h, w in enumerate(rel.vertices):
            vec = rel.differential[h]  # type: ignore[index]
            images.append(
                [
                    (g, ctx.phi[p], vec[pos])
                    for pos, (g, p) in enumerate(top.labels[w])
                    if vec[pos] != 0
                ]
            )
        mats: VertexMatrices = {}
        for u in n.vertices:
            m = field.zeros(len(labels0[u]), len(labels1[u]))
            for col, (h, q) in enumerate(labels1[u]):
                for g, x, coef in images[h]:
                    r = n.compose(q, x)
                    if r is not None:
                        m[position[u][(g, r)], col] += coef
            mats[u] = field.reduce(m)
        return repmod_service.cokernel(ModuleMap(lp1, lp0, mats)).module

    def _corner_column(
        self, ctx: RecollementContext, v: str, field
    ) -> Tuple[Module, Dict[str, List[int]]]:
        """e N e(v) as a kQ/J^s-module: N-basis paths from v into layer s."""
        n, st = ctx.nsq, ctx.nsq.staircase
        coords = {
            i: [p for p in n.basis_from(v) if n.basis[p].target == st.vertex(i, ctx.s)]
            for i in ctx.base.vertices
        }
        position = {i: {p: k for k, p in enumerate(ps)} for i, ps in coords.items()}
        mats: VertexMatrices = {}
        for a in ctx.base.arrows:
            m = field.zeros(len(coords[a.target]), len(coords[a.source]))
            x = algebra_service.phi_iso(n, Path(a.source, a.target, (a.name,)))
            if x is not None:
                for col, y in enumerate(coords[a.source]):
                    z = n.compose(x, y)
                    if z is not None:
                        m[position[a.target][z], col] = field.scalar(1)
            mats[a.name] = m
        dims = {i: len(ps) for i, ps in coords.items()}
        return Module(ctx.corner, field, dims, mats), coords

    def generic_r(self, ctx: RecollementContext, M: Module) -> Module:
        """r(M) = Hom(e N e(v), M) at each vertex v, arrows acting by precomposition."""
        n, field = ctx.nsq, M.field
        columns = {v: self._corner_column(ctx, v, field) for v in n.vertices}
        homs = {v: repmod_service.hom_basis(columns[v][0], M).basis for v in n.vertices}

        def flatten(f: VertexMatrices) -> np.ndarray:
            return np.concatenate([f[i].reshape(-1) for i in ctx.base.vertices])

        mats: VertexMatrices = {}
        for arrow in n.quiver.arrows:
            v, w = arrow.source, arrow.target
            x = n.arrow_element(arrow.name)
            coords_v, coords_w = columns[v][1], columns[w][1]
            right = {}
            for i in ctx.base.vertices:
                pos = {p: k for k, p in enumerate(coords_v[i])}
                m = field.zeros(len(coords_v[i]), len(coords_w[i]))
                for col, y in enumerate(coords_w[i]):
                    z = n.compose(y, x) if x is not None else None
                    if z is not None:
                        m[pos[z], col] = field.scalar(1)
                right[i] = m
            target_basis = homs[w]
            if not homs[v] or not target_basis:
                mats[arrow.name] = field.zeros(len(target_basis), len(homs[v]))
                continue
            basis_matrix = np.stack([flatten(g) for g in target_basis], axis=1)
            images = np.stack(
                [flatten({i: field.matmul(f[i], right[i]) for i in ctx.base.vertices})
                 for f in homs[v]],
                axis=1,
            )
            coords = field.solve_matrix(basis_matrix, images)
            if coords is None:
                raise TransferViolation(f"precomposition with {arrow.name} leaves Hom")
            mats[arrow.name] = coords
        dims = {v: len(homs[v]) for v in n.vertices}
        return repmod_service.make_module(n, dims, mats, field)

    def q_of(self, ctx: RecollementContext, N: Module) -> Module:
        """N modulo the submodule generated by its layer-s spaces."""
        st = ctx.nsq.staircase
        tops = {
            st.vertex(i, ctx.s): N.field.identity(N.dims[st.vertex(i, ctx.s)])
            for i in ctx.base.vertices
        }
        generated = repmod_service.submodule(N, tops)
        return repmod_service.quotient(N, generated.inclusion.matrices).module

    def is_stable(self, ctx: RecollementContext, N: Module) -> bool:
        return qh_service.is_delta_filtered(N)

    # ------------------------------------------------------------------
    # fibres of the collapsing map
    # ------------------------------------------------------------------

    def fibre_data(self, ctx: RecollementContext, M: Module, dd: DimFiltration) -> FibreData:
        r = self.r_of(ctx, M)
        dim_c = self.dim_filtration(ctx, self.c_of(ctx, M))
        dim_r = self.dim_filtration(ctx, r)
        flag = dim_c.leq(dd) and dd.leq(dim_r)
        return FibreData(self.q_of(ctx, r), dd.minus(dim_c), flag)

    def _qr_quotient(self, ctx: RecollementContext, M: Module) -> Tuple[Quotient, List[VertexMatrices]]:
        f = self.c_to_r_map(ctx, M)
        image = repmod_service.image(f)
        return repmod_service.quotient(f.target, image.inclusion.matrices), self._socle_layers(ctx, M)

    def psi_rank(self, ctx: RecollementContext, M: Module) -> Tuple[int, int]:
        """Rank of End(M) -> End(qr(M)), f -> qr(f), and dim End(qr(M))."""
        field, st = M.field, ctx.nsq.staircase
        qr, socle = self._qr_quotient(ctx, M)
        target = repmod_service.hom_dim(qr.module, qr.module)
        vectors = []
        for f in repmod_service.hom_basis(M, M).basis:
            parts = []
            for t in range(1, ctx.s + 1):
                for i in ctx.base.vertices:
                    layer = socle[t - 1][i]
                    rf = field.solve_matrix(layer, field.matmul(f[i], layer))
                    if rf is None:
                        raise TransferViolation("endomorphism does not preserve the socle series")
                    v = st.vertex(i, t)
                    block = field.matmul(qr.projection.at(v), field.matmul(rf, qr.lift[v]))
                    parts.append(block.reshape(-1))
            vectors.append(np.concatenate(parts) if parts else field.zeros(0, 0).reshape(-1))
        if not vectors or vectors[0].size == 0:
            return 0, target
        return field.rank(np.stack(vectors, axis=1)), target

    def desingularisation_check(
        self, ctx: RecollementContext, M: Module, dd: DimFiltration
    ) -> DesingularisationCheck:
        """Whether the fibre over M can be non-empty, and whether dim End(M) = ⟨dd, dd⟩^(1)."""
        possible = self.fibre_data(ctx, M, dd).nonempty_possible
        end_dim = repmod_service.hom_dim(M, M)
        euler_one = quiver_service.euler_form_one(ctx.base, dd)
        return DesingularisationCheck(possible, end_dim == euler_one, end_dim, euler_one)


recollement_service = RecollementService()
