import logging
from fractions import Fraction
from typing import Any, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from nilquiver.core.config import settings
from nilquiver.core.exact_linalg import ExactField, PrimeField, RationalField
from nilquiver.core.exceptions import (
    IncompatibleModules,
    RelationViolated,
    ResolutionTooLong,
)
from nilquiver.models.algebra import BoundQuiverAlgebra
from nilquiver.models.module import (
    HomSpace,
    Module,
    ModuleMap,
    MonObject,
    ProjectiveResolution,
    Quotient,
    ResolutionStep,
    Submodule,
    VertexMatrices,
)
from nilquiver.services.algebra_service import algebra_service

logger = logging.getLogger(__name__)

# (source key, target key, matrix on the first module, matrix on the second module)
Constraint = Tuple[Hashable, Hashable, np.ndarray, np.ndarray]


class RepmodService:
    """Modules over bound quiver algebras: constructions, Hom, Ext and probes."""

    def __init__(self, trials: int = settings.PROBE_TRIALS):
        self.trials = trials

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    def make_module(
        self,
        algebra: BoundQuiverAlgebra,
        dims: Dict[str, int],
        matrices: Dict[str, Any],
        field: ExactField,
        validate: bool = True,
    ) -> Module:
        """Module from dims and arrow matrices; missing arrows act as zero."""
        dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        mats: VertexMatrices = {}
        for a in algebra.quiver.arrows:
            rows, cols = dims[a.target], dims[a.source]
            raw = matrices.get(a.name)
            if raw is None:
                mats[a.name] = field.zeros(rows, cols)
                continue
            m = raw if isinstance(raw, np.ndarray) else field.array(raw)
            if m.size == 0 and rows * cols == 0:
                m = field.zeros(rows, cols)
            if m.shape != (rows, cols):
                raise IncompatibleModules(
                    f"arrow {a.name} needs a {rows}x{cols} matrix, got {m.shape}"
                )
            mats[a.name] = field.reduce(m)
        module = Module(algebra, field, dims, mats)
        if validate:
            for relation in algebra.relations:
                if not field.is_zero(module.relation_value(relation)):
                    raise RelationViolated(relation.name)
        return module

    def zero_module(self, algebra: BoundQuiverAlgebra, field: ExactField) -> Module:
        return self.make_module(algebra, {}, {}, field, validate=False)

    def simple_module(self, algebra: BoundQuiverAlgebra, vertex: str, field: ExactField) -> Module:
        return self.make_module(algebra, {vertex: 1}, {}, field, validate=False)

    def projective_sum(
        self, algebra: BoundQuiverAlgebra, generators: Sequence[str], field: ExactField
    ) -> Tuple[Module, Dict[str, List[Tuple[int, int]]]]:
        """⊕ P(v) for the listed generator vertices, with coordinate labels (generator, path)."""
        labels: Dict[str, List[Tuple[int, int]]] = {v: [] for v in algebra.vertices}
        for g, v in enumerate(generators):
            for p in algebra.basis_from(v):
                labels[algebra.basis[p].target].append((g, p))
        position = {v: {lab: k for k, lab in enumerate(labs)} for v, labs in labels.items()}
        mats: VertexMatrices = {}
        for a in algebra.quiver.arrows:
            m = field.zeros(len(labels[a.target]), len(labels[a.source]))
            x = algebra.arrow_element(a.name)
            if x is not None:
                for col, (g, p) in enumerate(labels[a.source]):
                    q = algebra.compose(x, p)
                    if q is not None:
                        m[position[a.target][(g, q)], col] = field.scalar(1)
            mats[a.name] = m
        dims = {v: len(labs) for v, labs in labels.items()}
        return Module(algebra, field, dims, mats), labels

    def projective_module(self, algebra: BoundQuiverAlgebra, vertex: str, field: ExactField) -> Module:
        return self.projective_sum(algebra, [vertex], field)[0]

    def injective_module(self, algebra: BoundQuiverAlgebra, vertex: str, field: ExactField) -> Module:
        """Dual of the right projective at ``vertex``: coordinates are paths ending there."""
        coords = {v: [p for p in algebra.basis_to(vertex) if algebra.basis[p].source == v]
                  for v in algebra.vertices}
        position = {v: {p: k for k, p in enumerate(ps)} for v, ps in coords.items()}
        mats: VertexMatrices = {}
        for a in algebra.quiver.arrows:
            m = field.zeros(len(coords[a.target]), len(coords[a.source]))
            x = algebra.arrow_element(a.name)
            if x is not None:
                for row, q in enumerate(coords[a.target]):
                    p = algebra.compose(q, x)
                    if p is not None:
                        m[row, position[a.source][p]] = field.scalar(1)
            mats[a.name] = m
        dims = {v: len(ps) for v, ps in coords.items()}
        return Module(algebra, field, dims, mats)

    def direct_sum(self, *modules: Module) -> Module:
        if not modules:
            raise IncompatibleModules("direct sum of no modules")
        first = modules[0]
        if any(m.algebra is not first.algebra or m.field != first.field for m in modules):
            raise IncompatibleModules("summands live over different algebras or fields")
        field = first.field
        dims = {v: sum(m.dims[v] for m in modules) for v in first.algebra.vertices}
        mats = {
            a.name: field.block_diag([m.matrices[a.name] for m in modules])
            for a in first.algebra.quiver.arrows
        }
        return Module(first.algebra, field, dims, mats)

    # ------------------------------------------------------------------
    # sub and quotient modules
    # ------------------------------------------------------------------

    def submodule_from_spaces(self, M: Module, spaces: VertexMatrices) -> Submodule:
        """Submodule spanned by arrow-stable subspaces (columns, one block per vertex)."""
        field = M.field
        spaces = {v: spaces.get(v, field.zeros(M.dims[v], 0)) for v in M.algebra.vertices}
        mats: VertexMatrices = {}
        for a in M.algebra.quiver.arrows:
            image = field.matmul(M.matrices[a.name], spaces[a.source])
            x = field.solve_matrix(spaces[a.target], image)
            if x is None:
                raise IncompatibleModules(f"subspaces are not stable under {a.name}")
            mats[a.name] = x
        dims = {v: spaces[v].shape[1] for v in M.algebra.vertices}
        sub = Module(M.algebra, field, dims, mats)
        return Submodule(sub, ModuleMap(sub, M, spaces))

    def submodule(self, M: Module, generators: VertexMatrices) -> Submodule:
        """Smallest submodule containing the given vectors (columns per vertex)."""
        field = M.field
        spaces = {
            v: field.column_basis(generators[v]) if v in generators else field.zeros(M.dims[v], 0)
            for v in M.algebra.vertices
        }
        changed = True
        while changed:
            changed = False
            for a in M.algebra.quiver.arrows:
                image = field.matmul(M.matrices[a.name], spaces[a.source])
                if image.shape[1] == 0 or field.is_zero(image):
                    continue
                combined = np.hstack([spaces[a.target], image])
                if field.rank(combined) > spaces[a.target].shape[1]:
                    spaces[a.target] = field.column_basis(combined)
                    changed = True
        return self.submodule_from_spaces(M, spaces)

    def quotient(self, M: Module, spaces: VertexMatrices) -> Quotient:
        field = M.field
        lift: VertexMatrices = {}
        proj: VertexMatrices = {}
        for v in M.algebra.vertices:
            sub = spaces.get(v, field.zeros(M.dims[v], 0))
            comp = field.complement_basis(sub, M.dims[v])
            lift[v] = comp
            if M.dims[v] == 0:
                proj[v] = field.zeros(0, 0)
                continue
            inv = field.inverse_matrix(np.hstack([sub, comp]))
            proj[v] = inv[sub.shape[1]:, :]
        mats = {
            a.name: field.matmul(proj[a.target], field.matmul(M.matrices[a.name], lift[a.source]))
            for a in M.algebra.quiver.arrows
        }
        dims = {v: lift[v].shape[1] for v in M.algebra.vertices}
        Q = Module(M.algebra, field, dims, mats)
        return Quotient(Q, ModuleMap(M, Q, proj), lift)

    def kernel(self, f: ModuleMap) -> Submodule:
        field = f.source.field
        return self.submodule_from_spaces(
            f.source, {v: field.kernel_basis(f.at(v)) for v in f.source.algebra.vertices}
        )

    def image(self, f: ModuleMap) -> Submodule:
        field = f.source.field
        return self.submodule_from_spaces(
            f.target, {v: field.column_basis(f.at(v)) for v in f.target.algebra.vertices}
        )

    def cokernel(self, f: ModuleMap) -> Quotient:
        return self.quotient(f.target, self.image(f).inclusion.matrices)

    def is_injective(self, f: ModuleMap) -> bool:
        field = f.source.field
        return all(field.rank(f.at(v)) == f.source.dims[v] for v in f.source.algebra.vertices)

    # ------------------------------------------------------------------
    # radical and socle series
    # ------------------------------------------------------------------

    def radical_power(self, M: Module, t: int) -> VertexMatrices:
        """J^t M as column spaces; J^0 M is M with its standard basis."""
        field = M.field
        spaces = {v: field.identity(M.dims[v]) for v in M.algebra.vertices}
        for _ in range(t):
            spaces = {
                v: field.column_basis(
                    field.hstack(
                        [field.matmul(M.matrices[a.name], spaces[a.source])
                         for a in M.algebra.quiver.arrows_to(v)],
                        M.dims[v],
                    )
                )
                for v in M.algebra.vertices
            }
        return spaces

    def radical(self, M: Module) -> VertexMatrices:
        return self.radical_power(M, 1)

    def socle_power(self, M: Module, t: int) -> VertexMatrices:
        """soc^t(M): the largest submodule killed by J^t."""
        field = M.field
        spaces = {v: field.zeros(M.dims[v], 0) for v in M.algebra.vertices}
        for _ in range(t):
            # rows whose common kernel is the previous term
            annihilators = {
                v: field.kernel_basis(spaces[v].T).T for v in M.algebra.vertices
            }
            nxt = {}
            for v in M.algebra.vertices:
                blocks = [
                    field.matmul(annihilators[a.target], M.matrices[a.name])
                    for a in M.algebra.quiver.arrows_from(v)
                ]
                stacked = field.vstack(blocks, M.dims[v])
                nxt[v] = field.kernel_basis(stacked)
            spaces = nxt
        return spaces

    def socle(self, M: Module) -> VertexMatrices:
        return self.socle_power(M, 1)

    def socle_filtration(self, M: Module) -> List[VertexMatrices]:
        chain: List[VertexMatrices] = []
        t = 0
        while True:
            t += 1
            term = self.socle_power(M, t)
            chain.append(term)
            if sum(x.shape[1] for x in term.values()) == M.total_dim:
                return chain

    @staticmethod
    def space_dims(spaces: VertexMatrices) -> Dict[str, int]:
        return {v: x.shape[1] for v, x in spaces.items()}

    def top_generators(self, M: Module) -> List[Tuple[str, np.ndarray]]:
        """Lifts of a basis of top(M) = M / rad(M), vertex by vertex."""
        field = M.field
        rad = self.radical(M)
        gens = []
        for v in M.algebra.vertices:
            comp = field.complement_basis(rad[v], M.dims[v])
            gens.extend((v, comp[:, k]) for k in range(comp.shape[1]))
        return gens

    # ------------------------------------------------------------------
    # Hom spaces
    # ------------------------------------------------------------------

    def _intertwiners(
        self,
        field: ExactField,
        dims_m: Dict[Hashable, int],
        dims_n: Dict[Hashable, int],
        constraints: Sequence[Constraint],
    ) -> List[Dict[Hashable, np.ndarray]]:
        """Basis of tuples (F_v) with N_a F_src = F_tgt M_a for every constraint."""
        offsets: Dict[Hashable, int] = {}
        total = 0
        for v in dims_m:
            offsets[v] = total
            total += dims_n[v] * dims_m[v]
        if total == 0:
            return []
        rows = sum(dims_n[t] * dims_m[s] for s, t, _, _ in constraints)
        system = field.zeros(rows, total)
        base = 0
        for src, tgt, m_a, n_a in constraints:
            ms, mt, ns, nt = dims_m[src], dims_m[tgt], dims_n[src], dims_n[tgt]
            for r in range(nt):
                for c in range(ms):
                    row = base + r * ms + c
                    if ns:
                        cols = offsets[src] + np.arange(ns) * ms + c
                        system[row, cols] = system[row, cols] + n_a[r, :]
                    if mt:
                        cols = offsets[tgt] + r * mt + np.arange(mt)
                        system[row, cols] = system[row, cols] - m_a[:, c]
            base += nt * ms
        kernel = field.kernel_basis(field.reduce(system))
        basis = []
        for k in range(kernel.shape[1]):
            vec = kernel[:, k]
            basis.append(
                {
                    v: vec[offsets[v]: offsets[v] + dims_n[v] * dims_m[v]].reshape(
                        dims_n[v], dims_m[v]
                    )
                    for v in dims_m
                }
            )
        return basis

    def hom_basis(self, M: Module, N: Module) -> HomSpace:
        if M.algebra is not N.algebra and M.algebra.quiver != N.algebra.quiver:
            raise IncompatibleModules("Hom between modules over different quivers")
        constraints = [
            (a.source, a.target, M.matrices[a.name], N.matrices[a.name])
            for a in M.algebra.quiver.arrows
        ]
        basis = self._intertwiners(M.field, dict(M.dims), dict(N.dims), constraints)
        return HomSpace(M, N, basis)  # type: ignore[arg-type]

    def hom_dim(self, M: Module, N: Module) -> int:
        return self.hom_basis(M, N).dim

    def combine(self, field: ExactField, basis: List[VertexMatrices], coeffs: np.ndarray,
                template: Dict[str, int], target_dims: Dict[str, int]) -> VertexMatrices:
        out = {v: field.zeros(target_dims[v], template[v]) for v in template}
        for c, element in zip(coeffs, basis):
            for v in template:
                out[v] = field.add(out[v], field.scale(c, element[v]))
        return out

    # ------------------------------------------------------------------
    # projective resolutions and Ext
    # ------------------------------------------------------------------

    def minimal_projective_resolution(
        self, M: Module, max_len: Optional[int] = None, truncate: bool = False
    ) -> ProjectiveResolution:
        """Minimal resolution ... -> P_1 -> P_0 -> M built from top lifts of successive kernels.

        With ``truncate`` the computation stops after P_max_len instead of raising.
        """
        if max_len is None:
            max_len = settings.RESOLUTION_MAX_LEN
        field, algebra = M.field, M.algebra
        steps: List[ResolutionStep] = []
        current, embed = M, None  # embed: coordinates of current inside the previous term
        k = 0
        while not current.is_zero():
            gens = self.top_generators(current)
            vertices = [v for v, _ in gens]
            P, labels = self.projective_sum(algebra, vertices, field)
            pi = {
                w: field.hstack(
                    [field.matmul(current.action(p), gens[g][1].reshape(-1, 1))
                     for g, p in labels[w]],
                    current.dims[w],
                )
                for w in algebra.vertices
            }
            images = [
                gens[g][1] if embed is None else field.matmul(embed[v], gens[g][1].reshape(-1, 1))[:, 0]
                for g, v in enumerate(vertices)
            ]
            steps.append(ResolutionStep(vertices, P, labels, images))
            syzygy = self.kernel(ModuleMap(P, current, pi))
            if syzygy.module.is_zero():
                return ProjectiveResolution(M, steps, True)
            if k >= max_len:
                if truncate:
                    return ProjectiveResolution(M, steps, False)
                raise ResolutionTooLong(max_len)
            current, embed = syzygy.module, syzygy.inclusion.matrices
            k += 1
        return ProjectiveResolution(M, steps, True)

    def _hom_differential(self, upper: ResolutionStep, lower: ResolutionStep, N: Module) -> np.ndarray:
        """Matrix of Hom(P_j, N) -> Hom(P_{j+1}, N), f -> f ∘ d, in generator coordinates."""
        field = N.field
        col_off, acc = [], 0
        for v in lower.vertices:
            col_off.append(acc)
            acc += N.dims[v]
        cols = acc
        row_off, acc = [], 0
        for v in upper.vertices:
            row_off.append(acc)
            acc += N.dims[v]
        d = field.zeros(acc, cols)
        for h, w in enumerate(upper.vertices):
            vec = upper.differential[h]
            for pos, (g, p) in enumerate(lower.labels[w]):
                coef = vec[pos]
                if coef == 0:
                    continue
                v = lower.vertices[g]
                block = field.scale(coef, N.action(p))
                r0, c0 = row_off[h], col_off[g]
                d[r0:r0 + N.dims[w], c0:c0 + N.dims[v]] = field.add(
                    d[r0:r0 + N.dims[w], c0:c0 + N.dims[v]], block
                )
        return d

    def ext_dim(self, M: Module, N: Module, k: int) -> int:
        """dim Ext^k(M, N) as cohomology of Hom(P_•, N)."""
        if k < 0:
            raise ValueError("k must be non-negative")
        res = self.minimal_projective_resolution(M, max_len=k + 1, truncate=True)
        steps = res.steps
        if len(steps) <= k:
            return 0
        field = N.field
        dim_k = sum(N.dims[v] for v in steps[k].vertices)
        rank_out = 0
        if len(steps) > k + 1:
            rank_out = field.rank(self._hom_differential(steps[k + 1], steps[k], N))
        rank_in = 0
        if k > 0:
            rank_in = field.rank(self._hom_differential(steps[k], steps[k - 1], N))
        return dim_k - rank_out - rank_in

    def is_rigid(self, M: Module) -> bool:
        return self.ext_dim(M, M, 1) == 0

    # ------------------------------------------------------------------
    # randomized probes
    # ------------------------------------------------------------------

    def _random_hom(self, H: HomSpace, rng: np.random.Generator) -> VertexMatrices:
        field = H.source.field
        coeffs = field.random(rng, (H.dim,))
        return self.combine(field, H.basis, coeffs, H.source.dims, H.target.dims)

    def iso_probe(
        self, M: Module, N: Module, rng: np.random.Generator, trials: Optional[int] = None
    ) -> bool:
        """True once a random homomorphism is invertible at every vertex."""
        trials = trials or self.trials
        if M.dims != N.dims:
            return False
        if M.is_zero():
            return True
        H = self.hom_basis(M, N)
        if H.dim == 0:
            return False
        field = M.field
        for _ in range(trials):
            f = self._random_hom(H, rng)
            if all(field.rank(f[v]) == M.dims[v] for v in M.algebra.vertices):
                return True
        logger.debug("⚠️ iso_probe: no invertible homomorphism in %d trials", trials)
        return False

    def _factor(self, field: ExactField, matrix: np.ndarray) -> List[List[Any]]:
        """Distinct monic irreducible factors of the characteristic polynomial."""
        x = sympy.Symbol("x")
        if isinstance(field, PrimeField):
            entries = [[int(e) for e in row] for row in matrix.tolist()]
            poly = sympy.Poly(sympy.Matrix(entries).charpoly(x).as_expr(), x, modulus=field.p)
        else:
            entries = [[sympy.Rational(str(e)) for e in row] for row in matrix.tolist()]
            poly = sympy.Poly(sympy.Matrix(entries).charpoly(x).as_expr(), x, domain="QQ")
        factors = []
        for g, _ in poly.factor_list()[1]:
            coeffs = [field.scalar(Fraction(str(c))) if not isinstance(field, PrimeField)
                      else field.scalar(int(c)) for c in g.all_coeffs()]
            lead = field.inverse(coeffs[0])
            factors.append([field.reduce(np.array([c * lead], dtype=field.dtype))[0]
                            for c in coeffs])
        return factors

    def _evaluate(self, field: ExactField, coeffs: List[Any], matrix: np.ndarray) -> np.ndarray:
        n = matrix.shape[0]
        out = field.zeros(n, n)
        for c in coeffs:
            out = field.add(field.matmul(out, matrix), field.scale(c, field.identity(n)))
        return out

    def _primary_split(self, M: Module, f: VertexMatrices) -> List[Module]:
        field = M.field
        factors: List[List[Any]] = []
        for v in M.algebra.vertices:
            if M.dims[v]:
                for g in self._factor(field, f[v]):
                    if not any(list(map(str, g)) == list(map(str, h)) for h in factors):
                        factors.append(g)
        parts = []
        for g in factors:
            spaces = {}
            for v in M.algebra.vertices:
                n = M.dims[v]
                if n == 0:
                    spaces[v] = field.zeros(0, 0)
                    continue
                gv = self._evaluate(field, g, f[v])
                power = field.identity(n)
                for _ in range(n):
                    power = field.matmul(power, gv)
                spaces[v] = field.kernel_basis(power)
            if sum(x.shape[1] for x in spaces.values()):
                parts.append(self.submodule_from_spaces(M, spaces).module)
        return parts

    def fitting_decompose(
        self, M: Module, rng: np.random.Generator, trials: Optional[int] = None
    ) -> List[Module]:
        """Split M along generalized eigenspaces of random endomorphisms until nothing splits."""
        trials = trials or self.trials
        if M.is_zero():
            return []
        E = self.hom_basis(M, M)
        if E.dim == 1:
            return [M]
        for _ in range(trials):
            parts = self._primary_split(M, self._random_hom(E, rng))
            if len(parts) > 1:
                out: List[Module] = []
                for part in parts:
                    out.extend(self.fitting_decompose(part, rng, trials))
                return out
        return [M]

    # ------------------------------------------------------------------
    # monomorphism category and field changes
    # ------------------------------------------------------------------

    def to_mono_object(self, N: Module) -> MonObject:
        """Φ*: M_t = e_t N over kQ/J^t, a acting as b(j_{t-1}) a_t, φ_t = b(i_t)."""
        nsq = N.algebra
        st = nsq.staircase  # type: ignore[attr-defined]
        base, s, field = st.base, st.s, N.field
        modules: List[Module] = []
        for t in range(1, s + 1):
            corner = algebra_service.truncated_path_algebra(base, t)
            dims = {i: N.dims[st.vertex(i, t)] for i in base.vertices}
            mats = {}
            for a in base.arrows:
                if t == 1:
                    mats[a.name] = field.zeros(dims[a.target], dims[a.source])
                else:
                    mats[a.name] = field.matmul(
                        N.matrices[st.vertical(a.target, t - 1)], N.matrices[st.diagonal(a.name, t)]
                    )
            modules.append(self.make_module(corner, dims, mats, field))
        maps = [
            {i: N.matrices[st.vertical(i, t)] for i in base.vertices} for t in range(1, s)
        ]
        mono = all(field.rank(m[i]) == m[i].shape[1] for m in maps for i in base.vertices)
        return MonObject(modules, maps, mono)

    def mono_hom_dim(self, X: MonObject, Y: MonObject) -> int:
        """Hom in the category of s-tuples: kQ-linear at each step and compatible with φ."""
        field = X.modules[0].field
        dims_x: Dict[Hashable, int] = {}
        dims_y: Dict[Hashable, int] = {}
        constraints: List[Constraint] = []
        for t, (mx, my) in enumerate(zip(X.modules, Y.modules)):
            for v in mx.algebra.vertices:
                dims_x[(v, t)] = mx.dims[v]
                dims_y[(v, t)] = my.dims[v]
            for a in mx.algebra.quiver.arrows:
                constraints.append(((a.source, t), (a.target, t), mx.matrices[a.name], my.matrices[a.name]))
        for t, (phx, phy) in enumerate(zip(X.maps, Y.maps)):
            for v in phx:
                constraints.append(((v, t), (v, t + 1), phx[v], phy[v]))
        return len(self._intertwiners(field, dims_x, dims_y, constraints))

    def lift_to_rationals(self, M: Module) -> Module:
        """Re-read an F_p module over Q with balanced integer representatives."""
        field = M.field
        if not isinstance(field, PrimeField):
            return M
        rationals = RationalField(settings.RATIONAL_SAMPLE_BOUND)
        mats = {
            a: [[field.balanced(e) for e in row] for row in m.tolist()]
            for a, m in M.matrices.items()
        }
        return self.make_module(M.algebra, M.dims, mats, rationals)


repmod_service = RepmodService()
