import logging
from typing import Dict, List, Optional, Tuple, Union

from nilquiver.models.algebra import (
    NilpotentQuiverAlgebra,
    NsqKey,
    TruncatedPathAlgebra,
)
from nilquiver.models.quiver import DimFiltration, Path, Quiver
from nilquiver.services.quiver_service import quiver_service

logger = logging.getLogger(__name__)

DimData = Union[DimFiltration, Dict[str, int]]


class AlgebraService:
    """Builds kQ/J^s and N_s(Q) once per (quiver, s) and answers structural questions."""

    def __init__(self) -> None:
        self._truncated: Dict[Tuple[Quiver, int], TruncatedPathAlgebra] = {}
        self._nilpotent: Dict[Tuple[Quiver, int], NilpotentQuiverAlgebra] = {}

    def truncated_path_algebra(self, q: Quiver, s: int) -> TruncatedPathAlgebra:
        key = (q, s)
        if key not in self._truncated:
            self._truncated[key] = TruncatedPathAlgebra(q, s)
        return self._truncated[key]

    def nilpotent_quiver_algebra(self, q: Quiver, s: int) -> NilpotentQuiverAlgebra:
        key = (q, s)
        if key not in self._nilpotent:
            algebra = NilpotentQuiverAlgebra(q, s)
            logger.debug("📐 N_%d(Q) built: %d vertices, dim %d", s, len(algebra.vertices), algebra.dim)
            self._nilpotent[key] = algebra
        return self._nilpotent[key]

    def standard_basis(self, n: NilpotentQuiverAlgebra) -> List[Tuple[Tuple[str, ...], Tuple[str, ...]]]:
        """(α, β) for every basis element β·α, arrows listed in traversal order."""
        return [n.alpha_beta(k) for k in range(n.dim)]

    def top_idempotent(self, n: NilpotentQuiverAlgebra) -> Dict[int, int]:
        """e = Σ e(i_s), as coefficients on basis indices."""
        st = n.staircase
        return {n.idempotent(st.vertex(i, n.s)): 1 for i in st.base.vertices}

    def phi_iso(self, n: NilpotentQuiverAlgebra, path: Path) -> Optional[int]:
        """φ(α) = b(j_{s-1})...b(j_{s-l}) · a^(l)_{s-l+1}...a^(1)_s, zero once l >= s."""
        if path.length >= n.s:
            return None
        return n.index_of(NsqKey(path, n.s, path.length))

    def check_corner_isomorphism(self, n: NilpotentQuiverAlgebra) -> bool:
        """φ is a bijection kQ/J^s -> e N e and multiplicative on all basis pairs."""
        corner = self.truncated_path_algebra(n.base, n.s)
        if corner.dim != quiver_service.path_count_below(n.base, n.s):
            return False
        images = [self.phi_iso(n, corner.key(k)) for k in range(corner.dim)]  # type: ignore[arg-type]
        top = {n.staircase.vertex(i, n.s) for i in n.base.vertices}
        e_basis = {k for k, b in enumerate(n.basis) if b.source in top and b.target in top}
        if None in images or len(set(images)) != len(images) or set(images) != e_basis:
            return False
        for x in range(corner.dim):
            for y in range(corner.dim):
                product = corner.compose(x, y)
                expected = None if product is None else images[product]
                if expected != n.compose(images[x], images[y]):  # type: ignore[arg-type]
                    return False
        return True

    def euler_form_nsq(self, n: NilpotentQuiverAlgebra, dd: DimData, ee: DimData) -> int:
        """Σ dd_v ee_v − Σ_arrows dd_src ee_tgt + Σ_{i->j, t<s} dd_{i_t} ee_{j_t}."""
        st = n.staircase
        d = st.dims_of(dd) if isinstance(dd, DimFiltration) else dd
        e = st.dims_of(ee) if isinstance(ee, DimFiltration) else ee
        total = sum(d.get(v, 0) * e.get(v, 0) for v in n.vertices)
        total -= sum(d.get(a.source, 0) * e.get(a.target, 0) for a in n.quiver.arrows)
        for a in n.base.arrows:
            for t in range(1, n.s):
                total += d.get(st.vertex(a.source, t), 0) * e.get(st.vertex(a.target, t), 0)
        return total

    def layer_quotient(
        self, n: NilpotentQuiverAlgebra, t: int
    ) -> Tuple[NilpotentQuiverAlgebra, Dict[str, str]]:
        """N_s/(E_t) ≅ N_{s-t}: the algebra and the renaming i_u -> i_{u-t} for u > t."""
        if not 0 <= t < n.s:
            raise ValueError(f"layer quotient needs 0 <= t < s, got t={t}")
        quotient = self.nilpotent_quiver_algebra(n.base, n.s - t)
        st = n.staircase
        renaming = {
            st.vertex(i, u): st.vertex(i, u - t)
            for u in range(t + 1, n.s + 1)
            for i in n.base.vertices
        }
        return quotient, renaming

    def is_auslander_case(self, q: Quiver, s: int) -> bool:
        """N_s(Q) is the Auslander algebra of kQ/J^s iff every component of Q is an oriented cycle."""
        return s >= 2 and quiver_service.is_union_of_oriented_cycles(q)


algebra_service = AlgebraService()
