import logging
from collections import Counter
from typing import List, NamedTuple, Optional, Tuple

from nilquiver.core.exact_linalg import ExactField, default_field
from nilquiver.core.exceptions import TransferViolation
from nilquiver.models.module import Module
from nilquiver.models.quiver import Arrow, DimFiltration, Quiver
from nilquiver.services.algebra_service import algebra_service
from nilquiver.services.qh_service import qh_service
from nilquiver.services.repmod_service import repmod_service

logger = logging.getLogger(__name__)

# x --a--> y
A2 = Quiver(vertices=("x", "y"), arrows=(Arrow("a", "x", "y"),))


class A2DeltaVector(NamedTuple):
    x_hat: Tuple[int, ...]
    y_hat: Tuple[int, ...]


class A2Result(NamedTuple):
    module: Module
    delta: A2DeltaVector
    summands: List[Tuple[str, int]]  # label, multiplicity
    ext1: int


class A2Service:
    """The rigid Δ-filtered N_s(A_2)-module of a dimension filtration, summand by summand."""

    def delta_vector(self, dd: DimFiltration) -> A2DeltaVector:
        n = algebra_service.nilpotent_quiver_algebra(A2, dd.s)
        m = qh_service.delta_decomposition(n, dd)
        st = n.staircase
        return A2DeltaVector(
            tuple(m[st.vertex("x", t)] for t in range(1, dd.s + 1)),
            tuple(m[st.vertex("y", t)] for t in range(1, dd.s + 1)),
        )

    def e_module(self, s: int, i: int, j: int, field: Optional[ExactField] = None) -> Module:
        """E(i, j): k at x_i..x_s and y_j..y_s, identity verticals, a_t = 1 for t >= i."""
        if not s >= i > j >= 1:
            raise IndexError(f"E(i, j) needs s >= i > j >= 1, got s={s}, i={i}, j={j}")
        n = algebra_service.nilpotent_quiver_algebra(A2, s)
        st = n.staircase
        dims = {st.vertex("x", u): 1 for u in range(i, s + 1)}
        dims.update({st.vertex("y", u): 1 for u in range(j, s + 1)})
        mats = {st.vertical("x", u): [[1]] for u in range(i, s)}
        mats.update({st.vertical("y", u): [[1]] for u in range(j, s)})
        mats.update({st.diagonal("a", t): [[1]] for t in range(max(i, 2), s + 1)})
        return repmod_service.make_module(n, dims, mats, field or default_field())

    def plan(self, delta: A2DeltaVector) -> List[str]:
        """Summand labels in the order the greedy pairing produces them."""
        x_hat, y_hat = list(delta.x_hat), list(delta.y_hat)
        out = []
        while any(x_hat):
            i = next(k for k, m in enumerate(x_hat) if m > 0)
            j = next((k for k in range(i - 1, -1, -1) if y_hat[k] > 0), None)
            x_hat[i] -= 1
            if j is None:
                out.append(f"Δ(x_{i + 1})")
            else:
                y_hat[j] -= 1
                out.append(f"E({i + 1},{j + 1})")
        for k, m in enumerate(y_hat):
            out.extend([f"Δ(y_{k + 1})"] * m)
        return out

    def _summand(self, label: str, s: int, field: ExactField) -> Module:
        n = algebra_service.nilpotent_quiver_algebra(A2, s)
        if label.startswith("E("):
            i, j = (int(x) for x in label[2:-1].split(","))
            return self.e_module(s, i, j, field)
        vertex, layer = label[2:-1].split("_")
        return qh_service.standard_module(n, vertex, int(layer), field)

    def a2_rigid_module(self, s: int, dd: DimFiltration, field: Optional[ExactField] = None) -> A2Result:
        if dd.s != s:
            raise ValueError(f"filtration has {dd.s} layers, expected {s}")
        field = field or default_field()
        delta = self.delta_vector(dd)
        labels = self.plan(delta)
        n = algebra_service.nilpotent_quiver_algebra(A2, s)
        parts = [self._summand(label, s, field) for label in labels]
        module = repmod_service.direct_sum(*parts) if parts else repmod_service.zero_module(n, field)
        ext1 = repmod_service.ext_dim(module, module, 1)
        if ext1 != 0:
            logger.error("❌ greedy module for %s has dim Ext^1 = %d", dd.text(), ext1)
            raise TransferViolation(f"module built for {dd.text()} is not rigid")
        summands = list(Counter(labels).items())
        logger.info("✅ rigid N_%d(A_2)-module for %s: %s", s, dd.text(), summands)
        return A2Result(module, delta, summands, ext1)


a2_service = A2Service()
