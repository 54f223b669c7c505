import logging
from collections import Counter
from itertools import combinations_with_replacement, product
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from nilquiver.core.config import settings
from nilquiver.core.exceptions import FiltrationCapExceeded, InvalidFiltration, ParseError
from nilquiver.models.algebra import enumerate_paths
from nilquiver.models.quiver import Arrow, DimFiltration, Path, Quiver, StaircaseQuiver

logger = logging.getLogger(__name__)


class QuiverService:
    """Combinatorics on quivers and the dimension counts of flagged representation spaces."""

    def paths_up_to_length(self, q: Quiver, length: int) -> List[Path]:
        if length < 0:
            raise ValueError("path length bound must be non-negative")
        return enumerate_paths(q, length)

    def path_count_below(self, q: Quiver, s: int) -> int:
        """Number of paths of length < s, i.e. dim kQ/J^s."""
        return len(enumerate_paths(q, s - 1))

    def staircase(self, q: Quiver, s: int) -> StaircaseQuiver:
        return StaircaseQuiver(q, s)

    def separation_quiver(self, q: Quiver) -> Quiver:
        """Vertices Q_0 ⊔ Q_0*, one arrow a': i -> j* per arrow a: i -> j."""
        starred = tuple(f"{v}*" for v in q.vertices)
        arrows = tuple(Arrow(f"{a.name}'", a.source, f"{a.target}*") for a in q.arrows)
        return Quiver(vertices=q.vertices + starred, arrows=arrows)

    # ------------------------------------------------------------------
    # graph shape
    # ------------------------------------------------------------------

    def _components(self, q: Quiver) -> List[List[str]]:
        neighbours: Dict[str, Set[str]] = {v: set() for v in q.vertices}
        for a in q.arrows:
            neighbours[a.source].add(a.target)
            neighbours[a.target].add(a.source)
        seen: Set[str] = set()
        components = []
        for v in q.vertices:
            if v in seen:
                continue
            stack, part = [v], []
            seen.add(v)
            while stack:
                u = stack.pop()
                part.append(u)
                for w in sorted(neighbours[u] - seen, key=q.vertices.index):
                    seen.add(w)
                    stack.append(w)
            components.append(sorted(part, key=q.vertices.index))
        return components

    def _classify(self, vertices: List[str], edges: List[Tuple[str, str]]) -> Tuple[Optional[str], Optional[str]]:
        """ADE tag of a connected graph, or None together with the shape that rules it out."""
        n = len(vertices)
        pairs = Counter(frozenset(e) for e in edges)
        for pair, count in pairs.items():
            if len(pair) == 1:
                return None, "loop"
            if count > 1:
                return None, "multiple edge"
        if len(edges) != n - 1:
            return None, "cycle"
        degree: Dict[str, int] = {v: 0 for v in vertices}
        adjacent: Dict[str, List[str]] = {v: [] for v in vertices}
        for x, y in edges:
            degree[x] += 1
            degree[y] += 1
            adjacent[x].append(y)
            adjacent[y].append(x)
        branch = [v for v in vertices if degree[v] >= 3]
        if not branch:
            return f"A_{n}", None
        if len(branch) > 1:
            return None, "more than one branch point"
        centre = branch[0]
        if degree[centre] > 3:
            return None, f"branch point of degree {degree[centre]}"
        arms = []
        for start in adjacent[centre]:
            length, prev, cur = 1, centre, start
            while degree[cur] == 2:
                prev, cur = cur, next(w for w in adjacent[cur] if w != prev)
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return f"D_{n}", None
        if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
            return f"E_{n}", None
        return None, f"arms {arms[0]},{arms[1]},{arms[2]} outside ADE"

    def _component_shapes(self, q: Quiver) -> Iterator[Tuple[List[str], Optional[str], Optional[str]]]:
        for part in self._components(q):
            members = set(part)
            edges = [(a.source, a.target) for a in q.arrows if a.source in members]
            yield (part, *self._classify(part, edges))

    def is_dynkin(self, q: Quiver) -> Optional[List[str]]:
        """ADE type of every connected component, or None if some component is not Dynkin."""
        types = []
        for part, tag, reason in self._component_shapes(q):
            if tag is None:
                logger.debug("🔍 component %s is not of Dynkin type: %s", part, reason)
                return None
            types.append(tag)
        return types

    def dynkin_obstruction(self, q: Quiver) -> Optional[str]:
        """Why the first non-Dynkin component fails, or None when every component is Dynkin."""
        for _, tag, reason in self._component_shapes(q):
            if tag is None:
                return reason
        return None

    def is_union_of_oriented_cycles(self, q: Quiver) -> bool:
        if not q.vertices:
            return False
        for v in q.vertices:
            if len(q.arrows_from(v)) != 1 or len(q.arrows_to(v)) != 1:
                return False
        # in- and out-degree one everywhere: each component is then a single cycle
        return True

    # ------------------------------------------------------------------
    # dimension counts
    # ------------------------------------------------------------------

    def dim_repdd(self, q: Quiver, dd: DimFiltration) -> int:
        """Σ_{a:i->j} Σ_t d_j^(t-1) (d_i^(t) - d_i^(t-1))."""
        index = q.vertex_index
        total = 0
        for a in q.arrows:
            i, j = index[a.source], index[a.target]
            for t in range(1, dd.s + 1):
                total += dd.value(j, t - 1) * dd.increment(i, t)
        return total

    def dim_rf(self, q: Quiver, dd: DimFiltration) -> int:
        total = self.dim_repdd(q, dd)
        for i in range(len(q.vertices)):
            for r in range(1, dd.s + 1):
                for t in range(1, r):
                    total += dd.increment(i, r) * dd.increment(i, t)
        return total

    def euler_form_one(self, q: Quiver, dd: DimFiltration) -> int:
        """⟨dd, dd⟩^(1) = d·d - dim RF(dd)."""
        return sum(x * x for x in dd.top) - self.dim_rf(q, dd)

    def euler_form_path(self, q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
        """Euler form of kQ: Σ d_i e_i - Σ_{a:i->j} d_i e_j."""
        index = q.vertex_index
        total = sum(x * y for x, y in zip(d, e))
        for a in q.arrows:
            total -= d[index[a.source]] * e[index[a.target]]
        return total

    # ------------------------------------------------------------------
    # dimension filtrations
    # ------------------------------------------------------------------

    def filtrations_with_top(
        self, q: Quiver, s: int, d: Sequence[int], cap: Optional[int] = None
    ) -> Iterator[DimFiltration]:
        """All weakly increasing dd with d^(s) = d, lexicographically; at most ``cap`` of them."""
        if len(d) != len(q.vertices):
            raise InvalidFiltration(f"top vector needs {len(q.vertices)} entries, got {len(d)}")
        if any(x < 0 for x in d):
            raise InvalidFiltration("dimension vector entries must be non-negative")
        cap = settings.FILTRATION_CAP if cap is None else cap
        chains = [
            list(combinations_with_replacement(range(x + 1), s - 1)) for x in d
        ]
        produced = 0
        for choice in product(*chains):
            if produced == cap:
                raise FiltrationCapExceeded(cap)
            layers = tuple(
                tuple(choice[i][t] for i in range(len(d))) for t in range(s - 1)
            ) + (tuple(d),)
            produced += 1
            yield DimFiltration(layers=layers)

    def parse_filtration(self, text: str, q: Quiver, s: Optional[int] = None) -> DimFiltration:
        """Parse ``"0,1;1,1"`` into ((0,1),(1,1)), vertices in quiver order."""
        try:
            layers = tuple(
                tuple(int(x) for x in chunk.split(",")) if chunk.strip() else ()
                for chunk in text.strip().split(";")
            )
        except ValueError as exc:
            raise ParseError(f"cannot read dimension filtration {text!r}: {exc}") from exc
        if s is not None and len(layers) != s:
            raise InvalidFiltration(f"expected {s} layers, got {len(layers)}")
        if any(len(layer) != len(q.vertices) for layer in layers):
            raise InvalidFiltration(f"every layer needs {len(q.vertices)} entries")
        return DimFiltration(layers=layers)


quiver_service = QuiverService()
