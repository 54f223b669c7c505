"""Bound quiver algebras with an explicit basis and multiplication table.

Two families are supported, both with monomial-friendly presentations where a
product of basis elements is again a basis element or zero:

* :class:`TruncatedPathAlgebra` -- kQ/J^s, basis all paths of length < s;
* :class:`NilpotentQuiverAlgebra` -- N_s(Q) on the staircase quiver with the
  commutativity relations a_{t+1} b(i_t) = b(j_{t-1}) a_t and a_2 b(i_1) = 0.
"""

from abc import ABC, abstractmethod
from typing import Dict, Hashable, List, NamedTuple, Optional, Tuple

from nilquiver.core.exceptions import InvalidInput
from nilquiver.models.quiver import Path, Quiver, StaircaseQuiver


class BasisElement(NamedTuple):
    source: str
    target: str
    word: Tuple[str, ...]  # representative path, arrows in traversal order
    label: str


class Relation(NamedTuple):
    name: str
    terms: Tuple[Tuple[int, Tuple[str, ...]], ...]


def enumerate_paths(q: Quiver, max_length: int) -> List[Path]:
    """All paths of length 0..max_length; shorter first, then input order."""
    if max_length < 0:
        return []
    level = [Path(v, v, ()) for v in q.vertices]
    paths = list(level)
    for _ in range(max_length):
        level = [
            Path(p.source, a.target, p.arrows + (a.name,))
            for p in level
            for a in q.arrows
            if a.source == p.target
        ]
        paths.extend(level)
    return paths


class BoundQuiverAlgebra(ABC):
    kind: str

    def __init__(self, quiver: Quiver, s: int):
        self.quiver = quiver
        self.s = s
        self._keys: List[Hashable] = []
        self._index: Dict[Hashable, int] = {}
        self.basis: List[BasisElement] = []
        self.relations: List[Relation] = []
        self._products: Dict[Tuple[int, int], Optional[int]] = {}
        self._arrow_index: Dict[str, int] = {}
        self._idempotent: Dict[str, int] = {}
        self._arrows = quiver.arrow_map

    def _register(self, key: Hashable, element: BasisElement) -> None:
        self._index[key] = len(self._keys)
        self._keys.append(key)
        self.basis.append(element)
        if not element.word:
            self._idempotent[element.source] = self._index[key]
        elif len(element.word) == 1:
            self._arrow_index[element.word[0]] = self._index[key]

    @abstractmethod
    def _compose_keys(self, outer: Hashable, inner: Hashable) -> Optional[Hashable]:
        """Key of ``outer · inner`` (inner first), or None when the product is zero."""

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.quiver.vertices

    def arrow(self, name: str):
        return self._arrows[name]

    def key(self, index: int) -> Hashable:
        return self._keys[index]

    def index_of(self, key: Hashable) -> int:
        return self._index[key]

    def arrow_element(self, name: str) -> Optional[int]:
        """Basis index of an arrow; None when the arrow is zero in the algebra (s = 1)."""
        return self._arrow_index.get(name)

    def idempotent(self, vertex: str) -> int:
        return self._idempotent[vertex]

    def compose(self, outer: int, inner: int) -> Optional[int]:
        pair = (outer, inner)
        if pair not in self._products:
            if self.basis[inner].target != self.basis[outer].source:
                self._products[pair] = None
            else:
                key = self._compose_keys(self._keys[outer], self._keys[inner])
                self._products[pair] = None if key is None else self._index[key]
        return self._products[pair]

    def evaluate_word(self, word: Tuple[str, ...]) -> Optional[int]:
        """Basis index of the path ``word`` (traversal order), None if it vanishes."""
        if not word:
            raise ValueError("empty word has no vertex")
        current = self.arrow_element(word[0])
        for name in word[1:]:
            step = self.arrow_element(name)
            if current is None or step is None:
                return None
            current = self.compose(step, current)
        return current

    def relation_vanishes(self, relation: Relation) -> bool:
        totals: Dict[int, int] = {}
        for coef, word in relation.terms:
            idx = self.evaluate_word(word)
            if idx is not None:
                totals[idx] = totals.get(idx, 0) + coef
        return all(v == 0 for v in totals.values())

    def basis_from(self, vertex: str) -> List[int]:
        return [k for k, b in enumerate(self.basis) if b.source == vertex]

    def basis_to(self, vertex: str) -> List[int]:
        return [k for k, b in enumerate(self.basis) if b.target == vertex]

    def degree(self, index: int) -> int:
        return len(self.basis[index].word)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(s={self.s}, dim={self.dim})"


class TruncatedPathAlgebra(BoundQuiverAlgebra):
    """kQ/J^s; keys are paths of Q."""

    kind = "kQ/Js"

    def __init__(self, quiver: Quiver, s: int):
        if s < 1:
            raise InvalidInput(f"s must be positive, got {s}")
        super().__init__(quiver, s)
        for p in enumerate_paths(quiver, s - 1):
            self._register(p, BasisElement(p.source, p.target, p.arrows, p.label()))
        for p in enumerate_paths(quiver, s):
            if p.length == s:
                self.relations.append(Relation(f"J^{s}[{p.label()}]", ((1, p.arrows),)))

    def _compose_keys(self, outer: Hashable, inner: Hashable) -> Optional[Hashable]:
        assert isinstance(outer, Path) and isinstance(inner, Path)
        if inner.length + outer.length >= self.s:
            return None
        return Path(inner.source, outer.target, inner.arrows + outer.arrows)


class NsqKey(NamedTuple):
    """Standard form β·α: the Q-path of the diagonal part α, its start layer, and |β|."""

    path: Path
    layer: int
    up: int


class NilpotentQuiverAlgebra(BoundQuiverAlgebra):
    """N_s(Q) with its standard basis of normal forms β·α."""

    kind = "NsQ"

    def __init__(self, quiver: Quiver, s: int):
        if s < 1:
            raise InvalidInput(f"s must be positive, got {s}")
        self.staircase = StaircaseQuiver(quiver, s)
        super().__init__(self.staircase.quiver, s)
        self.base = quiver
        st = self.staircase
        for p in enumerate_paths(quiver, s - 1):
            for t in range(p.length + 1, s + 1):
                bottom = t - p.length
                for n in range(0, s - bottom + 1):
                    diag = tuple(st.diagonal(a, t - k) for k, a in enumerate(p.arrows))
                    vert = tuple(st.vertical(p.target, bottom + k) for k in range(n))
                    label = self._label(p, t, diag, vert)
                    self._register(
                        NsqKey(p, t, n),
                        BasisElement(
                            st.vertex(p.source, t),
                            st.vertex(p.target, bottom + n),
                            diag + vert,
                            label,
                        ),
                    )
        for a in quiver.arrows:
            for t in range(2, s):
                lhs = (st.vertical(a.source, t), st.diagonal(a.name, t + 1))
                rhs = (st.diagonal(a.name, t), st.vertical(a.target, t - 1))
                self.relations.append(Relation(f"R1[{a.name},{t}]", ((1, lhs), (-1, rhs))))
            if s >= 2:
                self.relations.append(
                    Relation(
                        f"R2[{a.name}]",
                        ((1, (st.vertical(a.source, 1), st.diagonal(a.name, 2))),),
                    )
                )

    @staticmethod
    def _label(p: Path, t: int, diag: Tuple[str, ...], vert: Tuple[str, ...]) -> str:
        if not diag and not vert:
            return f"e({p.source}_{t})"
        return "·".join(reversed(diag + vert))

    def _compose_keys(self, outer: Hashable, inner: Hashable) -> Optional[Hashable]:
        assert isinstance(outer, NsqKey) and isinstance(inner, NsqKey)
        # moving the inner verticals past the outer diagonals lowers them by inner.up
        bottom = inner.layer - inner.path.length - outer.path.length
        if bottom < 1:
            return None
        path = Path(inner.path.source, outer.path.target, inner.path.arrows + outer.path.arrows)
        return NsqKey(path, inner.layer, inner.up + outer.up)

    def layer(self, vertex: str) -> int:
        return self.staircase.layer(vertex)

    def alpha_beta(self, index: int) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
        key = self._keys[index]
        assert isinstance(key, NsqKey)
        word = self.basis[index].word
        m = key.path.length
        return word[:m], word[m:]
