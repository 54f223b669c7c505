from typing import Dict, List, NamedTuple, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from nilquiver.core.exceptions import InvalidFiltration, InvalidInput


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


class Path(NamedTuple):
    """A path of a quiver; ``arrows`` are listed in the order they are traversed."""

    source: str
    target: str
    arrows: Tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        if not self.arrows:
            return f"e({self.source})"
        # composition is written right-to-left
        return "·".join(reversed(self.arrows))


class Quiver(BaseModel):
    """Finite quiver with named vertices and arrows, kept in input order."""

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...] = ()

    @field_validator("vertices")
    @classmethod
    def unique_vertices(cls, v: Tuple[str, ...]) -> Tuple[str, ...]:
        if len(set(v)) != len(v):
            raise ValueError("vertex names must be unique")
        return v

    @model_validator(mode="after")
    def check_arrows(self) -> "Quiver":
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        known = set(self.vertices)
        for a in self.arrows:
            if a.source not in known or a.target not in known:
                raise ValueError(f"arrow {a.name} has an undeclared endpoint")
        return self

    @property
    def arrow_map(self) -> Dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @property
    def vertex_index(self) -> Dict[str, int]:
        return {v: k for k, v in enumerate(self.vertices)}

    def arrow(self, name: str) -> Arrow:
        return self.arrow_map[name]

    def arrows_from(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.target == v]


class DimFiltration(BaseModel):
    """dd = (d^(1), ..., d^(s)), each layer indexed by the quiver's vertex order.

    Also read as a dimension vector on the staircase quiver: ``dd[i_t] = d_i^(t)``.
    Monotonicity is checked on demand, since the Euler form accepts arbitrary vectors.
    """

    model_config = ConfigDict(frozen=True)

    layers: Tuple[Tuple[int, ...], ...]

    @property
    def s(self) -> int:
        return len(self.layers)

    @property
    def top(self) -> Tuple[int, ...]:
        return self.layers[-1] if self.layers else ()

    def value(self, i: int, t: int) -> int:
        """d_i^(t) with the convention d^(0) = 0."""
        return 0 if t == 0 else self.layers[t - 1][i]

    def increment(self, i: int, t: int) -> int:
        return self.value(i, t) - self.value(i, t - 1)

    def is_monotone(self) -> bool:
        return all(
            0 <= self.value(i, t - 1) <= self.value(i, t)
            for t in range(1, self.s + 1)
            for i in range(len(self.layers[t - 1]))
        )

    def require_monotone(self) -> "DimFiltration":
        if not self.is_monotone():
            raise InvalidFiltration(f"{self.text()} is not weakly increasing")
        return self

    def leq(self, other: "DimFiltration") -> bool:
        return all(
            a <= b for la, lb in zip(self.layers, other.layers) for a, b in zip(la, lb)
        )

    def minus(self, other: "DimFiltration") -> "DimFiltration":
        return DimFiltration(
            layers=tuple(
                tuple(a - b for a, b in zip(la, lb))
                for la, lb in zip(self.layers, other.layers)
            )
        )

    def text(self) -> str:
        return ";".join(",".join(str(x) for x in layer) for layer in self.layers)

    @classmethod
    def zero(cls, n: int, s: int) -> "DimFiltration":
        return cls(layers=tuple(tuple(0 for _ in range(n)) for _ in range(s)))


class StaircaseQuiver:
    """Q^(s): vertices i_t, verticals b(i_t): i_t -> i_{t+1}, diagonals a_t: i_t -> j_{t-1}."""

    def __init__(self, base: Quiver, s: int):
        if s < 1:
            raise InvalidInput(f"s must be positive, got {s}")
        self.base = base
        self.s = s
        self._where: Dict[str, Tuple[str, int]] = {}
        self._kind: Dict[str, Tuple[str, str, int]] = {}
        vertices = []
        for t in range(1, s + 1):
            for i in base.vertices:
                name = self.vertex(i, t)
                vertices.append(name)
                self._where[name] = (i, t)
        arrows = []
        for t in range(1, s):
            for i in base.vertices:
                name = self.vertical(i, t)
                arrows.append(Arrow(name, self.vertex(i, t), self.vertex(i, t + 1)))
                self._kind[name] = ("vertical", i, t)
        for t in range(2, s + 1):
            for a in base.arrows:
                name = self.diagonal(a.name, t)
                arrows.append(Arrow(name, self.vertex(a.source, t), self.vertex(a.target, t - 1)))
                self._kind[name] = ("diagonal", a.name, t)
        self.quiver = Quiver(vertices=tuple(vertices), arrows=tuple(arrows))

    @staticmethod
    def vertex(i: str, t: int) -> str:
        return f"{i}_{t}"

    @staticmethod
    def vertical(i: str, t: int) -> str:
        return f"b({i}_{t})"

    @staticmethod
    def diagonal(a: str, t: int) -> str:
        return f"{a}_{t}"

    def locate(self, vertex: str) -> Tuple[str, int]:
        return self._where[vertex]

    def layer(self, vertex: str) -> int:
        return self._where[vertex][1]

    def kind(self, arrow: str) -> Tuple[str, str, int]:
        """("vertical", i, t) or ("diagonal", a, t)."""
        return self._kind[arrow]

    def vertical_arrows(self) -> List[str]:
        return [name for name, k in self._kind.items() if k[0] == "vertical"]

    def diagonal_arrows(self) -> List[str]:
        return [name for name, k in self._kind.items() if k[0] == "diagonal"]

    def dims_of(self, dd: DimFiltration) -> Dict[str, int]:
        return {
            self.vertex(i, t): dd.value(k, t)
            for t in range(1, self.s + 1)
            for k, i in enumerate(self.base.vertices)
        }

    def filtration_of(self, dims: Dict[str, int]) -> DimFiltration:
        return DimFiltration(
            layers=tuple(
                tuple(dims.get(self.vertex(i, t), 0) for i in self.base.vertices)
                for t in range(1, self.s + 1)
            )
        )
