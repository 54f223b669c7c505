"""Exact linear algebra over the rationals and prime fields.

Matrices are plain 2-D numpy arrays. An :class:`ExactField` owns their dtype
and the reduction that keeps entries canonical: ``int64`` residues in
``[0, p)`` for :class:`PrimeField`, ``fractions.Fraction`` objects for
:class:`RationalField`. All elimination is done by hand with row operations;
no floating point is involved anywhere.
"""

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import isprime

from nilquiver.core.config import settings

Scalar = Union[int, Fraction]


class ExactField(ABC):
    """Arithmetic backend shared by every matrix of a computation."""

    tag: str

    @abstractmethod
    def reduce(self, a: np.ndarray) -> np.ndarray:
        """Bring an array into canonical form for this field."""

    @abstractmethod
    def inverse(self, x: Any) -> Any:
        """Multiplicative inverse of a nonzero scalar."""

    @abstractmethod
    def scalar(self, value: Union[int, str, Fraction]) -> Any:
        """Parse an integer, a fraction or a string like ``"3/7"``."""

    @abstractmethod
    def random(self, rng: np.random.Generator, shape: Tuple[int, ...]) -> np.ndarray:
        """Random array with entries drawn uniformly from the sampling range."""

    @abstractmethod
    def format(self, x: Any) -> str:
        """Exact string form of a scalar, as written to JSON files."""

    @property
    @abstractmethod
    def dtype(self) -> Any: ...

    def array(self, data: Any) -> np.ndarray:
        raw = np.array(data, dtype=object)
        if raw.ndim == 0:
            raw = raw.reshape(1)
        out = np.empty(raw.shape, dtype=self.dtype)
        for idx, value in np.ndenumerate(raw):
            out[idx] = self.scalar(value)
        return out

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return self.reduce(np.zeros((rows, cols), dtype=np.int64))

    def identity(self, n: int) -> np.ndarray:
        return self.reduce(np.eye(n, dtype=np.int64))

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return self.reduce(a @ b)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a + b)

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(a - b)

    def scale(self, c: Any, a: np.ndarray) -> np.ndarray:
        return self.reduce(a * c)

    def is_zero(self, a: np.ndarray) -> bool:
        return bool(np.all(a == 0))

    def equal(self, a: np.ndarray, b: np.ndarray) -> bool:
        return a.shape == b.shape and self.is_zero(self.sub(a, b))

    def hstack(self, blocks: Sequence[np.ndarray], rows: int) -> np.ndarray:
        blocks = [b for b in blocks if b.shape[1] > 0]
        if not blocks:
            return self.zeros(rows, 0)
        return np.hstack(blocks)

    def vstack(self, blocks: Sequence[np.ndarray], cols: int) -> np.ndarray:
        blocks = [b for b in blocks if b.shape[0] > 0]
        if not blocks:
            return self.zeros(0, cols)
        return np.vstack(blocks)

    def block_diag(self, blocks: Sequence[np.ndarray]) -> np.ndarray:
        rows = sum(b.shape[0] for b in blocks)
        cols = sum(b.shape[1] for b in blocks)
        out = self.zeros(rows, cols)
        r = c = 0
        for b in blocks:
            out[r:r + b.shape[0], c:c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        return out

    # --- elimination -----------------------------------------------------

    def rref(self, m: np.ndarray) -> Tuple[np.ndarray, List[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        a = self.reduce(np.array(m, dtype=self.dtype, copy=True))
        rows, cols = a.shape
        pivots: List[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nonzero = np.nonzero(a[r:, c] != 0)[0]
            if nonzero.size == 0:
                continue
            k = r + int(nonzero[0])
            if k != r:
                a[[r, k]] = a[[k, r]]
            a[r] = self.reduce(a[r] * self.inverse(a[r, c]))
            column = a[:, c].copy()
            column[r] = 0
            if np.any(column != 0):
                a = self.reduce(a - np.outer(column, a[r]))
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self, m: np.ndarray) -> int:
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def kernel_basis(self, m: np.ndarray) -> np.ndarray:
        """Columns spanning the right null space; ``cols - rank`` of them."""
        rows, cols = m.shape
        if rows == 0:
            return self.identity(cols)
        reduced, pivots = self.rref(m)
        pivot_set = set(pivots)
        free = [c for c in range(cols) if c not in pivot_set]
        basis = self.zeros(cols, len(free))
        for k, f in enumerate(free):
            basis[f, k] = self.scalar(1)
            for i, p in enumerate(pivots):
                basis[p, k] = -reduced[i, f]
        return self.reduce(basis)

    def solve_matrix(self, m: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
        """Some X with m X = b, or None when the system is inconsistent."""
        rows, cols = m.shape
        if rows == 0:
            return self.zeros(cols, b.shape[1])
        reduced, pivots = self.rref(np.hstack([m, b]))
        if any(p >= cols for p in pivots):
            return None
        x = self.zeros(cols, b.shape[1])
        for i, p in enumerate(pivots):
            x[p] = reduced[i, cols:]
        return x

    def solve(self, m: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
        x = self.solve_matrix(m, b.reshape(-1, 1))
        return None if x is None else x[:, 0]

    def column_basis(self, m: np.ndarray) -> np.ndarray:
        """Independent columns of ``m`` spanning its column space."""
        if m.shape[1] == 0:
            return m
        _, pivots = self.rref(m)
        return m[:, pivots]

    def complement_basis(self, sub: np.ndarray, n: int) -> np.ndarray:
        """Standard basis vectors completing the columns of ``sub`` to a basis of k^n."""
        _, pivots = self.rref(np.hstack([sub, self.identity(n)]))
        chosen = [p - sub.shape[1] for p in pivots if p >= sub.shape[1]]
        return self.identity(n)[:, chosen]

    def intersect(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Basis of the intersection of two column spaces in the same k^n."""
        n = a.shape[0]
        if a.shape[1] == 0 or b.shape[1] == 0:
            return self.zeros(n, 0)
        kernel = self.kernel_basis(np.hstack([a, self.reduce(-b)]))
        return self.column_basis(self.matmul(a, kernel[: a.shape[1]]))

    def inverse_matrix(self, m: np.ndarray) -> np.ndarray:
        x = self.solve_matrix(m, self.identity(m.shape[0]))
        if x is None or m.shape[0] != m.shape[1]:
            raise ValueError("matrix is not invertible")
        return x


class PrimeField(ExactField):
    """F_p with residues stored as int64; p < 2^31 keeps single products below 2^63."""

    def __init__(self, p: int):
        if not isinstance(p, int):
            raise TypeError("p must be an integer")
        if not isprime(p):
            raise ValueError("p must be a prime number")
        if p >= 2**31:
            raise ValueError("p must be below 2^31 for int64 arithmetic")
        self.p = p
        self.tag = f"F{p}"

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("F", self.p))

    @property
    def dtype(self) -> Any:
        return np.int64

    def reduce(self, a: np.ndarray) -> np.ndarray:
        return np.mod(np.asarray(a, dtype=np.int64), self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        inner = a.shape[1]
        if inner == 0:
            return self.zeros(a.shape[0], b.shape[1])
        if inner * (self.p - 1) ** 2 < 2**63:
            return self.reduce(a @ b)
        # the int64 dot product would wrap; sum with Python ints instead
        exact = np.mod(a.astype(object) @ b.astype(object), self.p)
        return exact.astype(np.int64)

    def inverse(self, x: Any) -> int:
        return pow(int(x), self.p - 2, self.p)

    def scalar(self, value: Union[int, str, Fraction]) -> int:
        q = Fraction(value) if not isinstance(value, (int, np.integer)) else Fraction(int(value))
        if q.denominator % self.p == 0:
            raise ValueError(f"{value} is not defined modulo {self.p}")
        return (q.numerator % self.p) * pow(q.denominator, self.p - 2, self.p) % self.p

    def random(self, rng: np.random.Generator, shape: Tuple[int, ...]) -> np.ndarray:
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def format(self, x: Any) -> str:
        return str(int(x))

    def balanced(self, x: Any) -> int:
        """Representative in (-p/2, p/2]."""
        v = int(x) % self.p
        return v - self.p if v > self.p // 2 else v


class RationalField(ExactField):
    """Q with ``fractions.Fraction`` entries in object arrays."""

    tag = "Q"

    def __init__(self, sample_bound: int = 3):
        self.sample_bound = sample_bound

    def __repr__(self) -> str:
        return "RationalField()"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    @property
    def dtype(self) -> Any:
        return object

    def reduce(self, a: np.ndarray) -> np.ndarray:
        arr = np.asarray(a, dtype=object)
        out = np.empty(arr.shape, dtype=object)
        for idx, value in np.ndenumerate(arr):
            out[idx] = value if isinstance(value, Fraction) else Fraction(value)
        return out

    def inverse(self, x: Any) -> Fraction:
        return 1 / Fraction(x)

    def scalar(self, value: Union[int, str, Fraction]) -> Fraction:
        if isinstance(value, np.integer):
            value = int(value)
        return Fraction(value)

    def random(self, rng: np.random.Generator, shape: Tuple[int, ...]) -> np.ndarray:
        ints = rng.integers(-self.sample_bound, self.sample_bound + 1, size=shape)
        return self.array(ints).reshape(shape)

    def format(self, x: Any) -> str:
        return str(Fraction(x))


def make_field(tag: str, prime: int, sample_bound: int = 3) -> ExactField:
    """Field from a CLI tag: ``"Q"`` for rationals, ``"p"`` or a number for F_p."""
    if tag.upper() == "Q":
        return RationalField(sample_bound)
    if tag == "p":
        return PrimeField(prime)
    return PrimeField(int(tag))


def rank(field: ExactField, m: np.ndarray) -> int:
    return field.rank(m)


def kernel_basis(field: ExactField, m: np.ndarray) -> List[np.ndarray]:
    basis = field.kernel_basis(m)
    return [basis[:, k] for k in range(basis.shape[1])]


def solve(field: ExactField, m: np.ndarray, b: Iterable[Any]) -> Optional[np.ndarray]:
    return field.solve(m, field.array(list(b)))


def default_field() -> ExactField:
    """The field named by the settings: F_p with the sampling prime unless Q is configured."""
    return make_field(settings.DEFAULT_FIELD, settings.SAMPLING_PRIME, settings.RATIONAL_SAMPLE_BOUND)
