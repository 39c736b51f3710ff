from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterator, Sequence

from qmatrices.algebra import AlgebraElement, SizeMismatchError, alg_mul, check_size, generator, theta, unit, zero
from qmatrices.coefficients import q_power


class QMatrix:
    """n x n grid of algebra elements, indexed from 1."""

    __slots__ = ("n", "_rows")

    def __init__(self, n: int, rows: Sequence[Sequence[AlgebraElement]]):
        check_size(n)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise SizeMismatchError(f"expected a {n}x{n} grid")
        for row in rows:
            for entry in row:
                if entry.n != n:
                    raise SizeMismatchError(f"entry of size {entry.n} in a matrix of size {n}")
        self.n = n
        self._rows: tuple[tuple[AlgebraElement, ...], ...] = tuple(tuple(row) for row in rows)

    @classmethod
    def build(cls, n: int, fn: Callable[[int, int], AlgebraElement]) -> "QMatrix":
        return cls(n, [[fn(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])

    def entry(self, i: int, j: int) -> AlgebraElement:
        return self._rows[i - 1][j - 1]

    def entries(self) -> Iterator[tuple[int, int, AlgebraElement]]:
        for i, row in enumerate(self._rows, start=1):
            for j, value in enumerate(row, start=1):
                yield i, j, value

    def is_zero(self) -> bool:
        return all(value.is_zero() for _, _, value in self.entries())

    def term_count(self) -> int:
        return sum(len(value) for _, _, value in self.entries())

    def _same_size(self, other: "QMatrix") -> None:
        if self.n != other.n:
            raise SizeMismatchError(f"matrix sizes differ: {self.n} != {other.n}")

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._same_size(other)
        return QMatrix.build(self.n, lambda i, j: self.entry(i, j) + other.entry(i, j))

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._same_size(other)
        return QMatrix.build(self.n, lambda i, j: self.entry(i, j) - other.entry(i, j))

    def __neg__(self) -> "QMatrix":
        return QMatrix.build(self.n, lambda i, j: -self.entry(i, j))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.n == other.n and self._rows == other._rows

    __hash__ = None  # type: ignore[assignment]

    def to_text(self) -> str:
        return "\n".join(f"[{i},{j}] {value.to_text()}" for i, j, value in self.entries())

    def __repr__(self) -> str:
        return f"QMatrix(n={self.n})"


def identity(n: int) -> QMatrix:
    return QMatrix.build(n, lambda i, j: unit(n) if i == j else zero(n))


def zero_matrix(n: int) -> QMatrix:
    return QMatrix.build(n, lambda i, j: zero(n))


def scalar_matrix(s: AlgebraElement) -> QMatrix:
    """I*s: s on the diagonal."""
    n = s.n
    return QMatrix.build(n, lambda i, j: s if i == j else zero(n))


@lru_cache(maxsize=16)
def generic_matrix(n: int) -> QMatrix:
    """X, the matrix of generators."""
    return QMatrix.build(n, lambda i, j: generator(i, j, n))


def star(a: QMatrix, b: QMatrix) -> QMatrix:
    """(A*B)_ij = sum_k q^theta(j,k) a_ik b_kj."""
    a._same_size(b)
    n = a.n

    def entry(i: int, j: int) -> AlgebraElement:
        total = zero(n)
        for k in range(1, n + 1):
            product = alg_mul(a.entry(i, k), b.entry(k, j))
            if product:
                total = total + product.scale(q_power(theta(j, k)))
        return total

    return QMatrix.build(n, entry)


@lru_cache(maxsize=64)
def _generic_power(n: int, k: int) -> QMatrix:
    if k == 0:
        return identity(n)
    if k == 1:
        return generic_matrix(n)
    return star(generic_matrix(n), _generic_power(n, k - 1))


def qpower(x: QMatrix, k: int) -> QMatrix:
    """Left-nested quantum power X*(X*(...)), with qpower(X, 0) = I."""
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"quantum power must be a nonnegative integer, got {k!r}")
    if x == generic_matrix(x.n):
        return _generic_power(x.n, k)
    result = identity(x.n)
    for step in range(k):
        result = x if step == 0 else star(x, result)
    return result


def trace(a: QMatrix) -> AlgebraElement:
    total = zero(a.n)
    for i in range(1, a.n + 1):
        total = total + a.entry(i, i)
    return total


def right_scalar_mul(a: QMatrix, s: AlgebraElement) -> QMatrix:
    """Multiply every entry of A by s from the right."""
    if s.n != a.n:
        raise SizeMismatchError(f"scalar of size {s.n} for a matrix of size {a.n}")
    return QMatrix.build(a.n, lambda i, j: alg_mul(a.entry(i, j), s))
