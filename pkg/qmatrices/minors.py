"""Quantum minors, the q-determinant and the principal-minor sums sigma_k."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Sequence

from qmatrices.algebra import AlgebraElement, AlgebraError, GeneratorIndex, check_size, generator, reduce_word, unit, zero
from qmatrices.budget import charge
from qmatrices.coefficients import LaurentPoly, minus_q_power


class MinorError(AlgebraError):
    pass


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise MinorError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    def __len__(self) -> int:
        return len(self.images)


@dataclass(frozen=True)
class IndexSet:
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(b <= a for a, b in zip(self.elements, self.elements[1:])):
            raise MinorError(f"index set must be strictly increasing: {self.elements}")
        if any(e < 1 for e in self.elements):
            raise MinorError(f"index set elements must be positive: {self.elements}")

    @classmethod
    def of(cls, items: Iterable[int]) -> "IndexSet":
        return cls(tuple(sorted(set(items))))

    def check_bounds(self, n: int) -> "IndexSet":
        if self.elements and self.elements[-1] > n:
            raise MinorError(f"index set {self.elements} exceeds n={n}")
        return self

    def without(self, value: int) -> "IndexSet":
        if value not in self.elements:
            raise MinorError(f"{value} is not in {self.elements}")
        return IndexSet(tuple(e for e in self.elements if e != value))

    def __contains__(self, value: object) -> bool:
        return value in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def to_text(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"


def _as_index_set(value: IndexSet | Sequence[int]) -> IndexSet:
    if isinstance(value, IndexSet):
        return value
    if isinstance(value, (set, frozenset)):
        return IndexSet.of(value)
    return IndexSet(tuple(value))


def inversions(p: Permutation | Sequence[int]) -> int:
    images = p.images if isinstance(p, Permutation) else tuple(p)
    return sum(1 for a in range(len(images)) for b in range(a + 1, len(images)) if images[a] > images[b])


def l_count(u: int, subset: IndexSet | Iterable[int]) -> int:
    """Number of elements of the set strictly below u."""
    return sum(1 for j in subset if u > j)


@lru_cache(maxsize=4096)
def _minor_terms(rows: tuple[int, ...], cols: tuple[int, ...]) -> tuple:
    k = len(rows)
    acc: dict = {}
    for images in permutations(range(k)):
        charge()
        weight = minus_q_power(inversions(images))
        word = tuple(GeneratorIndex(rows[a], cols[images[a]]) for a in range(k))
        for w, c in reduce_word(word, max(rows + cols)).items():
            total = acc.get(w, LaurentPoly()) + weight * c
            if total:
                acc[w] = total
            else:
                acc.pop(w, None)
    return tuple(acc.items())


def qminor_or_unit(rows: IndexSet, cols: IndexSet, n: int) -> AlgebraElement:
    """[K|L], with the empty minor equal to 1."""
    if len(rows) != len(cols):
        raise MinorError(f"minor needs equal sizes, got {rows.to_text()} and {cols.to_text()}")
    rows.check_bounds(n)
    cols.check_bounds(n)
    if not rows:
        return unit(n)
    return AlgebraElement._wrap(n, dict(_minor_terms(rows.elements, cols.elements)))


def qminor(rows: IndexSet | Sequence[int], cols: IndexSet | Sequence[int], n: int | None = None) -> AlgebraElement:
    """The quantum minor [K|L]; qminor(1..n, 1..n) is the q-determinant."""
    k_set, l_set = _as_index_set(rows), _as_index_set(cols)
    if not k_set or not l_set:
        raise MinorError("quantum minors need nonempty row and column sets")
    size = check_size(n if n is not None else max(k_set.elements + l_set.elements))
    return qminor_or_unit(k_set, l_set, size)


def qdet(n: int) -> AlgebraElement:
    full = IndexSet(tuple(range(1, check_size(n) + 1)))
    return qminor_or_unit(full, full, n)


def subsets(n: int, k: int) -> list[IndexSet]:
    return [IndexSet(c) for c in combinations(range(1, n + 1), k)]


@lru_cache(maxsize=256)
def sigma(k: int, n: int) -> AlgebraElement:
    """Sum of the principal k x k quantum minors; sigma_0 = 1 and sigma_k = 0 for k > n."""
    check_size(n)
    if k < 0:
        raise MinorError(f"sigma index must be nonnegative, got {k}")
    if k == 0:
        return unit(n)
    if k > n:
        return zero(n)
    total = zero(n)
    for subset in subsets(n, k):
        total = total + qminor_or_unit(subset, subset, n)
    return total


def laplace_residual(
    rows: IndexSet | Sequence[int],
    cols: IndexSet | Sequence[int],
    i: int,
    r: int,
    n: int | None = None,
) -> AlgebraElement:
    """delta_ir [K|L] - sum_s (-q)^(l(s,L) - l(r,K)) x_is [K\\r | L\\s]; identically zero."""
    k_set, l_set = _as_index_set(rows), _as_index_set(cols)
    if not k_set or len(k_set) != len(l_set):
        raise MinorError(f"Laplace expansion needs equal nonempty sets, got {k_set.to_text()} and {l_set.to_text()}")
    if i not in k_set or r not in k_set:
        raise MinorError(f"rows {i} and {r} must belong to {k_set.to_text()}")
    size = check_size(n if n is not None else max(k_set.elements + l_set.elements))

    lhs = qminor_or_unit(k_set, l_set, size) if i == r else zero(size)
    rhs = zero(size)
    rest_rows = k_set.without(r)
    for s in l_set:
        weight = minus_q_power(l_count(s, l_set) - l_count(r, k_set))
        term = generator(i, s, size) * qminor_or_unit(rest_rows, l_set.without(s), size)
        rhs = rhs + term.scale(weight)
    return lhs - rhs
