"""The coordinate algebra of n x n quantum matrices in PBW normal form.

Generators x[i,j] are ordered row-major and a monomial is in normal form when
its word is non-decreasing.  Every element is stored as a sparse mapping from
normal monomials to Laurent polynomials in q, so two elements are equal
exactly when their term mappings are equal.

An adjacent out-of-order pair x[k,l]*x[i,j] with (i,j) < (k,l) is rewritten
by one of four instances of the defining relation:

  same row    (i == k):        x[i,l]*x[i,j] -> q^-1 x[i,j]*x[i,l]
  same column (j == l):        x[k,j]*x[i,j] -> q^-1 x[i,j]*x[k,j]
  i < k, j > l:                plain swap
  i < k, j < l:                swap - (q - q^-1) x[i,l]*x[k,j]

The rewriting relation is independent of n, so all caches are shared across
sizes; n only bounds the indices an element may use.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Literal, Mapping, NamedTuple, Sequence

from qmatrices.budget import charge
from qmatrices.coefficients import ONE, Q_INV, ZERO, LaurentPoly, Rational, format_rational, normalize_rational, q_power

log = logging.getLogger("algebra")

_CACHE_SIZE = 1 << 20

Strategy = Literal["leftmost", "rightmost"]


class AlgebraError(ValueError):
    pass


class IndexOutOfRangeError(AlgebraError):
    pass


class SizeMismatchError(AlgebraError):
    pass


class GeneratorIndex(NamedTuple):
    row: int
    col: int

    def to_text(self, family: str = "x") -> str:
        return f"{family}[{self.row},{self.col}]"


Monomial = tuple[GeneratorIndex, ...]


def theta(i: int, j: int) -> int:
    return (j > i) - (j < i)


def check_size(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise AlgebraError(f"matrix size must be a positive integer, got {n!r}")
    return n


def check_index(index: Sequence[int], n: int) -> GeneratorIndex:
    row, col = index
    if not (1 <= row <= n and 1 <= col <= n):
        raise IndexOutOfRangeError(f"generator index ({row},{col}) out of range for n={n}")
    return GeneratorIndex(row, col)


def generators(n: int) -> list[GeneratorIndex]:
    check_size(n)
    return [GeneratorIndex(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def monomial_text(word: Monomial, family: str = "x") -> str:
    if not word:
        return "1"
    return "*".join(g.to_text(family) for g in word)


def word_bidegree(word: Monomial) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return tuple(sorted(g.row for g in word)), tuple(sorted(g.col for g in word))


# --------------------------------------------------------------------------
# rewriting rules
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class _RuleCoefficients:
    one: object
    q_inv: object
    correction: object


_SYMBOLIC = _RuleCoefficients(one=ONE, q_inv=Q_INV, correction=LaurentPoly({1: -1, -1: 1}))


def _numeric_coefficients(qvalue: Rational) -> _RuleCoefficients:
    v = Fraction(qvalue)
    if v == 0:
        raise AlgebraError("q cannot be specialized to 0")
    return _RuleCoefficients(
        one=1,
        q_inv=normalize_rational(1 / v),
        correction=normalize_rational(-(v - 1 / v)),
    )


def _swap_rule(high: GeneratorIndex, low: GeneratorIndex) -> tuple[tuple[str, Monomial], ...]:
    """Rewrite high*low (low < high) as labelled terms; labels name a rule coefficient."""
    i, j = low
    k, l = high
    if i == k or j == l:
        return (("q_inv", (low, high)),)
    if j > l:
        return (("one", (low, high)),)
    return (("one", (low, high)), ("correction", (GeneratorIndex(i, l), GeneratorIndex(k, j))))


@lru_cache(maxsize=None)
def _symbolic_rule(high: GeneratorIndex, low: GeneratorIndex) -> tuple[tuple[LaurentPoly, Monomial], ...]:
    return tuple((getattr(_SYMBOLIC, label), pair) for label, pair in _swap_rule(high, low))


def _accumulate(acc: dict, word: Monomial, coeff: object) -> None:
    current = acc.get(word)
    total = coeff if current is None else current + coeff
    if total:
        acc[word] = total
    else:
        acc.pop(word, None)


@lru_cache(maxsize=_CACHE_SIZE)
def _append(word: Monomial, g: GeneratorIndex) -> tuple[tuple[Monomial, LaurentPoly], ...]:
    """Normal form of word*g for a normal word."""
    if not word or word[-1] <= g:
        return ((word + (g,), ONE),)
    head, last = word[:-1], word[-1]
    acc: dict[Monomial, LaurentPoly] = {}
    for rc, (a, b) in _symbolic_rule(last, g):
        for w1, c1 in _append(head, a):
            for w2, c2 in _append(w1, b):
                _accumulate(acc, w2, rc * c1 * c2)
    return tuple(acc.items())


@lru_cache(maxsize=_CACHE_SIZE)
def _prepend(g: GeneratorIndex, word: Monomial) -> tuple[tuple[Monomial, LaurentPoly], ...]:
    """Normal form of g*word for a normal word."""
    if not word or g <= word[0]:
        return (((g,) + word, ONE),)
    first, tail = word[0], word[1:]
    acc: dict[Monomial, LaurentPoly] = {}
    for rc, (a, b) in _symbolic_rule(g, first):
        for w1, c1 in _prepend(b, tail):
            for w2, c2 in _prepend(a, w1):
                _accumulate(acc, w2, rc * c1 * c2)
    return tuple(acc.items())


def _fold(start: dict[Monomial, LaurentPoly], letters: Iterable[GeneratorIndex], *, left: bool) -> dict[Monomial, LaurentPoly]:
    current = start
    for g in letters:
        nxt: dict[Monomial, LaurentPoly] = {}
        for word, coeff in current.items():
            for w2, c2 in (_prepend(g, word) if left else _append(word, g)):
                _accumulate(nxt, w2, coeff * c2)
        current = nxt
    return current


def _multiply_monomials(left: Monomial, right: Monomial) -> dict[Monomial, LaurentPoly]:
    if not left or not right or left[-1] <= right[0]:
        return {left + right: ONE}
    # fold the shorter factor into the longer one
    if len(left) <= len(right):
        return _fold({right: ONE}, reversed(left), left=True)
    return _fold({left: ONE}, right, left=False)


@lru_cache(maxsize=_CACHE_SIZE)
def _reduce_leftmost(word: Monomial) -> tuple[tuple[Monomial, LaurentPoly], ...]:
    if len(word) <= 1:
        return ((word, ONE),)
    prefix = dict(_reduce_leftmost(word[:-1]))
    return tuple(_fold(prefix, (word[-1],), left=False).items())


def _descent(word: Monomial, strategy: Strategy) -> int | None:
    positions: Iterable[int] = range(len(word) - 1)
    if strategy == "rightmost":
        positions = reversed(range(len(word) - 1))
    for p in positions:
        if word[p] > word[p + 1]:
            return p
    return None


def _rewrite(word: Monomial, strategy: Strategy, coeffs: _RuleCoefficients) -> dict[Monomial, object]:
    """Plain pair-by-pair rewriting without memoization."""
    pending: dict[Monomial, object] = {word: coeffs.one}
    done: dict[Monomial, object] = {}
    while pending:
        charge()
        w, c = pending.popitem()
        p = _descent(w, strategy)
        if p is None:
            _accumulate(done, w, c)
            continue
        for label, pair in _swap_rule(w[p], w[p + 1]):
            _accumulate(pending, w[:p] + pair + w[p + 2 :], c * getattr(coeffs, label))
    return done


def clear_caches() -> None:
    for fn in (_append, _prepend, _reduce_leftmost):
        fn.cache_clear()


def cache_stats() -> dict[str, int]:
    return {
        "append": _append.cache_info().currsize,
        "prepend": _prepend.cache_info().currsize,
        "words": _reduce_leftmost.cache_info().currsize,
    }


# --------------------------------------------------------------------------
# elements
# --------------------------------------------------------------------------

Scalar = LaurentPoly | int | Fraction


def _sort_key(word: Monomial) -> tuple[int, Monomial]:
    return len(word), word


class AlgebraElement:
    """Element of O(M_q) for a fixed ambient size n."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Sequence[Sequence[int]], Scalar] | None = None):
        check_size(n)
        acc: dict[Monomial, LaurentPoly] = {}
        for word, coeff in (terms or {}).items():
            lp = _as_scalar(coeff)
            if not lp:
                continue
            for w, c in reduce_word(word, n).items():
                _accumulate(acc, w, lp * c)
        self.n = n
        self._terms = acc

    @classmethod
    def _wrap(cls, n: int, terms: dict[Monomial, LaurentPoly]) -> "AlgebraElement":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        return obj

    @property
    def terms(self) -> dict[Monomial, LaurentPoly]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, LaurentPoly]]:
        return iter(self._terms.items())

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms, key=_sort_key)

    def coefficient(self, word: Sequence[Sequence[int]]) -> LaurentPoly:
        return self._terms.get(tuple(GeneratorIndex(*g) for g in word), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def _same_size(self, other: "AlgebraElement") -> None:
        if self.n != other.n:
            raise SizeMismatchError(f"ambient sizes differ: {self.n} != {other.n}")

    def _lift(self, other: object) -> "AlgebraElement | None":
        if isinstance(other, AlgebraElement):
            self._same_size(other)
            return other
        if isinstance(other, (LaurentPoly, int, Fraction)) and not isinstance(other, bool):
            return scalar(other, self.n)
        return None

    def __add__(self, other: object) -> "AlgebraElement":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for word, coeff in rhs._terms.items():
            _accumulate(out, word, coeff)
        return AlgebraElement._wrap(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement._wrap(self.n, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: object) -> "AlgebraElement":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "AlgebraElement":
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def scale(self, factor: Scalar) -> "AlgebraElement":
        lp = _as_scalar(factor)
        if not lp:
            return zero(self.n)
        if lp.is_one():
            return self
        out = {}
        for w, c in self._terms.items():
            _accumulate(out, w, c * lp)
        return AlgebraElement._wrap(self.n, out)

    def __mul__(self, other: object) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return alg_mul(self, other)
        if isinstance(other, (LaurentPoly, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: object) -> "AlgebraElement":
        if isinstance(other, (LaurentPoly, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, power: int) -> "AlgebraElement":
        if not isinstance(power, int) or power < 0:
            raise AlgebraError(f"power must be a nonnegative integer, got {power!r}")
        result = unit(self.n)
        for _ in range(power):
            result = alg_mul(result, self)
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AlgebraElement):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (LaurentPoly, int, Fraction)) and not isinstance(other, bool):
            return self._terms == scalar(other, self.n)._terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def specialize(self, qvalue: Rational) -> "SpecializedElement":
        return alg_specialize(self, qvalue)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({self._terms[w].to_text()})*{monomial_text(w)}" for w in self.monomials())

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"AlgebraElement(n={self.n}, {self.to_text()!r})"


@dataclass(frozen=True)
class SpecializedElement:
    """Element of the algebra at a concrete rational q."""

    n: int
    qvalue: Rational
    terms: tuple[tuple[Monomial, Rational], ...]

    @classmethod
    def from_mapping(cls, n: int, qvalue: Rational, terms: Mapping[Monomial, Rational]) -> "SpecializedElement":
        clean = [(w, normalize_rational(c)) for w, c in terms.items() if c]
        return cls(n=n, qvalue=normalize_rational(qvalue), terms=tuple(sorted(clean, key=lambda t: _sort_key(t[0]))))

    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[Monomial, Rational]:
        return dict(self.terms)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{format_rational(c)}*{monomial_text(w)}" for w, c in self.terms)


def _as_scalar(value: Scalar) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.constant(value)


def zero(n: int) -> AlgebraElement:
    return AlgebraElement._wrap(check_size(n), {})


def unit(n: int) -> AlgebraElement:
    return AlgebraElement._wrap(check_size(n), {(): ONE})


def scalar(value: Scalar, n: int) -> AlgebraElement:
    lp = _as_scalar(value)
    return AlgebraElement._wrap(check_size(n), {(): lp} if lp else {})


def generator(i: int, j: int, n: int) -> AlgebraElement:
    g = check_index((i, j), check_size(n))
    return AlgebraElement._wrap(n, {(g,): ONE})


def reduce_word(word: Sequence[Sequence[int]], n: int, strategy: Strategy = "leftmost") -> dict[Monomial, LaurentPoly]:
    """Normal form of a generator word as a monomial -> coefficient mapping."""
    check_size(n)
    w: Monomial = tuple(check_index(g, n) for g in word)
    if strategy == "leftmost":
        return dict(_reduce_leftmost(w))
    if strategy == "rightmost":
        return _rewrite(w, "rightmost", _SYMBOLIC)
    raise AlgebraError(f"unknown reduction strategy: {strategy!r}")


def reduce_element(word: Sequence[Sequence[int]], n: int, strategy: Strategy = "leftmost") -> AlgebraElement:
    return AlgebraElement._wrap(n, reduce_word(word, n, strategy))


def reduce_word_at(word: Sequence[Sequence[int]], n: int, qvalue: Rational) -> SpecializedElement:
    """Reduce directly in the numeric algebra where q is the given rational."""
    check_size(n)
    w: Monomial = tuple(check_index(g, n) for g in word)
    return SpecializedElement.from_mapping(n, qvalue, _rewrite(w, "leftmost", _numeric_coefficients(qvalue)))


def alg_add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a + b


def alg_sub(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a - b


def alg_neg(a: AlgebraElement) -> AlgebraElement:
    return -a


def alg_scale(a: AlgebraElement, factor: Scalar) -> AlgebraElement:
    return a.scale(factor)


def alg_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a.n != b.n:
        raise SizeMismatchError(f"ambient sizes differ: {a.n} != {b.n}")
    acc: dict[Monomial, LaurentPoly] = {}
    for m1, c1 in a._terms.items():
        charge()
        for m2, c2 in b._terms.items():
            c = c1 * c2
            for w, cw in _multiply_monomials(m1, m2).items():
                _accumulate(acc, w, c * cw)
    return AlgebraElement._wrap(a.n, acc)


def alg_commutator(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return alg_mul(a, b) - alg_mul(b, a)


def alg_specialize(a: AlgebraElement, qvalue: Rational) -> SpecializedElement:
    if Fraction(qvalue) == 0:
        raise AlgebraError("q cannot be specialized to 0")
    return SpecializedElement.from_mapping(a.n, qvalue, {w: c.evaluate(qvalue) for w, c in a._terms.items()})


# --------------------------------------------------------------------------
# structural helpers used by the verification checks
# --------------------------------------------------------------------------

def normal_monomials(n: int, degree: int) -> list[Monomial]:
    return list(combinations_with_replacement(generators(n), degree))


def bidegree_profile(a: AlgebraElement) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    return {word_bidegree(w) for w in a._terms}


def bidegree_drift(word: Sequence[Sequence[int]], n: int, strategy: Strategy = "leftmost") -> int:
    """Monomials of the normal form whose row or column multiset differs from the input word's."""
    check_size(n)
    w: Monomial = tuple(check_index(g, n) for g in word)
    target = word_bidegree(w)
    return sum(1 for m in reduce_word(w, n, strategy) if word_bidegree(m) != target)


def balance(a: AlgebraElement) -> tuple[int, ...] | None:
    """Row-minus-column count vector shared by every monomial; None for 0."""
    profile: tuple[int, ...] | None = None
    for word in a._terms:
        counts = [0] * a.n
        for g in word:
            counts[g.row - 1] += 1
            counts[g.col - 1] -= 1
        vec = tuple(counts)
        if profile is None:
            profile = vec
        elif vec != profile:
            raise AlgebraError(f"element mixes balances {profile} and {vec}")
    return profile


def relation_table(n: int) -> dict[Monomial, AlgebraElement]:
    """Expected normal form of every ordered generator pair.

    Derived from x[i,j]x[k,l] - x[k,l]x[i,j] = (q^theta(j,l) - q^-theta(i,k)) x[i,l]x[k,j]
    alone, without the rewriting engine.
    """
    table: dict[Monomial, AlgebraElement] = {}
    for high in generators(n):
        for low in generators(n):
            if high <= low:
                table[(high, low)] = AlgebraElement._wrap(n, {(high, low): ONE})
                continue
            (i, j), (k, l) = low, high
            c = q_power(theta(j, l)) - q_power(-theta(i, k))
            correction = (GeneratorIndex(i, l), GeneratorIndex(k, j))
            ordered = (low, high)
            terms: dict[Monomial, LaurentPoly] = {}
            if correction == (high, low):
                # x_kl x_ij (1 + c) = x_ij x_kl
                _accumulate(terms, ordered, (ONE + c).inverse())
            else:
                if correction[0] > correction[1]:
                    raise AlgebraError(f"unexpected correction word {correction}")
                _accumulate(terms, ordered, ONE)
                _accumulate(terms, correction, -c)
            table[(high, low)] = AlgebraElement._wrap(n, terms)
    return table
