"""Quasi-classical limit: C[y_ij] with the bracket {y_ij, y_kl} = (theta(i,k) + theta(j,l)) y_il y_kj."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

import sympy
from sympy import QQ, Poly

from qmatrices.algebra import AlgebraElement, SizeMismatchError, alg_commutator, alg_mul, check_index, check_size, generator, theta
from qmatrices.coefficients import Rational, format_rational, normalize_rational
from qmatrices.identities import power_trace

Exponents = tuple[int, ...]


@lru_cache(maxsize=16)
def _symbols(n: int) -> tuple[sympy.Symbol, ...]:
    check_size(n)
    return tuple(sympy.Symbol(f"y_{i}_{j}") for i in range(1, n + 1) for j in range(1, n + 1))


def _position(i: int, j: int, n: int) -> int:
    return (i - 1) * n + (j - 1)


def _to_sympy(value: Rational) -> sympy.Rational:
    frac = Fraction(value)
    return sympy.Rational(frac.numerator, frac.denominator)


class CPoly:
    """Commutative polynomial in the y_ij with rational coefficients."""

    __slots__ = ("n", "poly")

    def __init__(self, n: int, poly: Poly):
        self.n = check_size(n)
        self.poly = poly

    @classmethod
    def from_terms(cls, n: int, terms: dict[Exponents, Rational]) -> "CPoly":
        clean = {exps: _to_sympy(c) for exps, c in terms.items() if c}
        gens = _symbols(n)
        if not clean:
            return cls(n, Poly(0, *gens, domain=QQ))
        return cls(n, Poly.from_dict(clean, *gens, domain=QQ))

    @classmethod
    def constant(cls, value: Rational, n: int) -> "CPoly":
        return cls(n, Poly(_to_sympy(value), *_symbols(n), domain=QQ))

    @classmethod
    def generator(cls, i: int, j: int, n: int) -> "CPoly":
        check_index((i, j), n)
        return cls(n, Poly(_symbols(n)[_position(i, j, n)], *_symbols(n), domain=QQ))

    def terms(self) -> dict[Exponents, Rational]:
        return {
            tuple(int(e) for e in exps): normalize_rational(Fraction(int(c.p), int(c.q)))
            for exps, c in self.poly.as_dict().items()
            if c != 0
        }

    def is_zero(self) -> bool:
        return self.poly.is_zero

    def __bool__(self) -> bool:
        return not self.poly.is_zero

    def __len__(self) -> int:
        return len(self.terms())

    def _same_size(self, other: "CPoly") -> None:
        if self.n != other.n:
            raise SizeMismatchError(f"ambient sizes differ: {self.n} != {other.n}")

    def _lift(self, other: object) -> "CPoly | None":
        if isinstance(other, CPoly):
            self._same_size(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CPoly.constant(other, self.n)
        return None

    def __add__(self, other: object) -> "CPoly":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return CPoly(self.n, self.poly + rhs.poly)

    __radd__ = __add__

    def __neg__(self) -> "CPoly":
        return CPoly(self.n, -self.poly)

    def __sub__(self, other: object) -> "CPoly":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return CPoly(self.n, self.poly - rhs.poly)

    def __rsub__(self, other: object) -> "CPoly":
        lhs = self._lift(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "CPoly":
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return CPoly(self.n, self.poly * rhs.poly)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "CPoly":
        if not isinstance(power, int) or power < 0:
            raise ValueError(f"power must be a nonnegative integer, got {power!r}")
        return CPoly(self.n, self.poly**power)

    def __eq__(self, other: object) -> bool:
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return self.n == rhs.n and self.poly == rhs.poly

    __hash__ = None  # type: ignore[assignment]

    def diff(self, i: int, j: int) -> "CPoly":
        check_index((i, j), self.n)
        return CPoly(self.n, self.poly.diff(_symbols(self.n)[_position(i, j, self.n)]))

    def to_text(self) -> str:
        terms = self.terms()
        if not terms:
            return "0"
        parts = []
        for exps in sorted(terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            factors = [format_rational(terms[exps])]
            for pos, e in enumerate(exps):
                if not e:
                    continue
                name = f"y[{pos // self.n + 1},{pos % self.n + 1}]"
                factors.append(name if e == 1 else f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"CPoly(n={self.n}, {self.to_text()!r})"


def cpoly_constant(value: Rational, n: int) -> CPoly:
    return CPoly.constant(value, n)


def cpoly_generator(i: int, j: int, n: int) -> CPoly:
    return CPoly.generator(i, j, n)


def pbracket_gen(i: int, j: int, k: int, l: int, n: int) -> CPoly:
    """{y_ij, y_kl} = (theta(i,k) + theta(j,l)) y_il y_kj."""
    for index in ((i, j), (k, l)):
        check_index(index, check_size(n))
    coeff = theta(i, k) + theta(j, l)
    if coeff == 0:
        return CPoly.constant(0, n)
    return CPoly.generator(i, l, n) * CPoly.generator(k, j, n) * coeff


@lru_cache(maxsize=16)
def _bracket_table(n: int) -> dict[tuple[int, int, int, int], CPoly]:
    table = {}
    for i, j, k, l in product(range(1, n + 1), repeat=4):
        value = pbracket_gen(i, j, k, l, n)
        if value:
            table[(i, j, k, l)] = value
    return table


def pbracket(f: CPoly, g: CPoly) -> CPoly:
    """Biderivation extension: sum of df/dy_ij * dg/dy_kl * {y_ij, y_kl}."""
    if f.n != g.n:
        raise SizeMismatchError(f"ambient sizes differ: {f.n} != {g.n}")
    n = f.n
    total = CPoly.constant(0, n)
    df = {(i, j): f.diff(i, j) for i in range(1, n + 1) for j in range(1, n + 1)}
    dg = {(k, l): g.diff(k, l) for k in range(1, n + 1) for l in range(1, n + 1)}
    for (i, j, k, l), bracket in _bracket_table(n).items():
        left, right = df[(i, j)], dg[(k, l)]
        if left and right:
            total = total + left * right * bracket
    return total


def pbracket_leibniz(f: CPoly, g: CPoly) -> CPoly:
    """Same bracket, expanded monomial by monomial with the product rule."""
    if f.n != g.n:
        raise SizeMismatchError(f"ambient sizes differ: {f.n} != {g.n}")
    n = f.n
    acc: dict[Exponents, Rational] = {}
    table = {
        (_position(i, j, n), _position(k, l, n)): (theta(i, k) + theta(j, l), _position(i, l, n), _position(k, j, n))
        for i, j, k, l in product(range(1, n + 1), repeat=4)
    }
    for e1, c1 in f.terms().items():
        for e2, c2 in g.terms().items():
            for u, eu in enumerate(e1):
                if not eu:
                    continue
                for v, ev in enumerate(e2):
                    if not ev:
                        continue
                    coeff, a, b = table[(u, v)]
                    if not coeff:
                        continue
                    exps = [x + y for x, y in zip(e1, e2)]
                    exps[u] -= 1
                    exps[v] -= 1
                    exps[a] += 1
                    exps[b] += 1
                    key = tuple(exps)
                    acc[key] = acc.get(key, 0) + c1 * c2 * eu * ev * coeff
    return CPoly.from_terms(n, acc)


@lru_cache(maxsize=64)
def classical_trace_power(n: int, k: int) -> CPoly:
    """Tr(Y^k) for the ordinary matrix power of Y = (y_ij)."""
    check_size(n)
    if k < 1:
        raise ValueError(f"trace power needs k >= 1, got {k}")
    gens = _symbols(n)
    y = sympy.Matrix(n, n, lambda i, j: gens[i * n + j])
    return CPoly(n, Poly(sympy.expand((y**k).trace()), *gens, domain=QQ))


def involution_residual(n: int, k: int, m: int) -> CPoly:
    """{Tr(Y^k), Tr(Y^m)}."""
    return pbracket(classical_trace_power(n, k), classical_trace_power(n, m))


def classical_shadow(a: AlgebraElement) -> CPoly:
    """Specialize at q = 1 and read each monomial commutatively (x -> y)."""
    n = a.n
    acc: dict[Exponents, Rational] = {}
    for word, coeff in a.items():
        value = coeff.evaluate(1)
        if not value:
            continue
        exps = [0] * (n * n)
        for g in word:
            exps[_position(g.row, g.col, n)] += 1
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + value
    return CPoly.from_terms(n, acc)


def semiclassical_generator_residual(i: int, j: int, k: int, l: int, n: int) -> CPoly:
    """First-order term of [x_ij, x_kl] at q = 1, read commutatively, minus {y_ij, y_kl}."""
    commutator = alg_commutator(generator(i, j, n), generator(k, l, n))
    acc: dict[Exponents, Rational] = {}
    for word, coeff in commutator.items():
        exps = [0] * (n * n)
        for g in word:
            exps[_position(g.row, g.col, n)] += 1
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + coeff.derivative_at_one()
    return CPoly.from_terms(n, acc) - pbracket_gen(i, j, k, l, n)


def trace_shadow_residual(n: int, k: int) -> CPoly:
    """shadow(t_k) - Tr(Y^k)."""
    return classical_shadow(power_trace(n, k)) - classical_trace_power(n, k)


def shadow_homomorphism_residual(a: AlgebraElement, b: AlgebraElement) -> CPoly:
    return classical_shadow(alg_mul(a, b)) - classical_shadow(a) * classical_shadow(b)
