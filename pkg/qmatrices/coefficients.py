"""Exact Laurent polynomials in q with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Union

Rational = Union[int, Fraction]


class EvaluationError(ValueError):
    pass


def normalize_rational(value: Rational | str) -> Rational:
    """Return an int when the value is integral, otherwise a reduced Fraction."""
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, int):
        return value
    frac = value if isinstance(value, Fraction) else Fraction(value)
    if frac.denominator == 1:
        return frac.numerator
    return frac


def format_rational(value: Rational) -> str:
    frac = Fraction(value)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


class LaurentPoly:
    """Immutable sparse mapping exponent -> nonzero rational coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        clean: dict[int, Rational] = {}
        for exp, coeff in (terms or {}).items():
            c = normalize_rational(coeff)
            if c:
                clean[int(exp)] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _wrap(cls, terms: dict[int, Rational]) -> "LaurentPoly":
        # caller guarantees canonical form
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value: Rational) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coeff: Rational = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @property
    def terms(self) -> dict[int, Rational]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, Rational]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return len(self._terms) == 1 and self._terms.get(0) == 1

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    def valuation(self) -> int | None:
        return min(self._terms) if self._terms else None

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @staticmethod
    def _coerce(other: object) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other: object) -> "LaurentPoly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if not rhs._terms:
            return self
        if not self._terms:
            return rhs
        out = dict(self._terms)
        for exp, coeff in rhs._terms.items():
            c = out.get(exp, 0) + coeff
            if c:
                out[exp] = normalize_rational(c)
            else:
                out.pop(exp, None)
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._wrap({exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other: object) -> "LaurentPoly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "LaurentPoly":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "LaurentPoly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if not self._terms or not rhs._terms:
            return ZERO
        if self.is_one():
            return rhs
        if rhs.is_one():
            return self
        out: dict[int, Rational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in rhs._terms.items():
                exp = e1 + e2
                out[exp] = out.get(exp, 0) + c1 * c2
        return LaurentPoly._wrap({e: normalize_rational(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def inverse(self) -> "LaurentPoly":
        """Inverse of a single-term Laurent polynomial (the units of Q[q, 1/q])."""
        if len(self._terms) != 1:
            raise EvaluationError(f"not a unit in Q[q, 1/q]: {self.to_text()}")
        ((exp, coeff),) = self._terms.items()
        return LaurentPoly({-exp: Fraction(1) / Fraction(coeff)})

    def __pow__(self, power: int) -> "LaurentPoly":
        if not isinstance(power, int):
            return NotImplemented
        if power < 0:
            return self.inverse() ** (-power)
        result = ONE
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms

    def __hash__(self) -> int:
        if self._hash is None:
            # constants compare equal to plain rationals, so they must hash like them
            if not self._terms:
                self._hash = hash(0)
            elif self._terms.keys() == {0}:
                self._hash = hash(self._terms[0])
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def evaluate(self, value: Rational) -> Rational:
        v = Fraction(value)
        if v == 0:
            raise EvaluationError("cannot evaluate a Laurent polynomial at q = 0")
        total = Fraction(0)
        for exp, coeff in self._terms.items():
            total += coeff * v**exp
        return normalize_rational(total)

    def derivative_at_one(self) -> Rational:
        return normalize_rational(sum((exp * Fraction(coeff) for exp, coeff in self._terms.items()), Fraction(0)))

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for exp in sorted(self._terms, reverse=True):
            coeff = format_rational(self._terms[exp])
            if exp == 0:
                parts.append(coeff)
            elif exp == 1:
                parts.append(f"{coeff}*q")
            else:
                parts.append(f"{coeff}*q^{exp}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
Q = LaurentPoly.monomial(1)
Q_INV = LaurentPoly.monomial(-1)


def q_power(exponent: int) -> LaurentPoly:
    return LaurentPoly.monomial(exponent)


def minus_q_power(exponent: int) -> LaurentPoly:
    """(-q)^exponent, exponent may be negative."""
    return LaurentPoly.monomial(exponent, -1 if exponent % 2 else 1)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_eval(a: LaurentPoly, value: Rational) -> Rational:
    return a.evaluate(value)


def lp_derivative_at_one(a: LaurentPoly) -> Rational:
    return a.derivative_at_one()
