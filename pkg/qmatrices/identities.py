"""Executable residuals for the trace / principal-minor identities.

Every check returns the residual (an element or a matrix of elements); an
identity holds when the residual has no terms.  The traces t_k of quantum
powers, the sigma_k and the Z_k matrices are memoized per n.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy
from sympy import QQ, Poly

from qmatrices.algebra import AlgebraElement, AlgebraError, alg_commutator, alg_mul, balance, check_size, scalar, theta, unit, zero
from qmatrices.coefficients import LaurentPoly, Rational, format_rational, minus_q_power, q_power
from qmatrices.minors import l_count, qminor_or_unit, sigma, subsets
from qmatrices.qmatrix import QMatrix, generic_matrix, identity, qpower, right_scalar_mul, scalar_matrix, star, trace

log = logging.getLogger("identities")


class IdentityError(AlgebraError):
    pass


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


@lru_cache(maxsize=128)
def power_trace(n: int, k: int) -> AlgebraElement:
    """t_k = Tr(qX^k); t_0 = Tr(I) = n."""
    check_size(n)
    if k < 0:
        raise IdentityError(f"power index must be nonnegative, got {k}")
    return trace(qpower(generic_matrix(n), k))


# --------------------------------------------------------------------------
# Z_k
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ZSequence:
    n: int
    matrices: tuple[QMatrix, ...]

    def __getitem__(self, k: int) -> QMatrix:
        return self.matrices[k]

    def __len__(self) -> int:
        return len(self.matrices)


@lru_cache(maxsize=64)
def z_recursive(n: int, k: int) -> QMatrix:
    """Z_0 = I, Z_k = X*Z_{k-1} + (-1)^k I sigma_k."""
    check_size(n)
    if k < 0:
        raise IdentityError(f"Z index must be nonnegative, got {k}")
    if k == 0:
        return identity(n)
    return star(generic_matrix(n), z_recursive(n, k - 1)) + scalar_matrix(sigma(k, n).scale(_sign(k)))


def z_sequence(n: int, upto: int) -> ZSequence:
    return ZSequence(n=n, matrices=tuple(z_recursive(n, k) for k in range(upto + 1)))


def z_closed_form(n: int, k: int, i: int, j: int) -> AlgebraElement:
    """(-1)^k sum over |J| = k+1 with i, j in J of q^theta(i,j) (-q)^(l(i,J) - l(j,J)) [J\\j | J\\i]."""
    check_size(n)
    if not 0 <= k <= n - 1:
        raise IdentityError(f"closed form needs 0 <= k <= n-1, got k={k}, n={n}")
    if not (1 <= i <= n and 1 <= j <= n):
        raise IdentityError(f"entry ({i},{j}) out of range for n={n}")
    total = zero(n)
    for subset in subsets(n, k + 1):
        if i not in subset or j not in subset:
            continue
        weight = q_power(theta(i, j)) * minus_q_power(l_count(i, subset) - l_count(j, subset))
        total = total + qminor_or_unit(subset.without(j), subset.without(i), n).scale(weight)
    return total.scale(_sign(k))


def z_closed_form_matrix(n: int, k: int) -> QMatrix:
    return QMatrix.build(n, lambda i, j: z_closed_form(n, k, i, j))


def z_via_eq4(n: int, k: int) -> QMatrix:
    """sum_j (-1)^j qX^(k-j) sigma_j, sigma_j multiplied from the right."""
    check_size(n)
    if k < 0:
        raise IdentityError(f"Z index must be nonnegative, got {k}")
    x = generic_matrix(n)
    total = qpower(x, k)
    for j in range(1, k + 1):
        s = sigma(j, n)
        if s.is_zero():
            continue
        term = right_scalar_mul(qpower(x, k - j), s)
        total = total - term if j % 2 else total + term
    return total


def z_diagonal_residual(n: int, k: int) -> QMatrix:
    """(Z_k)_ii - (-1)^k sum over |K| = k, i not in K of [K|K], for k < n."""
    check_size(n)
    if not 0 <= k <= n - 1:
        raise IdentityError(f"diagonal formula needs 0 <= k <= n-1, got k={k}, n={n}")
    z = z_recursive(n, k)

    def entry(i: int, j: int) -> AlgebraElement:
        if i != j:
            return zero(n)
        expected = zero(n)
        for subset in subsets(n, k):
            if i not in subset:
                expected = expected + qminor_or_unit(subset, subset, n)
        return z.entry(i, i) - expected.scale(_sign(k))

    return QMatrix.build(n, entry)


def final_step_residual(n: int) -> QMatrix:
    """X*Z_{n-1} - (-1)^(n-1) I sigma_n."""
    check_size(n)
    return star(generic_matrix(n), z_recursive(n, n - 1)) - scalar_matrix(sigma(n, n).scale(_sign(n - 1)))


def trace_z_residual(n: int, k: int) -> AlgebraElement:
    """Tr(Z_k) - (-1)^k (n-k) sigma_k for k < n, Tr(Z_k) for k >= n."""
    check_size(n)
    if k < 0:
        raise IdentityError(f"Z index must be nonnegative, got {k}")
    tr = trace(z_recursive(n, k))
    if k >= n:
        return tr
    return tr - sigma(k, n).scale(_sign(k) * (n - k))


def trace_z_expansion_residual(n: int, k: int) -> AlgebraElement:
    """Tr(Z_k) - sum_j (-1)^j t_(k-j) sigma_j, with t_0 = n."""
    check_size(n)
    expansion = zero(n)
    for j in range(k + 1):
        s = sigma(j, n)
        if s.is_zero():
            continue
        expansion = expansion + alg_mul(power_trace(n, k - j), s).scale(_sign(j))
    return trace(z_recursive(n, k)) - expansion


# --------------------------------------------------------------------------
# Newton's formulae and commuting traces
# --------------------------------------------------------------------------

def newton_residual(n: int, k: int) -> AlgebraElement:
    """t_k - t_(k-1) sigma_1 + ... + (-1)^(k-1) t_1 sigma_(k-1) + (-1)^k k sigma_k."""
    check_size(n)
    if k < 1:
        raise IdentityError(f"Newton index must be positive, got {k}")
    total = sigma(k, n).scale(_sign(k) * k)
    for j in range(k):
        s = sigma(j, n)
        if s.is_zero():
            continue
        total = total + alg_mul(power_trace(n, k - j), s).scale(_sign(j))
    return total


@lru_cache(maxsize=256)
def _trace_commutator(n: int, k: int, m: int) -> AlgebraElement:
    return alg_commutator(power_trace(n, k), power_trace(n, m))


def commutator_residual(n: int, k: int, m: int) -> AlgebraElement:
    """[t_k, t_m]."""
    check_size(n)
    if k < 1 or m < 1:
        raise IdentityError(f"trace indices must be positive, got {k}, {m}")
    if k == m:
        return zero(n)
    if k > m:
        return -_trace_commutator(n, m, k)
    return _trace_commutator(n, k, m)


def sigma_commutator_residual(n: int, i: int, j: int) -> AlgebraElement:
    """[sigma_i, sigma_j]."""
    check_size(n)
    if i == j:
        return zero(n)
    return alg_commutator(sigma(i, n), sigma(j, n))


def sigma_trace_commutator_residual(n: int, j: int, k: int) -> AlgebraElement:
    """[sigma_j, t_k]."""
    check_size(n)
    if not 1 <= j <= n or k < 1:
        raise IdentityError(f"expected 1 <= j <= {n} and k >= 1, got j={j}, k={k}")
    return alg_commutator(sigma(j, n), power_trace(n, k))


def sigma_from_t(n: int, upto: int) -> list[AlgebraElement]:
    """sigma_1..sigma_upto recovered from the traces by solving Newton's formulae."""
    check_size(n)
    if not 1 <= upto <= n:
        raise IdentityError(f"can recover sigma_1..sigma_k only for 1 <= k <= n, got {upto}")
    recovered: list[AlgebraElement] = [unit(n)]
    for k in range(1, upto + 1):
        acc = zero(n)
        for j in range(k):
            acc = acc + alg_mul(power_trace(n, k - j), recovered[j]).scale(_sign(j))
        recovered.append(acc.scale(LaurentPoly.constant(Fraction(_sign(k + 1), k))))
    return recovered[1:]


# --------------------------------------------------------------------------
# polynomial expressions in R
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisPolynomial:
    """A commutative polynomial over Q in named generators of R."""

    variables: tuple[str, ...]
    poly: Poly

    def terms(self) -> list[tuple[tuple[int, ...], Rational]]:
        out = []
        for exps, coeff in self.poly.as_dict().items():
            value = Fraction(int(coeff.p), int(coeff.q))
            out.append((tuple(int(e) for e in exps), value))
        out.sort(key=lambda t: (sum(t[0]), tuple(-e for e in t[0])))
        return out

    def to_text(self) -> str:
        parts = []
        for exps, coeff in self.terms():
            factors = [format_rational(coeff)]
            for name, e in zip(self.variables, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts) if parts else "0"

    def evaluate(self, values: Sequence[AlgebraElement]) -> AlgebraElement:
        return evaluate_polynomial(self, values)


def _gens(prefix: str, indices: Sequence[int]) -> list[sympy.Symbol]:
    return [sympy.Symbol(f"{prefix}{i}") for i in indices]


def _const(value: Rational, gens: Sequence[sympy.Symbol]) -> Poly:
    return Poly(sympy.Rational(Fraction(value).numerator, Fraction(value).denominator), *gens, domain=QQ)


def _newton_sigmas(traces: dict[int, Poly], upto: int, gens: Sequence[sympy.Symbol]) -> list[Poly]:
    sigmas = [_const(1, gens)]
    for k in range(1, upto + 1):
        acc = _const(0, gens)
        for j in range(k):
            acc = acc + traces[k - j] * sigmas[j] * _const(_sign(j), gens)
        sigmas.append(acc * _const(Fraction(_sign(k + 1), k), gens))
    return sigmas


def _extend_traces(traces: dict[int, Poly], sigmas: Sequence[Poly], n: int, k: int, gens: Sequence[sympy.Symbol]) -> Poly:
    for step in range(n + 1, k + 1):
        if step in traces:
            continue
        acc = _const(0, gens)
        for j in range(1, n + 1):
            acc = acc + traces[step - j] * sigmas[j] * _const(_sign(j + 1), gens)
        traces[step] = acc
    return traces[k]


def t_in_t_basis(n: int, k: int) -> BasisPolynomial:
    """t_k (k > n) as a polynomial in t_1..t_n."""
    check_size(n)
    if k <= n:
        raise IdentityError(f"t-basis expansion is for k > n, got k={k}, n={n}")
    names = [f"t{i}" for i in range(1, n + 1)]
    gens = _gens("t", range(1, n + 1))
    traces = {i: Poly(g, *gens, domain=QQ) for i, g in enumerate(gens, start=1)}
    sigmas = _newton_sigmas(traces, n, gens)
    return BasisPolynomial(tuple(names), _extend_traces(traces, sigmas, n, k, gens))


def t_in_sigma_basis(n: int, k: int) -> BasisPolynomial:
    """t_k as a polynomial in sigma_1..sigma_n."""
    check_size(n)
    if k < 1:
        raise IdentityError(f"trace index must be positive, got {k}")
    names = [f"s{i}" for i in range(1, n + 1)]
    gens = _gens("s", range(1, n + 1))
    zero_poly = _const(0, gens)
    sig = {j: Poly(g, *gens, domain=QQ) for j, g in enumerate(gens, start=1)}
    traces: dict[int, Poly] = {}
    for step in range(1, k + 1):
        acc = sig.get(step, zero_poly) * _const(_sign(step + 1) * step, gens)
        for j in range(1, step):
            acc = acc + traces[step - j] * sig.get(j, zero_poly) * _const(_sign(j + 1), gens)
        traces[step] = acc
    return BasisPolynomial(tuple(names), traces[k])


def t_in_mixed_basis(n: int, k: int) -> BasisPolynomial:
    """t_k as a polynomial in t_1..t_(n-1) and sigma_n."""
    check_size(n)
    if k < 1:
        raise IdentityError(f"trace index must be positive, got {k}")
    names = [f"t{i}" for i in range(1, n)] + [f"s{n}"]
    gens = _gens("t", range(1, n)) + _gens("s", [n])
    traces = {i: Poly(gens[i - 1], *gens, domain=QQ) for i in range(1, n)}
    sigmas = _newton_sigmas(traces, n - 1, gens)
    sigmas.append(Poly(gens[-1], *gens, domain=QQ))
    acc = sigmas[n] * _const(_sign(n + 1) * n, gens)
    for j in range(1, n):
        acc = acc + traces[n - j] * sigmas[j] * _const(_sign(j + 1), gens)
    traces[n] = acc
    if k <= n:
        return BasisPolynomial(tuple(names), traces[k])
    return BasisPolynomial(tuple(names), _extend_traces(traces, sigmas, n, k, gens))


def basis_values(n: int, basis: str) -> list[AlgebraElement]:
    """Algebra elements the variables of a basis polynomial stand for."""
    if basis == "t":
        return [power_trace(n, i) for i in range(1, n + 1)]
    if basis == "sigma":
        return [sigma(i, n) for i in range(1, n + 1)]
    if basis == "mixed":
        return [power_trace(n, i) for i in range(1, n)] + [sigma(n, n)]
    raise IdentityError(f"unknown basis {basis!r}; expected t, sigma or mixed")


def basis_polynomial(n: int, k: int, basis: str) -> BasisPolynomial:
    if basis == "t":
        return t_in_t_basis(n, k)
    if basis == "sigma":
        return t_in_sigma_basis(n, k)
    if basis == "mixed":
        return t_in_mixed_basis(n, k)
    raise IdentityError(f"unknown basis {basis!r}; expected t, sigma or mixed")


def evaluate_polynomial(poly: BasisPolynomial, values: Sequence[AlgebraElement]) -> AlgebraElement:
    """Substitute algebra elements for the variables; factors multiply in variable order."""
    if len(values) != len(poly.variables):
        raise IdentityError(f"expected {len(poly.variables)} values, got {len(values)}")
    n = values[0].n
    powers: dict[tuple[int, int], AlgebraElement] = {}

    def power(index: int, e: int) -> AlgebraElement:
        if e == 0:
            return unit(n)
        key = (index, e)
        if key not in powers:
            powers[key] = alg_mul(power(index, e - 1), values[index])
        return powers[key]

    total = zero(n)
    for exps, coeff in poly.terms():
        term = scalar(LaurentPoly.constant(coeff), n)
        for index, e in enumerate(exps):
            if e:
                term = alg_mul(term, power(index, e))
        total = total + term
    return total


def basis_residual(n: int, k: int, basis: str) -> AlgebraElement:
    """Evaluated basis polynomial minus t_k."""
    poly = basis_polynomial(n, k, basis)
    return evaluate_polynomial(poly, basis_values(n, basis)) - power_trace(n, k)


def sigma_recovery_residual(n: int) -> list[AlgebraElement]:
    return [rec - sigma(k, n) for k, rec in enumerate(sigma_from_t(n, n), start=1)]


# --------------------------------------------------------------------------
# conservation
# --------------------------------------------------------------------------

def element_conservation_violations(element: AlgebraElement, expected: Sequence[int] | None = None) -> int:
    """1 if the element's monomials do not share the expected row-minus-column balance."""
    target = tuple(expected) if expected is not None else (0,) * element.n
    try:
        found = balance(element)
    except AlgebraError:
        return 1
    return 0 if found is None or found == target else 1


def conservation_violations(matrix: QMatrix) -> int:
    """Entries (i,j) whose balance is not e_i - e_j."""
    count = 0
    for i, j, value in matrix.entries():
        target = [0] * matrix.n
        target[i - 1] += 1
        target[j - 1] -= 1
        count += element_conservation_violations(value, target)
    return count


def clear_caches() -> None:
    for fn in (power_trace, z_recursive, _trace_commutator):
        fn.cache_clear()
    log.debug("identity caches cleared")
