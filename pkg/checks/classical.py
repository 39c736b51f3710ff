from __future__ import annotations

import random
from itertools import product

from checks.base import BaseCheck, CaseOutcome, CheckContext, Params, cpoly_outcome, random_word, seeded_random
from checks.registry import register_check
from qmatrices.algebra import AlgebraElement
from qmatrices.coefficients import LaurentPoly
from qmatrices.poisson import (
    CPoly,
    involution_residual,
    pbracket,
    pbracket_leibniz,
    semiclassical_generator_residual,
    shadow_homomorphism_residual,
    trace_shadow_residual,
)

POISSON_LAWS = ("antisymmetry", "leibniz", "jacobi", "expansion")
LAW_SAMPLE_CAP = 100


def random_cpoly(rng: random.Random, n: int, *, max_terms: int = 3, max_degree: int = 2) -> CPoly:
    terms: dict[tuple[int, ...], int] = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * (n * n)
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(n * n)] += 1
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + rng.choice((-3, -2, -1, 1, 2, 3))
    return CPoly.from_terms(n, terms)


def random_element(rng: random.Random, n: int, *, max_terms: int = 3, max_len: int = 3) -> AlgebraElement:
    terms: dict[tuple, LaurentPoly] = {}
    for _ in range(rng.randint(1, max_terms)):
        word = random_word(rng, n, max_len)
        coeff = LaurentPoly({rng.randint(-2, 2): rng.choice((-2, -1, 1, 2))})
        terms[word] = terms.get(word, LaurentPoly()) + coeff
    return AlgebraElement(n, terms)


def law_residual(law: str, f: CPoly, g: CPoly, h: CPoly) -> CPoly:
    if law == "antisymmetry":
        return pbracket(f, g) + pbracket(g, f)
    if law == "leibniz":
        return pbracket(f, g * h) - pbracket(f, g) * h - g * pbracket(f, h)
    if law == "jacobi":
        return pbracket(f, pbracket(g, h)) + pbracket(g, pbracket(h, f)) + pbracket(h, pbracket(f, g))
    if law == "expansion":
        return pbracket(f, g) - pbracket_leibniz(f, g)
    raise ValueError(f"unknown Poisson law {law!r}")


class PoissonCheck(BaseCheck):
    """Involutivity of Tr(Y^k) plus the bracket laws on seeded random polynomials."""

    NAME = "poisson"

    def cases(self, ctx: CheckContext) -> list[Params]:
        top = ctx.max_power
        out: list[Params] = [{"n": ctx.n, "k": k, "m": m} for k in range(1, top + 1) for m in range(1, top + 1)]
        samples = min(ctx.samples, LAW_SAMPLE_CAP)
        out += [{"n": ctx.n, "law": law, "samples": samples, "seed": ctx.seed} for law in POISSON_LAWS]
        return out

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n = params["n"]
        law = params.get("law")
        if law is None:
            return cpoly_outcome(involution_residual(n, params["k"], params["m"]))
        rng = seeded_random(params["seed"], "poisson", law, n)
        residuals = []
        for _ in range(params["samples"]):
            f, g, h = (random_cpoly(rng, n) for _ in range(3))
            residuals.append(law_residual(law, f, g, h))
        return cpoly_outcome(residuals)


class SemiclassicalCheck(BaseCheck):
    """First-order term of every generator commutator at q = 1 matches the bracket."""

    NAME = "semiclassical"

    def cases(self, ctx: CheckContext) -> list[Params]:
        return [{"n": ctx.n}]

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n = params["n"]
        indices = range(1, n + 1)
        return cpoly_outcome(semiclassical_generator_residual(i, j, k, l, n) for i, j, k, l in product(indices, repeat=4))


class ShadowCheck(BaseCheck):
    """Specializing at q = 1 sends t_k to Tr(Y^k) and products to products."""

    NAME = "shadow"

    def cases(self, ctx: CheckContext) -> list[Params]:
        out: list[Params] = [{"n": ctx.n, "k": k} for k in range(1, ctx.max_power + 1)]
        out.append({"n": ctx.n, "variant": "homomorphism", "samples": min(ctx.samples, LAW_SAMPLE_CAP), "seed": ctx.seed})
        return out

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n = params["n"]
        if params.get("variant") == "homomorphism":
            rng = seeded_random(params["seed"], "shadow", n)
            residuals = []
            for _ in range(params["samples"]):
                a, b = random_element(rng, n), random_element(rng, n)
                residuals.append(shadow_homomorphism_residual(a, b))
            return cpoly_outcome(residuals)
        return cpoly_outcome(trace_shadow_residual(n, params["k"]))


register_check(PoissonCheck())
register_check(SemiclassicalCheck())
register_check(ShadowCheck())
