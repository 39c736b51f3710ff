from __future__ import annotations

from fractions import Fraction
from math import comb

from checks.base import BaseCheck, CaseOutcome, CheckContext, Params, element_outcome, random_word, seeded_random
from checks.registry import register_check
from qmatrices.algebra import (
    alg_specialize,
    bidegree_drift,
    bidegree_profile,
    normal_monomials,
    reduce_element,
    reduce_word,
    reduce_word_at,
    relation_table,
    word_bidegree,
)
from qmatrices.coefficients import ONE

MAX_WORD_LENGTH = 6
SPECIALIZATION_POINTS = ("2", "-1/3")


class RelationsCheck(BaseCheck):
    """Every ordered generator pair reduces to the entry of the explicit relation table."""

    NAME = "relations"

    def cases(self, ctx: CheckContext) -> list[Params]:
        return [{"n": ctx.n}]

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n = params["n"]
        residuals = [reduce_element(word, n) - expected for word, expected in relation_table(n).items()]
        return element_outcome(residuals)


class PbwCheck(BaseCheck):
    """Normal-monomial counts, fixed points, confluence and specialization."""

    NAME = "pbw"

    def cases(self, ctx: CheckContext) -> list[Params]:
        out: list[Params] = [{"n": ctx.n, "degree": d} for d in range(1, 4)]
        out.append({"n": ctx.n, "variant": "confluence", "samples": ctx.samples, "seed": ctx.seed})
        out.append({"n": ctx.n, "variant": "bidegree", "samples": ctx.samples, "seed": ctx.seed})
        for point in SPECIALIZATION_POINTS:
            out.append({"n": ctx.n, "variant": "specialize", "qvalue": point, "samples": ctx.samples, "seed": ctx.seed})
        return out

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        variant = params.get("variant", "count")
        if variant == "count":
            return self._count(params["n"], params["degree"])
        if variant == "confluence":
            return self._confluence(params["n"], params["samples"], params["seed"])
        if variant == "bidegree":
            return self._bidegree(params["n"], params["samples"], params["seed"])
        if variant == "specialize":
            return self._specialize(params["n"], Fraction(params["qvalue"]), params["samples"], params["seed"])
        raise ValueError(f"unknown pbw variant {variant!r}")

    def _count(self, n: int, degree: int) -> CaseOutcome:
        monomials = normal_monomials(n, degree)
        mismatched = abs(len(monomials) - comb(n * n + degree - 1, degree))
        not_fixed = sum(1 for word in monomials if reduce_word(word, n) != {word: ONE})
        detail = f"{len(monomials)} normal monomials" if not (mismatched or not_fixed) else (
            f"count off by {mismatched}, {not_fixed} monomials not fixed by reduction"
        )
        return CaseOutcome(residual_terms=mismatched + not_fixed, detail=detail)

    def _confluence(self, n: int, samples: int, seed: int) -> CaseOutcome:
        rng = seeded_random(seed, "confluence", n)
        residuals = []
        for _ in range(samples):
            word = random_word(rng, n, MAX_WORD_LENGTH)
            residuals.append(reduce_element(word, n, "leftmost") - reduce_element(word, n, "rightmost"))
        return element_outcome(residuals)

    def _bidegree(self, n: int, samples: int, seed: int) -> CaseOutcome:
        # row and column multisets survive every rewrite, under both strategies
        rng = seeded_random(seed, "bidegree", n)
        words = list(relation_table(n)) + [random_word(rng, n, MAX_WORD_LENGTH) for _ in range(samples)]
        drift = 0
        first_bad = ""
        for word in words:
            for strategy in ("leftmost", "rightmost"):
                found = bidegree_drift(word, n, strategy)
                if found and not first_bad:
                    profile = sorted(bidegree_profile(reduce_element(word, n, strategy)))
                    first_bad = f"{strategy} {word_bidegree(tuple(word))} -> {profile}"
                drift += found
        return CaseOutcome(residual_terms=drift, detail=first_bad)

    def _specialize(self, n: int, qvalue: Fraction, samples: int, seed: int) -> CaseOutcome:
        rng = seeded_random(seed, "specialize", n, qvalue)
        mismatched = 0
        for _ in range(samples):
            word = random_word(rng, n, MAX_WORD_LENGTH)
            direct = reduce_word_at(word, n, qvalue).as_dict()
            via_symbolic = alg_specialize(reduce_element(word, n), qvalue).as_dict()
            mismatched += sum(1 for w in direct.keys() | via_symbolic.keys() if direct.get(w, 0) != via_symbolic.get(w, 0))
        return CaseOutcome(residual_terms=mismatched)


register_check(RelationsCheck())
register_check(PbwCheck())
