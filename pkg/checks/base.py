from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Iterable

from qmatrices.algebra import AlgebraElement, GeneratorIndex
from qmatrices.identities import conservation_violations, element_conservation_violations
from qmatrices.logging_utils import truncate
from qmatrices.models import RunConfig
from qmatrices.poisson import CPoly
from qmatrices.qmatrix import QMatrix

Params = dict[str, Any]


@dataclass(frozen=True)
class CheckContext:
    n: int
    max_power: int
    seed: int
    samples: int
    budget_ms: int
    stretch_budget_ms: int

    @classmethod
    def from_config(cls, config: RunConfig, *, stretch_budget_ms: int = 600000) -> "CheckContext":
        return cls(
            n=config.n,
            max_power=config.effective_max_power,
            seed=config.seed,
            samples=config.samples,
            budget_ms=config.budget_ms,
            stretch_budget_ms=stretch_budget_ms,
        )


@dataclass(frozen=True)
class CaseOutcome:
    residual_terms: int
    conserved: bool = True
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.residual_terms == 0 and self.conserved


class CheckError(RuntimeError):
    pass


class BaseCheck:
    NAME: str = "base"
    # Selected by `all`; non-gating checks run only when named explicitly.
    GATING: bool = True

    def cases(self, ctx: CheckContext) -> list[Params]:
        raise NotImplementedError

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        raise NotImplementedError

    def budget_ms(self, ctx: CheckContext) -> int:
        return ctx.budget_ms


def _residual_detail(texts: list[str]) -> str:
    return truncate("; ".join(texts)) if texts else ""


def element_outcome(
    residuals: AlgebraElement | Iterable[AlgebraElement],
    *,
    witnesses: Iterable[AlgebraElement] = (),
) -> CaseOutcome:
    """Sum residual sizes; witnesses must have zero row-minus-column balance."""
    items = [residuals] if isinstance(residuals, AlgebraElement) else list(residuals)
    terms = sum(len(r) for r in items)
    violations = sum(element_conservation_violations(r) for r in items)
    violations += sum(element_conservation_violations(w) for w in witnesses)
    detail = _residual_detail([r.to_text() for r in items if r])
    if violations:
        detail = (detail + "; " if detail else "") + f"{violations} conservation violations"
    return CaseOutcome(residual_terms=terms, conserved=violations == 0, detail=detail)


def matrix_outcome(residual: QMatrix, *, witnesses: Iterable[QMatrix] = ()) -> CaseOutcome:
    """Residual matrix size; witness entries (i,j) must have balance e_i - e_j."""
    violations = conservation_violations(residual) + sum(conservation_violations(w) for w in witnesses)
    texts = [f"[{i},{j}] {value.to_text()}" for i, j, value in residual.entries() if value]
    detail = _residual_detail(texts)
    if violations:
        detail = (detail + "; " if detail else "") + f"{violations} conservation violations"
    return CaseOutcome(residual_terms=residual.term_count(), conserved=violations == 0, detail=detail)


def cpoly_outcome(residuals: CPoly | Iterable[CPoly]) -> CaseOutcome:
    items = [residuals] if isinstance(residuals, CPoly) else list(residuals)
    return CaseOutcome(
        residual_terms=sum(len(r) for r in items),
        detail=_residual_detail([r.to_text() for r in items if r]),
    )


def seeded_random(seed: int, *salt: object) -> random.Random:
    """Deterministic generator per (seed, case)."""
    return random.Random(":".join([str(seed), *map(str, salt)]))


def random_word(rng: random.Random, n: int, max_len: int) -> tuple[GeneratorIndex, ...]:
    length = rng.randint(1, max_len)
    return tuple(GeneratorIndex(rng.randint(1, n), rng.randint(1, n)) for _ in range(length))
