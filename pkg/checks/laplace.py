from __future__ import annotations

from checks.base import BaseCheck, CaseOutcome, CheckContext, Params
from checks.registry import register_check
from qmatrices.identities import element_conservation_violations
from qmatrices.logging_utils import truncate
from qmatrices.minors import laplace_residual, qminor_or_unit, subsets


class LaplaceCheck(BaseCheck):
    """Row expansion of quantum minors over every admissible (K, L, i, r) of one size."""

    NAME = "laplace"

    def cases(self, ctx: CheckContext) -> list[Params]:
        return [{"n": ctx.n, "size": size} for size in range(1, ctx.n + 1)]

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n, size = params["n"], params["size"]
        terms = 0
        violations = 0
        failures: list[str] = []
        for rows in subsets(n, size):
            for cols in subsets(n, size):
                expected = [0] * n
                for a in rows:
                    expected[a - 1] += 1
                for b in cols:
                    expected[b - 1] -= 1
                violations += element_conservation_violations(qminor_or_unit(rows, cols, n), expected)
                for i in rows:
                    for r in rows:
                        residual = laplace_residual(rows, cols, i, r, n)
                        if residual:
                            terms += len(residual)
                            failures.append(f"K={rows.to_text()} L={cols.to_text()} i={i} r={r}")
        detail = truncate(", ".join(failures))
        if violations:
            detail = (detail + "; " if detail else "") + f"{violations} conservation violations"
        return CaseOutcome(residual_terms=terms, conserved=violations == 0, detail=detail)


register_check(LaplaceCheck())
