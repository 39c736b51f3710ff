from __future__ import annotations

from checks.base import BaseCheck, CaseOutcome, CheckContext, Params, element_outcome, matrix_outcome
from checks.registry import register_check
from qmatrices.identities import newton_residual, z_recursive

STRETCH_N = 4


class StretchCheck(BaseCheck):
    """n = 4: Cayley-Hamilton at k = 4 and Newton for k <= 4, under the stretch budget."""

    NAME = "stretch"
    GATING = False

    def cases(self, ctx: CheckContext) -> list[Params]:
        out: list[Params] = [{"n": STRETCH_N, "target": "newton", "k": k} for k in range(1, STRETCH_N + 1)]
        out.append({"n": STRETCH_N, "target": "cayley_hamilton", "k": STRETCH_N})
        return out

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n, k = params["n"], params["k"]
        if params["target"] == "cayley_hamilton":
            return matrix_outcome(z_recursive(n, k))
        if params["target"] == "newton":
            return element_outcome(newton_residual(n, k))
        raise ValueError(f"unknown stretch target {params['target']!r}")

    def budget_ms(self, ctx: CheckContext) -> int:
        return ctx.stretch_budget_ms


register_check(StretchCheck())
