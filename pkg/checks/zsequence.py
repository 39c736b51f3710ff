from __future__ import annotations

from checks.base import BaseCheck, CaseOutcome, CheckContext, Params, element_outcome, matrix_outcome
from checks.registry import register_check
from qmatrices.identities import (
    final_step_residual,
    power_trace,
    trace_z_expansion_residual,
    trace_z_residual,
    z_closed_form_matrix,
    z_diagonal_residual,
    z_recursive,
    z_via_eq4,
)
from qmatrices.minors import sigma


class Lemma1Check(BaseCheck):
    """Z_k from the recursion equals the principal-minor closed form for k < n."""

    NAME = "lemma1"

    def cases(self, ctx: CheckContext) -> list[Params]:
        out: list[Params] = []
        for k in range(ctx.n):
            out.append({"n": ctx.n, "k": k})
            out.append({"n": ctx.n, "k": k, "variant": "diagonal"})
        return out

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n, k = params["n"], params["k"]
        z = z_recursive(n, k)
        if params.get("variant") == "diagonal":
            return matrix_outcome(z_diagonal_residual(n, k), witnesses=[z])
        return matrix_outcome(z - z_closed_form_matrix(n, k), witnesses=[z])


class CayleyHamiltonCheck(BaseCheck):
    """Z_k vanishes for k >= n, including the last step X*Z_(n-1) = (-1)^(n-1) I sigma_n."""

    NAME = "ch"

    def cases(self, ctx: CheckContext) -> list[Params]:
        out: list[Params] = [{"n": ctx.n, "k": k} for k in range(ctx.n, max(ctx.n, ctx.max_power) + 1)]
        out.append({"n": ctx.n, "final_step": True})
        return out

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n = params["n"]
        if params.get("final_step"):
            return matrix_outcome(final_step_residual(n), witnesses=[z_recursive(n, n - 1)])
        return matrix_outcome(z_recursive(n, params["k"]))


class Eq4Check(BaseCheck):
    """Z_k as the alternating sum of quantum powers times sigma_j from the right."""

    NAME = "eq4"

    def cases(self, ctx: CheckContext) -> list[Params]:
        return [{"n": ctx.n, "k": k} for k in range(ctx.max_power + 1)]

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n, k = params["n"], params["k"]
        expanded = z_via_eq4(n, k)
        return matrix_outcome(expanded - z_recursive(n, k), witnesses=[expanded])


class TraceZCheck(BaseCheck):
    """Both trace identities for Z_k: the sigma form and the t/sigma expansion."""

    NAME = "trace_z"

    def cases(self, ctx: CheckContext) -> list[Params]:
        return [{"n": ctx.n, "k": k} for k in range(ctx.max_power + 1)]

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n, k = params["n"], params["k"]
        return element_outcome(
            [trace_z_residual(n, k), trace_z_expansion_residual(n, k)],
            witnesses=[power_trace(n, k), sigma(k, n)],
        )


register_check(Lemma1Check())
register_check(CayleyHamiltonCheck())
register_check(Eq4Check())
register_check(TraceZCheck())
