from __future__ import annotations

from checks.base import BaseCheck, CaseOutcome, CheckContext, Params, element_outcome
from checks.registry import register_check
from qmatrices.identities import basis_residual, newton_residual, power_trace, sigma_recovery_residual
from qmatrices.minors import sigma


class NewtonCheck(BaseCheck):
    """Newton's formulae between the traces t_k and the sigma_k, and their inversion."""

    NAME = "newton"

    def cases(self, ctx: CheckContext) -> list[Params]:
        out: list[Params] = [{"n": ctx.n, "k": k} for k in range(1, max(2 * ctx.n, ctx.max_power) + 1)]
        out.append({"n": ctx.n, "inversion": True})
        return out

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n = params["n"]
        if params.get("inversion"):
            return element_outcome(sigma_recovery_residual(n), witnesses=[sigma(k, n) for k in range(1, n + 1)])
        k = params["k"]
        return element_outcome(newton_residual(n, k), witnesses=[power_trace(n, k)])


class TBasisCheck(BaseCheck):
    """t_k rewritten in t_1..t_n, in sigma_1..sigma_n and in t_1..t_(n-1), sigma_n, evaluated in the algebra."""

    NAME = "t_basis"

    def cases(self, ctx: CheckContext) -> list[Params]:
        n, top = ctx.n, ctx.max_power
        out: list[Params] = [{"n": n, "k": k, "basis": "t"} for k in range(n + 1, top + 1)]
        out += [{"n": n, "k": k, "basis": "sigma"} for k in range(1, top + 1)]
        out += [{"n": n, "k": k, "basis": "mixed"} for k in range(n, top + 1)]
        return out

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        return element_outcome(basis_residual(params["n"], params["k"], params["basis"]))


register_check(NewtonCheck())
register_check(TBasisCheck())
