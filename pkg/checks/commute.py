from __future__ import annotations

from checks.base import BaseCheck, CaseOutcome, CheckContext, Params, element_outcome
from checks.registry import register_check
from qmatrices.identities import (
    commutator_residual,
    power_trace,
    sigma_commutator_residual,
    sigma_trace_commutator_residual,
)
from qmatrices.minors import sigma


class CommuteCheck(BaseCheck):
    """[t_k, t_m] = 0 for every pair up to max_power."""

    NAME = "commute"

    def cases(self, ctx: CheckContext) -> list[Params]:
        top = ctx.max_power
        return [{"n": ctx.n, "k": k, "m": m} for k in range(1, top + 1) for m in range(1, top + 1)]

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n, k, m = params["n"], params["k"], params["m"]
        return element_outcome(commutator_residual(n, k, m), witnesses=[power_trace(n, k), power_trace(n, m)])


class SigmaCommuteCheck(BaseCheck):
    NAME = "sigma_commute"

    def cases(self, ctx: CheckContext) -> list[Params]:
        return [{"n": ctx.n, "i": i, "j": j} for i in range(1, ctx.n + 1) for j in range(1, ctx.n + 1)]

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n, i, j = params["n"], params["i"], params["j"]
        return element_outcome(sigma_commutator_residual(n, i, j), witnesses=[sigma(i, n), sigma(j, n)])


class MixedCommuteCheck(BaseCheck):
    """[sigma_j, t_k] = 0, so products of sigmas and traces do not depend on factor order."""

    NAME = "mixed_commute"

    def cases(self, ctx: CheckContext) -> list[Params]:
        return [{"n": ctx.n, "j": j, "k": k} for j in range(1, ctx.n + 1) for k in range(1, ctx.max_power + 1)]

    def run_case(self, params: Params, ctx: CheckContext) -> CaseOutcome:
        n, j, k = params["n"], params["j"], params["k"]
        return element_outcome(sigma_trace_commutator_residual(n, j, k), witnesses=[sigma(j, n), power_trace(n, k)])


register_check(CommuteCheck())
register_check(SigmaCommuteCheck())
register_check(MixedCommuteCheck())
