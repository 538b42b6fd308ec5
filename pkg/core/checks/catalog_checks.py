from typing import Any, Dict

from core.catalog import check_record, lookup
from core.checks.base_check import BaseCheck
from core.poset import VarietyContext


class CatalogCheck(BaseCheck):
    name = "catalog"
    description = "catalog record exists and agrees with the computed dimensions"

    async def execute(self, ctx: VarietyContext) -> Dict[str, Any]:
        record = lookup(ctx.datum.dynkin_type, ctx.datum.rank, ctx.variant)
        mismatches = check_record(record, ctx)
        self.require(not mismatches, "; ".join(mismatches))
        if record.jordan_rank is not None:
            self.require(record.h1_Y_TY == max(0, record.jordan_rank - 3), "h1(Y, T_Y) != max(0, rk - 3)")
        return {"X": record.X_name, "aut0_Y": record.aut0_Y_name}
