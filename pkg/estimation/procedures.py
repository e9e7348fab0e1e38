#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
检验程序规格 - (SU/SD, 临界值族) 的可序列化描述
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from core.critical_values import (
    bh_critical_values,
    bonferroni_critical_values,
    by_critical_values,
    modified_sd_critical_values,
    tie_adjust,
)
from core.procedures import ENGINES, STEP_DOWN, STEP_UP
from core.types import CriticalValues, HypothesisPartition, PValueVector, TestOutcome, as_pvalues
from utils.errors import ConfigError, LengthMismatchError, UnknownVariantError

# 族名 -> (基础临界值构造, 是否并列调整)
FAMILIES = {
    "bh": (bh_critical_values, False),
    "by": (by_critical_values, False),
    "bonferroni": (bonferroni_critical_values, False),
    "modified_c": (modified_sd_critical_values, False),
    "tie_adjusted_bh": (bh_critical_values, True),
    "tie_adjusted_c": (modified_sd_critical_values, True),
    "explicit": (None, False),
}

_SHORT_KIND = {STEP_UP: "SU", STEP_DOWN: "SD"}


@dataclass(frozen=True)
class ProcedureSpec:
    """检验程序：kind 为 step-up / step-down，family 为临界值族"""

    kind: str
    family: str
    alpha: Optional[float] = None
    values: Tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in ENGINES:
            raise UnknownVariantError(f"未知的检验类型: {self.kind}", {"allowed": list(ENGINES)})
        if self.family not in FAMILIES:
            raise UnknownVariantError(f"未知的临界值族: {self.family}", {"allowed": list(FAMILIES)})
        if self.family == "explicit":
            values = tuple(float(v) for v in self.values)
            CriticalValues(values)
            object.__setattr__(self, "values", values)
        elif self.alpha is None:
            raise ConfigError(f"临界值族 {self.family} 需要 alpha")

    @classmethod
    def explicit(cls, kind: str, values) -> "ProcedureSpec":
        return cls(kind, "explicit", None, tuple(values))

    @classmethod
    def from_dict(cls, data: dict) -> "ProcedureSpec":
        if not isinstance(data, dict):
            raise ConfigError("检验程序规格必须是对象", {"procedure": data})
        crit = data.get("critical_values", {})
        family = crit.get("family", data.get("family"))
        if family is None:
            raise ConfigError("检验程序规格缺少临界值族", {"procedure": data})
        alpha = crit.get("alpha", data.get("alpha"))
        return cls(data.get("kind", STEP_UP), family,
                   None if alpha is None else float(alpha),
                   tuple(crit.get("values", data.get("values", ()))))

    @property
    def tie_adjusted(self) -> bool:
        return FAMILIES[self.family][1]

    @property
    def procedure_id(self) -> str:
        if self.family == "explicit":
            label = "explicit(" + ",".join(f"{v:g}" for v in self.values) + ")"
        else:
            label = f"{self.family}({self.alpha:g})"
        return f"{_SHORT_KIND[self.kind]}-{label}"

    def base_values(self, m: int) -> CriticalValues:
        """不依赖数据的临界值；并列调整族返回未调整序列"""
        if self.family == "explicit":
            crit = CriticalValues(self.values)
            if crit.m != m:
                raise LengthMismatchError("显式临界值长度与 m 不一致", {"m": m, "crit_m": crit.m})
            return crit
        builder = FAMILIES[self.family][0]
        return builder(m, self.alpha)

    def critical_values(self, p) -> CriticalValues:
        p = as_pvalues(p)
        base = self.base_values(p.m)
        return tie_adjust(p, base) if self.tie_adjusted else base

    def bind(self, m: int) -> "BoundProcedure":
        return BoundProcedure(self, m, self.base_values(m))

    def apply(self, p, partition: Optional[HypothesisPartition] = None) -> TestOutcome:
        p = as_pvalues(p)
        return self.bind(p.m).apply(p, partition)

    def to_dict(self) -> dict:
        crit = {"family": self.family}
        if self.family == "explicit":
            crit["values"] = list(self.values)
        else:
            crit["alpha"] = self.alpha
        return {"kind": self.kind, "critical_values": crit}


class BoundProcedure:
    """绑定到固定 m 的检验程序，不依赖数据的临界值只算一次"""

    def __init__(self, spec: ProcedureSpec, m: int, base: CriticalValues):
        self.spec = spec
        self.m = m
        self.base = base
        self.engine = ENGINES[spec.kind]

    def apply(self, p: PValueVector, partition: Optional[HypothesisPartition] = None) -> TestOutcome:
        crit = tie_adjust(p, self.base) if self.spec.tie_adjusted else self.base
        return self.engine(p, crit, partition)
