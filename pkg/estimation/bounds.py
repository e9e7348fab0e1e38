#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
解析界与 4·SE 判定规则
"""

from config import DEFAULTS
from core.critical_values import harmonic_number
from core.types import CriticalValues
from utils.errors import UnknownVariantError

UPPER = "upper"
LOWER = "lower"
EQUAL = "equal"


def bh_independence_bound(m0: int, m: int, alpha: float) -> float:
    """BI 模型下 BH 的 FDR ⩽ m₀α/m，均匀真零时取等"""
    return m0 * alpha / m


def dependence_bound(m: int, alpha: float) -> float:
    """任意依赖下 BH 的 FDR ⩽ min(α Σ 1/k, 1)"""
    return min(alpha * harmonic_number(m), 1.0)


def two_hypothesis_bound(alpha1: float, alpha2: float) -> float:
    """m = 2、任意依赖下 SU 检验的 FDR ⩽ min(α₁ + α₂, 1)"""
    return min(alpha1 + alpha2, 1.0)


def modified_sd_bound(m0: int, m: int, alpha: float) -> float:
    """修正 SD 临界值的 FDR ⩽ 1 − (1−α)^{m₀/m} ⩽ α"""
    return 1.0 - (1.0 - alpha) ** (m0 / m)


def ratio_bound(crit: CriticalValues, m0: int) -> float:
    """均匀真零下一般 SU 检验：FDR ⩽ m₀·max_i α_i/i"""
    return min(m0 * float(crit.ratios().max()), 1.0)


def within_slack(estimate: float, bound: float, std_error: float, check: str = UPPER,
                 slack: float = DEFAULTS["se_slack"]) -> bool:
    """按 slack·SE 的容差判断估计是否满足界"""
    margin = slack * std_error + 1e-12
    if check == UPPER:
        return estimate <= bound + margin
    if check == LOWER:
        return estimate >= bound - margin
    if check == EQUAL:
        return abs(estimate - bound) <= margin
    raise UnknownVariantError(f"未知的判定方式: {check}")
