#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
临界值族 - BH、BY、Bonferroni、修正 SD 临界值与数据相关的并列调整临界值
"""

from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.optimize import bisect

from config import DEFAULTS, NUMERIC_CONFIG
from core.types import CriticalValues, as_pvalues
from utils.errors import InvalidLevelError, InvalidSizeError, LengthMismatchError, LevelTooLargeError


def _check_size(m):
    if int(m) != m or m < 1:
        raise InvalidSizeError("假设个数 m 必须是正整数", {"m": m})


def _check_level(alpha, name="alpha"):
    if not 0.0 < alpha < 1.0:
        raise InvalidLevelError(f"{name} 必须位于 (0,1) 内", {name: alpha})


def _fractions(m):
    """i/m，i = 1..m；末项恰为 1.0，保证 α_m = α"""
    return np.arange(1, m + 1) / m


def harmonic_number(m: int) -> float:
    """Σ_{k=1}^m 1/k"""
    _check_size(m)
    return float(np.sum(1.0 / np.arange(1, m + 1)))


def bh_critical_values(m: int, alpha: float) -> CriticalValues:
    """BH 线性临界值 b_i = iα/m"""
    _check_size(m)
    _check_level(alpha)
    return CriticalValues(alpha * _fractions(int(m)))


def by_critical_values(m: int, alpha_prime: float) -> CriticalValues:
    """BY 临界值 α_i = iα′ / (m·Σ 1/k)，任意依赖下控制 FDR ⩽ α′"""
    _check_size(m)
    _check_level(alpha_prime, "alpha_prime")
    return CriticalValues(alpha_prime * _fractions(int(m)) / harmonic_number(int(m)))


def bonferroni_critical_values(m: int, alpha: float) -> CriticalValues:
    """常数临界值 α/m"""
    _check_size(m)
    _check_level(alpha)
    return CriticalValues(np.full(int(m), alpha / m))


def alpha0_equation(alpha: float) -> float:
    """f(α) = (1−α) − exp(−2α)，其正根即 α₀"""
    return (1.0 - alpha) - np.exp(-2.0 * alpha)


@lru_cache(maxsize=32)
def solve_alpha0(tolerance: float = DEFAULTS["alpha0_tolerance"]) -> float:
    """在 [0.5, 0.99] 上二分求解 (1−α) = exp(−2α)，α₀ ≈ 0.797"""
    if not tolerance > 0:
        raise InvalidLevelError("容差必须为正", {"tolerance": tolerance})
    lower, upper = DEFAULTS["alpha0_bracket"]
    return float(bisect(alpha0_equation, lower, upper, xtol=tolerance, maxiter=200))


def modified_sd_critical_values(m: int, alpha: float) -> CriticalValues:
    """修正 SD 临界值：c₁ = 1−(1−α)^{1/m}，c_i = iα/m (i ⩾ 2)

    仅当 0 < α ⩽ α₀ 时序列单调不减，且 α/m < c₁ ⩽ 2α/m。
    """
    _check_size(m)
    if not alpha > 0.0:
        raise InvalidLevelError("alpha 必须为正", {"alpha": alpha})
    alpha0 = solve_alpha0(DEFAULTS["alpha0_tolerance"])
    if alpha > alpha0:
        raise LevelTooLargeError("修正临界值要求 alpha ⩽ α₀", {"alpha": alpha, "alpha0": alpha0})
    m = int(m)
    values = alpha * _fractions(m)
    values[0] = -np.expm1(np.log1p(-alpha) / m)
    return CriticalValues(values)


def tie_adjust(p, base: CriticalValues) -> CriticalValues:
    """并列调整：第 i 个位置取 base_{m·F̂_m(p_{i:m})}

    m·F̂_m(p_{i:m}) = #{j : p_j ⩽ p_{i:m}}；没有并列时结果与 base 相同。
    """
    p = as_pvalues(p)
    if p.m != base.m:
        raise LengthMismatchError("p 值与临界值长度不一致", {"m": p.m, "crit_m": base.m})
    ordered = np.sort(p.values, kind="stable")
    counts = np.searchsorted(ordered, ordered, side="right")
    return CriticalValues(base.alphas[counts - 1])


def tie_adjusted_critical_values(p, alpha: float) -> CriticalValues:
    """a_i = b_{m·F̂_m(p_{i:m})}"""
    p = as_pvalues(p)
    return tie_adjust(p, bh_critical_values(p.m, alpha))


def tie_adjusted_modified_critical_values(p, alpha: float) -> CriticalValues:
    """c_{m·F̂_m(p_{i:m})}，修正 SD 临界值的并列调整版本"""
    p = as_pvalues(p)
    return tie_adjust(p, modified_sd_critical_values(p.m, alpha))


class RatioTrend(Enum):
    """i ↦ α_i/i 的单调方向"""

    CONSTANT = "constant"
    NON_DECREASING = "non-decreasing"
    NON_INCREASING = "non-increasing"
    MIXED = "mixed"


def critical_value_ratio_trend(crit: CriticalValues, rtol: float = NUMERIC_CONFIG["ratio_rtol"]) -> RatioTrend:
    """判断 α_i/i 的符号模式，供单调性探针给出预期方向"""
    ratios = crit.ratios()
    steps = np.diff(ratios)
    tol = rtol * float(np.max(np.abs(ratios)))
    up = bool(np.any(steps > tol))
    down = bool(np.any(steps < -tol))
    if up and down:
        return RatioTrend.MIXED
    if up:
        return RatioTrend.NON_DECREASING
    if down:
        return RatioTrend.NON_INCREASING
    return RatioTrend.CONSTANT
