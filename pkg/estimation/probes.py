#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
结构化探针 - m = 2 的事件分解与 FDR 对假零 p 值的单调性
"""

import time
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from core.critical_values import RatioTrend, critical_value_ratio_trend
from core.procedures import STEP_UP
from estimation.monte_carlo import monte_carlo
from estimation.procedures import ProcedureSpec
from estimation.report import EstimateReport
from models.specs import BiUniformModel, ModelSpec
from models.types import FalseNullSpec, RandomSeed
from utils.errors import InvalidLevelsError, ParameterConstraintError, PartitionMismatchError
from utils.logger import logger_manager

EVENT_A1 = "A1"
EVENT_A2 = "A2"
EVENT_C = "C"


class EventDecomposition(NamedTuple):
    """P(A₁), P(A₂), P(C) 的蒙特卡洛估计"""

    p_a1: float
    p_a2: float
    p_c: float

    @property
    def total(self) -> float:
        return self.p_a1 + self.p_a2 + self.p_c


def classify_m2_event(p1: float, p2: float, alpha1: float, alpha2: float) -> Optional[str]:
    """A₁ = {p₁ ⩽ α₁}，A₂ = {p₂ ⩽ α₁ < p₁}，C = {α₁ < p₁, p₂ ⩽ α₂}；三者互不相交"""
    if p1 <= alpha1:
        return EVENT_A1
    if p2 <= alpha1:
        return EVENT_A2
    if p1 <= alpha2 and p2 <= alpha2:
        return EVENT_C
    return None


def event_decomposition_m2(model: ModelSpec, alpha1: float, alpha2: float, n_reps: int,
                           seed: RandomSeed) -> EventDecomposition:
    """两个真零假设时，SU(α₁, α₂) 的 FDR 分解为三个不相交事件的概率之和

    第 r 次重复与 monte_carlo 使用同一子流，因此逐次重复与 FDP 一致。
    """
    if not 0.0 < alpha1 < alpha2 < 1.0:
        raise ParameterConstraintError("要求 0 < α₁ < α₂ < 1", {"alpha1": alpha1, "alpha2": alpha2})
    if model.m != 2 or model.m0 != 2:
        raise PartitionMismatchError(f"模型 {model.model_id} 不满足 m=2 且 I₀={{1,2}}",
                                     {"m": model.m, "m0": model.m0})
    n_reps = int(n_reps)
    if n_reps < 1:
        raise ParameterConstraintError("n_reps 必须 ⩾ 1", {"n_reps": n_reps})

    counts = {EVENT_A1: np.zeros(n_reps), EVENT_A2: np.zeros(n_reps), EVENT_C: np.zeros(n_reps)}
    for r in range(n_reps):
        p1, p2 = model.sample(seed.replicate(r)).pvalues.values
        event = classify_m2_event(float(p1), float(p2), alpha1, alpha2)
        if event is not None:
            counts[event][r] = 1.0

    result = EventDecomposition(*(float(np.mean(counts[name])) for name in (EVENT_A1, EVENT_A2, EVENT_C)))
    logger_manager.log_debug(f"事件分解 {model.model_id}: A1={result.p_a1:.6f} A2={result.p_a2:.6f} "
                             f"C={result.p_c:.6f} 合计={result.total:.6f}")
    return result


def expected_direction(proc: ProcedureSpec, m: int) -> RatioTrend:
    """由 α_i/i 的单调方向推出 FDR 随假零 p 值变化的方向

    α_i/i 非降 → FDR 非增；α_i/i 非增 → FDR 非降；常数 → FDR 不变。
    返回值沿用 RatioTrend，描述的是 FDR 本身的趋势。
    """
    trend = critical_value_ratio_trend(proc.base_values(m))
    if trend == RatioTrend.NON_DECREASING:
        return RatioTrend.NON_INCREASING
    if trend == RatioTrend.NON_INCREASING:
        return RatioTrend.NON_DECREASING
    return trend


def validate_levels(false_levels: Sequence[float]) -> List[float]:
    """假零水平须非空、位于 [0,1] 内且严格递增"""
    try:
        levels = [float(t) for t in false_levels]
    except (TypeError, ValueError):
        raise InvalidLevelsError("假零水平必须是数值列表", {"levels": false_levels})
    if not levels:
        raise InvalidLevelsError("假零水平列表为空")
    if any(t < 0.0 or t > 1.0 for t in levels):
        raise InvalidLevelsError("假零水平必须位于 [0,1] 内", {"levels": levels})
    if any(b <= a for a, b in zip(levels[:-1], levels[1:])):
        raise InvalidLevelsError("假零水平必须严格递增", {"levels": levels})
    return levels


def monotonicity_probe(proc: ProcedureSpec, m0: int, false_levels: Sequence[float], n_reps: int,
                       seed: RandomSeed, workers: Optional[int] = None) -> List[EstimateReport]:
    """m₀ 个均匀真零加一个固定在水平 t 的假零，逐个水平估计 FDR

    各水平共用同一种子，真零 p 值与置换完全相同（公共随机数）。
    """
    levels = validate_levels(false_levels)
    if proc.kind != STEP_UP:
        logger_manager.log_warning(f"单调性结论只对 step-up 检验成立，当前为 {proc.procedure_id}")

    start_time = time.perf_counter()
    reports = [monte_carlo(BiUniformModel(int(m0), FalseNullSpec.dirac([t]), interleave=True),
                           proc, n_reps, seed, workers=workers)
               for t in levels]
    logger_manager.log_performance(f"单调性探针 {proc.procedure_id}", n_reps * len(levels),
                                   time.perf_counter() - start_time, workers or 1)
    return reports
