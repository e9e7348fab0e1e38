#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
逐步上升 (SU) 与逐步下降 (SD) 拒绝引擎

比较一律是非严格的 p ⩽ α，不加 epsilon。
次序统计量用稳定排序得到，并列的 p 值按原下标升序排列。
"""

from typing import Optional

import numpy as np

from core.types import CriticalValues, HypothesisPartition, TestOutcome, as_pvalues
from utils.errors import LengthMismatchError


def _passing(p, crit):
    if p.m != crit.m:
        raise LengthMismatchError("p 值与临界值长度不一致", {"m": p.m, "crit_m": crit.m})
    order = p.order()
    return order, p.values[order] <= crit.alphas


def step_up(p, crit: CriticalValues, partition: Optional[HypothesisPartition] = None) -> TestOutcome:
    """R = max{j : p_{j:m} ⩽ α_j}，拒绝所有 p_i ⩽ α_R 的假设"""
    p = as_pvalues(p)
    _, passed = _passing(p, crit)
    hits = np.flatnonzero(passed)
    R = int(hits[-1]) + 1 if hits.size else 0
    if R == 0:
        rejected = np.zeros(p.m, dtype=bool)
    else:
        rejected = p.values <= crit.at(R)
    return TestOutcome.from_rejections(rejected, partition)


def step_down(p, crit: CriticalValues, partition: Optional[HypothesisPartition] = None) -> TestOutcome:
    """R = max{j : 对所有 i ⩽ j 有 p_{i:m} ⩽ α_i}，拒绝最小的 R 个 p 值

    边界处并列时按原下标升序拒绝，直到凑满 R 个。
    """
    p = as_pvalues(p)
    order, passed = _passing(p, crit)
    failures = np.flatnonzero(~passed)
    R = int(failures[0]) if failures.size else p.m
    rejected = np.zeros(p.m, dtype=bool)
    rejected[order[:R]] = True
    return TestOutcome.from_rejections(rejected, partition)


STEP_UP = "step-up"
STEP_DOWN = "step-down"

ENGINES = {
    STEP_UP: step_up,
    STEP_DOWN: step_down,
}
