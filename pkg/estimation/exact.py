#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
m = 2 模型的精确 FDR 积分

对 p₁ 的参数 u 用 grid_n 个单元的中点法离散；在每个单元内，p₂ 的条件分布
按临界值与 p₁ 切成若干段，每段上拒绝模式不变，因此对 p₂ 的积分是精确的。
误差为 O(1/grid_n)，与检验程序无关。
"""

import numpy as np

from config import DEFAULTS, NUMERIC_CONFIG
from core.metrics import false_discovery_proportion
from core.types import HypothesisPartition, PValueVector
from estimation.procedures import ProcedureSpec
from models.specs import ModelSpec
from utils.errors import ParameterConstraintError, UnsupportedModelError
from utils.logger import logger_manager


def _fdp_at(bound, partition, p1, p2):
    outcome = bound.apply(PValueVector([p1, p2]), partition)
    return false_discovery_proportion(outcome, partition)


def _cell_fdr(bound, partition, law, cuts):
    total = 0.0
    for piece in law.pieces:
        if piece.is_atom:
            total += piece.weight * _fdp_at(bound, partition, law.p1, piece.lo)
            continue
        inner = {c for c in cuts | {law.p1} if piece.lo < c < piece.hi}
        points = sorted({piece.lo, piece.hi} | inner)
        width = piece.hi - piece.lo
        for a, b in zip(points[:-1], points[1:]):
            total += piece.weight * (b - a) / width * _fdp_at(bound, partition, law.p1, 0.5 * (a + b))
    return total


def exact_fdr_m2_grid(model: ModelSpec, proc: ProcedureSpec, grid_n: int = DEFAULTS["grid_n"]) -> float:
    """用确定性数值积分计算 m = 2 模型的 FDR"""
    grid_n = int(grid_n)
    if grid_n < NUMERIC_CONFIG["min_grid_n"]:
        raise ParameterConstraintError("grid_n 过小", {"grid_n": grid_n, "min": NUMERIC_CONFIG["min_grid_n"]})
    if model.m != 2:
        raise UnsupportedModelError(f"模型 {model.model_id} 不是 m=2 模型")
    if model.m0 == 0:
        return 0.0

    bound = proc.bind(2)
    cuts = set(bound.base.tolist())

    first = model.m2_law(0.5 / grid_n)
    partition = HypothesisPartition.from_indices(2, [i for i, flag in enumerate(first.null_mask) if flag])

    cells = np.empty(grid_n)
    for k in range(grid_n):
        law = model.m2_law((k + 0.5) / grid_n)
        cells[k] = _cell_fdr(bound, partition, law, cuts)
    value = float(np.mean(cells))

    logger_manager.log_oracle(model.model_id, proc.procedure_id, value, grid_n)
    return value
