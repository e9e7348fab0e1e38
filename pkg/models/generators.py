#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
p 值模型生成器 - 独立 (BI) 模型与对抗依赖构造

每个生成器都是 (参数, RandomSeed) 的纯函数，不使用全局随机状态。
抽样顺序固定，因此同一种子下不同变体共享底层均匀数（公共随机数）。
"""

import numpy as np

from core.types import HypothesisPartition, PValueVector
from models.types import CopulaSpec, FalseNullSpec, LabeledSample, RandomSeed
from utils.errors import EmptyProblemError, ParameterConstraintError, UnknownVariantError


def sample_bi_uniform(m0: int, false_spec: FalseNullSpec, seed: RandomSeed,
                      null_shift: float = 0.0, interleave: bool = True) -> LabeledSample:
    """BI 模型：m₀ 个独立真零 p 值加一个独立的假零块

    真零 p 值为 β + (1−β)U，β = null_shift；β = 0 时即均匀真零，β > 0 时随机大于均匀分布。
    interleave 为真时用种子化的随机置换打乱位置，I₀ 随之映射。
    """
    m0 = int(m0)
    if m0 < 0:
        raise ParameterConstraintError("m0 必须非负", {"m0": m0})
    if not 0.0 <= null_shift <= 1.0:
        raise ParameterConstraintError("null_shift 必须位于 [0,1] 内", {"null_shift": null_shift})
    m = m0 + false_spec.m1
    if m < 1:
        raise EmptyProblemError("检验问题为空：m = 0")

    rng = seed.generator()
    nulls = null_shift + (1.0 - null_shift) * rng.random(m0)
    values = np.concatenate([nulls, false_spec.draw(rng)])

    if interleave:
        positions = rng.permutation(m)
        shuffled = np.empty(m)
        shuffled[positions] = values
        true_nulls = positions[:m0]
    else:
        shuffled = values
        true_nulls = np.arange(m0)

    return LabeledSample(PValueVector(shuffled), HypothesisPartition.from_indices(m, true_nulls.tolist()))


def sample_bonferroni_sharp(m: int, copula: CopulaSpec, seed: RandomSeed) -> LabeledSample:
    """Bonferroni 锐性构造：p_i = U′_{σ(i)}，U′_i = (i−1+U_i)/m

    (U_1..U_m) 取自 copula，σ 为独立的均匀随机置换；每个区块 ((i−1)/m, i/m) 恰有一个 p 值。
    """
    m = int(m)
    if m < 1:
        raise EmptyProblemError("检验问题为空：m = 0")
    copula.validate(m)
    rng = seed.generator()
    uniforms = copula.draw(m, rng)
    shifted = (np.arange(m) + uniforms) / m
    sigma = rng.permutation(m)
    return LabeledSample(PValueVector(shifted[sigma]), HypothesisPartition.all_null(m))


def validate_m2_su_sharp(alpha1: float, alpha2: float):
    if not (0.0 < alpha1 < alpha2 < 1.0 and alpha1 + alpha2 < 1.0):
        raise ParameterConstraintError("需要 0 < α₁ < α₂ < 1 且 α₁ + α₂ < 1",
                                       {"alpha1": alpha1, "alpha2": alpha2})


def m2_su_sharp_conditional(x: float, w: float, alpha1: float, alpha2: float) -> float:
    """给定 p₁ = x，用一个均匀数 w ∈ [0,1) 抽取 p₂

    x ⩽ α₁：p₂ ~ U(1−α₁, 1]；α₁ < x ⩽ α₂：p₂ ~ U(α₁, α₂]；
    否则 p₂ ~ U((0, α₁] ∪ (α₂, 1−α₁])，两段权重与长度成比例。
    """
    if x <= alpha1:
        return 1.0 - alpha1 * w
    if x <= alpha2:
        return alpha2 - (alpha2 - alpha1) * w
    v = (1.0 - alpha2) * (1.0 - w)
    return v if v <= alpha1 else alpha2 + (v - alpha1)


def sample_m2_su_sharp(alpha1: float, alpha2: float, seed: RandomSeed) -> LabeledSample:
    """m = 2 时使 SU 检验 FDR = α₁ + α₂ 的联合分布，两个边际都均匀"""
    validate_m2_su_sharp(alpha1, alpha2)
    rng = seed.generator()
    p1, w = rng.random(2)
    p2 = m2_su_sharp_conditional(p1, w, alpha1, alpha2)
    return LabeledSample(PValueVector([p1, p2]), HypothesisPartition.all_null(2))


NONMONOTONE_VARIANTS = ("zero", "alphaU", "U", "shifted")


def nonmonotone_p2(variant: str, u: float, alpha: float) -> float:
    """p₂ ∈ {0, αU, U, (1−α)U+α}，对同一 U 依次不减"""
    if variant == "zero":
        return 0.0
    if variant == "alphaU":
        return alpha * u
    if variant == "U":
        return u
    if variant == "shifted":
        return (1.0 - alpha) * u + alpha
    raise UnknownVariantError(f"未知的变体: {variant}", {"allowed": list(NONMONOTONE_VARIANTS)})


def draw_nonmonotone_base(seed: RandomSeed):
    """(p₁, U)：四个变体共用的底层均匀数"""
    p1, u = seed.generator().random(2)
    return float(p1), float(u)


def sample_nonmonotone_sd(variant: str, alpha: float, seed: RandomSeed) -> LabeledSample:
    """SD 检验 FDR 不单调的反例：p₁ 为真零，p₂ 按变体取值，I₀ = {1}"""
    if variant not in NONMONOTONE_VARIANTS:
        raise UnknownVariantError(f"未知的变体: {variant}", {"allowed": list(NONMONOTONE_VARIANTS)})
    if not 0.0 < alpha < 1.0:
        raise ParameterConstraintError("alpha 必须位于 (0,1) 内", {"alpha": alpha})
    p1, u = draw_nonmonotone_base(seed)
    p2 = nonmonotone_p2(variant, u, alpha)
    return LabeledSample(PValueVector([p1, p2]), HypothesisPartition.from_indices(2, [0]))
