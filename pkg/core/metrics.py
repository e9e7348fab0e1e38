#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
单次实现的误差度量
"""

import numpy as np

from core.types import HypothesisPartition, TestOutcome
from utils.errors import SizeMismatchError


def count_false_rejections(outcome: TestOutcome, partition: HypothesisPartition) -> int:
    """V = #{i ∈ I₀ : 假设 i 被拒绝}"""
    if outcome.m != partition.m:
        raise SizeMismatchError("划分与检验结果的 m 不一致", {"m": outcome.m, "partition_m": partition.m})
    if outcome.V is not None:
        return outcome.V
    return int(np.count_nonzero(outcome.rejected & partition.null_mask()))


def false_discovery_proportion(outcome: TestOutcome, partition: HypothesisPartition) -> float:
    """FDP = V / max(R, 1)；R = 0 时为 0"""
    V = count_false_rejections(outcome, partition)
    return V / max(outcome.R, 1)
