#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
蒙特卡洛估计报告
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from models.types import RandomSeed


@dataclass(frozen=True, eq=False)
class ReplicateTrace:
    """逐次重复的 FDP、R 与 V，按重复下标排列"""

    fdp: np.ndarray
    rejections: np.ndarray
    false_rejections: np.ndarray


@dataclass(frozen=True)
class EstimateReport:
    """FDR/FWER/E[R]/E[V] 的估计值及其元数据

    std_error_fdr 为 FDP 样本标准差除以 √n_reps。
    """

    fdr_hat: float
    fwer_hat: float
    mean_R: float
    mean_V: float
    std_error_fdr: float
    n_reps: int
    seed: RandomSeed
    procedure_id: str
    model_id: str
    m: int
    m0: int
    wall_time_ms: float = field(default=0.0, compare=False)
    trace: Optional[ReplicateTrace] = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "procedure_id": self.procedure_id,
            "model_id": self.model_id,
            "m": self.m,
            "m0": self.m0,
            "n_reps": self.n_reps,
            "seed": self.seed.seed,
            "stream_id": self.seed.stream_id,
            "fdr_hat": self.fdr_hat,
            "fwer_hat": self.fwer_hat,
            "mean_R": self.mean_R,
            "mean_V": self.mean_V,
            "std_error_fdr": self.std_error_fdr,
            "wall_time_ms": self.wall_time_ms,
        }
