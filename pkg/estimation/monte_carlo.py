#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
蒙特卡洛 FDR/FWER 估计器

第 r 次重复使用子流 seed.replicate(r)，结果按重复下标写入数组后再归约，
因此与进程数、执行顺序无关，逐位可复现。多进程时各块只传 (model, proc, seed, 区间)，
子流在子进程内按下标重建。
"""

import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

import numpy as np

from config import RUNTIME_CONFIG
from core.metrics import false_discovery_proportion
from estimation.procedures import ProcedureSpec
from estimation.report import EstimateReport, ReplicateTrace
from models.specs import ModelSpec
from models.types import RandomSeed
from utils.errors import ParameterConstraintError
from utils.logger import logger_manager


def _chunks(n_reps, workers):
    edges = np.linspace(0, n_reps, workers + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _run_chunk(model: ModelSpec, proc: ProcedureSpec, seed: RandomSeed, start: int, stop: int):
    """在 [start, stop) 上逐次重复，返回 (fdp, R, V) 三个数组"""
    bound = proc.bind(model.m)
    size = stop - start
    fdp = np.empty(size)
    rejections = np.empty(size, dtype=np.int64)
    false_rejections = np.empty(size, dtype=np.int64)
    for i, r in enumerate(range(start, stop)):
        sample = model.sample(seed.replicate(r))
        outcome = bound.apply(sample.pvalues, sample.partition)
        rejections[i] = outcome.R
        false_rejections[i] = outcome.V
        fdp[i] = false_discovery_proportion(outcome, sample.partition)
    return fdp, rejections, false_rejections


def monte_carlo(model: ModelSpec, proc: ProcedureSpec, n_reps: int, seed: RandomSeed,
                workers: Optional[int] = None, keep_replicates: bool = False) -> EstimateReport:
    """对 n_reps 次独立重复的 FDP 与 1{V>0} 求平均"""
    n_reps = int(n_reps)
    if n_reps < 1:
        raise ParameterConstraintError("n_reps 必须 ⩾ 1", {"n_reps": n_reps})
    max_workers = math.ceil(n_reps / RUNTIME_CONFIG["min_chunk_reps"])
    workers = max(1, min(workers or RUNTIME_CONFIG["threads"], max_workers))
    # 临界值长度在父进程中先校验
    proc.bind(model.m)

    start_time = time.perf_counter()
    if workers == 1:
        fdp, rejections, false_rejections = _run_chunk(model, proc, seed, 0, n_reps)
    else:
        chunks = _chunks(n_reps, workers)
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            futures = [pool.submit(_run_chunk, model, proc, seed, a, b) for a, b in chunks]
            parts = [future.result() for future in futures]
        fdp, rejections, false_rejections = (np.concatenate(column) for column in zip(*parts))
    elapsed = time.perf_counter() - start_time

    std_error = float(np.std(fdp, ddof=1)) / math.sqrt(n_reps) if n_reps > 1 else 0.0
    report = EstimateReport(
        fdr_hat=float(np.mean(fdp)),
        fwer_hat=float(np.mean((false_rejections > 0).astype(float))),
        mean_R=float(np.mean(rejections)),
        mean_V=float(np.mean(false_rejections)),
        std_error_fdr=std_error,
        n_reps=n_reps,
        seed=seed,
        procedure_id=proc.procedure_id,
        model_id=model.model_id,
        m=model.m,
        m0=model.m0,
        wall_time_ms=elapsed * 1000.0,
        trace=ReplicateTrace(fdp, rejections, false_rejections) if keep_replicates else None,
    )

    logger_manager.log_estimate(report)
    logger_manager.log_performance(f"蒙特卡洛 {proc.procedure_id} @ {model.model_id}", n_reps, elapsed, workers)
    return report
