#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
FDR 多重检验验证实验室配置文件 v1.0.0
"""

import os

# 基础配置
LOG_DIR = os.environ.get("FDRLAB_LOG_DIR", os.path.join(os.getcwd(), "logs"))

# 数值与模拟默认值
DEFAULTS = {
    "n_reps": 100000,  # 蒙特卡洛重复次数：10万
    "grid_n": 10000,  # 精确积分网格数：1万
    "se_slack": 4.0,  # 界检验允许的标准误倍数
    "alpha0_tolerance": 1e-12,  # α₀ 求根容差
    "alpha0_bracket": (0.5, 0.99),  # α₀ 二分区间
    "float_digits": 17,  # 报告浮点有效位数
    "format": "csv",
    "probe_levels": (0.0, 0.3, 0.7, 1.0),  # 单调性探针的假零假设水平
    "null_shift": 0.3,  # 保守零假设 β+(1−β)U 中的 β
}

# 数值容差
NUMERIC_CONFIG = {
    "ratio_rtol": 1e-12,  # 判断 α_i/i 单调方向时的相对容差
    "min_grid_n": 1000,
}

# 报告格式（表头固定，版本化）
REPORT_SCHEMA = {
    "version": "1",
    "columns": [
        "scenario", "m", "m0", "alpha", "procedure", "kind", "n_reps", "seed",
        "fdr_hat", "fwer_hat", "se_fdr", "bound", "bound_satisfied",
        "oracle_value", "wall_time_ms",
    ],
}

# 退出状态码
EXIT_CODES = {
    "ok": 0,
    "bound_violation": 1,
    "config_error": 2,
}


def _thread_count():
    """读取 FDRLAB_THREADS，缺省为 CPU 核数；返回 (工作进程数, 无法解析的原值)"""
    raw = os.environ.get("FDRLAB_THREADS")
    if raw:
        try:
            return max(1, int(raw)), None
        except ValueError:
            return 1, raw
    return os.cpu_count() or 1, None


_threads, _invalid_threads = _thread_count()


# 运行时配置
RUNTIME_CONFIG = {
    "threads": _threads,
    "invalid_threads": _invalid_threads,  # 日志初始化时据此告警
    "min_chunk_reps": 1000,  # 每个工作进程至少分到的重复次数
    "log_level": os.environ.get("FDRLAB_LOG_LEVEL", "INFO").upper(),
}

# 日志文件配置
LOG_FILES = {
    "main": "main.log",
    "error": "error.log",
    "simulation": "simulation.log",  # JSON 行格式
    "performance": "performance.log",
}
