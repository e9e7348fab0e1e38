#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
报告写出 - 固定表头的 CSV / JSON

CSV 中浮点数按 17 位有效数字写出；JSON 使用最短往返表示，读回后与 CSV 得到同一个 float。
同一配置与种子得到逐字节相同的文件。bound 列始终是解析界。
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from config import DEFAULTS, REPORT_SCHEMA
from utils.errors import ConfigError
from utils.logger import logger_manager


def make_row(scenario: str, case, report, bound: Optional[float], satisfied: bool,
             oracle_value: Optional[float], timing: bool) -> Dict[str, Any]:
    """按表头顺序组装一行"""
    row = {
        "scenario": scenario,
        "m": report.m,
        "m0": report.m0,
        "alpha": case.alpha,
        "procedure": report.procedure_id,
        "kind": case.procedure.kind,
        "n_reps": report.n_reps,
        "seed": report.seed.seed,
        "fdr_hat": report.fdr_hat,
        "fwer_hat": report.fwer_hat,
        "se_fdr": report.std_error_fdr,
        "bound": bound,
        "bound_satisfied": satisfied,
        "oracle_value": oracle_value,
        "wall_time_ms": report.wall_time_ms if timing else None,
    }
    return {column: row[column] for column in REPORT_SCHEMA["columns"]}


def rows_to_frame(rows: List[Dict[str, Any]]) -> pd.DataFrame:
    frame = pd.DataFrame(rows, columns=REPORT_SCHEMA["columns"])
    frame["bound_satisfied"] = frame["bound_satisfied"].map(lambda flag: "true" if flag else "false")
    for column in ("alpha", "bound", "oracle_value", "wall_time_ms"):
        frame[column] = pd.to_numeric(frame[column], errors="coerce").astype(float)
    return frame


def render_csv(rows: List[Dict[str, Any]]) -> str:
    frame = rows_to_frame(rows)
    return frame.to_csv(index=False, float_format=f"%.{DEFAULTS['float_digits']}g",
                        na_rep="", lineterminator="\n")


def render_json(rows: List[Dict[str, Any]]) -> str:
    return json.dumps(rows, indent=2, ensure_ascii=False) + "\n"


def write_report(rows: List[Dict[str, Any]], path: Union[str, Path], fmt: str) -> Path:
    """把报告行写入文件，行顺序即配置顺序"""
    if fmt == "csv":
        text = render_csv(rows)
    elif fmt == "json":
        text = render_json(rows)
    else:
        raise ConfigError(f"未知的报告格式: {fmt}")
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger_manager.log_info(f"📄 报告已写入 {path} ({len(rows)} 行, {fmt})")
    return path


def read_report(path: Union[str, Path]) -> pd.DataFrame:
    """读回报告文件（CSV 或 JSON），bound_satisfied 统一为布尔值"""
    path = Path(path)
    if path.suffix.lower() == ".json":
        with open(path, "r", encoding="utf-8") as f:
            frame = pd.DataFrame(json.load(f))
    else:
        frame = pd.read_csv(path, dtype={"scenario": str, "procedure": str, "kind": str})
        frame["bound_satisfied"] = frame["bound_satisfied"].map(
            lambda v: str(v).strip().lower() == "true")
    return frame
