#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
实验配置 - JSON 配置文件与命令行参数合并

配置文件是扁平的键值对，只有 sweep 允许一层嵌套（参数绑定列表）。
命令行参数覆盖文件中的同名键。种子必须显式给出。
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from config import DEFAULTS
from utils.errors import ConfigError

FORMATS = ("csv", "json")

# 可被 sweep 绑定或命令行覆盖的场景参数
PARAMETER_KEYS = ("alpha", "alpha1", "alpha2", "m", "m0", "n_reps", "grid_n", "null_shift", "levels")

_TOP_LEVEL_KEYS = set(PARAMETER_KEYS) | {"scenario", "seed", "output", "out", "format", "sweep", "timing"}

_MAX_SEED = 2 ** 64


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """读取 JSON 配置文件"""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as exc:
        raise ConfigError(f"配置文件不存在: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"配置文件不是合法 JSON: {path}", {"line": exc.lineno, "column": exc.colno}) from exc
    if not isinstance(data, dict):
        raise ConfigError("配置文件顶层必须是对象", {"path": str(path)})
    return data


def _check_parameters(binding: Dict[str, Any], where: str) -> Dict[str, Any]:
    unknown = set(binding) - set(PARAMETER_KEYS) - {"scenario"}
    if unknown:
        raise ConfigError(f"{where} 含有未知参数: {sorted(unknown)}", {"allowed": list(PARAMETER_KEYS)})
    params = {}
    for key, value in binding.items():
        if key == "scenario":
            continue
        try:
            if key in ("m", "m0", "n_reps", "grid_n"):
                if isinstance(value, bool) or int(value) != value:
                    raise ValueError(value)
                params[key] = int(value)
            elif key == "levels":
                params[key] = tuple(float(v) for v in value)
            else:
                params[key] = float(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{where} 中参数 {key} 取值非法: {value!r}") from exc
    if params.get("n_reps", 1) < 1:
        raise ConfigError("n_reps 必须 ⩾ 1", {"n_reps": params["n_reps"]})
    return params


@dataclass(frozen=True)
class ExperimentConfig:
    """一次 run 的完整配置

    scenario 是场景名或内联规格 {model, procedure, bound?, check?}；
    sweep 中每个绑定产生一组报告行，缺省时只有一个空绑定。
    """

    scenario: Union[str, Dict[str, Any]]
    seed: int
    output_path: Path
    output_format: str = DEFAULTS["format"]
    parameters: Dict[str, Any] = field(default_factory=dict)
    sweep: List[Dict[str, Any]] = field(default_factory=list)
    timing: bool = False

    @classmethod
    def from_sources(cls, file_data: Optional[Dict[str, Any]] = None,
                     overrides: Optional[Dict[str, Any]] = None) -> "ExperimentConfig":
        """合并配置文件与命令行覆盖项（值为 None 的覆盖项忽略）"""
        data = dict(file_data or {})
        unknown = set(data) - _TOP_LEVEL_KEYS
        if unknown:
            raise ConfigError(f"配置含有未知键: {sorted(unknown)}")
        for key, value in (overrides or {}).items():
            if value is not None:
                data[key] = value

        scenario = data.get("scenario")
        if scenario is None:
            raise ConfigError("必须指定场景 (scenario)")
        if not isinstance(scenario, (str, dict)):
            raise ConfigError("scenario 必须是场景名或内联规格对象", {"scenario": scenario})

        if "seed" not in data or data["seed"] is None:
            raise ConfigError("必须显式指定随机种子 (seed)")
        seed = data["seed"]
        if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < _MAX_SEED:
            raise ConfigError("seed 必须是 64 位无符号整数", {"seed": seed})

        output = data.get("output") or {}
        if not isinstance(output, dict):
            raise ConfigError("output 必须是 {path, format} 对象", {"output": output})
        fmt = data.get("format") or output.get("format") or DEFAULTS["format"]
        if fmt not in FORMATS:
            raise ConfigError(f"未知的报告格式: {fmt}", {"allowed": list(FORMATS)})
        path = data.get("out") or output.get("path") or f"fdrlab-report.{fmt}"

        params = _check_parameters({k: data[k] for k in PARAMETER_KEYS if k in data}, "配置")

        sweep = data.get("sweep") or []
        if not isinstance(sweep, list) or not all(isinstance(b, dict) for b in sweep):
            raise ConfigError("sweep 必须是参数绑定对象的列表")
        bindings = []
        for i, binding in enumerate(sweep):
            checked = _check_parameters(binding, f"sweep[{i}]")
            if "scenario" in binding:
                checked["scenario"] = binding["scenario"]
            bindings.append(checked)

        return cls(scenario=scenario, seed=seed, output_path=Path(path), output_format=fmt,
                   parameters=params, sweep=bindings, timing=bool(data.get("timing", False)))

    def bindings(self) -> List[Dict[str, Any]]:
        """按配置顺序展开的参数绑定，每个绑定都已叠加顶层参数"""
        if not self.sweep:
            return [{"scenario": self.scenario, **self.parameters}]
        return [{"scenario": self.scenario, **self.parameters, **binding} for binding in self.sweep]
