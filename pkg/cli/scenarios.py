#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命名场景目录

每个场景把一组参数绑定成若干个 Case（模型 × 检验程序 × 解析界 × 判定方式），
目录顺序固定，list 子命令按此顺序输出。
"""

import math
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional

from config import DEFAULTS
from core.critical_values import RatioTrend
from core.procedures import STEP_DOWN, STEP_UP
from estimation.bounds import (
    EQUAL,
    LOWER,
    UPPER,
    bh_independence_bound,
    dependence_bound,
    modified_sd_bound,
    ratio_bound,
    two_hypothesis_bound,
)
from estimation.probes import expected_direction, validate_levels
from estimation.procedures import ProcedureSpec
from models.generators import NONMONOTONE_VARIANTS
from models.specs import (
    BiUniformModel,
    BonferroniSharpModel,
    M2SuSharpModel,
    ModelSpec,
    NonmonotoneSdModel,
    model_from_dict,
)
from models.types import COMONOTONE, COPULA_VARIANTS, COUNTERMONOTONE, INDEPENDENT, CopulaSpec, FalseNullSpec
from utils.errors import ConfigError


@dataclass(frozen=True)
class Case:
    """报告中的一行：模型、检验程序以及要验证的界"""

    label: str
    model: ModelSpec
    procedure: ProcedureSpec
    alpha: Optional[float]
    bound: Optional[float]
    check: str = UPPER
    oracle: bool = False
    # 探针中后续水平另按此方式与上一行的估计值比较
    trend: Optional[str] = None


@dataclass(frozen=True)
class Scenario:
    name: str
    anchor: str
    defaults: Dict[str, Any]
    build: Callable[[Dict[str, Any]], List[Case]]


def _false_block(count: int, value: float) -> FalseNullSpec:
    return FalseNullSpec.dirac([value] * count) if count > 0 else FalseNullSpec.none()


def _sizes(params):
    m, m0 = params["m"], params["m0"]
    if not 0 <= m0 <= m:
        raise ConfigError("要求 0 ⩽ m0 ⩽ m", {"m": m, "m0": m0})
    return m, m0


def _bh_equality(params):
    (m, m0), alpha = _sizes(params), params["alpha"]
    proc = ProcedureSpec(STEP_UP, "bh", alpha)
    bound = bh_independence_bound(m0, m, alpha)
    return [Case(f"bh-equality:false={value:g}", BiUniformModel(m0, _false_block(m - m0, value)),
                 proc, alpha, bound, EQUAL, oracle=m == 2)
            for value in (0.0, 0.99)]


def _bh_conservative(params):
    (m, m0), alpha = _sizes(params), params["alpha"]
    model = BiUniformModel(m0, _false_block(m - m0, 0.0), null_shift=params["null_shift"])
    return [Case(f"bh-conservative:beta={params['null_shift']:g}", model, ProcedureSpec(STEP_UP, "bh", alpha),
                 alpha, bh_independence_bound(m0, m, alpha), UPPER, oracle=m == 2)]


def _bonferroni_sharp(params):
    m, alpha = params["m"], params["alpha"]
    proc = ProcedureSpec(STEP_UP, "bonferroni", alpha)
    copulas = [c for c in COPULA_VARIANTS if c != COUNTERMONOTONE or m == 2]
    return [Case(f"bonferroni-sharp:{c}", BonferroniSharpModel(m, CopulaSpec(c)), proc, alpha, alpha, EQUAL,
                 oracle=m == 2)
            for c in copulas]


def _by_bound(params):
    m, alpha = params["m"], params["alpha"]
    cases = []
    for copula in (INDEPENDENT, COMONOTONE):
        model = BonferroniSharpModel(m, CopulaSpec(copula))
        cases.append(Case(f"by-bound:bh:{copula}", model, ProcedureSpec(STEP_UP, "bh", alpha), alpha,
                          dependence_bound(m, alpha), UPPER, oracle=m == 2))
        cases.append(Case(f"by-bound:by:{copula}", model, ProcedureSpec(STEP_UP, "by", alpha), alpha,
                          alpha, UPPER, oracle=m == 2))
    return cases


def _m2_su_sharp(params):
    a1, a2 = params["alpha1"], params["alpha2"]
    return [Case("m2-su-sharp", M2SuSharpModel(a1, a2), ProcedureSpec.explicit(STEP_UP, [a1, a2]), a2,
                 two_hypothesis_bound(a1, a2), EQUAL, oracle=True)]


def _by_sharp_m2(params):
    alpha = params["alpha"]
    return [Case("by-sharp-m2", M2SuSharpModel(alpha / 2.0, alpha), ProcedureSpec(STEP_UP, "bh", alpha), alpha,
                 dependence_bound(2, alpha), EQUAL, oracle=True)]


def _sd_sharp(params):
    m, alpha = params["m"], params["alpha"]
    model = BiUniformModel(1, _false_block(m - 1, 0.0))
    bound = alpha / m
    procs = (ProcedureSpec(STEP_DOWN, "bh", alpha), ProcedureSpec(STEP_UP, "bh", alpha),
             ProcedureSpec(STEP_DOWN, "tie_adjusted_bh", alpha))
    return [Case(f"sd-sharp:{proc.procedure_id}", model, proc, alpha, bound, EQUAL, oracle=m == 2)
            for proc in procs]


def _modified_sd(params):
    (m, m0), alpha = _sizes(params), params["alpha"]
    model = BiUniformModel(m0, _false_block(m - m0, 1.0))
    bound = modified_sd_bound(m0, m, alpha)
    return [Case(f"modified-sd:{family}", model, ProcedureSpec(STEP_DOWN, family, alpha), alpha, bound, EQUAL,
                 oracle=m == 2)
            for family in ("modified_c", "tie_adjusted_c")]


def _nonmonotone_sd(params):
    alpha = params["alpha"]
    proc = ProcedureSpec(STEP_DOWN, "bh", alpha)
    bound = bh_independence_bound(1, 2, alpha)
    return [Case(f"nonmonotone-sd:{variant}", NonmonotoneSdModel(variant, alpha), proc, alpha, bound, UPPER,
                 oracle=True)
            for variant in NONMONOTONE_VARIANTS]


def probe_procedures(m: int, alpha: float) -> List[ProcedureSpec]:
    """三种 α_i/i 形态：常数 (BH)、非降 (α·i²/m²)、非增 (α·√(i/m))"""
    return [
        ProcedureSpec(STEP_UP, "bh", alpha),
        ProcedureSpec.explicit(STEP_UP, [alpha * i * i / (m * m) for i in range(1, m + 1)]),
        ProcedureSpec.explicit(STEP_UP, [alpha * math.sqrt(i / m) for i in range(1, m + 1)]),
    ]


def _monotonicity_probe(params):
    m0, alpha = params["m0"], params["alpha"]
    levels = validate_levels(params["levels"])
    m = m0 + 1
    check_for = {RatioTrend.NON_INCREASING: UPPER, RatioTrend.NON_DECREASING: LOWER, RatioTrend.CONSTANT: EQUAL}
    cases = []
    for proc in probe_procedures(m, alpha):
        check = check_for.get(expected_direction(proc, m), UPPER)
        bound = ratio_bound(proc.base_values(m), m0)
        for k, t in enumerate(levels):
            model = BiUniformModel(m0, FalseNullSpec.dirac([t]))
            cases.append(Case(f"monotonicity-probe:t={t:g}", model, proc, alpha, bound, UPPER,
                              oracle=m == 2, trend=check if k > 0 else None))
    return cases


SCENARIOS = [
    Scenario("bh-equality", "BH 在均匀真零独立模型下 FDR = m₀α/m，与假零 p 值位置无关",
             {"alpha": 0.1, "m": 16, "m0": 8}, _bh_equality),
    Scenario("bh-conservative", "BH 在保守真零 (β+(1−β)U) 独立模型下 FDR ⩽ m₀α/m",
             {"alpha": 0.1, "m": 16, "m0": 8, "null_shift": DEFAULTS["null_shift"]}, _bh_conservative),
    Scenario("bonferroni-sharp", "Bonferroni 锐性：copula 分块置换构造下 FDR = FWER = α",
             {"alpha": 0.25, "m": 5}, _bonferroni_sharp),
    Scenario("by-bound", "任意依赖下 BH 的 FDR ⩽ min(α Σ1/k, 1)，BY 临界值控制在 α′",
             {"alpha": 0.1, "m": 5}, _by_bound),
    Scenario("m2-su-sharp", "m=2 任意依赖下 SU 检验 FDR ⩽ min(α₁+α₂, 1)，条件均匀构造取等",
             {"alpha1": 0.1, "alpha2": 0.3}, _m2_su_sharp),
    Scenario("by-sharp-m2", "m=2 且 α<2/3 时依赖界 α(1+1/2) 可达",
             {"alpha": 0.4}, _by_sharp_m2),
    Scenario("sd-sharp", "SD-BH 的 FDR ⩽ αm₀/m，p=(U,0,…,0) 时 FDR = α/m",
             {"alpha": 0.2, "m": 4}, _sd_sharp),
    Scenario("modified-sd", "修正 c 值 SD：FDR ⩽ 1−(1−α)^{m₀/m} ⩽ α，假零 p 值大于 c_m 时取等",
             {"alpha": 0.19, "m": 2, "m0": 1}, _modified_sd),
    Scenario("nonmonotone-sd", "SD 检验的 FDR 对假零 p 值不单调：α/2, 3α/8, α/2−α²/8, α/2",
             {"alpha": 0.2}, _nonmonotone_sd),
    Scenario("monotonicity-probe", "SU 检验：α_i/i 非降则 FDR 随假零 p 值非增，非增则非降",
             {"alpha": 0.1, "m0": 3, "levels": DEFAULTS["probe_levels"]}, _monotonicity_probe),
]

SCENARIO_INDEX = {s.name: s for s in SCENARIOS}


def list_scenarios() -> str:
    """场景目录文本，按固定顺序每行一个场景"""
    width = max(len(s.name) for s in SCENARIOS)
    return "\n".join(f"{s.name.ljust(width)}  {s.anchor}" for s in SCENARIOS)


def _inline_cases(spec: Dict[str, Any], params: Dict[str, Any]) -> List[Case]:
    if "model" not in spec or "procedure" not in spec:
        raise ConfigError("内联场景必须包含 model 与 procedure", {"scenario": spec})
    model = model_from_dict(spec["model"])
    proc = ProcedureSpec.from_dict(spec["procedure"])
    bound = spec.get("bound")
    check = spec.get("check", UPPER)
    if check not in (UPPER, LOWER, EQUAL):
        raise ConfigError(f"未知的判定方式: {check}", {"allowed": [UPPER, LOWER, EQUAL]})
    label = spec.get("name", "inline")
    return [Case(label, model, proc, proc.alpha, None if bound is None else float(bound), check,
                 oracle=bool(spec.get("oracle", model.m == 2)))]


def build_cases(binding: Dict[str, Any]) -> List[Case]:
    """把一个参数绑定解析成 Case 列表"""
    scenario = binding["scenario"]
    if isinstance(scenario, dict):
        return _inline_cases(scenario, binding)
    if scenario not in SCENARIO_INDEX:
        raise ConfigError(f"未知的场景: {scenario}", {"allowed": list(SCENARIO_INDEX)})
    entry = SCENARIO_INDEX[scenario]
    params = dict(entry.defaults)
    params.update({k: v for k, v in binding.items() if k in entry.defaults})
    return entry.build(params)
