#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
生成器用到的数据类型 - 随机种子、假零假设规格、copula 规格与带标签样本
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from core.types import HypothesisPartition, PValueVector
from utils.errors import ParameterConstraintError, SizeMismatchError, UnknownVariantError

_UINT64 = 2 ** 64


@dataclass(frozen=True)
class RandomSeed:
    """(seed, stream_id) 唯一确定一条随机数流"""

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            value = getattr(self, name)
            if int(value) != value or not 0 <= value < _UINT64:
                raise ParameterConstraintError(f"{name} 必须是 64 位无符号整数", {name: value})
            object.__setattr__(self, name, int(value))

    def generator(self) -> np.random.Generator:
        """同一 (seed, stream_id) 在同一构建上逐位复现"""
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        return np.random.Generator(np.random.PCG64(sequence))

    def replicate(self, index: int) -> "RandomSeed":
        """第 index 个重复使用的子流；stream_id 作为基准偏移"""
        return RandomSeed(self.seed, (self.stream_id + int(index)) % _UINT64)


DIRAC = "dirac"
SCALED_UNIFORM = "scaled_uniform"
SHIFTED_UNIFORM = "shifted_uniform"


@dataclass(frozen=True)
class FalseNullSpec:
    """假零假设块的分布

    dirac：固定取值；scaled_uniform：scale·U；shifted_uniform：shift + scale·U。
    """

    variant: str = DIRAC
    values: Tuple[float, ...] = ()
    scale: float = 1.0
    shift: float = 0.0
    count: int = 0

    def __post_init__(self):
        if self.variant == DIRAC:
            values = tuple(float(v) for v in self.values)
            if any(not 0.0 <= v <= 1.0 for v in values):
                raise ParameterConstraintError("dirac 取值必须位于 [0,1] 内", {"values": values})
            object.__setattr__(self, "values", values)
            object.__setattr__(self, "count", len(values))
        elif self.variant in (SCALED_UNIFORM, SHIFTED_UNIFORM):
            if not 0.0 < self.scale <= 1.0:
                raise ParameterConstraintError("scale 必须位于 (0,1] 内", {"scale": self.scale})
            if self.shift < 0.0 or self.scale + self.shift > 1.0 + 1e-15:
                raise ParameterConstraintError("需要 shift ⩾ 0 且 scale + shift ⩽ 1",
                                               {"scale": self.scale, "shift": self.shift})
            if self.variant == SCALED_UNIFORM and self.shift != 0.0:
                raise ParameterConstraintError("scaled_uniform 不接受 shift", {"shift": self.shift})
            if self.count < 0:
                raise ParameterConstraintError("count 必须非负", {"count": self.count})
        else:
            raise UnknownVariantError(f"未知的假零假设分布: {self.variant}")

    @classmethod
    def none(cls) -> "FalseNullSpec":
        return cls(DIRAC, ())

    @classmethod
    def dirac(cls, values) -> "FalseNullSpec":
        return cls(DIRAC, tuple(values))

    @classmethod
    def scaled_uniform(cls, scale: float, count: int = 1) -> "FalseNullSpec":
        return cls(SCALED_UNIFORM, (), scale, 0.0, count)

    @classmethod
    def shifted_uniform(cls, scale: float, shift: float, count: int = 1) -> "FalseNullSpec":
        return cls(SHIFTED_UNIFORM, (), scale, shift, count)

    @classmethod
    def from_dict(cls, data: dict) -> "FalseNullSpec":
        variant = data.get("variant", DIRAC)
        if variant == DIRAC:
            return cls.dirac(data.get("values", ()))
        if variant == SCALED_UNIFORM:
            return cls.scaled_uniform(data.get("scale", 1.0), data.get("count", 1))
        if variant == SHIFTED_UNIFORM:
            return cls.shifted_uniform(data.get("scale", 1.0), data.get("shift", 0.0), data.get("count", 1))
        raise UnknownVariantError(f"未知的假零假设分布: {variant}")

    @property
    def m1(self) -> int:
        return self.count

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        if self.variant == DIRAC:
            return np.array(self.values, dtype=float)
        uniforms = rng.random(self.count)
        return np.minimum(self.shift + self.scale * uniforms, 1.0)

    def describe(self) -> str:
        if self.variant == DIRAC:
            return "dirac(" + ",".join(f"{v:g}" for v in self.values) + ")"
        if self.variant == SCALED_UNIFORM:
            return f"scaled_uniform({self.scale:g})x{self.count}"
        return f"shifted_uniform({self.scale:g},{self.shift:g})x{self.count}"

    def to_dict(self) -> dict:
        if self.variant == DIRAC:
            return {"variant": DIRAC, "values": list(self.values)}
        return {"variant": self.variant, "scale": self.scale, "shift": self.shift, "count": self.count}


INDEPENDENT = "independent"
COMONOTONE = "comonotone"
COUNTERMONOTONE = "countermonotone"
COPULA_VARIANTS = (INDEPENDENT, COMONOTONE, COUNTERMONOTONE)


@dataclass(frozen=True)
class CopulaSpec:
    """边际均匀的 m 维依赖结构"""

    variant: str = INDEPENDENT

    def __post_init__(self):
        if self.variant not in COPULA_VARIANTS:
            raise UnknownVariantError(f"未知的 copula: {self.variant}", {"allowed": list(COPULA_VARIANTS)})

    def validate(self, m: int):
        if self.variant == COUNTERMONOTONE and m != 2:
            raise ParameterConstraintError("countermonotone copula 只支持 m = 2", {"m": m})

    def draw(self, m: int, rng: np.random.Generator) -> np.ndarray:
        self.validate(m)
        if self.variant == INDEPENDENT:
            return rng.random(m)
        u = rng.random()
        if self.variant == COMONOTONE:
            return np.full(m, u)
        return np.array([u, 1.0 - u])


@dataclass(frozen=True)
class LabeledSample:
    """一次抽样得到的 p 值与真实划分"""

    pvalues: PValueVector
    partition: HypothesisPartition

    def __post_init__(self):
        if self.pvalues.m != self.partition.m:
            raise SizeMismatchError("p 值与划分长度不一致",
                                    {"m": self.pvalues.m, "partition_m": self.partition.m})

    @property
    def m(self) -> int:
        return self.pvalues.m

    @property
    def m0(self) -> int:
        return self.partition.m0
