#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
模型规格 - 把生成器参数打包成可序列化、可抽样的对象

m = 2 的模型还给出封闭形式的条件分布 m2_law(u)，供精确积分使用：
以均匀数 u 参数化 p₁，返回 p₁ 以及 p₂ 的条件分布分段（区间或原子）。
"""

from dataclasses import dataclass, field
from typing import List, NamedTuple, Tuple

from models.generators import (
    NONMONOTONE_VARIANTS,
    nonmonotone_p2,
    sample_bi_uniform,
    sample_bonferroni_sharp,
    sample_m2_su_sharp,
    sample_nonmonotone_sd,
    validate_m2_su_sharp,
)
from models.types import (
    COMONOTONE,
    INDEPENDENT,
    SCALED_UNIFORM,
    SHIFTED_UNIFORM,
    CopulaSpec,
    FalseNullSpec,
    LabeledSample,
    RandomSeed,
)
from utils.errors import ConfigError, ParameterConstraintError, UnknownVariantError, UnsupportedModelError


class LawPiece(NamedTuple):
    """条件分布的一段：lo == hi 时为原子，否则为 [lo, hi] 上的均匀分布"""

    lo: float
    hi: float
    weight: float

    @property
    def is_atom(self) -> bool:
        return self.lo == self.hi


class M2Law(NamedTuple):
    p1: float
    pieces: List[LawPiece]
    null_mask: Tuple[bool, bool]


class ModelSpec:
    """模型规格基类"""

    kind = "abstract"

    @property
    def m(self) -> int:
        raise NotImplementedError

    @property
    def m0(self) -> int:
        raise NotImplementedError

    @property
    def model_id(self) -> str:
        raise NotImplementedError

    def sample(self, seed: RandomSeed) -> LabeledSample:
        raise NotImplementedError

    def m2_law(self, u: float) -> M2Law:
        raise UnsupportedModelError(f"模型 {self.model_id} 没有封闭形式的 m=2 条件分布")

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class BiUniformModel(ModelSpec):
    """BI 模型：独立真零 p 值（可保守）加独立假零块"""

    m0_count: int
    false_nulls: FalseNullSpec = field(default_factory=FalseNullSpec.none)
    null_shift: float = 0.0
    interleave: bool = True

    kind = "bi_uniform"

    def __post_init__(self):
        if self.m0_count < 0:
            raise ParameterConstraintError("m0 必须非负", {"m0": self.m0_count})
        if not 0.0 <= self.null_shift <= 1.0:
            raise ParameterConstraintError("null_shift 必须位于 [0,1] 内", {"null_shift": self.null_shift})

    @property
    def m(self) -> int:
        return self.m0_count + self.false_nulls.m1

    @property
    def m0(self) -> int:
        return self.m0_count

    @property
    def model_id(self) -> str:
        shift = f",beta={self.null_shift:g}" if self.null_shift else ""
        return f"bi_uniform(m0={self.m0_count},false={self.false_nulls.describe()}{shift})"

    def sample(self, seed: RandomSeed) -> LabeledSample:
        return sample_bi_uniform(self.m0_count, self.false_nulls, seed, self.null_shift, self.interleave)

    def _null_value(self, u):
        return self.null_shift + (1.0 - self.null_shift) * u

    def _null_piece(self):
        return LawPiece(self.null_shift, 1.0, 1.0)

    def _false_piece(self, index):
        spec = self.false_nulls
        if spec.variant == SCALED_UNIFORM:
            return LawPiece(0.0, spec.scale, 1.0)
        if spec.variant == SHIFTED_UNIFORM:
            return LawPiece(spec.shift, spec.shift + spec.scale, 1.0)
        value = spec.values[index]
        return LawPiece(value, value, 1.0)

    def m2_law(self, u: float) -> M2Law:
        if self.m != 2 or self.m0_count == 0:
            raise UnsupportedModelError(f"模型 {self.model_id} 不是 m0 ⩾ 1 的 m=2 模型")
        p1 = self._null_value(u)
        if self.m0_count == 2:
            return M2Law(p1, [self._null_piece()], (True, True))
        return M2Law(p1, [self._false_piece(0)], (True, False))

    def to_dict(self) -> dict:
        return {"type": self.kind, "m0": self.m0_count, "false_nulls": self.false_nulls.to_dict(),
                "null_shift": self.null_shift, "interleave": self.interleave}


@dataclass(frozen=True)
class BonferroniSharpModel(ModelSpec):
    """Bonferroni 锐性构造，全部为真零"""

    size: int
    copula: CopulaSpec = field(default_factory=CopulaSpec)

    kind = "bonferroni_sharp"

    def __post_init__(self):
        if self.size < 1:
            raise ParameterConstraintError("m 必须 ⩾ 1", {"m": self.size})
        self.copula.validate(self.size)

    @property
    def m(self) -> int:
        return self.size

    @property
    def m0(self) -> int:
        return self.size

    @property
    def model_id(self) -> str:
        return f"bonferroni_sharp(m={self.size},copula={self.copula.variant})"

    def sample(self, seed: RandomSeed) -> LabeledSample:
        return sample_bonferroni_sharp(self.size, self.copula, seed)

    def m2_law(self, u: float) -> M2Law:
        if self.size != 2:
            raise UnsupportedModelError(f"模型 {self.model_id} 不是 m=2 模型")
        x = u
        lower_block = x < 0.5
        if self.copula.variant == INDEPENDENT:
            piece = LawPiece(0.5, 1.0, 1.0) if lower_block else LawPiece(0.0, 0.5, 1.0)
        elif self.copula.variant == COMONOTONE:
            partner = x + 0.5 if lower_block else x - 0.5
            piece = LawPiece(partner, partner, 1.0)
        else:
            piece = LawPiece(1.0 - x, 1.0 - x, 1.0)
        return M2Law(x, [piece], (True, True))

    def to_dict(self) -> dict:
        return {"type": self.kind, "m": self.size, "copula": self.copula.variant}


@dataclass(frozen=True)
class M2SuSharpModel(ModelSpec):
    """m = 2 时 SU 检验达到 FDR = α₁ + α₂ 的构造"""

    alpha1: float
    alpha2: float

    kind = "m2_su_sharp"

    def __post_init__(self):
        validate_m2_su_sharp(self.alpha1, self.alpha2)

    @property
    def m(self) -> int:
        return 2

    @property
    def m0(self) -> int:
        return 2

    @property
    def model_id(self) -> str:
        return f"m2_su_sharp({self.alpha1:g},{self.alpha2:g})"

    def sample(self, seed: RandomSeed) -> LabeledSample:
        return sample_m2_su_sharp(self.alpha1, self.alpha2, seed)

    def m2_law(self, u: float) -> M2Law:
        a1, a2 = self.alpha1, self.alpha2
        if u <= a1:
            pieces = [LawPiece(1.0 - a1, 1.0, 1.0)]
        elif u <= a2:
            pieces = [LawPiece(a1, a2, 1.0)]
        else:
            rest = 1.0 - a2
            pieces = [LawPiece(0.0, a1, a1 / rest), LawPiece(a2, 1.0 - a1, (1.0 - a1 - a2) / rest)]
        return M2Law(u, pieces, (True, True))

    def to_dict(self) -> dict:
        return {"type": self.kind, "alpha1": self.alpha1, "alpha2": self.alpha2}


@dataclass(frozen=True)
class NonmonotoneSdModel(ModelSpec):
    """SD 检验 FDR 不单调的四变体构造"""

    variant: str
    alpha: float

    kind = "nonmonotone_sd"

    def __post_init__(self):
        if self.variant not in NONMONOTONE_VARIANTS:
            raise UnknownVariantError(f"未知的变体: {self.variant}", {"allowed": list(NONMONOTONE_VARIANTS)})
        if not 0.0 < self.alpha < 1.0:
            raise ParameterConstraintError("alpha 必须位于 (0,1) 内", {"alpha": self.alpha})

    @property
    def m(self) -> int:
        return 2

    @property
    def m0(self) -> int:
        return 1

    @property
    def model_id(self) -> str:
        return f"nonmonotone_sd({self.variant},{self.alpha:g})"

    def sample(self, seed: RandomSeed) -> LabeledSample:
        return sample_nonmonotone_sd(self.variant, self.alpha, seed)

    def m2_law(self, u: float) -> M2Law:
        lo = nonmonotone_p2(self.variant, 0.0, self.alpha)
        hi = nonmonotone_p2(self.variant, 1.0, self.alpha)
        return M2Law(u, [LawPiece(lo, hi, 1.0)], (True, False))

    def to_dict(self) -> dict:
        return {"type": self.kind, "variant": self.variant, "alpha": self.alpha}


def model_from_dict(data: dict) -> ModelSpec:
    """从配置字典构造模型规格"""
    if not isinstance(data, dict) or "type" not in data:
        raise ConfigError("模型规格必须是带 type 字段的对象", {"model": data})
    kind = data["type"]
    try:
        if kind == BiUniformModel.kind:
            return BiUniformModel(int(data["m0"]), FalseNullSpec.from_dict(data.get("false_nulls", {})),
                                  float(data.get("null_shift", 0.0)), bool(data.get("interleave", True)))
        if kind == BonferroniSharpModel.kind:
            return BonferroniSharpModel(int(data["m"]), CopulaSpec(data.get("copula", INDEPENDENT)))
        if kind == M2SuSharpModel.kind:
            return M2SuSharpModel(float(data["alpha1"]), float(data["alpha2"]))
        if kind == NonmonotoneSdModel.kind:
            return NonmonotoneSdModel(data["variant"], float(data["alpha"]))
    except KeyError as exc:
        raise ConfigError(f"模型规格缺少字段: {exc.args[0]}", {"model": data}) from exc
    raise ConfigError(f"未知的模型类型: {kind}", {"model": data})
