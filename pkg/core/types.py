#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
核心数据类型 - p 值向量、临界值序列、假设划分与检验结果

下标约定：对外文档沿用 1..m 的记号，代码内部一律使用 0 起始的位置下标。
所有对象构造后不可变（底层 numpy 数组设置为只读），可在线程间安全共享。
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional

import numpy as np

from utils.errors import (
    InvalidLevelError,
    InvalidSizeError,
    ParameterConstraintError,
    SizeMismatchError,
)


def _frozen_array(values, dtype=float):
    arr = np.array(values, dtype=dtype, copy=True).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PValueVector:
    """m 个 p 值，每个都在 [0,1] 内"""

    values: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.values)
        if arr.size < 1:
            raise InvalidSizeError("p 值向量至少需要一个元素", {"m": int(arr.size)})
        if np.isnan(arr).any() or arr.min() < 0.0 or arr.max() > 1.0:
            raise ParameterConstraintError("p 值必须位于 [0,1] 内", {"values": arr.tolist()})
        object.__setattr__(self, "values", arr)

    @property
    def m(self) -> int:
        return int(self.values.size)

    def __len__(self):
        return self.m

    def order(self) -> np.ndarray:
        """稳定排序下标：并列的 p 值按原下标升序"""
        return np.argsort(self.values, kind="stable")

    def sorted_values(self) -> np.ndarray:
        return self.values[self.order()]

    def __eq__(self, other):
        if not isinstance(other, PValueVector):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())


def as_pvalues(p) -> PValueVector:
    """把任意序列转成 PValueVector"""
    return p if isinstance(p, PValueVector) else PValueVector(p)


@dataclass(frozen=True, eq=False)
class CriticalValues:
    """临界值 0 < α₁ ⩽ α₂ ⩽ … ⩽ α_m < 1，隐含 α₀ = 0"""

    alphas: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.alphas)
        if arr.size < 1:
            raise InvalidSizeError("临界值序列至少需要一个元素", {"m": int(arr.size)})
        if np.isnan(arr).any() or arr[0] <= 0.0 or arr[-1] >= 1.0:
            raise InvalidLevelError("临界值必须位于 (0,1) 内", {"alphas": arr.tolist()})
        if np.any(np.diff(arr) < 0.0):
            raise InvalidLevelError("临界值必须单调不减", {"alphas": arr.tolist()})
        object.__setattr__(self, "alphas", arr)

    @property
    def m(self) -> int:
        return int(self.alphas.size)

    def __len__(self):
        return self.m

    def at(self, j: int) -> float:
        """α_j，j 取 0..m，α₀ = 0"""
        return 0.0 if j == 0 else float(self.alphas[j - 1])

    def ratios(self) -> np.ndarray:
        """i ↦ α_i / i"""
        return self.alphas / np.arange(1, self.m + 1)

    def tolist(self):
        return self.alphas.tolist()

    def __eq__(self, other):
        if not isinstance(other, CriticalValues):
            return NotImplemented
        return np.array_equal(self.alphas, other.alphas)

    def __hash__(self):
        return hash(self.alphas.tobytes())


@dataclass(frozen=True)
class HypothesisPartition:
    """真零假设下标集合 I₀，其余为 I₁"""

    m: int
    true_null_indices: FrozenSet[int]

    def __post_init__(self):
        if self.m < 1:
            raise InvalidSizeError("假设个数 m 必须 ⩾ 1", {"m": self.m})
        indices = frozenset(int(i) for i in self.true_null_indices)
        if any(i < 0 or i >= self.m for i in indices):
            raise ParameterConstraintError("真零假设下标越界", {"m": self.m, "indices": sorted(indices)})
        object.__setattr__(self, "true_null_indices", indices)

    @classmethod
    def all_null(cls, m: int) -> "HypothesisPartition":
        return cls(m, frozenset(range(m)))

    @classmethod
    def from_indices(cls, m: int, indices: Iterable[int]) -> "HypothesisPartition":
        return cls(m, frozenset(indices))

    @property
    def m0(self) -> int:
        return len(self.true_null_indices)

    @property
    def m1(self) -> int:
        return self.m - self.m0

    @property
    def false_null_indices(self) -> FrozenSet[int]:
        return frozenset(range(self.m)) - self.true_null_indices

    def null_mask(self) -> np.ndarray:
        mask = np.zeros(self.m, dtype=bool)
        mask[list(self.true_null_indices)] = True
        return mask


@dataclass(frozen=True, eq=False)
class TestOutcome:
    """一次检验的结果：逐个假设的拒绝指示、拒绝数 R 与错误拒绝数 V"""

    __test__ = False

    rejected: np.ndarray
    R: int
    V: Optional[int] = None

    def __post_init__(self):
        arr = _frozen_array(self.rejected, dtype=bool)
        object.__setattr__(self, "rejected", arr)
        if int(arr.sum()) != self.R:
            raise ParameterConstraintError("R 必须等于拒绝指示中 True 的个数", {"R": self.R})
        if self.V is not None and not 0 <= self.V <= self.R:
            raise ParameterConstraintError("需要 0 ⩽ V ⩽ R", {"R": self.R, "V": self.V})

    @classmethod
    def from_rejections(cls, rejected, partition: Optional[HypothesisPartition] = None) -> "TestOutcome":
        arr = np.asarray(rejected, dtype=bool)
        V = None
        if partition is not None:
            if partition.m != arr.size:
                raise SizeMismatchError("划分与检验结果的 m 不一致", {"m": int(arr.size), "partition_m": partition.m})
            V = int(np.count_nonzero(arr & partition.null_mask()))
        return cls(arr, int(np.count_nonzero(arr)), V)

    @property
    def m(self) -> int:
        return int(self.rejected.size)

    def rejected_indices(self):
        return np.flatnonzero(self.rejected).tolist()

    def __eq__(self, other):
        if not isinstance(other, TestOutcome):
            return NotImplemented
        return np.array_equal(self.rejected, other.rejected) and self.R == other.R and self.V == other.V
