#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常类型定义

所有领域错误都继承自 FdrLabError（同时也是 ValueError），
code 字段给出机器可读的错误类别，CLI 据此映射退出状态码。
"""


class FdrLabError(ValueError):
    """FDR 实验室的基础异常"""

    code = "fdrlab-error"

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}

    def to_dict(self):
        return {"code": self.code, "message": str(self), "details": self.details}


class InvalidLevelError(FdrLabError):
    """检验水平不在 (0,1) 内"""
    code = "invalid-level"


class InvalidSizeError(FdrLabError):
    """假设个数 m < 1"""
    code = "invalid-size"


class LevelTooLargeError(FdrLabError):
    """修正临界值要求 α ⩽ α₀"""
    code = "level-too-large"


class LengthMismatchError(FdrLabError):
    code = "length-mismatch"


class SizeMismatchError(FdrLabError):
    code = "size-mismatch"


class EmptyProblemError(FdrLabError):
    code = "empty-problem"


class ParameterConstraintError(FdrLabError):
    code = "parameter-constraint"


class UnknownVariantError(FdrLabError):
    code = "unknown-variant"


class UnsupportedModelError(FdrLabError):
    """模型没有封闭形式的条件分布"""
    code = "unsupported-model"


class PartitionMismatchError(FdrLabError):
    code = "partition-mismatch"


class InvalidLevelsError(FdrLabError):
    code = "invalid-levels"


class ConfigError(FdrLabError):
    """实验配置解析或校验失败"""
    code = "config-parse"
