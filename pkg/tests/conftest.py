# -*- coding: utf-8 -*-
"""
测试公共配置：日志写到临时目录，仓库根目录加入导入路径
"""

import os
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

# 必须在导入 config / utils.logger 之前设置
os.environ.setdefault("FDRLAB_LOG_DIR", tempfile.mkdtemp(prefix="fdrlab-logs-"))

import pytest  # noqa: E402

from models.types import RandomSeed  # noqa: E402


@pytest.fixture
def seed():
    return RandomSeed(20240607)
