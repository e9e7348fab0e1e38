#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
版本信息文件
"""

__version__ = "1.0.0"
__version_info__ = (1, 0, 0)
__author__ = "fdrlab developers"
__email__ = ""
__description__ = "多重检验 FDR 界与锐性验证实验室 - 逐步上升/逐步下降检验与对抗依赖构造"
__license__ = "MIT"
__copyright__ = "Copyright (c) 2026 fdrlab developers"

# 版本历史
VERSION_HISTORY = {
    "1.0.0": {
        "release_date": "2026-10-19",
        "major_features": [
            "逐步上升 (SU) 与逐步下降 (SD) 检验引擎",
            "BH、BY、Bonferroni、修正 c 值与并列调整临界值",
            "独立模型与对抗依赖构造的 p 值生成器",
            "带标准误的可复现蒙特卡洛估计与 m=2 精确积分",
            "命名场景目录与 CSV/JSON 报告",
        ],
    }
}

# 系统兼容性信息
COMPATIBILITY = {
    "python_version": ">=3.8",
    "operating_systems": ["Windows", "Linux", "macOS"],
    "dependencies": {
        "numpy": ">=1.21.0",
        "pandas": ">=1.5.0",
        "scipy": ">=1.7.0",
    },
}


def get_version():
    """获取版本号"""
    return __version__


def get_version_info():
    """获取详细版本信息"""
    return {
        "version": __version__,
        "version_info": __version_info__,
        "release_date": VERSION_HISTORY.get(__version__, {}).get("release_date"),
        "author": __author__,
        "description": __description__,
        "license": __license__,
        "copyright": __copyright__,
    }


def get_system_info():
    """获取系统信息"""
    import sys
    import platform

    return {
        "python_version": sys.version.split()[0],
        "platform": platform.platform(),
        "version": __version__,
        "python_required": COMPATIBILITY["python_version"],
        "dependencies": COMPATIBILITY["dependencies"],
    }
