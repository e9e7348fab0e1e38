#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
日志管理工具类 - 按用途划分的多路日志
"""

import json
import logging
import os
from datetime import datetime

from config import LOG_DIR, LOG_FILES, RUNTIME_CONFIG


class LoggerManager:
    """日志管理器，负责创建和管理各种类型的日志记录器"""

    def __init__(self, log_dir=LOG_DIR, level=RUNTIME_CONFIG["log_level"]):
        self.log_dir = log_dir
        self.level = getattr(logging, level, logging.INFO)
        self.loggers = {}
        self._console_handlers = []
        self._setup_loggers()
        self._check_runtime_config()

    def _setup_loggers(self):
        """设置所有类型的日志记录器"""
        os.makedirs(self.log_dir, exist_ok=True)

        detailed_formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )
        json_formatter = logging.Formatter('%(message)s')

        for log_type, filename in LOG_FILES.items():
            logger = logging.getLogger(f"fdrlab.{log_type}")
            logger.setLevel(logging.DEBUG)
            logger.propagate = False

            # 清除现有的处理器
            for handler in list(logger.handlers):
                handler.close()
            logger.handlers.clear()

            file_handler = logging.FileHandler(
                os.path.join(self.log_dir, filename),
                encoding='utf-8'
            )
            file_handler.setLevel(self.level)
            if log_type == 'simulation':
                file_handler.setFormatter(json_formatter)
            else:
                file_handler.setFormatter(detailed_formatter)
            logger.addHandler(file_handler)

            # 控制台处理器（仅主日志和错误日志），输出到 stderr，stdout 留给报告
            if log_type in ['main', 'error']:
                console_handler = logging.StreamHandler()
                console_handler.setFormatter(detailed_formatter)
                console_handler.setLevel(self.level)
                logger.addHandler(console_handler)
                self._console_handlers.append(console_handler)

            self.loggers[log_type] = logger

    def _check_runtime_config(self):
        """环境变量无法解析时给出告警"""
        raw = RUNTIME_CONFIG.get("invalid_threads")
        if raw is not None:
            self.log_warning(f"FDRLAB_THREADS={raw!r} 不是整数，按 {RUNTIME_CONFIG['threads']} 个工作进程运行")

    def get_logger(self, log_type):
        """获取指定类型的日志记录器"""
        return self.loggers.get(log_type, self.loggers['main'])

    def set_console_level(self, level):
        """调整控制台输出级别（--verbose 使用）"""
        for handler in self._console_handlers:
            handler.setLevel(level)

    def log_info(self, message):
        """记录主要信息日志"""
        self.get_logger('main').info(message)

    def log_debug(self, message):
        self.get_logger('main').debug(message)

    def log_warning(self, message):
        self.get_logger('main').warning(message)

    def log_error(self, error_type, message, details=None):
        """记录错误日志"""
        error_msg = f"错误类型: {error_type}, 消息: {message}"
        if details:
            error_msg += f", 详情: {details}"
        self.get_logger('error').error(error_msg)

    def log_estimate(self, report):
        """记录一次蒙特卡洛估计（JSON 行）"""
        log_data = {
            "timestamp": datetime.now().isoformat(),
            "log_type": "MONTE_CARLO_ESTIMATE",
            **report.to_dict(),
        }
        self.get_logger('simulation').info(json.dumps(log_data, ensure_ascii=False))

    def log_oracle(self, model_id, procedure_id, value, grid_n):
        """记录一次精确积分结果（JSON 行）"""
        log_data = {
            "timestamp": datetime.now().isoformat(),
            "log_type": "EXACT_ORACLE",
            "model_id": model_id,
            "procedure_id": procedure_id,
            "fdr": value,
            "grid_n": grid_n,
        }
        self.get_logger('simulation').info(json.dumps(log_data, ensure_ascii=False))

    def log_performance(self, operation, n_items, actual_time, workers=1):
        """记录性能监控日志"""
        rate = n_items / actual_time if actual_time > 0 else 0.0
        self.get_logger('performance').info(
            f"性能监控 - 操作: {operation}, 数量: {n_items}, "
            f"耗时: {actual_time:.3f}秒, 速率: {rate:.1f}/秒, 工作进程: {workers}"
        )


# 全局日志管理器实例
logger_manager = LoggerManager()
