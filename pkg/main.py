#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
FDR 多重检验验证实验室 - 主程序
"""

import argparse
import logging
import sys
import time
import traceback
from datetime import datetime
from typing import Any, Dict, List, Optional, Tuple

from cli.experiment_config import ExperimentConfig, FORMATS, load_config_file
from cli.report import make_row, write_report
from cli.scenarios import build_cases, list_scenarios
from config import DEFAULTS, EXIT_CODES
from estimation.bounds import within_slack
from estimation.exact import exact_fdr_m2_grid
from estimation.monte_carlo import monte_carlo
from models.types import RandomSeed
from utils.errors import FdrLabError
from utils.logger import logger_manager
from version import __version__, get_system_info, get_version_info


class ExperimentRunner:
    """按配置顺序执行场景，逐行检查解析界"""

    def __init__(self, config: ExperimentConfig, workers: Optional[int] = None):
        self.version = __version__
        self.config = config
        self.workers = workers
        self.start_time = datetime.now()

        logger_manager.log_info(f"=== FDR 验证实验室 v{self.version} 启动 ===")
        logger_manager.log_debug(f"版本信息: {get_version_info()}")
        logger_manager.log_debug(f"系统信息: {get_system_info()}")

    def run_binding(self, binding: Dict[str, Any]) -> List[Dict[str, Any]]:
        """执行一个参数绑定，返回报告行"""
        n_reps = binding.get("n_reps", DEFAULTS["n_reps"])
        grid_n = binding.get("grid_n", DEFAULTS["grid_n"])
        seed = RandomSeed(self.config.seed)
        rows = []
        previous = None

        for case in build_cases(binding):
            report = monte_carlo(case.model, case.procedure, n_reps, seed, workers=self.workers)
            bound = case.bound
            if bound is None:
                satisfied = True
            else:
                satisfied = within_slack(report.fdr_hat, bound, report.std_error_fdr, case.check)
            if case.trend is not None and previous is not None:
                satisfied = satisfied and within_slack(report.fdr_hat, previous.fdr_hat,
                                                       report.std_error_fdr, case.trend)
            oracle_value = exact_fdr_m2_grid(case.model, case.procedure, grid_n) if case.oracle else None

            status = "✅" if satisfied else "❌"
            logger_manager.log_info(f"{status} {case.label} {report.procedure_id}: "
                                    f"fdr_hat={report.fdr_hat:.6f} (SE {report.std_error_fdr:.6f}), "
                                    f"bound={bound}, check={case.check}")
            if not satisfied:
                logger_manager.log_error("界检验", f"{case.label} 未通过",
                                         {"fdr_hat": report.fdr_hat, "bound": bound, "check": case.check})

            rows.append(make_row(case.label, case, report, bound, satisfied, oracle_value, self.config.timing))
            previous = report
        return rows

    def run(self) -> Tuple[List[Dict[str, Any]], int]:
        """执行全部绑定并写出报告，返回 (报告行, 退出状态码)"""
        start_time = time.perf_counter()
        rows = []
        bindings = self.config.bindings()
        for i, binding in enumerate(bindings, start=1):
            logger_manager.log_info(f"🔧 绑定 {i}/{len(bindings)}: {binding}")
            rows.extend(self.run_binding(binding))

        write_report(rows, self.config.output_path, self.config.output_format)
        all_passed = all(row["bound_satisfied"] for row in rows)
        elapsed = time.perf_counter() - start_time
        logger_manager.log_performance("完整运行", len(rows), elapsed, self.workers or 1)
        logger_manager.log_info(f"✅ 运行完成，共 {len(rows)} 行，耗时 {elapsed:.2f} 秒" if all_passed
                                else f"❌ 运行完成，存在未通过的界检验，共 {len(rows)} 行")
        return rows, EXIT_CODES["ok"] if all_passed else EXIT_CODES["bound_violation"]


def print_summary(rows: List[Dict[str, Any]]):
    """运行摘要写到 stdout"""
    width = max((len(row["scenario"]) for row in rows), default=0)
    for row in rows:
        status = "✅" if row["bound_satisfied"] else "❌"
        bound = "-" if row["bound"] is None else f"{row['bound']:.6f}"
        oracle = "" if row["oracle_value"] is None else f"  oracle={row['oracle_value']:.6f}"
        print(f"{status} {row['scenario'].ljust(width)}  {row['procedure']:<24} "
              f"fdr={row['fdr_hat']:.6f}  fwer={row['fwer_hat']:.6f}  se={row['se_fdr']:.6f}  "
              f"bound={bound}{oracle}")


def create_argument_parser():
    """创建命令行参数解析器"""
    parser = argparse.ArgumentParser(
        prog="fdrlab",
        description=f"FDR 多重检验验证实验室 v{__version__}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
使用示例:
  fdrlab list                                                   # 列出命名场景
  fdrlab run --scenario bh-equality --alpha 0.1 --m 16 --m0 8 --seed 7
  fdrlab run --scenario nonmonotone-sd --alpha 0.2 --seed 3 --format json --out ex2.json
  fdrlab run --config sweep.json --seed 11                      # 配置文件 + 命令行覆盖
        """
    )
    parser.add_argument('--version', action='version', version=f'v{__version__}')
    subparsers = parser.add_subparsers(dest='command')

    run_parser = subparsers.add_parser('run', help='运行场景并写出报告')
    run_parser.add_argument('--config', type=str, help='JSON 配置文件路径')
    run_parser.add_argument('--scenario', type=str, help='命名场景')
    run_parser.add_argument('--alpha', type=float, help='检验水平')
    run_parser.add_argument('--m', type=int, help='假设个数')
    run_parser.add_argument('--m0', type=int, help='真零假设个数')
    run_parser.add_argument('--n-reps', dest='n_reps', type=int, help='蒙特卡洛重复次数')
    run_parser.add_argument('--grid-n', dest='grid_n', type=int, help='精确积分网格数')
    run_parser.add_argument('--seed', type=int, help='随机种子（必填，可来自配置文件）')
    run_parser.add_argument('--out', type=str, help='报告输出路径')
    run_parser.add_argument('--format', choices=FORMATS, help='报告格式')
    run_parser.add_argument('--timing', action='store_true', default=None, help='在报告中填写 wall_time_ms')
    run_parser.add_argument('--verbose', action='store_true', help='详细输出模式')

    subparsers.add_parser('list', help='列出命名场景')
    return parser


def run_command(args) -> int:
    if args.verbose:
        logger_manager.set_console_level(logging.DEBUG)
    try:
        file_data = load_config_file(args.config) if args.config else {}
        overrides = {key: getattr(args, key) for key in
                     ("scenario", "alpha", "m", "m0", "n_reps", "grid_n", "seed", "out", "format", "timing")}
        config = ExperimentConfig.from_sources(file_data, overrides)
        runner = ExperimentRunner(config)
        rows, status = runner.run()
    except FdrLabError as e:
        logger_manager.log_error(e.code, str(e), e.details)
        return EXIT_CODES["config_error"]
    except OSError as e:
        logger_manager.log_error("report-write", f"无法写出报告: {e}", {"path": e.filename})
        return EXIT_CODES["config_error"]
    print_summary(rows)
    return status


def main(argv=None):
    """主函数"""
    parser = create_argument_parser()
    args = parser.parse_args(argv)

    if args.command == 'list':
        print(list_scenarios())
        return EXIT_CODES["ok"]
    if args.command == 'run':
        try:
            return run_command(args)
        except KeyboardInterrupt:
            logger_manager.log_info("⛔ 收到停止信号，运行中止")
            return EXIT_CODES["config_error"]
        except Exception as e:
            logger_manager.log_error("运行", f"执行失败: {str(e)}")
            logger_manager.log_error("错误详情", traceback.format_exc())
            raise

    parser.print_help()
    return EXIT_CODES["config_error"]


if __name__ == "__main__":
    sys.exit(main())
