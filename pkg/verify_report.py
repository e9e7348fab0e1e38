#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
报告离线核验脚本 - 重新检查 fdrlab run 写出的报告文件
"""

import argparse
import sys

import numpy as np

from cli.report import read_report
from config import EXIT_CODES, REPORT_SCHEMA


def verify_schema(frame):
    """验证表头与固定列顺序一致"""
    print("=== 表头验证 ===")
    columns = list(frame.columns)
    expected = REPORT_SCHEMA["columns"]
    if columns != expected:
        missing = [c for c in expected if c not in columns]
        extra = [c for c in columns if c not in expected]
        print(f"表头不一致: 缺少 {missing}, 多出 {extra}")
        return False
    print(f"表头版本 {REPORT_SCHEMA['version']}，共 {len(columns)} 列")
    return True


def verify_ranges(frame):
    """验证估计值位于 [0,1] 且 fdr_hat ⩽ fwer_hat"""
    print("\n=== 取值范围验证 ===")
    fdr = frame["fdr_hat"].to_numpy(dtype=float)
    fwer = frame["fwer_hat"].to_numpy(dtype=float)
    out_of_range = int(np.sum((fdr < 0) | (fdr > 1) | (fwer < 0) | (fwer > 1)))
    unordered = int(np.sum(fdr > fwer))
    print(f"越界的估计值: {out_of_range} 行")
    print(f"fdr_hat > fwer_hat: {unordered} 行")
    return out_of_range == 0 and unordered == 0


def verify_bounds(frame):
    """验证每一行的界检验均已通过"""
    print("\n=== 界检验验证 ===")
    failed = frame.loc[~frame["bound_satisfied"].astype(bool), "scenario"].tolist()
    print(f"未通过的界检验: {len(failed)} 行")
    if failed:
        print(f"未通过的场景示例: {failed[:5]}")
    return not failed


def verify_oracle(frame, tolerance):
    """验证有精确值的行与蒙特卡洛估计在 4·SE + 容差内一致"""
    print("\n=== 精确积分一致性验证 ===")
    oracle = frame["oracle_value"].astype(float)
    rows = frame[oracle.notna()]
    if rows.empty:
        print("报告中没有精确积分结果")
        return True
    gap = (rows["fdr_hat"].astype(float) - rows["oracle_value"].astype(float)).abs()
    allowed = 4.0 * rows["se_fdr"].astype(float) + tolerance
    mismatched = int((gap > allowed).sum())
    print(f"带精确值的行: {len(rows)}，不一致: {mismatched}")
    return mismatched == 0


def main(argv=None):
    """主验证函数"""
    parser = argparse.ArgumentParser(prog="fdrlab-verify", description="核验 fdrlab 报告文件")
    parser.add_argument("report", help="报告文件路径 (.csv 或 .json)")
    parser.add_argument("--oracle-tolerance", type=float, default=1e-3, help="精确积分的附加容差")
    args = parser.parse_args(argv)

    print("🔍 开始报告核验")
    print("=" * 60)

    try:
        frame = read_report(args.report)
    except (OSError, ValueError) as e:
        print(f"❌ 无法读取报告: {e}")
        return EXIT_CODES["config_error"]

    results = [("表头", verify_schema(frame))]
    if results[0][1]:
        results.append(("取值范围", verify_ranges(frame)))
        results.append(("界检验", verify_bounds(frame)))
        results.append(("精确积分一致性", verify_oracle(frame, args.oracle_tolerance)))

    print("\n" + "=" * 60)
    print("🏁 核验结果总结")
    print("=" * 60)
    all_passed = True
    for name, passed in results:
        status = "✅ 通过" if passed else "❌ 失败"
        print(f"{name:20} : {status}")
        all_passed = all_passed and passed

    overall_status = "🎉 报告核验全部通过。" if all_passed else "⚠️  报告存在未通过的检查。"
    print(f"\n总体状态: {overall_status}")
    return EXIT_CODES["ok"] if all_passed else EXIT_CODES["bound_violation"]


if __name__ == "__main__":
    sys.exit(main())
