"""
报告输出
CSV 与 JSON 两种格式，列顺序固定
"""

import json
import logging
import math
from typing import List, Optional

import pandas as pd

from app.models.optimization_models import CaseResult, RunReport

logger = logging.getLogger(__name__)

CD_N_DISPLAY_CAP = 16.0
FORMATS = ('csv', 'json')


def report_columns(report: RunReport) -> List[str]:
    return ['case', 'solver', 'result', 'fval', report.metric_name, 'iterations', 'time_ms', 'status']


def _format_float(value: Optional[float]) -> str:
    if value is None:
        return ''
    return '%.17g' % value


def _format_metric(report: RunReport, value: Optional[float]) -> str:
    if value is None:
        return ''
    if report.metric_name == 'cd_n':
        if math.isinf(value) and value > 0:
            return 'exact'
        value = min(value, CD_N_DISPLAY_CAP)
    return _format_float(value)


def _format_result(row: CaseResult) -> str:
    if isinstance(row.result, list):
        return ';'.join(_format_float(v) for v in row.result)
    return _format_float(row.result)


def report_to_frame(report: RunReport) -> pd.DataFrame:
    """把报告转为字符串单元格的表格，浮点数保留17位有效数字"""
    records = [
        {
            'case': row.case,
            'solver': row.solver,
            'result': _format_result(row),
            'fval': _format_float(row.fval),
            report.metric_name: _format_metric(report, row.metric),
            'iterations': str(row.iterations),
            'time_ms': '%.3f' % row.time_ms,
            'status': row.status,
        }
        for row in report.rows
    ]
    return pd.DataFrame(records, columns=report_columns(report))


def render_report(report: RunReport, fmt: str = 'csv') -> str:
    """生成报告文本"""
    if fmt == 'csv':
        return report_to_frame(report).to_csv(index=False)
    elif fmt == 'json':
        return json.dumps(report.to_dict(), ensure_ascii=False, indent=2)
    else:
        raise ValueError(f"不支持的报告格式: {fmt}, 可选 {', '.join(FORMATS)}")


def emit_report(report: RunReport, fmt: str = 'csv', path: Optional[str] = None) -> str:
    """
    输出报告

    Args:
        report: 运行报告
        fmt: csv 或 json
        path: 输出文件路径，为空时只返回文本

    Returns:
        报告文本
    """
    text = render_report(report, fmt)
    if path:
        try:
            with open(path, 'w', encoding='utf-8', newline='') as f:
                f.write(text)
        except OSError as e:
            logger.error(f"写入报告失败 {path}: {e}")
            raise OSError(f"写入报告失败 {path}: {e}") from e
        logger.info(f"📄 报告已写入: {path} ({len(report.rows)} 行)")
    return text
