"""
基准测试模块

内置测试函数、表达式解析、批量运行与报告输出
"""

from .expression_parser import ExpressionSyntaxError, parse, parse_expression
from .test_functions import TABLE1_CASES, TABLE2_CASES, get_case_1d, get_case_nd, list_cases
from .bench_service import cd_n, plot_data, run_bfgs, run_minimize, run_table1, run_table2
from .report_service import emit_report, render_report, report_to_frame

__all__ = [
    'ExpressionSyntaxError',
    'parse',
    'parse_expression',
    'TABLE1_CASES',
    'TABLE2_CASES',
    'get_case_1d',
    'get_case_nd',
    'list_cases',
    'cd_n',
    'plot_data',
    'run_bfgs',
    'run_minimize',
    'run_table1',
    'run_table2',
    'emit_report',
    'render_report',
    'report_to_frame',
]
