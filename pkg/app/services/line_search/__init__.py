"""
一维线搜索模块

CPSLSM 的二阶与一阶版本、单步黄金分割、Brent 方法与不确定区间定位
"""

from .brent import BrentResult, brent_minimize
from .golden_section import GoldenStep, golden_section_step
from .interval_locator import IntervalBracket, locate_uncertainty_interval
from .base_search import BaseLineSearch
from .second_order import SecondOrderSearch, chebyshev_newton, cpslsm_minimize
from .first_order import FirstOrderSearch, cpslsm_minimize_first_order
from .factory import BrentReferenceSearch, LineSearchFactory

__all__ = [
    'BrentResult',
    'brent_minimize',
    'GoldenStep',
    'golden_section_step',
    'IntervalBracket',
    'locate_uncertainty_interval',
    'BaseLineSearch',
    'SecondOrderSearch',
    'chebyshev_newton',
    'cpslsm_minimize',
    'FirstOrderSearch',
    'cpslsm_minimize_first_order',
    'BrentReferenceSearch',
    'LineSearchFactory',
]
