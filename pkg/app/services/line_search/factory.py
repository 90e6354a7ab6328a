"""
线搜索工厂

根据求解器名称创建对应的线搜索实例
"""

import logging
from typing import Optional, Union

from app.models.optimization_models import LineSearchConfig, Objective1D, SearchState, SearchStatus
from .base_search import BaseLineSearch, Objective
from .brent import brent_minimize
from .first_order import FirstOrderSearch
from .golden_section import GoldenStep
from .second_order import SecondOrderSearch

logger = logging.getLogger(__name__)


class BrentReferenceSearch(BaseLineSearch):
    """参考求解器：直接在初始区间上运行 Brent 方法"""

    name = 'brent'

    def minimize(self, f: Objective, a: float, b: float) -> SearchState:
        objective = f if isinstance(f, Objective1D) else Objective1D(f)
        start_evaluations = objective.evaluations
        state = SearchState(a=a, b=b)
        result = brent_minimize(objective, a, b, tol=self.config.brent_tol,
                                cap=self.config.brent_max_iter)
        state.k = result.iterations
        state.t_star = result.t
        state.f_star = result.f
        state.status = SearchStatus.CONVERGED if result.converged else SearchStatus.MAX_ITERATIONS
        state.evaluations = objective.evaluations - start_evaluations
        state.record('brent', state.to_translated(result.t))
        return state

    def _refine_after_golden(self, f: Objective1D, state: SearchState, step: GoldenStep):
        raise NotImplementedError("Brent 参考求解器不使用黄金分割细化")

    def _refine_from_roots(self, f, state, roots, best):
        raise NotImplementedError("Brent 参考求解器不使用三次根细化")


class LineSearchFactory:
    """线搜索工厂"""

    @staticmethod
    def create_search(order: Union[int, str],
                      config: Optional[LineSearchConfig] = None) -> BaseLineSearch:
        """
        创建线搜索实例

        Args:
            order: 2 / 'second' 为 Newton 版本，1 / 'first' 为割线版本，
                   'brent' 为参考求解器
        """
        key = str(order).lower()
        if key in ('2', 'second', 'cpslsm-2'):
            return SecondOrderSearch(config)
        elif key in ('1', 'first', 'cpslsm-1'):
            return FirstOrderSearch(config)
        elif key in ('brent', 'reference'):
            return BrentReferenceSearch(config)
        else:
            logger.error(f"未知的线搜索类型: {order}")
            raise ValueError(f"未知的线搜索类型: {order}, 可选 1, 2, brent")
