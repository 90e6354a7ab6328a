"""
使用二阶信息的 CPSLSM（Chebyshev-Newton 细化）
"""

import logging
from typing import Optional, Sequence

import numpy as np

from app.models.optimization_models import LineSearchConfig, Objective1D, SearchState
from .base_search import BaseLineSearch, Objective, clip_unit, grid_samples, row_derivative
from .golden_section import GoldenStep

logger = logging.getLogger(__name__)


class SecondOrderSearch(BaseLineSearch):
    """二阶 CPSLSM"""

    name = 'cpslsm-2'

    def newton(self, f: Objective, state: SearchState,
               samples: Optional[np.ndarray] = None) -> SearchState:
        """
        Chebyshev-Newton 迭代

        从 state.x1 出发，用行微分算子给出的一、二阶导数做 Newton 步。
        收敛或转入 Brent 时设置终止状态；跳出 [-1,1] 或曲率失效时
        status 保持 RUNNING，由外层循环继续。
        """
        config = self.config
        if samples is None:
            samples = grid_samples(f, state, config.m_grid, config.f_max)
        x1 = state.x1
        d1 = row_derivative(samples, x1, 1)
        d2 = row_derivative(samples, x1, 2)
        if not self._curvature_ok(d2):
            state.record('newton_skipped', x1)
            return state

        eps_x = self._step_tolerance(state, config.eps)
        while state.k <= config.k_max:
            x2 = x1 - d1 / d2
            state.k += 1
            state.x2 = x2

            if abs(x2 - x1) <= eps_x:
                t = state.to_physical(clip_unit(x2))
                state.record('newton_converged', x2)
                self._converge(state, t, f(t))
                return state
            if abs(x2) > 1.0:
                state.record('newton_exit', x2)
                return state
            if abs(d1) < config.eps_d and abs(d2) < config.eps_d:
                pivot = state.to_physical(x1)
                if x2 > x1:
                    self._brent_fallback(f, state, pivot, state.b)
                else:
                    self._brent_fallback(f, state, state.a, pivot)
                return state

            x1 = x2
            self._note_iterate(state, x1)
            state.record('newton', x1)
            d1 = row_derivative(samples, x1, 1)
            d2 = row_derivative(samples, x1, 2)
            logger.debug(f"Newton k={state.k}: x={x1:.15g}, D1={d1:.6e}, D2={d2:.6e}")
            if not self._curvature_ok(d2):
                state.record('newton_curvature_lost', x1)
                return state
        return state

    def _refine_after_golden(self, f: Objective1D, state: SearchState, step: GoldenStep):
        self._note_iterate(state, clip_unit(state.to_translated(step.t_best)))
        self.newton(f, state)

    def _refine_from_roots(self, f: Objective1D, state: SearchState, roots: Sequence[float],
                           best: int):
        self._note_iterate(state, roots[best])
        self.newton(f, state)


def chebyshev_newton(f: Objective, state: SearchState,
                     config: Optional[LineSearchConfig] = None) -> SearchState:
    """对已设置 x1 的状态单独运行 Newton 细化"""
    return SecondOrderSearch(config).newton(f, state)


def cpslsm_minimize(f: Objective, a: float, b: float,
                    config: Optional[LineSearchConfig] = None) -> SearchState:
    """二阶 CPSLSM 入口"""
    return SecondOrderSearch(config).minimize(f, a, b)
