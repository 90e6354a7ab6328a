"""
只使用一阶信息的 CPSLSM（割线细化）
"""

import logging
from typing import Optional, Sequence

import numpy as np

from app.models.optimization_models import EPS_MACH, LineSearchConfig, Objective1D, SearchState
from .base_search import BaseLineSearch, Objective, clip_unit, grid_samples, row_derivative
from .golden_section import RHO_2, GoldenStep

logger = logging.getLogger(__name__)


def companion_point(roots: Sequence[float], best: int) -> float:
    """
    Subcase II 中割线法需要的第二个点

    roots 降序排列，best 为最优根索引；新点位于最优根与相邻根之间，
    距最优根 1/ρ² 的位置。
    """
    x_best = roots[best]
    if best == 0:
        return x_best - (x_best - roots[1]) / RHO_2
    if best == 1:
        return x_best - (x_best - roots[2]) / RHO_2
    return x_best + (roots[1] - x_best) / RHO_2


class FirstOrderSearch(BaseLineSearch):
    """一阶 CPSLSM"""

    name = 'cpslsm-1'

    def secant(self, f: Objective, state: SearchState,
               samples: Optional[np.ndarray] = None) -> SearchState:
        """
        割线迭代，从 state.x1、state.x2 出发

        s1 = (x2 − x1)/(D2 − D1)，s2 = −s1·D2，x3 = x2 + s2。
        s1 <= ε_mach 时把控制权交回外层循环。
        """
        config = self.config
        if samples is None:
            samples = grid_samples(f, state, config.m_grid, config.f_max)
        x1, x2 = state.x1, state.x2
        d_prev = row_derivative(samples, x1, 1)
        d_curr = row_derivative(samples, x2, 1)
        eps_x = self._step_tolerance(state, config.eps)

        while state.k <= config.k_max:
            denominator = d_curr - d_prev
            if denominator == 0.0:
                state.record('secant_flat', x2)
                return state
            s1 = (x2 - x1) / denominator
            if not s1 > EPS_MACH:
                state.record('secant_skipped', x2)
                return state
            s2 = -s1 * d_curr
            x3 = x2 + s2
            state.k += 1
            state.x3 = x3

            if abs(x3 - x2) <= eps_x:
                t = state.to_physical(clip_unit(x3))
                state.record('secant_converged', x3)
                self._converge(state, t, f(t))
                return state
            if abs(x3) > 1.0:
                state.record('secant_exit', x3)
                return state
            if abs(s2) < config.eps_d and abs(1.0 / s1) < config.eps_d:
                pivot = state.to_physical(x2)
                if x3 > x2:
                    self._brent_fallback(f, state, pivot, state.b)
                else:
                    self._brent_fallback(f, state, state.a, pivot)
                return state

            x1, x2 = x2, x3
            state.x1, state.x2 = x1, x2
            self._note_iterate(state, x2)
            state.record('secant', x2)
            d_prev, d_curr = d_curr, row_derivative(samples, x2, 1)
            logger.debug(f"割线 k={state.k}: x={x2:.15g}, D1={d_curr:.6e}, s1={s1:.6e}")
        return state

    def _note_iterate(self, state: SearchState, x: float):
        state.t_star = state.to_physical(x)

    def _linear_case(self, f: Objective1D, state: SearchState, a3: float, a4: float):
        """没有二阶信息时 Case 1 不直接采用线性根，先黄金分割再割线"""
        state.record('linear')
        self._golden_then_refine(f, state)

    def _refine_after_golden(self, f: Objective1D, state: SearchState, step: GoldenStep):
        state.x1 = clip_unit(state.to_translated(step.t_second))
        state.x2 = clip_unit(state.to_translated(step.t_best))
        self.secant(f, state)

    def _refine_from_roots(self, f: Objective1D, state: SearchState, roots: Sequence[float],
                           best: int):
        state.x1 = companion_point(roots, best)
        state.x2 = roots[best]
        self._note_iterate(state, state.x2)
        self.secant(f, state)


def cpslsm_minimize_first_order(f: Objective, a: float, b: float,
                                config: Optional[LineSearchConfig] = None) -> SearchState:
    """一阶 CPSLSM 入口"""
    return FirstOrderSearch(config).minimize(f, a, b)
