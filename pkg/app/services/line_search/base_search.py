"""
CPSLSM 线搜索基类

外层循环在此实现：不确定区间定位、5点 CGL 插值、导数系数、
A1..A4 组装与 Case 1/2/3 分派。内层的局部细化（Newton 或割线）
由子类实现。
"""

import logging
import math
from abc import ABC, abstractmethod
from typing import Callable, Optional, Sequence, Union

import numpy as np

from app.models.optimization_models import (
    EPS_MACH,
    CubicDerivative,
    LineSearchConfig,
    Objective1D,
    RootClass,
    SearchState,
    SearchStatus,
)
from app.services.cubic_solver import assemble_cubic, classify_roots, scale_coeffs, viete_roots
from app.services.spectral.chebyshev_core import cgl_nodes, derivative_coeffs, discrete_transform
from app.services.spectral.differentiation import apply, row_diff_matrix
from .brent import brent_minimize
from .golden_section import GoldenStep, golden_section_step
from .interval_locator import locate_uncertainty_interval

logger = logging.getLogger(__name__)

Objective = Union[Objective1D, Callable[[float], float]]


def grid_samples(f: Callable[[float], float], state: SearchState, n: int,
                 f_max: float) -> np.ndarray:
    """
    在当前区间的 n 阶 CGL 节点上采样

    max|f_j| > f_max 时整体除以该最大值。
    """
    nodes = cgl_nodes(n).nodes
    samples = np.array([f(state.to_physical(float(x))) for x in nodes])
    largest = float(np.max(np.abs(samples)))
    if largest > f_max:
        samples = samples / largest
    return samples


def row_derivative(samples: Sequence[float], x: float, order: int) -> float:
    """单行算子给出的插值多项式在平移点 x 处的导数"""
    op = row_diff_matrix(len(samples) - 1, order, x)
    return float(apply(op, samples))


def clip_unit(x: float) -> float:
    return min(1.0, max(-1.0, x))


class BaseLineSearch(ABC):
    """CPSLSM 线搜索基类"""

    name = 'base'

    def __init__(self, config: Optional[LineSearchConfig] = None):
        self.config = config or LineSearchConfig()

    def minimize(self, f: Objective, a: float, b: float) -> SearchState:
        """
        在 [a, b] 附近求 f 的局部极小

        Returns:
            SearchState，status 给出终止原因
        """
        objective = f if isinstance(f, Objective1D) else Objective1D(f)
        start_evaluations = objective.evaluations
        state = SearchState(a=a, b=b, trace_cap=max(self.config.k_max, 1))

        if self.config.locate_interval:
            bracket = locate_uncertainty_interval(objective, a, b, self.config)
            if not bracket.found:
                state.status = SearchStatus.BRACKET_FAILED
                state.evaluations = objective.evaluations - start_evaluations
                logger.warning(f"⚠️ {self.name} 线搜索未能定位不确定区间, 初始区间 [{a}, {b}]")
                return state
            state.set_interval(bracket.a, bracket.b)
            state.bracket = (bracket.a, bracket.b)
            state.record('bracket')

        self._run(objective, state)
        state.evaluations = objective.evaluations - start_evaluations
        logger.info(f"{self.name} 线搜索结束: status={state.status.value}, t*={state.t_star}, "
                    f"k={state.k}, 函数调用={state.evaluations}")
        return state

    def _run(self, f: Objective1D, state: SearchState):
        config = self.config
        while state.k <= config.k_max and state.status == SearchStatus.RUNNING:
            self._outer_iteration(f, state)

        if state.status == SearchStatus.RUNNING:
            state.status = SearchStatus.MAX_ITERATIONS
            if state.t_star is None:
                state.t_star = (state.a + state.b) / 2.0
            state.f_star = f(state.t_star)
            logger.warning(f"线搜索超过最大迭代次数 k_max={config.k_max}, 返回当前迭代点 {state.t_star}")

    def _outer_iteration(self, f: Objective1D, state: SearchState):
        config = self.config
        samples = grid_samples(f, state, 4, config.f_max)
        cubic = assemble_cubic(derivative_coeffs(discrete_transform(samples, (state.a, state.b))))
        a1, a2, a3, a4 = cubic.coeffs

        if abs(a1) < config.eps_c and abs(a2) < config.eps_c:
            # 导数插值多项式为线性
            self._linear_case(f, state, a3, a4)
            return

        if abs(a1) < config.eps_c:
            state.record('quadratic')
            self._golden_then_refine(f, state)
            return

        # 分支已按原始 A1 判定，缩放后的舍入不再重新判定
        roots = viete_roots(scale_coeffs(cubic), eps_c=config.eps_c, leading_checked=True)
        if classify_roots(roots) == RootClass.FALLBACK:
            state.record('cubic_fallback')
            self._golden_then_refine(f, state)
            return
        self._roots_then_refine(f, state, roots)

    def _linear_case(self, f: Objective1D, state: SearchState, a3: float, a4: float):
        """Case 1：根 −A4/A3 落在 [-1,1] 内时直接采用，否则黄金分割后细化"""
        if a3 != 0.0:
            root = -a4 / a3
            if abs(root) <= 1.0:
                state.record('linear_root', root)
                self._accept_linear_root(f, state, root)
                return
        self._golden_then_refine(f, state)

    def _accept_linear_root(self, f: Objective1D, state: SearchState, root: float):
        """接受线性导数的根，并与两端点比较取较优者"""
        t = state.to_physical(root)
        candidates = [(f(t), t), (f(state.a), state.a), (f(state.b), state.b)]
        f_best, t_best = min(candidates, key=lambda item: item[0])
        if t_best != t:
            logger.debug(f"线性根 {t:.12g} 不优于端点, 改取 {t_best:.12g}")
        self._converge(state, t_best, f_best)

    def _golden_step(self, f: Objective1D, state: SearchState) -> Optional[GoldenStep]:
        """执行一步黄金分割；区间足够小时直接收敛并返回 None"""
        state.k += 1
        step = golden_section_step(f, state.a, state.b, eps=self.config.eps)
        state.record('golden', state.to_translated(step.t_best))
        if step.converged:
            self._converge(state, step.t_best, f(step.t_best))
            return None
        state.set_interval(step.a, step.b)
        state.t_star = step.t_best
        return step

    def _golden_then_refine(self, f: Objective1D, state: SearchState):
        step = self._golden_step(f, state)
        if step is not None:
            self._refine_after_golden(f, state, step)

    def _roots_then_refine(self, f: Objective1D, state: SearchState, roots: CubicDerivative):
        """
        Subcase II：三个互异实根都在 [-1,1] 内

        按真实函数值给根排序，交给子类细化；未收敛时用次优根收缩区间。
        """
        xs = [clip_unit(x) for x in roots.real_roots]
        values = [f(state.to_physical(x)) for x in xs]
        order = sorted(range(3), key=lambda i: values[i])
        best, second = order[0], order[1]
        state.record('cubic_roots', xs[best])

        self._refine_from_roots(f, state, xs, best)
        if state.status != SearchStatus.RUNNING:
            return

        x_best, x_second = xs[best], xs[second]
        cut = state.to_physical(x_second)
        if x_best > x_second and cut < state.b:
            state.set_interval(cut, state.b)
        elif x_best < x_second and cut > state.a:
            state.set_interval(state.a, cut)
        state.record('shrink', x_second)
        state.k += 1

    def _brent_fallback(self, f: Objective1D, state: SearchState, lo: float, hi: float):
        """导数都过小时在半区间上用 Brent 方法收尾"""
        if not lo < hi:
            lo, hi = state.a, state.b
        result = brent_minimize(f, lo, hi, tol=self.config.brent_tol,
                                cap=self.config.brent_max_iter)
        state.record('brent', state.to_translated(result.t))
        state.t_star = result.t
        state.f_star = result.f
        state.status = SearchStatus.CONVERGED if result.converged else SearchStatus.MAX_ITERATIONS

    def _converge(self, state: SearchState, t: float, value: float):
        state.t_star = t
        state.f_star = value
        state.status = SearchStatus.CONVERGED

    def _note_iterate(self, state: SearchState, x: float):
        state.x1 = x
        state.t_star = state.to_physical(x)

    @staticmethod
    def _step_tolerance(state: SearchState, eps: float) -> float:
        """平移变量上的停止容差 ε_x = 2ε/(b−a)"""
        return 2.0 * eps / state.e_minus

    @staticmethod
    def _curvature_ok(d2: float) -> bool:
        return d2 > EPS_MACH and math.isfinite(d2)

    @abstractmethod
    def _refine_after_golden(self, f: Objective1D, state: SearchState, step: GoldenStep):
        """黄金分割之后的局部细化"""
        pass

    @abstractmethod
    def _refine_from_roots(self, f: Objective1D, state: SearchState, roots: Sequence[float],
                           best: int):
        """从最优根出发的局部细化，roots 按降序排列"""
        pass
