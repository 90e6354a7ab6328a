"""
修正 BFGS 服务
Sherman-Morrison 逆 Hessian 更新、方向缩放、中心差分梯度，
步长由 CPSLSM 在 [ε̂, b] 上只向右扩展地搜索
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Tuple

import numpy as np

from app.models.optimization_models import (
    BfgsConfig,
    BfgsIteration,
    BfgsState,
    BfgsStatus,
    UpdateStatus,
)
from app.services.line_search import BaseLineSearch, LineSearchFactory

logger = logging.getLogger(__name__)

VectorObjective = Callable[[np.ndarray], float]
Gradient = Callable[[np.ndarray], np.ndarray]


def central_diff_gradient(f: VectorObjective, x: np.ndarray, h: float = 1e-4,
                          max_workers: Optional[int] = None) -> np.ndarray:
    """
    中心差分梯度 (f(x + h e_i) − f(x − h e_i)) / (2h)

    目标函数带 parallel_safe = True 属性时各分量在线程池中并行求值。
    """
    if not h > 0:
        raise ValueError(f"差分步长必须为正数: h={h}")
    x = np.asarray(x, dtype=float)

    def component(i: int) -> float:
        step = np.zeros_like(x)
        step[i] = h
        return (f(x + step) - f(x - step)) / (2.0 * h)

    if getattr(f, 'parallel_safe', False) and x.size > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            values = list(executor.map(component, range(x.size)))
    else:
        values = [component(i) for i in range(x.size)]
    return np.array(values, dtype=float)


def inverse_update(binv: np.ndarray, s: np.ndarray, y: np.ndarray,
                   curvature_tol: float = 1e-14) -> Tuple[np.ndarray, UpdateStatus]:
    """
    逆 Hessian 的 BFGS 更新

    B⁺ = B + (sᵀy + yᵀBy)(ssᵀ)/(sᵀy)² − (Bysᵀ + syᵀB)/(sᵀy)，
    |sᵀy| < curvature_tol 时跳过更新。
    """
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    t = float(s @ y)
    if abs(t) < curvature_tol:
        logger.debug(f"曲率条件不满足 |sᵀy|={abs(t):.3e}, 跳过逆Hessian更新")
        return binv, UpdateStatus.SKIPPED
    t2 = binv @ np.outer(y, s)
    updated = binv + (t + y @ binv @ y) * np.outer(s, s) / t ** 2 - (t2 + t2.T) / t
    return updated, UpdateStatus.APPLIED


def _scale_direction(p: np.ndarray, p_max: float) -> np.ndarray:
    norm = float(np.linalg.norm(p))
    if norm > p_max:
        return p / norm
    return p


class BfgsOptimizer:
    """修正 BFGS 求解器"""

    def __init__(self, config: Optional[BfgsConfig] = None,
                 line_search: Optional[BaseLineSearch] = None,
                 gradient: Optional[Gradient] = None):
        self.config = config or BfgsConfig()
        self.line_search = line_search or LineSearchFactory.create_search(2, self.config.line_search)
        self._gradient = gradient

    def gradient(self, f: VectorObjective, x: np.ndarray) -> np.ndarray:
        if self._gradient is not None:
            return np.asarray(self._gradient(x), dtype=float)
        return central_diff_gradient(f, x, self.config.grad_step)

    def _direction(self, binv: np.ndarray, g: np.ndarray) -> np.ndarray:
        return _scale_direction(-binv @ g, self.config.p_max)

    def minimize(self, f: VectorObjective, x0) -> BfgsState:
        """
        从 x0 出发求多元函数的局部极小

        Returns:
            BfgsState，status 为 CONVERGED 或 FAILURE
        """
        config = self.config
        x = np.array(x0, dtype=float)
        if x.ndim != 1 or not np.all(np.isfinite(x)):
            raise ValueError(f"初始点必须是有限的一维向量: {x0}")
        binv = np.eye(x.size) if config.b0 is None else np.array(config.b0, dtype=float)
        if binv.shape != (x.size, x.size):
            raise ValueError(f"初始逆Hessian维数 {binv.shape} 与变量维数 {x.size} 不匹配")

        g = self.gradient(f, x)
        state = BfgsState(x=x, binv=binv, g=g, fval=float(f(x)))
        if np.linalg.norm(g) < config.grad_tol:
            state.status = BfgsStatus.CONVERGED
            return state
        state.p = self._direction(binv, g)

        while state.k < config.k_max:
            p = state.p
            if float(p @ state.g) >= 0.0:
                # 非下降方向，重置为最速下降
                logger.debug(f"BFGS k={state.k}: 方向非下降, 重置逆Hessian")
                state.binv = np.eye(x.size)
                p = state.p = self._direction(state.binv, state.g)

            x_k = state.x
            search = self.line_search.minimize(lambda alpha: f(x_k + alpha * p),
                                               config.eps_hat, config.b_step)
            if search.t_star is None:
                logger.error(f"BFGS k={state.k}: 步长搜索失败 ({search.status.value})")
                state.status = BfgsStatus.FAILURE
                return state

            alpha = float(search.t_star)
            s = alpha * p
            x_next = x_k + s
            g_next = self.gradient(f, x_next)
            state.k += 1
            state.s = s
            state.y = g_next - state.g

            grad_norm = float(np.linalg.norm(g_next))
            step_norm = float(np.linalg.norm(s))
            f_next = float(f(x_next))
            # 相邻函数值之差落在舍入噪声内视为停滞
            stalled = config.f_rel_tol > 0 and abs(state.fval - f_next) <= config.f_rel_tol * abs(f_next)
            done = grad_norm < config.grad_tol or step_norm < config.step_tol or stalled
            if done:
                update = UpdateStatus.SKIPPED
            else:
                state.binv, update = inverse_update(state.binv, s, state.y, config.curvature_tol)
            state.x, state.g, state.fval = x_next, g_next, f_next
            state.history.append(BfgsIteration(k=state.k, fval=state.fval, grad_norm=grad_norm,
                                               alpha=alpha, direction_norm=float(np.linalg.norm(p)),
                                               update=update))
            logger.debug(f"BFGS k={state.k}: f={state.fval:.15g}, |g|={grad_norm:.3e}, α={alpha:.6e}")

            if done:
                state.status = BfgsStatus.CONVERGED
                if stalled and grad_norm >= config.grad_tol and step_norm >= config.step_tol:
                    logger.info(f"✅ BFGS 收敛: 函数值已达舍入精度, k={state.k}, f={state.fval:.15g}")
                else:
                    logger.info(f"✅ BFGS 收敛: k={state.k}, f={state.fval:.15g}")
                return state
            state.p = self._direction(state.binv, state.g)

        state.status = BfgsStatus.FAILURE
        logger.warning(f"BFGS 超过最大迭代次数 k_max={config.k_max}, f={state.fval:.15g}")
        return state


def bfgs_minimize(f: VectorObjective, x0, config: Optional[BfgsConfig] = None,
                  line_search: Optional[BaseLineSearch] = None,
                  gradient: Optional[Gradient] = None) -> BfgsState:
    """修正 BFGS 入口"""
    return BfgsOptimizer(config, line_search, gradient).minimize(f, x0)
