"""
基准运行服务
一维 12 个测试函数与多维 BFGS 测试的批量运行、验收判定与计时
"""

import logging
import math
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from app.models.optimization_models import (
    BfgsState,
    BfgsStatus,
    CaseResult,
    Objective1D,
    RunReport,
    SearchState,
    SearchStatus,
    TestCase1D,
    TestCaseND,
)
from app.services.line_search import LineSearchFactory
from app.services.multivariate import BfgsOptimizer
from app.services.solver_config_manager import get_solver_config_manager
from .expression_parser import parse
from .test_functions import TABLE1_CASES, TABLE2_CASES, get_case_1d, get_case_nd

logger = logging.getLogger(__name__)

T_TOL = 1e-6  # |t̃* − t*| 验收阈值
F_REL_TOL = 1e-8  # |f(t̃*) − f*| <= F_REL_TOL·(1 + |f*|)
EXACT_TOL = 1e-12  # 精确命中要求 |t̃*| <= EXACT_TOL

VARIANTS = {
    'second': 'cpslsm-2',
    'first': 'cpslsm-1',
}


def cd_n(t_star: float, t_approx: float) -> float:
    """正确位数 −log10|t* − t̃*|，误差为0时返回 +inf"""
    diff = abs(t_star - t_approx)
    if diff == 0.0:
        return math.inf
    return -math.log10(diff)


def _timed(run: Callable[[], Any], repeats: int) -> Tuple[Any, float]:
    """重复运行取耗时中位数（毫秒），返回最后一次的结果"""
    durations = []
    result = None
    for _ in range(max(1, repeats)):
        start = time.perf_counter()
        result = run()
        durations.append((time.perf_counter() - start) * 1000.0)
    return result, statistics.median(durations)


def _map_ordered(func: Callable, items: Sequence, max_workers: int) -> List:
    """在线程池中运行，结果保持输入顺序"""
    if max_workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        return list(executor.map(func, items))


def check_case_1d(case: TestCase1D, state: SearchState) -> Tuple[bool, str]:
    """一维用例验收"""
    if state.status != SearchStatus.CONVERGED or state.t_star is None:
        return False, f"未收敛: {state.status.value}"
    t = state.t_star
    f_value = case.objective(t)
    f_ok = abs(f_value - case.f_star) <= F_REL_TOL * (1.0 + abs(case.f_star))
    if case.gate_on_value_only:
        return f_ok, '' if f_ok else f"函数值误差 {abs(f_value - case.f_star):.3e}"
    if abs(t - case.t_star) > T_TOL:
        return False, f"解误差 {abs(t - case.t_star):.3e} > {T_TOL}"
    if not f_ok:
        return False, f"函数值误差 {abs(f_value - case.f_star):.3e}"
    if case.exact_hit and abs(t) > EXACT_TOL:
        return False, f"未精确命中: |t̃*|={abs(t):.3e}"
    return True, ''


def check_case_nd(case: TestCaseND, x: np.ndarray, fval: float, iterations: int,
                  status: BfgsStatus) -> Tuple[bool, str]:
    """多维用例验收"""
    if status != BfgsStatus.CONVERGED:
        return False, f"未收敛: {status.value}"
    if iterations > case.max_iterations:
        return False, f"迭代次数 {iterations} > {case.max_iterations}"
    if case.f_upper is not None:
        ok = fval <= case.f_upper
        return ok, '' if ok else f"函数值 {fval:.6e} > {case.f_upper}"
    if case.x_tol is not None:
        error = float(np.max(np.abs(x - case.x_star)))
        ok = error <= case.x_tol
        return ok, '' if ok else f"解误差 {error:.3e} > {case.x_tol}"
    ok = abs(fval - case.f_star) <= case.f_tol
    return ok, '' if ok else f"函数值误差 {abs(fval - case.f_star):.3e} > {case.f_tol}"


def _bench_settings(max_workers: Optional[int], repeats: Optional[int]) -> Tuple[int, int]:
    bench = get_solver_config_manager().get_bench_config()
    workers = max_workers if max_workers is not None else bench['max_workers']
    timing = repeats if repeats is not None else bench['timing_repeats']
    return int(workers), int(timing)


def run_table1(variant: str = 'second', overrides: Optional[Dict[str, Any]] = None,
               reference: bool = False, max_workers: Optional[int] = None,
               repeats: Optional[int] = None,
               cases: Optional[Sequence[TestCase1D]] = None) -> RunReport:
    """
    运行一维测试集

    Args:
        variant: second（Newton）或 first（割线）
        overrides: 线搜索配置覆盖项
        reference: 追加 Brent 参考求解器行（不参与验收）
    """
    if variant not in VARIANTS:
        raise ValueError(f"未知的线搜索版本: {variant}, 可选 {', '.join(VARIANTS)}")
    config = get_solver_config_manager().line_search_config('standalone', overrides)
    workers, timing = _bench_settings(max_workers, repeats)
    cases = list(cases) if cases is not None else TABLE1_CASES

    solvers = [VARIANTS[variant]] + (['brent'] if reference else [])
    jobs = [(case, solver) for case in cases for solver in solvers]

    def run_job(job: Tuple[TestCase1D, str]) -> CaseResult:
        case, solver = job
        search = LineSearchFactory.create_search(solver, config)
        a, b = case.interval
        state, elapsed = _timed(lambda: search.minimize(Objective1D(case.objective, case.name), a, b),
                                timing)
        gated = solver != 'brent'
        if state.t_star is None:
            t, fval, metric = math.nan, math.nan, None
        else:
            t = state.t_star
            fval = case.objective(t)
            metric = cd_n(case.t_star, t)
        passed, message = check_case_1d(case, state) if gated else (None, '')
        logger.info(f"{case.name} [{solver}]: t̃*={t}, cd_n={metric}, k={state.k}, "
                    f"status={state.status.value}")
        if passed is False:
            logger.warning(f"⚠️ {case.name} [{solver}] 未通过验收: {message}")
        return CaseResult(case=case.name, solver=solver, result=t, fval=fval, metric=metric,
                          iterations=state.k, time_ms=elapsed, status=state.status.value,
                          passed=passed, message=message)

    report = RunReport(suite=f"table1-{variant}", metric_name='cd_n',
                       rows=_map_ordered(run_job, jobs, workers))
    logger.info(f"📋 一维测试集完成: {report.summary()}")
    return report


def run_table2(overrides: Optional[Dict[str, Any]] = None,
               line_search_overrides: Optional[Dict[str, Any]] = None,
               reference: bool = False, max_workers: Optional[int] = None,
               repeats: Optional[int] = None,
               cases: Optional[Sequence[TestCaseND]] = None) -> RunReport:
    """运行多维 BFGS 测试集"""
    config = get_solver_config_manager().bfgs_config(overrides, line_search_overrides)
    workers, timing = _bench_settings(max_workers, repeats)
    cases = list(cases) if cases is not None else TABLE2_CASES

    solvers = ['bfgs-cpslsm'] + (['bfgs-brent'] if reference else [])
    jobs = [(case, solver) for case in cases for solver in solvers]

    def run_job(job: Tuple[TestCaseND, str]) -> CaseResult:
        case, solver = job
        kind = 'brent' if solver == 'bfgs-brent' else 2
        optimizer = BfgsOptimizer(config, LineSearchFactory.create_search(kind, config.line_search))
        state, elapsed = _timed(lambda: optimizer.minimize(case.objective, case.x0), timing)
        error = float(np.linalg.norm(case.x_star - state.x)) if case.x_star is not None else None
        gated = solver == 'bfgs-cpslsm'
        if gated:
            passed, message = check_case_nd(case, state.x, state.fval, state.k, state.status)
        else:
            passed, message = None, ''
        logger.info(f"{case.name} [{solver}]: NI={state.k}, fval={state.fval:.6e}, EN={error}, "
                    f"status={state.status.value}")
        if passed is False:
            logger.warning(f"⚠️ {case.name} [{solver}] 未通过验收: {message}")
        return CaseResult(case=case.name, solver=solver, result=state.x.tolist(), fval=state.fval,
                          metric=error, iterations=state.k, time_ms=elapsed,
                          status=state.status.value, passed=passed, message=message)

    report = RunReport(suite='table2', metric_name='EN', rows=_map_ordered(run_job, jobs, workers))
    logger.info(f"📋 多维测试集完成: {report.summary()}")
    return report


def run_minimize(fn: Optional[str] = None, expr: Optional[str] = None,
                 a: Optional[float] = None, b: Optional[float] = None,
                 order: Union[int, str] = 2,
                 overrides: Optional[Dict[str, Any]] = None) -> Tuple[RunReport, SearchState]:
    """
    单次一维极小化

    Args:
        fn: 内置测试函数名称，区间缺省时取其初始区间
        expr: 关于 t 的表达式，需要同时给出 a、b
        order: 1 / 2 或 first / second
        overrides: 线搜索配置覆盖项

    Returns:
        (单行报告, 搜索状态)；内置函数时报告 cd_n
    """
    if (fn is None) == (expr is None):
        raise ValueError("必须且只能指定 fn 或 expr 之一")
    case = None
    if fn is not None:
        case = get_case_1d(fn)
        objective, name = case.objective, case.name
        a = case.interval[0] if a is None else a
        b = case.interval[1] if b is None else b
    else:
        objective, name = parse(expr), expr
        if a is None or b is None:
            raise ValueError("表达式极小化需要同时指定 a 和 b")

    key = str(order).lower()
    variant = {'1': 'first', '2': 'second'}.get(key, key)
    if variant not in VARIANTS:
        raise ValueError(f"未知的线搜索版本: {order}, 可选 1, 2")
    config = get_solver_config_manager().line_search_config('standalone', overrides)
    search = LineSearchFactory.create_search(VARIANTS[variant], config)
    state, elapsed = _timed(lambda: search.minimize(Objective1D(objective, name), a, b), 1)

    if state.t_star is None:
        t, fval, metric = math.nan, math.nan, None
    else:
        t = state.t_star
        fval = objective(t)
        metric = cd_n(case.t_star, t) if case is not None else None
    row = CaseResult(case=name, solver=search.name, result=t, fval=fval, metric=metric,
                     iterations=state.k, time_ms=elapsed, status=state.status.value,
                     passed=state.converged)
    return RunReport(suite='minimize', metric_name='cd_n', rows=[row]), state


def run_bfgs(fn: str, x0: Optional[Sequence[float]] = None,
             overrides: Optional[Dict[str, Any]] = None,
             line_search_overrides: Optional[Dict[str, Any]] = None) -> BfgsState:
    """对多维测试函数运行一次修正 BFGS，x0 缺省时取其起点"""
    case = get_case_nd(fn)
    start = case.x0 if x0 is None else np.asarray(x0, dtype=float)
    if start.shape != (case.dimension,):
        raise ValueError(f"{case.name} 的初始点维数必须为 {case.dimension}, 实际 {start.shape}")
    config = get_solver_config_manager().bfgs_config(overrides, line_search_overrides)
    optimizer = BfgsOptimizer(config, LineSearchFactory.create_search(2, config.line_search))
    return optimizer.minimize(case.objective, start)


def plot_data(name: Optional[str] = None, expr: Optional[str] = None,
              interval: Optional[Tuple[float, float]] = None,
              points: Optional[int] = None) -> pd.DataFrame:
    """
    在区间上等距采样，供外部绘图使用

    Returns:
        含 t、f 两列的 DataFrame
    """
    if (name is None) == (expr is None):
        raise ValueError("必须且只能指定 name 或 expr 之一")
    if name is not None:
        case = get_case_1d(name)
        objective = case.objective
        interval = interval or case.interval
    else:
        objective = parse(expr)
        if interval is None:
            raise ValueError("表达式采样需要指定区间")
    a, b = interval
    if not a < b:
        raise ValueError(f"采样区间无效: a={a} 必须小于 b={b}")
    points = points or get_solver_config_manager().get_bench_config()['plot_points']
    if points < 2:
        raise ValueError(f"采样点数必须 >= 2: {points}")
    ts = np.linspace(a, b, points)
    return pd.DataFrame({'t': ts, 'f': [objective(float(t)) for t in ts]})
