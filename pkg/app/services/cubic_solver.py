"""
三次导数多项式求解服务
组装 A1..A4、系数缩放、Viète 三角法求根、根分类与条件数
"""

import logging
import math
from dataclasses import replace
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from app.models.optimization_models import ChebSeries, CubicDerivative, RootClass

logger = logging.getLogger(__name__)

EPS_C = 1e-15  # 线性/二次分支的截断阈值
TOL_SEP = 1e-10  # 根互异的判定容差
UNIT_TOL = 1e-12  # |x̄| <= 1 的判定余量
ARCCOS_CLAMP = 1e-12  # arccos 参数越界不超过该值时截断
NEAR_MULTIPLE_TOL = 1e-14
IMAG_TOL = 1e-14


def assemble_cubic(deriv_coeffs: ChebSeries) -> CubicDerivative:
    """由导数的 Chebyshev 系数得到单项式系数 A1..A4"""
    if len(deriv_coeffs.coeffs) != 5:
        raise ValueError(f"需要恰好5个导数系数, 实际 {len(deriv_coeffs.coeffs)}")
    d = deriv_coeffs.coeffs
    coeffs = (4.0 * d[3], 2.0 * d[2], d[1] - 3.0 * d[3], d[0] - d[2])
    return CubicDerivative(coeffs=coeffs)


def scale_coeffs(c: CubicDerivative) -> CubicDerivative:
    """max|A_j| > 1 时整体除以最大值"""
    largest = max(abs(a) for a in c.coeffs)
    if largest <= 1.0:
        return c
    coeffs = tuple(a / largest for a in c.coeffs)
    return replace(c, coeffs=coeffs, scaled=True, scale=c.scale * largest)


def _cardano(p: float, q: float) -> Tuple[List[complex], bool]:
    """判别式非负时的一实两复根"""
    disc = max(q * q / 4.0 + p ** 3 / 27.0, 0.0)
    root = math.sqrt(disc)
    u = float(np.cbrt(-q / 2.0 + root))
    v = float(np.cbrt(-q / 2.0 - root))
    real = u + v
    imag = math.sqrt(3.0) / 2.0 * (u - v)
    if abs(imag) <= IMAG_TOL * max(1.0, abs(real)):
        return [complex(real), complex(-real / 2.0), complex(-real / 2.0)], False
    return [complex(real), complex(-real / 2.0, imag), complex(-real / 2.0, -imag)], True


def _viete_c(p: float, q: float) -> float:
    """C(p, q) = 2√(−p/3)·cos(arccos((3q/(2p))√(−3/p))/3)"""
    arg = 3.0 * q / (2.0 * p) * math.sqrt(-3.0 / p)
    arg = min(1.0, max(-1.0, arg))
    return 2.0 * math.sqrt(-p / 3.0) * math.cos(math.acos(arg) / 3.0)


def viete_roots(c: CubicDerivative, eps_c: float = EPS_C,
                leading_checked: bool = False) -> CubicDerivative:
    """
    Viète 三角法求三次方程的根

    eps_c 作用于未缩放的首项系数 A1·scale。三个实根时按降序返回，
    否则由 Cardano 公式给出含复数的根并设置 has_complex。
    leading_checked=True 表示调用方已按 eps_c 判定过分支，此处只拒绝 A1=0。
    """
    a1, a2, a3, a4 = c.coeffs
    if a1 == 0.0 or (not leading_checked and abs(a1) * c.scale < eps_c):
        raise ValueError(f"首项系数过小 |A1|={abs(a1) * c.scale:.3e} < {eps_c}, 应使用线性/二次分支")
    b2, b3, b4 = a2 / a1, a3 / a1, a4 / a1
    p = (3.0 * b3 - b2 * b2) / 3.0
    q = (2.0 * b2 ** 3 - 9.0 * b2 * b3 + 27.0 * b4) / 27.0
    shift = -b2 / 3.0

    three_real = False
    if p < 0.0:
        arg = 3.0 * q / (2.0 * p) * math.sqrt(-3.0 / p)
        three_real = abs(arg) <= 1.0 + ARCCOS_CLAMP

    if three_real:
        t1 = _viete_c(p, q)
        t3 = -_viete_c(p, -q)
        t2 = -t1 - t3
        roots = sorted((t1 + shift, t2 + shift, t3 + shift), reverse=True)
        result = [complex(r) for r in roots]
        has_complex = False
    else:
        depressed, has_complex = _cardano(p, q)
        result = [r + shift for r in depressed]
        result.sort(key=lambda r: r.real, reverse=True)
    logger.debug(f"三次方程求根: p={p:.6e}, q={q:.6e}, roots={result}")
    return replace(c, roots=tuple(result), p=p, q=q, has_complex=has_complex)


def classify_roots(c: CubicDerivative, tol_sep: float = TOL_SEP) -> RootClass:
    """三个互异实根且都在 [-1,1] 内时为 Subcase II，否则回退"""
    if len(c.roots) != 3 or c.has_complex:
        return RootClass.FALLBACK
    if any(r.imag != 0.0 for r in c.roots):
        return RootClass.FALLBACK
    x1, x2, x3 = (r.real for r in c.roots)
    if not (x1 - x2 > tol_sep and x2 - x3 > tol_sep):
        return RootClass.FALLBACK
    if any(abs(x) > 1.0 + UNIT_TOL for x in (x1, x2, x3)):
        return RootClass.FALLBACK
    return RootClass.ALL_REAL_DISTINCT_IN_UNIT


def _root_denominator(c: CubicDerivative, i: int) -> Tuple[float, float]:
    if not 0 <= i < len(c.roots):
        raise ValueError(f"根索引越界: i={i}")
    root = c.roots[i]
    if root.imag != 0.0:
        raise ValueError(f"条件数只对实根定义: x̄_{i}={root}")
    x = root.real
    a1, a2 = c.coeffs[0], c.coeffs[1]
    denominator = 3.0 * a1 * x + a2
    if abs(denominator) < NEAR_MULTIPLE_TOL:
        raise ValueError(f"近重根, 条件数无界: |3A1·x̄+A2|={abs(denominator):.3e}")
    return x, denominator


def condition_number(c: CubicDerivative, i: int, j: int) -> float:
    """
    根 x̄_i 对系数 A_j 的相对条件数

    Args:
        c: 已求根的三次多项式
        i: 根索引（0 起）
        j: 系数索引 1..4

    Returns:
        κ = ½|A_j·x̄^(3−j) / (3A1·x̄ + A2)|
    """
    if j not in (1, 2, 3, 4):
        raise ValueError(f"系数索引必须为 1..4: j={j}")
    x, denominator = _root_denominator(c, i)
    a_j = c.coeffs[j - 1]
    if a_j == 0.0:
        return 0.0
    if x == 0.0 and j == 4:
        return math.inf
    return 0.5 * abs(a_j * x ** (3 - j) / denominator)


def condition_bound(c: CubicDerivative, i: int) -> float:
    """缩放后系数下的条件数上界 ½/|3A1·x̄ + A2|"""
    _, denominator = _root_denominator(c, i)
    return 0.5 / abs(denominator)


def residuals(c: CubicDerivative) -> List[float]:
    """每个实根的多项式残差"""
    a1, a2, a3, a4 = c.coeffs
    return [abs(((a1 * x + a2) * x + a3) * x + a4) for x in c.real_roots]


def solve_cubic(coeffs: Sequence[float], eps_c: float = EPS_C) -> CubicDerivative:
    """诊断入口：缩放后求根"""
    if len(coeffs) != 4:
        raise ValueError(f"需要4个系数 A1..A4, 实际 {len(coeffs)}")
    cubic = scale_coeffs(CubicDerivative(coeffs=tuple(float(a) for a in coeffs)))
    return viete_roots(cubic, eps_c=eps_c)


def describe_roots(coeffs: Sequence[float], eps_c: float = EPS_C) -> Dict[str, Any]:
    """
    根的诊断信息：分类、残差、各系数的条件数与条件数上界

    条件数无界（近重根或 x̄=0 时的 κ_4）的条目为 None。
    """
    cubic = solve_cubic(coeffs, eps_c=eps_c)
    classification = classify_roots(cubic)
    rows = []
    for i, r in enumerate(cubic.roots):
        row = {'index': i, 'real': r.real, 'imag': r.imag, 'residual': None,
               'condition': None, 'bound': None}
        if r.imag == 0.0:
            a1, a2, a3, a4 = cubic.coeffs
            row['residual'] = abs(((a1 * r.real + a2) * r.real + a3) * r.real + a4)
            try:
                kappas = [condition_number(cubic, i, j) for j in (1, 2, 3, 4)]
                row['condition'] = [k if math.isfinite(k) else None for k in kappas]
                row['bound'] = condition_bound(cubic, i)
            except ValueError as e:
                logger.warning(f"⚠️ 根 {i} 的条件数不可用: {e}")
        rows.append(row)
    return {
        'cubic': cubic.to_dict(),
        'classification': classification.value,
        'roots': rows,
    }
