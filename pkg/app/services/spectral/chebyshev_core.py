"""
Chebyshev 多项式基础运算

CGL 节点、三项递推求值、幂系数 c_l^(k)、任意阶导数 T_k^(m)(x)、
离散 Chebyshev 变换、导数系数递推以及 Clenshaw 求和。
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Sequence, Tuple

import numpy as np

from app.models.optimization_models import ChebGrid, ChebSeries, ThetaWeights

logger = logging.getLogger(__name__)

K_CAP = 64  # 幂系数缓存上限
ZERO_BRANCH_TOL = 1e-14  # |x| 小于该值时使用 x=0 闭式分支

_COEFF_CACHE: Dict[int, Tuple[int, ...]] = {}


def _check_domain(x: float):
    if not abs(x) <= 1.0:
        raise ValueError(f"自变量超出 [-1,1]: x={x}")


def _freeze(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@lru_cache(maxsize=128)
def cgl_nodes(n: int) -> ChebGrid:
    """
    n 阶 Chebyshev-Gauss-Lobatto 节点，降序排列

    只对 k <= n/2 计算余弦，其余按符号镜像，保证 nodes[k] + nodes[n-k] == 0。
    """
    if n < 1:
        raise ValueError(f"CGL网格阶数必须 >= 1: n={n}")
    nodes = np.empty(n + 1, dtype=float)
    half = n // 2
    for k in range(half + 1):
        nodes[k] = math.cos(k * math.pi / n)
        nodes[n - k] = -nodes[k]
    if n % 2 == 0:
        nodes[half] = 0.0
    nodes[0] = 1.0
    nodes[n] = -1.0
    return ChebGrid(n=n, nodes=_freeze(nodes))


@lru_cache(maxsize=128)
def theta_weights(n: int) -> ThetaWeights:
    """θ_j 权重"""
    if n < 1:
        raise ValueError(f"网格阶数必须 >= 1: n={n}")
    values = np.ones(n + 1)
    values[0] = values[n] = 0.5
    return ThetaWeights(n=n, values=_freeze(values))


@lru_cache(maxsize=128)
def cosine_table(n: int) -> np.ndarray:
    """
    C[j, k] = cos(jkπ/n)，由已有节点给出

    使用整数运算 (−1)^⌊jk/n⌋ · x_{jk mod n}，不重新计算余弦。
    """
    nodes = cgl_nodes(n).nodes
    table = np.empty((n + 1, n + 1))
    for j in range(n + 1):
        for k in range(n + 1):
            q, r = divmod(j * k, n)
            table[j, k] = -nodes[r] if q % 2 else nodes[r]
    return _freeze(table)


def cheb_eval(k: int, x: float) -> float:
    """三项递推计算 T_k(x)"""
    if k < 0:
        raise ValueError(f"多项式次数必须非负: k={k}")
    _check_domain(x)
    if k == 0:
        return 1.0
    t_prev, t_curr = 1.0, x
    for _ in range(k - 1):
        t_prev, t_curr = t_curr, 2.0 * x * t_curr - t_prev
    return t_curr


def _power_coefficients(k: int) -> Tuple[int, ...]:
    """T_k 的幂系数 c_0^(k)..c_⌊k/2⌋^(k)（精确整数）"""
    cached = _COEFF_CACHE.get(k)
    if cached is not None:
        return cached
    coeffs = [1 if k == 0 else 2 ** (k - 1)]
    for l in range(1, k // 2 + 1):
        numerator = -(k - 2 * l + 1) * (k - 2 * l + 2) * coeffs[-1]
        denominator = 4 * l * (k - l)
        coeffs.append(numerator // denominator)
    result = tuple(coeffs)
    if k <= K_CAP:
        _COEFF_CACHE[k] = result
    return result


def cheb_coeff_c(k: int) -> Tuple[float, ...]:
    """c_l^(k)，l = 0..⌊k/2⌋，满足 T_k(x) = Σ c_l x^(k-2l)"""
    if k < 0:
        raise ValueError(f"多项式次数必须非负: k={k}")
    return tuple(float(c) for c in _power_coefficients(k))


def _pochhammer(x: Fraction, j: int) -> Fraction:
    result = Fraction(1)
    for i in range(j):
        result *= x + i
    return result


def gamma_factor(l: int, k: int, m: int) -> int:
    """γ_{l,k}^(m) = (k−2l−m+1)·(k−2l−m+2)_{m−1}，m=0 时为1"""
    if m == 0:
        return 1
    base = k - 2 * l - m + 1
    result = base
    for i in range(m - 1):
        result *= base + 1 + i
    return result


def beta_factor(k: int, m: int) -> Fraction:
    """x=0 分支的 β_k^(m)，m >= 1"""
    if m < 1:
        raise ValueError(f"β 因子要求 m >= 1: m={m}")
    delta = 1 if m % 2 == 1 else 0
    delta_even = 1 - delta
    j = (m - 1) // 2
    value = Fraction((-4) ** j) * (-1) ** (delta + (m + 1) // 2) * Fraction(k) ** (delta_even + 1)
    value *= _pochhammer(Fraction(-k - delta + 2, 2), j)
    value *= _pochhammer(Fraction(k - delta + 2, 2), j)
    return value


def cos_half_pi(j: int) -> int:
    """cos(jπ/2) 的精确值"""
    if j % 2:
        return 0
    return -1 if (j // 2) % 2 else 1


def _monomial_derivative(k: int, m: int, x: float) -> float:
    """
    Σ_l γ_{l,k}^(m) c_l^(k) x^(k−2l−m)

    x 是二进制有理数，整个和在整数上精确累加后一次舍入。
    """
    num, den = float(x).as_integer_ratio()
    top = k - m
    total = 0
    for l, c in enumerate(_power_coefficients(k)):
        power = k - 2 * l - m
        if power < 0:
            break
        g = gamma_factor(l, k, m)
        if g == 0:
            continue
        total += g * c * num ** power * den ** (top - power)
    return total / den ** top


def derivative_at_zero(k: int, m: int) -> float:
    """T_k^(m)(0)，k > m 时使用 β 闭式"""
    if m == 0:
        return float(cos_half_pi(k))
    delta = m % 2
    return float(beta_factor(k, m) * cos_half_pi(k - delta))


def cheb_derivative_eval(k: int, m: int, x: float) -> float:
    """
    T_k^(m)(x)

    Args:
        k: 多项式次数
        m: 导数阶数
        x: [-1,1] 内的点

    Returns:
        m 阶导数值
    """
    if k < 0 or m < 0:
        raise ValueError(f"k, m 必须非负: k={k}, m={m}")
    _check_domain(x)
    if k < m:
        return 0.0
    if k == m:
        return 1.0 if k == 0 else float(2 ** (k - 1) * math.factorial(m))
    if abs(x) < ZERO_BRANCH_TOL:
        return derivative_at_zero(k, m)
    return _monomial_derivative(k, m, x)


def derivative_profile(n: int, m: int, x: float, at_zero: bool = False) -> np.ndarray:
    """向量 [T_0^(m)(x), ..., T_n^(m)(x)]，at_zero 时走 β 分支"""
    profile = np.zeros(n + 1)
    for k in range(m, n + 1):
        if k == m:
            profile[k] = 2 ** (k - 1) * math.factorial(m) if k else 1.0
        elif at_zero:
            profile[k] = derivative_at_zero(k, m)
        else:
            profile[k] = _monomial_derivative(k, m, x)
    return profile


def _transform_n4(samples: Sequence[float]) -> Tuple[float, ...]:
    """N=4 专用变换：f̃_k = 1/(2c_k) Σ_j (1/c_j) cos(kjπ/4) f_j"""
    table = cosine_table(4)
    c = (2.0, 1.0, 1.0, 1.0, 2.0)
    coeffs = []
    for k in range(5):
        total = math.fsum(table[j, k] * samples[j] / c[j] for j in range(5))
        coeffs.append(total / (2.0 * c[k]))
    return tuple(coeffs)


def _transform_general(samples: Sequence[float]) -> Tuple[float, ...]:
    """一般 N：a_k = (2/N) Σ θ_j f_j T_k(x_j)，系数取 θ_k a_k"""
    n = len(samples) - 1
    table = cosine_table(n)
    theta = theta_weights(n).values
    coeffs = []
    for k in range(n + 1):
        a_k = 2.0 / n * math.fsum(theta[j] * samples[j] * table[j, k] for j in range(n + 1))
        coeffs.append(theta[k] * a_k)
    return tuple(coeffs)


def discrete_transform(samples: Sequence[float], interval: Tuple[float, float] = (-1.0, 1.0),
                       specialized: bool = True) -> ChebSeries:
    """
    离散 Chebyshev 变换

    Args:
        samples: 按 CGL 节点降序排列的 N+1 个样本值
        interval: 样本对应的物理区间
        specialized: N=4 时是否使用专用公式
    """
    values = [float(v) for v in samples]
    if len(values) < 2:
        raise ValueError(f"样本长度必须 >= 2: {len(values)}")
    if len(values) == 5 and specialized:
        coeffs = _transform_n4(values)
    else:
        coeffs = _transform_general(values)
    return ChebSeries(coeffs=coeffs, interval=interval)


def derivative_coeffs(series: ChebSeries) -> ChebSeries:
    """四次插值多项式导数的 Chebyshev 系数（向后递推）"""
    if len(series.coeffs) != 5:
        raise ValueError(f"导数系数递推需要恰好5个系数, 实际 {len(series.coeffs)}")
    f = series.coeffs
    d = [0.0] * 5
    d[3] = 8.0 * f[4]
    for k in (2, 1):
        d[k] = 2.0 * (k + 1) * f[k + 1] + d[k + 2]
    d[0] = f[1] + d[2] / 2.0
    return ChebSeries(coeffs=tuple(d), interval=series.interval)


def series_eval(series: ChebSeries, x: float) -> float:
    """Clenshaw 求和计算 Σ f̃_k T_k(x)"""
    _check_domain(x)
    b1 = b2 = 0.0
    for c in reversed(series.coeffs[1:]):
        b1, b2 = c + 2.0 * x * b1 - b2, b1
    return series.coeffs[0] + x * b1 - b2
