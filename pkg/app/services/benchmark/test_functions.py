"""
内置测试函数
一维 12 个函数（带初始不确定区间与参考极小点）与多维基准函数
"""

import logging
import math
from typing import Dict, List

import numpy as np

from app.models.optimization_models import TestCase1D, TestCaseND

logger = logging.getLogger(__name__)


# ---- 一维 ----

def f1(t: float) -> float:
    return t ** 4 - 8.5 * t ** 3 - 31.0625 * t ** 2 - 7.5 * t + 45.0


def f2(t: float) -> float:
    return (t + 2.0) ** 2 * (t + 4.0) * (t + 5.0) * (t + 8.0) * (t - 16.0)


def f3(t: float) -> float:
    return math.exp(t) - 3.0 * t ** 2


def f4(t: float) -> float:
    return math.cos(t) + (t - 2.0) ** 2


def f5(t: float) -> float:
    return 3774.522 / t + 2.27 * t - 181.529


def f6(t: float) -> float:
    return 10.2 / t + 6.2 * t ** 3


def f7(t: float) -> float:
    return -1.0 / (1.0 + t * t)


def f8(t: float) -> float:
    return (t - 3.0) ** 12 + 3.0 * t ** 4


def f9(t: float) -> float:
    return math.log1p(t * t) + math.cosh(t) + 1.0


def f10(t: float) -> float:
    # log(tanh(u) + e^(−u))，u = t²，在 0 附近保持精度
    u = t * t
    return math.log1p(math.tanh(u) + math.expm1(-u))


def f11(t: float) -> float:
    return (t - 99.0) ** 2 * math.sinh(1.0 / (1.0 + t * t))


def f12(t: float) -> float:
    return t ** 3 + (3.7 + t + t ** 2 - t ** 3) * math.tanh((t - 5.5) ** 2)


TABLE1_CASES: List[TestCase1D] = [
    TestCase1D('f1', 't^4 - 8.5*t^3 - 31.0625*t^2 - 7.5*t + 45', f1, (0.0, 10.0),
               8.27846234384512, -2271.58168119200),
    TestCase1D('f2', '(t+2)^2*(t+4)*(t+5)*(t+8)*(t-16)', f2, (0.0, 20.0),
               12.6791200596419, -4.36333999223710e6),
    TestCase1D('f3', 'exp(t) - 3*t^2', f3, (1.0, 5.0),
               2.83314789204934, -7.08129358237484),
    TestCase1D('f4', 'cos(t) + (t-2)^2', f4, (0.0, 5.0),
               2.35424275822278, -0.580237420623167),
    TestCase1D('f5', '3774.522/t + 2.27*t - 181.529', f5, (1.0, 20.0),
               40.7772610902992, 3.59976534995851),
    TestCase1D('f6', '10.2/t + 6.2*t^3', f6, (0.5, 5.0),
               0.860541475570675, 15.8040029284830, gate_on_value_only=True),
    TestCase1D('f7', '-1/(1+t^2)', f7, (-10.0, 10.0), 0.0, -1.0, exact_hit=True),
    TestCase1D('f8', '(t-3)^12 + 3*t^4', f8, (0.0, 10.0),
               1.82219977424679, 40.2016340135967),
    TestCase1D('f9', 'log(t^2+1) + cosh(t) + 1', f9, (-5.0, 5.0), 0.0, 2.0),
    TestCase1D('f10', 'log(tanh(t^2) + exp(-t^2))', f10, (-2.0, 2.0), 0.0, 0.0),
    TestCase1D('f11', '(t-99)^2*sinh(1/(1+t^2))', f11, (0.0, 10.0), 99.0, 0.0),
    TestCase1D('f12', 't^3 + (3.7 + t + t^2 - t^3)*tanh((-5.5+t)^2)', f12, (-10.0, 10.0),
               -0.5, 3.45),
]


# ---- 多维 ----

def sphere(x: np.ndarray) -> float:
    return float(np.sum(x ** 2))


def bohachevsky(x: np.ndarray) -> float:
    x1, x2 = x
    return float(x1 ** 2 + 2.0 * x2 ** 2 - 0.3 * np.cos(3.0 * np.pi * x1)
                 - 0.4 * np.cos(4.0 * np.pi * x2) + 0.7)


def booth(x: np.ndarray) -> float:
    x1, x2 = x
    return float((x1 + 2.0 * x2 - 7.0) ** 2 + (2.0 * x1 + x2 - 5.0) ** 2)


def three_hump_camel(x: np.ndarray) -> float:
    x1, x2 = x
    return float(2.0 * x1 ** 2 - 1.05 * x1 ** 4 + x1 ** 6 / 6.0 + x1 * x2 + x2 ** 2)


def powell(x: np.ndarray) -> float:
    if x.size % 4:
        raise ValueError(f"Powell 函数的维数必须是4的倍数: d={x.size}")
    a, b, c, d = x[0::4], x[1::4], x[2::4], x[3::4]
    return float(np.sum((a + 10.0 * b) ** 2 + 5.0 * (c - d) ** 2
                        + (b - 2.0 * c) ** 4 + 10.0 * (a - d) ** 4))


def goldstein_price(x: np.ndarray) -> float:
    x1, x2 = x
    first = 1.0 + (x1 + x2 + 1.0) ** 2 * (19.0 - 14.0 * x1 + 3.0 * x1 ** 2 - 14.0 * x2
                                          + 6.0 * x1 * x2 + 3.0 * x2 ** 2)
    second = 30.0 + (2.0 * x1 - 3.0 * x2) ** 2 * (18.0 - 32.0 * x1 + 12.0 * x1 ** 2 + 48.0 * x2
                                                  - 36.0 * x1 * x2 + 27.0 * x2 ** 2)
    return float(first * second)


def styblinski_tang(x: np.ndarray) -> float:
    return float(0.5 * np.sum(x ** 4 - 16.0 * x ** 2 + 5.0 * x))


def easom(x: np.ndarray) -> float:
    x1, x2 = x
    return float(-np.cos(x1) * np.cos(x2) * np.exp(-(x1 - np.pi) ** 2 - (x2 - np.pi) ** 2))


def _vector(values) -> np.ndarray:
    return np.array(values, dtype=float)


TABLE2_CASES: List[TestCaseND] = [
    TestCaseND('sphere4', 4, sphere, _vector([50, 1, 4, -100]), np.zeros(4), 0.0,
               f_tol=1e-20, max_iterations=5, f_upper=1e-20),
    TestCaseND('sphere100', 100, sphere, _vector([50, 1, 4] + [2.5] * 96 + [-100]), np.zeros(100), 0.0,
               f_tol=1e-20, max_iterations=5, f_upper=1e-20),
    TestCaseND('bohachevsky', 2, bohachevsky, _vector([10, 20]), None, 0.46988,
               f_tol=0.5, max_iterations=32, f_upper=0.9),
    TestCaseND('booth', 2, booth, _vector([2, 2]), _vector([1, 3]), 0.0,
               f_tol=1e-24, max_iterations=3, x_tol=1e-10),
    TestCaseND('camel3', 2, three_hump_camel, _vector([-0.5, 1]), np.zeros(2), 0.0,
               f_tol=1e-12, max_iterations=15, f_upper=1e-12),
    TestCaseND('powell4', 4, powell, _vector([2, 3, 1, 1]), np.zeros(4), 0.0,
               f_tol=1e-12, max_iterations=60, f_upper=1e-12),
    TestCaseND('goldstein_price', 2, goldstein_price, _vector([-0.5, 1]), _vector([0, -1]), 3.0,
               f_tol=1e-6, max_iterations=110),
    TestCaseND('styblinski_tang4', 4, styblinski_tang, _vector([-4, -4, 5, 5]), None, -128.39,
               f_tol=0.01, max_iterations=30),
    TestCaseND('styblinski_tang12', 12, styblinski_tang,
               _vector([3, -0.5, 1.278] + [1] * 7 + [0.111, 4.5]), None, -342.76,
               f_tol=0.01, max_iterations=80),
    TestCaseND('easom', 2, easom, _vector([1, 1]), _vector([np.pi, np.pi]), -1.0,
               f_tol=1e-8, max_iterations=10),
]

_REGISTRY_1D: Dict[str, TestCase1D] = {case.name: case for case in TABLE1_CASES}
_REGISTRY_ND: Dict[str, TestCaseND] = {case.name: case for case in TABLE2_CASES}


def get_case_1d(name: str) -> TestCase1D:
    """按名称取一维测试函数"""
    case = _REGISTRY_1D.get(name)
    if case is None:
        raise ValueError(f"未知的一维测试函数: {name}, 可选 {', '.join(_REGISTRY_1D)}")
    return case


def get_case_nd(name: str) -> TestCaseND:
    """按名称取多维测试函数"""
    case = _REGISTRY_ND.get(name)
    if case is None:
        raise ValueError(f"未知的多维测试函数: {name}, 可选 {', '.join(_REGISTRY_ND)}")
    return case


def list_cases() -> Dict[str, List[dict]]:
    return {
        'one_dimensional': [case.to_dict() for case in TABLE1_CASES],
        'multi_dimensional': [case.to_dict() for case in TABLE2_CASES],
    }
