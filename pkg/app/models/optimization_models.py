"""
优化求解相关的数据模型
谱网格、级数、微分算子、三次导数多项式、线搜索状态、BFGS状态与基准报告
"""

import math
from dataclasses import dataclass, field, asdict
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np

EPS_MACH = float(np.finfo(float).eps)


def _finite_or_none(value: Optional[float]) -> Optional[float]:
    """JSON不支持inf/nan，转换为None"""
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


class OperatorKind(Enum):
    """微分算子类型"""
    FULL = 'full'
    ROW = 'row'


class RootClass(Enum):
    """三次方程根的分类"""
    ALL_REAL_DISTINCT_IN_UNIT = 'all_real_distinct_in_unit'  # 三个互异实根且都在[-1,1]内
    FALLBACK = 'fallback'  # 其它情况，回退到黄金分割


class SearchStatus(Enum):
    """线搜索终止状态"""
    RUNNING = 'running'
    CONVERGED = 'converged'
    MAX_ITERATIONS = 'max_iterations'
    BRACKET_FAILED = 'bracket_failed'


class BfgsStatus(Enum):
    """BFGS终止状态"""
    RUNNING = 'running'
    CONVERGED = 'converged'
    FAILURE = 'failure'


class UpdateStatus(Enum):
    """逆Hessian更新结果"""
    APPLIED = 'applied'
    SKIPPED = 'skipped'


@dataclass(frozen=True, eq=False)
class ChebGrid:
    """CGL节点网格，节点按降序存储 (x_0 = 1)"""
    n: int
    nodes: np.ndarray

    def __len__(self) -> int:
        return self.n + 1


@dataclass(frozen=True, eq=False)
class ThetaWeights:
    """端点权重 θ_j：两端为1/2，其余为1"""
    n: int
    values: np.ndarray


@dataclass(frozen=True)
class ChebSeries:
    """Chebyshev级数系数及其物理区间"""
    coeffs: Tuple[float, ...]
    interval: Tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        a, b = self.interval
        if not a < b:
            raise ValueError(f"级数区间无效: a={a} 必须小于 b={b}")
        object.__setattr__(self, 'coeffs', tuple(float(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_dict(self) -> Dict[str, Any]:
        return {'coeffs': list(self.coeffs), 'interval': list(self.interval)}


@dataclass(frozen=True, eq=False)
class DiffOperator:
    """Chebyshev伪谱微分算子（完整矩阵或单行）"""
    order: int
    n: int
    kind: OperatorKind
    entries: np.ndarray
    eval_point: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'order': self.order,
            'n': self.n,
            'kind': self.kind.value,
            'entries': self.entries.tolist(),
            'eval_point': self.eval_point,
        }


@dataclass(frozen=True)
class CubicDerivative:
    """插值多项式导数的单项式系数 A1..A4 以及根"""
    coeffs: Tuple[float, float, float, float]
    scaled: bool = False
    scale: float = 1.0  # 缩放除数，未缩放时为1
    roots: Tuple[complex, ...] = ()
    p: Optional[float] = None
    q: Optional[float] = None
    has_complex: bool = False

    @property
    def real_roots(self) -> Tuple[float, ...]:
        return tuple(r.real for r in self.roots if r.imag == 0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'coeffs': list(self.coeffs),
            'scaled': self.scaled,
            'scale': self.scale,
            'roots': [{'real': r.real, 'imag': r.imag} for r in self.roots],
            'p': self.p,
            'q': self.q,
            'has_complex': self.has_complex,
        }


class Objective1D:
    """一维目标函数包装，统计调用次数"""

    def __init__(self, evaluator: Callable[[float], float], name: str = 'objective'):
        self._evaluator = evaluator
        self.name = name
        self.evaluations = 0

    def __call__(self, t: float) -> float:
        self.evaluations += 1
        return float(self._evaluator(t))

    def reset(self):
        self.evaluations = 0

    def __repr__(self) -> str:
        return f"Objective1D(name={self.name!r}, evaluations={self.evaluations})"


@dataclass
class LineSearchConfig:
    """CPSLSM 配置"""
    m_grid: int = 12  # 行微分算子的网格阶数
    f_max: float = 100.0  # 样本缩放阈值
    eps_c: float = 1e-15  # 系数截断阈值
    eps_d: float = 1e-1  # 导数过小阈值（独立一维运行）
    eps: float = 1e-10  # t 的解容差
    k_max: int = 100  # 迭代上限
    l_sub: int = 10  # 区间定位的子区间数
    brent_tol: Optional[float] = None  # 默认等于 eps
    brent_max_iter: int = 200
    locate_interval: bool = True  # 先运行不确定区间定位
    rightward_only: bool = False  # 只允许向右扩展（BFGS步长搜索）

    def __post_init__(self):
        if self.brent_tol is None:
            self.brent_tol = self.eps
        for name in ('f_max', 'eps_c', 'eps_d', 'eps', 'brent_tol'):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"线搜索配置 {name} 必须为正数: {value}")
        if self.m_grid < 2:
            raise ValueError(f"线搜索配置 m_grid 必须 >= 2: {self.m_grid}")
        if self.k_max < 1:
            raise ValueError(f"线搜索配置 k_max 必须 >= 1: {self.k_max}")
        if self.l_sub < 2:
            raise ValueError(f"线搜索配置 l_sub 必须 >= 2: {self.l_sub}")
        if self.brent_max_iter < 1:
            raise ValueError(f"线搜索配置 brent_max_iter 必须 >= 1: {self.brent_max_iter}")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class TraceRecord:
    """单次迭代记录"""
    k: int
    a: float
    b: float
    x: Optional[float]
    branch: str

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class SearchState:
    """线搜索运行状态"""
    a: float
    b: float
    x1: Optional[float] = None
    x2: Optional[float] = None
    x3: Optional[float] = None
    k: int = 0
    status: SearchStatus = SearchStatus.RUNNING
    t_star: Optional[float] = None
    f_star: Optional[float] = None
    bracket: Optional[Tuple[float, float]] = None
    evaluations: int = 0
    trace: List[TraceRecord] = field(default_factory=list)
    trace_cap: int = 100

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"搜索区间无效: a={self.a} 必须小于 b={self.b}")

    @property
    def e_plus(self) -> float:
        return self.a + self.b

    @property
    def e_minus(self) -> float:
        return self.b - self.a

    def to_physical(self, x: float) -> float:
        """平移点 x ∈ [-1,1] 映射到物理区间"""
        return (self.e_minus * x + self.e_plus) / 2.0

    def to_translated(self, t: float) -> float:
        """物理点映射到 [-1,1]"""
        return (2.0 * t - self.e_plus) / self.e_minus

    def set_interval(self, a: float, b: float):
        if not a < b:
            raise ValueError(f"搜索区间无效: a={a} 必须小于 b={b}")
        self.a = a
        self.b = b

    def record(self, branch: str, x: Optional[float] = None):
        if len(self.trace) < self.trace_cap:
            self.trace.append(TraceRecord(self.k, self.a, self.b, x, branch))

    @property
    def converged(self) -> bool:
        return self.status == SearchStatus.CONVERGED

    def to_dict(self) -> Dict[str, Any]:
        return {
            'a': self.a,
            'b': self.b,
            'k': self.k,
            'status': self.status.value,
            't_star': _finite_or_none(self.t_star),
            'f_star': _finite_or_none(self.f_star),
            'bracket': list(self.bracket) if self.bracket else None,
            'evaluations': self.evaluations,
            'trace': [r.to_dict() for r in self.trace],
        }


def bfgs_line_search_config() -> LineSearchConfig:
    """BFGS内部步长搜索的默认配置"""
    return LineSearchConfig(m_grid=6, f_max=100.0, eps_c=EPS_MACH, eps_d=1e-6, eps=1e-6,
                            k_max=100, rightward_only=True)


@dataclass
class BfgsConfig:
    """修正BFGS配置"""
    b0: Optional[np.ndarray] = None  # 初始逆Hessian，默认单位阵
    k_max: int = 10000
    p_max: float = 10.0  # 搜索方向最大范数
    grad_step: float = 1e-4  # 中心差分步长
    eps_hat: float = 3 * EPS_MACH  # 步长区间左端点
    b_step: float = 10.0  # 步长区间右端点
    grad_tol: float = 1e-12
    step_tol: float = 1e-12
    f_rel_tol: float = 100 * EPS_MACH  # 相邻函数值的相对变化低于此值视为停滞，0 关闭
    curvature_tol: float = 1e-14
    line_search: LineSearchConfig = field(default_factory=bfgs_line_search_config)

    def __post_init__(self):
        if not self.p_max > 0:
            raise ValueError(f"BFGS配置 p_max 必须为正数: {self.p_max}")
        if not self.eps_hat > 0:
            raise ValueError(f"BFGS配置 eps_hat 必须为正数: {self.eps_hat}")
        if not self.b_step > self.eps_hat:
            raise ValueError(f"BFGS配置 b_step={self.b_step} 必须大于 eps_hat={self.eps_hat}")
        if not self.grad_step > 0:
            raise ValueError(f"BFGS配置 grad_step 必须为正数: {self.grad_step}")
        if self.k_max < 1:
            raise ValueError(f"BFGS配置 k_max 必须 >= 1: {self.k_max}")
        if self.f_rel_tol < 0:
            raise ValueError(f"BFGS配置 f_rel_tol 不能为负数: {self.f_rel_tol}")


@dataclass
class BfgsIteration:
    """BFGS单次外迭代记录"""
    k: int
    fval: float
    grad_norm: float
    alpha: float
    direction_norm: float
    update: UpdateStatus

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['update'] = self.update.value
        return data


@dataclass(eq=False)
class BfgsState:
    """BFGS运行状态"""
    x: np.ndarray
    binv: np.ndarray
    g: np.ndarray
    fval: float
    p: Optional[np.ndarray] = None
    s: Optional[np.ndarray] = None
    y: Optional[np.ndarray] = None
    k: int = 0
    status: BfgsStatus = BfgsStatus.RUNNING
    history: List[BfgsIteration] = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.status == BfgsStatus.CONVERGED

    def to_dict(self) -> Dict[str, Any]:
        return {
            'x': self.x.tolist(),
            'fval': _finite_or_none(self.fval),
            'iterations': self.k,
            'status': self.status.value,
            'grad_norm': float(np.linalg.norm(self.g)),
            'history': [h.to_dict() for h in self.history],
        }


@dataclass(frozen=True)
class TestCase1D:
    """一维测试函数"""
    __test__ = False  # 避免被pytest收集

    name: str
    expression: str
    objective: Callable[[float], float]
    interval: Tuple[float, float]
    t_star: float
    f_star: float
    gate_on_value_only: bool = False  # 只按函数值判定（f6）
    exact_hit: bool = False  # 要求 |t̃*| <= 1e-12（f7）

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'expression': self.expression,
            'interval': list(self.interval),
            't_star': self.t_star,
            'f_star': self.f_star,
        }


@dataclass(frozen=True, eq=False)
class TestCaseND:
    """多维测试函数"""
    __test__ = False

    name: str
    dimension: int
    objective: Callable[[np.ndarray], float]
    x0: np.ndarray
    x_star: Optional[np.ndarray]
    f_star: float
    f_tol: float  # 函数值验收容差
    max_iterations: int  # 验收迭代上限
    x_tol: Optional[float] = None  # 解向量验收容差（如Booth）
    f_upper: Optional[float] = None  # 只要求 fval <= f_upper

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'dimension': self.dimension,
            'x0': self.x0.tolist(),
            'x_star': self.x_star.tolist() if self.x_star is not None else None,
            'f_star': self.f_star,
            'max_iterations': self.max_iterations,
        }


@dataclass
class CaseResult:
    """单个测试用例的结果"""
    case: str
    solver: str
    result: Union[float, List[float]]
    fval: float
    metric: Optional[float]  # 一维为 cd_n，多维为误差范数 EN
    iterations: int
    time_ms: float
    status: str
    passed: Optional[bool] = None  # 参考求解器不参与验收时为None
    message: str = ''

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        if self.metric is not None and math.isinf(self.metric):
            data['metric'] = 'exact'
        data['fval'] = _finite_or_none(self.fval)
        if not isinstance(self.result, list):
            data['result'] = _finite_or_none(self.result)
        return data


@dataclass
class RunReport:
    """基准运行报告"""
    suite: str
    metric_name: str  # 'cd_n' 或 'EN'
    rows: List[CaseResult] = field(default_factory=list)

    @property
    def gated_rows(self) -> List[CaseResult]:
        return [r for r in self.rows if r.passed is not None]

    @property
    def passed(self) -> int:
        return sum(1 for r in self.gated_rows if r.passed)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.gated_rows)

    def summary(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'total': len(self.rows),
            'gated': len(self.gated_rows),
            'passed': self.passed,
            'all_passed': self.all_passed,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'metric_name': self.metric_name,
            'summary': self.summary(),
            'rows': [row.to_dict() for row in self.rows],
        }
