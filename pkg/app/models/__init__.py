# 求解器数据模型

from .optimization_models import (
    EPS_MACH,
    OperatorKind,
    RootClass,
    SearchStatus,
    BfgsStatus,
    UpdateStatus,
    ChebGrid,
    ThetaWeights,
    ChebSeries,
    DiffOperator,
    CubicDerivative,
    Objective1D,
    LineSearchConfig,
    SearchState,
    BfgsConfig,
    BfgsState,
    TestCase1D,
    TestCaseND,
    CaseResult,
    RunReport
)

__all__ = [
    'EPS_MACH',
    'OperatorKind',
    'RootClass',
    'SearchStatus',
    'BfgsStatus',
    'UpdateStatus',
    'ChebGrid',
    'ThetaWeights',
    'ChebSeries',
    'DiffOperator',
    'CubicDerivative',
    'Objective1D',
    'LineSearchConfig',
    'SearchState',
    'BfgsConfig',
    'BfgsState',
    'TestCase1D',
    'TestCaseND',
    'CaseResult',
    'RunReport'
]
