"""
多元无约束优化模块
"""

from .bfgs_service import BfgsOptimizer, bfgs_minimize, central_diff_gradient, inverse_update

__all__ = [
    'BfgsOptimizer',
    'bfgs_minimize',
    'central_diff_gradient',
    'inverse_update',
]
