"""
Chebyshev 谱方法模块
"""

from .chebyshev_core import (
    cgl_nodes,
    theta_weights,
    cheb_eval,
    cheb_coeff_c,
    cheb_derivative_eval,
    derivative_at_zero,
    discrete_transform,
    derivative_coeffs,
    series_eval,
)
from .differentiation import full_diff_matrix, row_diff_matrix, apply, roundoff_bound

__all__ = [
    'cgl_nodes',
    'theta_weights',
    'cheb_eval',
    'cheb_coeff_c',
    'cheb_derivative_eval',
    'derivative_at_zero',
    'discrete_transform',
    'derivative_coeffs',
    'series_eval',
    'full_diff_matrix',
    'row_diff_matrix',
    'apply',
    'roundoff_bound',
]
