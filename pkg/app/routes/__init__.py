"""
路由模块
包含一维/多维求解、诊断与基准测试的路由
"""

from .optimize_routes import optimize_bp
from .bench_routes import bench_bp

__all__ = ['optimize_bp', 'bench_bp']
