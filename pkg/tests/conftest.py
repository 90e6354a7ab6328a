"""
测试公共夹具
"""

import os

import pytest

from app import create_app
from app.services.solver_config_manager import reset_solver_config_manager

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SOLVER_CONFIG = os.path.join(ROOT, 'config', 'solver_config.yaml')

SOLVER_ENV = (
    'LS_M_GRID', 'LS_F_MAX', 'LS_EPS_C', 'LS_EPS_D', 'LS_EPS', 'LS_K_MAX', 'LS_L_SUB',
    'LS_BRENT_MAX_ITER', 'BFGS_K_MAX', 'BFGS_P_MAX', 'BFGS_GRAD_STEP', 'BFGS_TOL',
    'BENCH_MAX_WORKERS', 'BENCH_TIMING_REPEATS',
)


@pytest.fixture(autouse=True)
def solver_env(monkeypatch):
    """每个测试使用仓库自带的求解器配置，且不受外部环境变量影响"""
    for name in SOLVER_ENV:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv('SOLVER_CONFIG_PATH', SOLVER_CONFIG)
    monkeypatch.setenv('BENCH_MAX_WORKERS', '1')
    monkeypatch.setenv('BENCH_TIMING_REPEATS', '1')
    reset_solver_config_manager()
    yield
    reset_solver_config_manager()


@pytest.fixture
def app():
    return create_app('testing')


@pytest.fixture
def client(app):
    return app.test_client()
