"""
求解器配置管理器
统一管理线搜索预设、BFGS参数与基准运行设置
"""

import copy
import logging
import os
import threading
from dataclasses import fields
from typing import Any, Dict, Optional

import yaml

from app.models.optimization_models import EPS_MACH, BfgsConfig, LineSearchConfig

logger = logging.getLogger(__name__)

_LINE_SEARCH_KEYS = {f.name for f in fields(LineSearchConfig)}
_BFGS_KEYS = {f.name for f in fields(BfgsConfig)} - {'line_search', 'b0'}

# 环境变量 -> (配置节, 键, 类型)
_ENV_OVERRIDES = {
    'LS_M_GRID': (('line_search', 'standalone'), 'm_grid', int),
    'LS_F_MAX': (('line_search', 'standalone'), 'f_max', float),
    'LS_EPS_C': (('line_search', 'standalone'), 'eps_c', float),
    'LS_EPS_D': (('line_search', 'standalone'), 'eps_d', float),
    'LS_EPS': (('line_search', 'standalone'), 'eps', float),
    'LS_K_MAX': (('line_search', 'standalone'), 'k_max', int),
    'LS_L_SUB': (('line_search', 'standalone'), 'l_sub', int),
    'LS_BRENT_MAX_ITER': (('line_search', 'standalone'), 'brent_max_iter', int),
    'BFGS_K_MAX': (('bfgs',), 'k_max', int),
    'BFGS_P_MAX': (('bfgs',), 'p_max', float),
    'BFGS_GRAD_STEP': (('bfgs',), 'grad_step', float),
    'BENCH_MAX_WORKERS': (('bench',), 'max_workers', int),
    'BENCH_TIMING_REPEATS': (('bench',), 'timing_repeats', int),
}


class SolverConfigManager:
    """求解器配置管理器"""
    
    def __init__(self, config_path: Optional[str] = None):
        """初始化求解器配置管理器"""
        self.config_path = config_path or os.getenv('SOLVER_CONFIG_PATH') or os.path.join('config', 'solver_config.yaml')
        self._config = self._load_default_config()
        self._load_config_from_file()
        self._load_config_from_env()
        logger.info("✅ 求解器配置管理器初始化完成")
    
    def _load_default_config(self) -> Dict[str, Any]:
        """加载默认配置"""
        return {
            'line_search': {
                'standalone': dict(LineSearchConfig().to_dict(), brent_tol=None),
                'bfgs': {
                    'm_grid': 6,
                    'f_max': 100.0,
                    'eps_c': EPS_MACH,
                    'eps_d': 1e-6,
                    'eps': 1e-6,
                    'k_max': 100,
                    'l_sub': 10,
                    'brent_tol': None,
                    'brent_max_iter': 200,
                    'locate_interval': True,
                    'rightward_only': True
                }
            },
            'bfgs': {
                'k_max': 10000,
                'p_max': 10.0,
                'grad_step': 1e-4,
                'eps_hat': 3 * EPS_MACH,
                'b_step': 10.0,
                'grad_tol': 1e-12,
                'step_tol': 1e-12,
                'f_rel_tol': 100 * EPS_MACH,
                'curvature_tol': 1e-14
            },
            'bench': {
                'max_workers': 4,
                'timing_repeats': 3,
                'plot_points': 201
            }
        }
    
    def _load_config_from_file(self):
        """从配置文件加载配置"""
        if os.path.exists(self.config_path):
            try:
                with open(self.config_path, 'r', encoding='utf-8') as f:
                    file_config = yaml.safe_load(f)
                    if file_config:
                        self._merge_config(self._config, file_config)
                        logger.info(f"📄 已从配置文件加载求解器配置: {self.config_path}")
            except Exception as e:
                logger.warning(f"加载求解器配置文件失败: {e}")
    
    def _load_config_from_env(self):
        """从环境变量加载配置"""
        loaded = []
        for name, (section_path, key, cast) in _ENV_OVERRIDES.items():
            value = os.getenv(name)
            if not value:
                continue
            try:
                section = self._config
                for part in section_path:
                    section = section[part]
                section[key] = cast(value)
                loaded.append(name)
            except ValueError:
                raise ValueError(f"环境变量 {name} 的值无效: {value!r}")
        
        tol = os.getenv('BFGS_TOL')
        if tol:
            self._config['bfgs']['grad_tol'] = float(tol)
            self._config['bfgs']['step_tol'] = float(tol)
            loaded.append('BFGS_TOL')
        
        if loaded:
            logger.info(f"📋 已从环境变量加载求解器配置: {', '.join(loaded)}")
    
    def _merge_config(self, base_config: Dict, new_config: Dict):
        """合并配置"""
        for key, value in new_config.items():
            if key in base_config and isinstance(base_config[key], dict) and isinstance(value, dict):
                self._merge_config(base_config[key], value)
            else:
                base_config[key] = value
    
    @staticmethod
    def _check_keys(overrides: Dict[str, Any], allowed, scope: str):
        if not isinstance(overrides, dict):
            raise ValueError(f"{scope}配置覆盖项必须是字典: {overrides!r}")
        unknown = set(overrides) - set(allowed)
        if unknown:
            raise ValueError(f"未知的{scope}配置项: {', '.join(sorted(unknown))}")
    
    def line_search_config(self, preset: str = 'standalone',
                           overrides: Optional[Dict[str, Any]] = None) -> LineSearchConfig:
        """
        构建线搜索配置
        
        Args:
            preset: 预设名称 standalone / bfgs
            overrides: 调用时覆盖的字段
        """
        presets = self._config['line_search']
        if preset not in presets:
            raise ValueError(f"未知的线搜索预设: {preset}, 可选 {', '.join(presets)}")
        values = dict(presets[preset])
        self._check_keys(values, _LINE_SEARCH_KEYS, '线搜索')
        if overrides is not None:
            self._check_keys(overrides, _LINE_SEARCH_KEYS, '线搜索')
            values.update({k: v for k, v in overrides.items() if v is not None})
        return LineSearchConfig(**values)
    
    def bfgs_config(self, overrides: Optional[Dict[str, Any]] = None,
                    line_search_overrides: Optional[Dict[str, Any]] = None) -> BfgsConfig:
        """构建BFGS配置，步长搜索使用 bfgs 预设"""
        values = dict(self._config['bfgs'])
        self._check_keys(values, _BFGS_KEYS, 'BFGS')
        if overrides is not None:
            self._check_keys(overrides, _BFGS_KEYS, 'BFGS')
            values.update({k: v for k, v in overrides.items() if v is not None})
        line_search = self.line_search_config('bfgs', line_search_overrides)
        return BfgsConfig(line_search=line_search, **values)
    
    def get_bench_config(self) -> Dict[str, Any]:
        """获取基准运行配置"""
        return self._config['bench'].copy()
    
    def get_full_config(self) -> Dict[str, Any]:
        """获取完整配置"""
        return copy.deepcopy(self._config)
    
    def update_config(self, new_config: Dict[str, Any]):
        """
        更新配置

        合并后立即按预设构建一次配置对象，任何一项无效时整体回滚。
        """
        if not isinstance(new_config, dict):
            raise ValueError('配置更新必须是字典')
        previous = copy.deepcopy(self._config)
        self._merge_config(self._config, new_config)
        try:
            for preset in self._config['line_search']:
                self.line_search_config(preset)
            self.bfgs_config()
            bench = self._config['bench']
            if int(bench['max_workers']) < 1 or int(bench['timing_repeats']) < 1:
                raise ValueError(f"基准运行配置无效: {bench}")
        except (ValueError, TypeError, KeyError) as e:
            self._config = previous
            raise ValueError(f"配置更新无效, 已回滚: {e}")
        logger.info("🔄 求解器配置已更新")

# 全局配置管理器实例
_config_manager = None
_manager_lock = threading.Lock()

def get_solver_config_manager(config_path: Optional[str] = None) -> SolverConfigManager:
    """获取全局求解器配置管理器，config_path 只在首次创建时生效"""
    global _config_manager
    with _manager_lock:
        if _config_manager is None:
            _config_manager = SolverConfigManager(config_path)
        return _config_manager

def reset_solver_config_manager():
    """丢弃全局实例，下次获取时重新加载"""
    global _config_manager
    with _manager_lock:
        _config_manager = None
