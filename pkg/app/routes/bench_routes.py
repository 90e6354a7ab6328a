from flask import Blueprint, current_app, jsonify, request
import logging

from app.services.benchmark import list_cases, run_table1, run_table2
from app.services.solver_config_manager import get_solver_config_manager

logger = logging.getLogger(__name__)

bench_bp = Blueprint('bench', __name__)

ORDER_VARIANTS = {'1': 'first', '2': 'second', 'first': 'first', 'second': 'second'}


def _bench_options():
    """应用配置中的并发数与计时重复次数"""
    return {
        'max_workers': current_app.config.get('BENCH_MAX_WORKERS'),
        'repeats': current_app.config.get('BENCH_TIMING_REPEATS')
    }


@bench_bp.route('/functions', methods=['GET'])
def get_functions():
    """获取内置测试函数列表"""
    try:
        return jsonify({
            'success': True,
            'data': list_cases()
        })
    except Exception as e:
        logger.error(f"获取测试函数列表失败: {e}")
        return jsonify({
            'success': False,
            'error': str(e)
        }), 500


@bench_bp.route('/table1', methods=['POST'])
def table1():
    """运行一维测试集"""
    try:
        data = request.get_json(silent=True) or {}
        order = str(data.get('order', 2)).lower()
        variant = ORDER_VARIANTS.get(order)
        if variant is None:
            return jsonify({
                'success': False,
                'error': f'未知的线搜索版本: {order}'
            }), 400

        report = run_table1(variant, overrides=data.get('overrides'),
                            reference=bool(data.get('reference', False)),
                            **_bench_options())

        return jsonify({
            'success': True,
            'data': report.to_dict()
        })

    except ValueError as e:
        logger.warning(f"一维测试集参数错误: {e}")
        return jsonify({
            'success': False,
            'error': str(e)
        }), 400
    except Exception as e:
        logger.error(f"一维测试集运行失败: {e}")
        return jsonify({
            'success': False,
            'error': str(e)
        }), 500


@bench_bp.route('/table2', methods=['POST'])
def table2():
    """运行多维BFGS测试集"""
    try:
        data = request.get_json(silent=True) or {}

        report = run_table2(overrides=data.get('overrides'),
                            line_search_overrides=data.get('line_search_overrides'),
                            reference=bool(data.get('reference', False)),
                            **_bench_options())

        return jsonify({
            'success': True,
            'data': report.to_dict()
        })

    except ValueError as e:
        logger.warning(f"多维测试集参数错误: {e}")
        return jsonify({
            'success': False,
            'error': str(e)
        }), 400
    except Exception as e:
        logger.error(f"多维测试集运行失败: {e}")
        return jsonify({
            'success': False,
            'error': str(e)
        }), 500


@bench_bp.route('/config', methods=['GET'])
def get_solver_config():
    """获取求解器配置"""
    try:
        return jsonify({
            'success': True,
            'data': {
                'config': get_solver_config_manager().get_full_config(),
                'config_path': get_solver_config_manager().config_path
            }
        })
    except Exception as e:
        logger.error(f"获取求解器配置失败: {e}")
        return jsonify({
            'success': False,
            'error': f'获取求解器配置失败: {str(e)}'
        }), 500


@bench_bp.route('/config', methods=['POST'])
def update_solver_config():
    """更新求解器配置（仅内存，不写回文件）"""
    try:
        new_config = request.get_json(silent=True)
        if not new_config:
            return jsonify({
                'success': False,
                'error': '配置数据不能为空'
            }), 400

        get_solver_config_manager().update_config(new_config)

        return jsonify({
            'success': True,
            'message': '配置更新成功'
        })

    except ValueError as e:
        logger.warning(f"求解器配置更新无效: {e}")
        return jsonify({
            'success': False,
            'error': str(e)
        }), 400
    except Exception as e:
        logger.error(f"更新求解器配置失败: {e}")
        return jsonify({
            'success': False,
            'error': f'更新求解器配置失败: {str(e)}'
        }), 500
