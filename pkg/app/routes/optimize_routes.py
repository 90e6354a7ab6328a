from flask import Blueprint, jsonify, request
import logging

from app.services.benchmark import run_bfgs, run_minimize
from app.services.cubic_solver import describe_roots
from app.services.spectral import full_diff_matrix, row_diff_matrix

logger = logging.getLogger(__name__)

optimize_bp = Blueprint('optimize', __name__)

# 请求体中可以覆盖的线搜索字段
LINE_SEARCH_FIELDS = ('m_grid', 'f_max', 'eps_c', 'eps_d', 'eps', 'k_max', 'l_sub',
                      'brent_tol', 'brent_max_iter')


def _error(message, status):
    return jsonify({
        'success': False,
        'error': message
    }), status


def _body():
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise ValueError('请求体必须是JSON对象')
    return data


@optimize_bp.route('/minimize', methods=['POST'])
def minimize():
    """一维极小化"""
    try:
        data = _body()
        overrides = data.get('overrides')
        if overrides is None:
            overrides = {}
        if not isinstance(overrides, dict):
            raise ValueError('overrides 必须是JSON对象')
        overrides = dict(overrides)
        overrides.update({k: data[k] for k in LINE_SEARCH_FIELDS if k in data})

        report, state = run_minimize(
            fn=data.get('fn'),
            expr=data.get('expr'),
            a=data.get('a'),
            b=data.get('b'),
            order=data.get('order', 2),
            overrides=overrides
        )
        row = report.rows[0].to_dict()

        return jsonify({
            'success': True,
            'data': {
                'solver': row['solver'],
                't_star': row['result'],
                'fval': row['fval'],
                'cd_n': row['metric'],
                'state': state.to_dict()
            }
        })

    except ValueError as e:
        logger.warning(f"一维极小化参数错误: {e}")
        return _error(str(e), 400)
    except Exception as e:
        logger.error(f"一维极小化失败: {e}")
        return _error(str(e), 500)


@optimize_bp.route('/bfgs', methods=['POST'])
def bfgs():
    """多维测试函数的修正BFGS"""
    try:
        data = _body()
        fn = data.get('fn')
        if not fn:
            return _error('必须指定多维测试函数 fn', 400)

        state = run_bfgs(fn, x0=data.get('x0'), overrides=data.get('overrides'),
                         line_search_overrides=data.get('line_search_overrides'))

        return jsonify({
            'success': True,
            'data': state.to_dict()
        })

    except ValueError as e:
        logger.warning(f"BFGS参数错误: {e}")
        return _error(str(e), 400)
    except Exception as e:
        logger.error(f"BFGS求解失败: {e}")
        return _error(str(e), 500)


@optimize_bp.route('/diffmat', methods=['POST'])
def diffmat():
    """Chebyshev微分矩阵，给出 at 时返回单行算子"""
    try:
        data = _body()
        if 'n' not in data or 'm' not in data:
            return _error('必须指定网格阶数 n 和导数阶数 m', 400)
        n, m = int(data['n']), int(data['m'])

        if data.get('at') is None:
            op = full_diff_matrix(n, m)
        else:
            op = row_diff_matrix(n, m, float(data['at']))

        return jsonify({
            'success': True,
            'data': op.to_dict()
        })

    except ValueError as e:
        logger.warning(f"微分矩阵参数错误: {e}")
        return _error(str(e), 400)
    except Exception as e:
        logger.error(f"构建微分矩阵失败: {e}")
        return _error(str(e), 500)


@optimize_bp.route('/roots', methods=['POST'])
def roots():
    """三次方程求根诊断"""
    try:
        data = _body()
        coeffs = data.get('coeffs')
        if not isinstance(coeffs, list) or len(coeffs) != 4:
            return _error('coeffs 必须是4个系数 [A1, A2, A3, A4]', 400)

        return jsonify({
            'success': True,
            'data': describe_roots([float(c) for c in coeffs])
        })

    except ValueError as e:
        logger.warning(f"求根参数错误: {e}")
        return _error(str(e), 400)
    except Exception as e:
        logger.error(f"三次方程求根失败: {e}")
        return _error(str(e), 500)
