"""
命令行入口

子命令:
    minimize   一维极小化（内置函数或表达式）
    bench      table1 / table2 基准测试
    diffmat    输出 Chebyshev 微分矩阵
    roots      三次方程求根诊断（含条件数）
    plotdata   函数采样数据
    serve      启动 HTTP 服务

退出码: 0 全部通过 / 收敛，1 未通过，2 参数或表达式错误
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

import pandas as pd

from app.services.benchmark import (
    ExpressionSyntaxError,
    emit_report,
    plot_data,
    run_minimize,
    run_table1,
    run_table2,
)
from app.services.cubic_solver import describe_roots
from app.services.solver_config_manager import get_solver_config_manager, reset_solver_config_manager
from app.services.spectral import full_diff_matrix, row_diff_matrix

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

EXPRESSION_HELP = """\
表达式语法:
  变量 t，数字字面量，常量 pi、e，运算符 + - * / ^ 与括号
  函数 sin cos tan tanh sinh cosh exp log sqrt abs
  ^ 右结合且优先级最高，一元负号作用于整个幂: -t^2 = -(t^2)
  负数开头的参数用等号传递，例如 --coeffs=-1,0,1,0
"""


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=('csv', 'json'), default='csv', help='输出格式')
    common.add_argument('--out', metavar='PATH', help='输出文件，缺省写到标准输出')
    common.add_argument('--config', metavar='PATH', help='求解器配置文件 (YAML)')
    common.add_argument('--log-level', default=None,
                        choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'), help='日志级别')
    return common


def _add_objective_options(parser: argparse.ArgumentParser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--expr', help='关于 t 的表达式')
    source.add_argument('--fn', metavar='NAME', help='内置测试函数 f1..f12')
    parser.add_argument('--a', type=float, help='区间左端点')
    parser.add_argument('--b', type=float, help='区间右端点')


def build_parser() -> argparse.ArgumentParser:
    """构建参数解析器"""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog='cheb-linesearch',
        description='Chebyshev 伪谱线搜索与修正 BFGS',
        epilog=EXPRESSION_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest='command', required=True)

    minimize = commands.add_parser('minimize', parents=[common], help='一维极小化',
                                   epilog=EXPRESSION_HELP,
                                   formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_objective_options(minimize)
    minimize.add_argument('--order', choices=('1', '2'), default='2', help='1 割线版本，2 Newton 版本')
    minimize.add_argument('--eps', type=float, help='解容差 ε')
    minimize.add_argument('--m-grid', type=int, help='行微分算子的网格阶数')
    minimize.add_argument('--k-max', type=int, help='迭代上限')

    bench = commands.add_parser('bench', help='基准测试')
    suites = bench.add_subparsers(dest='suite', required=True)
    table1 = suites.add_parser('table1', parents=[common], help='一维 12 个测试函数')
    table1.add_argument('--order', choices=('1', '2'), default='2')
    table1.add_argument('--reference', action='store_true', help='追加 Brent 参考行')
    table2 = suites.add_parser('table2', parents=[common], help='多维 BFGS 测试')
    table2.add_argument('--reference', action='store_true', help='追加 BFGS-Brent 参考行')

    diffmat = commands.add_parser('diffmat', parents=[common], help='输出微分矩阵')
    diffmat.add_argument('--n', type=int, required=True, help='网格阶数')
    diffmat.add_argument('--m', type=int, required=True, help='导数阶数')
    diffmat.add_argument('--at', type=float, help='只输出该平移点处的单行算子')

    roots = commands.add_parser('roots', parents=[common], help='三次方程求根诊断',
                                epilog=EXPRESSION_HELP,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    roots.add_argument('--coeffs', required=True, metavar='A1,A2,A3,A4', help='单项式系数')

    plot = commands.add_parser('plotdata', parents=[common], help='函数采样数据')
    _add_objective_options(plot)
    plot.add_argument('--points', type=int, help='采样点数')

    commands.add_parser('serve', parents=[common], help='启动 HTTP 服务')
    return parser


def _write(text: str, path: Optional[str]):
    if not path:
        sys.stdout.write(text)
        if not text.endswith('\n'):
            sys.stdout.write('\n')
        return
    try:
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    except OSError as e:
        raise OSError(f"写入输出失败 {path}: {e}") from e
    logger.info(f"📄 输出已写入: {path}")


def _emit(report, args) -> int:
    text = emit_report(report, args.format, args.out)
    if not args.out:
        _write(text, None)
    return EXIT_OK if report.all_passed else EXIT_FAILED


def _cmd_minimize(args) -> int:
    overrides = {'eps': args.eps, 'm_grid': args.m_grid, 'k_max': args.k_max}
    report, state = run_minimize(fn=args.fn, expr=args.expr, a=args.a, b=args.b,
                                 order=args.order, overrides=overrides)
    if args.format == 'json':
        payload = report.to_dict()
        payload['state'] = state.to_dict()
        _write(json.dumps(payload, ensure_ascii=False, indent=2), args.out)
        return EXIT_OK if state.converged else EXIT_FAILED
    return _emit(report, args)


def _cmd_bench(args) -> int:
    if args.suite == 'table1':
        variant = 'second' if args.order == '2' else 'first'
        report = run_table1(variant, reference=args.reference)
    else:
        report = run_table2(reference=args.reference)
    return _emit(report, args)


def _cmd_diffmat(args) -> int:
    if args.at is None:
        op = full_diff_matrix(args.n, args.m)
    else:
        op = row_diff_matrix(args.n, args.m, args.at)
    if args.format == 'json':
        text = json.dumps(op.to_dict(), indent=2)
    else:
        entries = op.entries.reshape(1, -1) if op.entries.ndim == 1 else op.entries
        text = pd.DataFrame(entries).to_csv(index=False, header=False, float_format='%.17g')
    _write(text, args.out)
    return EXIT_OK


def _parse_coeffs(raw: str) -> List[float]:
    parts = [p.strip() for p in raw.split(',')]
    if len(parts) != 4:
        raise ValueError(f"--coeffs 需要4个逗号分隔的系数, 实际 {len(parts)}: {raw!r}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise ValueError(f"--coeffs 含有无法解析的数值: {raw!r}")


def _cmd_roots(args) -> int:
    info = describe_roots(_parse_coeffs(args.coeffs))
    if args.format == 'json':
        text = json.dumps(info, ensure_ascii=False, indent=2)
    else:
        records = []
        for row in info['roots']:
            kappas = row['condition'] or [None] * 4
            records.append({
                'index': row['index'],
                'real': row['real'],
                'imag': row['imag'],
                'residual': row['residual'],
                'kappa_1': kappas[0],
                'kappa_2': kappas[1],
                'kappa_3': kappas[2],
                'kappa_4': kappas[3],
                'bound': row['bound'],
                'classification': info['classification'],
            })
        text = pd.DataFrame(records).to_csv(index=False, float_format='%.17g')
    _write(text, args.out)
    return EXIT_OK


def _cmd_plotdata(args) -> int:
    interval = None
    if args.a is not None or args.b is not None:
        if args.a is None or args.b is None:
            raise ValueError("采样区间需要同时指定 --a 和 --b")
        interval = (args.a, args.b)
    frame = plot_data(name=args.fn, expr=args.expr, interval=interval, points=args.points)
    if args.format == 'json':
        text = frame.to_json(orient='records', double_precision=15)
    else:
        text = frame.to_csv(index=False, float_format='%.17g')
    _write(text, args.out)
    return EXIT_OK


def _cmd_serve(args) -> int:
    from app import create_app
    from config import Config

    app = create_app()
    logger.info(f"访问地址: http://{Config.APP_HOST}:{Config.APP_PORT}")
    app.run(host=Config.APP_HOST, port=Config.APP_PORT, debug=app.config.get('DEBUG', False))
    return EXIT_OK


COMMANDS = {
    'minimize': _cmd_minimize,
    'bench': _cmd_bench,
    'diffmat': _cmd_diffmat,
    'roots': _cmd_roots,
    'plotdata': _cmd_plotdata,
    'serve': _cmd_serve,
}


def dispatch(args: argparse.Namespace) -> int:
    """执行已解析的子命令并返回退出码"""
    try:
        if args.config:
            reset_solver_config_manager()
            get_solver_config_manager(args.config)
        return COMMANDS[args.command](args)
    except ExpressionSyntaxError as e:
        logger.error(f"表达式解析失败: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        logger.error(f"参数错误: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"输出失败: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    """解析参数并执行；argparse 的用法错误以退出码 2 结束"""
    args = build_parser().parse_args(argv)
    if args.log_level:
        logging.getLogger().setLevel(args.log_level)
    return dispatch(args)


if __name__ == '__main__':
    sys.exit(main())
