#!/usr/bin/env python3
"""
Chebyshev 伪谱线搜索启动文件
命令行子命令见 app/cli.py，不带参数等同于 serve
"""
import logging
import sys
import warnings
from typing import List, Optional

from dotenv import load_dotenv

# 加载环境变量文件
load_dotenv('config.env')

from app.cli import build_parser, dispatch
from config import Config


def setup_environment():
    """设置警告抑制"""
    # 端点处的溢出/除零在目标函数里按 inf 处理
    warnings.filterwarnings('ignore', category=RuntimeWarning, module='numpy')


def setup_logging(level: Optional[str] = None):
    """设置日志，报告走标准输出，日志走标准错误和文件"""
    logging.basicConfig(
        level=getattr(logging, (level or Config.LOG_LEVEL).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(Config.LOG_FILE, encoding='utf-8'),
            logging.StreamHandler(sys.stderr)
        ],
        force=True
    )


def main(argv: Optional[List[str]] = None) -> int:
    """主函数"""
    setup_environment()

    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(argv or ['serve'])

    setup_logging(args.log_level)
    logger = logging.getLogger(__name__)

    try:
        return dispatch(args)
    except Exception as e:
        logger.error(f"运行失败: {e}")
        raise


if __name__ == '__main__':
    sys.exit(main())
