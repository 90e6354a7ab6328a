import os

from flask import Flask, jsonify
from flask_cors import CORS

from config import config


def create_app(config_name=None):
    """Flask应用工厂函数"""
    app = Flask(__name__)

    # 配置
    config_name = config_name or os.getenv('FLASK_CONFIG') or 'default'
    if config_name not in config:
        raise ValueError(f"未知的配置名称: {config_name}, 可选 {', '.join(config)}")
    app.config.from_object(config[config_name])
    config[config_name].init_app(app)

    # 初始化扩展
    CORS(app)

    # 求解器预设文件；已有全局实例时（例如命令行 --config）保持不变
    from app.services.solver_config_manager import get_solver_config_manager
    get_solver_config_manager(app.config['SOLVER_CONFIG_PATH'])

    # 注册蓝图
    from app.routes.optimize_routes import optimize_bp
    from app.routes.bench_routes import bench_bp

    app.register_blueprint(optimize_bp, url_prefix='/api/optimize')
    app.register_blueprint(bench_bp, url_prefix='/api/bench')

    @app.route('/api/health')
    def health():
        return jsonify({'success': True, 'data': {'status': 'ok'}})

    return app
