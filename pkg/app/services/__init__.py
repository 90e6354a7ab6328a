"""
求解服务层

spectral: Chebyshev 谱微分；line_search: 一维线搜索；
multivariate: 修正 BFGS；benchmark: 测试函数与基准运行
"""
