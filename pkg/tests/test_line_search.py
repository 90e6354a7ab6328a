import math

import numpy as np
import pytest

from app.models.optimization_models import LineSearchConfig, Objective1D, SearchState, SearchStatus
from app.services.benchmark.bench_service import check_case_1d
from app.services.benchmark.test_functions import TABLE1_CASES, f4, f5, f7, f11
from app.services.line_search import (
    BrentReferenceSearch,
    FirstOrderSearch,
    LineSearchFactory,
    SecondOrderSearch,
    brent_minimize,
    chebyshev_newton,
    cpslsm_minimize,
    cpslsm_minimize_first_order,
    golden_section_step,
    locate_uncertainty_interval,
)
from app.services.line_search.base_search import BaseLineSearch, grid_samples
from app.services.line_search.first_order import companion_point
from app.services.line_search.golden_section import RHO_1, RHO_2

CASE_IDS = [case.name for case in TABLE1_CASES]


def test_golden_step_shrinks_by_rho_squared():
    step = golden_section_step(lambda t: (t - 0.3) ** 2, 0.0, 1.0)
    assert step.b - step.a == pytest.approx(1.0 / RHO_2)
    assert step.a <= 0.3 <= step.b
    assert step.t_best == pytest.approx(1.0 / (RHO_1 * RHO_2), rel=1e-12)
    assert not step.converged


def test_golden_step_converged_flag_and_bad_interval():
    assert golden_section_step(lambda t: t * t, -1.0, 1.0, eps=1.0).converged
    with pytest.raises(ValueError):
        golden_section_step(lambda t: t, 1.0, 1.0)


def test_brent_on_cosine():
    result = brent_minimize(math.cos, 3.0, 4.0)
    assert result.converged
    assert result.t == pytest.approx(math.pi, abs=5e-8)
    assert result.f == pytest.approx(-1.0, abs=1e-14)


def test_brent_quadratic_and_cap():
    result = brent_minimize(lambda t: (t - 2.0) ** 2, 0.0, 5.0)
    assert result.t == pytest.approx(2.0, abs=1e-7)
    capped = brent_minimize(math.cos, 0.0, 6.0, cap=2)
    assert not capped.converged and capped.iterations == 2
    with pytest.raises(ValueError):
        brent_minimize(math.cos, 4.0, 3.0)


def test_locator_interior_minimum():
    bracket = locate_uncertainty_interval(lambda t: (t - 0.5) ** 2, 0.0, 1.0)
    assert bracket.found and bracket.iterations == 1
    assert bracket.interval == pytest.approx((0.4, 0.6))


@pytest.mark.parametrize('f, a, b, t_star', [(f5, 1.0, 20.0, 40.7772610902992),
                                            (f11, 0.0, 10.0, 99.0)])
def test_locator_expands_to_far_minimum(f, a, b, t_star):
    bracket = locate_uncertainty_interval(f, a, b)
    assert bracket.found
    assert bracket.a < t_star < bracket.b


def test_locator_expands_left():
    bracket = locate_uncertainty_interval(lambda t: (t + 7.0) ** 2, 0.0, 1.0)
    assert bracket.found
    assert bracket.a < -7.0 < bracket.b


def test_locator_rightward_only_keeps_left_end():
    bracket = locate_uncertainty_interval(lambda t: t * t, 1.0, 2.0, rightward_only=True)
    assert bracket.found
    assert bracket.a == 1.0 and bracket.b == pytest.approx(1.1)


def test_locator_reports_failure_on_unbounded_descent():
    bracket = locate_uncertainty_interval(lambda t: -t, 0.0, 1.0, LineSearchConfig(k_max=3))
    assert not bracket.found
    assert bracket.interval is None


def test_grid_samples_scaled_when_large():
    state = SearchState(a=0.0, b=1.0)
    samples = grid_samples(lambda t: 1000.0 * (t + 1.0), state, 4, 100.0)
    assert np.max(np.abs(samples)) == pytest.approx(1.0)
    unscaled = grid_samples(lambda t: t, state, 4, 100.0)
    assert unscaled[0] == 1.0 and unscaled[-1] == 0.0


def test_sample_scaling_leaves_iterates_unchanged():
    def objective(t):
        return 1000.0 * f4(t)

    assert np.max(np.abs(grid_samples(objective, SearchState(a=2.0, b=3.0), 4, 100.0))) == 1.0
    scaled = cpslsm_minimize(objective, 0.0, 5.0, LineSearchConfig(f_max=100.0))
    unscaled = cpslsm_minimize(objective, 0.0, 5.0, LineSearchConfig(f_max=1e12))
    assert scaled.converged and unscaled.converged
    assert [r.branch for r in scaled.trace] == [r.branch for r in unscaled.trace]
    for left, right in zip(scaled.trace, unscaled.trace):
        if left.x is not None:
            assert left.x == pytest.approx(right.x, abs=1e-12)
    assert scaled.t_star == pytest.approx(unscaled.t_star, abs=1e-12)
    assert scaled.k == unscaled.k


@pytest.mark.parametrize('case', TABLE1_CASES, ids=CASE_IDS)
def test_second_order_table1(case):
    state = cpslsm_minimize(case.objective, *case.interval)
    passed, message = check_case_1d(case, state)
    assert passed, message
    assert state.k <= 100


@pytest.mark.parametrize('case', TABLE1_CASES, ids=CASE_IDS)
def test_first_order_table1(case):
    state = cpslsm_minimize_first_order(case.objective, *case.interval)
    passed, message = check_case_1d(case, state)
    assert passed, message


def test_f7_exact_hit():
    state = cpslsm_minimize(f7, -10.0, 10.0)
    assert state.converged
    assert state.t_star == 0.0


def test_newton_refinement_on_quadratic():
    state = SearchState(a=0.0, b=2.0, x1=0.2)
    result = chebyshev_newton(lambda t: (t - 1.3) ** 2, state)
    assert result.status == SearchStatus.CONVERGED
    assert result.t_star == pytest.approx(1.3, abs=1e-12)


def test_linear_derivative_case_per_variant():
    # eps_c 取大值，二次目标必然落入线性导数分支
    config = LineSearchConfig(eps_c=1e-6, locate_interval=False)

    second = cpslsm_minimize(lambda t: (t - 2.0) ** 2, 0.0, 4.0, config)
    assert [r.branch for r in second.trace] == ['linear_root']
    assert second.t_star == pytest.approx(2.0, abs=1e-12)

    first = cpslsm_minimize_first_order(lambda t: (t - 2.0) ** 2, 0.0, 4.0, config)
    branches = [r.branch for r in first.trace]
    assert branches[:2] == ['linear', 'golden']
    assert 'linear_root' not in branches
    assert first.converged
    assert first.t_star == pytest.approx(2.0, abs=1e-8)


def test_iteration_cap_returns_current_iterate():
    class IdleSearch(BaseLineSearch):
        """外层循环不做局部细化"""
        name = 'idle'

        def _refine_after_golden(self, f, state, step):
            pass

        def _refine_from_roots(self, f, state, roots, best):
            pass

    config = LineSearchConfig(k_max=3)
    state = IdleSearch(config).minimize(f4, 0.0, 5.0)
    assert state.status == SearchStatus.MAX_ITERATIONS
    assert 2.0 <= state.t_star <= 3.0
    assert state.f_star == f4(state.t_star)
    assert len(state.trace) <= config.k_max


def test_bracket_failure_status():
    state = cpslsm_minimize(lambda t: -t, 0.0, 1.0, LineSearchConfig(k_max=3))
    assert state.status == SearchStatus.BRACKET_FAILED
    assert state.t_star is None


def test_evaluations_counted():
    objective = Objective1D(f4, 'f4')
    state = cpslsm_minimize(objective, 0.0, 5.0)
    assert state.evaluations == objective.evaluations > 0
    assert state.trace[0].branch == 'bracket'


def test_companion_point():
    roots = (0.8, 0.1, -0.5)
    assert companion_point(roots, 0) == pytest.approx(0.8 - 0.7 / RHO_2)
    assert companion_point(roots, 1) == pytest.approx(0.1 - 0.6 / RHO_2)
    assert companion_point(roots, 2) == pytest.approx(-0.5 + 0.6 / RHO_2)


def test_factory():
    assert isinstance(LineSearchFactory.create_search(2), SecondOrderSearch)
    assert isinstance(LineSearchFactory.create_search('first'), FirstOrderSearch)
    assert isinstance(LineSearchFactory.create_search('brent'), BrentReferenceSearch)
    with pytest.raises(ValueError):
        LineSearchFactory.create_search('third')


def test_brent_reference_search():
    state = LineSearchFactory.create_search('brent').minimize(f4, 0.0, 5.0)
    assert state.converged
    assert state.t_star == pytest.approx(2.35424275822278, abs=1e-6)


def test_config_validation():
    with pytest.raises(ValueError):
        LineSearchConfig(eps=0.0)
    with pytest.raises(ValueError):
        LineSearchConfig(m_grid=1)
    assert LineSearchConfig(eps=1e-8).brent_tol == 1e-8
