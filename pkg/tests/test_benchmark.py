import io
import json
import math

import numpy as np
import pandas as pd
import pytest

from app.models.optimization_models import CaseResult, RunReport
from app.services.benchmark import (
    TABLE1_CASES,
    TABLE2_CASES,
    cd_n,
    emit_report,
    get_case_1d,
    get_case_nd,
    list_cases,
    plot_data,
    render_report,
    run_bfgs,
    run_minimize,
    run_table1,
    run_table2,
)


def test_cd_n():
    assert cd_n(1.0, 1.0 + 1e-6) == pytest.approx(6.0)
    assert cd_n(2.0, 2.0) == math.inf
    assert cd_n(0.0, -0.01) == pytest.approx(2.0)


@pytest.mark.parametrize('case', TABLE1_CASES, ids=[case.name for case in TABLE1_CASES])
def test_registered_minima_are_consistent(case):
    assert case.objective(case.t_star) == pytest.approx(case.f_star, rel=1e-10, abs=1e-12)


def test_registered_multidimensional_minima():
    for case in TABLE2_CASES:
        assert case.x0.shape == (case.dimension,)
        if case.x_star is not None:
            assert case.objective(case.x_star) == pytest.approx(case.f_star, abs=1e-12)


def test_case_lookup():
    assert get_case_1d('f4').interval == (0.0, 5.0)
    assert get_case_nd('booth').dimension == 2
    with pytest.raises(ValueError):
        get_case_1d('f13')
    with pytest.raises(ValueError):
        get_case_nd('rosenbrock')
    listing = list_cases()
    assert len(listing['one_dimensional']) == 12
    assert len(listing['multi_dimensional']) == len(TABLE2_CASES)


def test_table1_second_order_report():
    report = run_table1('second')
    assert report.suite == 'table1-second'
    assert [row.case for row in report.rows] == [case.name for case in TABLE1_CASES]
    assert report.all_passed, [(r.case, r.message) for r in report.rows if not r.passed]
    f7_row = next(row for row in report.rows if row.case == 'f7')
    assert f7_row.metric == math.inf


def test_table1_reference_rows_not_gated():
    cases = [get_case_1d('f3'), get_case_1d('f4')]
    report = run_table1('first', reference=True, cases=cases)
    assert [(r.case, r.solver) for r in report.rows] == [
        ('f3', 'cpslsm-1'), ('f3', 'brent'), ('f4', 'cpslsm-1'), ('f4', 'brent'),
    ]
    assert all(r.passed is None for r in report.rows if r.solver == 'brent')
    assert report.summary()['gated'] == 2


def test_table1_unknown_variant():
    with pytest.raises(ValueError):
        run_table1('third')


def test_table1_deterministic_apart_from_timing():
    cases = TABLE1_CASES[:4]
    first = run_table1('second', cases=cases).to_dict()
    second = run_table1('second', cases=cases, max_workers=3).to_dict()
    for row in first['rows'] + second['rows']:
        row.pop('time_ms')
    assert first == second


def test_table2_report():
    report = run_table2()
    assert report.metric_name == 'EN'
    assert [row.case for row in report.rows] == [case.name for case in TABLE2_CASES]
    assert report.all_passed, [(r.case, r.message) for r in report.rows if not r.passed]
    rows = {row.case: row for row in report.rows}
    assert rows['booth'].iterations <= 3
    assert rows['styblinski_tang4'].iterations <= 30
    assert rows['styblinski_tang12'].iterations <= 80
    assert rows['powell4'].fval <= 1e-12
    assert abs(rows['goldstein_price'].fval - 3.0) <= 1e-6


def test_first_order_iterations_within_three_times_second_order():
    second = {row.case: row.iterations for row in run_table1('second').rows}
    first = {row.case: row.iterations for row in run_table1('first').rows}
    for name, k in first.items():
        assert k <= 3 * max(second[name], 1), (name, k, second[name])


def test_run_minimize_builtin_and_expression():
    report, state = run_minimize(fn='f4')
    row = report.rows[0]
    assert state.converged and row.passed
    assert row.metric > 6
    report, state = run_minimize(expr='cos(t) + (t-2)^2', a=0.0, b=5.0, order=1)
    assert report.rows[0].solver == 'cpslsm-1'
    assert report.rows[0].metric is None
    assert state.t_star == pytest.approx(2.35424275822278, abs=1e-6)


def test_run_minimize_arguments():
    with pytest.raises(ValueError):
        run_minimize()
    with pytest.raises(ValueError):
        run_minimize(fn='f4', expr='t')
    with pytest.raises(ValueError):
        run_minimize(expr='t^2', a=0.0)
    with pytest.raises(ValueError):
        run_minimize(fn='f4', order=3)


def test_run_bfgs():
    state = run_bfgs('booth')
    assert state.converged
    np.testing.assert_allclose(state.x, [1.0, 3.0], atol=1e-8)
    with pytest.raises(ValueError):
        run_bfgs('booth', x0=[1.0, 2.0, 3.0])


def _report(*metrics):
    rows = [CaseResult(case=f'c{i}', solver='cpslsm-2', result=0.5, fval=-1.0, metric=m,
                       iterations=3, time_ms=0.25, status='converged', passed=True)
            for i, m in enumerate(metrics)]
    return RunReport(suite='table1-second', metric_name='cd_n', rows=rows)


def test_empty_report_is_header_only():
    text = render_report(_report())
    assert text.strip() == 'case,solver,result,fval,cd_n,iterations,time_ms,status'


def test_csv_cells():
    frame = pd.read_csv(io.StringIO(render_report(_report(math.inf, 40.0, 7.25, None))),
                        dtype=str, keep_default_na=False)
    assert list(frame['cd_n']) == ['exact', '16', '7.25', '']
    assert frame.loc[0, 'result'] == '0.5'
    assert frame.loc[0, 'time_ms'] == '0.250'


def test_json_report():
    data = json.loads(render_report(_report(math.inf, 3.5), 'json'))
    assert data['summary']['all_passed'] is True
    assert data['rows'][0]['metric'] == 'exact'
    assert data['rows'][1]['metric'] == 3.5
    with pytest.raises(ValueError):
        render_report(_report(), 'xml')


def test_multidimensional_result_joined():
    row = CaseResult(case='booth', solver='bfgs-cpslsm', result=[1.0, 3.0], fval=0.0, metric=0.0,
                     iterations=2, time_ms=1.0, status='converged', passed=True)
    text = render_report(RunReport(suite='table2', metric_name='EN', rows=[row]))
    assert '1;3' in text
    assert text.splitlines()[0].split(',')[4] == 'EN'


def test_emit_report_writes_file(tmp_path):
    path = tmp_path / 'table1.csv'
    text = emit_report(_report(5.0), 'csv', str(path))
    assert path.read_text(encoding='utf-8') == text


def test_emit_report_bad_path(tmp_path):
    with pytest.raises(OSError) as info:
        emit_report(_report(), 'csv', str(tmp_path / 'missing' / 'out.csv'))
    assert 'missing' in str(info.value)


def test_plot_data():
    frame = plot_data('f4', points=11)
    assert list(frame.columns) == ['t', 'f']
    assert len(frame) == 11
    assert frame['t'].iloc[0] == 0.0 and frame['t'].iloc[-1] == 5.0
    assert frame['f'].iloc[0] == pytest.approx(5.0)
    frame = plot_data(expr='t^2', interval=(-1.0, 1.0), points=3)
    assert list(frame['f']) == [1.0, 0.0, 1.0]
    assert len(plot_data('f1')) == 201
    with pytest.raises(ValueError):
        plot_data(expr='t')
    with pytest.raises(ValueError):
        plot_data('f4', interval=(1.0, 1.0))
