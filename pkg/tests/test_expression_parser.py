import math

import numpy as np
import pytest

from app.services.benchmark.expression_parser import (
    ExpressionSyntaxError,
    parse,
    parse_expression,
    tokenize,
)
from app.services.benchmark.test_functions import TABLE1_CASES


@pytest.mark.parametrize('source, t, expected', [
    ('(t-3)^12 + 3*t^4', 3.0, 243.0),
    ('t', 7.5, 7.5),
    ('cos(t) + (t-2)^2', 2.0, math.cos(2.0)),
    ('-t^2', 3.0, -9.0),
    ('2^3^2', 0.0, 512.0),
    ('2*pi', 0.0, 2 * math.pi),
    ('log(e)', 0.0, 1.0),
    ('1.5e2 / t', 3.0, 50.0),
    ('--t', 4.0, 4.0),
    ('+t - -1', 1.0, 2.0),
    ('abs(t) * sqrt(4)', -2.0, 4.0),
])
def test_evaluation(source, t, expected):
    assert parse(source)(t) == pytest.approx(expected, rel=1e-15)


def test_operator_precedence():
    expr = parse('1 + 2*t^2 - 6/3')
    assert expr(2.0) == 7.0
    assert parse('(1 + 2)*t').pretty() == '((1.0 + 2.0) * t)'
    assert parse('-t^2').pretty() == '(-(t ^ 2.0))'


def test_tokenize_offsets():
    tokens = tokenize('sin(t) +2')
    assert [(tok.kind, tok.offset) for tok in tokens] == [
        ('name', 0), ('op', 3), ('name', 4), ('op', 5), ('op', 7), ('number', 8), ('end', 9),
    ]


@pytest.mark.parametrize('source, offset', [
    ('', 0),
    ('   ', 0),
    ('foo(t)', 0),
    ('(t+1', 4),
    ('t+1)', 3),
    ('t +', 3),
    ('2 $ t', 2),
    ('sin t', 4),
    ('t t', 2),
])
def test_syntax_errors_report_offset(source, offset):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse(source)
    assert info.value.offset == offset
    assert info.value.expected


def test_wrong_arity():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse('sin(t, t)')
    assert info.value.offset == 0
    assert '1' in info.value.expected


def test_syntax_error_is_value_error():
    with pytest.raises(ValueError):
        parse('(')


def test_domain_error_and_overflow():
    with pytest.raises(ValueError):
        parse('log(t)')(-1.0)
    with pytest.raises(ValueError):
        parse('1/t')(0.0)
    assert parse('exp(t)')(1000.0) == math.inf


@pytest.mark.parametrize('case', TABLE1_CASES, ids=[case.name for case in TABLE1_CASES])
def test_pretty_print_round_trip(case):
    expr = parse(case.expression)
    again = parse(expr.pretty())
    a, b = case.interval
    for t in np.linspace(a, b, 100):
        try:
            expected = expr(t)
        except ValueError:
            continue
        assert again(t) == expected


@pytest.mark.parametrize('case', TABLE1_CASES, ids=[case.name for case in TABLE1_CASES])
def test_expression_matches_registered_objective(case):
    expr = parse(case.expression)
    a, b = case.interval
    for t in np.linspace(a, b, 25):
        assert expr(t) == pytest.approx(case.objective(t), rel=1e-9, abs=1e-9)


def test_parse_expression_counts_evaluations():
    objective = parse_expression('t^2')
    assert objective.name == 't^2'
    objective(1.0)
    objective(2.0)
    assert objective.evaluations == 2
    objective.reset()
    assert objective.evaluations == 0
