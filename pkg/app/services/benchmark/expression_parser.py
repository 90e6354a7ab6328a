"""
目标函数表达式解析器

Pratt（优先级爬升）解析变量 t 的算术表达式：
    + − * / ^、括号、一元正负号、常量 pi 与 e，
    函数 sin cos tan tanh sinh cosh exp log sqrt abs。
^ 为右结合；一元负号的优先级低于 ^，即 -t^2 = -(t^2)。
"""

import logging
import math
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from app.models.optimization_models import Objective1D

logger = logging.getLogger(__name__)

VARIABLE = 't'

FUNCTIONS: Dict[str, Callable[[float], float]] = {
    'sin': math.sin,
    'cos': math.cos,
    'tan': math.tan,
    'tanh': math.tanh,
    'sinh': math.sinh,
    'cosh': math.cosh,
    'exp': math.exp,
    'log': math.log,
    'sqrt': math.sqrt,
    'abs': abs,
}

CONSTANTS: Dict[str, float] = {
    'pi': math.pi,
    'e': math.e,
}

# 二元运算符的左结合力
BINDING_POWER = {'+': 10, '-': 10, '*': 20, '/': 20, '^': 30}
UNARY_POWER = 25

_TOKEN_PATTERN = re.compile(r"""
    (?P<space>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
""", re.VERBOSE)


class ExpressionSyntaxError(ValueError):
    """表达式语法错误，携带源文本位置与期望的记号"""

    def __init__(self, message: str, offset: int, expected: Optional[str] = None):
        self.offset = offset
        self.expected = expected
        detail = f"{message} (位置 {offset}"
        if expected:
            detail += f", 期望 {expected}"
        super().__init__(detail + ")")


@dataclass(frozen=True)
class Token:
    kind: str  # number | name | op | end
    text: str
    offset: int


def tokenize(source: str) -> List[Token]:
    """把表达式切分为记号序列，末尾追加 end 记号"""
    tokens = []
    position = 0
    while position < len(source):
        match = _TOKEN_PATTERN.match(source, position)
        if match is None:
            raise ExpressionSyntaxError(f"无法识别的字符 {source[position]!r}", position,
                                        expected="数字、名字或运算符")
        kind = match.lastgroup
        if kind != 'space':
            tokens.append(Token(kind, match.group(), position))
        position = match.end()
    tokens.append(Token('end', '', len(source)))
    return tokens


# ---- 语法树 ----

@dataclass(frozen=True)
class Number:
    value: float

    def evaluate(self, t: float) -> float:
        return self.value

    def pretty(self) -> str:
        return repr(self.value)


@dataclass(frozen=True)
class Name:
    name: str

    def evaluate(self, t: float) -> float:
        if self.name == VARIABLE:
            return t
        return CONSTANTS[self.name]

    def pretty(self) -> str:
        return self.name


@dataclass(frozen=True)
class Unary:
    op: str
    operand: object

    def evaluate(self, t: float) -> float:
        value = self.operand.evaluate(t)
        return -value if self.op == '-' else value

    def pretty(self) -> str:
        return f"({self.op}{self.operand.pretty()})"


@dataclass(frozen=True)
class Binary:
    op: str
    left: object
    right: object

    def evaluate(self, t: float) -> float:
        x = self.left.evaluate(t)
        y = self.right.evaluate(t)
        if self.op == '+':
            return x + y
        if self.op == '-':
            return x - y
        if self.op == '*':
            return x * y
        if self.op == '/':
            return x / y
        return math.pow(x, y)

    def pretty(self) -> str:
        return f"({self.left.pretty()} {self.op} {self.right.pretty()})"


@dataclass(frozen=True)
class Call:
    function: str
    argument: object

    def evaluate(self, t: float) -> float:
        return FUNCTIONS[self.function](self.argument.evaluate(t))

    def pretty(self) -> str:
        return f"{self.function}({self.argument.pretty()})"


class Expression:
    """解析后的表达式"""

    def __init__(self, source: str, tree):
        self.source = source
        self.tree = tree

    def __call__(self, t: float) -> float:
        return self.evaluate(t)

    def evaluate(self, t: float) -> float:
        try:
            return float(self.tree.evaluate(float(t)))
        except OverflowError:
            return math.inf
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"表达式 {self.source!r} 在 t={t} 处无法求值: {e}") from e

    def pretty(self) -> str:
        return self.tree.pretty()

    def __repr__(self) -> str:
        return f"Expression({self.source!r})"


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.token
        self.index += 1
        return token

    def expect(self, text: str) -> Token:
        if self.token.text != text:
            found = self.token.text or '表达式结尾'
            raise ExpressionSyntaxError(f"意外的记号 {found!r}", self.token.offset, expected=repr(text))
        return self.advance()

    def parse(self):
        tree = self.expression(0)
        if self.token.kind != 'end':
            if self.token.text == ')':
                raise ExpressionSyntaxError("括号不匹配", self.token.offset, expected='运算符或结尾')
            raise ExpressionSyntaxError(f"多余的记号 {self.token.text!r}", self.token.offset,
                                        expected='运算符或结尾')
        return tree

    def expression(self, rbp: int):
        left = self.prefix(self.advance())
        while self.token.kind == 'op' and rbp < BINDING_POWER.get(self.token.text, 0):
            op = self.advance().text
            # ^ 右结合：右侧以略低的结合力解析
            right_power = BINDING_POWER[op] - 1 if op == '^' else BINDING_POWER[op]
            left = Binary(op, left, self.expression(right_power))
        return left

    def prefix(self, token: Token):
        if token.kind == 'number':
            return Number(float(token.text))
        if token.kind == 'name':
            return self.name(token)
        if token.text in ('-', '+'):
            return Unary(token.text, self.expression(UNARY_POWER))
        if token.text == '(':
            inner = self.expression(0)
            if self.token.text != ')':
                raise ExpressionSyntaxError("括号不匹配", self.token.offset, expected="')'")
            self.advance()
            return inner
        found = token.text or '表达式结尾'
        raise ExpressionSyntaxError(f"意外的记号 {found!r}", token.offset, expected='数字、变量或函数')

    def name(self, token: Token):
        if token.text in FUNCTIONS:
            if self.token.text != '(':
                raise ExpressionSyntaxError(f"函数 {token.text} 缺少参数列表", self.token.offset,
                                            expected="'('")
            self.advance()
            arguments = [self.expression(0)]
            while self.token.text == ',':
                self.advance()
                arguments.append(self.expression(0))
            if self.token.text != ')':
                raise ExpressionSyntaxError("括号不匹配", self.token.offset, expected="')'")
            self.advance()
            if len(arguments) != 1:
                raise ExpressionSyntaxError(f"函数 {token.text} 需要1个参数, 实际 {len(arguments)} 个",
                                            token.offset, expected='1个参数')
            return Call(token.text, arguments[0])
        if token.text == VARIABLE or token.text in CONSTANTS:
            return Name(token.text)
        raise ExpressionSyntaxError(f"未知标识符 {token.text!r}", token.offset,
                                    expected=f"变量 {VARIABLE}、常量或函数名")


def parse(source: str) -> Expression:
    """解析表达式源文本"""
    if not source or not source.strip():
        raise ExpressionSyntaxError("表达式为空", 0, expected='表达式')
    tree = _Parser(source).parse()
    logger.debug(f"解析表达式: {source!r} -> {tree.pretty()}")
    return Expression(source, tree)


def parse_expression(source: str) -> Objective1D:
    """解析表达式并包装为计数的一维目标函数"""
    return Objective1D(parse(source), name=source)

