"""
LL(1) parser for the shared expression grammar.

Coefficients, polynomials and UEA elements all print in, and parse from, the
same grammar:

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | NAME | '(' expr ')'

NAME is either a generator name supplied by the caller (basis element, or its
capitalized form for UEA elements) or a lambda symbol "l3", "l5", ... .
The parser evaluates as it goes through an ExpressionBuilder, so "*" means
whatever product the builder implements (non-commutative for UEA elements).
"""
import re
from fractions import Fraction
from typing import Generic, List, NamedTuple, TypeVar

from errors import ParseError

V = TypeVar("V")

TOKEN_PATTERN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)
LAMBDA_NAME = re.compile(r"^l(\d+)$")


class Token(NamedTuple):
    kind: str  # "int", "name", "op" or "end"
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """Split an expression into tokens, raising ParseError on stray characters"""
    tokens = []
    position = 0
    stripped_end = len(text.rstrip())
    while position < stripped_end:
        match = TOKEN_PATTERN.match(text, position)
        if match is None or match.end() == position:
            raise ParseError(f"Unexpected character {text[position]!r} at {position} in {text!r}")
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class ExpressionBuilder(Generic[V]):
    """Evaluation callbacks used by the parser. Subclasses pick the value type."""

    def constant(self, value: Fraction) -> V:
        raise NotImplementedError

    def symbol(self, name: str) -> V:
        raise NotImplementedError

    def add(self, a: V, b: V) -> V:
        return a + b

    def sub(self, a: V, b: V) -> V:
        return a - b

    def mul(self, a: V, b: V) -> V:
        return a * b

    def neg(self, a: V) -> V:
        return -a

    def power(self, a: V, exponent: int) -> V:
        result = self.constant(Fraction(1))
        for _ in range(exponent):
            result = self.mul(result, a)
        return result


class _Parser(Generic[V]):
    def __init__(self, text: str, builder: ExpressionBuilder[V]):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.builder = builder

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _error(self, message: str) -> ParseError:
        return ParseError(f"{message} at position {self.current.position} in {self.text!r}")

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _expect(self, kind: str, text: str = None) -> Token:
        token = self.current
        if token.kind != kind or (text is not None and token.text != text):
            wanted = text or kind
            raise self._error(f"Expected {wanted!r}, got {token.text or 'end of input'!r}")
        return self._advance()

    def _at_op(self, *ops: str) -> bool:
        return self.current.kind == "op" and self.current.text in ops

    def parse(self) -> V:
        if self.current.kind == "end":
            raise self._error("Empty expression")
        value = self.expr()
        if self.current.kind != "end":
            raise self._error(f"Unexpected token {self.current.text!r}")
        return value

    def expr(self) -> V:
        value = self.term()
        while self._at_op("+", "-"):
            op = self._advance().text
            rhs = self.term()
            value = self.builder.add(value, rhs) if op == "+" else self.builder.sub(value, rhs)
        return value

    def term(self) -> V:
        value = self.unary()
        while self._at_op("*"):
            self._advance()
            value = self.builder.mul(value, self.unary())
        return value

    def unary(self) -> V:
        if self._at_op("-"):
            self._advance()
            return self.builder.neg(self.unary())
        if self._at_op("+"):
            self._advance()
            return self.unary()
        return self.power()

    def power(self) -> V:
        base = self.atom()
        if self._at_op("^"):
            self._advance()
            exponent = int(self._expect("int").text)
            return self.builder.power(base, exponent)
        return base

    def atom(self) -> V:
        token = self.current
        if token.kind == "int":
            self._advance()
            value = Fraction(int(token.text))
            if self._at_op("/"):
                self._advance()
                denominator = int(self._expect("int").text)
                if denominator == 0:
                    raise self._error("Zero denominator")
                value /= denominator
            return self.builder.constant(value)
        if token.kind == "name":
            self._advance()
            try:
                return self.builder.symbol(token.text)
            except ParseError as e:
                raise ParseError(f"{e} (at position {token.position} in {self.text!r})") from None
        if self._at_op("("):
            self._advance()
            value = self.expr()
            self._expect("op", ")")
            return value
        raise self._error(f"Unexpected token {token.text or 'end of input'!r}")


def parse_expression(text: str, builder: ExpressionBuilder[V]) -> V:
    """Parse and evaluate `text` with the given builder"""
    return _Parser(text, builder).parse()


def lambda_index(name: str):
    """Return n for a lambda symbol "ln", else None"""
    match = LAMBDA_NAME.match(name)
    return int(match.group(1)) if match else None
