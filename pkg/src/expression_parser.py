"""
expression_parser.py - Text input for algebra elements, coefficients and tensors.

Grammar:

    expr   := term (('+' | '-') term)*
    term   := ('+' | '-')* factor ('*'? factor)*
    factor := atom ('^' integer)?
    atom   := a | b | a* | b* | mu | X | Z | Z* | rational
            | inv(poly) | sqrt(poly) | rt(int) | '(' expr ')'

A '*' written directly after a, b or Z is always the star suffix, and
adjacent factors multiply, so 'a*a + b*b' is a* times a plus b* times b,
'b**a*' is b* times a*, and a product of a with b is written 'a * b' or 'a b'.
Negative powers apply to coefficients only.
Tensors join two expressions with '(x)': 'a (x) b + 2 * a* (x) a'.
Elements of the Laurent algebra use the atom u: 'u^3 + u^-1'.

Usage:
    python3 expression_parser.py "a * a* + b * b*"
"""

import logging
import re
import sys
from fractions import Fraction

from mu_coefficients import mu_constant, mu_linear, mu_power, mu_rt, mu_sqrt_linear
from nc_algebra import normalize, format_poly

logger = logging.getLogger(__name__)


class ExpressionSyntaxError(ValueError):
    """Malformed expression text; carries the 1-based line and column."""

    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class UnknownToken(ExpressionSyntaxError):
    """A character sequence that is not part of the grammar."""


# ── Lexer ──────────────────────────────────────────────────────────────────────

TOKEN_PATTERN = re.compile(r"""
    (?P<space>[ \t\r\n]+)
  | (?P<tensor>\(x\))
  | (?P<number>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z]+)
  | (?P<op>[-+*^(),])
""", re.VERBOSE)

STARRABLE = {'a', 'b', 'Z'}


class Token:
    __slots__ = ('kind', 'text', 'line', 'column')

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.column})"


def tokenize(text):
    """List of Tokens ending with an 'end' token."""
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        match = TOKEN_PATTERN.match(text, pos)
        column = pos - line_start + 1
        if match is None:
            raise UnknownToken(f"unexpected character {text[pos]!r}", line, column)
        kind = match.lastgroup
        value = match.group()
        end = match.end()
        if kind == 'space':
            newlines = value.count('\n')
            if newlines:
                line += newlines
                line_start = pos + value.rfind('\n') + 1
            pos = end
            continue
        if kind == 'name' and value in STARRABLE and text[end:end + 1] == '*':
            value += '*'
            end += 1
        tokens.append(Token(kind, value, line, column))
        pos = end
    tokens.append(Token('end', '', line, len(text) - line_start + 1))
    return tokens


# ── Parser ─────────────────────────────────────────────────────────────────────

GENERATOR_NAMES = {'a', 'b', 'a*', 'b*'}
SPHERE_NAMES = {'X', 'Z', 'Z*'}
FUNCTION_NAMES = {'inv', 'sqrt', 'rt'}


class Parser:
    """Recursive descent over the token list; builds ('add', l, r)-style trees."""

    def __init__(self, text, allow_laurent=False):
        self.tokens = tokenize(text)
        self.index = 0
        self.allow_laurent = allow_laurent

    @property
    def current(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def error(self, message, token=None):
        token = token or self.current
        return ExpressionSyntaxError(message, token.line, token.column)

    def accept(self, text):
        if self.current.kind == 'op' and self.current.text == text:
            return self.advance()
        return None

    def expect(self, text):
        token = self.accept(text)
        if token is None:
            found = self.current.text or 'end of input'
            raise self.error(f"expected {text!r}, found {found!r}")
        return token

    def expect_end(self):
        if self.current.kind != 'end':
            raise self.error(f"unexpected {self.current.text!r}")

    def expression(self):
        tree = self.term()
        while True:
            if self.accept('+'):
                tree = ('add', tree, self.term())
            elif self.accept('-'):
                tree = ('sub', tree, self.term())
            else:
                return tree

    def term(self):
        negative = False
        while self.current.kind == 'op' and self.current.text in '+-':
            negative ^= self.advance().text == '-'
        tree = self.factor()
        while self.accept('*') or self.starts_atom():
            tree = ('mul', tree, self.factor())
        return ('neg', tree) if negative else tree

    def starts_atom(self):
        token = self.current
        if token.kind in ('name', 'number'):
            return True
        return token.kind == 'op' and token.text == '('

    def factor(self):
        tree = self.atom()
        caret = self.accept('^')
        if caret:
            sign = 1
            if self.accept('-'):
                sign = -1
            else:
                self.accept('+')
            token = self.advance()
            if token.kind != 'number' or '/' in token.text:
                raise self.error("exponent must be an integer", token)
            tree = ('pow', tree, sign * int(token.text))
            if sign < 0:
                self.check_inverse(tree, caret)
        return tree

    def check_inverse(self, tree, caret):
        """Reject a negative power whose base is not an invertible coefficient."""
        if self.allow_laurent:
            return
        try:
            normalize(tree)
        except (ValueError, ArithmeticError) as exc:
            raise self.error(f"negative power of a non-invertible element: {exc}", caret)

    def atom(self):
        token = self.advance()
        if token.kind == 'number':
            try:
                value = Fraction(token.text)
            except ZeroDivisionError:
                raise self.error("division by zero", token)
            return ('scalar', mu_constant(value))
        if token.kind == 'op' and token.text == '(':
            tree = self.expression()
            self.expect(')')
            return tree
        if token.kind == 'name':
            name = token.text
            if name in GENERATOR_NAMES:
                return ('gen', name)
            if name in SPHERE_NAMES:
                return ('sphere', name)
            if name == 'mu':
                return ('scalar', mu_power(1))
            if name == 'u' and self.allow_laurent:
                return ('laurent', 1)
            if name in FUNCTION_NAMES:
                return self.function(token)
            raise UnknownToken(f"unknown name {name!r}", token.line, token.column)
        found = token.text or 'end of input'
        raise self.error(f"expected an atom, found {found!r}", token)

    def function(self, token):
        self.expect('(')
        if token.text == 'rt':
            argument = self.advance()
            if argument.kind != 'number' or '/' in argument.text:
                raise self.error("rt() takes a nonnegative integer", argument)
            self.expect(')')
            return ('scalar', mu_rt(int(argument.text)))
        inner_token = self.current
        inner = self.expression()
        self.expect(')')
        k = self.linear_index(inner, inner_token, token.text)
        if token.text == 'inv':
            return ('scalar', mu_linear(k, -1))
        return ('scalar', mu_sqrt_linear(k))

    def linear_index(self, tree, token, function):
        """k for an argument equal to 1+k*mu with k a nonzero integer."""
        try:
            value = normalize(tree)
        except (ValueError, ArithmeticError) as exc:
            raise self.error(f"bad argument to {function}(): {exc}", token)
        if value.is_scalar():
            k = _linear_coefficient(value.scalar_part())
            if k is not None:
                return k
        raise self.error(f"{function}() argument must be 1+k*mu with a nonzero integer k, "
                         f"got {format_poly(value)}", token)

    def tensor_expression(self):
        """List of (sign, left tree, right tree) simple tensors."""
        terms = [self.tensor_term(1)]
        while True:
            if self.accept('+'):
                terms.append(self.tensor_term(1))
            elif self.accept('-'):
                terms.append(self.tensor_term(-1))
            else:
                return terms

    def tensor_term(self, sign):
        left = self.term()
        token = self.current
        if token.kind != 'tensor':
            raise self.error("expected '(x)' between tensor legs")
        self.advance()
        right = self.term()
        return sign, left, right


def _linear_coefficient(s):
    """k when s is exactly the polynomial 1 + k*mu, else None."""
    if len(s.terms) != 1:
        return None
    (signature, f), = s.terms
    if signature or f.mu_power or f.denominator or len(f.numerator) != 2:
        return None
    c0, c1 = f.numerator
    if c0 != 1 or not c1.is_rational():
        return None
    k = c1.coefficient(1)
    if k.denominator != 1 or k == 0:
        return None
    return int(k)


# ── Entry points ───────────────────────────────────────────────────────────────

def parse_expression(text):
    """Expression tree for text; see normalize for the node kinds."""
    parser = Parser(text)
    tree = parser.expression()
    parser.expect_end()
    return tree


def parse_poly(text):
    """Normal form of the element written in text."""
    return normalize(parse_expression(text))


def parse_mu_scalar(text):
    """MuScalar written in text; rejects expressions containing generators."""
    parser = Parser(text)
    start = parser.current
    value = normalize(parser.expression())
    parser.expect_end()
    if not value.is_scalar():
        raise ExpressionSyntaxError("expected a coefficient, found generators",
                                    start.line, start.column)
    return value.scalar_part()


def parse_tensor_terms(text):
    """List of (left NCPoly, right NCPoly) with the sign folded into the left leg."""
    parser = Parser(text)
    terms = parser.tensor_expression()
    parser.expect_end()
    return [(normalize(left) * sign, normalize(right)) for sign, left, right in terms]


def parse_laurent_tree(text):
    """Tree over the atom u (('laurent', 1)) and rational or rt() scalars."""
    parser = Parser(text, allow_laurent=True)
    tree = parser.expression()
    parser.expect_end()
    return tree


if __name__ == '__main__':
    logging.basicConfig(level=logging.INFO,
                        format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    source = ' '.join(sys.argv[1:]) or 'a * a* + b * b*'
    try:
        print(format_poly(parse_poly(source)))
    except ExpressionSyntaxError as exc:
        print(f"Syntax error: {exc}", file=sys.stderr)
        sys.exit(2)
