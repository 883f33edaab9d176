"""
Lexer Module
Tokenizer shared by the polynomial, element and presentation parsers.
Every token carries its line and column so diagnostics can point at it.
"""

import re
from typing import List, NamedTuple, Optional

from .errors import ParseError


class Token(NamedTuple):
    kind: str   # INT, NAME, OP or EOF
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"""
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<INT>\d+)
  | (?P<NAME>[^\W\d]\w*)
  | (?P<OP>->|=>|[-+*/^(),;:{}=])
""", re.VERBOSE)


def tokenize(source: str) -> List[Token]:
    """
    Split source text into tokens.

    Args:
        source: Text to tokenize

    Returns:
        List of tokens terminated by an EOF token
    """
    tokens = []
    line, line_start, pos = 1, 0, 0

    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            raise ParseError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1)

        kind = match.lastgroup
        if kind == 'newline':
            line += 1
            line_start = match.end()
        elif kind in ('INT', 'NAME', 'OP'):
            tokens.append(Token(kind, match.group(), line, match.start() - line_start + 1))
        pos = match.end()

    tokens.append(Token('EOF', '', line, pos - line_start + 1))
    return tokens


class TokenStream:
    """Cursor over a token list with the usual peek/expect helpers."""

    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def next(self) -> Token:
        token = self.peek()
        if token.kind != 'EOF':
            self.pos += 1
        return token

    def at(self, text: str, offset: int = 0) -> bool:
        token = self.peek(offset)
        return token.kind in ('OP', 'NAME') and token.text == text

    def accept(self, text: str) -> Optional[Token]:
        if self.at(text):
            return self.next()
        return None

    def expect(self, text: str) -> Token:
        token = self.peek()
        if not self.at(text):
            raise self.error(f"expected {text!r}, found {describe(token)}", token)
        return self.next()

    def expect_kind(self, kind: str, what: str) -> Token:
        token = self.peek()
        if token.kind != kind:
            raise self.error(f"expected {what}, found {describe(token)}", token)
        return self.next()

    def at_end(self) -> bool:
        return self.peek().kind == 'EOF'

    @staticmethod
    def error(message: str, token: Token, cls=ParseError) -> ParseError:
        return cls(message, token.line, token.column)


def describe(token: Token) -> str:
    """Short description of a token for diagnostics."""
    if token.kind == 'EOF':
        return "end of input"
    return repr(token.text)
