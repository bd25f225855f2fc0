"""Tokenizer and polynomial expression parser shared with the script DSL."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ScriptError

SYMBOLS = ("->", "+", "-", "*", "/", "^", "(", ")", "[", "]", "{", "}", ",", ";", "=", ":")


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "int", "sym", "eof"
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_col = col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            tokens.append(Token("name", text[i:j], line, start_col))
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("int", text[i:j], line, start_col))
        else:
            for sym in SYMBOLS:
                if text.startswith(sym, i):
                    j = i + len(sym)
                    tokens.append(Token("sym", sym, line, start_col))
                    break
            else:
                raise ScriptError(f"unexpected character {ch!r}", line, col)
        col += j - i
        i = j
    tokens.append(Token("eof", "", line, col))
    return tokens


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def peek_at(self, k: int) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek
        return tok.kind in ("sym", "name") and tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek
        if not self.at(text):
            raise ScriptError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return self.next()

    def expect_kind(self, kind: str, what: str) -> Token:
        tok = self.peek
        if tok.kind != kind:
            raise ScriptError(f"expected {what}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return self.next()

    def error(self, message: str, tok: Token | None = None) -> ScriptError:
        tok = tok or self.peek
        return ScriptError(message, tok.line, tok.col)


# -- expression trees ---------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - * /
    left: object
    right: object
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


def parse_expr_tree(ts: TokenStream):
    """``expr := ['+'|'-'] term (('+'|'-') term)*``."""
    if ts.accept("-"):
        node = Neg(_term(ts))
    else:
        ts.accept("+")
        node = _term(ts)
    while ts.at("+") or ts.at("-"):
        op = ts.next()
        node = Bin(op.text, node, _term(ts), op.line, op.col)
    return node


def _term(ts):
    node = _factor(ts)
    while ts.at("*") or ts.at("/"):
        op = ts.next()
        node = Bin(op.text, node, _factor(ts), op.line, op.col)
    return node


def _factor(ts):
    base = _base(ts)
    if ts.accept("^"):
        tok = ts.expect_kind("int", "an integer exponent")
        base = Pow(base, int(tok.text))
    return base


def _base(ts):
    tok = ts.peek
    if tok.kind == "int":
        ts.next()
        return Num(int(tok.text))
    if tok.kind == "name":
        ts.next()
        return Var(tok.text, tok.line, tok.col)
    if ts.accept("("):
        node = parse_expr_tree(ts)
        ts.expect(")")
        return node
    if ts.accept("-"):
        return Neg(_factor(ts))
    raise ScriptError(f"unexpected {tok.text or 'end of input'!r} in expression", tok.line, tok.col)


def evaluate(node, ring):
    """Value of an expression tree in ``ring``."""
    if isinstance(node, Num):
        return ring.const(node.value)
    if isinstance(node, Var):
        if node.name not in ring.variables:
            raise ScriptError(f"unknown variable {node.name!r} in {ring}", node.line, node.col)
        return ring.var(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.arg, ring)
    if isinstance(node, Pow):
        return evaluate(node.base, ring) ** node.exp
    a, b = evaluate(node.left, ring), evaluate(node.right, ring)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    c = b.constant_value()
    if c is None or not c:
        raise ScriptError("division only by nonzero constants", node.line, node.col)
    return a * ring.field.inv(c)


def _wrap(text, cond):
    return f"({text})" if cond else text


def format_expr(node) -> str:
    """Text that parses back to the same tree."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return "-" + _wrap(format_expr(node.arg), isinstance(node.arg, Bin))
    if isinstance(node, Pow):
        return _wrap(format_expr(node.base), not isinstance(node.base, (Num, Var))) + f"^{node.exp}"
    l, r = node.left, node.right
    if node.op in "+-":
        ls = format_expr(l)
        rs = _wrap(format_expr(r), isinstance(r, Bin) and r.op in "+-")
        return f"{ls} {node.op} {rs}"
    ls = _wrap(format_expr(l), isinstance(l, Neg) or (isinstance(l, Bin) and l.op in "+-"))
    rs = _wrap(format_expr(r), isinstance(r, Bin))
    return f"{ls}{node.op}{rs}"


def parse_expr(ts: TokenStream, ring):
    return evaluate(parse_expr_tree(ts), ring)


def parse_poly(text: str, ring):
    ts = TokenStream(tokenize(text))
    value = parse_expr(ts, ring)
    if ts.peek.kind != "eof":
        raise ts.error(f"trailing input {ts.peek.text!r}")
    return value
