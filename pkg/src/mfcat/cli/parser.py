"""The ``.mfk`` script language: syntax tree, parser, name checks and printer.

Statements end with ``;`` and ``#`` starts a comment::

    version 1;
    ring A = QQ[x,y];
    ring B = A / (x) lex;
    potential W = x*y^2 over A;
    mf K = koszul(W; [x], [y^2]);
    mf L = { e1 = [[x]], e0 = [[y^2]] } of W;
    morphism phi : K -> L = { f0 = [[1]], f1 = [[1]] };
    map chart : A -> A = [x -> x*y, y -> y];
    ext K L 0;

Fields are ``QQ``, ``GF(p)`` or ``k`` (chosen on the command line).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.parse import (
    Bin,
    Neg,
    Pow,
    Token,
    TokenStream,
    Var,
    format_expr,
    parse_expr_tree,
    tokenize,
)
from ..errors import ScriptError
from ..mf.ops import rename_clashes

SCRIPT_VERSION = 1
ORDERS = ("grevlex", "lex")


def _pos():
    return field(default=0, compare=False)


# -- syntax tree ----------------------------------------------------------------

@dataclass(frozen=True)
class Name:
    name: str
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class ExprList:
    items: tuple


@dataclass(frozen=True)
class Paren:
    expr: object


@dataclass(frozen=True)
class Matrix:
    rows: tuple  # tuple of tuples of expression trees


@dataclass(frozen=True)
class VersionStmt:
    version: int
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class RingStmt:
    name: str
    field: str | None  # "QQ", "k" or "GF(p)"; None when built from a base ring
    variables: tuple
    base: str | None
    ideal: tuple
    order: str | None
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class PotentialStmt:
    name: str
    expr: object
    ring: Name
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class MFLiteral:
    e1: Matrix
    e0: Matrix
    potential: Name


@dataclass(frozen=True)
class MFCall:
    func: str
    args: tuple


@dataclass(frozen=True)
class MFStmt:
    name: str
    form: object  # MFLiteral or MFCall
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class MorphismStmt:
    name: str
    source: Name
    target: Name
    components: tuple  # ((key, Matrix), ...)
    line: int = _pos()
    col: int = _pos()

    @property
    def degree(self) -> int:
        return 1 if any(k in ("f10", "f01") for k, _ in self.components) else 0


@dataclass(frozen=True)
class MapStmt:
    name: str
    source: Name
    target: Name
    assignments: tuple  # ((variable, expr), ...)
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple
    line: int = _pos()
    col: int = _pos()


@dataclass(frozen=True)
class Script:
    statements: tuple

    def __len__(self):
        return len(self.statements)


# -- signatures -------------------------------------------------------------------
# argument kinds: mf, morphism, potential, map, int, list, expr, mf|morphism,
# potential|expr; a trailing "?" marks an optional argument

MF_FUNCS = {
    "koszul": ("potential", "list", "list"),
    "gplus": ("int", "int", "potential"),
    "shift": ("mf",),
    "dual": ("mf",),
    "tensor": ("mf", "mf"),
    "hom": ("mf", "mf"),
    "sum": ("mf", "mf"),
    "external": ("mf", "mf"),
    "cone": ("morphism",),
    "basechange": ("map", "mf"),
}
# where the canonical printer puts the ";" separator
MF_SPLIT = {"koszul": 1, "gplus": 2}

COMMANDS = {
    "check": ("mf|morphism",),
    "ext": ("mf", "mf", "int"),
    "contractible": ("mf",),
    "homotopy_iso": ("morphism",),
    "dual": ("mf",),
    "tensor": ("mf", "mf"),
    "hom": ("mf", "mf"),
    "koszul": ("potential", "list", "list"),
    "cok": ("mf",),
    "periodic_check": ("mf", "int?"),
    "pncoh": ("int", "int"),
    "exc_table": ("int", "int?"),
    "koszul_ke": ("int",),
    "blowup_verify": ("mf", "expr", "potential|expr"),
}

# -- parser ---------------------------------------------------------------------

def _err(tok: Token, msg: str, kind: str = "syntax") -> ScriptError:
    return ScriptError(msg, tok.line, tok.col, kind)


def _name(ts: TokenStream, what: str) -> Token:
    return ts.expect_kind("name", what)


def _expr_list(ts: TokenStream) -> tuple:
    """``[ e, e, ... ]`` (possibly empty); the opening bracket is consumed here."""
    ts.expect("[")
    items = []
    if not ts.at("]"):
        items.append(parse_expr_tree(ts))
        while ts.accept(","):
            items.append(parse_expr_tree(ts))
    ts.expect("]")
    return tuple(items)


def _matrix(ts: TokenStream) -> Matrix:
    """``[[a, b], [c, d]]``; ``[]`` is the matrix with no rows."""
    ts.expect("[")
    rows = []
    if not ts.at("]"):
        if not ts.at("["):
            raise ts.error("a matrix is a bracketed list of rows")
        rows.append(_expr_list(ts))
        while ts.accept(","):
            rows.append(_expr_list(ts))
    ts.expect("]")
    return Matrix(tuple(rows))


def _int(ts: TokenStream) -> int:
    neg = ts.accept("-")
    tok = ts.expect_kind("int", "an integer")
    return -int(tok.text) if neg else int(tok.text)


def _arg(ts: TokenStream):
    tok = ts.peek
    if tok.kind == "name":
        ts.next()
        return Name(tok.text, tok.line, tok.col)
    if tok.kind == "int" or (ts.at("-") and ts.peek_at(1).kind == "int"):
        return Int(_int(ts))
    if ts.at("["):
        if ts.peek_at(1).kind == "sym" and ts.peek_at(1).text == "[":
            return _matrix(ts)
        return ExprList(_expr_list(ts))
    if ts.accept("("):
        e = parse_expr_tree(ts)
        ts.expect(")")
        return Paren(e)
    raise _err(tok, f"unexpected {tok.text or 'end of input'!r}")


def _ring_stmt(ts: TokenStream, head: Token) -> RingStmt:
    name = _name(ts, "a ring name").text
    ts.expect("=")
    tok = ts.peek
    field_name, variables, base = None, (), None
    if tok.kind == "name" and tok.text == "GF" and ts.peek_at(1).text == "(":
        ts.next()
        ts.expect("(")
        p = ts.expect_kind("int", "a prime").text
        ts.expect(")")
        field_name = f"GF({int(p)})"
    elif tok.kind == "name" and ts.peek_at(1).text == "[":
        if tok.text not in ("QQ", "k"):
            raise _err(tok, f"unknown field {tok.text!r} (use QQ, GF(p) or k)")
        field_name = ts.next().text
    else:
        base = _name(ts, "a field or a ring name").text
    if field_name is not None:
        ts.expect("[")
        names = []
        if not ts.at("]"):
            names.append(_name(ts, "a variable name"))
            while ts.accept(","):
                names.append(_name(ts, "a variable name"))
        ts.expect("]")
        seen = set()
        for t in names:
            if t.text in seen:
                raise _err(t, f"variable {t.text!r} listed twice", "redeclaration")
            seen.add(t.text)
        variables = tuple(t.text for t in names)
    ideal = ()
    if ts.accept("/"):
        ts.expect("(")
        gens = [parse_expr_tree(ts)]
        while ts.accept(","):
            gens.append(parse_expr_tree(ts))
        ts.expect(")")
        ideal = tuple(gens)
    elif base is not None:
        raise ts.error("expected '/' after the base ring")
    order = None
    if ts.peek.kind == "name":
        tok = ts.next()
        if tok.text not in ORDERS:
            raise _err(tok, f"unknown monomial order {tok.text!r}")
        order = tok.text
    return RingStmt(name, field_name, variables, base, ideal, order, head.line, head.col)


def _mf_stmt(ts: TokenStream, head: Token) -> MFStmt:
    name = _name(ts, "an object name").text
    ts.expect("=")
    if ts.accept("{"):
        mats = {}
        for key in ("e1", "e0"):
            tok = _name(ts, f"'{key}'")
            if tok.text != key:
                raise _err(tok, f"expected {key!r}, found {tok.text!r}")
            ts.expect("=")
            mats[key] = _matrix(ts)
            if key == "e1":
                ts.expect(",")
        ts.expect("}")
        ts.expect("of")
        pot = _name(ts, "a potential name")
        form = MFLiteral(mats["e1"], mats["e0"], Name(pot.text, pot.line, pot.col))
    else:
        tok = _name(ts, "an object constructor")
        if tok.text not in MF_FUNCS:
            raise _err(tok, f"unknown constructor {tok.text!r}", "unknown_name")
        ts.expect("(")
        args = []
        if not ts.at(")"):
            args.append(_arg(ts))
            while ts.accept(",") or ts.accept(";"):
                args.append(_arg(ts))
        ts.expect(")")
        _check_arity(tok, tok.text, MF_FUNCS[tok.text], args)
        form = MFCall(tok.text, tuple(args))
    return MFStmt(name, form, head.line, head.col)


def _morphism_stmt(ts: TokenStream, head: Token) -> MorphismStmt:
    name = _name(ts, "a morphism name").text
    ts.expect(":")
    src = _name(ts, "a source object")
    ts.expect("->")
    tgt = _name(ts, "a target object")
    ts.expect("=")
    ts.expect("{")
    comps = []
    while True:
        tok = _name(ts, "a component name")
        if tok.text not in ("f0", "f1", "f10", "f01"):
            raise _err(tok, f"unknown component {tok.text!r} (use f0, f1, f10, f01)")
        if any(k == tok.text for k, _ in comps):
            raise _err(tok, f"component {tok.text!r} given twice", "redeclaration")
        ts.expect("=")
        comps.append((tok.text, _matrix(ts)))
        if not ts.accept(","):
            break
    ts.expect("}")
    keys = {k for k, _ in comps}
    if keys & {"f0", "f1"} and keys & {"f10", "f01"}:
        raise _err(head, "mixes even (f0, f1) and odd (f10, f01) components", "type")
    return MorphismStmt(name, Name(src.text, src.line, src.col), Name(tgt.text, tgt.line, tgt.col),
                        tuple(comps), head.line, head.col)


def _map_stmt(ts: TokenStream, head: Token) -> MapStmt:
    name = _name(ts, "a map name").text
    ts.expect(":")
    src = _name(ts, "a source ring")
    ts.expect("->")
    tgt = _name(ts, "a target ring")
    ts.expect("=")
    ts.expect("[")
    pairs = []
    if not ts.at("]"):
        while True:
            v = _name(ts, "a variable")
            if any(k == v.text for k, _ in pairs):
                raise _err(v, f"variable {v.text!r} assigned twice", "redeclaration")
            ts.expect("->")
            pairs.append((v.text, parse_expr_tree(ts)))
            if not ts.accept(","):
                break
    ts.expect("]")
    return MapStmt(name, Name(src.text, src.line, src.col), Name(tgt.text, tgt.line, tgt.col),
                   tuple(pairs), head.line, head.col)


def _check_arity(tok: Token, name: str, sig: tuple, args) -> None:
    lo = sum(1 for s in sig if not s.endswith("?"))
    if not lo <= len(args) <= len(sig):
        want = str(lo) if lo == len(sig) else f"{lo} to {len(sig)}"
        raise _err(tok, f"{name} takes {want} arguments, got {len(args)}", "arity")


def _command(ts: TokenStream, head: Token) -> Command:
    if head.text not in COMMANDS:
        raise _err(head, f"unknown command {head.text!r}", "unknown_name")
    args = []
    while not ts.at(";"):
        if ts.peek.kind == "eof":
            raise ts.error("expected ';'")
        args.append(_arg(ts))
    _check_arity(head, head.text, COMMANDS[head.text], args)
    return Command(head.text, tuple(args), head.line, head.col)


def _statement(ts: TokenStream):
    head = ts.expect_kind("name", "a statement")
    kw = head.text
    if kw == "version":
        stmt = VersionStmt(int(ts.expect_kind("int", "a version number").text), head.line, head.col)
        if stmt.version != SCRIPT_VERSION:
            raise _err(head, f"unsupported script version {stmt.version}")
    elif kw == "ring":
        stmt = _ring_stmt(ts, head)
    elif kw == "potential":
        name = _name(ts, "a potential name").text
        ts.expect("=")
        e = parse_expr_tree(ts)
        ts.expect("over")
        r = _name(ts, "a ring name")
        stmt = PotentialStmt(name, e, Name(r.text, r.line, r.col), head.line, head.col)
    elif kw == "mf":
        stmt = _mf_stmt(ts, head)
    elif kw == "morphism":
        stmt = _morphism_stmt(ts, head)
    elif kw == "map":
        stmt = _map_stmt(ts, head)
    else:
        stmt = _command(ts, head)
    ts.expect(";")
    return stmt


def parse_script(text: str, check_names: bool = True) -> Script:
    """Parse a script; the first problem raises ``ScriptError`` with its position."""
    ts = TokenStream(tokenize(text))
    stmts = []
    while ts.peek.kind != "eof":
        stmt = _statement(ts)
        if isinstance(stmt, VersionStmt) and stmts:
            raise ScriptError("'version' must be the first statement", stmt.line, stmt.col)
        stmts.append(stmt)
    script = Script(tuple(stmts))
    if check_names:
        check_script(script)
    return script


# -- name resolution --------------------------------------------------------------

@dataclass
class _Sym:
    kind: str
    variables: tuple  # variables of the ring an element of this kind lives over
    target_vars: tuple = ()  # for maps


def _expr_vars(node, out):
    if isinstance(node, Var):
        out.append(node)
    elif isinstance(node, Bin):
        _expr_vars(node.left, out)
        _expr_vars(node.right, out)
    elif isinstance(node, Neg):
        _expr_vars(node.arg, out)
    elif isinstance(node, Pow):
        _expr_vars(node.base, out)
    return out


def _check_expr(node, variables, where: str, line: int, col: int):
    for v in _expr_vars(node, []):
        if v.name not in variables:
            raise ScriptError(f"unknown variable {v.name!r} in {where}", v.line or line, v.col or col,
                              "unknown_name")


class _Scope:
    def __init__(self):
        self.syms: dict[str, _Sym] = {}

    def declare(self, name, sym, stmt):
        if name in self.syms:
            raise ScriptError(f"{name!r} is already declared", stmt.line, stmt.col, "redeclaration")
        self.syms[name] = sym

    def lookup(self, ref: Name, kinds: str, fallback) -> _Sym:
        sym = self.syms.get(ref.name)
        line, col = (ref.line, ref.col) if ref.line else (fallback.line, fallback.col)
        if sym is None:
            raise ScriptError(f"unknown name {ref.name!r}", line, col, "unknown_name")
        if sym.kind not in kinds.split("|"):
            raise ScriptError(f"{ref.name!r} is a {sym.kind}, expected {kinds.replace('|', ' or ')}",
                              line, col, "type")
        return sym


def _check_args(scope: _Scope, stmt, label: str, sig: tuple, args) -> list:
    """Resolve arguments against a signature; returns the symbols (None for literals)."""
    syms = []
    ring_vars = None
    for kinds, a in zip(sig, args):
        kinds = kinds.rstrip("?")
        opts = kinds.split("|")
        if isinstance(a, Name) and any(k in ("mf", "morphism", "potential", "map") for k in opts):
            sym = scope.lookup(a, "|".join(k for k in opts if k != "expr"), stmt)
            syms.append(sym)
            if ring_vars is None and sym.kind != "map":
                ring_vars = sym.variables
            continue
        ok = (isinstance(a, Int) and "int" in opts) or (isinstance(a, ExprList) and "list" in opts) \
            or (isinstance(a, Paren) and "expr" in opts)
        if not ok:
            raise ScriptError(f"{label}: argument {len(syms) + 1} should be {kinds.replace('|', ' or ')}",
                              stmt.line, stmt.col, "type")
        syms.append(None)
    # expressions live over the ring of the first named argument
    for a in args:
        exprs = a.items if isinstance(a, ExprList) else (a.expr,) if isinstance(a, Paren) else ()
        for e in exprs:
            _check_expr(e, ring_vars or (), label, stmt.line, stmt.col)
    return syms


def _check_matrix(m: Matrix, variables, where, stmt):
    widths = {len(r) for r in m.rows}
    if len(widths) > 1:
        raise ScriptError(f"{where}: rows have different lengths", stmt.line, stmt.col, "arity")
    for row in m.rows:
        for e in row:
            _check_expr(e, variables, where, stmt.line, stmt.col)


def check_script(script: Script) -> None:
    """Names declared before use, of the right kind, with known variables."""
    scope = _Scope()
    for stmt in script.statements:
        if isinstance(stmt, VersionStmt):
            continue
        if isinstance(stmt, RingStmt):
            if stmt.base is not None:
                variables = scope.lookup(Name(stmt.base), "ring", stmt).variables
            else:
                variables = stmt.variables
            for g in stmt.ideal:
                _check_expr(g, variables, f"ring {stmt.name}", stmt.line, stmt.col)
            scope.declare(stmt.name, _Sym("ring", variables), stmt)
        elif isinstance(stmt, PotentialStmt):
            variables = scope.lookup(stmt.ring, "ring", stmt).variables
            _check_expr(stmt.expr, variables, f"potential {stmt.name}", stmt.line, stmt.col)
            scope.declare(stmt.name, _Sym("potential", variables), stmt)
        elif isinstance(stmt, MFStmt):
            form = stmt.form
            if isinstance(form, MFLiteral):
                variables = scope.lookup(form.potential, "potential", stmt).variables
                _check_matrix(form.e1, variables, f"mf {stmt.name}", stmt)
                _check_matrix(form.e0, variables, f"mf {stmt.name}", stmt)
            else:
                syms = _check_args(scope, stmt, form.func, MF_FUNCS[form.func], form.args)
                if form.func == "basechange":
                    variables = syms[0].target_vars
                elif form.func == "external":
                    names, _ = rename_clashes(syms[0].variables, syms[1].variables)
                    variables = syms[0].variables + tuple(names)
                else:
                    variables = next(s.variables for s in syms if s is not None)
            scope.declare(stmt.name, _Sym("mf", variables), stmt)
        elif isinstance(stmt, MorphismStmt):
            src = scope.lookup(stmt.source, "mf", stmt)
            scope.lookup(stmt.target, "mf", stmt)
            for key, m in stmt.components:
                _check_matrix(m, src.variables, f"morphism {stmt.name}", stmt)
            scope.declare(stmt.name, _Sym("morphism", src.variables), stmt)
        elif isinstance(stmt, MapStmt):
            src = scope.lookup(stmt.source, "ring", stmt)
            tgt = scope.lookup(stmt.target, "ring", stmt)
            for v, e in stmt.assignments:
                if v not in src.variables:
                    raise ScriptError(f"{v!r} is not a variable of {stmt.source.name}",
                                      stmt.line, stmt.col, "unknown_name")
                _check_expr(e, tgt.variables, f"map {stmt.name}", stmt.line, stmt.col)
            missing = [v for v in src.variables if v not in dict(stmt.assignments)]
            if missing:
                raise ScriptError(f"map {stmt.name} gives no image for {', '.join(missing)}",
                                  stmt.line, stmt.col, "arity")
            scope.declare(stmt.name, _Sym("map", src.variables, tgt.variables), stmt)
        else:
            _check_args(scope, stmt, stmt.name, COMMANDS[stmt.name], stmt.args)


# -- printer ----------------------------------------------------------------------

def format_matrix(m: Matrix) -> str:
    return "[" + ", ".join("[" + ", ".join(format_expr(e) for e in row) + "]" for row in m.rows) + "]"


def format_arg(a) -> str:
    if isinstance(a, Name):
        return a.name
    if isinstance(a, Int):
        return str(a.value)
    if isinstance(a, ExprList):
        return "[" + ", ".join(format_expr(e) for e in a.items) + "]"
    if isinstance(a, Matrix):
        return format_matrix(a)
    return "(" + format_expr(a.expr) + ")"


def format_statement(stmt) -> str:
    if isinstance(stmt, VersionStmt):
        return f"version {stmt.version};"
    if isinstance(stmt, RingStmt):
        if stmt.base is not None:
            s = f"ring {stmt.name} = {stmt.base}"
        else:
            s = f"ring {stmt.name} = {stmt.field}[{', '.join(stmt.variables)}]"
        if stmt.ideal:
            s += " / (" + ", ".join(format_expr(g) for g in stmt.ideal) + ")"
        if stmt.order:
            s += f" {stmt.order}"
        return s + ";"
    if isinstance(stmt, PotentialStmt):
        return f"potential {stmt.name} = {format_expr(stmt.expr)} over {stmt.ring.name};"
    if isinstance(stmt, MFStmt):
        form = stmt.form
        if isinstance(form, MFLiteral):
            body = (f"{{ e1 = {format_matrix(form.e1)}, e0 = {format_matrix(form.e0)} }}"
                    f" of {form.potential.name}")
        else:
            parts = [format_arg(a) for a in form.args]
            k = MF_SPLIT.get(form.func)
            if k is not None and 0 < k < len(parts):
                inner = ", ".join(parts[:k]) + "; " + ", ".join(parts[k:])
            else:
                inner = ", ".join(parts)
            body = f"{form.func}({inner})"
        return f"mf {stmt.name} = {body};"
    if isinstance(stmt, MorphismStmt):
        comps = ", ".join(f"{k} = {format_matrix(m)}" for k, m in stmt.components)
        return f"morphism {stmt.name} : {stmt.source.name} -> {stmt.target.name} = {{ {comps} }};"
    if isinstance(stmt, MapStmt):
        pairs = ", ".join(f"{v} -> {format_expr(e)}" for v, e in stmt.assignments)
        return f"map {stmt.name} : {stmt.source.name} -> {stmt.target.name} = [{pairs}];"
    return " ".join([stmt.name] + [format_arg(a) for a in stmt.args]) + ";"


def print_script(script: Script) -> str:
    return "".join(format_statement(s) + "\n" for s in script.statements)
