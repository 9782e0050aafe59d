"""Reading and writing constraint systems and models.

Constraint files use the S-expression notation emitted by sized-type and
rewriting tools::

    (>= (f1 0 (var x)) (var x))
    (>= (f5 (var x) (var y) 0) (f86))

Models are written either in a human style (``f1(x0,x1) = x0 + x1``) or as
``(model (f1 (vars x0 x1) (+ (var x0) (var x1))) ...)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ArityError, ParseError
from .model import Interpretation, interpret_term
from .poly import MaxPoly, Poly
from .terms import MAX, MUL, OPS, PLUS, App, BinOp, Const, Constraint, ConstraintSystem, Symbol, Term, Var, tmax


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int
    line: int
    column: int


@dataclass
class _Atom:
    text: str
    span: SourceSpan


@dataclass
class _List:
    items: list
    span: SourceSpan


def _tokenize(text: str):
    tokens = []
    i, line, col, byte = 0, 1, 1, 0
    n = len(text)

    def advance(ch):
        nonlocal line, col, byte
        byte += len(ch.encode("utf-8"))
        if ch == "\n":
            line, col = line + 1, 1
        else:
            col += 1

    while i < n:
        ch = text[i]
        if ch.isspace():
            advance(ch)
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                advance(text[i])
                i += 1
        elif ch in "()":
            tokens.append((ch, SourceSpan(byte, byte + 1, line, col)))
            advance(ch)
            i += 1
        else:
            start, sline, scol = byte, line, col
            j = i
            while j < n and not text[j].isspace() and text[j] not in "();":
                advance(text[j])
                j += 1
            tokens.append((text[i:j], SourceSpan(start, byte, sline, scol)))
            i = j
    end = SourceSpan(byte, byte, line, col)
    return tokens, end


def _read_all(text: str) -> list:
    tokens, eof = _tokenize(text)
    out = []
    pos = 0
    while pos < len(tokens):
        node, pos = _read(tokens, pos, eof)
        out.append(node)
    return out


def _read(tokens, pos, eof):
    tok, span = tokens[pos]
    if tok == ")":
        raise ParseError("unexpected ')'", span)
    if tok != "(":
        return _Atom(tok, span), pos + 1
    items = []
    pos += 1
    while True:
        if pos >= len(tokens):
            raise ParseError("unbalanced parenthesis: unexpected end of input", eof)
        if tokens[pos][0] == ")":
            end = tokens[pos][1]
            return _List(items, SourceSpan(span.start, end.end, span.line, span.column)), pos + 1
        node, pos = _read(tokens, pos, eof)
        items.append(node)


def _is_nat(text: str) -> bool:
    return text.isdigit() and text.isascii()


RESERVED = {"var", ">=", "vars", "model", *OPS}


class _TermReader:
    def __init__(self, allowed_vars=None, allow_apps=True):
        self.signature: dict[str, int] = {}
        self.allowed_vars = allowed_vars
        self.allow_apps = allow_apps

    def term(self, node) -> Term:
        if isinstance(node, _Atom):
            if _is_nat(node.text):
                return Const(int(node.text))
            raise ParseError(
                f"bare identifier {node.text!r} in term position; write (var {node.text}) or ({node.text})",
                node.span,
            )
        if not node.items:
            raise ParseError("empty list in term position", node.span)
        head = node.items[0]
        if not isinstance(head, _Atom):
            raise ParseError("expected an operator or symbol name", head.span)
        args = node.items[1:]
        if head.text == "var":
            if len(args) != 1 or not isinstance(args[0], _Atom) or _is_nat(args[0].text) or args[0].text in RESERVED:
                raise ParseError("'var' expects a single identifier", node.span)
            name = args[0].text
            if self.allowed_vars is not None and name not in self.allowed_vars:
                raise ParseError(f"variable {name!r} is not a declared parameter", args[0].span)
            return Var(name)
        if head.text in OPS:
            if len(args) < 2:
                raise ParseError(f"{head.text!r} expects at least two arguments", node.span)
            acc = self.term(args[0])
            for a in args[1:]:
                acc = BinOp(head.text, acc, self.term(a))
            return acc
        if head.text in RESERVED or _is_nat(head.text):
            raise ParseError(f"{head.text!r} cannot be used as a function symbol", head.span)
        if not self.allow_apps:
            raise ParseError(f"function symbol {head.text!r} not allowed here", head.span)
        arity = len(args)
        known = self.signature.setdefault(head.text, arity)
        if known != arity:
            raise ArityError(head.text, known, arity)
        return App(Symbol(head.text, arity), tuple(self.term(a) for a in args))


def parse_system(text: str) -> ConstraintSystem:
    reader = _TermReader()
    constraints = []
    for node in _read_all(text):
        if not (isinstance(node, _List) and node.items and isinstance(node.items[0], _Atom) and node.items[0].text == ">="):
            raise ParseError("expected a constraint (>= term term)", node.span)
        if len(node.items) != 3:
            raise ParseError("a constraint has exactly two terms", node.span)
        constraints.append(Constraint(reader.term(node.items[1]), reader.term(node.items[2])))
    return ConstraintSystem(constraints)


def read_system(path) -> ConstraintSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read())


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"(var {t.name})"
    if isinstance(t, Const):
        return str(t.value)
    if isinstance(t, BinOp):
        operands = []
        s = t
        while isinstance(s, BinOp) and s.op == t.op:
            operands.append(s.right)
            s = s.left
        operands.append(s)
        return f"({t.op} " + " ".join(format_term(o) for o in reversed(operands)) + ")"
    if isinstance(t, App):
        if not t.args:
            return f"({t.symbol.name})"
        return f"({t.symbol.name} " + " ".join(format_term(a) for a in t.args) + ")"
    raise TypeError(f"not a term: {t!r}")


def print_system(cs: ConstraintSystem) -> str:
    return "".join(f"(>= {format_term(c.lhs)} {format_term(c.rhs)})\n" for c in cs)


# -- models -----------------------------------------------------------------


def _param(i: int) -> str:
    return f"x{i}"


def poly_to_term(p: Poly) -> Term:
    summands = []
    for m, c in p.ordered_terms():
        factors: list[Term] = [Var(_param(v)) for v, e in m for _ in range(e)]
        if c != 1 or not factors:
            factors.insert(0, Const(c))
        acc = factors[0]
        for f in factors[1:]:
            acc = BinOp(MUL, acc, f)
        summands.append(acc)
    if not summands:
        return Const(0)
    acc = summands[0]
    for s in summands[1:]:
        acc = BinOp(PLUS, acc, s)
    return acc


def maxpoly_to_term(mp: MaxPoly) -> Term:
    return tmax(*(poly_to_term(b) for b in mp.branches))


def print_model(interp: Interpretation, style: str = "human") -> str:
    from .poly import format_maxpoly

    if style == "human":
        lines = []
        for name in interp:
            k = interp.arity(name)
            head = name if k == 0 else f"{name}({','.join(_param(i) for i in range(k))})"
            lines.append(f"{head} = {format_maxpoly(interp[name])}")
        return "\n".join(lines) + ("\n" if lines else "")
    if style == "sexpr":
        rows = []
        for name in interp:
            params = " ".join(_param(i) for i in range(interp.arity(name)))
            rows.append(f"  ({name} (vars{' ' + params if params else ''}) {format_term(maxpoly_to_term(interp[name]))})")
        return "(model" + ("\n" + "\n".join(rows) if rows else "") + ")\n"
    raise ValueError(f"unknown model style {style!r}")


def _definition(name: str, params: list[str], body: Term):
    mp = interpret_term(body, {})
    positions = {p: i for i, p in enumerate(params)}
    return mp.map_branches(lambda b: b.rename(positions)), len(params)


def _parse_sexpr_model(text: str) -> Interpretation:
    nodes = _read_all(text)
    if len(nodes) != 1 or not isinstance(nodes[0], _List) or not nodes[0].items:
        raise ParseError("expected a single (model ...) form")
    root = nodes[0]
    if not isinstance(root.items[0], _Atom) or root.items[0].text != "model":
        raise ParseError("expected (model ...)", root.span)
    funcs, arities = {}, {}
    for entry in root.items[1:]:
        if not (isinstance(entry, _List) and len(entry.items) == 3 and isinstance(entry.items[0], _Atom)):
            raise ParseError("expected (name (vars ...) term)", entry.span)
        name_node, vars_node, body = entry.items
        if not (isinstance(vars_node, _List) and vars_node.items and getattr(vars_node.items[0], "text", None) == "vars"):
            raise ParseError("expected (vars ...)", vars_node.span)
        params = []
        for v in vars_node.items[1:]:
            if not isinstance(v, _Atom) or v.text in params:
                raise ParseError("parameters must be distinct identifiers", v.span)
            params.append(v.text)
        name = name_node.text
        if name in funcs:
            raise ParseError(f"duplicate definition of {name!r}", name_node.span)
        reader = _TermReader(allowed_vars=set(params), allow_apps=False)
        funcs[name], arities[name] = _definition(name, params, reader.term(body))
    return Interpretation(funcs, arities)


_HUMAN_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][\w'.]*)|(?P<punct>[(),=+*])|(?P<bad>\S))")


class _HumanParser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _HUMAN_TOKEN.match(text, pos)
            line = text.count("\n", 0, m.start()) + 1
            span = SourceSpan(m.start(), m.end(), line, m.start() - text.rfind("\n", 0, m.start()))
            if m.group("bad"):
                what = m.group("bad")
                if what == "-":
                    raise ParseError("subtraction is not part of the model grammar", span)
                raise ParseError(f"unexpected character {what!r}", span)
            kind = "num" if m.group("num") else "ident" if m.group("ident") else "punct"
            self.tokens.append((kind, m.group(kind), span))
            pos = m.end()
        self.pos = 0

    def peek(self, offset=0):
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else (None, None, None)

    def expect(self, value):
        kind, text, span = self.peek()
        if text != value:
            raise ParseError(f"expected {value!r}, found {text!r}", span)
        self.pos += 1

    def definitions(self) -> Interpretation:
        funcs, arities = {}, {}
        while self.pos < len(self.tokens):
            kind, name, span = self.peek()
            if kind != "ident" or name == "max":
                raise ParseError(f"expected a symbol name, found {name!r}", span)
            self.pos += 1
            params = []
            if self.peek()[1] == "(":
                self.pos += 1
                while self.peek()[1] != ")":
                    pk, pname, pspan = self.peek()
                    if pk != "ident" or pname in params:
                        raise ParseError("parameters must be distinct identifiers", pspan)
                    params.append(pname)
                    self.pos += 1
                    if self.peek()[1] == ",":
                        self.pos += 1
                self.expect(")")
            self.expect("=")
            if name in funcs:
                raise ParseError(f"duplicate definition of {name!r}", span)
            self.params = set(params)
            funcs[name], arities[name] = _definition(name, params, self.expr())
        return Interpretation(funcs, arities)

    def expr(self) -> Term:
        acc = self.product()
        while self.peek()[1] == "+":
            self.pos += 1
            acc = BinOp(PLUS, acc, self.product())
        return acc

    def product(self) -> Term:
        acc = self.atom()
        while self.peek()[1] == "*":
            self.pos += 1
            acc = BinOp(MUL, acc, self.atom())
        return acc

    def atom(self) -> Term:
        kind, text, span = self.peek()
        if kind == "num":
            self.pos += 1
            return Const(int(text))
        if text == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if text == "max":
            self.pos += 1
            self.expect("(")
            args = [self.expr()]
            while self.peek()[1] == ",":
                self.pos += 1
                args.append(self.expr())
            self.expect(")")
            return BinOp(MAX, args[0], args[0]) if len(args) == 1 else tmax(*args)
        if kind == "ident":
            if text not in self.params:
                raise ParseError(f"unknown parameter {text!r}", span)
            self.pos += 1
            return Var(text)
        raise ParseError(f"unexpected token {text!r}" if text else "unexpected end of input", span)


def parse_model(text: str) -> Interpretation:
    """Read a model in either the sexpr or the human style."""
    stripped = text.lstrip()
    if stripped.startswith("("):
        return _parse_sexpr_model(text)
    return _HumanParser(text).definitions()


def read_model(path) -> Interpretation:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())
