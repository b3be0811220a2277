"""Recursive-descent parser for the space/rig expression grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := 'pt' | 'empty' | 'B' nat | 'W(' expr ')' | 'Om(' expr ')'
            | 'L(' expr ')' | '(' expr ')' | nat

Whitespace is ignored.  In a space context a bare ``n`` is the disjoint
union of ``n`` points and ``-`` is rejected; in a rig context ``n`` is an
integer coefficient.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ExprSyntaxError, NotALoopSpaceError
from . import expr as E

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]+)|(\S))")
_FUNCS = {"W", "Om", "L"}


@dataclass(frozen=True)
class _Tok:
    kind: str  # "nat", "name", "sym", "end"
    text: str
    pos: int


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            toks.append(_Tok("nat", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), start))
        elif m.group(3) is not None:
            if m.group(3) not in "+-*^()":
                raise ExprSyntaxError(f"unexpected character {m.group(3)!r}", start)
            toks.append(_Tok("sym", m.group(3), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    # AST nodes are tuples: (op, position, *children)

    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, sym):
        t = self.take()
        if t.kind != "sym" or t.text != sym:
            raise ExprSyntaxError(f"expected {sym!r}, found {t.text or 'end of input'!r}", t.pos)
        return t

    def nat(self):
        t = self.take()
        if t.kind != "nat":
            raise ExprSyntaxError(f"expected a natural number, found {t.text or 'end of input'!r}", t.pos)
        return int(t.text)

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "sym" and self.tok.text in "+-":
            t = self.take()
            node = (t.text, t.pos, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok.kind == "sym" and self.tok.text == "*":
            t = self.take()
            node = ("*", t.pos, node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.tok.kind == "sym" and self.tok.text == "^":
            t = self.take()
            node = ("^", t.pos, node, self.nat())
        return node

    def atom(self):
        t = self.take()
        if t.kind == "nat":
            return ("nat", t.pos, int(t.text))
        if t.kind == "sym" and t.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "name":
            if t.text == "pt":
                return ("pt", t.pos)
            if t.text == "empty":
                return ("empty", t.pos)
            if t.text == "B":
                return ("B", t.pos, self.nat())
            if t.text in _FUNCS:
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return (t.text, t.pos, inner)
            raise ExprSyntaxError(f"unknown name {t.text!r}", t.pos)
        raise ExprSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.pos)


def parse_ast(text):
    return _Parser(text).parse()


def ast_to_space(node, p) -> E.SpaceExpr:
    op, pos = node[0], node[1]
    if op == "pt":
        return E.POINT
    if op == "empty":
        return E.EMPTY
    if op == "B":
        return E.EM(node[2])
    if op == "nat":
        return E.disjoint(*([E.POINT] * node[2]))
    if op == "+":
        return E.disjoint(ast_to_space(node[2], p), ast_to_space(node[3], p))
    if op == "-":
        raise ExprSyntaxError("'-' is only allowed in rig expressions", pos)
    if op == "*":
        return E.product(ast_to_space(node[2], p), ast_to_space(node[3], p))
    if op == "^":
        return E.power(ast_to_space(node[2], p), node[3])
    inner = ast_to_space(node[2], p)
    try:
        if op == "W":
            return E.wreath(inner, p)
        if op == "Om":
            return E.loop(inner)
        if op == "L":
            return E.free_loop(inner)
    except NotALoopSpaceError as exc:
        raise NotALoopSpaceError(f"{exc} (at position {pos})") from None
    raise AssertionError(op)


def parse(text: str, p: int) -> E.SpaceExpr:
    """Parse ``text`` into a normal-form space expression for the prime ``p``."""
    return ast_to_space(parse_ast(text), p)
