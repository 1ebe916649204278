"""A small flowchart language whose only loop is the Kleene wand.

A program declares labelled sets and partial maps between them, binds
expressions to names and then asks questions about them::

    set X { s0 s1 s2 }
    set A { done }
    map f : X -> X { s0->s1 s1->s2 }
    map g : X -> A { s2->done }
    let loop = until g do f
    eval loop at s0          # prints: done

Expressions, loosest binding first:

* ``e | e``: disjoint join (left-associative);
* ``e ; e``: composition in diagrammatic order (left-associative);
* ``until NAME do e``, ``star e``, ``restrict e``, ``compl e``: prefix forms;
* ``NAME``, ``zero SRC DST``, ``id SET`` and ``( e )``.

Names, labels and types are checked before anything runs; those errors carry
a line and column. Disjointness depends on values, so it is checked while
evaluating, and the message names the element where both sides are defined.
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass, field

from .errors import KleeneWandError
from .finpar import FinObj, PartialMap, compose, identity, is_rest_idem, restriction, zero
from .interference import MAXIMAL, join2
from .wand import complement, kleene_wand, upper_star

KEYWORDS = frozenset({
    "set", "map", "let", "eval", "at", "check", "disjoint",
    "until", "do", "star", "restrict", "compl", "zero", "id",
})
STATEMENT_KEYWORDS = ("set", "map", "let", "eval", "check")


# -- diagnostics ---------------------------------------------------------------

class FlowError(KleeneWandError):
    """A diagnostic tied to a position in the source text."""

    kind = "error"

    def __init__(self, message: str, line: int, col: int):
        super().__init__(message)
        self.message = message
        self.line = line
        self.col = col

    def format(self, source_name: str = "<input>") -> str:
        return "%s:%d:%d: %s: %s" % (source_name, self.line, self.col, self.kind, self.message)

    def __str__(self) -> str:
        return "line %d, column %d: %s" % (self.line, self.col, self.message)


class FlowSyntaxError(FlowError):
    kind = "syntax error"


class FlowNameError(FlowError):
    kind = "name error"


class FlowTypeError(FlowError):
    kind = "type error"


class FlowRuntimeError(FlowError):
    """Raised while evaluating; the program itself was well formed."""

    kind = "runtime error"


# -- lexer -----------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # WORD, a punctuation string, or EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<word>[A-Za-z0-9_][A-Za-z0-9_']*)
  | (?P<punct>[{}():=;|])
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise FlowSyntaxError("unexpected character %r" % text[pos], line, col)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "arrow":
            tokens.append(Token("->", "->", line, col))
        elif kind == "word":
            tokens.append(Token("WORD", m.group(), line, col))
        elif kind == "punct":
            tokens.append(Token(m.group(), m.group(), line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


# -- syntax tree ---------------------------------------------------------------------
#
# Positions are carried for diagnostics but excluded from equality, so that a
# reprinted and reparsed program compares equal to the original.

Pos = tuple[int, int]


def _pos():
    return field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class MapRef:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Seq:
    left: Expr
    right: Expr
    pos: Pos = _pos()


@dataclass(frozen=True)
class Join:
    left: Expr
    right: Expr
    pos: Pos = _pos()


@dataclass(frozen=True)
class Until:
    body: Expr
    guard: MapRef
    pos: Pos = _pos()


@dataclass(frozen=True)
class Star:
    expr: Expr
    pos: Pos = _pos()


@dataclass(frozen=True)
class Restrict:
    expr: Expr
    pos: Pos = _pos()


@dataclass(frozen=True)
class Complement:
    expr: Expr
    pos: Pos = _pos()


@dataclass(frozen=True)
class Zero:
    src: str
    dst: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Id:
    set: str
    pos: Pos = _pos()


Expr = MapRef | Seq | Join | Until | Star | Restrict | Complement | Zero | Id


@dataclass(frozen=True)
class SetDecl:
    name: str
    labels: tuple[str, ...]
    pos: Pos = _pos()


@dataclass(frozen=True)
class MapDecl:
    name: str
    src: str
    dst: str
    arrows: tuple[tuple[str, str], ...]
    pos: Pos = _pos()


@dataclass(frozen=True)
class Let:
    name: str
    expr: Expr
    pos: Pos = _pos()


@dataclass(frozen=True)
class Eval:
    name: str
    label: str | None  # None asks for the whole table
    pos: Pos = _pos()


@dataclass(frozen=True)
class Check:
    left: str
    right: str
    pos: Pos = _pos()


Statement = SetDecl | MapDecl | Let | Eval | Check


@dataclass(frozen=True)
class Program:
    statements: tuple[Statement, ...]

    @property
    def sets(self) -> list[SetDecl]:
        return [s for s in self.statements if isinstance(s, SetDecl)]

    @property
    def maps(self) -> list[MapDecl]:
        return [s for s in self.statements if isinstance(s, MapDecl)]

    @property
    def bindings(self) -> list[Let]:
        return [s for s in self.statements if isinstance(s, Let)]

    @property
    def directives(self) -> list[Eval | Check]:
        return [s for s in self.statements if isinstance(s, (Eval, Check))]


# -- parser ------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _error(self, what: str, tok: Token | None = None) -> FlowSyntaxError:
        tok = self.tok if tok is None else tok
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        return FlowSyntaxError("expected %s, found %s" % (what, found), tok.line, tok.col)

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, kind: str, what: str | None = None) -> Token:
        if self.tok.kind != kind:
            raise self._error(what or repr(kind))
        return self.advance()

    def at_keyword(self, word: str) -> bool:
        return self.tok.kind == "WORD" and self.tok.text == word

    def keyword(self, word: str) -> Token:
        if not self.at_keyword(word):
            raise self._error("'%s'" % word)
        return self.advance()

    def name(self, what: str = "a name") -> Token:
        tok = self.expect("WORD", what)
        if tok.text in KEYWORDS:
            raise FlowSyntaxError("'%s' is a keyword and cannot be used as a name" % tok.text,
                                  tok.line, tok.col)
        return tok

    def label(self) -> Token:
        return self.expect("WORD", "a label")

    # statements

    def program(self) -> Program:
        stmts = []
        while self.tok.kind != "EOF":
            stmts.append(self.statement())
        return Program(tuple(stmts))

    def statement(self) -> Statement:
        tok = self.tok
        if tok.kind == "WORD" and tok.text in STATEMENT_KEYWORDS:
            return getattr(self, "st_" + tok.text)()
        raise self._error("'set', 'map', 'let', 'eval' or 'check'")

    def st_set(self) -> SetDecl:
        start = self.keyword("set")
        name = self.name("a set name")
        self.expect("{", "'{'")
        labels = []
        while self.tok.kind == "WORD":
            labels.append(self.advance().text)
        self._close_brace(start)
        return SetDecl(name.text, tuple(labels), (start.line, start.col))

    def st_map(self) -> MapDecl:
        start = self.keyword("map")
        name = self.name("a map name")
        self.expect(":", "':'")
        src = self.name("a set name")
        self.expect("->", "'->'")
        dst = self.name("a set name")
        self.expect("{", "'{'")
        arrows = []
        while self.tok.kind == "WORD":
            a = self.advance()
            self.expect("->", "'->'")
            b = self.label()
            arrows.append((a.text, b.text))
        self._close_brace(start)
        return MapDecl(name.text, src.text, dst.text, tuple(arrows), (start.line, start.col))

    def _close_brace(self, opener: Token) -> None:
        if self.tok.kind != "}":
            err = self._error("'}'")
            err.message += " (the '{' of the %s at line %d is never closed)" % (
                opener.text, opener.line)
            raise err
        self.advance()

    def st_let(self) -> Let:
        start = self.keyword("let")
        name = self.name()
        self.expect("=", "'='")
        return Let(name.text, self.expr(), (start.line, start.col))

    def st_eval(self) -> Eval:
        start = self.keyword("eval")
        name = self.name()
        label = None
        if self.at_keyword("at"):
            self.advance()
            label = self.label().text
        return Eval(name.text, label, (start.line, start.col))

    def st_check(self) -> Check:
        start = self.keyword("check")
        left = self.name()
        self.keyword("disjoint")
        right = self.name()
        return Check(left.text, right.text, (start.line, start.col))

    # expressions

    def expr(self) -> Expr:
        left = self.seq()
        while self.tok.kind == "|":
            op = self.advance()
            left = Join(left, self.seq(), (op.line, op.col))
        return left

    def seq(self) -> Expr:
        left = self.prefix()
        while self.tok.kind == ";":
            op = self.advance()
            left = Seq(left, self.prefix(), (op.line, op.col))
        return left

    def prefix(self) -> Expr:
        tok = self.tok
        pos = (tok.line, tok.col)
        if self.at_keyword("until"):
            self.advance()
            guard = self.name("a guard name")
            self.keyword("do")
            return Until(self.prefix(), MapRef(guard.text, (guard.line, guard.col)), pos)
        for word, node in (("star", Star), ("restrict", Restrict), ("compl", Complement)):
            if self.at_keyword(word):
                self.advance()
                return node(self.prefix(), pos)
        return self.primary()

    def primary(self) -> Expr:
        tok = self.tok
        pos = (tok.line, tok.col)
        if tok.kind == "(":
            self.advance()
            inner = self.expr()
            if self.tok.kind != ")":
                err = self._error("')'")
                err.message += " (to match the '(' at line %d, column %d)" % pos
                raise err
            self.advance()
            return inner
        if self.at_keyword("zero"):
            self.advance()
            src = self.name("a set name")
            dst = self.name("a set name")
            return Zero(src.text, dst.text, pos)
        if self.at_keyword("id"):
            self.advance()
            return Id(self.name("a set name").text, pos)
        if tok.kind == "WORD" and tok.text not in KEYWORDS:
            self.advance()
            return MapRef(tok.text, pos)
        raise self._error("an expression")


# -- static checks ------------------------------------------------------------------

@dataclass
class _Scope:
    sets: dict[str, FinObj] = field(default_factory=dict)
    types: dict[str, tuple[str, str]] = field(default_factory=dict)


def _show(t: tuple[str, str]) -> str:
    return "%s -> %s" % t


class _Checker:
    def __init__(self) -> None:
        self.scope = _Scope()

    def set_obj(self, name: str, pos: Pos) -> FinObj:
        if name in self.scope.sets:
            return self.scope.sets[name]
        if name in self.scope.types:
            raise FlowNameError("'%s' is a map, not a set" % name, *pos)
        raise FlowNameError("undefined set '%s'" % name, *pos)

    def map_type(self, name: str, pos: Pos) -> tuple[str, str]:
        if name in self.scope.types:
            return self.scope.types[name]
        if name in self.scope.sets:
            raise FlowNameError("'%s' is a set, not a map" % name, *pos)
        raise FlowNameError("undefined map '%s'" % name, *pos)

    def statement(self, st: Statement) -> None:
        if isinstance(st, SetDecl):
            if st.name in self.scope.sets:
                raise FlowNameError("set '%s' is declared twice" % st.name, *st.pos)
            seen: set[str] = set()
            for lab in st.labels:
                if lab in seen:
                    raise FlowNameError("label '%s' appears twice in set '%s'"
                                        % (lab, st.name), *st.pos)
                seen.add(lab)
            self.scope.sets[st.name] = FinObj.labelled(st.labels)
        elif isinstance(st, MapDecl):
            self._fresh_map(st.name, st.pos)
            src = self.set_obj(st.src, st.pos)
            dst = self.set_obj(st.dst, st.pos)
            seen = set()
            for a, b in st.arrows:
                if a not in src.labels:
                    raise FlowNameError("'%s' is not an element of %s" % (a, st.src), *st.pos)
                if b not in dst.labels:
                    raise FlowNameError("'%s' is not an element of %s" % (b, st.dst), *st.pos)
                if a in seen:
                    raise FlowTypeError("map '%s' sends '%s' to two places" % (st.name, a),
                                        *st.pos)
                seen.add(a)
            self.scope.types[st.name] = (st.src, st.dst)
        elif isinstance(st, Let):
            t = self.expr(st.expr)
            self._fresh_map(st.name, st.pos)
            self.scope.types[st.name] = t
        elif isinstance(st, Eval):
            src, _ = self.map_type(st.name, st.pos)
            if st.label is not None and st.label not in self.scope.sets[src].labels:
                raise FlowNameError("'%s' is not an element of %s, the domain of %s"
                                    % (st.label, src, st.name), *st.pos)
        elif isinstance(st, Check):
            tl = self.map_type(st.left, st.pos)
            tr = self.map_type(st.right, st.pos)
            if tl[0] != tr[0]:
                raise FlowTypeError("disjointness compares maps out of one set, got %s and %s"
                                    % (_show(tl), _show(tr)), *st.pos)

    def _fresh_map(self, name: str, pos: Pos) -> None:
        if name in self.scope.types:
            raise FlowNameError("map '%s' is declared twice" % name, *pos)
        if name in self.scope.sets:
            raise FlowNameError("'%s' is already the name of a set" % name, *pos)

    def expr(self, e: Expr) -> tuple[str, str]:
        if isinstance(e, MapRef):
            return self.map_type(e.name, e.pos)
        if isinstance(e, Zero):
            self.set_obj(e.src, e.pos)
            self.set_obj(e.dst, e.pos)
            return (e.src, e.dst)
        if isinstance(e, Id):
            self.set_obj(e.set, e.pos)
            return (e.set, e.set)
        if isinstance(e, Seq):
            tl, tr = self.expr(e.left), self.expr(e.right)
            if tl[1] != tr[0]:
                raise FlowTypeError("cannot compose %s with %s" % (_show(tl), _show(tr)), *e.pos)
            return (tl[0], tr[1])
        if isinstance(e, Join):
            tl, tr = self.expr(e.left), self.expr(e.right)
            if tl != tr:
                raise FlowTypeError("join needs parallel maps, got %s and %s"
                                    % (_show(tl), _show(tr)), *e.pos)
            return tl
        if isinstance(e, Until):
            tb = self.expr(e.body)
            tg = self.expr(e.guard)
            if tb[0] != tb[1]:
                raise FlowTypeError("body must be an endomorphism, got %s" % _show(tb),
                                    *e.body.pos)
            if tg[0] != tb[0]:
                raise FlowTypeError("guard and body must start from one set, got %s and %s"
                                    % (_show(tg), _show(tb)), *e.guard.pos)
            return (tb[0], tg[1])
        if isinstance(e, Star):
            t = self.expr(e.expr)
            if t[0] != t[1]:
                raise FlowTypeError("star needs an endomorphism, got %s" % _show(t), *e.pos)
            return t
        if isinstance(e, Restrict):
            t = self.expr(e.expr)
            return (t[0], t[0])
        if isinstance(e, Complement):
            t = self.expr(e.expr)
            if t[0] != t[1]:
                raise FlowTypeError("compl needs an endomorphism, got %s" % _show(t), *e.pos)
            return t
        raise TypeError("not an expression: %r" % (e,))


def check(program: Program) -> None:
    """Resolve names and check types; raises a positioned :class:`FlowError`."""
    checker = _Checker()
    for st in program.statements:
        checker.statement(st)


def parse(text: str) -> Program:
    """Parse and statically check a program."""
    program = _Parser(text).program()
    check(program)
    return program


def parse_expr(text: str) -> Expr:
    """Parse a lone expression (no name resolution)."""
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "EOF":
        raise p._error("end of input")
    return e


# -- evaluation ----------------------------------------------------------------------

@dataclass(frozen=True)
class Result:
    directive: str
    output: str
    value: str | dict[str, str] | bool | None

    def to_json(self) -> dict:
        return {"directive": self.directive, "output": self.output, "value": self.value}


def _first_overlap(f: PartialMap, g: PartialMap) -> int | None:
    for x, (a, b) in enumerate(zip(f.t, g.t)):
        if a >= 0 and b >= 0:
            return x
    return None


def show_map(f: PartialMap) -> str:
    arrows = " ".join("%s->%s" % (f.dom.label(x), f.cod.label(v))
                      for x, v in enumerate(f.t) if v >= 0)
    return "{ %s }" % arrows if arrows else "{ }"


class Evaluator:
    """Evaluates the statements of a checked program in order."""

    def __init__(self) -> None:
        self.sets: dict[str, FinObj] = {}
        self.maps: dict[str, PartialMap] = {}

    def run(self, program: Program) -> Iterator[Result]:
        for st in program.statements:
            res = self.statement(st)
            if res is not None:
                yield res

    def statement(self, st: Statement) -> Result | None:
        if isinstance(st, SetDecl):
            self.sets[st.name] = FinObj.labelled(st.labels)
        elif isinstance(st, MapDecl):
            src, dst = self.sets[st.src], self.sets[st.dst]
            pairs = {src.index(a): dst.index(b) for a, b in st.arrows}
            self.maps[st.name] = PartialMap.from_pairs(src, dst, pairs)
        elif isinstance(st, Let):
            self.maps[st.name] = self.eval(st.expr)
        elif isinstance(st, Eval):
            f = self.maps[st.name]
            text = print_statement(st)
            if st.label is None:
                table = {f.dom.label(x): f.cod.label(v) for x, v in enumerate(f.t) if v >= 0}
                return Result(text, show_map(f), table)
            v = f(f.dom.index(st.label))
            value = None if v is None else f.cod.label(v)
            return Result(text, "undefined" if value is None else value, value)
        elif isinstance(st, Check):
            f, g = self.maps[st.left], self.maps[st.right]
            x = _first_overlap(f, g)
            text = print_statement(st)
            if x is None:
                return Result(text, "disjoint", True)
            return Result(text, "overlap at %s" % f.dom.label(x), False)
        return None

    def eval(self, e: Expr) -> PartialMap:
        if isinstance(e, MapRef):
            return self.maps[e.name]
        if isinstance(e, Zero):
            return zero(self.sets[e.src], self.sets[e.dst])
        if isinstance(e, Id):
            return identity(self.sets[e.set])
        if isinstance(e, Seq):
            return compose(self.eval(e.left), self.eval(e.right))
        if isinstance(e, Join):
            f, g = self.eval(e.left), self.eval(e.right)
            x = _first_overlap(f, g)
            if x is not None:
                raise FlowRuntimeError("join: both sides are defined at %s" % f.dom.label(x),
                                       *e.pos)
            return join2(f, g, MAXIMAL)
        if isinstance(e, Until):
            f, g = self.eval(e.body), self.eval(e.guard)
            x = _first_overlap(f, g)
            if x is not None:
                raise FlowRuntimeError("until: the guard %s and the body are both defined at %s"
                                       % (e.guard.name, f.dom.label(x)), *e.pos)
            return kleene_wand(f, g)
        if isinstance(e, Star):
            return upper_star(self.eval(e.expr))
        if isinstance(e, Restrict):
            return restriction(self.eval(e.expr))
        if isinstance(e, Complement):
            f = self.eval(e.expr)
            if not is_rest_idem(f):
                x = next(x for x, v in enumerate(f.t) if v >= 0 and v != x)
                raise FlowRuntimeError("compl needs a restriction idempotent, but the argument "
                                       "sends %s to %s" % (f.dom.label(x), f.cod.label(f.t[x])),
                                       *e.pos)
            return complement(f)
        raise TypeError("not an expression: %r" % (e,))


def run(program: Program) -> list[Result]:
    return list(Evaluator().run(program))


def run_text(text: str) -> list[Result]:
    return run(parse(text))


# -- printer -------------------------------------------------------------------------

_LEVEL = {Join: 0, Seq: 1, Until: 2, Star: 2, Restrict: 2, Complement: 2}


def _level(e: Expr) -> int:
    return _LEVEL.get(type(e), 3)


def _wrap(e: Expr, min_level: int) -> str:
    s = print_expr(e)
    return "(%s)" % s if _level(e) < min_level else s


def print_expr(e: Expr) -> str:
    """Render with the fewest parentheses that parse back to the same tree."""
    if isinstance(e, MapRef):
        return e.name
    if isinstance(e, Zero):
        return "zero %s %s" % (e.src, e.dst)
    if isinstance(e, Id):
        return "id %s" % e.set
    if isinstance(e, Join):
        return "%s | %s" % (_wrap(e.left, 0), _wrap(e.right, 1))
    if isinstance(e, Seq):
        return "%s ; %s" % (_wrap(e.left, 1), _wrap(e.right, 2))
    if isinstance(e, Until):
        return "until %s do %s" % (e.guard.name, _wrap(e.body, 2))
    if isinstance(e, Star):
        return "star " + _wrap(e.expr, 2)
    if isinstance(e, Restrict):
        return "restrict " + _wrap(e.expr, 2)
    if isinstance(e, Complement):
        return "compl " + _wrap(e.expr, 2)
    raise TypeError("not an expression: %r" % (e,))


def print_statement(st: Statement) -> str:
    if isinstance(st, SetDecl):
        return "set %s { %s}" % (st.name, "".join(lab + " " for lab in st.labels))
    if isinstance(st, MapDecl):
        body = "".join("%s->%s " % ab for ab in st.arrows)
        return "map %s : %s -> %s { %s}" % (st.name, st.src, st.dst, body)
    if isinstance(st, Let):
        return "let %s = %s" % (st.name, print_expr(st.expr))
    if isinstance(st, Eval):
        if st.label is None:
            return "eval %s" % st.name
        return "eval %s at %s" % (st.name, st.label)
    if isinstance(st, Check):
        return "check %s disjoint %s" % (st.left, st.right)
    raise TypeError("not a statement: %r" % (st,))


def print_program(program: Program) -> str:
    return "".join(print_statement(st) + "\n" for st in program.statements)


__all__ = [
    "FlowError", "FlowSyntaxError", "FlowNameError", "FlowTypeError", "FlowRuntimeError",
    "Token", "tokenize", "MapRef", "Seq", "Join", "Until", "Star", "Restrict", "Complement",
    "Zero", "Id", "Expr", "SetDecl", "MapDecl", "Let", "Eval", "Check", "Statement", "Program",
    "parse", "parse_expr", "check", "Result", "Evaluator", "run", "run_text", "show_map",
    "print_expr", "print_statement", "print_program",
]
