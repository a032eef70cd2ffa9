"""Program AST and its canonical S-expression form.

Nodes are immutable and hash-consed in spirit: hash, depth and the
S-expression are computed once and cached, so deep programs built by the
enumerator stay cheap to compare and sort.

S-expressions use the n-ary view of a curried application spine::

    (concat (var 0) (cst_out " USD"))
    (kg_path "CityOf/phoneCode" (var 0))
"""

from __future__ import annotations

import json
import re
from typing import Iterator

from .errors import ParseError

INPUT = "input"
OUTPUT = "output"


class Program:
    __slots__ = ("_hash", "_sexpr", "depth")

    _hash: int
    _sexpr: str | None
    depth: int

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.sexpr}>"

    def __str__(self) -> str:
        return self.sexpr

    def __lt__(self, other: "Program") -> bool:
        return self.sexpr < other.sexpr

    @property
    def sexpr(self) -> str:
        if self._sexpr is None:
            self._sexpr = self._render()
        return self._sexpr

    def _render(self) -> str:
        raise NotImplementedError


class Primitive(Program):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("prim", name))
        self._sexpr = None
        self.depth = 1

    __hash__ = Program.__hash__

    def __eq__(self, other: object) -> bool:
        return self is other or (isinstance(other, Primitive) and other.name == self.name)

    def _render(self) -> str:
        return self.name


class Variable(Program):
    __slots__ = ("index",)

    def __init__(self, index: int):
        self.index = index
        self._hash = hash(("var", index))
        self._sexpr = None
        self.depth = 1

    __hash__ = Program.__hash__

    def __eq__(self, other: object) -> bool:
        return self is other or (isinstance(other, Variable) and other.index == self.index)

    def _render(self) -> str:
        return f"(var {self.index})"


class Constant(Program):
    __slots__ = ("text", "flavor")

    def __init__(self, text: str, flavor: str = OUTPUT):
        if flavor not in (INPUT, OUTPUT):
            raise ValueError(f"constant flavor must be 'input' or 'output', got {flavor!r}")
        self.text = text
        self.flavor = flavor
        self._hash = hash(("cst", text, flavor))
        self._sexpr = None
        self.depth = 1

    __hash__ = Program.__hash__

    def __eq__(self, other: object) -> bool:
        return self is other or (
            isinstance(other, Constant) and other.text == self.text and other.flavor == self.flavor
        )

    def _render(self) -> str:
        tag = "cst_in" if self.flavor == INPUT else "cst_out"
        return f"({tag} {_quote(self.text)})"


class KgPath(Program):
    """A knowledge-graph function ``STRING -> STRING``; ``path_id`` is ``"R1/R2/..."``."""

    __slots__ = ("path_id",)

    def __init__(self, path_id: str):
        self.path_id = path_id
        self._hash = hash(("kg", path_id))
        self._sexpr = None
        self.depth = 1

    @property
    def relations(self) -> tuple[str, ...]:
        return tuple(self.path_id.split("/"))

    __hash__ = Program.__hash__

    def __eq__(self, other: object) -> bool:
        return self is other or (isinstance(other, KgPath) and other.path_id == self.path_id)

    def _render(self) -> str:
        return f"(kg_path {_quote(self.path_id)})"


class Apply(Program):
    __slots__ = ("function", "argument")

    def __init__(self, function: Program, argument: Program):
        self.function = function
        self.argument = argument
        self._hash = hash((function._hash, argument._hash))
        self._sexpr = None
        self.depth = 1 + max(function.depth, argument.depth)

    __hash__ = Program.__hash__

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Apply) or other._hash != self._hash:
            return False
        return self.function == other.function and self.argument == other.argument

    def _render(self) -> str:
        f = self.function
        a = self.argument.sexpr
        if isinstance(f, Primitive):
            return f"({f.sexpr} {a})"
        if isinstance(f, (Apply, KgPath)):
            return f"{f.sexpr[:-1]} {a})"
        return f"(@ {f.sexpr} {a})"


def apply(head: Program, *args: Program) -> Program:
    out = head
    for a in args:
        out = Apply(out, a)
    return out


def spine(program: Program) -> tuple[Program, list[Program]]:
    """Split ``f a1 ... an`` into its head leaf and argument list."""
    args: list[Program] = []
    while isinstance(program, Apply):
        args.append(program.argument)
        program = program.function
    args.reverse()
    return program, args


def leaves(program: Program) -> Iterator[Program]:
    stack = [program]
    while stack:
        p = stack.pop()
        if isinstance(p, Apply):
            stack.append(p.argument)
            stack.append(p.function)
        else:
            yield p


def arity_of(program: Program) -> int:
    """Smallest input count under which every variable is in range."""
    return max((p.index + 1 for p in leaves(program) if isinstance(p, Variable)), default=0)


def _quote(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


# ---- parsing -------------------------------------------------------------

_TOKEN = re.compile(r'\s*(?:(\()|(\))|("(?:[^"\\]|\\.)*")|([^\s()"]+))', re.S)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character at offset {pos}: {text[pos:pos + 10]!r}")
        if m.group(1):
            tokens.append(("(", "("))
        elif m.group(2):
            tokens.append((")", ")"))
        elif m.group(3):
            tokens.append(("str", json.loads(m.group(3))))
        else:
            tokens.append(("atom", m.group(4)))
        pos = m.end()
    return tokens


def parse_sexpr(text: str) -> Program:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty program text")
    program, pos = _parse(tokens, 0)
    if pos != len(tokens):
        raise ParseError(f"trailing tokens after program: {text!r}")
    return program


def _parse(tokens: list[tuple[str, str]], pos: int) -> tuple[Program, int]:
    kind, value = tokens[pos]
    if kind == "atom":
        return Primitive(value), pos + 1
    if kind != "(":
        raise ParseError(f"unexpected token {value!r}")
    pos += 1
    if pos >= len(tokens):
        raise ParseError("unterminated list")
    kind, value = tokens[pos]
    if kind != "atom":
        raise ParseError(f"list must start with a symbol, got {value!r}")
    pos += 1

    def expect(k: str) -> str:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos][0] != k:
            raise ParseError(f"expected {k} after {value!r}")
        v = tokens[pos][1]
        pos += 1
        return v

    if value == "var":
        head: Program = Variable(int(expect("atom")))
    elif value in ("cst_in", "cst_out"):
        head = Constant(expect("str"), INPUT if value == "cst_in" else OUTPUT)
    elif value == "kg_path":
        head = KgPath(expect("str"))
    elif value == "@":
        head, pos = _parse(tokens, pos)
    else:
        head = Primitive(value)
    args = []
    while pos < len(tokens) and tokens[pos][0] != ")":
        arg, pos = _parse(tokens, pos)
        args.append(arg)
    if pos >= len(tokens):
        raise ParseError("unterminated list")
    if isinstance(head, (Variable, Constant)) and args and value != "@":
        raise ParseError(f"{value} takes no program arguments")
    if isinstance(head, Primitive) and not args:
        raise ParseError(f"empty application of {value!r}")
    return apply(head, *args), pos + 1
