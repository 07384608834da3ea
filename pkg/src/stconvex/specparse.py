"""A tiny language for naming test functions on the command line.

Grammar (LL(1))::

    spec    := IDENT [ "(" arglist ")" ]
    arglist := arg { "," arg }
    arg     := [ IDENT "=" ] ( NUMBER | COMPLEX | spec )
    COMPLEX := NUMBER ("+" | "-") NUMBER "i"

Examples: ``identity``, ``koebe(0.5)``, ``synth(g=koebe(0), mu=0.8, w=cmono(0.6, 1))``.
:func:`print_spec` emits the canonical form, and ``parse_spec(print_spec(x)) == x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import ParseError

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>[+\-−]?(?:\d+\.?\d*|\.\d+)(?:[eE][+\-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<punct>[(),=])
  | (?P<sign>[+\-−])
    """,
    re.VERBOSE,
)

Value = Union[int, float, complex, "SpecNode"]


@dataclass(frozen=True)
class Arg:
    key: str | None
    value: Value


@dataclass(frozen=True)
class SpecNode:
    name: str
    args: tuple[Arg, ...] = ()

    def __str__(self):
        return print_spec(self)


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos,
                             {"identifier", "number", "(", ")", ",", "="})
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _number(lexeme: str):
    lexeme = lexeme.replace("−", "-")
    if re.fullmatch(r"[+\-]?\d+", lexeme):
        return int(lexeme)
    return float(lexeme)


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind, lexeme=None, expected=None):
        tok = self.peek()
        if tok[0] != kind or (lexeme is not None and tok[1] != lexeme):
            want = expected or {lexeme or kind}
            got = tok[1] or "end of input"
            raise ParseError(f"unexpected {got!r}", tok[2], want)
        self.i += 1
        return tok

    def spec(self) -> SpecNode:
        name = self.take("ident", expected={"identifier"})[1]
        args = []
        if self.peek()[:2] == ("punct", "("):
            self.i += 1
            args.append(self.arg())
            while self.peek()[:2] == ("punct", ","):
                self.i += 1
                args.append(self.arg())
            self.take("punct", ")", expected={",", ")"})
        return SpecNode(name, tuple(args))

    def arg(self) -> Arg:
        key = None
        if self.peek()[0] == "ident" and self.peek(1)[:2] == ("punct", "="):
            key = self.take("ident")[1]
            self.i += 1
        return Arg(key, self.value())

    def value(self) -> Value:
        tok = self.peek()
        if tok[0] == "ident":
            return self.spec()
        if tok[0] != "number":
            raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2],
                             {"number", "identifier"})
        self.i += 1
        re_part = _number(tok[1])
        nxt = self.peek()
        # "a+bi": the lexer reads "+b" as a signed number
        if nxt[0] == "number" and nxt[1][0] in "+-−":
            self.i += 1
            self.take("ident", "i", expected={"i"})
            return complex(float(re_part), float(_number(nxt[1])))
        if nxt[0] == "sign":
            self.i += 1
            im = self.take("number", expected={"number"})
            self.take("ident", "i", expected={"i"})
            sign = -1.0 if nxt[1] in "-−" else 1.0
            return complex(float(re_part), sign * float(_number(im[1])))
        return re_part


def parse_spec(text: str) -> SpecNode:
    if not text or not text.strip():
        raise ParseError("empty spec", 0, {"identifier"})
    p = _Parser(text)
    node = p.spec()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2], {"end of input"})
    return node


def _fmt_value(v: Value) -> str:
    if isinstance(v, SpecNode):
        return print_spec(v)
    if isinstance(v, bool):
        raise TypeError("booleans are not spec values")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, complex):
        im = v.imag
        sign = "-" if (im < 0 or (im == 0 and str(im).startswith("-"))) else "+"
        return f"{v.real!r}{sign}{abs(im)!r}i"
    raise TypeError(f"unsupported spec value {v!r}")


def print_spec(node: SpecNode) -> str:
    if not node.args:
        return node.name
    parts = []
    for a in node.args:
        text = _fmt_value(a.value)
        parts.append(f"{a.key}={text}" if a.key else text)
    return f"{node.name}({', '.join(parts)})"
