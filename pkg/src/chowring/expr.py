"""Expression language shared by every ring.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ['-'] atom ('^' nat)?
    atom   := literal | gen | '(' expr ')'
    gen    := name ['(' arg (',' arg)* ')']
    literal:= nat ['/' nat]

Generator names are looked up in a per-ring symbol table.
"""
import re
from dataclasses import dataclass
from typing import Tuple, Union

from .polynomial import (D, FC, FCC, FCP, FD, FEX, FIQL, FL, FO, FQD, FQL, HI, HL, HO, HT, L, O, PH,
                         SYM, Polynomial, to_text)
from .rational import Q
from .schubert import SchubertElement

RINGS = ("bv", "hilbert", "fano", "pbundle", "grass", "sym")


class ParseError(ValueError):
    def __init__(self, msg, text="", pos=0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.column = col


# --- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Q


@dataclass(frozen=True)
class Gen:
    name: str
    args: Tuple[Union[int, str], ...]
    pos: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Gen, BinOp, Neg, Pow]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos and not m.group(0):
            break
        if m.group(0).strip() == "":
            break
        start = m.end() - len(m.group(m.lastindex))
        if m.group(1):
            toks.append(("nat", int(m.group(1)), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^/(),":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            toks.append((ch, ch, start))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError("unexpected input", text, pos)
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.take()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.factor())
        node = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "-":
                raise ParseError("negative exponent", self.text, tok[2])
            node = Pow(node, self.take("nat")[1])
        return node

    def atom(self):
        tok = self.peek()
        if tok[0] == "nat":
            self.take()
            num = Q(tok[1])
            if self.peek()[0] == "/":
                self.take()
                den = self.take("nat")
                if den[1] == 0:
                    raise ParseError("zero denominator", self.text, den[2])
                num = Q(tok[1], den[1])
            return Num(num)
        if tok[0] == "name":
            self.take()
            args = ()
            if self.peek()[0] == "(":
                self.take()
                args = [self.arg()]
                while self.peek()[0] == ",":
                    self.take()
                    args.append(self.arg())
                self.take(")")
            return Gen(tok[1], tuple(args), tok[2])
        if tok[0] == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"unexpected {what}", self.text, tok[2])

    def arg(self):
        tok = self.take()
        if tok[0] not in ("nat", "name"):
            raise ParseError(f"bad generator argument {tok[1]!r}", self.text, tok[2])
        return tok[1]


def parse_expr(text, ring="bv"):
    """Parse ``text`` to an AST, checking generator names and arities for ``ring``."""
    if ring not in RINGS:
        raise ValueError(f"unknown ring {ring!r}")
    p = _Parser(text)
    node = p.expr()
    p.take("end")
    _check_gens(node, ring, text)
    return node


# --- symbol tables --------------------------------------------------------------

def _nat(v, what):
    if not isinstance(v, int):
        raise ValueError(f"{what} must be a positive integer")
    if v < 1:
        raise ValueError(f"{what} must be positive")
    return v


def _bv_gen(name, args):
    if name == "o" and len(args) == 1:
        return (O, _nat(args[0], "index"))
    if name == "L" and len(args) == 2:
        return (L, _nat(args[0], "NS label"), _nat(args[1], "index"))
    if name == "D" and len(args) == 2:
        i, j = _nat(args[0], "index"), _nat(args[1], "index")
        if i == j:
            raise ValueError("D(i,j) needs distinct indices")
        return (D, min(i, j), max(i, j))
    return None


def _hilbert_gen(name, args):
    if name == "c" and args:
        kind = args[0]
        if kind == "T" and len(args) == 2:
            return (HT, _nat(args[1], "Chern degree"))
        if kind == "O" and len(args) == 2:
            return (HO, _nat(args[1], "Chern degree"))
        if kind == "I" and len(args) == 3:
            return (HI, _nat(args[1], "Chern degree"), _nat(args[2], "marked point"))
        return None
    if name == "L" and len(args) == 1:
        return (HL, _nat(args[0], "NS label"))
    return _bv_gen(name, args)


_FANO_NULLARY = {"l": FL, "cc": FCC, "Ex": FEX, "o": FO, "ql": FQL, "iql": FIQL, "C": FC, "Cp": FCP}


def _fano_gen(name, args):
    if name in _FANO_NULLARY and not args:
        return (_FANO_NULLARY[name],)
    if name == "D" and len(args) == 1:
        return (FD, _nat(args[0], "divisor label"))
    if name == "q" and len(args) == 2:
        j, k = _nat(args[0], "divisor label"), _nat(args[1], "divisor label")
        return (FQD, min(j, k), max(j, k))
    return None


def _pbundle_gen(name, args):
    if not args and name in ("h", "l", "cc"):
        return ({"h": PH, "l": FL, "cc": FCC}[name],)
    return None


def _sym_gen(name, args):
    return (SYM, name) if not args else None


_TABLES = {"bv": _bv_gen, "hilbert": _hilbert_gen, "fano": _fano_gen, "pbundle": _pbundle_gen,
           "sym": _sym_gen}


def _resolve(node, ring, text=""):
    if ring == "grass":
        if node.name == "s" and len(node.args) in (1, 2):
            a = node.args[0]
            b = node.args[1] if len(node.args) == 2 else 0
            if not (isinstance(a, int) and isinstance(b, int)):
                raise ParseError("s(a,b) needs integer arguments", text, node.pos)
            try:
                return SchubertElement.sigma(a, b)
            except ValueError as e:
                raise ParseError(str(e), text, node.pos) from None
        raise ParseError(f"unknown generator {_show(node)} in ring grass", text, node.pos)
    try:
        g = _TABLES[ring](node.name, node.args)
    except ValueError as e:
        raise ParseError(f"{_show(node)}: {e}", text, node.pos) from None
    if g is None:
        raise ParseError(f"unknown generator or wrong arity: {_show(node)} in ring {ring}", text, node.pos)
    return g


def _show(node):
    return node.name + (f"({','.join(map(str, node.args))})" if node.args else "")


def _check_gens(node, ring, text):
    if isinstance(node, Gen):
        _resolve(node, ring, text)
    elif isinstance(node, BinOp):
        _check_gens(node.left, ring, text)
        _check_gens(node.right, ring, text)
    elif isinstance(node, Neg):
        _check_gens(node.operand, ring, text)
    elif isinstance(node, Pow):
        _check_gens(node.base, ring, text)


# --- evaluation ------------------------------------------------------------------

def evaluate(node, ring="bv"):
    """Evaluate an AST to a Polynomial (or a SchubertElement in the grass ring)."""
    if isinstance(node, Num):
        if ring == "grass":
            return SchubertElement.one().scale(node.value)
        return Polynomial.const(node.value, ring)
    if isinstance(node, Gen):
        g = _resolve(node, ring)
        return g if ring == "grass" else Polynomial.gen(g, ring)
    if isinstance(node, Neg):
        return -evaluate(node.operand, ring)
    if isinstance(node, Pow):
        return evaluate(node.base, ring) ** node.exponent
    a, b = evaluate(node.left, ring), evaluate(node.right, ring)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    return a * b


def parse(text, ring="bv"):
    """Parse and evaluate in one step."""
    return evaluate(parse_expr(text, ring), ring)


def print_canonical(p):
    if isinstance(p, SchubertElement):
        return str(p)
    return to_text(p)
