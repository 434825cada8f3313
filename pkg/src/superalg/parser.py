"""Recursive-descent parser for Grassmann expressions.

Grammar (left-associative, no implicit multiplication):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := number | 'i' | 'th' digits | call | '(' expr ')'
    call   := name '(' expr ')'        name in {ber, piber, integrate,
                                                fourier, conj, C}

Numbers are integers, rationals p/q or floats.  Syntax errors carry the
byte offset; generator indices are checked against the declared n.  A
leading '-' on a factor is accepted on input for convenience.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .grassmann import GrassmannElement
from .scalars import RINGS, imaginary_unit

CALL_NAMES = ("ber", "piber", "integrate", "fourier", "conj", "C")


class ParseError(ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Num:
    value: object  # Fraction or float

    def show(self):
        return str(self.value)


@dataclass(frozen=True)
class ImagUnit:
    def show(self):
        return "i"


@dataclass(frozen=True)
class Gen:
    index: int

    def show(self):
        return f"th{self.index}"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object

    def show(self):
        left = self.left.show()
        right = self.right.show()
        if self.op == "*":
            if isinstance(self.left, BinOp) and self.left.op in "+-":
                left = f"({left})"
            if isinstance(self.right, BinOp):
                right = f"({right})"
            return f"{left}*{right}"
        if isinstance(self.right, BinOp) and self.right.op in "+-":
            right = f"({right})"
        return f"{left} {self.op} {right}"


@dataclass(frozen=True)
class Call:
    name: str
    arg: object

    def show(self):
        return f"{self.name}({self.arg.show()})"


class _Tokens:
    def __init__(self, source):
        self.source = source
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.source) and self.source[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.source[self.pos] if self.pos < len(self.source) else ""

    def expect(self, ch):
        self.skip_ws()
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def take_while(self, pred):
        start = self.pos
        while self.pos < len(self.source) and pred(self.source[self.pos]):
            self.pos += 1
        return self.source[start : self.pos]


def parse(source: str, n: int):
    """Parse an expression; generator indices must lie in 1..n (n <= 16)."""
    if n > 16:
        raise ValueError("generator count capped at 16")
    toks = _Tokens(source)
    tree = _parse_expr(toks, n)
    toks.skip_ws()
    if toks.pos != len(source):
        raise ParseError("unexpected trailing input", toks.pos)
    return tree


def _parse_expr(toks, n):
    node = _parse_term(toks, n)
    while True:
        ch = toks.peek()
        if ch and ch in "+-":
            toks.pos += 1
            right = _parse_term(toks, n)
            node = BinOp(ch, node, right)
        else:
            return node


def _parse_term(toks, n):
    node = _parse_factor(toks, n)
    while toks.peek() == "*":
        toks.pos += 1
        node = BinOp("*", node, _parse_factor(toks, n))
    return node


def _parse_factor(toks, n):
    ch = toks.peek()
    offset = toks.pos
    if ch == "(":
        toks.pos += 1
        node = _parse_expr(toks, n)
        toks.expect(")")
        return node
    if ch == "-":
        # accepted on input; the canonical printer never emits it
        toks.pos += 1
        inner = _parse_factor(toks, n)
        return BinOp("*", Num(Fraction(-1)), inner)
    if ch.isdigit() or ch == ".":
        return _parse_number(toks)
    if ch.isalpha():
        word = toks.take_while(lambda c: c.isalnum())
        if word == "i":
            return ImagUnit()
        if word.startswith("th") and word[2:].isdigit():
            index = int(word[2:])
            if not 1 <= index <= n:
                raise ParseError(
                    f"generator th{index} outside the declared range 1..{n}",
                    offset,
                )
            return Gen(index)
        if word in CALL_NAMES:
            toks.expect("(")
            arg = _parse_expr(toks, n)
            toks.expect(")")
            return Call(word, arg)
        raise ParseError(f"unknown name {word!r}", offset)
    raise ParseError("expected a factor", offset)


def _parse_number(toks):
    offset = toks.pos
    digits = toks.take_while(lambda c: c.isdigit())
    if toks.pos < len(toks.source) and toks.source[toks.pos] == "/":
        toks.pos += 1
        denom = toks.take_while(lambda c: c.isdigit())
        if not denom:
            raise ParseError("expected a denominator", toks.pos)
        return Num(Fraction(int(digits), int(denom)))
    if toks.pos < len(toks.source) and toks.source[toks.pos] in ".eE":
        rest = toks.take_while(lambda c: c.isdigit() or c in ".eE+-")
        try:
            return Num(float(digits + rest))
        except ValueError:
            raise ParseError("malformed float literal", offset) from None
    if not digits:
        raise ParseError("expected a number", offset)
    return Num(Fraction(int(digits)))


def print_expr(tree) -> str:
    return tree.show()


def evaluate(tree, n, ring_name="rational"):
    """Evaluate an AST to a GrassmannElement over the named ring."""
    ring = RINGS[ring_name]

    def ev(node):
        if isinstance(node, Num):
            value = node.value
            if isinstance(value, float) and ring.is_exact:
                raise ValueError(
                    "float literal in an exact ring; choose --coeff f64/cf64"
                )
            return GrassmannElement.scalar(n, ring, value)
        if isinstance(node, ImagUnit):
            return GrassmannElement.scalar(n, ring, imaginary_unit(ring))
        if isinstance(node, Gen):
            return GrassmannElement.generator(n, ring, node.index)
        if isinstance(node, BinOp):
            left, right = ev(node.left), ev(node.right)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            return left * right
        if isinstance(node, Call):
            arg = ev(node.arg)
            return _call(node.name, arg)
        raise TypeError(f"unknown AST node {node!r}")

    return ev(tree)


def _call(name, arg: GrassmannElement):
    from .berezin import FiberSplit, berezin_integral
    from .hilbert import FnSpace, ProtoSuperHilbert

    if name == "conj":
        return arg.complex_conjugate()
    if name == "C":
        return arg.conjugation()
    if name == "integrate":
        return berezin_integral(arg, FiberSplit.full(arg.n))
    if name == "fourier":
        space = FnSpace(ProtoSuperHilbert.standard(arg.ring, 1), arg.n)
        element = space.element([[arg.coeff(mask)] for mask in range(1 << arg.n)])
        image = space.fourier_odd(element)
        out = GrassmannElement(arg.n, arg.ring)
        for mask in range(1 << arg.n):
            out._coeffs[mask] = image.comps[mask][0]
        out._terms = None
        return out
    if name == "ber":
        # scalar reading: the 1x1 even block matrix (x)
        if not arg.is_even():
            raise ValueError("ber needs an even argument")
        if arg.ring.is_zero(arg.body()):
            raise ValueError("ber needs an invertible argument")
        return arg
    if name == "piber":
        return arg.grassmann_abs()
    raise ValueError(f"unknown call {name!r}")
