"""
Text grammars for fields, elements, forms, vectors, matrices and isometry expressions

    field  := "gf" 2^m [":" modulus] | "f2t"
    elt    := term ("+" term)*
    term   := power (("*" | "/") power)*
    power  := atom ["^" int]
    atom   := "t" | int | "(" elt ")"
    form   := "" | fterm (("_|_" | "⊥") fterm)*
    fterm  := "[" elt "," elt "]" | "<" [elt ("," elt)*] ">"
    vector := "(" elt ("," elt)* ")" | vterm ("+" vterm)*
    vterm  := [power ("*" power)* "*"] name        name is x_i, y_i, g_j or e_k (1-based)
    matrix := row (";" row)*,  row := elt ("," elt)*
    expr   := factor ("*" factor)*
    factor := "id" | "tau(" vector ")" | "transvection(" vector "," elt ")"
            | "null(" int "," int ")" | "radswap(" int "," int ")"

Integer literals (decimal, 0b or 0x) are bit-codes of GF(2)[t] polynomials. In an
isometry expression "a*b" is a after b.
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import linalg
from .errors import Char2OrthError, NotAnIsometry, ParseError
from .field import Field, RATFUNC, binary_field
from .linalg import Matrix, Vector
from .orthogroup import (
    Isometry,
    basic_null_on_pairs,
    basic_radical,
    identity,
    make_isometry,
    orthogonal_transvection,
    transvection,
)
from .quadspace import QuadForm, Signature

_TOKEN_RE = re.compile(
    r"(?P<num>0[bB][01]+|0[xX][0-9a-fA-F]+|\d+)"
    r"|(?P<sep>_\|_|⊥)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9]*(?:_\d+)?)"
    r"|(?P<op>[+*/^(),;\[\]<>])"
)
_CONSTRUCTORS = ("id", "tau", "transvection", "null", "radswap")
_VECTOR_NAME_RE = re.compile(r"([xyge])_?(\d+)$")
_FIELD_RE = re.compile(r"gf(\d+)(?::(0[bB][01]+|0[xX][0-9a-fA-F]+|\d+))?$")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        tokens.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, field: Field):
        self.text = text
        self.field = field
        self.tokens = tokenize(text)
        self.i = 0

    # token plumbing

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.peek()
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        return self.peek().text == text and self.peek().kind != "end"

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.advance()

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", self.text, tok.pos)

    def finish(self):
        if self.peek().kind != "end":
            self.fail("unexpected trailing input")

    def integer(self) -> int:
        tok = self.peek()
        if tok.kind != "num":
            self.fail("expected an integer")
        self.advance()
        return int(tok.text, 0)

    # elements

    def element(self):
        f = self.field
        value = self.term()
        while self.accept("+"):
            value = f.add(value, self.term())
        return value

    def term(self):
        f = self.field
        value = self.power()
        while self.at("*") or self.at("/"):
            op = self.advance()
            rhs = self.power()
            if op.text == "*":
                value = f.mul(value, rhs)
            else:
                try:
                    value = f.div(value, rhs)
                except Char2OrthError as e:
                    raise ParseError(str(e), self.text, op.pos) from None
        return value

    def power(self):
        value = self.atom()
        if self.accept("^"):
            value = self.field.pow(value, self.integer())
        return value

    def atom(self):
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return self.element_from_code(int(tok.text, 0), tok)
        if tok.kind == "name" and tok.text == "t":
            self.advance()
            return self.field.from_poly(0b10)
        if self.accept("("):
            value = self.element()
            self.expect(")")
            return value
        self.fail("expected an element")

    def element_from_code(self, code: int, tok: Token):
        try:
            return self.field.from_poly(code)
        except Char2OrthError as e:
            raise ParseError(str(e), self.text, tok.pos) from None

    # forms

    def form(self) -> QuadForm:
        pairs, diag = [], []
        if self.peek().kind == "end":
            return Signature((), ()).to_form(self.field)
        while True:
            tok = self.peek()
            if self.accept("["):
                if diag:
                    self.fail("hyperbolic-type terms must precede diagonal terms", tok)
                a = self.element()
                self.expect(",")
                b = self.element()
                self.expect("]")
                pairs.append((a, b))
            elif self.accept("<"):
                if not self.at(">"):
                    diag.append(self.element())
                    while self.accept(","):
                        diag.append(self.element())
                self.expect(">")
            else:
                self.fail("expected '[' or '<'")
            if self.peek().kind != "sep":
                break
            self.advance()
        return Signature(tuple(pairs), tuple(diag)).to_form(self.field)

    # vectors

    def vector(self, q: QuadForm) -> Vector:
        f = self.field
        if self.at("(") and self.is_tuple_literal():
            start = self.expect("(")
            coords = [self.element()]
            while self.accept(","):
                coords.append(self.element())
            self.expect(")")
            if len(coords) != q.dim:
                self.fail(f"vector has {len(coords)} coordinates, the form has dimension {q.dim}", start)
            return tuple(coords)
        v = linalg.zero_vector(f, q.dim)
        while True:
            coef = f.one
            while not self.vector_name_ahead():
                coef = f.mul(coef, self.power())
                self.expect("*")
            tok = self.advance()
            v = linalg.vadd(f, v, linalg.vscale(f, coef, self.basis_vector(q, tok)))
            if not self.accept("+"):
                return v

    def is_tuple_literal(self) -> bool:
        """Look past a parenthesised element for the comma of a tuple."""
        depth = 0
        j = self.i
        while self.tokens[j].kind != "end":
            text = self.tokens[j].text
            if text == "(":
                depth += 1
            elif text == ")":
                depth -= 1
                if depth == 0:
                    return False
            elif text == "," and depth == 1:
                return True
            j += 1
        return False

    def vector_name_ahead(self) -> bool:
        tok = self.peek()
        return tok.kind == "name" and _VECTOR_NAME_RE.match(tok.text) is not None

    def basis_vector(self, q: QuadForm, tok: Token) -> Vector:
        letter, idx = _VECTOR_NAME_RE.match(tok.text).groups()
        i = int(idx) - 1
        if letter == "e":
            pos = i
        elif q.signature is None:
            self.fail("x, y and g names need a signature form", tok)
        elif letter in "xy":
            pos = 2 * i + (letter == "y") if 0 <= i < q.r else -1
        else:
            pos = 2 * q.r + i if 0 <= i < q.s else -1
        if not 0 <= pos < q.dim:
            self.fail(f"basis vector {tok.text} is out of range", tok)
        return q.basis_vector(pos)

    # matrices and expressions

    def matrix(self, n: Optional[int] = None) -> Matrix:
        rows = [self.row()]
        while self.accept(";"):
            rows.append(self.row())
        width = len(rows[0])
        if any(len(r) != width for r in rows) or len(rows) != width:
            self.fail("matrix must be square with rows of equal length")
        if n is not None and width != n:
            self.fail(f"matrix has size {width}, expected {n}")
        return linalg.from_rows(rows)

    def row(self) -> List:
        row = [self.element()]
        while self.accept(","):
            row.append(self.element())
        return row

    def expression(self, q: QuadForm) -> Isometry:
        value = self.factor(q)
        while self.accept("*"):
            value = value.compose(self.factor(q))
        return value

    def factor(self, q: QuadForm) -> Isometry:
        tok = self.peek()
        if tok.kind != "name" or tok.text not in _CONSTRUCTORS:
            self.fail("expected id, tau, transvection, null or radswap")
        self.advance()
        try:
            if tok.text == "id":
                return identity(q)
            self.expect("(")
            if tok.text == "tau":
                ret = orthogonal_transvection(q, self.vector(q))
            elif tok.text == "transvection":
                w = self.vector(q)
                self.expect(",")
                ret = transvection(q, w, self.element())
            elif tok.text in ("null", "radswap"):
                i = self.integer()
                self.expect(",")
                j = self.integer()
                if tok.text == "null":
                    ret = basic_null_on_pairs(q, i - 1, j - 1)
                else:
                    ret = basic_radical(q, self.radical_vector(q, i, tok), self.radical_vector(q, j, tok))
            self.expect(")")
            return ret
        except ParseError:
            raise
        except Char2OrthError as e:
            raise ParseError(str(e), self.text, tok.pos) from None

    def radical_vector(self, q: QuadForm, j: int, tok: Token) -> Vector:
        if q.signature is None or not 1 <= j <= q.s:
            self.fail(f"g_{j} is out of range", tok)
        return q.basis_vector(2 * q.r + j - 1)


def parse_field(text: str) -> Field:
    spec = text.strip().lower()
    if spec == "f2t":
        return RATFUNC
    m = _FIELD_RE.match(spec)
    if m is None:
        raise ParseError(f"unknown field {text!r}", text, 0)
    order = int(m.group(1))
    if order < 2 or order & (order - 1):
        raise ParseError(f"field order {order} is not a power of two", text, 2)
    modulus = int(m.group(2), 0) if m.group(2) else None
    try:
        return binary_field(order.bit_length() - 1, modulus)
    except Char2OrthError as e:
        raise ParseError(str(e), text, spec.find(":") + 1 if modulus else 0) from None


def parse_element(field: Field, text: str):
    p = _Parser(text, field)
    value = p.element()
    p.finish()
    return value


def parse_form(field: Field, text: str) -> QuadForm:
    p = _Parser(text, field)
    q = p.form()
    p.finish()
    return q


def parse_vector(q: QuadForm, text: str) -> Vector:
    p = _Parser(text, q.field)
    v = p.vector(q)
    p.finish()
    return v


def parse_matrix(field: Field, text: str, n: Optional[int] = None) -> Matrix:
    p = _Parser(text, field)
    M = p.matrix(n)
    p.finish()
    return M


def parse_isometry_expr(q: QuadForm, text: str) -> Isometry:
    p = _Parser(text, q.field)
    phi = p.expression(q)
    p.finish()
    return phi


def parse_isometry(q: QuadForm, text: str) -> Isometry:
    """An element of O(q) given as an isometry expression or as a row-major matrix."""
    first = tokenize(text)[0]
    if first.kind == "name" and first.text in _CONSTRUCTORS:
        phi = parse_isometry_expr(q, text)
        if phi.symplectic:
            raise NotAnIsometry("expression preserves B but not q")
        return phi
    return make_isometry(q, parse_matrix(q.field, text, q.dim))


def format_vector(field: Field, v: Sequence) -> str:
    return "(" + ",".join(field.format(x) for x in v) + ")"


def format_matrix(field: Field, M: Matrix) -> str:
    return ";".join(",".join(field.format(x) for x in row) for row in linalg.to_rows(M))
