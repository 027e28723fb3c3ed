"""
Text format for polynomials, vector fields and structure files.

Expression grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)*
    atom   := rational | ident | 'p' '(' ident ')' | 'd' '(' ident ')'
            | 'exp' '(' [sign] [rational '*'] 't' ')' | '(' expr ')'

``p(x)`` is the momentum conjugate to ``x``; bare ``p`` and ``t`` are the
line pair.  ``d(x)`` is only legal in vector fields, where it stands for
d/dx and is read as the symbol p(x).

Structure file::

    # comment
    manifold: x:even, y:even, xi:odd, eta:odd
    line: no
    kind: exact-qs
    S_hat: p(x)*p(xi) + p(y)*p(eta)
    Q: d(xi)
    E: y*d(y) + xi*d(xi)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .cotangent import LINE_COORD, PhaseSpace, SuperManifold, VectorField, symbol
from .superpoly import GradingError, Parity, SuperPoly, VarKind
from .structures import (
    ExactQSStructure,
    HomologicalField,
    OddJacobiStructure,
    QSStructure,
    SchoutenStructure,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # num | ident | op | end
    text: str
    col: int


def _tokenize(text: str, line: int, col0: int) -> list:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), col0 + start))
        pos = m.end()
    toks.append(_Tok("end", "", col0 + len(text)))
    return toks


class _Parser:
    def __init__(self, text, space: PhaseSpace, vector: bool, line: int, col0: int):
        self.toks = _tokenize(text, line, col0)
        self.i = 0
        self.space = space
        self.alg = space.algebra
        self.vector = vector
        self.line = line

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok.col)

    def expect(self, text):
        t = self.next()
        if t.text != text or t.kind == "end":
            raise self.error(f"expected {text!r}, got {t.text or 'end of input'!r}", t)
        return t

    def parse(self) -> SuperPoly:
        out = self.expr()
        if self.peek().kind != "end":
            t = self.peek()
            if t.text == ")":
                raise self.error("unbalanced parentheses: unexpected ')'")
            raise self.error(f"unexpected token {t.text!r}")
        return out

    def expr(self) -> SuperPoly:
        sign = 1
        if self.peek().text in ("+", "-") and self.peek().kind == "op":
            sign = -1 if self.next().text == "-" else 1
        out = self.term().scale(sign)
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            op = self.next().text
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> SuperPoly:
        out = self.factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.next()
            out = out * self.factor()
        return out

    def factor(self) -> SuperPoly:
        base = self.atom()
        while self.peek().kind == "op" and self.peek().text == "^":
            self.next()
            t = self.next()
            if t.kind != "num":
                raise self.error("exponent must be a natural number", t)
            base = base ** int(t.text)
        return base

    def rational(self) -> Fraction:
        t = self.next()
        if t.kind != "num":
            raise self.error(f"malformed rational near {t.text or 'end of input'!r}", t)
        num = int(t.text)
        if self.peek().kind == "op" and self.peek().text == "/":
            self.next()
            d = self.next()
            if d.kind != "num" or int(d.text) == 0:
                raise self.error("malformed rational denominator", d)
            return Fraction(num, int(d.text))
        return Fraction(num)

    def _coord_arg(self, head: _Tok) -> str:
        self.expect("(")
        t = self.next()
        if t.kind != "ident" or t.text not in self.space.manifold.names:
            raise self.error(f"unknown coordinate {t.text!r} in {head.text}(...)", t)
        self.expect(")")
        return t.text

    def atom(self) -> SuperPoly:
        t = self.peek()
        if t.kind == "num":
            return self.alg.const(self.rational())
        if t.kind == "op" and t.text == "(":
            self.next()
            inner = self.expr()
            if self.peek().text != ")":
                raise self.error("unbalanced parentheses: missing ')'")
            self.next()
            return inner
        if t.kind != "ident":
            raise self.error(f"unexpected token {t.text or 'end of input'!r}")
        self.next()
        follows_paren = self.peek().kind == "op" and self.peek().text == "("
        if t.text == "exp" and follows_paren:
            return self.exp_atom(t)
        if t.text in ("p", "d") and follows_paren:
            if (t.text == "d") != self.vector:
                what = "derivations d(...)" if t.text == "d" else "momenta p(...)"
                where = "functions" if t.text == "d" else "vector fields"
                raise self.error(f"{what} are not allowed in {where}", t)
            return self.space.p(self._coord_arg(t))
        if t.text in self.alg:
            v = self.alg.variable(t.text)
            if self.vector and v.kind is VarKind.LINE_MOMENTUM:
                raise self.error("momenta are not allowed in vector fields", t)
            return self.alg.var(t.text)
        raise self.error(f"unknown identifier {t.text!r}", t)

    def exp_atom(self, head: _Tok) -> SuperPoly:
        self.expect("(")
        sign = 1
        if self.peek().kind == "op" and self.peek().text in ("+", "-"):
            sign = -1 if self.next().text == "-" else 1
        rate = Fraction(1)
        if self.peek().kind == "num":
            rate = self.rational()
            self.expect("*")
        t = self.next()
        if t.text != LINE_COORD:
            raise self.error("exp(...) takes the form exp(rate*t)", t)
        self.expect(")")
        if not self.space.line:
            raise self.error("exp(...) needs the line coordinate (set 'line: yes')", head)
        return self.alg.exp(sign * rate)


def parse_expression(text: str, space: PhaseSpace, *, line: int = 1, col: int = 1) -> SuperPoly:
    return _Parser(text, space, vector=False, line=line, col0=col).parse()


def parse_vector_field(text: str, space: PhaseSpace, parity: Parity | None = None,
                       *, line: int = 1, col: int = 1) -> VectorField:
    sym = _Parser(text, space, vector=True, line=line, col0=col).parse()
    try:
        return VectorField.from_symbol(space, sym, parity)
    except (ValueError, GradingError) as exc:
        raise ParseError(f"bad vector field: {exc}", line, col) from None


def _fmt_term(poly: SuperPoly, mono, coeff: Fraction, names) -> str:
    parts = []
    if mono.rate:
        parts.append(f"exp({mono.rate}*t)")
    for i, e in mono.factors:
        parts.append(names[i] if e == 1 else f"{names[i]}^{e}")
    mag = abs(coeff)
    if not parts:
        return str(mag)
    if mag != 1:
        parts.insert(0, str(mag))
    return "*".join(parts)


def print_expression(f: SuperPoly, names=None) -> str:
    """Terms in ascending monomial order; rationals as a/b."""
    if f.is_zero():
        return "0"
    names = names or [v.name for v in f.algebra.variables]
    out = []
    for k, mono in enumerate(sorted(f.terms)):
        c = f.terms[mono]
        body = _fmt_term(f, mono, c, names)
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def print_vector_field(X: VectorField) -> str:
    alg = X.space.algebra
    names = [f"d({v.name[2:-1]})" if v.kind is VarKind.MOMENTUM else v.name
             for v in alg.variables]
    return print_expression(symbol(X), names)


# -- structure files ---------------------------------------------------------

KINDS = ("schouten", "qs", "odd-jacobi", "exact-qs")
REQUIRED = {
    "schouten": ("S_hat",),
    "qs": ("S_hat", "Q"),
    "odd-jacobi": ("S", "Q"),
    "exact-qs": ("S_hat", "Q", "E"),
}
_KEYS = ("manifold", "line", "kind", "S_hat", "S", "Q", "E")


@dataclass(frozen=True, eq=False)
class StructureFile:
    space: PhaseSpace
    kind: str
    structure: object


def _parse_manifold(value: str, line: int, col: int) -> SuperManifold:
    coords = []
    if not value.strip():
        return SuperManifold(())
    offset = 0
    for item in value.split(","):
        c = col + offset + (len(item) - len(item.lstrip()))
        offset += len(item) + 1
        bits = item.strip().split(":")
        if len(bits) != 2:
            raise ParseError(f"coordinate must be written name:parity, got {item.strip()!r}", line, c)
        try:
            coords.append((bits[0].strip(), Parity.parse(bits[1])))
        except ValueError as exc:
            raise ParseError(str(exc), line, c) from None
    try:
        return SuperManifold(tuple(coords))
    except ValueError as exc:
        raise ParseError(str(exc), line, col) from None


def load_structure(text: str) -> StructureFile:
    fields: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if ":" not in body:
            raise ParseError("expected 'key: value'", lineno, 1)
        key, value = body.split(":", 1)
        key = key.strip()
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, 1)
        if key in fields:
            raise ParseError(f"duplicate key {key!r}", lineno, 1)
        fields[key] = (value, lineno, body.index(":") + 2)

    for key in ("manifold", "kind"):
        if key not in fields:
            raise ParseError(f"missing required key {key!r}", 1, 1)
    kval, kline, kcol = fields["kind"]
    kind = kval.strip()
    if kind not in KINDS:
        raise ParseError(f"unknown structure kind {kind!r}", kline, kcol)
    manifold = _parse_manifold(*fields["manifold"])
    line = False
    if "line" in fields:
        lval, lline, lcol = fields["line"]
        if lval.strip().lower() not in ("yes", "no", "true", "false"):
            raise ParseError("line must be yes or no", lline, lcol)
        line = lval.strip().lower() in ("yes", "true")
    space = PhaseSpace(manifold, line=line)

    for key in REQUIRED[kind]:
        if key not in fields:
            raise ParseError(f"structure kind {kind!r} requires {key!r}", kline, kcol)
    for key in ("S_hat", "S", "Q", "E"):
        if key in fields and key not in REQUIRED[kind]:
            raise ParseError(f"key {key!r} does not belong to kind {kind!r}", fields[key][1], 1)

    def expr(key):
        v, ln, c = fields[key]
        return parse_expression(v, space, line=ln, col=c)

    def vf(key, parity):
        v, ln, c = fields[key]
        return parse_vector_field(v, space, parity, line=ln, col=c)

    try:
        if kind == "schouten":
            st = SchoutenStructure(space, expr("S_hat"))
        elif kind == "qs":
            st = QSStructure(SchoutenStructure(space, expr("S_hat")),
                             HomologicalField(vf("Q", Parity.ODD)))
        elif kind == "odd-jacobi":
            st = OddJacobiStructure(space, expr("S"), HomologicalField(vf("Q", Parity.ODD)))
        else:
            qs = QSStructure(SchoutenStructure(space, expr("S_hat")),
                             HomologicalField(vf("Q", Parity.ODD)))
            st = ExactQSStructure(qs, vf("E", Parity.EVEN))
    except GradingError as exc:
        raise ParseError(str(exc), kline, 1) from None
    return StructureFile(space, kind, st)


def dump_structure(sf: StructureFile) -> str:
    m = sf.space.manifold
    lines = ["manifold: " + ", ".join(f"{n}:{p.name.lower()}" for n, p in m.coords)]
    if sf.space.line:
        lines.append("line: yes")
    lines.append(f"kind: {sf.kind}")
    st = sf.structure
    if sf.kind == "schouten":
        lines.append(f"S_hat: {print_expression(st.S_hat)}")
    elif sf.kind == "qs":
        lines.append(f"S_hat: {print_expression(st.S_hat)}")
        lines.append(f"Q: {print_vector_field(st.Q)}")
    elif sf.kind == "odd-jacobi":
        lines.append(f"S: {print_expression(st.S)}")
        lines.append(f"Q: {print_vector_field(st.Q)}")
    else:
        lines.append(f"S_hat: {print_expression(st.qs.S_hat)}")
        lines.append(f"Q: {print_vector_field(st.qs.Q)}")
        lines.append(f"E: {print_vector_field(st.E)}")
    return "\n".join(lines) + "\n"
