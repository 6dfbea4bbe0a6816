"""Textual expression syntax for polynomial algebra-valued functions.

Grammar (standard precedence, tightest first):

    atom   :=  INT [ '/' INT ]  |  x<digit>  |  e<digits>  |  '(' expr ')'
    power  :=  atom [ '^' INT ]          -- exponent rejected on blades
    factor :=  '-' factor  |  power
    term   :=  factor { '*' factor }
    expr   :=  term { ('+' | '-') term }

Blade names concatenate strictly increasing generator digits
(e12 = e_1*e_2); e0 is the unit.  Non-canonical blade products such as
e2*e1 normalize through the algebra's rewriting product.  The printer
emits a deterministic graded-lex form that parses back to an equal
PolyField.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple

from cliffta.algebra import Multivector, Signature, blade_from_gens, blade_name
from cliffta.polyfield import PolyField, grlex_key


class ParseError(ValueError):
    """Syntax or validity error, with the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*^()/]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_pos = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", bad_pos)
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _blade_mask(name: str, sig: Signature, pos: int) -> int:
    digits = name[1:]
    if digits == "0":
        return 0
    gens = []
    for ch in digits:
        g = int(ch)
        if g == 0:
            raise ParseError(f"generator 0 only valid as the unit e0 in {name!r}", pos)
        if g > sig.n:
            raise ParseError(f"blade {name!r} uses generator {g} but n={sig.n}", pos)
        if gens and g <= gens[-1]:
            raise ParseError(f"blade digits must strictly increase in {name!r}", pos)
        gens.append(g)
    return blade_from_gens(gens)


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.sig = sig
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self):
        return self.tokens[self.idx]

    def advance(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.peek()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.advance()

    def parse(self) -> PolyField:
        result = self.parse_expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {value!r}", pos)
        return result

    def parse_expr(self) -> PolyField:
        total = self.parse_term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                rhs = self.parse_term()
                total = total + rhs if value == "+" else total - rhs
            else:
                return total

    def parse_term(self) -> PolyField:
        total = self.parse_factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                total = total * self.parse_factor()
            else:
                return total

    def parse_factor(self) -> PolyField:
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return -self.parse_factor()
        return self.parse_power()

    def parse_power(self) -> PolyField:
        base, is_blade = self.parse_atom()
        kind, value, pos = self.peek()
        if kind == "op" and value == "^":
            if is_blade:
                raise ParseError("exponent not allowed on a blade; multiply explicitly", pos)
            self.advance()
            kind, value, pos = self.peek()
            if kind != "int":
                raise ParseError("expected an integer exponent", pos)
            self.advance()
            return base ** int(value)
        return base

    def parse_atom(self):
        kind, value, pos = self.advance()
        if kind == "int":
            numerator = int(value)
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.advance()
                k3, v3, p3 = self.peek()
                if k3 != "int":
                    raise ParseError("expected an integer denominator", p3)
                self.advance()
                if int(v3) == 0:
                    raise ParseError("zero denominator", p3)
                return PolyField.scalar(self.sig, Fraction(numerator, int(v3))), False
            return PolyField.scalar(self.sig, numerator), False
        if kind == "name":
            if re.fullmatch(r"x\d", value):
                axis = int(value[1])
                if axis > self.sig.n:
                    raise ParseError(f"variable {value!r} out of range for n={self.sig.n}", pos)
                return PolyField.variable(self.sig, axis), False
            if re.fullmatch(r"e\d+", value):
                return PolyField.blade(self.sig, _blade_mask(value, self.sig, pos)), True
            raise ParseError(f"unknown name {value!r}", pos)
        if kind == "op" and value == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner, False
        raise ParseError(f"unexpected token {value!r}" if value else "unexpected end of input", pos)


def parse_expr(text: str, sig: Signature) -> PolyField:
    """Parse an expression into a PolyField over the given signature."""
    if not text or not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(text, sig).parse()


def _format_term(coeff_abs: Fraction, mono, mask: int) -> str:
    factors = []
    has_body = any(mono) or mask != 0
    if coeff_abs != 1 or not has_body:
        factors.append(str(coeff_abs))
    for k, e in enumerate(mono):
        if e == 1:
            factors.append(f"x{k}")
        elif e > 1:
            factors.append(f"x{k}^{e}")
    if mask != 0:
        factors.append(blade_name(mask))
    return "*".join(factors)


def format_polyfield(u: PolyField) -> str:
    """Deterministic textual form; parse(format(u)) == u."""
    if u.is_zero:
        return "0"
    parts = []
    for mono, mv in u.items():
        for mask, coeff in mv.items():
            body = _format_term(abs(coeff), mono, mask)
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(parts)


def format_multivector(mv: Multivector) -> str:
    return format_polyfield(PolyField.constant(mv.sig, mv))
