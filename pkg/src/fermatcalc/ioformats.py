"""JSON/CSV codecs and the command-line literal grammar.

All exact values travel as strings ("22/7", never floats).  A cyclotomic
number is the pair {"m": conductor, "coords": [rational strings]}; a
polynomial carries a single conductor, with every coefficient promoted to
it, so round trips are bit exact.

The literal grammar accepted for cyclotomic values on the command line:
integers, rationals p/q, the symbols z (the primitive root of the ambient
conductor) and i, the operators + - * / ^ and parentheses; juxtaposition
multiplies, so "3+4i" and "z*(3+4i)/5" mean what they look like.
"""

from __future__ import annotations

import math
from fractions import Fraction

from fermatcalc.exactnum import CyclotomicNumber, root_of_unity, zeta
from fermatcalc.idealcalc import DegreeSlice, HilbertProfile
from fermatcalc.multipoly import Polynomial, lex_order

__all__ = [
    "frac_str",
    "parse_frac",
    "cyclotomic_to_json",
    "cyclotomic_from_json",
    "polynomial_to_json",
    "polynomial_from_json",
    "slice_to_json",
    "profile_to_json",
    "parse_cyclotomic_expr",
]


def frac_str(q: Fraction | None) -> str | None:
    if q is None:
        return None
    return str(Fraction(q))


def parse_frac(text: str) -> Fraction:
    return Fraction(text)


def cyclotomic_to_json(z: CyclotomicNumber) -> dict:
    return {"m": z.m, "coords": [str(c) for c in z.coords]}


def cyclotomic_from_json(obj: dict) -> CyclotomicNumber:
    return CyclotomicNumber.from_coords(obj["m"], obj["coords"])


def polynomial_to_json(p: Polynomial) -> dict:
    conductor = 1
    for c in p.terms.values():
        conductor = math.lcm(conductor, c.m)
    terms = []
    for exps, coeff in p.sorted_terms(lex_order(p.nvars)):
        coeff = coeff.promote(conductor)
        terms.append({"exp": list(exps), "coeff": [str(c) for c in coeff.coords]})
    return {"vars": p.nvars, "m": conductor, "terms": terms}


def polynomial_from_json(obj: dict) -> Polynomial:
    nvars = obj["vars"]
    conductor = obj["m"]
    terms = [
        (tuple(t["exp"]), CyclotomicNumber.from_coords(conductor, t["coeff"]))
        for t in obj["terms"]
    ]
    return Polynomial(nvars, terms)


def slice_to_json(s: DegreeSlice) -> dict:
    return {
        "k": s.degree,
        "dim": s.dim,
        "kind": s.kind,
        "basis": [polynomial_to_json(b) for b in s.basis],
    }


def profile_to_json(p: HilbertProfile) -> dict:
    return {"sigma": p.sigma, "dims": list(p.dims)}


# ---------------------------------------------------------------------------
# Cyclotomic literal parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, conductor: int):
        self.text = text
        self.pos = 0
        self.conductor = conductor

    def error(self, message: str):
        raise ValueError(f"parse error at position {self.pos}: {message}")

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def expr(self) -> CyclotomicNumber:
        value = self.term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                value = value + self.term()
            elif ch == "-":
                self.pos += 1
                value = value - self.term()
            else:
                return value

    def term(self) -> CyclotomicNumber:
        value = self.unary()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                value = value * self.unary()
            elif ch == "/":
                self.pos += 1
                value = value / self.unary()
            elif ch is not None and (ch.isdigit() or ch in "iz("):
                value = value * self.unary()  # juxtaposition
            else:
                return value

    def unary(self) -> CyclotomicNumber:
        if self.peek() == "-":
            self.pos += 1
            return -self.unary()
        return self.power()

    def power(self) -> CyclotomicNumber:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            negative = False
            if self.peek() == "-":
                negative = True
                self.pos += 1
            exponent = self.integer()
            return base ** (-exponent if negative else exponent)
        return base

    def integer(self) -> int:
        ch = self.peek()
        if ch is None or not ch.isdigit():
            self.error("expected an integer")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])

    def atom(self) -> CyclotomicNumber:
        ch = self.peek()
        if ch is None:
            self.error("unexpected end of input")
        if ch.isdigit():
            return CyclotomicNumber.from_rational(self.integer())
        if ch == "i":
            self.pos += 1
            return root_of_unity(4, 1)
        if ch == "z":
            self.pos += 1
            return zeta(self.conductor)
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        self.error(f"unexpected character {ch!r}")


def parse_cyclotomic_expr(text: str, conductor: int) -> CyclotomicNumber:
    """Parse an exact cyclotomic literal; z denotes zeta_conductor."""
    parser = _Parser(text, conductor)
    value = parser.expr()
    if parser.peek() is not None:
        parser.error("trailing input")
    return value
