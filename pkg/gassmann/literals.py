"""Matrix and subgroup literals for the command line.

    expr  := term ('+' term)*
    term  := atom ['p']
    atom  := 'I' | '[[' int ',' int '],[' int ',' int ']]'
           | 'diag(' int ',' int ')' | 'antidiag(' int ',' int ')'

A literal made only of digits is an element encoding. Subgroup literals
separate generators with ';'. Whitespace is dropped before parsing and
error offsets count characters of the compacted text.
"""
from __future__ import annotations

import re

from gassmann.errors import ParseError
from gassmann.mat2 import Mat2
from gassmann.residue import Modulus
from gassmann.subgrp import Subgroup, closure

_INT = re.compile(r"-?\d+")
_WORDS = ("antidiag(", "diag(", "[[", "I")


class _Parser:
    def __init__(self, text: str, modulus: Modulus, base: int = 0, source: str | None = None):
        self.text = text
        self.modulus = modulus
        self.pos = 0
        self.base = base
        self.source = source if source is not None else text

    def fail(self):
        token = self.text[self.pos] if self.pos < len(self.text) else "<end>"
        raise ParseError(self.source, self.base + self.pos, token)

    def expect(self, literal: str):
        if not self.text.startswith(literal, self.pos):
            self.fail()
        self.pos += len(literal)

    def integer(self) -> int:
        match = _INT.match(self.text, self.pos)
        if not match:
            self.fail()
        self.pos = match.end()
        return int(match.group())

    def atom(self) -> Mat2:
        modulus = self.modulus
        if self.text.startswith("I", self.pos):
            self.pos += 1
            return Mat2.identity(modulus)
        if self.text.startswith("[[", self.pos):
            self.pos += 2
            a = self.integer()
            self.expect(",")
            b = self.integer()
            self.expect("],[")
            c = self.integer()
            self.expect(",")
            d = self.integer()
            self.expect("]]")
            return Mat2(a, b, c, d, modulus)
        for word, build in (("diag(", Mat2.diag), ("antidiag(", _antidiag)):
            if self.text.startswith(word, self.pos):
                self.pos += len(word)
                x = self.integer()
                self.expect(",")
                y = self.integer()
                self.expect(")")
                return build(x, y, modulus)
        self.fail()

    def term(self) -> Mat2:
        value = self.atom()
        if self.text.startswith("p", self.pos):
            self.pos += 1
            value = value.scale(self.modulus.p)
        return value

    def expr(self) -> Mat2:
        value = self.term()
        while self.text.startswith("+", self.pos):
            self.pos += 1
            value = value + self.term()
        if self.pos != len(self.text):
            self.fail()
        return value


def _antidiag(x: int, y: int, modulus: Modulus) -> Mat2:
    return Mat2(0, x, y, 0, modulus)


def _compact(text: str) -> str:
    return "".join(text.split())


def _parse(text: str, modulus: Modulus, base: int, source: str) -> Mat2:
    parser = _Parser(text, modulus, base, source)
    if text and text[0].isdigit() and not text.startswith(_WORDS):
        match = _INT.match(text)
        if match.end() == len(text):
            return Mat2.decode(int(text), modulus)
        parser.pos = match.end()
        parser.fail()
    return parser.expr()


def parse_matrix(text: str, modulus: Modulus) -> Mat2:
    """A single matrix literal, e.g. ``I+diag(1,2)p`` or ``[[1,1],[0,1]]``."""
    compact = _compact(text)
    return _parse(compact, modulus, 0, compact)


def parse_generators(text: str, modulus: Modulus) -> list[Mat2]:
    compact = _compact(text)
    if not compact:
        return []
    gens, offset = [], 0
    for piece in compact.split(";"):
        if not piece:
            raise ParseError(compact, offset, ";")
        gens.append(_parse(piece, modulus, offset, compact))
        offset += len(piece) + 1
    return gens


def parse_subgroup(text: str, modulus: Modulus) -> Subgroup:
    """The subgroup generated by a ';'-separated list; the empty literal is the trivial group."""
    return closure(parse_generators(text, modulus), modulus)
