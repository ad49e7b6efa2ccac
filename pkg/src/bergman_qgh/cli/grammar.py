"""Text grammar for polynomial symbols.

    expr    := [sign] term (sign term)*
    term    := factor ('*' factor)*
    factor  := NUMBER | '(' [sign] NUMBER ['/' NUMBER] ')' | 'i' | 'z'K ['^' INT] | 'zb'K ['^' INT]

Numbers are integers or decimals and are read exactly.  ``zbK`` is the
conjugate of coordinate ``K`` (1-based).  Errors carry the byte offset of the
offending token.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import SymbolParseError
from ..exact import GaussianRational
from ..multiindex import MultiIndex
from ..symbols import PolynomialSymbol

__all__ = ["parse_symbol"]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)
  | (?P<var>zb|z)(?P<idx>\d+)
  | (?P<imag>i)(?![A-Za-z0-9_])
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SymbolParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        if m.lastgroup != "ws":
            raw = m.group(0)
            if m.group("var"):
                out.append((m.group("var"), int(m.group("idx")), pos, raw))
            elif m.group("num") is not None:
                out.append(("num", Fraction(raw), pos, raw))
            elif m.group("imag"):
                out.append(("i", None, pos, raw))
            else:
                out.append((raw, None, pos, raw))
        pos = m.end()
    out.append(("end", None, len(text), ""))
    return out


class _Parser:
    def __init__(self, text: str, d: int | None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.d = d

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind!r}", tok)
        self.i += 1
        return tok

    def fail(self, msg, tok):
        shown = "end of input" if tok[0] == "end" else repr(tok[3])
        raise SymbolParseError(f"{msg}, found {shown}", _byte_offset(self.text, tok[2]))

    def parse(self):
        terms = []
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        terms.append(self.term(sign))
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            terms.append(self.term(sign))
        tok = self.peek()
        if tok[0] != "end":
            self.fail("expected '+', '-' or '*'", tok)
        return terms

    def term(self, sign):
        coeff_box = [GaussianRational(sign)]
        a: dict[int, int] = {}
        b: dict[int, int] = {}
        self.factor(coeff_box, a, b)
        while self.peek()[0] == "*":
            self.take()
            self.factor(coeff_box, a, b)
        return coeff_box[0], a, b

    def factor(self, coeff_box, a, b):
        tok = self.take()
        kind = tok[0]
        if kind == "num":
            coeff_box[0] = coeff_box[0] * GaussianRational(tok[1])
        elif kind == "(":
            sign = 1
            if self.peek()[0] in ("+", "-"):
                sign = -1 if self.take()[0] == "-" else 1
            num = self.take("num")[1]
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("num")
                if den_tok[1] == 0:
                    raise SymbolParseError("division by zero", _byte_offset(self.text, den_tok[2]))
                num = num / den_tok[1]
            self.take(")")
            coeff_box[0] = coeff_box[0] * GaussianRational(sign * num)
        elif kind == "i":
            coeff_box[0] = coeff_box[0] * GaussianRational(0, 1)
        elif kind in ("z", "zb"):
            k = tok[1]
            if k < 1 or (self.d is not None and k > self.d):
                limit = "" if self.d is None else f" (d = {self.d})"
                raise SymbolParseError(f"coordinate index {k} out of range{limit}", _byte_offset(self.text, tok[2]))
            power = 1
            if self.peek()[0] == "^":
                self.take()
                ptok = self.take("num")
                if not ptok[3].isdigit():
                    raise SymbolParseError("exponent must be a non-negative integer", _byte_offset(self.text, ptok[2]))
                power = int(ptok[1])
            target = a if kind == "z" else b
            target[k] = target.get(k, 0) + power
        else:
            self.fail("expected a number, 'i', zK or zbK", tok)


def parse_symbol(text: str, d: int | None = None) -> PolynomialSymbol:
    """Parse ``text`` into an exact :class:`PolynomialSymbol`.

    ``d`` defaults to the largest coordinate index that appears (at least 1).
    """
    if not isinstance(text, str):
        raise SymbolParseError("symbol must be a string", 0)
    if not text.strip():
        raise SymbolParseError("empty symbol", 0)
    terms = _Parser(text, d).parse()
    if d is None:
        d = max([1] + [k for _, a, b in terms for k in (*a, *b)])
    out = PolynomialSymbol.zero(d)
    for coeff, a, b in terms:
        ma = MultiIndex(a.get(k, 0) for k in range(1, d + 1))
        mb = MultiIndex(b.get(k, 0) for k in range(1, d + 1))
        out = out + PolynomialSymbol(d, {(ma, mb): coeff})
    return out
