"""Text format for quivers with relations.

    algebra NAME {
      vertices: v w ;
      arrows: a : v -> w ; b : w -> w ;
      relations:
        zero: b b ;
        rel: p1 p2 - 3/2 * q1 q2 ;
    }

Path literals list arrows in traversal order.  `#` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import CompositionError, DSLSyntaxError, SbsyzError
from .quiver import Arrow, Path, Quiver


@dataclass(frozen=True)
class ZeroPath:
    path: Path


@dataclass(frozen=True)
class Binomial:
    """left - scalar * right lies in the ideal."""
    left: Path
    scalar: Fraction
    right: Path


@dataclass(frozen=True)
class Presentation:
    name: str
    quiver: Quiver
    relations: tuple

    def structurally_equal(self, other):
        return (self.quiver == other.quiver
                and self.relations == other.relations)


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<arrow>->) | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[{};:\-*])
""", re.VERBOSE)


def _tokenize(text):
    pos, line, col = 0, 1, 1
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind, val = m.lastgroup, m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                toks.append((kind, val, line, col))
            col += len(val)
        pos = m.end()
    toks.append(("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise DSLSyntaxError(msg, tok[2], tok[3])

    def expect(self, kind, value=None):
        t = self.peek()
        if t[0] != kind or (value is not None and t[1] != value):
            want = value if value is not None else kind
            self.fail(f"expected {want!r}, found {t[1] or 'end of input'!r}")
        return self.next()

    def keyword(self, word):
        self.expect("name", word)
        self.expect("punct", ":")

    def parse(self):
        self.expect("name", "algebra")
        name = self.expect("name")[1]
        self.expect("punct", "{")
        self.keyword("vertices")
        vertices = []
        while self.peek()[0] == "name":
            vertices.append(self.next())
        if not vertices:
            self.fail("at least one vertex required")
        self.expect("punct", ";")
        seen = set()
        for t in vertices:
            if t[1] in seen:
                self.fail(f"duplicate vertex {t[1]!r}", t)
            seen.add(t[1])
        self.keyword("arrows")
        arrows = []
        while (self.peek()[0] == "name" and self.peek(1)[1] == ":"
               and self.peek(2)[0] == "name" and self.peek(3)[0] == "arrow"):
            nt = self.next()
            self.next()
            st = self.next()
            self.next()
            tt = self.expect("name")
            self.expect("punct", ";")
            for t in (st, tt):
                if t[1] not in seen:
                    self.fail(f"unknown vertex {t[1]!r}", t)
            if nt[1] in seen or any(a.name == nt[1] for a in arrows):
                self.fail(f"duplicate name {nt[1]!r}", nt)
            arrows.append(Arrow(nt[1], st[1], tt[1]))
        if not arrows:
            self.fail("at least one arrow required")
        quiver = Quiver(tuple(t[1] for t in vertices), tuple(arrows))
        self.keyword("relations")
        rels = []
        while self.peek()[0] == "name" and self.peek()[1] in ("zero", "rel"):
            kind = self.next()[1]
            self.expect("punct", ":")
            left = self.pathlit(quiver)
            if kind == "zero":
                rels.append(ZeroPath(left))
            else:
                self.expect("punct", "-")
                sign = 1
                if self.peek()[1] == "-":
                    self.next()
                    sign = -1
                num = self.expect("num")
                scalar = sign * Fraction(num[1])
                if scalar == 0:
                    self.fail("binomial scalar must be nonzero", num)
                self.expect("punct", "*")
                right = self.pathlit(quiver)
                rels.append(Binomial(left, scalar, right))
            self.expect("punct", ";")
        self.expect("punct", "}")
        self.expect("eof")
        return Presentation(name, quiver, tuple(rels))

    def pathlit(self, quiver):
        toks = []
        while self.peek()[0] == "name":
            toks.append(self.next())
        if not toks:
            self.fail("expected a path")
        for t in toks:
            if t[1] not in quiver.arrow:
                self.fail(f"unknown arrow {t[1]!r}", t)
        try:
            return quiver.path([t[1] for t in toks])
        except CompositionError as e:
            self.fail(str(e), toks[0])


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).parse()


def _scalar(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(p: Presentation) -> str:
    q = p.quiver
    lines = [f"algebra {p.name} {{", "  vertices: " + " ".join(q.vertices) + " ;", "  arrows:"]
    for a in q.arrows:
        lines.append(f"    {a.name} : {a.source} -> {a.target} ;")
    lines.append("  relations:")
    for r in p.relations:
        if isinstance(r, ZeroPath):
            lines.append("    zero: " + " ".join(r.path.arrows) + " ;")
        else:
            c = _scalar(r.scalar)
            if c.startswith("-"):
                c = "- " + c[1:]
            lines.append(f"    rel: {' '.join(r.left.arrows)} - {c} * {' '.join(r.right.arrows)} ;")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


__all__ = ["ZeroPath", "Binomial", "Presentation", "parse_presentation", "render",
           "load_presentation", "SbsyzError"]
