"""Words, bands, canonical forms, text serialization and module presentations.

A word is a sequence of pairs (p_i, q_i) of syllables read as
p_1^-1 q_1 p_2^-1 q_2 ...; p_i and q_i share their source (the top z_i),
and q_i, p_{i+1} share their target (a valley).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import WordError, WordSyntaxError
from .quiver import Path, trivial

FINITE = "finite"
RIGHT = "right"
LEFT = "left"
BI = "bi"


@dataclass(frozen=True)
class Word:
    kind: str
    pairs: tuple = ()    # all pairs (finite), prefix (right), suffix (left)
    period: tuple = ()

    def __post_init__(self):
        if self.kind not in (FINITE, RIGHT, LEFT, BI):
            raise ValueError(f"unknown word kind {self.kind}")
        if self.kind == FINITE and not self.pairs:
            raise ValueError("finite word needs at least one pair")
        if self.kind != FINITE and not self.period:
            raise ValueError("periodic word needs a nonempty period")
        if self.kind == BI and self.pairs:
            raise ValueError("bi-periodic word has no finite part")

    @property
    def is_finite(self):
        return self.kind == FINITE

    @property
    def is_trivial(self):
        return (self.kind == FINITE and len(self.pairs) == 1
                and self.pairs[0][0].is_trivial and self.pairs[0][1].is_trivial)

    def __str__(self):
        return serialize_word(self)


def finite(pairs):
    return Word(FINITE, tuple(pairs))


def trivial_word(vertex):
    e = trivial(vertex)
    return Word(FINITE, ((e, e),))


@dataclass(frozen=True)
class BandDatum:
    word: tuple                 # the pairs of the primitive cyclic word v
    m: int = 1
    phi: tuple = (Fraction(1),)  # c_1..c_m

    def __post_init__(self):
        if self.m < 1 or len(self.phi) != self.m:
            raise ValueError("phi must list exactly m coefficients")
        object.__setattr__(self, "phi", tuple(Fraction(c) for c in self.phi))

    def __str__(self):
        return serialize_pairs(self.word)


# -- serialization ------------------------------------------------------------

def _syl(p: Path, explicit=False):
    if p.is_trivial:
        return "." + (p.source if explicit else "")
    return "*".join(p.arrows)


def serialize_pairs(pairs):
    out = []
    for p, q in pairs:
        both = p.is_trivial and q.is_trivial
        out.append(f"{_syl(p, both)}^-1 {_syl(q, both)}")
    return " | ".join(out)


def serialize_word(w: Word) -> str:
    if w.is_trivial:
        return "." + w.pairs[0][0].source
    per = "{" + serialize_pairs(w.period) + "}"
    if w.kind == FINITE:
        return serialize_pairs(w.pairs)
    if w.kind == RIGHT:
        return (serialize_pairs(w.pairs) + " | " if w.pairs else "") + per + "~"
    if w.kind == LEFT:
        return "~" + per + (" | " + serialize_pairs(w.pairs) if w.pairs else "")
    return "~" + per + "~"


def format_phi(phi):
    return ",".join(str(c) for c in phi)


def parse_phi(text):
    try:
        return tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as e:
        raise WordSyntaxError(f"bad coefficient list {text!r}") from e


_SYL = re.compile(r"^(\.[A-Za-z0-9_']*|[A-Za-z_][A-Za-z0-9_']*(\*[A-Za-z_][A-Za-z0-9_']*)*)$")


def _parse_pair_list(text, quiver):
    text = text.strip()
    if not text:
        return []
    raw = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        m = re.fullmatch(r"(\S+)\s*\^-1\s+(\S+)", chunk)
        if not m:
            if re.fullmatch(r"\.[A-Za-z0-9_']+", chunk):
                raw.append((chunk, chunk))
                continue
            raise WordSyntaxError(f"cannot read pair {chunk!r} (expected 'P^-1 Q')")
        a, b = m.group(1), m.group(2)
        for s in (a, b):
            if not _SYL.match(s):
                raise WordSyntaxError(f"bad syllable {s!r}")
        raw.append((a, b))
    return raw


def _resolve(raw_pairs, quiver):
    """Turn textual syllables into Paths; infer vertices of bare '.' syllables."""
    def build(s):
        if s.startswith("."):
            return s[1:] or None
        names = s.split("*")
        try:
            return quiver.path(names)
        except Exception as e:
            raise WordSyntaxError(str(e)) from e

    items = [[build(a), build(b)] for a, b in raw_pairs]
    for i, (p, q) in enumerate(items):
        for j, other in ((0, q), (1, p)):
            cur = items[i][j]
            if isinstance(cur, Path):
                continue
            if isinstance(other, Path):
                v = other.source
            elif isinstance(other, str):
                v = other
            elif cur is not None:
                v = cur
            else:
                # a pair of two bare dots: borrow a neighbour's endpoint
                v = None
                if j == 0 and i > 0 and isinstance(items[i - 1][1], Path):
                    v = items[i - 1][1].target
                if j == 1 and i + 1 < len(items) and isinstance(items[i + 1][0], Path):
                    v = items[i + 1][0].target
                if v is None:
                    raise WordSyntaxError("cannot infer vertex of trivial syllable; write '.v'")
            if cur is not None and cur != v:
                raise WordSyntaxError(f"trivial syllable at {cur} but partner starts at {v}")
            if v not in quiver.vertices:
                raise WordSyntaxError(f"unknown vertex {v!r}")
            items[i][j] = trivial(v)
    return tuple((p, q) for p, q in items)


def parse_word(text: str, quiver) -> Word:
    s = text.strip()
    m = re.fullmatch(r"~\{(.*)\}~", s, re.S)
    if m:
        return Word(BI, (), _resolve(_parse_pair_list(m.group(1), quiver), quiver))
    m = re.fullmatch(r"~\{(.*?)\}\s*(?:\|(.*))?", s, re.S)
    if m:
        per = _resolve(_parse_pair_list(m.group(1), quiver), quiver)
        suf = _resolve(_parse_pair_list(m.group(2) or "", quiver), quiver)
        return Word(LEFT, suf, per)
    m = re.fullmatch(r"(?:(.*?)\|\s*)?\{(.*)\}~", s, re.S)
    if m:
        pre = _resolve(_parse_pair_list(m.group(1) or "", quiver), quiver)
        per = _resolve(_parse_pair_list(m.group(2), quiver), quiver)
        return Word(RIGHT, pre, per)
    if "{" in s or "}" in s or "~" in s:
        raise WordSyntaxError(f"malformed periodic word {text!r}")
    pairs = _resolve(_parse_pair_list(s, quiver), quiver)
    if not pairs:
        raise WordSyntaxError("empty word")
    return Word(FINITE, pairs)


def parse_band(text: str, quiver, m=1, phi=None) -> BandDatum:
    s = text.strip()
    if s.startswith("~{") and s.endswith("}~"):
        s = s[2:-2]
    pairs = _resolve(_parse_pair_list(s, quiver), quiver)
    if not pairs:
        raise WordSyntaxError("empty band word")
    if phi is None:
        if m != 1:
            raise WordSyntaxError("phi is required when the multiplicity exceeds 1")
        phi = (Fraction(1),)
    return BandDatum(pairs, m, tuple(phi))


# -- validity -----------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    rule: str
    position: int
    detail: str = ""


def _pair_checks(a, p, q, i, out):
    for s in (p, q):
        if not s.is_trivial and not a.is_syllable(s):
            out.append(Violation("syllable", i, f"{s} is not a syllable"))
    if p.source != q.source:
        out.append(Violation("common source", i, f"{p} and {q} start at different vertices"))
    elif not p.is_trivial and not q.is_trivial and p.first == q.first:
        out.append(Violation("distinct first arrows", i, f"both start with {p.first}"))


def _junction_checks(q, p, i, out):
    if q.target != p.target:
        out.append(Violation("common target", i, f"{q} and {p} end at different vertices"))
    elif not q.is_trivial and not p.is_trivial and q.last == p.last:
        out.append(Violation("distinct last arrows", i, f"both end with {q.last}"))


def _seq_violations(a, pairs, cyclic, left_open, right_open, offset=0):
    out = []
    n = len(pairs)
    for i, (p, q) in enumerate(pairs):
        _pair_checks(a, p, q, i + offset, out)
        if p.is_trivial and not (left_open and not cyclic and i == 0):
            out.append(Violation("trivial syllables only at the ends", i + offset))
        elif q.is_trivial and not (right_open and not cyclic and i == n - 1):
            out.append(Violation("trivial syllables only at the ends", i + offset))
    for i in range(n - 1 + (1 if cyclic else 0)):
        _junction_checks(pairs[i][1], pairs[(i + 1) % n][0], i + offset, out)
    return out


def validate_word(a, w: Word):
    """Return a tuple of Violations; empty means the word is valid."""
    if w.kind == FINITE:
        out = _seq_violations(a, w.pairs, False, True, True)
    elif w.kind == BI:
        out = _seq_violations(a, w.period, True, False, False)
    elif w.kind == RIGHT:
        seq = w.pairs + w.period + w.period
        out = _seq_violations(a, seq, False, True, False)
    else:
        seq = w.period + w.period + w.pairs
        out = _seq_violations(a, seq, False, False, True)
    seen, uniq = set(), []
    for v in out:
        if v not in seen:
            seen.add(v)
            uniq.append(v)
    return tuple(uniq)


def check_word(a, w: Word):
    bad = validate_word(a, w)
    if bad:
        v = bad[0]
        raise WordError(v.rule, v.position, v.detail)
    return w


def _is_power(pairs):
    n = len(pairs)
    for d in range(1, n):
        if n % d == 0 and pairs == pairs[:d] * (n // d):
            return True
    return False


def is_primitive(a, v) -> bool:
    pairs = v.word if isinstance(v, BandDatum) else (v.period if isinstance(v, Word) else tuple(v))
    if not pairs or _is_power(tuple(pairs)):
        return False
    return not _seq_violations(a, tuple(pairs), True, False, False)


def companion_irreducible(phi, modulus=None) -> bool:
    """Is x^m - c_m x^(m-1) - ... - c_1 irreducible (over Q, or F_p)?"""
    import sympy
    x = sympy.Symbol("x")
    m = len(phi)
    if phi[0] == 0:
        return False
    if m == 1:
        return True
    expr = x ** m - sum(sympy.Rational(c.numerator, c.denominator) * x ** i
                        for i, c in enumerate(phi))
    if modulus is None:
        return sympy.Poly(expr, x, domain="QQ").is_irreducible
    expr = sympy.Poly(expr, x, domain="QQ")
    coeffs = []
    for c in expr.all_coeffs():
        c = sympy.Rational(c)
        coeffs.append(int(c.p) * pow(int(c.q), -1, modulus) % modulus)
    return sympy.Poly(coeffs, x, modulus=modulus).is_irreducible


def validate_band(a, b: BandDatum, modulus=None):
    out = []
    if not is_primitive(a, b):
        out.append(Violation("primitive cyclic word", 0, "v^2 must be a word and v not a power"))
    if not companion_irreducible(b.phi, modulus):
        out.append(Violation("irreducible automorphism", 0,
                             f"companion polynomial for ({format_phi(b.phi)}) is reducible"))
    return tuple(out)


def check_band(a, b: BandDatum, modulus=None):
    bad = validate_band(a, b, modulus)
    if bad:
        raise WordError(bad[0].rule, bad[0].position, bad[0].detail)
    return b


# -- inversion and canonical forms --------------------------------------------

def _inv_pairs(pairs):
    return tuple((q, p) for p, q in reversed(pairs))


def inverse(w: Word) -> Word:
    if w.kind == FINITE:
        return Word(FINITE, _inv_pairs(w.pairs))
    if w.kind == RIGHT:
        return Word(LEFT, _inv_pairs(w.pairs), _inv_pairs(w.period))
    if w.kind == LEFT:
        return Word(RIGHT, _inv_pairs(w.pairs), _inv_pairs(w.period))
    return Word(BI, (), _inv_pairs(w.period))


def _primitive_root(pairs):
    n = len(pairs)
    for d in range(1, n + 1):
        if n % d == 0 and pairs == pairs[:d] * (n // d):
            return pairs[:d]
    return pairs


def _rotations(pairs):
    return [pairs[i:] + pairs[:i] for i in range(len(pairs))]


def canonical_cycle(pairs):
    """(least rotation of pairs or of their inverse, rotation shift, inverted?)."""
    pairs = _primitive_root(tuple(pairs))
    best = None
    for inv in (False, True):
        base = _inv_pairs(pairs) if inv else pairs
        for i, r in enumerate(_rotations(base)):
            key = serialize_pairs(r)
            if best is None or key < best[0]:
                best = (key, r, i, inv)
    return best[1], best[2], best[3]


def _normalize_right(prefix, period):
    period = _primitive_root(tuple(period))
    prefix = tuple(prefix)
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = period[-1:] + period[:-1]
    return Word(RIGHT, prefix, period)


def canonical_string(w: Word) -> Word:
    if w.kind == FINITE:
        inv = inverse(w)
        return min(w, inv, key=serialize_word)
    if w.kind == RIGHT:
        return _normalize_right(w.pairs, w.period)
    if w.kind == LEFT:
        r = inverse(w)
        return _normalize_right(r.pairs, r.period)
    return Word(BI, (), canonical_cycle(w.period)[0])


def inverse_phi(phi):
    """Companion coefficients of the inverse automorphism."""
    m = len(phi)
    c1 = phi[0]
    out = [1 / c1] + [-phi[m + 1 - j] / c1 for j in range(2, m + 1)]
    return tuple(Fraction(x) for x in out)


def canonical_band(b: BandDatum) -> BandDatum:
    """Least rotation of v or v^-1; phi is replaced by its inverse when v is inverted."""
    pairs, _, inv = canonical_cycle(b.word)
    if len(pairs) != len(b.word):
        raise WordError("primitive cyclic word", 0, "band word is a proper power")
    phi = inverse_phi(b.phi) if inv else b.phi
    return BandDatum(pairs, b.m, phi)


def truncate(w: Word, periods: int) -> Word:
    """A finite word made of the finite part and `periods` copies of the period."""
    if w.kind == FINITE:
        return w
    if w.kind == RIGHT:
        return Word(FINITE, w.pairs + w.period * periods)
    if w.kind == LEFT:
        return Word(FINITE, w.period * periods + w.pairs)
    return Word(FINITE, w.period * periods)


def support(quiver, pairs):
    out = set()
    for p, q in pairs:
        out.update(quiver.vertices_on(p))
        out.update(quiver.vertices_on(q))
    return out


def word_support(quiver, w):
    if isinstance(w, BandDatum):
        return support(quiver, w.word)
    return support(quiver, w.pairs + w.period)


def total_length(pairs):
    return sum(len(p) + len(q) for p, q in pairs)


# -- presentations ------------------------------------------------------------

@dataclass(frozen=True)
class ModulePresentation:
    """(direct sum of Lambda e_{tops[i]}) modulo the generators.

    Each generator is a tuple of terms (scalar, path, top index), meaning
    sum scalar * path * z_index.  For periodic words the tops listed cover
    the finite part and one period; `periodic` = (first periodic top, period
    length) and a top index equal to len(tops) refers to the next period.
    """
    tops: tuple
    generators: tuple
    left_correction: bool = False
    right_correction: bool = False
    periodic: Optional[tuple] = None

    @property
    def is_finite(self):
        return self.periodic is None


def _left_corr(a, p, q, x, idx):
    if not p.is_trivial:
        nxt = a.arrow_continuation(p.last)
        if nxt is None:
            return []
        ext = a.quiver.path(p.arrows + (nxt,))
        if not a.is_nonzero(ext):
            return []
        return [((Fraction(1), ext, idx),)]
    outs = [b for b in a.quiver.out_arrows[x] if q.is_trivial or b != q.first]
    return [((Fraction(1), a.quiver.path((b,)), idx),) for b in outs]


def _string_generators(a, pairs, left_open, right_open):
    tops = tuple(p.source for p, _ in pairs)
    gens = []
    n = len(pairs)
    for i in range(n - 1):
        q, p = pairs[i][1], pairs[i + 1][0]
        gens.append(((Fraction(1), q, i), (Fraction(-1), p, i + 1)))
    lc = rc = False
    if n == 1 and pairs[0][0].is_trivial and pairs[0][1].is_trivial:
        x = tops[0]
        outs = a.quiver.out_arrows[x]
        gens += [((Fraction(1), a.quiver.path((b,)), 0),) for b in outs]
        return tops, gens, bool(outs), bool(outs)
    if left_open:
        extra = _left_corr(a, pairs[0][0], pairs[0][1], tops[0], 0)
        gens += extra
        lc = bool(extra)
    if right_open:
        extra = _left_corr(a, pairs[-1][1], pairs[-1][0], tops[-1], n - 1)
        gens += extra
        rc = bool(extra)
    return tops, gens, lc, rc


def string_module(a, w: Word) -> ModulePresentation:
    check_word(a, w)
    if w.kind == LEFT:
        w = inverse(w)
    if w.kind == FINITE:
        tops, gens, lc, rc = _string_generators(a, w.pairs, True, True)
        return ModulePresentation(tops, tuple(gens), lc, rc)
    if w.kind == RIGHT:
        seq = w.pairs + w.period
        tops, gens, lc, _ = _string_generators(a, seq, True, False)
        gens.append(((Fraction(1), seq[-1][1], len(seq) - 1),
                     (Fraction(-1), w.period[0][0], len(seq))))
        return ModulePresentation(tops, tuple(gens), lc, False, (len(w.pairs), len(w.period)))
    seq = w.period
    tops, gens, _, _ = _string_generators(a, seq, False, False)
    gens.append(((Fraction(1), seq[-1][1], len(seq) - 1), (Fraction(-1), seq[0][0], len(seq))))
    return ModulePresentation(tops, tuple(gens), False, False, (0, len(seq)))


def band_module(a, b: BandDatum) -> ModulePresentation:
    """St(v^m) plus the generator q_t x_{m,t} - sum c_i p_0 x_{i,0}."""
    bad = validate_band(a, b)
    if bad:
        raise WordError(bad[0].rule, bad[0].position, bad[0].detail)
    seq = tuple(b.word) * b.m
    tops, gens, lc, rc = _string_generators(a, seq, True, True)
    t = len(b.word)
    last = len(seq) - 1
    extra = [(Fraction(1), b.word[-1][1], last)]
    for i, c in enumerate(b.phi):
        extra.append((-c, b.word[0][0], i * t))
    gens.append(tuple(extra))
    return ModulePresentation(tops, tuple(gens), lc, rc)


def presentation_dimension(a, w: Word) -> int:
    """dim St(w) for a finite word, read off the graph."""
    if w.is_trivial:
        return 1
    return total_length(w.pairs) + 1
