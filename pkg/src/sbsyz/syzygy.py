"""Combinatorial first syzygies of string and band modules, and pdim verdicts.

The kernel of the projective cover of St(w) is the submodule C of
(+) Lambda z_i generated by the gluing elements and end corrections.  Each
generator spans a "piece": a V-shaped string (rho_k, lambda_{k+1}) hanging
below a valley, where rho_k and lambda_{k+1} are the parts of the branches of
the neighbouring tops that lie strictly below q_k and p_{k+1}.  Two adjacent
pieces share the socle of their common top exactly when that top is of type B,
so the components of the kernel are the maximal chains of pieces joined at
type B tops.
"""
from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import TYPE_A, TYPE_B
from .errors import EngineError
from .quiver import Path, trivial
from .words import (BI, FINITE, LEFT, RIGHT, BandDatum, Word, canonical_band,
                    canonical_string, check_word, inverse,
                    serialize_word, validate_band)

INF = math.inf
DEFAULT_DEPTH_CAP = 64


def default_depth_cap():
    env = os.environ.get("SBSYZ_DEPTH_CAP")
    if env:
        try:
            v = int(env)
            if v >= 1:
                return v
        except ValueError:
            pass
    return DEFAULT_DEPTH_CAP


@dataclass(frozen=True)
class SyzygyResult:
    strings: tuple = ()       # ((Word, multiplicity), ...)
    projectives: tuple = ()   # ((vertex, multiplicity), ...)
    band: Optional[BandDatum] = None

    @property
    def is_zero(self):
        return not self.strings and not self.projectives and self.band is None

    def summands(self):
        """(kind, key, multiplicity) triples in a fixed order."""
        out = [("string", serialize_word(w), k) for w, k in self.strings]
        if self.band is not None:
            out.append(("band", str(self.band), self.band.m))
        out += [("projective", v, k) for v, k in self.projectives]
        return out


@dataclass(frozen=True)
class _Piece:
    vertex: str
    left: Path
    right: Path


def _drop(quiver, path, k):
    """The path with its first k arrows removed."""
    if k == 0:
        return path
    if k == len(path):
        return trivial(path.target)
    return quiver.path(path.arrows[k:])


def _tails(a, x, p, q):
    """(lambda, rho): the branch parts below p and below q at a top x."""
    if p.is_trivial and q.is_trivial:
        sh = a.shapes[x]
        return sh.branch1, sh.branch2
    lam = a.continuation(p) if not p.is_trivial else a.other_branch(x, q.first)
    rho = a.continuation(q) if not q.is_trivial else a.other_branch(x, p.first)
    return lam, rho


def _left_end(a, lam):
    if lam.is_trivial:
        return None
    return _Piece(a.quiver.arrow[lam.arrows[0]].target,
                  trivial(a.quiver.arrow[lam.arrows[0]].target), _drop(a.quiver, lam, 1))


def _right_end(a, rho):
    if rho.is_trivial:
        return None
    return _Piece(a.quiver.arrow[rho.arrows[0]].target,
                  _drop(a.quiver, rho, 1), trivial(a.quiver.arrow[rho.arrows[0]].target))


def _valley(q, rho, lam):
    return _Piece(q.target, rho, lam)


def _runs(items):
    """items: list of (piece, joined_to_next); returns maximal joined runs."""
    runs, cur = [], []
    for piece, joined in items:
        cur.append(piece)
        if not joined:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def _run_word(run):
    return Word(FINITE, tuple((pc.left, pc.right) for pc in run))


class _Collector:
    def __init__(self, a):
        self.a = a
        self.strings = Counter()
        self.words = {}
        self.proj = Counter()

    def add_run(self, run, mult):
        a = self.a
        if len(run) == 1 and a.is_projective_pair(run[0].vertex, run[0].left, run[0].right):
            self.proj[run[0].vertex] += mult
            return
        self.add_word(_run_word(run), mult)

    def add_word(self, w, mult):
        w = canonical_string(w)
        key = serialize_word(w)
        self.words[key] = w
        self.strings[key] += mult

    def result(self, band=None):
        strings = tuple((self.words[k], self.strings[k]) for k in sorted(self.strings))
        proj = tuple((v, self.proj[v]) for v in sorted(self.proj))
        return SyzygyResult(strings, proj, band)


def _type(a, x):
    return a.shapes[x].kind


def is_projective_word(a, w: Word):
    return (w.kind == FINITE and len(w.pairs) == 1
            and a.is_projective_pair(w.pairs[0][0].source, *w.pairs[0]))


def _finite_pieces(a, pairs):
    """Pieces of a finite word with their junction flags."""
    s = len(pairs)
    tails = [_tails(a, p.source, p, q) for p, q in pairs]
    tops = [p.source for p, _ in pairs]
    left = _left_end(a, tails[0][0])
    right = _right_end(a, tails[-1][1])
    first_b = _type(a, tops[0]) == TYPE_B
    last_b = _type(a, tops[-1]) == TYPE_B
    if s == 1 and first_b and left and right and left.right.is_trivial and right.left.is_trivial:
        right = None
    elif s == 1 and not first_b:
        pass
    else:
        if left is not None and first_b and left.right.is_trivial:
            left = None
        if right is not None and last_b and right.left.is_trivial:
            right = None
    items = []
    valleys = [_valley(pairs[k][1], tails[k][1], tails[k + 1][0]) for k in range(s - 1)]
    seq = []
    if left is not None:
        seq.append((left, 0))  # junction after it sits at top index 0
    for k, v in enumerate(valleys):
        seq.append((v, k + 1))
    if right is not None:
        seq.append((right, None))
    for i, (piece, top_after) in enumerate(seq):
        if i == len(seq) - 1:
            joined = False
        else:
            nxt_top = top_after
            if nxt_top is None:
                joined = False
            else:
                joined = _type(a, tops[nxt_top]) == TYPE_B
        items.append((piece, joined))
    return items


def syzygy_string(a, w: Word) -> SyzygyResult:
    check_word(a, w)
    if w.kind != FINITE:
        return syzygy_periodic(a, w)
    col = _Collector(a)
    if is_projective_word(a, w):
        return col.result()
    for run in _runs(_finite_pieces(a, w.pairs)):
        col.add_run(run, 1)
    return col.result()


def syzygy_periodic(a, w: Word) -> SyzygyResult:
    check_word(a, w)
    if w.kind == FINITE:
        return syzygy_string(a, w)
    if w.kind == BI:
        return _cyclic(a, w.period, INF)
    if w.kind == LEFT:
        w = inverse(w)
    prefix, period = w.pairs, w.period
    na, t = len(prefix), len(period)
    col = _Collector(a)
    seq = list(prefix) + list(period) * 3
    tops = [p.source for p, _ in seq]
    tails = [_tails(a, p.source, p, q) for p, q in seq]
    per_a = [k for k in range(na, na + t) if _type(a, tops[k]) == TYPE_A]
    left = _left_end(a, tails[0][0])
    if left is not None and _type(a, tops[0]) == TYPE_B and left.right.is_trivial:
        left = None
    valleys = [_valley(seq[k][1], tails[k][1], tails[k + 1][0]) for k in range(len(seq) - 1)]
    # pieces in order, tagged with their start index (-1 for the left end)
    order = ([(-1, left)] if left is not None else []) + list(enumerate(valleys))

    runs, cur, cur_start = [], [], None
    last_top = len(tops) - 1
    for idx, piece in order:
        if not cur:
            cur_start = idx
        cur.append((idx, piece))
        top = idx + 1  # the junction after this piece
        if top >= last_top:
            break
        if _type(a, tops[top]) == TYPE_A:
            runs.append((cur_start, cur))
            cur = []
    if not per_a:
        for start, run in runs:
            col.add_run([pc for _, pc in run], 1)
        # remaining run is infinite; it started at cur_start
        if not cur:
            raise EngineError("periodic tail vanished")
        pre = [pc for i, pc in cur if i < na]
        per = [valleys[k] for k in range(na, na + t)]
        if cur_start is not None and cur_start > na:
            raise EngineError("infinite component starts inside the period")
        col.add_word(Word(RIGHT, tuple((pc.left, pc.right) for pc in pre),
                          tuple((pc.left, pc.right) for pc in per)), 1)
        return col.result()
    for start, run in runs:
        if start < na:
            col.add_run([pc for _, pc in run], 1)
        elif start < na + t:
            col.add_run([pc for _, pc in run], INF)
    return col.result()


def _cyclic(a, pairs, mult, phi=None):
    """Syzygy of a cyclic word: bi-periodic string (phi None) or band."""
    n = len(pairs)
    col = _Collector(a)
    tops = [p.source for p, _ in pairs]
    tails = [_tails(a, p.source, p, q) for p, q in pairs]
    valleys = [_valley(pairs[k][1], tails[k][1], tails[(k + 1) % n][0]) for k in range(n)]
    type_a = [k for k in range(n) if _type(a, tops[k]) == TYPE_A]
    if not type_a:
        new = tuple((pc.left, pc.right) for pc in valleys)
        if phi is None:
            # one bi-infinite component, whatever the period count
            col.add_word(Word(BI, (), new), 1)
            return col.result()
        lam = (-1) ** n
        for k, (p, q) in enumerate(pairs):
            sh = a.shapes[tops[k]]
            s = sh.socle_scalar
            lam *= s if sh.branch1.first == p.first else 1 / s
        m = len(phi)
        phi2 = tuple(Fraction(lam) ** (m - i) * c for i, c in enumerate(phi))
        return col.result(band=canonical_band(BandDatum(new, m, phi2)))
    for k in type_a:
        run = [valleys[k]]
        j = (k + 1) % n
        while _type(a, tops[j]) == TYPE_B:
            run.append(valleys[j])
            j = (j + 1) % n
        col.add_run(run, mult)
    return col.result()


def syzygy_band(a, b: BandDatum) -> SyzygyResult:
    bad = validate_band(a, b)
    if bad:
        from .errors import WordError
        raise WordError(bad[0].rule, bad[0].position, bad[0].detail)
    return _cyclic(a, tuple(b.word), b.m, tuple(b.phi))


# -- modules as graph nodes ---------------------------------------------------

@dataclass(frozen=True)
class Node:
    """A canonical module: kind in {'string', 'band', 'projective'}."""
    kind: str
    key: str
    obj: object = field(compare=False, hash=False, default=None)

    def __str__(self):
        if self.kind == "projective":
            return f"P({self.key})"
        if self.kind == "band":
            return f"Bd[{self.key}]"
        return self.key


def node_for(a, module) -> Node:
    if isinstance(module, str):
        if module not in a.quiver.vertices:
            raise ValueError(f"unknown vertex {module!r}")
        return Node("projective", module, module)
    if isinstance(module, BandDatum):
        b = canonical_band(module)
        return Node("band", str(b), b)
    w = canonical_string(module)
    if is_projective_word(a, w):
        return Node("projective", w.pairs[0][0].source, w.pairs[0][0].source)
    return Node("string", serialize_word(w), w)


def syzygy(a, module) -> SyzygyResult:
    if isinstance(module, BandDatum):
        return syzygy_band(a, module)
    if isinstance(module, str):
        return SyzygyResult()
    return syzygy_string(a, module)


def _children(a, node, cache):
    if node in cache:
        return cache[node]
    if node.kind == "projective":
        res = SyzygyResult()
    elif node.kind == "band":
        res = syzygy_band(a, node.obj)
    else:
        res = syzygy_string(a, node.obj)
    kids = []
    for w, k in res.strings:
        kids.append((node_for(a, w), k))
    if res.band is not None:
        kids.append((node_for(a, res.band), res.band.m))
    for v, k in res.projectives:
        kids.append((Node("projective", v, v), k))
    cache[node] = (res, kids)
    return cache[node]


@dataclass(frozen=True)
class PdimVerdict:
    kind: str                   # 'finite' | 'infinite' | 'unknown'
    value: Optional[int] = None
    certificate: Optional[tuple] = None   # (summand, first depth, recurrence depth)
    chain: tuple = ()           # layers of (summand, multiplicity) for finite verdicts
    depth_cap: Optional[int] = None

    @property
    def is_finite(self):
        return self.kind == "finite"

    def __str__(self):
        if self.kind == "finite":
            return str(self.value)
        if self.kind == "infinite":
            return "inf"
        return "?"

    def to_json(self):
        out = {"verdict": self.kind}
        if self.kind == "finite":
            out["pdim"] = self.value
            out["chain"] = [[{"module": m, "multiplicity": _mult_json(k)} for m, k in layer]
                            for layer in self.chain]
        elif self.kind == "infinite":
            w, d1, d2 = self.certificate
            out["certificate"] = {"module": w, "depth": d1, "recurs_at": d2}
        else:
            out["depth_cap"] = self.depth_cap
        return out


def _mult_json(k):
    return "countable" if k == INF else int(k)


class PdimEngine:
    """Shares syzygy computations across many pdim queries over one algebra."""

    def __init__(self, a, depth_cap=None):
        self.a = a
        self.depth_cap = depth_cap if depth_cap is not None else default_depth_cap()
        if self.depth_cap < 1:
            raise ValueError("depth cap must be at least 1")
        self.cache = {}
        self.verdicts = {}

    def children(self, node):
        return _children(self.a, node, self.cache)

    def pdim(self, module) -> PdimVerdict:
        root = node_for(self.a, module)
        if root in self.verdicts:
            return self.verdicts[root]
        v = self._analyse(root)
        self.verdicts[root] = v
        return v

    def _analyse(self, root):
        if root.kind == "projective":
            return PdimVerdict("finite", 0, chain=((( str(root), 1),),), depth_cap=self.depth_cap)
        cap = self.depth_cap
        depth = {root: 0}
        order = [root]
        frontier = [root]
        capped = False
        for d in range(cap):
            nxt = []
            for node in frontier:
                for child, _ in self.children(node)[1]:
                    if child.kind == "projective":
                        continue
                    if child not in depth:
                        depth[child] = d + 1
                        order.append(child)
                        nxt.append(child)
            frontier = nxt
            if not frontier:
                break
        else:
            capped = bool(frontier)
        expanded = {n for n in order if depth[n] < cap}
        cyc = self._find_cycle(root, expanded)
        if cyc is not None:
            node, d1, d2 = cyc
            return PdimVerdict("infinite", certificate=(str(node), d1, d2), depth_cap=cap)
        if capped:
            return PdimVerdict("unknown", depth_cap=cap)
        memo = {}

        def pd(n):
            if n.kind == "projective":
                return 0
            if n in memo:
                return memo[n]
            kids = [c for c, _ in self.children(n)[1] if c.kind != "projective"]
            memo[n] = 1 + max((pd(c) for c in kids), default=0)
            return memo[n]

        value = pd(root)
        return PdimVerdict("finite", value, chain=self._chain(root), depth_cap=cap)

    def _find_cycle(self, root, expanded):
        """DFS for a reachable cycle; returns (node, depth of entry, depth of recurrence)."""
        color = {}
        stack = [(root, iter(self._np_children(root)), 0)]
        color[root] = 1
        path_depth = {root: 0}
        while stack:
            node, it, d = stack[-1]
            if node not in expanded:
                color[node] = 2
                stack.pop()
                continue
            advanced = False
            for child in it:
                c = color.get(child, 0)
                if c == 1:
                    return child, path_depth[child], d + 1
                if c == 0:
                    color[child] = 1
                    path_depth[child] = d + 1
                    stack.append((child, iter(self._np_children(child)), d + 1))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                path_depth.pop(node, None)
                stack.pop()
        return None

    def _np_children(self, node):
        if node.kind == "projective":
            return []
        kids = []
        for c, _ in self.children(node)[1]:
            if c.kind != "projective" and c not in kids:
                kids.append(c)
        return kids

    def _chain(self, root):
        layers = [[(str(root), 1)]]
        current = [(root, 1)]
        while current:
            merged = Counter()
            nodes = {}
            for node, mult in current:
                if node.kind == "projective":
                    continue
                for child, k in self.children(node)[1]:
                    merged[child] += (mult * k) if (mult != INF and k != INF) else INF
                    nodes[child] = child
            if not merged:
                break
            keys = sorted(merged, key=lambda n: (n.kind == "projective", str(n)))
            layers.append([(str(n), merged[n]) for n in keys])
            current = [(n, merged[n]) for n in keys if n.kind != "projective"]
        return tuple(tuple(layer) for layer in layers)


def pdim(a, module, depth_cap=None) -> PdimVerdict:
    return PdimEngine(a, depth_cap).pdim(module)
