"""Special biserial algebras: normal forms, syllables, projective shapes."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .dsl import Presentation, ZeroPath
from .errors import AlgebraError, InconsistentRelations, NotAdmissible, NotSpecialBiserial
from .quiver import Path, trivial

DEFAULT_LENGTH_CAP = 64
TYPE_A = "A"
TYPE_B = "B"


@dataclass(frozen=True)
class PathClass:
    """`rep` is None for the zero class; otherwise path == scalar * rep mod I."""
    rep: Optional[Path]
    scalar: Fraction = Fraction(1)

    @property
    def is_zero(self):
        return self.rep is None

    @classmethod
    def zero(cls):
        return cls(None, Fraction(0))


@dataclass(frozen=True)
class ProjectiveShape:
    vertex: str
    kind: str
    branch1: Path
    branch2: Path
    # TypeB only: branch1 == scalar * branch2 modulo I
    socle_scalar: Optional[Fraction] = None

    def vertex_sequences(self, quiver):
        return (tuple(quiver.vertices_on(self.branch1)[1:]),
                tuple(quiver.vertices_on(self.branch2)[1:]))


class Algebra:
    """KQ/I built from a Presentation; validated on construction."""

    def __init__(self, presentation: Presentation, length_cap=DEFAULT_LENGTH_CAP):
        self.presentation = presentation
        self.quiver = presentation.quiver
        self.name = presentation.name
        self.length_cap = length_cap
        q = self.quiver
        self._zero = set()
        self._binomials = []
        for r in presentation.relations:
            if isinstance(r, ZeroPath):
                if len(r.path) < 2:
                    raise NotAdmissible(f"relation {r.path} has length < 2")
                self._zero.add(r.path.arrows)
            else:
                if len(r.left) < 2 or len(r.right) < 2:
                    raise NotAdmissible("binomial sides must have length >= 2")
                if (r.left.source, r.left.target) != (r.right.source, r.right.target):
                    raise AlgebraError(f"binomial sides {r.left} and {r.right} are not parallel")
                if r.left == r.right:
                    raise AlgebraError(f"binomial sides coincide: {r.left}")
                self._binomials.append((r.left.arrows, Fraction(r.scalar), r.right.arrows))
        self._zero_lengths = sorted({len(z) for z in self._zero})
        self._nf = {}
        for v in q.vertices:
            if len(q.out_arrows[v]) > 2:
                raise NotSpecialBiserial("at most two arrows start at each vertex", v)
            if len(q.in_arrows[v]) > 2:
                raise NotSpecialBiserial("at most two arrows end at each vertex", v)
        self._build_basis()
        self._check_continuations()
        self._build_shapes()

    # -- normal forms -----------------------------------------------------
    def _has_zero(self, arrows):
        for k in self._zero_lengths:
            for i in range(len(arrows) - k + 1):
                if arrows[i:i + k] in self._zero:
                    return True
        return False

    def _explore(self, arrows):
        """Return (members: dict arrows -> coefficient, zero flag).

        start == members[mu] * mu modulo I for every member mu.
        """
        coef = {arrows: Fraction(1)}
        queue = deque([arrows])
        zero = self._has_zero(arrows)
        inconsistent = False
        while queue:
            mu = queue.popleft()
            k = coef[mu]
            for left, c, right in self._binomials:
                for pat, rep, factor in ((left, right, c), (right, left, 1 / c)):
                    n = len(pat)
                    for i in range(len(mu) - n + 1):
                        if mu[i:i + n] == pat:
                            nu = mu[:i] + rep + mu[i + n:]
                            val = k * factor
                            old = coef.get(nu)
                            if old is None:
                                coef[nu] = val
                                if self._has_zero(nu):
                                    zero = True
                                queue.append(nu)
                            elif old != val:
                                inconsistent = True
        if inconsistent and not zero:
            raise InconsistentRelations(
                f"path {'*'.join(arrows)} is forced to equal two different multiples of itself")
        return coef, zero

    def _normal(self, arrows):
        hit = self._nf.get(arrows)
        if hit is not None:
            return hit
        if len(arrows) > self.length_cap:
            raise NotAdmissible(f"nonzero path of length > {self.length_cap}")
        coef, zero = self._explore(arrows)
        if zero:
            self._nf[arrows] = None
            return None
        key = self.quiver.arrow_index
        canon = min(coef, key=lambda t: tuple(key[a] for a in t))
        base = coef[canon]
        # start == base * canon, and mu == (base / coef[mu]) * canon
        for mu, k in coef.items():
            self._nf[mu] = (canon, base / k)
        return self._nf[arrows]

    def normal_form(self, p: Path) -> PathClass:
        if p.is_trivial:
            return PathClass(p, Fraction(1))
        if len(p) >= self.nilpotency:
            return PathClass.zero()
        res = self._normal(p.arrows)
        if res is None:
            return PathClass.zero()
        canon, k = res
        return PathClass(self.quiver.path(canon), k)

    def is_nonzero(self, p: Path) -> bool:
        return not self.normal_form(p).is_zero

    def class_members(self, p: Path):
        """All paths of the class of p (p nonzero), sorted canonically."""
        if p.is_trivial:
            return [p]
        coef, zero = self._explore(p.arrows)
        key = self.quiver.key
        return sorted((self.quiver.path(t) for t in coef), key=key)

    # -- basis ------------------------------------------------------------
    def _build_basis(self):
        q = self.quiver
        self.basis = {}
        longest = 0
        for v in q.vertices:
            seen = {(): None}
            order = [trivial(v)]
            frontier = [()]
            while frontier:
                nxt = []
                for t in frontier:
                    end = q.arrow[t[-1]].target if t else v
                    for a in q.out_arrows[end]:
                        res = self._normal(t + (a,))
                        if res is None:
                            continue
                        canon = res[0]
                        if canon not in seen:
                            seen[canon] = None
                            order.append(q.path(canon))
                            nxt.append(canon)
                            longest = max(longest, len(canon))
                frontier = nxt
            self.basis[v] = tuple(order)
        self.nilpotency = longest + 1

    def _check_continuations(self):
        q = self.quiver
        self._cont = {}
        self._prec = {}
        for a in q.arrows:
            after = [b for b in q.out_arrows[a.target] if self._normal((a.name, b)) is not None]
            before = [g for g in q.in_arrows[a.source] if self._normal((g, a.name)) is not None]
            if len(after) > 1:
                raise NotSpecialBiserial("at most one arrow continues each arrow", a.name,
                                         f"both {after[0]} and {after[1]} do")
            if len(before) > 1:
                raise NotSpecialBiserial("at most one arrow precedes each arrow", a.name,
                                         f"both {before[0]} and {before[1]} do")
            self._cont[a.name] = after[0] if after else None
            self._prec[a.name] = before[0] if before else None

    def arrow_continuation(self, a):
        return self._cont[a]

    def arrow_precedent(self, a):
        return self._prec[a]

    def _greedy_branch(self, v, first):
        q = self.quiver
        arrows = (first,)
        if self._normal(arrows) is None:
            return trivial(v)
        while True:
            nxt = self._cont[arrows[-1]]
            if nxt is None or self._normal(arrows + (nxt,)) is None:
                break
            arrows = arrows + (nxt,)
        return q.path(arrows)

    def _build_shapes(self):
        q = self.quiver
        self.shapes = {}
        for v in q.vertices:
            outs = q.out_arrows[v]
            brs = [self._greedy_branch(v, a) for a in outs]
            brs = [b for b in brs if not b.is_trivial]
            while len(brs) < 2:
                brs.append(trivial(v))
            b1, b2 = brs
            kind, scalar = TYPE_A, None
            if not b1.is_trivial and not b2.is_trivial:
                c1, k1 = self._normal(b1.arrows)
                c2, k2 = self._normal(b2.arrows)
                if c1 == c2:
                    kind, scalar = TYPE_B, k1 / k2
            expected = 1 + len(b1) + len(b2) - (1 if kind == TYPE_B else 0)
            if len(self.basis[v]) != expected:
                raise NotSpecialBiserial(
                    "binomial relations identify paths only at socle level", v,
                    f"projective has dimension {len(self.basis[v])}, branches give {expected}")
            self.shapes[v] = ProjectiveShape(v, kind, b1, b2, scalar)
        for left, c, right in self._binomials:
            l_nz = self._normal(left) is not None
            r_nz = self._normal(right) is not None
            if not (l_nz or r_nz):
                continue
            sh = self.shapes[q.arrow[left[0]].source]
            ends = {sh.branch1.arrows, sh.branch2.arrows}
            if sh.kind != TYPE_B or left not in ends or right not in ends:
                raise NotSpecialBiserial(
                    "binomial relations identify paths only at socle level",
                    q.arrow[left[0]].source, f"relation {'*'.join(left)} - c*{'*'.join(right)}")

    # -- derived data -----------------------------------------------------
    @cached_property
    def syllables(self):
        """Nonzero paths alone in their class, plus all trivial paths."""
        out = set()
        for v in self.quiver.vertices:
            for p in self.basis[v]:
                if p.is_trivial:
                    out.add(p)
                    continue
                members = self.class_members(p)
                if len(members) == 1:
                    out.add(p)
        return frozenset(out)

    def is_syllable(self, p: Path):
        return p in self.syllables

    def dimension(self):
        return sum(len(b) for b in self.basis.values())

    def dimension_by_closure(self):
        """Count classes over all arrow sequences of length < nilpotency bound."""
        q = self.quiver
        classes = set(q.vertices)
        layer = [(a.name,) for a in q.arrows]
        while layer:
            nxt = []
            for t in layer:
                coef, zero = self._explore(t)
                if zero:
                    continue
                classes.add(min(coef, key=lambda s: tuple(q.arrow_index[a] for a in s)))
                for b in q.out_arrows[q.arrow[t[-1]].target]:
                    nxt.append(t + (b,))
            layer = nxt
        return len(classes)

    def branch_with(self, v, first_arrow):
        """The full branch of the projective at v that begins with first_arrow."""
        sh = self.shapes[v]
        for b in (sh.branch1, sh.branch2):
            if b.first == first_arrow:
                return b
        return trivial(v)

    def other_branch(self, v, first_arrow):
        """The branch at v not starting with first_arrow (first_arrow may be None)."""
        sh = self.shapes[v]
        for b in (sh.branch1, sh.branch2):
            if not b.is_trivial and b.first != first_arrow:
                return b
        return trivial(v)

    def continuation(self, p: Path) -> Path:
        """Remainder of the branch that properly extends the nonzero path p."""
        if p.is_trivial:
            raise AlgebraError("continuation of a trivial path is ambiguous")
        b = self.branch_with(p.source, p.first)
        if b.arrows[:len(p)] != p.arrows:
            raise AlgebraError(f"{p} is not an initial piece of a branch at {p.source}")
        return self.quiver.path(b.arrows[len(p):], source=p.target)

    def is_projective_pair(self, v, p: Path, q: Path):
        """Does the pair (p, q) at v spell both full branches of a TypeA projective?"""
        sh = self.shapes[v]
        if sh.kind != TYPE_A:
            return False
        return {p.arrows, q.arrows} == {sh.branch1.arrows, sh.branch2.arrows}


def build_algebra(p: Presentation, length_cap=DEFAULT_LENGTH_CAP) -> Algebra:
    return Algebra(p, length_cap)


def normal_form(a: Algebra, p: Path) -> PathClass:
    return a.normal_form(p)


def syllables(a: Algebra):
    return a.syllables


def arrow_continuation(a: Algebra, arrow):
    return a.arrow_continuation(arrow)


def arrow_precedent(a: Algebra, arrow):
    return a.arrow_precedent(arrow)
