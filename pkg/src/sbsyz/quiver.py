"""Quivers and paths.

Paths are stored in traversal order: the first arrow listed is the first one
walked.  A path of length zero is the trivial path at its vertex.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import CompositionError, SbsyzError


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple = ()

    def __post_init__(self):
        if not self.arrows and self.source != self.target:
            raise CompositionError("trivial path must start and end at the same vertex")

    def __len__(self):
        return len(self.arrows)

    @property
    def is_trivial(self):
        return not self.arrows

    @property
    def first(self):
        return self.arrows[0] if self.arrows else None

    @property
    def last(self):
        return self.arrows[-1] if self.arrows else None

    def __str__(self):
        return "*".join(self.arrows) if self.arrows else f"e_{self.source}"


def trivial(vertex):
    return Path(vertex, vertex, ())


def compose(p: Path, q: Path) -> Path:
    """Walk p, then q (the algebraic product "q after p")."""
    if p.target != q.source:
        raise CompositionError(
            f"cannot compose {p} (ends at {p.target}) with {q} (starts at {q.source})")
    return Path(p.source, q.target, p.arrows + q.arrows)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of Arrow, in declaration order

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise SbsyzError("duplicate vertex name")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise SbsyzError("duplicate arrow name")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.name in vs:
                raise SbsyzError(f"name {a.name!r} used for both a vertex and an arrow")
            if a.source not in vs or a.target not in vs:
                raise SbsyzError(f"arrow {a.name} uses an undeclared vertex")

    @cached_property
    def arrow(self):
        return {a.name: a for a in self.arrows}

    @cached_property
    def arrow_index(self):
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def out_arrows(self):
        out = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.source].append(a.name)
        return {v: tuple(x) for v, x in out.items()}

    @cached_property
    def in_arrows(self):
        inc = {v: [] for v in self.vertices}
        for a in self.arrows:
            inc[a.target].append(a.name)
        return {v: tuple(x) for v, x in inc.items()}

    def path(self, arrows, source=None) -> Path:
        """Build a path from arrow names (traversal order); checks composability."""
        arrows = tuple(arrows)
        if not arrows:
            if source is None:
                raise CompositionError("trivial path needs an explicit vertex")
            if source not in self.vertices:
                raise SbsyzError(f"unknown vertex {source!r}")
            return trivial(source)
        for name in arrows:
            if name not in self.arrow:
                raise SbsyzError(f"unknown arrow {name!r}")
        for x, y in zip(arrows, arrows[1:]):
            if self.arrow[x].target != self.arrow[y].source:
                raise CompositionError(f"arrows {x} and {y} do not compose")
        src = self.arrow[arrows[0]].source
        if source is not None and source != src:
            raise CompositionError(f"path {'*'.join(arrows)} does not start at {source}")
        return Path(src, self.arrow[arrows[-1]].target, arrows)

    def key(self, p: Path):
        """Sort key: lexicographic on declared arrow indices."""
        return tuple(self.arrow_index[a] for a in p.arrows)

    def vertices_on(self, p: Path):
        out = [p.source]
        for a in p.arrows:
            out.append(self.arrow[a].target)
        return out
