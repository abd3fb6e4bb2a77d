"""The algebras Lambda_m (depending on a tail length r) and their witness words."""
from __future__ import annotations

from fractions import Fraction

from .dsl import Binomial, Presentation, ZeroPath
from .quiver import Arrow, Quiver

_BASE_VERTICES = ["a0", "a1", "b0", "b1", "bm1", "c0", "c1", "cm1", "u", "v", "w"]
_BASE_ARROWS = [
    ("alpha1", "a1", "a0"), ("alphap1", "a1", "d0"),
    ("alpha0", "a0", "c0"), ("alphap0", "a0", "u"),
    ("gamma1", "c1", "a0"), ("gammap1", "c1", "b0"),
    ("beta1", "b1", "b0"), ("betap1", "b1", "c0"),
    ("beta0", "b0", "bm1"), ("betap0", "b0", "v"),
    ("gamma0", "c0", "cm1"), ("gammap0", "c0", "w"),
    ("epsu", "u", "u"), ("epsv", "v", "v"), ("epsbm1", "bm1", "bm1"),
    ("epsw", "w", "w"), ("epscm1", "cm1", "cm1"),
]
_BASE_ZERO = [
    "alphap1 delta0", "alpha1 alpha0", "alphap0 epsu", "alpha0 gammap0",
    "gamma0 epscm1", "gammap0 epsw", "beta0 epsbm1", "betap0 epsv",
    "beta1 betap0", "betap1 gamma0", "gamma1 alphap0", "gammap1 beta0",
    "epsu epsu", "epsv epsv", "epsbm1 epsbm1", "epsw epsw", "epscm1 epscm1",
]


def _level_data(m):
    """(new vertices, new arrows, binomials as (left, right) traversal strings)."""
    if m == 2:
        verts = ["c2", "a2", "b2"]
        arrows = [("gamma2", "c2", "c1"), ("gammap2", "c2", "b1"),
                  ("alpha2", "a2", "a1"), ("alphap2", "a2", "c2"),
                  ("beta2", "b2", "b1"), ("betap2", "b2", "c1")]
        bins = [("alpha2 alpha1", "alphap2 gamma2 gamma1"),
                ("betap2 gammap1", "beta2 beta1"),
                ("gammap2 betap1", "gamma2 gamma1 alpha0")]
        return verts, arrows, bins
    a, b, a1, b1 = f"a{m}", f"b{m}", f"a{m-1}", f"b{m-1}"
    arrows = [(f"alpha{m}", a, a1), (f"alphap{m}", a, b1),
              (f"beta{m}", b, b1), (f"betap{m}", b, "c2" if m == 3 else a1)]
    if m == 3:
        bins = [("alpha3 alphap2 gamma2", "alphap3 betap2"),
                ("beta3 beta2", "betap3 gammap2")]
    elif m == 4:
        bins = [("alpha4 alphap3", "alphap4 beta3"),
                ("beta4 betap3", "betap4 alpha3 alphap2")]
    else:
        bins = [(f"alpha{m} alphap{m-1}", f"alphap{m} beta{m-1}"),
                (f"beta{m} betap{m-1}", f"betap{m} alpha{m-1}")]
    return [a, b], arrows, bins


def level_vertices(m):
    """Vertices added when passing from Lambda_{m-1} to Lambda_m (m >= 2)."""
    return tuple(_level_data(m)[0])


def _contains(path, zeros):
    for z in zeros:
        k = len(z)
        for i in range(len(path) - k + 1):
            if path[i:i + k] == z:
                return True
    return False


def _new_zero_relations(quiver, new_vertices, binomial_paths, zeros):
    """Minimal paths from new vertices that are not subpaths of a binomial path."""
    allowed = set()
    for p in binomial_paths:
        for i in range(len(p)):
            for j in range(i + 1, len(p) + 1):
                allowed.add(p[i:j])
    found = []
    for v in new_vertices:
        stack = [()]
        while stack:
            t = stack.pop()
            end = quiver.arrow[t[-1]].target if t else v
            for a in quiver.out_arrows[end]:
                u = t + (a,)
                if u in allowed:
                    stack.append(u)
                elif len(u) >= 2 and not _contains(u, zeros + found):
                    found.append(u)
    return sorted(found, key=lambda u: tuple(quiver.arrow_index[a] for a in u))


def build_lambda(m: int, r: int) -> Presentation:
    if m < 1 or r < 1:
        raise ValueError("build_lambda needs m >= 1 and r >= 1")
    verts = list(_BASE_VERTICES) + [f"d{i}" for i in range(r + 1)]
    arrows = list(_BASE_ARROWS) + [(f"delta{i}", f"d{i}", f"d{i+1}") for i in range(r)]
    zero = [tuple(z.split()) for z in _BASE_ZERO]
    zero += [(f"delta{i}", f"delta{i+1}") for i in range(r - 1)]
    rels = [("zero", z) for z in zero]
    for level in range(2, m + 1):
        nv, na, nb = _level_data(level)
        verts += nv
        arrows += na
        q = Quiver(tuple(verts), tuple(Arrow(*x) for x in arrows))
        bpaths = [tuple(s.split()) for pair in nb for s in pair]
        current_zero = [z for kind, z in rels if kind == "zero"]
        new_zero = _new_zero_relations(q, nv, bpaths, current_zero)
        rels += [("rel", (tuple(l.split()), tuple(rr.split()))) for l, rr in nb]
        rels += [("zero", z) for z in new_zero]
    q = Quiver(tuple(verts), tuple(Arrow(*x) for x in arrows))
    out = []
    for kind, data in rels:
        if kind == "zero":
            out.append(ZeroPath(q.path(data)))
        else:
            out.append(Binomial(q.path(data[0]), Fraction(1), q.path(data[1])))
    return Presentation(f"Lambda{m}_r{r}", q, tuple(out))
