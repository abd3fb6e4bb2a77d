"""DOT and ASCII emitters for projective graphs, string/band graphs and syzygy chains.

All output is deterministic: node ids are positional and branch1 / the p-side
is always drawn on the left.
"""
from __future__ import annotations

from .algebra import TYPE_B
from .syzygy import INF, Node, PdimEngine, _mult_json, node_for
from .words import FINITE, LEFT, RIGHT, BandDatum, Word, format_phi, serialize_word


def _q(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


# -- projective shapes ---------------------------------------------------------

def _branch_steps(quiver, path):
    verts = quiver.vertices_on(path)
    return list(zip(path.arrows, verts[1:]))


def projective_dot(a, shape) -> str:
    q = a.quiver
    lines = [f"digraph {_q('P(' + shape.vertex + ')')} {{", "  rankdir=TB;",
             f"  top [label={_q(shape.vertex)}, shape=box];"]
    left = _branch_steps(q, shape.branch1)
    right = _branch_steps(q, shape.branch2)
    if shape.kind == TYPE_B:
        left, right = left[:-1], right[:-1]
    ends = {}
    for side, steps in (("L", left), ("R", right)):
        prev = "top"
        for i, (arrow, v) in enumerate(steps):
            nid = f"{side}{i}"
            lines.append(f"  {nid} [label={_q(v)}];")
            lines.append(f"  {prev} -> {nid} [label={_q(arrow)}];")
            prev = nid
        ends[side] = prev
    if shape.kind == TYPE_B:
        soc = shape.branch1.target
        lines.append(f"  soc [label={_q(soc)}, shape=doublecircle];")
        lines.append(f"  {ends['L']} -> soc [label={_q(shape.branch1.arrows[-1])}];")
        lines.append(f"  {ends['R']} -> soc [label={_q(shape.branch2.arrows[-1])}];")
        if shape.socle_scalar is not None and shape.socle_scalar != 1:
            lines.append(f"  soc_note [shape=plaintext, label={_q('scalar ' + str(shape.socle_scalar))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def projective_ascii(a, shape) -> str:
    q = a.quiver
    left = _branch_steps(q, shape.branch1)
    right = _branch_steps(q, shape.branch2)
    if shape.kind == TYPE_B:
        left, right = left[:-1], right[:-1]
    cells_l = [f"{ar} > {v}" for ar, v in left]
    cells_r = [f"{ar} > {v}" for ar, v in right]
    w = max([len(c) for c in cells_l] + [len(shape.vertex), 6]) + 4
    out = [f"{shape.vertex}  (type {shape.kind})"]
    for i in range(max(len(cells_l), len(cells_r))):
        lc = cells_l[i] if i < len(cells_l) else ""
        rc = cells_r[i] if i < len(cells_r) else ""
        out.append(f"  {lc:<{w}}{rc}".rstrip())
    if shape.kind == TYPE_B:
        soc = shape.branch1.target
        note = f"{shape.branch1.arrows[-1]} > {soc} < {shape.branch2.arrows[-1]}"
        if shape.socle_scalar is not None and shape.socle_scalar != 1:
            note += f"   (scalar {shape.socle_scalar})"
        out.append("  socle " + note)
    return "\n".join(out) + "\n"


def projectives_dot(a) -> str:
    return "".join(projective_dot(a, s) for s in (a.shapes[v] for v in a.quiver.vertices))


def projectives_ascii(a) -> str:
    return "\n".join(projective_ascii(a, s) for s in (a.shapes[v] for v in a.quiver.vertices))


# -- string and band graphs ------------------------------------------------------

def _walk(quiver, pairs):
    """Nodes (vertex, height) and edges (i, j, arrow) with i the upper end."""
    nodes, edges = [], []
    h = 0
    for idx, (p, q) in enumerate(pairs):
        pv = quiver.vertices_on(p)
        if idx == 0:
            nodes.append((pv[-1], h))
        for k in range(len(p.arrows) - 1, -1, -1):
            h += 1
            nodes.append((pv[k], h))
            edges.append((len(nodes) - 1, len(nodes) - 2, p.arrows[k]))
        qv = quiver.vertices_on(q)
        for k, arrow in enumerate(q.arrows):
            h -= 1
            nodes.append((qv[k + 1], h))
            edges.append((len(nodes) - 2, len(nodes) - 1, arrow))
    return nodes, edges


def _expand(w: Word, periods):
    if w.kind == FINITE:
        return tuple(w.pairs), False, False
    if w.kind == RIGHT:
        return tuple(w.pairs) + tuple(w.period) * periods, False, True
    if w.kind == LEFT:
        return tuple(w.period) * periods + tuple(w.pairs), True, False
    return tuple(w.period) * periods, True, True


def string_dot(a, w, periods=2) -> str:
    """Graph of St(w); periodic words are unrolled `periods` times with open ends."""
    band = isinstance(w, BandDatum)
    pairs, lopen, ropen = (tuple(w.word), False, False) if band else _expand(w, periods)
    nodes, edges = _walk(a.quiver, pairs)
    title = str(w) if band else serialize_word(w)
    lines = [f"digraph {_q(title)} {{", "  rankdir=TB;"]
    for i, (v, h) in enumerate(nodes):
        lines.append(f"  n{i} [label={_q(v)}];")
    for i, j, arrow in edges:
        lines.append(f"  n{i} -> n{j} [label={_q(arrow)}];")
    if lopen:
        lines += ["  lopen [shape=plaintext, label=\"...\"];", "  lopen -> n0 [style=dotted, dir=none];"]
    if ropen:
        lines += ["  ropen [shape=plaintext, label=\"...\"];",
                  f"  n{len(nodes) - 1} -> ropen [style=dotted, dir=none];"]
    if band:
        lines.append(f"  n{len(nodes) - 1} -> n0 [style=dashed, dir=none, "
                     f"label={_q('m=' + str(w.m) + ' phi=' + format_phi(w.phi))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def string_ascii(a, w, periods=2) -> str:
    band = isinstance(w, BandDatum)
    pairs, lopen, ropen = (tuple(w.word), False, False) if band else _expand(w, periods)
    nodes, _ = _walk(a.quiver, pairs)
    hmax = max(h for _, h in nodes)
    hmin = min(h for _, h in nodes)
    cw = max(len(v) for v, _ in nodes) + 1
    rows = [[" "] * (cw * len(nodes) + 4) for _ in range(2 * (hmax - hmin) + 1)]
    off = 2 if lopen else 0

    def put(r, c, text):
        for k, ch in enumerate(text):
            if c + k < len(rows[r]):
                rows[r][c + k] = ch

    for i, (v, h) in enumerate(nodes):
        put(2 * (hmax - h), off + i * cw, v)
        if i:
            ph = nodes[i - 1][1]
            r = 2 * (hmax - max(h, ph)) + 1
            put(r, off + i * cw - 1, "\\" if h < ph else "/")
    if lopen:
        put(2 * (hmax - nodes[0][1]), 0, "..")
    if ropen:
        put(2 * (hmax - nodes[-1][1]), off + len(nodes) * cw, "..")
    head = (f"band {w}  m={w.m}  phi={format_phi(w.phi)}  (ends glued)" if band
            else serialize_word(w))
    body = ["".join(r).rstrip() for r in rows]
    return head + "\n" + "\n".join(body) + "\n"


# -- syzygy chains ("orientation diagram") ---------------------------------------

def chain_graph(a, modules, depth=None):
    """BFS over iterated syzygies; returns (levels, edges) keyed by canonical Node."""
    eng = PdimEngine(a, depth)
    roots = [node_for(a, m) for m in modules]
    level = {}
    edges = []
    frontier = []
    for n in roots:
        if n not in level:
            level[n] = 0
            frontier.append(n)
    d = 0
    while frontier and d < eng.depth_cap:
        nxt = []
        for n in frontier:
            _, kids = eng.children(n)
            for kid, k in kids:
                edges.append((n, kid, k))
                if kid not in level:
                    level[kid] = d + 1
                    if kid.kind != "projective":
                        nxt.append(kid)
        frontier = nxt
        d += 1
    return level, edges


def chain_dot(a, modules, depth=None) -> str:
    level, edges = chain_graph(a, modules, depth)
    ids = {n: f"m{i}" for i, n in enumerate(level)}
    lines = [f"digraph {_q('syzygies over ' + a.name)} {{", "  rankdir=TB;"]
    for d in sorted(set(level.values())):
        members = [n for n in level if level[n] == d]
        lines.append(f"  subgraph depth{d} {{ rank=same;")
        for n in members:
            shape = "box" if n.kind == "projective" else ("octagon" if n.kind == "band" else "ellipse")
            lines.append(f"    {ids[n]} [label={_q(str(n))}, shape={shape}];")
        lines.append("  }")
    for src, dst, k in edges:
        lab = "" if k == 1 else f" [label={_q(_mult_json(k) if k == INF else k)}]"
        lines.append(f"  {ids[src]} -> {ids[dst]}{lab};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def chain_text(a, modules, depth=None) -> str:
    level, edges = chain_graph(a, modules, depth)
    kids = {}
    for src, dst, k in edges:
        kids.setdefault(src, []).append((dst, k))
    out = []
    for d in sorted(set(level.values())):
        out.append(f"depth {d}")
        for n in (n for n in level if level[n] == d):
            parts = [f"{c}" + ("" if k == 1 else f" x{_mult_json(k)}") for c, k in kids.get(n, [])]
            tail = " + ".join(parts) if parts else ("projective" if n.kind == "projective" else "0")
            out.append(f"  {n}  ->  {tail}")
    return "\n".join(out) + "\n"


__all__ = ["projective_dot", "projective_ascii", "projectives_dot", "projectives_ascii",
           "string_dot", "string_ascii", "chain_graph", "chain_dot", "chain_text", "Node"]
