"""Exact matrix representations of modules: realization from presentations,
projective covers, kernels and isomorphism tests.

This module knows nothing about words; it only sees generators of a
submodule of a free module and computes with linear algebra over Q or F_p.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import flint

from .errors import OracleError
from .words import ModulePresentation

DEFAULT_PRIME = 32003


class Field:
    def __init__(self, p=None):
        self.p = p

    @classmethod
    def parse(cls, text):
        text = (text or "Q").strip()
        if text == "Q":
            return cls(None)
        if text.startswith("Fp"):
            p = DEFAULT_PRIME if text in ("Fp", "Fp:") else int(text.split(":", 1)[1])
            if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"{p} is not prime")
            return cls(p)
        raise ValueError(f"unknown field {text!r} (use Q or Fp:p)")

    def __str__(self):
        return "Q" if self.p is None else f"Fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(self.p)

    # python-level scalars: Fraction over Q, int over F_p
    def elem(self, c):
        if self.p is None:
            return Fraction(c)
        c = Fraction(c)
        if c.denominator % self.p == 0:
            raise OracleError(f"scalar {c} is undefined modulo {self.p}")
        return c.numerator * pow(c.denominator, -1, self.p) % self.p

    def inv(self, x):
        return 1 / x if self.p is None else pow(x, -1, self.p)

    def norm(self, x):
        return x if self.p is None else x % self.p

    def matrix(self, rows, cols, entries=None):
        if self.p is None:
            if entries is None:
                return flint.fmpq_mat(rows, cols)
            return flint.fmpq_mat(rows, cols, [flint.fmpq(e.numerator, e.denominator)
                                               if isinstance(e, Fraction) else e for e in entries])
        if entries is None:
            return flint.nmod_mat(rows, cols, self.p)
        return flint.nmod_mat(rows, cols, [int(e) % self.p for e in entries], self.p)

    def to_flint(self, x):
        if self.p is None and isinstance(x, Fraction):
            return flint.fmpq(x.numerator, x.denominator)
        return x

    def to_py(self, x):
        if self.p is None:
            return Fraction(int(x.p), int(x.q))
        return int(x)

    def nullspace(self, m):
        """Matrix whose columns form a basis of the right kernel of m."""
        n = m.ncols()
        if m.nrows() == 0:
            return identity(self, n)
        if self.p is None:
            z, _ = m.numer_denom()
            basis, rank = z.nullspace()
            out = flint.fmpq_mat(n, rank)
            for i in range(n):
                for j in range(rank):
                    out[i, j] = basis[i, j]
            return out
        basis, rank = m.nullspace()
        out = flint.nmod_mat(n, rank, self.p)
        for i in range(n):
            for j in range(rank):
                out[i, j] = basis[i, j]
        return out

    def rank(self, m):
        if m.nrows() == 0 or m.ncols() == 0:
            return 0
        return m.rank()

    def pivot_columns(self, m):
        if m.nrows() == 0 or m.ncols() == 0:
            return []
        r, rank = m.rref()
        piv, row = [], 0
        for j in range(m.ncols()):
            if row < rank and r[row, j] != 0:
                piv.append(j)
                row += 1
        return piv


def identity(field, n):
    m = field.matrix(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def _submatrix(field, m, rows, cols):
    out = field.matrix(len(rows), len(cols))
    for a, i in enumerate(rows):
        for b, j in enumerate(cols):
            out[a, b] = m[i, j]
    return out


@dataclass
class MatRep:
    field: Field
    quiver: object
    dims: dict      # vertex -> dimension
    maps: dict      # arrow name -> matrix (dim target x dim source)

    def dim(self):
        return sum(self.dims.values())

    def dim_vector(self):
        return dict(self.dims)


class _Echelon:
    """Fully reduced row-echelon span of sparse vectors (dict col -> value)."""

    def __init__(self, field):
        self.f = field
        self.rows = {}

    def reduce(self, vec):
        vec = dict(vec)
        for c, row in self.rows.items():
            x = vec.get(c)
            if x:
                for k, v in row.items():
                    nv = self.f.norm(vec.get(k, 0) - x * v)
                    if nv:
                        vec[k] = nv
                    else:
                        vec.pop(k, None)
        return vec

    def add(self, vec):
        vec = self.reduce(vec)
        if not vec:
            return None
        piv = min(vec)
        inv = self.f.inv(vec[piv])
        vec = {k: self.f.norm(v * inv) for k, v in vec.items()}
        for c, row in self.rows.items():
            x = row.get(piv)
            if x:
                for k, v in vec.items():
                    nv = self.f.norm(row.get(k, 0) - x * v)
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[piv] = vec
        return vec


def _free_basis(a, tops):
    """Per vertex y: list of (top index, basis path) with path ending at y."""
    basis = {v: [] for v in a.quiver.vertices}
    index = {}
    for i, x in enumerate(tops):
        for path in a.basis[x]:
            y = path.target
            index[(i, path.arrows, x)] = (y, len(basis[y]))
            basis[y].append((i, path))
    return basis, index


def realize(a, pres: ModulePresentation, field=None) -> MatRep:
    field = field or Field()
    if not pres.is_finite:
        raise OracleError("only finite-dimensional presentations can be realized")
    tops = pres.tops
    basis, index = _free_basis(a, tops)
    q = a.quiver

    def locate(i, path):
        nf = a.normal_form(path)
        if nf.is_zero:
            return None
        y, col = index[(i, nf.rep.arrows, tops[i])]
        return y, col, field.elem(nf.scalar)

    def act(y, vec, arrow):
        """Apply an arrow to a sparse vector living at vertex y."""
        out, tgt = {}, q.arrow[arrow].target
        for col, c in vec.items():
            i, path = basis[y][col]
            hit = locate(i, q.path(path.arrows + (arrow,)) if path.arrows else q.path((arrow,)))
            if hit is None:
                continue
            _, k, s = hit
            nv = field.norm(out.get(k, 0) + c * s)
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return tgt, out

    ech = {v: _Echelon(field) for v in q.vertices}
    queue = []
    for gen in pres.generators:
        vec, where = {}, None
        for c, path, i in gen:
            if path.source != tops[i]:
                raise OracleError(f"generator term {path} does not start at top {i}")
            hit = locate(i, path)
            if hit is None:
                continue
            y, col, s = hit
            if where is not None and y != where:
                raise OracleError("generator is not homogeneous")
            where = y
            nv = field.norm(vec.get(col, 0) + field.elem(c) * s)
            if nv:
                vec[col] = nv
            else:
                vec.pop(col, None)
        if vec:
            queue.append((where, vec))
    while queue:
        y, vec = queue.pop()
        added = ech[y].add(vec)
        if added is None:
            continue
        for arrow in q.out_arrows[y]:
            t, img = act(y, added, arrow)
            if img:
                queue.append((t, img))
    free = {y: [c for c in range(len(basis[y])) if c not in ech[y].rows] for y in q.vertices}
    pos = {y: {c: k for k, c in enumerate(free[y])} for y in q.vertices}
    dims = {y: len(free[y]) for y in q.vertices}
    maps = {}
    for arr in q.arrows:
        s, t = arr.source, arr.target
        m = field.matrix(dims[t], dims[s])
        for j, col in enumerate(free[s]):
            _, img = act(s, {col: field.elem(1)}, arr.name)
            img = ech[t].reduce(img)
            for k, v in img.items():
                m[pos[t][k], j] = field.to_flint(v)
        maps[arr.name] = m
    return MatRep(field, q, dims, maps)


def path_matrix(M: MatRep, a, path):
    f = M.field
    x = identity(f, M.dims[path.source])
    for arrow in path.arrows:
        x = M.maps[arrow] * x
    return x


def check_relations(a, M: MatRep):
    """Every defining relation of the algebra must act as zero."""
    from .dsl import ZeroPath
    for r in a.presentation.relations:
        if isinstance(r, ZeroPath):
            pm = path_matrix(M, a, r.path)
            if any(pm[i, j] != 0 for i in range(pm.nrows()) for j in range(pm.ncols())):
                return False
        else:
            d = path_matrix(M, a, r.left) - path_matrix(M, a, r.right) * M.field.to_flint(M.field.elem(r.scalar))
            if any(d[i, j] != 0 for i in range(d.nrows()) for j in range(d.ncols())):
                return False
    return True


@dataclass
class CoverMap:
    P: MatRep
    M: MatRep
    maps: dict      # vertex -> matrix (dim M_v x dim P_v)
    tops: tuple


def projective_cover(a, M: MatRep):
    f = M.field
    q = a.quiver
    tops, top_vecs = [], []
    for y in q.vertices:
        d = M.dims[y]
        if d == 0:
            continue
        cols = []
        for arrow in q.in_arrows[y]:
            m = M.maps[arrow]
            for j in range(m.ncols()):
                cols.append([m[i, j] for i in range(d)])
        span = f.matrix(len(cols), d, [x for c in cols for x in c]) if cols else f.matrix(0, d)
        rank = f.rank(span)
        for j in range(d):
            e = [0] * d
            e[j] = 1
            trial = f.matrix(span.nrows() + 1, d, [span[i, k] for i in range(span.nrows())
                                                   for k in range(d)] + e)
            r2 = f.rank(trial)
            if r2 > rank:
                span, rank = trial, r2
                tops.append(y)
                vec = f.matrix(d, 1)
                vec[j, 0] = 1
                top_vecs.append(vec)
    P = realize(a, ModulePresentation(tuple(tops), ()), f)
    basis, _ = _free_basis(a, tops)
    maps = {}
    for y in q.vertices:
        m = f.matrix(M.dims[y], P.dims[y])
        for col, (i, path) in enumerate(basis[y]):
            img = path_matrix(M, a, path) * top_vecs[i]
            for r in range(M.dims[y]):
                m[r, col] = img[r, 0]
        maps[y] = m
    for y in q.vertices:
        if f.rank(maps[y]) != M.dims[y]:
            raise OracleError(f"cover map is not onto at {y}")
    return P, CoverMap(P, M, maps, tuple(tops))


def kernel(a, cover: CoverMap) -> MatRep:
    f = cover.P.field
    q = a.quiver
    K = {y: f.nullspace(cover.maps[y]) for y in q.vertices}
    dims = {y: K[y].ncols() for y in q.vertices}
    maps = {}
    for arr in q.arrows:
        s, t = arr.source, arr.target
        img = cover.P.maps[arr.name] * K[s]
        kt = K[t]
        if dims[t] == 0 or dims[s] == 0:
            maps[arr.name] = f.matrix(dims[t], dims[s])
            continue
        rows = f.pivot_columns(kt.transpose())
        sub = _submatrix(f, kt, rows, list(range(dims[t])))
        rhs = _submatrix(f, img, rows, list(range(dims[s])))
        x = sub.solve(rhs)
        if kt * x != img:
            raise OracleError("kernel is not a submodule")
        maps[arr.name] = x
    return MatRep(f, q, dims, maps)


def direct_sum(reps, field=None):
    if not reps:
        raise OracleError("empty direct sum needs explicit vertices")
    f = reps[0].field
    verts = list(reps[0].dims)
    dims = {v: sum(r.dims[v] for r in reps) for v in verts}
    maps = {}
    for arrow, m0 in reps[0].maps.items():
        big = None
        blocks = [r.maps[arrow] for r in reps]
        rows = sum(b.nrows() for b in blocks)
        cols = sum(b.ncols() for b in blocks)
        big = f.matrix(rows, cols)
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.nrows()):
                for j in range(b.ncols()):
                    big[r0 + i, c0 + j] = b[i, j]
            r0 += b.nrows()
            c0 += b.ncols()
        maps[arrow] = big
    return MatRep(f, reps[0].quiver, dims, maps)


def zero_rep(a, field=None):
    f = field or Field()
    dims = {v: 0 for v in a.quiver.vertices}
    maps = {x.name: f.matrix(0, 0) for x in a.quiver.arrows}
    return MatRep(f, a.quiver, dims, maps)


def is_isomorphic(M: MatRep, N: MatRep, tries=4, seed=0):
    """Return (True, witness) or (False, None).

    Solves X_t M_a = N_a X_s for all arrows, then looks for an invertible
    member of the solution space by random combination.  A True answer is
    always correct; a False answer is correct with high probability.
    """
    f = M.field
    if M.dims != N.dims:
        return False, None
    verts = [v for v in M.dims if M.dims[v]]
    offset, n = {}, 0
    for v in verts:
        offset[v] = n
        n += M.dims[v] ** 2
    if n == 0:
        return True, {}

    def var(v, i, k):
        return offset[v] + i * M.dims[v] + k

    q = M.quiver
    rows = []
    for arrow, ma in M.maps.items():
        na = N.maps[arrow]
        s, t = q.arrow[arrow].source, q.arrow[arrow].target
        ds, dt = M.dims[s], M.dims[t]
        if ds == 0 or dt == 0:
            continue
        # (X_t M_a - N_a X_s)[i, j] = 0
        for i in range(dt):
            for j in range(ds):
                row = {}
                for k in range(dt):
                    c = ma[k, j]
                    if c != 0:
                        key = var(t, i, k)
                        row[key] = row.get(key, 0) + c
                for k in range(ds):
                    c = na[i, k]
                    if c != 0:
                        key = var(s, k, j)
                        row[key] = row.get(key, 0) - c
                row = {k: v for k, v in row.items() if v != 0}
                if row:
                    rows.append(row)
    sysm = f.matrix(len(rows), n)
    for r, row in enumerate(rows):
        for k, v in row.items():
            sysm[r, k] = v
    basis = f.nullspace(sysm)
    dim = basis.ncols()
    if dim == 0:
        return False, None
    rng = random.Random(seed)
    for _ in range(tries):
        coeffs = [rng.randint(-1000, 1000) for _ in range(dim)]
        x = [sum((basis[i, j] * coeffs[j] for j in range(dim)), 0 * basis[0, 0])
             for i in range(n)]
        witness, ok = {}, True
        for v in verts:
            d = M.dims[v]
            mat = f.matrix(d, d)
            for i in range(d):
                for k in range(d):
                    mat[i, k] = x[var(v, i, k)]
            if mat.det() == 0:
                ok = False
                break
            witness[v] = mat
        if ok:
            return True, witness
    return False, None


def realize_module(a, module, field=None):
    """Realize a finite word, a BandDatum, or a vertex (its projective)."""
    from .words import BandDatum, band_module, string_module
    field = field or Field()
    if isinstance(module, str):
        return realize(a, ModulePresentation((module,), ()), field)
    if isinstance(module, BandDatum):
        return realize(a, band_module(a, module), field)
    return realize(a, string_module(a, module), field)


def realize_result(a, result, field=None):
    """Direct sum of the summands of a SyzygyResult (finite multiplicities only)."""
    field = field or Field()
    parts = []
    for w, k in result.strings:
        parts += [realize_module(a, w, field)] * _finite(k)
    if result.band is not None:
        parts.append(realize_module(a, result.band, field))
    for v, k in result.projectives:
        parts += [realize_module(a, v, field)] * _finite(k)
    return direct_sum(parts) if parts else zero_rep(a, field)


def _finite(k):
    if k != int(k):
        raise OracleError("infinite multiplicities cannot be realized")
    return int(k)


def oracle_syzygy(a, module, field=None):
    """The kernel of a projective cover of the module, computed by linear algebra."""
    M = realize_module(a, module, field)
    _, cover = projective_cover(a, M)
    return kernel(a, cover)


def check_syzygy(a, module, result, field=None, seed=0):
    """Is the reported syzygy isomorphic to the linear-algebra kernel?"""
    K = oracle_syzygy(a, module, field)
    S = realize_result(a, result, field)
    ok, _ = is_isomorphic(K, S, seed=seed)
    return ok


def oracle_pdim(a, module, max_steps=12, field=None):
    """pdim by repeated cover/kernel on matrices alone; None if still nonzero
    after max_steps syzygies (or the dimension sequence repeats, a hint of
    periodicity that this function does not prove)."""
    M = realize_module(a, module, field)
    for k in range(max_steps + 1):
        if M.dim() == 0:
            return max(k - 1, 0)
        _, cover = projective_cover(a, M)
        M = kernel(a, cover)
    return None
