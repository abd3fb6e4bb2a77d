"""Enumeration of strings and bands, finitistic-dimension scans, witness
modules and the claim verifiers for the Lambda_m family."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import build_algebra
from .family import build_lambda, level_vertices
from .quiver import trivial
from .syzygy import PdimEngine, syzygy_band, syzygy_string, _mult_json
from .words import (FINITE, BandDatum, Word, canonical_band, canonical_cycle,
                    canonical_string, parse_word, serialize_pairs, serialize_word,
                    total_length, trivial_word, word_support)


# -- enumeration --------------------------------------------------------------

def _syllable_tables(a):
    start, end = {}, {}
    for s in a.syllables:
        if s.is_trivial:
            continue
        start.setdefault(s.source, []).append(s)
        end.setdefault(s.target, []).append(s)
    key = a.quiver.key
    for d in (start, end):
        for v in d:
            d[v].sort(key=key)
    return start, end


def enumerate_strings(a, L):
    """All canonical finite words of total syllable length <= L, sorted."""
    start, end = _syllable_tables(a)
    found = {}

    def record(pairs):
        w = canonical_string(Word(FINITE, tuple(pairs)))
        found.setdefault(serialize_word(w), w)

    def extend(pairs, used):
        # last q is nontrivial; choose p (into its target) then q
        q_last = pairs[-1][1]
        for p in end.get(q_last.target, ()):
            if p.last == q_last.last or used + len(p) > L:
                continue
            x = p.source
            record(pairs + [(p, trivial(x))])
            for q in start.get(x, ()):
                if q.first == p.first or used + len(p) + len(q) > L:
                    continue
                nxt = pairs + [(p, q)]
                record(nxt)
                extend(nxt, used + len(p) + len(q))

    for x in a.quiver.vertices:
        e = trivial(x)
        record([(e, e)])
        firsts = [(e, q) for q in start.get(x, ())]
        for p in start.get(x, ()):
            firsts.append((p, e))
            for q in start.get(x, ()):
                if q.first != p.first:
                    firsts.append((p, q))
        for p, q in firsts:
            n = len(p) + len(q)
            if n > L:
                continue
            record([(p, q)])
            if not q.is_trivial:
                extend([(p, q)], n)
    return [found[k] for k in sorted(found, key=lambda s: (total_length(found[s].pairs), s))]


def enumerate_bands(a, L):
    """All primitive cyclic words of total length <= L (m = 1, phi = 1), sorted."""
    start, end = _syllable_tables(a)
    found = {}

    def close(pairs):
        p0, q_last = pairs[0][0], pairs[-1][1]
        if q_last.target == p0.target and q_last.last != p0.last:
            cyc, _, _ = canonical_cycle(tuple(pairs))
            if len(cyc) == len(pairs):
                key = serialize_pairs(cyc)
                found.setdefault(key, BandDatum(cyc, 1, (Fraction(1),)))

    def extend(pairs, used):
        close(pairs)
        q_last = pairs[-1][1]
        for p in end.get(q_last.target, ()):
            if p.last == q_last.last:
                continue
            for q in start.get(p.source, ()):
                if q.first == p.first or used + len(p) + len(q) > L:
                    continue
                extend(pairs + [(p, q)], used + len(p) + len(q))

    for x in a.quiver.vertices:
        for p in start.get(x, ()):
            for q in start.get(x, ()):
                if q.first != p.first and len(p) + len(q) <= L:
                    extend([(p, q)], len(p) + len(q))
    return [found[k] for k in sorted(found, key=lambda s: (total_length(found[s].word), s))]


# -- scans --------------------------------------------------------------------

@dataclass
class ScanEntry:
    kind: str       # 'string' | 'band'
    module: str
    verdict: object


@dataclass
class ScanReport:
    algebra: str
    max_len: int
    depth_cap: int
    entries: list
    lower_bound: int
    witness: str
    n_finite: int
    n_infinite: int
    n_unknown: int

    def to_json(self):
        return {
            "algebra": self.algebra,
            "max_len": self.max_len,
            "depth_cap": self.depth_cap,
            "findim_lower_bound": self.lower_bound,
            "witness": self.witness,
            "counts": {"finite": self.n_finite, "infinite": self.n_infinite,
                       "unknown": self.n_unknown},
            "table": [dict({"kind": e.kind, "module": e.module}, **_short(e.verdict))
                      for e in self.entries],
        }

    def to_text(self):
        width = max([len(e.module) for e in self.entries] + [6])
        lines = [f"algebra {self.algebra}  max_len {self.max_len}  depth cap {self.depth_cap}",
                 f"findim lower bound {self.lower_bound}  witness {self.witness}",
                 f"finite {self.n_finite}  infinite {self.n_infinite}  unknown {self.n_unknown}",
                 "",
                 f"{'kind':<7} {'module':<{width}}  pdim"]
        for e in self.entries:
            lines.append(f"{e.kind:<7} {e.module:<{width}}  {e.verdict}")
        return "\n".join(lines) + "\n"


def _short(v):
    out = {"verdict": v.kind}
    if v.kind == "finite":
        out["pdim"] = v.value
    elif v.kind == "infinite":
        out["certificate"] = {"module": v.certificate[0], "depth": v.certificate[1],
                              "recurs_at": v.certificate[2]}
    return out


_WORKER = {}


def _init_worker(presentation, depth):
    a = build_algebra(presentation)
    _WORKER["engine"] = PdimEngine(a, depth)


def _work(modules):
    eng = _WORKER["engine"]
    return [eng.pdim(m) for m in modules]


def pdim_many(a, modules, depth=None, jobs=1):
    """pdim verdicts for many modules, in input order; jobs > 1 uses processes."""
    if jobs <= 1 or len(modules) < 2 * jobs:
        eng = PdimEngine(a, depth)
        return [eng.pdim(m) for m in modules]
    chunks = [modules[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(jobs, initializer=_init_worker,
                             initargs=(a.presentation, depth)) as ex:
        parts = list(ex.map(_work, chunks))
    out = [None] * len(modules)
    for i, part in enumerate(parts):
        for j, v in enumerate(part):
            out[i + j * jobs] = v
    return out


def findim_scan(a, L, depth=None, jobs=1, include_bands=True) -> ScanReport:
    strings = enumerate_strings(a, L)
    bands = enumerate_bands(a, L) if include_bands else []
    modules = list(strings) + list(bands)
    verdicts = pdim_many(a, modules, depth, jobs)
    eng_cap = verdicts[0].depth_cap if verdicts else depth
    entries = []
    for m, v in zip(modules, verdicts):
        if isinstance(m, BandDatum):
            entries.append(ScanEntry("band", str(m), v))
        else:
            entries.append(ScanEntry("string", serialize_word(m), v))
    best, witness = 0, None
    for e in entries:
        if e.verdict.kind == "finite" and (witness is None or e.verdict.value > best):
            best, witness = e.verdict.value, e
    counts = {"finite": 0, "infinite": 0, "unknown": 0}
    for e in entries:
        counts[e.verdict.kind] += 1
    wit = f"{witness.kind} {witness.module}" if witness else ""
    return ScanReport(a.name, L, eng_cap, entries, best, wit,
                      counts["finite"], counts["infinite"], counts["unknown"])


# -- witnesses ----------------------------------------------------------------

_WITNESS_TEXT = {
    1: ".^-1 alpha1 | gamma1^-1 gammap1 | {beta1^-1 betap1 | gamma1*alpha0^-1 gammap1}~",
    2: ".^-1 alphap2*gamma2 | {betap2^-1 beta2 | gammap2^-1 gamma2}~",
    3: ".^-1 alphap3 | {beta3^-1 betap3 | alpha3*alphap2^-1 alphap3}~",
}


def witness_text(m):
    if m < 1:
        raise ValueError("witness modules exist for m >= 1")
    if m in _WITNESS_TEXT:
        return _WITNESS_TEXT[m]
    return f".^-1 alphap{m} | {{beta{m}^-1 betap{m} | alpha{m}^-1 alphap{m}}}~"


def witness_module(m, r, algebra=None) -> Word:
    """The right periodic word of M_m (validated over Lambda_m)."""
    from .words import check_word
    a = algebra or build_algebra(build_lambda(max(m, 1), r))
    w = parse_word(witness_text(m), a.quiver)
    check_word(a, w)
    return w


def band_word_text(m):
    if m == 1:
        return "beta1^-1 betap1 | gamma1*alpha0^-1 gammap1"
    if m == 2:
        return "betap2^-1 beta2 | gammap2^-1 gamma2"
    if m == 3:
        return "alpha3*alphap2^-1 alphap3 | beta3^-1 betap3"
    return f"alpha{m}^-1 alphap{m} | beta{m}^-1 betap{m}"


def band_v(m, a, mult=1, phi=None):
    w = parse_word(band_word_text(m), a.quiver)
    if phi is None:
        if mult != 1:
            raise ValueError("phi is required when mult > 1")
        phi = (Fraction(1),)
    return BandDatum(w.pairs, mult, phi)


def path_module_word(a, path):
    """The word of the cyclic module Lambda * path (path nonzero, positive length)."""
    nf = a.normal_form(path)
    rep = nf.rep
    t = rep.target
    if not a.is_syllable(rep):
        return trivial_word(t)
    cont = a.continuation(rep)
    return Word(FINITE, ((trivial(t), cont),))


# -- claim verifiers ----------------------------------------------------------

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    data: dict = field(default_factory=dict)


@dataclass
class ClaimReport:
    claim: str
    r: int
    checks: list
    summary: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def to_json(self):
        return {"claim": self.claim, "r": self.r, "ok": self.ok, "summary": self.summary,
                "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail, "data": c.data}
                           for c in self.checks]}

    def to_text(self):
        lines = [f"claim {self.claim}  r={self.r}  {'PASS' if self.ok else 'FAIL'}"]
        for k, v in self.summary.items():
            lines.append(f"  {k}: {v}")
        for c in self.checks:
            lines.append(f"  [{'ok' if c.ok else 'FAIL'}] {c.name}" + (f" - {c.detail}" if c.detail else ""))
            if not c.ok and c.data:
                for k, v in c.data.items():
                    lines.append(f"        {k}: {v}")
        return "\n".join(lines) + "\n"


def _alg(m, r):
    return build_algebra(build_lambda(m, r))


def _summands(res):
    return {"strings": {serialize_word(w): _mult_json(k) for w, k in res.strings},
            "projectives": {v: _mult_json(k) for v, k in res.projectives},
            "band": None if res.band is None else str(res.band)}


def claim1(r, L=16, depth=40, jobs=1):
    a = _alg(1, r)
    checks = []
    scan = findim_scan(a, L, depth, jobs)
    checks.append(Check("scan lower bound equals r+1", scan.lower_bound == r + 1,
                        f"lower bound {scan.lower_bound}, witness {scan.witness}"))
    wit = next((e for e in scan.entries if f"{e.kind} {e.module}" == scan.witness), None)
    checks.append(Check("witness attains the bound",
                        wit is not None and wit.verdict.kind == "finite"
                        and wit.verdict.value == scan.lower_bound,
                        scan.witness, {"chain": wit.verdict.to_json() if wit else None}))
    checks.append(Check("no Unknown verdicts", scan.n_unknown == 0, f"{scan.n_unknown} unknown"))
    eng = PdimEngine(a, depth)
    table = {}
    for x in a.quiver.vertices:
        for p in a.basis[x]:
            if p.is_trivial:
                continue
            v = eng.pdim(path_module_word(a, p))
            table["*".join(p.arrows)] = v
    finite_vals = [v.value for v in table.values() if v.kind == "finite"]
    top = max(finite_vals, default=None)
    at_r = sorted(k for k, v in table.items() if v.kind == "finite" and v.value == r)
    checks.append(Check("max finite pdim of cyclic path modules equals r", top == r, f"max {top}"))
    checks.append(Check("alphap1 is the only path with pdim r", at_r == ["alphap1"],
                        f"paths with pdim r: {at_r}"))
    summary = {"findim_lower_bound": scan.lower_bound, "witness": scan.witness,
               "paths_with_pdim_r": at_r, "modules_scanned": len(scan.entries)}
    return ClaimReport("1", r, checks, summary)


def claim2(r, ms=(2, 3, 4), L=12, depth=None, jobs=1):
    checks = []
    summary = {}
    for m in ms:
        a = _alg(m, r)
        new = set(level_vertices(m))
        words = [w for w in enumerate_strings(a, L) if word_support(a.quiver, w) & new]
        verdicts = pdim_many(a, words, depth, jobs)
        bad = [serialize_word(w) for w, v in zip(words, verdicts) if v.kind != "infinite"]
        unknown = sum(1 for v in verdicts if v.kind == "unknown")
        certified = all(v.certificate is not None for v in verdicts if v.kind == "infinite")
        checks.append(Check(f"m={m}: every new string has infinite pdim",
                            not bad and certified, f"{len(words)} strings, {len(bad)} not infinite",
                            {"counterexamples": bad[:20]}))
        checks.append(Check(f"m={m}: zero Unknown verdicts", unknown == 0, f"{unknown} unknown"))
        summary[f"m={m}"] = {"strings": len(words), "infinite": len(words) - len(bad)}
    return ClaimReport("2", r, checks, summary)


def claim3(r, m_max=5, L=10, depth=None):
    checks = []
    summary = {}
    for m in range(1, m_max + 1):
        a = _alg(m, r)
        b = band_v(m, a)
        eng = PdimEngine(a, depth)
        v = eng.pdim(b)
        want = m
        checks.append(Check(f"pdim Bd(v_{m}) = {want}", v.kind == "finite" and v.value == want,
                            f"got {v}", {"chain": v.to_json()}))
        res = syzygy_band(a, b)
        if m == 1:
            ok = res.band is None and not res.strings and bool(res.projectives)
            checks.append(Check("syzygy of Bd(v_1) is projective", ok, str(_summands(res))))
        else:
            prev = canonical_band(band_v(m - 1, a))
            ok = res.band is not None and str(res.band) == str(prev)
            checks.append(Check(f"syzygy of Bd(v_{m}) is the band on v_{m-1}", ok,
                                str(_summands(res))))
        new = set(level_vertices(m)) if m >= 2 else set(a.quiver.vertices)
        bands = [x for x in enumerate_bands(a, L) if word_support(a.quiver, x) & new]
        names = [str(x) for x in bands]
        want_name = str(canonical_band(b))
        checks.append(Check(f"m={m}: only new band up to length {L} is v_{m}",
                            names == [want_name], f"{names}"))
        vals = [eng.pdim(x) for x in bands]
        checks.append(Check(f"m={m}: all new bands have pdim {m}",
                            all(x.kind == "finite" and x.value == m for x in vals),
                            ", ".join(str(x) for x in vals)))
        summary[f"m={m}"] = {"band": want_name, "pdim": str(v)}
    return ClaimReport("3", r, checks, summary)


def claim4(r, depth=None):
    a = _alg(r + 1, r)
    checks = []
    summary = {}
    eng = PdimEngine(a, depth)
    ws = {m: witness_module(m, r, a) for m in range(1, r + 2)}
    for m in range(2, r + 2):
        res = syzygy_string(a, ws[m])
        want = serialize_word(canonical_string(ws[m - 1]))
        got = [serialize_word(w) for w, _ in res.strings]
        ok = (got == [want] and res.strings[0][1] == 1
              and not res.projectives and res.band is None)
        checks.append(Check(f"syzygy of M_{m} is M_{m-1}", ok, str(_summands(res))))
    res = syzygy_string(a, ws[1])
    got = _summands(res)
    want = {"strings": {".d0": 1}, "projectives": {"a0": 1, "b0": "countable", "c0": "countable"},
            "band": None}
    checks.append(Check("syzygy of M_1 is S_d0 + P(a0) + P(b0)^N + P(c0)^N", got == want, str(got)))
    for m in range(1, r + 2):
        v = eng.pdim(ws[m])
        checks.append(Check(f"pdim M_{m} = r+m = {r + m}", v.kind == "finite" and v.value == r + m,
                            f"got {v}", {"chain": v.to_json()}))
        summary[f"pdim M_{m}"] = str(v)
    return ClaimReport("4", r, checks, summary)


def theorem31(r, L=10, depth=None, jobs=1):
    a = _alg(r + 1, r)
    checks = []
    scan = findim_scan(a, L, depth, jobs)
    checks.append(Check("findim scan lower bound equals r+1", scan.lower_bound == r + 1,
                        f"lower bound {scan.lower_bound}, witness {scan.witness}"))
    checks.append(Check("no Unknown verdicts", scan.n_unknown == 0, f"{scan.n_unknown} unknown"))
    v = PdimEngine(a, depth).pdim(witness_module(r + 1, r, a))
    checks.append(Check("witness M_{r+1} has pdim 2r+1", v.kind == "finite" and v.value == 2 * r + 1,
                        f"got {v}", {"chain": v.to_json()}))
    summary = {"findim": scan.lower_bound, "Findim_witness": v.value if v.is_finite else str(v),
               "witness": serialize_word(canonical_string(witness_module(r + 1, r, a)))}
    return ClaimReport("thm31", r, checks, summary)


def remark(r, m_max=None, L=6, depth=None, jobs=1):
    m_max = m_max or r + 3
    checks, summary = [], {}
    for m in range(1, m_max + 1):
        scan = findim_scan(_alg(m, r), L, depth, jobs)
        checks.append(Check(f"m={m}: findim lower bound >= {m}", scan.lower_bound >= m,
                            f"lower bound {scan.lower_bound}, witness {scan.witness}"))
        summary[f"m={m}"] = scan.lower_bound
    return ClaimReport("remark", r, checks, summary)


CLAIMS = {"1": claim1, "2": claim2, "3": claim3, "4": claim4, "thm31": theorem31,
          "remark": remark}


def verify_claim(claim, r, **bounds) -> ClaimReport:
    key = str(claim)
    if key not in CLAIMS:
        raise ValueError(f"unknown claim {claim!r}")
    if r < 1:
        raise ValueError("r must be at least 1")
    return CLAIMS[key](r, **bounds)
