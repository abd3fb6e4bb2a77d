"""Decomposability, band/bi-periodic agreement, and truncation stability."""
import pytest

from sbsyz import PdimEngine, Word, enumerate_bands, enumerate_strings, syzygy_periodic, syzygy_string
from sbsyz.algebra import TYPE_A
from sbsyz.findim import witness_module
from sbsyz.syzygy import INF, _tails
from sbsyz.words import BI, FINITE, RIGHT, BandDatum, canonical_string, inverse, serialize_word, truncate, validate_word

from conftest import lam

LEVELS = [(1, 1), (1, 2), (2, 1), (3, 1), (4, 2)]


def n_summands(res):
    return (sum(k for _, k in res.strings) + sum(k for _, k in res.projectives)
            + (res.band.m if res.band else 0))


def split_top(a, w):
    """Is some top of type (a) with kernel material on both sides?"""
    s = len(w.pairs)
    tops = [p.source for p, _ in w.pairs]
    lam0 = _tails(a, tops[0], *w.pairs[0])[0]
    rho = _tails(a, tops[-1], *w.pairs[-1])[1]
    return any(a.shapes[x].kind == TYPE_A and (i > 0 or not lam0.is_trivial)
               and (i < s - 1 or not rho.is_trivial) for i, x in enumerate(tops))


@pytest.mark.parametrize("m, r", LEVELS)
def test_decomposable_iff_split_at_type_a_top(m, r):
    a = lam(m, r)
    for w in enumerate_strings(a, 8):
        assert (n_summands(syzygy_string(a, w)) >= 2) == split_top(a, w), serialize_word(w)


def test_literal_form_fails_on_simple_d0():
    # P(d0) is a type (a) summand of the cover, yet the syzygy S_d1 is indecomposable
    a = lam(1, 2)
    w = canonical_string(Word(FINITE, ((a.quiver.path([], "d0"), a.quiver.path([], "d0")),)))
    assert a.shapes["d0"].kind == TYPE_A
    assert n_summands(syzygy_string(a, w)) == 1


PHIS = {1: [(1,), (-2,)], 2: [(-1, 1), (2, 0)]}


@pytest.mark.parametrize("m, r", LEVELS + [(5, 1)])
def test_band_pdim_equals_bi_periodic(m, r):
    a = lam(m, r)
    eng = PdimEngine(a)
    bands = enumerate_bands(a, 10)
    assert bands
    for b in bands:
        ref = eng.pdim(Word(BI, (), b.word))
        for mult, phis in PHIS.items():
            for phi in phis:
                v = eng.pdim(BandDatum(b.word, mult, phi))
                assert (v.kind, v.value) == (ref.kind, ref.value), (str(b), mult, phi)


def right_periodic_words(a, prefix_len=4):
    out = []
    prefixes = [()] + [w.pairs for w in enumerate_strings(a, prefix_len)
                       if not any(p.is_trivial or q.is_trivial for p, q in w.pairs[1:])]
    for b in enumerate_bands(a, 10):
        inv = tuple((q, p) for p, q in reversed(b.word))
        for base in (b.word, inv):
            for i in range(len(base)):
                per = base[i:] + base[:i]
                for pre in prefixes:
                    w = Word(RIGHT, pre, per)
                    if not validate_word(a, w):
                        out.append(canonical_string(w))
    uniq = {serialize_word(w): w for w in out}
    return [uniq[k] for k in sorted(uniq)]


@pytest.mark.parametrize("m, r", [(1, 1), (2, 1), (3, 1), (3, 2)])
def test_right_periodic_finite_implies_band_finite(m, r):
    a = lam(m, r)
    eng = PdimEngine(a)
    words = right_periodic_words(a)
    assert words
    seen_finite = 0
    for w in words:
        if eng.pdim(w).is_finite:
            seen_finite += 1
            for mult, phis in PHIS.items():
                for phi in phis:
                    assert eng.pdim(BandDatum(w.period, mult, phi)).is_finite
    assert seen_finite


def periodic_samples():
    out = []
    for m, r in [(1, 1), (2, 1), (3, 1)]:
        a = lam(m, r)
        out += [(m, r, w) for w in right_periodic_words(a, 3)[::2]]
    for r in (1, 2):
        out += [(r + 1, r, witness_module(k, r, lam(r + 1, r))) for k in range(1, r + 2)]
    return out


def unrolled(w, n):
    return tuple(w.pairs) + tuple(w.period) * n


def stable_against(a, w, res, n):
    """Compare the periodic answer with the syzygy of the truncation w_n."""
    fin = syzygy_string(a, truncate(w, n))
    fin_strings = {serialize_word(x): k for x, k in fin.strings}
    fin_proj = dict(fin.projectives)
    for x, k in res.strings:
        if x.kind == FINITE:
            have = fin_strings.get(serialize_word(x), 0)
            if k == INF:
                assert have >= n - 3
            else:
                assert have >= k
        else:
            want = unrolled(x, n - 3)
            assert any(unrolled(y, 0)[:len(want)] == want or inverse(y).pairs[:len(want)] == want
                       for y, _ in fin.strings), serialize_word(x)
    for v, k in res.projectives:
        have = fin_proj.get(v, 0)
        assert have >= (n - 3 if k == INF else k)
    return fin


@pytest.mark.parametrize("m, r, w", periodic_samples(),
                         ids=lambda x: serialize_word(x) if isinstance(x, Word) else str(x))
def test_truncation_stability(m, r, w):
    a = lam(m, r)
    res = syzygy_periodic(a, w)
    counts = []
    for n in range(3, 7):
        fin = stable_against(a, w, res, n)
        counts.append(sum(k for _, k in fin.projectives) + sum(k for _, k in fin.strings))
    # from three periods on, each extra period adds the same number of summands
    steps = {y - x for x, y in zip(counts, counts[1:])}
    assert len(steps) == 1
