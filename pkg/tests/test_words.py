from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sbsyz import (BandDatum, canonical_band, canonical_string, enumerate_strings, inverse,
                   parse_band, parse_word, serialize_word, validate_band, validate_word)
from sbsyz.errors import WordError, WordSyntaxError
from sbsyz.words import (BI, check_band, FINITE, LEFT, RIGHT, companion_irreducible, format_phi, inverse_phi,
                         is_primitive, parse_phi, presentation_dimension, string_module,
                         total_length, trivial_word, truncate)
from sbsyz.linrep import realize

from conftest import lam

A1 = lam(1, 1)
A2 = lam(2, 1)
WORDS1 = enumerate_strings(A1, 8)
WORDS2 = enumerate_strings(A2, 8)
V1 = "beta1^-1 betap1 | gamma1*alpha0^-1 gammap1"


def rules(a, text):
    return {v.rule for v in validate_word(a, parse_word(text, a.quiver))}


def test_parse_finite():
    w = parse_word(".^-1 alpha1 | gamma1^-1 gammap1", A1.quiver)
    assert w.kind == FINITE and len(w.pairs) == 2
    p, q = w.pairs[0]
    assert p.is_trivial and p.source == "a1" and q.arrows == ("alpha1",)


def test_trivial_word():
    w = parse_word(".d0", A1.quiver)
    assert w == trivial_word("d0") and w.is_trivial
    assert serialize_word(w) == ".d0"


@pytest.mark.parametrize("text, kind", [
    (".^-1 alpha1 | gamma1^-1 gammap1 | {" + V1 + "}~", RIGHT),
    ("~{" + V1 + "} | beta1^-1 betap1", LEFT),
    ("~{" + V1 + "}~", BI),
])
def test_parse_periodic(text, kind):
    w = parse_word(text, A1.quiver)
    assert w.kind == kind
    assert validate_word(A1, w) == ()
    assert parse_word(serialize_word(w), A1.quiver) == w


@pytest.mark.parametrize("bad", ["alpha1", "alpha1^-1", "{alpha1^-1 gamma1", "zz^-1 alpha1",
                                 ".^-1 .", "alpha1^-1 beta1~"])
def test_syntax_errors(bad):
    with pytest.raises((WordSyntaxError, WordError)):
        parse_word(bad, A1.quiver)


def test_rule_common_source():
    assert "common source" in rules(A1, "alpha1^-1 gamma1")


def test_rule_distinct_first_arrows():
    assert "distinct first arrows" in rules(A1, "alpha1^-1 alpha1*alphap0")


def test_rule_common_target():
    assert "common target" in rules(A1, "alpha1^-1 alphap1 | beta1^-1 betap1")


def test_rule_distinct_last_arrows():
    assert "distinct last arrows" in rules(A1, ".^-1 alpha1 | alpha1^-1 .")


def test_rule_syllable():
    # in Lambda_2, alpha2*alpha1 equals alphap2*gamma2*gamma1 and is no syllable
    assert "syllable" in rules(A2, ".^-1 alpha2*alpha1")


def test_rule_trivial_only_at_ends():
    assert "trivial syllables only at the ends" in rules(
        A1, ".^-1 alpha1 | .^-1 alphap0")


def test_check_raises_with_rule():
    from sbsyz.words import check_word
    with pytest.raises(WordError) as ei:
        check_word(A1, parse_word("alpha1^-1 gamma1", A1.quiver))
    assert ei.value.rule == "common source"


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(WORDS1 + WORDS2))
def test_serialization_round_trip(w):
    a = A2
    assert parse_word(serialize_word(w), a.quiver) == w


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(WORDS1 + WORDS2))
def test_canonical_properties(w):
    c = canonical_string(w)
    assert canonical_string(c) == c
    assert canonical_string(inverse(w)) == c
    assert inverse(inverse(w)) == w
    assert validate_word(A2, inverse(w)) == ()
    assert total_length(c.pairs) == total_length(w.pairs)


def test_enumeration_is_canonical_and_unique():
    keys = [serialize_word(w) for w in WORDS1]
    assert len(keys) == len(set(keys))
    assert all(canonical_string(w) == w for w in WORDS1)


def test_right_periodic_normalization():
    w = parse_word(".^-1 alpha1 | gamma1^-1 gammap1 | beta1^-1 betap1 | {gamma1*alpha0^-1 gammap1 | "
                   "beta1^-1 betap1}~", A1.quiver)
    c = canonical_string(w)
    assert serialize_word(c) == (".^-1 alpha1 | gamma1^-1 gammap1 | {beta1^-1 betap1 | "
                                 "gamma1*alpha0^-1 gammap1}~")
    assert canonical_string(inverse(w)) == c


def test_left_periodic_canonicalizes_to_right():
    w = parse_word("~{" + V1 + "} | beta1^-1 betap1", A1.quiver)
    assert canonical_string(w).kind == RIGHT


def test_truncate():
    w = parse_word(".^-1 alpha1 | {" + V1 + "}~", A1.quiver)
    t = truncate(w, 3)
    assert t.kind == FINITE and len(t.pairs) == 1 + 6


def test_band_parse_and_validate():
    b = parse_band(V1, A1.quiver)
    assert b.m == 1 and b.phi == (Fraction(1),)
    assert validate_band(A1, b) == ()
    assert is_primitive(A1, b)
    bad = validate_band(A1, BandDatum(b.word + b.word, 1, (1,)))
    assert [v.rule for v in bad] == ["primitive cyclic word"]
    with pytest.raises(WordError):
        check_band(A1, BandDatum(b.word + b.word, 1, (1,)))


def test_band_phi_validation():
    b = parse_band(V1, A1.quiver, m=2, phi=(-1, 1))
    assert validate_band(A1, b) == ()
    with pytest.raises(WordError):
        check_band(A1, BandDatum(b.word, 2, (-1, 2)))   # x^2 - 2x + 1 = (x-1)^2
    with pytest.raises(ValueError):
        BandDatum(b.word, 2, (1,))


def test_companion_irreducible():
    assert companion_irreducible((Fraction(5),))
    assert not companion_irreducible((Fraction(0),))
    assert companion_irreducible((Fraction(2), Fraction(0)))        # x^2 - 2
    assert not companion_irreducible((Fraction(-1), Fraction(2)))   # (x - 1)^2
    assert not companion_irreducible((Fraction(2), Fraction(0)), modulus=7)  # 3^2 = 2 mod 7


def test_phi_text():
    assert parse_phi("-1,1/2") == (Fraction(-1), Fraction(1, 2))
    assert format_phi((Fraction(-1), Fraction(1, 2))) == "-1,1/2"


def test_inverse_phi_is_involution():
    for phi in [(Fraction(3),), (Fraction(-1), Fraction(1)), (Fraction(2), Fraction(5), Fraction(-7))]:
        assert inverse_phi(inverse_phi(phi)) == phi


def test_canonical_band_rotation_and_inversion():
    b = parse_band(V1, A1.quiver, m=2, phi=(2, 0))
    rot = BandDatum(b.word[1:] + b.word[:1], 2, b.phi)
    inv = BandDatum(tuple((q, p) for p, q in reversed(b.word)), 2, inverse_phi(b.phi))
    assert canonical_band(rot) == canonical_band(b) == canonical_band(inv)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(WORDS1))
def test_presentation_dimension_matches_realization(w):
    assert presentation_dimension(A1, w) == realize(A1, string_module(A1, w)).dim()
