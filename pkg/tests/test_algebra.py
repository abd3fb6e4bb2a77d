from fractions import Fraction

import pytest

from sbsyz import build_algebra, normal_form, parse_presentation, syllables
from sbsyz.algebra import TYPE_A, TYPE_B, arrow_continuation, arrow_precedent
from sbsyz.errors import InconsistentRelations, NotAdmissible, NotSpecialBiserial

from conftest import lam


def alg(body, vertices="x y z t"):
    return build_algebra(parse_presentation(f"algebra T {{ vertices: {vertices} ; {body} }}"))


SQUARE = """arrows: a : x -> y ; b : x -> z ; c : y -> t ; d : z -> t ;
relations: rel: a c - 2 * b d ;"""


def test_square_is_type_b():
    a = alg(SQUARE)
    sh = a.shapes["x"]
    assert sh.kind == TYPE_B
    assert {sh.branch1.arrows, sh.branch2.arrows} == {("a", "c"), ("b", "d")}
    assert a.dimension() == 9  # 4 trivial paths, 4 arrows, one socle element
    assert a.dimension() == a.dimension_by_closure()


def test_normal_form_scalar():
    a = alg(SQUARE)
    q = a.quiver
    nf_ac = normal_form(a, q.path(["a", "c"]))
    nf_bd = normal_form(a, q.path(["b", "d"]))
    assert nf_ac.rep == nf_bd.rep
    # a c = 2 b d
    ratio = nf_ac.scalar / nf_bd.scalar
    assert ratio == Fraction(2)


def test_syllables_exclude_identified_paths():
    a = alg(SQUARE)
    names = {p.arrows for p in syllables(a) if not p.is_trivial}
    assert names == {("a",), ("b",), ("c",), ("d",)}


def test_three_arrows_out_fails():
    with pytest.raises(NotSpecialBiserial) as ei:
        alg("arrows: a : x -> y ; b : x -> z ; c : x -> t ; relations:")
    assert ei.value.axiom == "at most two arrows start at each vertex"
    assert ei.value.where == "x"


def test_two_continuations_fail():
    with pytest.raises(NotSpecialBiserial) as ei:
        alg("arrows: a : x -> y ; b : y -> z ; c : y -> t ; relations:")
    assert ei.value.axiom == "at most one arrow continues each arrow"


def test_two_precedents_fail():
    with pytest.raises(NotSpecialBiserial) as ei:
        alg("arrows: a : x -> z ; b : y -> z ; c : z -> t ; relations:")
    assert ei.value.axiom == "at most one arrow precedes each arrow"


def test_non_admissible():
    with pytest.raises(NotAdmissible):
        alg("arrows: l : x -> x ; relations:", vertices="x")


def test_length_one_relation_rejected():
    with pytest.raises(NotAdmissible):
        alg("arrows: a : x -> y ; relations: zero: a ;", vertices="x y")


def test_inconsistent_scalars():
    body = """arrows: a : x -> y ; b : x -> z ; c : y -> t ; d : z -> t ;
    relations: rel: a c - 2 * b d ; rel: b d - 1 * a c ;"""
    with pytest.raises((InconsistentRelations, NotSpecialBiserial)):
        alg(body)


def test_continuations_lambda1():
    a = lam(1, 1)
    assert arrow_continuation(a, "alpha1") == "alphap0"
    assert arrow_continuation(a, "alphap1") is None
    assert arrow_precedent(a, "alphap0") == "alpha1"


def test_dimension_matches_closure_across_family():
    for m in range(1, 6):
        for r in (1, 3):
            a = lam(m, r)
            assert a.dimension() == a.dimension_by_closure()


def test_dimension_strictly_increasing_in_m():
    dims = [lam(m, 2).dimension() for m in range(1, 7)]
    assert dims == sorted(set(dims))


def test_string_algebra_has_only_type_a():
    a = lam(1, 2)
    assert all(a.shapes[v].kind == TYPE_A for v in a.quiver.vertices)
