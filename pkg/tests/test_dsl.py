from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sbsyz import Binomial, ZeroPath, build_lambda, load_presentation, parse_presentation, render
from sbsyz.errors import DSLSyntaxError

SRC = """
# two arrows into a commutative square corner
algebra Sq {
  vertices: x y z t ;
  arrows:
    a : x -> y ;
    b : x -> z ;
    c : y -> t ;
    d : z -> t ;
  relations:
    rel: a c - 2/3 * b d ;
}
"""


def test_parse_basic():
    p = parse_presentation(SRC)
    assert p.name == "Sq"
    assert p.quiver.vertices == ("x", "y", "z", "t")
    (rel,) = p.relations
    assert isinstance(rel, Binomial)
    assert rel.scalar == Fraction(2, 3)
    assert rel.left.arrows == ("a", "c") and rel.right.arrows == ("b", "d")


def test_negative_scalar_and_zero_relation():
    p = parse_presentation(SRC.replace("2/3", "-5").replace("relations:", "relations: zero: a c ;"))
    assert isinstance(p.relations[0], ZeroPath)
    assert p.relations[1].scalar == -5


def test_zero_scalar_rejected():
    with pytest.raises(DSLSyntaxError):
        parse_presentation(SRC.replace("2/3", "0"))


@pytest.mark.parametrize("bad, line", [
    (SRC.replace("a : x -> y ;", "a : x -> q ;"), 6),
    (SRC.replace("vertices:", "verts:"), 4),
    (SRC.replace("rel: a c", "rel: a d"), 11),
    (SRC.replace("}", ""), None),
])
def test_errors_carry_position(bad, line):
    with pytest.raises(DSLSyntaxError) as ei:
        parse_presentation(bad)
    if line is not None:
        assert ei.value.line == line


def test_round_trip_family():
    for m in (1, 2, 3, 5):
        p = build_lambda(m, 2)
        assert parse_presentation(render(p)).structurally_equal(p)


def test_fixture_matches_builder(fixture_path):
    assert load_presentation(fixture_path).structurally_equal(build_lambda(1, 1))


names = st.sampled_from(["u", "v", "w"])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(names, names), min_size=1, max_size=5),
       st.lists(st.lists(st.integers(0, 4), min_size=2, max_size=3), max_size=3))
def test_round_trip_random(edges, rels):
    arrows = "".join(f"  x{i} : {s} -> {t} ;\n" for i, (s, t) in enumerate(edges))
    rel_lines = []
    for walk in rels:
        path = [f"x{i}" for i in walk if i < len(edges)]
        ok = len(path) >= 2 and all(edges[int(a[1:])][1] == edges[int(b[1:])][0]
                                    for a, b in zip(path, path[1:]))
        if ok:
            rel_lines.append(f"  zero: {' '.join(path)} ;\n")
    text = f"algebra R {{ vertices: u v w ;\n arrows:\n{arrows} relations:\n{''.join(rel_lines)}}}"
    p = parse_presentation(text)
    assert parse_presentation(render(p)).structurally_equal(p)
