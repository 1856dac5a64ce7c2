import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

import properties
from bocskit.algebra import (
    Arrow,
    Path,
    Quiver,
    QuiverError,
    RelationError,
    build_path_algebra,
    concat,
    element_str,
    enumerate_paths,
    minimal_relations,
    scalar,
    trivial,
    word_degree,
    word_source,
    word_target,
)
from bocskit.sampling import random_biquiver


def linear_quiver(n=3):
    names = "abcdefg"
    return Quiver(n, [Arrow(names[i - 1], i, i + 1, 0) for i in range(1, n)])


def P(q, *names):
    # written order: P(q, "b", "a") is b*a
    p = None
    for name in reversed(names):
        a = q.arrow(name)
        step = Path(a.source, a.target, (name,))
        p = step if p is None else concat(step, p)
    return p


class TestScalars:
    def test_coercion(self):
        assert scalar("-3/4") == Fraction(-3, 4)
        assert scalar(sympy.Rational(5, 6)) == Fraction(5, 6)
        assert scalar(2) == 2

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            scalar(0.5)


class TestQuiver:
    def test_directedness_enforced(self):
        with pytest.raises(QuiverError, match="directedness"):
            Quiver(2, [Arrow("x", 2, 1, 0)])

    def test_duplicate_names(self):
        with pytest.raises(QuiverError, match="duplicate"):
            Quiver(2, [Arrow("x", 1, 2, 0), Arrow("x", 1, 2, 1)])

    def test_paths_of_linear_quiver(self):
        paths = enumerate_paths(linear_quiver(4))
        assert len(paths) == 4 + 3 + 2 + 1

    def test_concat_order(self):
        q = linear_quiver()
        ba = P(q, "b", "a")
        assert ba == Path(1, 3, ("b", "a"))
        assert concat(P(q, "a"), P(q, "b")) is None
        assert str(trivial(2)) == "e2"


class TestPathAlgebra:
    def test_free(self):
        A = build_path_algebra(linear_quiver())
        assert A.dim == 6

    def test_zero_relation(self):
        q = linear_quiver()
        A = build_path_algebra(q, [{P(q, "b", "a"): 1}])
        assert A.dim == 5
        assert A.mul_paths(P(q, "b"), P(q, "a")) == {}

    def test_commutative_square(self):
        q = Quiver(4, [Arrow("a", 1, 2, 0), Arrow("b", 2, 4, 0), Arrow("c", 1, 3, 0), Arrow("d", 3, 4, 0)])
        A = build_path_algebra(q, [{P(q, "b", "a"): 1, P(q, "d", "c"): -1}])
        assert A.dim == 4 + 4 + 1
        assert A.normalize({P(q, "b", "a"): 1, P(q, "d", "c"): 1}) in (
            {P(q, "b", "a"): 2},
            {P(q, "d", "c"): 2},
        )

    def test_bad_relations(self):
        q = linear_quiver()
        with pytest.raises(RelationError, match="trivial"):
            build_path_algebra(q, [{trivial(1): 1}])
        with pytest.raises(RelationError, match="homogeneous"):
            build_path_algebra(q, [{P(q, "a"): 1, P(q, "b"): 1}])

    def test_minimal_relations_drops_ideal_members(self):
        q = linear_quiver(4)
        ba, cba = P(q, "b", "a"), P(q, "c", "b", "a")
        kept = minimal_relations(q, [{ba: 1}, {ba: -2}, {cba: 1}])
        assert kept == [{ba: 1}]

    def test_element_str(self):
        e = {(trivial(2), "x", trivial(1)): Fraction(-1, 2)}
        assert element_str(e) == "-1/2 x"


_biquivers = properties.valid_biquivers()


@properties.suite_b
@given(_biquivers, st.integers(0, 10**6))
def test_leibniz_rule(dbq, s):
    rng = random.Random(s)
    T = dbq.tensor
    words = T.basis(0) + T.basis(1)
    x = rng.choice(words)
    y = rng.choice([w for w in words if word_target(w) == word_source(x)])
    xy = T.mul_words(x, y)
    lhs = T.d(xy)
    sign = -1 if word_degree(x) % 2 else 1
    rhs = T.mul(T.d({x: Fraction(1)}), {y: Fraction(1)})
    for w, c in T.mul({x: Fraction(1)}, T.d({y: Fraction(1)})).items():
        rhs[w] = rhs.get(w, 0) + sign * c
    rhs = {w: c for w, c in rhs.items() if c}
    assert lhs == rhs


@properties.suite_b
@given(_biquivers)
def test_differential_squares_to_zero(dbq):
    T = dbq.tensor
    for degree in (0, 1):
        for w in T.basis(degree):
            assert T.d(T.d({w: Fraction(1)})) == {}


def test_sampler_is_deterministic():
    a = random_biquiver(random.Random(7))
    b = random_biquiver(random.Random(7))
    assert a == b
