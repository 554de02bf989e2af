import random

import pytest

from nclg.quiver import AlgebraElement, Path, Quiver, compose_paths
from nclg.scalars import RATIONALS


def conifold_quiver():
    return Quiver(
        vertices=["v1", "v2"],
        arrows=[("x", "v2", "v1"), ("y", "v1", "v2"), ("z", "v2", "v1"), ("w", "v1", "v2")],
    )


def test_compose_identity_paths():
    q = conifold_quiver()
    p = q.parse_word("x.y")
    at_head = q.trivial_path(q.path_head(p))
    at_tail = q.trivial_path(q.path_tail(p))
    assert compose_paths(q, p, at_head) == p
    assert compose_paths(q, at_tail, p) == p


def test_compose_conifold_loop():
    q = conifold_quiver()
    x = q.arrow_path("x")
    y = q.arrow_path("y")
    # y first, then x: the loop displayed x.y, based at v1
    loop = compose_paths(q, y, x)
    assert loop == q.parse_word("x.y")
    assert q.path_tail(loop) == "v1" and q.path_head(loop) == "v1"


def test_compose_non_composable_is_zero():
    q = conifold_quiver()
    x = q.arrow_path("x")
    assert compose_paths(q, x, x) is None


def test_word_display_roundtrip():
    q = conifold_quiver()
    p = q.parse_word("x.y.z.w")
    assert p.display() == ("x", "y", "z", "w")
    assert q.path_tail(p) == "v1" and q.path_head(p) == "v1"


def test_algebra_mul_matches_word_concatenation():
    q = conifold_quiver()
    R = RATIONALS
    x = AlgebraElement.from_word(q, R, ["x"])
    y = AlgebraElement.from_word(q, R, ["y"])
    xy = x * y
    assert list(xy.terms) == [q.parse_word("x.y")]


def test_algebra_mul_zero_absorbs():
    q = conifold_quiver()
    R = RATIONALS
    x = AlgebraElement.from_word(q, R, ["x"])
    zero = AlgebraElement.zero(q, R)
    assert (x * zero).is_zero()
    assert (zero * x).is_zero()


def test_four_loops_expansion():
    q = conifold_quiver()
    R = RATIONALS
    xz = AlgebraElement.from_word(q, R, ["x"]) + AlgebraElement.from_word(q, R, ["z"])
    yw = AlgebraElement.from_word(q, R, ["y"]) + AlgebraElement.from_word(q, R, ["w"])
    prod = xz * yw
    expected = {q.parse_word(w) for w in ["x.y", "x.w", "z.y", "z.w"]}
    assert set(prod.terms) == expected


def test_truncate_behaviour():
    q = conifold_quiver()
    R = RATIONALS
    a = AlgebraElement.from_word(q, R, ["x", "y", "z", "w"]) + AlgebraElement.from_word(q, R, ["x"])
    t3 = a.truncate(3)
    assert set(t3.terms) == {q.parse_word("x")}
    t4 = a.truncate(4)
    assert set(t4.terms) == {q.parse_word("x"), q.parse_word("x.y.z.w")}
    assert t4.truncate(4) == t4


def _random_element(q, R, rng, cap=6):
    words = ["x.y", "z.w", "x.w", "z.y", "x.y.z.w", "x"]
    elem = AlgebraElement.zero(q, R, cap)
    for w in rng.sample(words, 3):
        elem = elem + AlgebraElement.from_word(
            q, R, w.split("."), coeff=R.coerce(rng.randint(-3, 3)), cap=cap
        )
    return elem


def test_associativity_random_triples():
    q = conifold_quiver()
    R = RATIONALS
    rng = random.Random(7)
    for _ in range(25):
        a, b, c = (_random_element(q, R, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_unit_decomposes_into_idempotents():
    q = conifold_quiver()
    R = RATIONALS
    rng = random.Random(11)
    unit = AlgebraElement.unit(q, R, cap=6)
    for _ in range(10):
        a = _random_element(q, R, rng)
        assert unit * a == a
        assert a * unit == a


def test_product_degree_bound():
    q = conifold_quiver()
    R = RATIONALS
    rng = random.Random(3)
    for _ in range(10):
        a = _random_element(q, R, rng, cap=8)
        b = _random_element(q, R, rng, cap=8)
        prod = a * b
        assert prod.word_degree() <= a.word_degree() + b.word_degree()


def test_mismatched_rings_rejected():
    q = conifold_quiver()
    from nclg.scalars import ComplexRing

    a = AlgebraElement.from_word(q, RATIONALS, ["x"])
    b = AlgebraElement.from_word(q, ComplexRing(), ["y"])
    with pytest.raises(ValueError):
        a * b
