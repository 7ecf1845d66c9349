import pytest
import random

from fractions import Fraction
from itertools import combinations, permutations

try:
    import generator.exact_core as ec
    from generator.error_handling import ExactError
except ImportError:
    import pacraft.generator.exact_core as ec
    from pacraft.generator.error_handling import ExactError


def test_to_rational():

    assert ec.to_rational("25/2") == Fraction(25, 2)
    assert ec.to_rational(3) == Fraction(3)
    assert ec.to_rational(Fraction(1, 3)) == Fraction(1, 3)
    assert ec.to_rational(" 7 ") == Fraction(7)


def test_to_rational_rejects():

    for value in [0.5, True, "abc", "1/0", None]:
        with pytest.raises(ExactError):
            ec.to_rational(value)


def test_format_rational():

    assert ec.format_rational(Fraction(25, 2)) == "25/2"
    assert ec.format_rational(Fraction(4, 2)) == "2"
    assert ec.format_rational(-3) == "-3"


def test_primitive_direction():

    assert ec.primitive_direction((2, 4, -6)) == (1, 2, -3)
    assert ec.primitive_direction((Fraction(1, 2), Fraction(1, 3))) == (3, 2)
    assert ec.primitive_direction((0, -5)) == (0, -1)


def test_primitive_direction_zero():

    with pytest.raises(ExactError) as e:
        ec.primitive_direction((0, 0, 0))
    assert "zero direction" in e.value.value


def test_canonical_quotient_key():

    assert ec.canonical_quotient_key((3, 1, 2)) == (2, 0, 1)
    assert ec.canonical_quotient_key((-1, 0, 0)) == (0, 1, 1)
    assert ec.canonical_quotient_key((1, 1, 3)) == \
        ec.canonical_quotient_key((0, 0, 2)) == (0, 0, 1)


def test_canonical_quotient_key_lineality():

    with pytest.raises(ExactError) as e:
        ec.canonical_quotient_key((2, 2, 2))
    assert "lineality direction" in e.value.value


def test_halfspace_primitive():

    with pytest.raises(ExactError):
        ec.Halfspace((0, 2, 0), 1)

    h = ec.Halfspace((0, 1, 1), 3)
    assert h.normal == (0, 1, 1)
    assert h.offset == 3
    assert h.contains((5, 1, 2))
    assert h.is_tight((5, 1, 2))
    assert not h.contains((5, 1, 1))


def test_affine_hull_hexagon():

    dim, equalities = ec.affine_hull(permutations((1, 2, 3)))

    assert dim == 2
    assert equalities == [((1, 1, 1), 6)]


def test_affine_hull_point_and_segment():

    dim, equalities = ec.affine_hull([(1, 2)])
    assert dim == 0
    assert equalities == [((1, 0), 1), ((0, 1), 2)]

    dim, equalities = ec.affine_hull([(0, 0), (1, 0)])
    assert dim == 1
    assert equalities == [((0, 1), 0)]


def test_affine_hull_mixed():

    with pytest.raises(ExactError):
        ec.affine_hull([(1, 2), (1, 2, 3)])


def test_canonical_normal():

    assert ec.canonical_normal((1, 2, 3), [(1, 1, 1)]) == (0, 1, 2)
    assert ec.canonical_normal((2, 4)) == (1, 2)
    # segment on the x axis
    assert ec.canonical_normal((1, 0), [(0, 1)]) == (1, 0)
    assert ec.canonical_normal((-1, 5), [(0, 1)]) == (-1, 0)


def test_canonical_normal_constant():

    with pytest.raises(ExactError):
        ec.canonical_normal((0, 3), [(0, 1)])


def test_cone_contains():

    cone = ec.Cone([(1, 0, 0), (0, 1, 0)], 3)

    assert cone.dim == 2
    assert cone.contains((1, 1, 0))
    assert cone.contains((1, 1, 1))
    assert cone.contains((0, 0, 0))
    assert not cone.contains((0, 0, 1))
    assert ec.cone_contains(cone, (3, 1, 0))
    assert ec.cone_dim(cone) == 2


def test_cone_prunes_generators():

    cone = ec.Cone([(1, 0, 0), (0, 1, 0), (1, 1, 0), (2, 2, 2)], 3)

    assert cone.generators == ((0, 1, 0), (1, 0, 0))
    assert cone == ec.Cone([(1, 0, 0), (0, 1, 0)], 3)
    assert cone != ec.Cone([(1, 0, 0)], 3)


def _random_basis(rng, n):
    """n rational vectors of R^(n+1), independent modulo (1, ..., 1)"""

    while True:
        basis = [tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                       for _ in range(n + 1)) for _ in range(n)]
        if ec.rank(basis + [(1,) * (n + 1)]) == n + 1:
            return basis


def test_cone_contains_partial_sums():

    rng = random.Random(4)

    for n in [2, 3]:
        for _ in range(5):
            basis = _random_basis(rng, n)
            for size in range(1, n + 1):
                for j in combinations(range(n), size):
                    h_j = tuple(sum(basis[i][c] for i in j)
                                for c in range(n + 1))
                    for k in range(size):
                        for i in combinations(j, k):
                            h_i = tuple(sum(basis[a][c] for a in i)
                                        for c in range(n + 1))
                            rest = [basis[a] for a in j if a not in i]
                            cone = ec.Cone([h_i] + rest, n + 1)
                            assert cone.contains(h_j)


def test_intersect_cones():

    first = ec.Cone([(1, 0, 0), (1, 1, 0)], 3)
    second = ec.Cone([(0, 1, 0), (1, 1, 0)], 3)

    meet = ec.intersect_cones(first, second)
    assert meet == ec.Cone([(1, 1, 0)], 3)
    assert meet.dim == 1
    assert first.intersect(first) == first


def test_intersect_cones_dims():

    with pytest.raises(ExactError):
        ec.intersect_cones(ec.Cone([(1, 0)], 2), ec.Cone([(1, 0, 0)], 3))


def test_rank():

    assert ec.rank([(1, 0, 0), (0, 1, 0), (1, 1, 0)]) == 2
    assert ec.rank([]) == 0
