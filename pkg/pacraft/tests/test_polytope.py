import pytest
import random

from fractions import Fraction
from itertools import permutations, product

try:
    import generator.exact_core as ec
    import generator.polytope as pt
    from generator.error_handling import PolytopeError
except ImportError:
    import pacraft.generator.exact_core as ec
    import pacraft.generator.polytope as pt
    from pacraft.generator.error_handling import PolytopeError


@pytest.fixture
def hexagon():
    return pt.hull(permutations((1, 2, 3)))


@pytest.fixture
def square():
    return pt.hull([(0, 0), (1, 0), (0, 1), (1, 1), (Fraction(1, 2), 0)])


@pytest.fixture
def cube():
    return pt.hull(product((0, 1), repeat=3))


def _hull_in_plane(rng, count=5):
    """Random polygon in the hyperplane sum(x) = 0 of R^3"""

    while True:
        points = []
        for _ in range(count):
            a, b = rng.randint(-4, 4), rng.randint(-4, 4)
            points.append((a, b, -a - b))
        poly = pt.hull(points)
        if poly.dim == 2:
            return poly


def test_hexagon(hexagon):

    assert len(hexagon.vertices) == 6
    assert hexagon.dim == 2
    assert hexagon.equalities == (((1, 1, 1), 6),)
    assert sorted(hexagon.facet_keys) == sorted([
        (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1)])
    assert hexagon.in_sum_class
    assert pt.is_simple(hexagon)


def test_hexagon_offsets(hexagon):

    offsets = {h.normal: h.offset for h in hexagon.facets}

    assert offsets[(0, 0, 1)] == 1
    assert offsets[(1, 1, 0)] == 3


def test_hull_drops_interior_points(square):

    assert square.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert square.dim == 2
    assert not square.in_sum_class
    assert sorted(square.facet_keys) == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_hull_errors():

    with pytest.raises(PolytopeError):
        pt.hull([])

    with pytest.raises(PolytopeError):
        pt.hull([(1, 2), (1, 2, 3)])


def test_hull_single_point():

    p = pt.hull([(1, 2, 3)])

    assert p.dim == 0
    assert p.facets == ()


def test_segment():

    p = pt.hull([(0, 0), (1, 0)])

    assert p.dim == 1
    assert sorted(p.facets) == [ec.Halfspace((-1, 0), -1),
                                ec.Halfspace((1, 0), 0)]


def test_vertex_index(hexagon):

    assert hexagon.vertex_index((3, 2, 1)) == 5
    with pytest.raises(PolytopeError):
        hexagon.vertex_index((2, 2, 2))


def test_edges(hexagon, cube):

    assert len(hexagon.edges()) == 6
    assert len(cube.edges()) == 12
    assert hexagon.neighbours(hexagon.vertex_index((3, 2, 1))) == (3, 4)


def test_vertices_from_hrep():

    square = pt.vertices_from_hrep(
        [], [((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)], 2)

    assert square.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_vertices_from_hrep_equalities(hexagon):

    p = pt.vertices_from_hrep(*pt.facets_of(hexagon), 3)

    assert p == hexagon


def test_vertices_from_hrep_unbounded():

    with pytest.raises(PolytopeError):
        pt.vertices_from_hrep([], [((1, 0), 0), ((0, 1), 0)], 2)


def test_vertices_from_hrep_infeasible():

    with pytest.raises(PolytopeError):
        pt.vertices_from_hrep([], [((1, 0), 1), ((-1, 0), 0)], 2)


def test_minkowski_sum_of_segments():

    first = pt.hull([(0, 0), (1, 0)])
    second = pt.hull([(0, 0), (0, 1)])

    assert pt.minkowski_sum(first, second).vertices == \
        ((0, 0), (0, 1), (1, 0), (1, 1))


def test_minkowski_sum_dims():

    with pytest.raises(PolytopeError):
        pt.minkowski_sum(pt.hull([(0, 0)]), pt.hull([(0, 0, 0)]))


def _pairwise_hull(p, q):
    return pt.hull(tuple(a + b for a, b in zip(u, w))
                   for u in p.vertices for w in q.vertices)


def test_minkowski_sum_matches_hull(hexagon, cube):

    permutohedron = pt.hull(permutations((1, 2, 3, 4)))
    pairs = [
        (hexagon, pt.hull([(0, 2, 0), (1, 0, 1), (2, 0, 0)])),
        (hexagon, pt.hull([(0, 1, 0), (0, 0, 1)])),
        (permutohedron, pt.hull([(1, 0, 0, 0), (0, 1, 0, 0),
                                 (0, 0, 1, 0)])),
        (permutohedron, pt.hull([(0, 0, 0, 1), (0, 0, 1, 0)])),
        (cube, pt.hull([(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)]))
    ]

    for p, q in pairs:
        total = pt.minkowski_sum(p, q)
        expected = _pairwise_hull(p, q)
        assert total.vertices == expected.vertices
        assert total.equalities == expected.equalities
        assert total.facets == expected.facets
        assert total.facet_masks == expected.facet_masks


def test_minkowski_sum_from_facets(hexagon):

    permutohedron = pt.hull(permutations((1, 2, 3, 4)))
    simplex = pt.hull([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])

    assert pt._sum_from_facets(permutohedron, simplex) is not None
    assert pt._sum_from_facets(
        hexagon, pt.hull([(0, 2, 0), (1, 0, 1), (2, 0, 0)])) is not None

    # skew segments: no summand holds the other's affine hull
    first = pt.hull([(0, 0, 0), (1, 0, 0)])
    second = pt.hull([(0, 0, 0), (0, 1, 1)])
    assert pt._sum_from_facets(first, second) is None
    assert len(pt.minkowski_sum(first, second).vertices) == 4


def test_scale_and_translate(hexagon):

    doubled = pt.scale(2, hexagon)
    assert (6, 4, 2) in doubled.vertices
    assert doubled.equalities == (((1, 1, 1), 12),)

    moved = pt.translate((1, 1, 1), hexagon)
    assert moved == pt.hull(permutations((2, 3, 4)))
    assert pt.translate_to_origin(moved).vertices[0] == (0, 0, 0)

    with pytest.raises(PolytopeError):
        pt.scale(0, hexagon)


def test_support_additivity():

    rng = random.Random(11)

    for _ in range(20):
        p = pt.hull([tuple(rng.randint(-5, 5) for _ in range(3))
                     for _ in range(5)])
        q = pt.hull([tuple(rng.randint(-5, 5) for _ in range(3))
                     for _ in range(5)])
        total = pt.minkowski_sum(p, q)
        for _ in range(100):
            d = tuple(rng.randint(-9, 9) for _ in range(3))
            assert pt.support_value(total, d) == \
                pt.support_value(p, d) + pt.support_value(q, d)


def test_cut_with_halfspace(hexagon):

    cut = pt.cut_with_halfspace(hexagon, ec.Halfspace((0, 0, 1), 2))

    assert cut.vertices == ((1, 2, 3), (1, 3, 2), (2, 1, 3), (3, 1, 2))
    assert pt.cut_with_halfspace(hexagon, ec.Halfspace((0, 0, 1), 1)) is \
        hexagon


def test_cut_with_halfspace_empty(hexagon):

    with pytest.raises(PolytopeError) as e:
        pt.cut_with_halfspace(hexagon, ec.Halfspace((0, 0, 1), 4))
    assert "empty cut" in e.value.value


def test_truncation_halfspace(hexagon):

    ids = pt.facets_through(hexagon, [(3, 2, 1)])
    halfspace, face = pt.truncation_halfspace(hexagon, ids, Fraction(1, 2))

    assert sorted(hexagon.facets[f].normal for f in ids) == \
        [(0, 0, 1), (0, 1, 1)]
    assert halfspace == ec.Halfspace((0, 1, 2), Fraction(9, 2))
    assert hexagon.vertices_of(face) == ((3, 2, 1),)


def test_truncate_at_face(hexagon):

    ids = pt.facets_through(hexagon, [(3, 2, 1)])
    truncated, _ = pt.truncate_at_face(hexagon, ids, Fraction(1, 2))

    assert len(truncated.vertices) == 7
    assert len(truncated.facets) == 7
    assert (0, 1, 2) in truncated.facet_keys
    assert pt.is_simple(truncated)


def test_truncation_errors(hexagon):

    ids = pt.facets_through(hexagon, [(3, 2, 1)])

    for c in [0, 1, Fraction(3, 2)]:
        with pytest.raises(PolytopeError):
            pt.truncation_halfspace(hexagon, ids, c)

    # a single facet cannot be truncated
    with pytest.raises(PolytopeError):
        pt.truncation_halfspace(hexagon, ids[:1], Fraction(1, 2))

    # opposite facets do not meet
    opposite = [hexagon.facet_keys.index((0, 0, 1)),
                hexagon.facet_keys.index((1, 1, 0))]
    with pytest.raises(PolytopeError):
        pt.truncation_halfspace(hexagon, opposite, Fraction(1, 2))


def test_is_simple():

    pyramid = pt.hull([(0, 0, 0), (2, 0, 0), (0, 2, 0), (2, 2, 0),
                       (1, 1, 2)])
    assert not pt.is_simple(pyramid)


def test_normal_cone(hexagon):

    cone = pt.normal_cone_at_vertex(hexagon, (3, 2, 1))

    assert cone.dim == 2
    assert cone.contains((1, 0, -1))
    assert cone.contains((3, 2, 1))
    assert not cone.contains((1, 2, 3))


def test_normal_cone_needs_sum_class(square):

    with pytest.raises(PolytopeError):
        pt.normal_cone_at_vertex(square, (0, 0))


def test_normally_equivalent(hexagon):

    assert pt.normally_equivalent(hexagon,
                                  pt.hull(permutations((1, 3, 7))))
    assert pt.normally_equivalent(hexagon, pt.scale(3, hexagon))
    assert not pt.normally_equivalent(
        hexagon, pt.hull([(0, 0, 0), (1, -1, 0), (0, 1, -1)]))


def test_f_vector(hexagon, cube):

    assert pt.f_vector(hexagon) == (6, 6)
    assert pt.f_vector(cube) == (8, 12, 6)
    assert pt.f_vector(cube).satisfies_euler()


def test_faces(cube):

    ids = [cube.facet_keys.index((1, 0, 0)), cube.facet_keys.index((0, 1, 0))]
    face = pt.face_from_facets(cube, ids)

    assert face == ((0, 0, 0), (0, 0, 1))
    assert pt.face_polytope(cube, face).dim == 1


def test_fan_of_random_polygons():

    rng = random.Random(3)
    for _ in range(5):
        p = _hull_in_plane(rng)
        for v in p.vertices:
            cone = pt.normal_cone_at_vertex(p, v)
            assert cone.dim == 2


def test_fan_is_complete():

    rng = random.Random(9)
    polys = [pt.hull(permutations((1, 2, 3, 4)))] + \
        [_hull_in_plane(rng) for _ in range(3)]

    for p in polys:
        cones = pt.vertex_cones(p)
        for _ in range(25):
            d = tuple(rng.randint(-5, 5) for _ in range(p.ambient_dim))
            best = max(range(len(p.vertices)),
                       key=lambda i: ec.dot(d, p.vertices[i]))
            assert cones[best].contains(d)


def test_truncation_cones_subdivide_the_vertex_cone():

    rng = random.Random(21)
    p = pt.hull(permutations((1, 2, 3, 4)))
    truncated, h = pt.truncate_at_face(p, sorted(p.incidence[0]),
                                       Fraction(1, 2))

    old = pt.normal_cone_at_vertex(p, p.vertices[0])
    new = [pt.normal_cone_at_vertex(truncated, w)
           for w in truncated.vertices if h.is_tight(w)]

    assert len(new) == 3
    assert all(old.contains_cone(cone) for cone in new)

    for _ in range(100):
        weights = [rng.randint(0, 5) for _ in old.generators]
        ray = [sum(k * g[i] for k, g in zip(weights, old.generators))
               for i in range(4)]
        assert any(cone.contains(ray) for cone in new)
