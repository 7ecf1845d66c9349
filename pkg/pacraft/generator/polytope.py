import logging

from collections import Counter
from fractions import Fraction
from functools import reduce
from itertools import product
from operator import and_

import cdd

try:
    import generator.exact_core as ec
    from generator.error_handling import PolytopeError
except ImportError:
    import pacraft.generator.exact_core as ec
    from pacraft.generator.error_handling import PolytopeError

logger = logging.getLogger("main.{}".format(__name__))


class Polytope(object):
    """Exact polytope carrying both of its representations

    Instances are built by :py:func:`hull`, :py:func:`minkowski_sum` or the
    operations that call them, and never modified afterwards. The vertex
    list is irredundant and sorted lexicographically; facets are
    irredundant half-spaces with canonical normals (see
    :py:func:`exact_core.canonical_normal`), sorted by normal.

    Parameters
    ----------
    vertices : list
        Extreme points, already sorted.
    equalities : list
        ``(normal, offset)`` pairs of the affine hull.
    facets : list of exact_core.Halfspace
        Facet-defining half-spaces.
    facet_masks : list of int, optional
        Bit ``i`` of ``facet_masks[f]`` is set when vertex ``i`` lies on
        facet ``f``. Derived from the vertices when not given.
    """

    def __init__(self, vertices, equalities, facets, facet_masks=None):

        self.vertices = tuple(tuple(v) for v in vertices)
        """
        tuple: Vertices as tuples of :py:class:`fractions.Fraction`.
        """

        self.ambient_dim = len(self.vertices[0])
        """
        int: Number of coordinates.
        """

        self.equalities = tuple((tuple(a), ec.to_rational(b))
                                for a, b in equalities)
        """
        tuple: Equality system of the affine hull as (normal, offset).
        """

        self.facets = tuple(facets)
        """
        tuple: Facet half-spaces; the position of a facet is its id.
        """

        if facet_masks is None:
            facet_masks = [sum(1 << i for i, v in enumerate(self.vertices)
                               if h.is_tight(v)) for h in self.facets]
        self.facet_masks = tuple(facet_masks)
        """
        tuple: Vertex bitmask of every facet.
        """

        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._incidence = None
        self._edges = None

    @property
    def dim(self):
        return self.ambient_dim - len(self.equalities)

    @property
    def full_mask(self):
        return (1 << len(self.vertices)) - 1

    @property
    def equality_normals(self):
        return tuple(a for a, _ in self.equalities)

    @property
    def facet_keys(self):
        return tuple(h.normal for h in self.facets)

    @property
    def incidence(self):
        """Tuple with the frozenset of tight facet ids of every vertex"""

        if self._incidence is None:
            self._incidence = tuple(
                frozenset(f for f, mask in enumerate(self.facet_masks)
                          if mask >> i & 1)
                for i in range(len(self.vertices)))
        return self._incidence

    @property
    def in_sum_class(self):
        """True when the polytope lies in some hyperplane
        ``x_1 + ... + x_d = const``, so its normal cones are defined modulo
        the all-ones direction"""

        normals = list(self.equality_normals)
        if not normals:
            return False
        ones = (1,) * self.ambient_dim
        return ec.rank(normals + [ones]) == len(normals)

    def vertex_index(self, v):

        try:
            return self._index[ec.as_vector(v)]
        except KeyError:
            raise PolytopeError("{} is not a vertex of the polytope".format(
                [ec.format_rational(x) for x in v]))

    def tight_keys(self, i):
        """Normals of the facets through vertex ``i``"""
        return frozenset(self.facets[f].normal for f in self.incidence[i])

    def mask_of(self, facet_ids):
        """Vertex bitmask of the intersection of the given facets"""

        mask = self.full_mask
        for f in facet_ids:
            try:
                mask &= self.facet_masks[f]
            except (IndexError, TypeError):
                raise PolytopeError("invalid facet id {!r}".format(f))
        return mask

    def vertices_of(self, mask):
        return tuple(v for i, v in enumerate(self.vertices) if mask >> i & 1)

    def is_edge(self, i, j):
        """Combinatorial edge test: no third vertex lies on every facet
        common to vertices ``i`` and ``j``"""

        if i == j:
            return False
        common = self.incidence[i] & self.incidence[j]
        return self.mask_of(common) == (1 << i) | (1 << j)

    def edges(self):
        """All edges as sorted vertex index pairs"""

        if self._edges is None:
            count = len(self.vertices)
            self._edges = tuple((i, j) for i in range(count)
                                for j in range(i + 1, count)
                                if self.is_edge(i, j))
        return self._edges

    def neighbours(self, i):
        return tuple(j for j in range(len(self.vertices)) if self.is_edge(i, j))

    def to_dict(self):
        """JSON-ready dictionary with every rational as a ``"p/q"`` string"""

        return {
            "ambient_dim": self.ambient_dim,
            "vertices": [[ec.format_rational(x) for x in v]
                         for v in self.vertices],
            "equalities": [{"normal": list(a),
                            "offset": ec.format_rational(b)}
                           for a, b in self.equalities],
            "facets": [h.to_dict() for h in self.facets]
        }

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return "Polytope(dim={}, vertices={}, facets={})".format(
            self.dim, len(self.vertices), len(self.facets))


class FVector(object):
    """Face counts ``counts[i]`` of the ``i``-dimensional proper faces"""

    def __init__(self, counts, dim):

        self.counts = tuple(counts)
        self.dim = dim

    @property
    def euler_characteristic(self):
        return sum((-1) ** i * c for i, c in enumerate(self.counts))

    def satisfies_euler(self):
        return self.euler_characteristic == 1 - (-1) ** self.dim

    def __eq__(self, other):
        if isinstance(other, FVector):
            return self.counts == other.counts
        return self.counts == tuple(other)

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, item):
        return self.counts[item]

    def __repr__(self):
        return "FVector{}".format(self.counts)


def _candidate_rows(points):
    """Inequalities ``<a, x> >= b`` found by cdd for integer points, as
    integer (a, b) pairs; linearity rows and the trivial row are skipped"""

    mat = cdd.Matrix([[1] + list(p) for p in points], number_type="fraction")
    mat.rep_type = cdd.RepType.GENERATOR

    rows = []
    for row, is_linear in ec.matrix_rows(
            cdd.Polyhedron(mat).get_inequalities()):
        if is_linear or not any(row[1:]):
            continue
        scale_by = reduce(ec.lcm, (x.denominator for x in row), 1)
        ints = [x.numerator * (scale_by // x.denominator) for x in row]
        rows.append((tuple(ints[1:]), -ints[0]))

    return rows


def hull(points):
    """Convex hull of a finite point set, in exact arithmetic

    The candidate inequalities come from a cdd double description run; a
    point is a vertex exactly when no other point lies on every candidate
    hyperplane through it. Facets are then re-derived on the vertices with
    canonical normals, and rows whose tight set is strictly contained in
    another's are dropped.

    Parameters
    ----------
    points : iterable
        Non-empty collection of rational vectors of a common length.

    Returns
    -------
    Polytope
    """

    pts = sorted({ec.as_vector(p) for p in points})
    if not pts:
        raise PolytopeError("convex hull of an empty point set")

    ambient_dim = len(pts[0])
    if any(len(p) != ambient_dim for p in pts):
        raise PolytopeError("mixed ambient dimensions {}".format(
            sorted({len(p) for p in pts})))

    if len(pts) == 1:
        _, equalities = ec.affine_hull(pts)
        return Polytope(pts, equalities, ())

    denom = reduce(ec.lcm, (x.denominator for p in pts for x in p), 1)
    scaled = [tuple(x.numerator * (denom // x.denominator) for x in p)
              for p in pts]

    full = (1 << len(pts)) - 1
    tight_at = [[] for _ in pts]
    row_masks = []
    for normal, offset in _candidate_rows(scaled):
        mask = 0
        for i, p in enumerate(scaled):
            if ec.dot(normal, p) == offset:
                mask |= 1 << i
        if mask == full:
            continue
        for i in range(len(pts)):
            if mask >> i & 1:
                tight_at[i].append(len(row_masks))
        row_masks.append((normal, mask))

    vertex_ids = []
    for i in range(len(pts)):
        common = full
        for r in tight_at[i]:
            common &= row_masks[r][1]
        if common == 1 << i:
            vertex_ids.append(i)

    vertices = [pts[i] for i in vertex_ids]
    scaled_vertices = [scaled[i] for i in vertex_ids]
    _, equalities = ec.affine_hull(vertices)
    equality_normals = [a for a, _ in equalities]

    candidates = {}
    for normal, _ in row_masks:
        key = ec.canonical_normal(normal, equality_normals)
        if key in candidates:
            continue
        values = [ec.dot(key, v) for v in scaled_vertices]
        low = min(values)
        mask = sum(1 << j for j, value in enumerate(values) if value == low)
        candidates[key] = (Fraction(low, denom), mask)

    masks = {mask for _, mask in candidates.values()}
    facets = []
    for key in sorted(candidates):
        offset, mask = candidates[key]
        if any(other != mask and other & mask == mask for other in masks):
            continue
        facets.append((ec.Halfspace(key, offset), mask))

    logger.debug("hull: {} points -> {} vertices, {} facets".format(
        len(pts), len(vertices), len(facets)))

    return Polytope(vertices, equalities, [h for h, _ in facets],
                    facet_masks=[m for _, m in facets])


def facets_of(p):
    """The equality system and facet half-spaces of ``p``"""
    return list(p.equalities), list(p.facets)


def vertices_from_hrep(equalities, halfspaces, ambient_dim):
    """Polytope of an exact H-representation

    Parameters
    ----------
    equalities : list
        ``(normal, offset)`` pairs meaning ``<normal, x> = offset``.
    halfspaces : list
        ``(normal, offset)`` pairs (or :py:class:`exact_core.Halfspace`)
        meaning ``<normal, x> >= offset``.
    ambient_dim : int

    Returns
    -------
    Polytope
    """

    def as_row(normal, offset):
        normal = list(ec.as_vector(normal))
        if len(normal) != ambient_dim:
            raise PolytopeError("constraint {} does not have {} "
                                "coordinates".format(normal, ambient_dim))
        return [-ec.to_rational(offset)] + normal

    mat = cdd.Matrix([[1] + [0] * ambient_dim], number_type="fraction")
    inequalities = [as_row(a, b) for a, b in halfspaces]
    equations = [as_row(a, b) for a, b in equalities]
    if inequalities:
        mat.extend(inequalities)
    if equations:
        mat.extend(equations, linear=True)
    mat.rep_type = cdd.RepType.INEQUALITY

    points = []
    for row, is_linear in ec.matrix_rows(cdd.Polyhedron(mat).get_generators()):
        if is_linear or row[0] == 0:
            raise PolytopeError("unbounded system: the solution set contains "
                                "the direction {}".format(
                                    [ec.format_rational(x) for x in row[1:]]))
        points.append(tuple(x / row[0] for x in row[1:]))

    if not points:
        raise PolytopeError("infeasible system: no point satisfies the "
                            "{} constraints".format(
                                len(inequalities) + len(equations)))

    logger.debug("vertices_from_hrep: {} half-spaces -> {} points".format(
        len(inequalities), len(points)))

    return hull(points)


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _meet(masks, start):
    return reduce(and_, masks, start)


def _add(u, w):
    return tuple(a + b for a, b in zip(u, w))


def _sum_equalities(p, q):
    """Equalities and dimension of ``p + q`` when the affine hull of one
    summand is parallel to a subspace of the other's, else (None, None)"""

    for big, small in ((p, q), (q, p)):
        w = small.vertices[0]
        if all(len({ec.dot(a, v) for v in small.vertices}) == 1
               for a, _ in big.equalities):
            return [(a, b + ec.dot(a, w)) for a, b in big.equalities], \
                big.dim

    return None, None


def _argmin(normal, points):
    values = [ec.dot(normal, x) for x in points]
    low = min(values)
    return [i for i, value in enumerate(values) if value == low]


def _summand_rows(p, q):
    """Supporting functionals of both summands as ``(normal, left,
    right)``, with ``left`` and ``right`` the minimizing vertex ids in
    ``p`` and ``q``

    Facet normals are taken from both summands, and so are both signs of
    each equality normal of one summand that is not constant on the other.
    """

    rows = []
    for h, mask in zip(p.facets, p.facet_masks):
        rows.append((h.normal, list(_bits(mask)),
                     _argmin(h.normal, q.vertices)))
    for h, mask in zip(q.facets, q.facet_masks):
        rows.append((h.normal, _argmin(h.normal, p.vertices),
                     list(_bits(mask))))

    every_p = list(range(len(p.vertices)))
    every_q = list(range(len(q.vertices)))
    for a in q.equality_normals:
        for normal in (a, tuple(-x for x in a)):
            left = _argmin(normal, p.vertices)
            if len(left) < len(every_p):
                rows.append((normal, left, every_q))
    for a in p.equality_normals:
        for normal in (a, tuple(-x for x in a)):
            right = _argmin(normal, q.vertices)
            if len(right) < len(every_q):
                rows.append((normal, every_p, right))

    return rows


def _closed_under_edges(masks, count, dim):
    """True iff every point lies on exactly ``dim`` of the facet masks,
    those facets meet in the point alone and dropping any one of them
    leaves exactly one other point: then the points are all the vertices
    of the polyhedron the facets define"""

    tight = [[] for _ in range(count)]
    for mask in masks:
        for k in _bits(mask):
            tight[k].append(mask)

    full = (1 << count) - 1
    for k, through in enumerate(tight):
        if len(through) != dim or _meet(through, full) != 1 << k:
            return False
        for t in range(dim):
            edge = _meet(through[:t] + through[t + 1:], full)
            if bin(edge).count("1") != 2:
                return False

    return True


def _sum_from_facets(p, q):
    """``p + q`` when the facet normals of the summands already contain
    every facet normal of the sum and the sum is simple, else None

    Only vertex pairs tight on at least ``dim`` summand facets are kept;
    :py:func:`_closed_under_edges` certifies the outcome.
    """

    equalities, dim = _sum_equalities(p, q)
    if equalities is None or dim < 2:
        return None

    rows = _summand_rows(p, q)
    counts = Counter(pair for _, left, right in rows
                     for pair in product(left, right))
    kept = {pair for pair, k in counts.items() if k >= dim}

    points = sorted({_add(p.vertices[i], q.vertices[j]) for i, j in kept})
    index = {x: k for k, x in enumerate(points)}
    point_of = {(i, j): index[_add(p.vertices[i], q.vertices[j])]
                for i, j in kept}

    masks = []
    for _, left, right in rows:
        mask = 0
        for pair in product(left, right):
            if pair in point_of:
                mask |= 1 << point_of[pair]
        masks.append(mask)

    full = (1 << len(points)) - 1
    tight_at = [[] for _ in points]
    for mask in masks:
        for k in _bits(mask):
            tight_at[k].append(mask)
    vertex_ids = [k for k, through in enumerate(tight_at)
                  if _meet(through, full) == 1 << k]
    position = {k: i for i, k in enumerate(vertex_ids)}
    vertices = [points[k] for k in vertex_ids]

    equality_normals = [a for a, _ in equalities]
    by_key = {}
    for (normal, _, _), mask in zip(rows, masks):
        mask = sum(1 << position[k] for k in _bits(mask) if k in position)
        if mask:
            by_key.setdefault(ec.canonical_normal(normal, equality_normals),
                              mask)

    vertex_full = (1 << len(vertices)) - 1
    distinct = set(by_key.values())
    facets = []
    for key in sorted(by_key):
        mask = by_key[key]
        if mask == vertex_full or any(other != mask and other & mask == mask
                                      for other in distinct):
            continue
        offset = ec.dot(key, vertices[next(_bits(mask))])
        facets.append((ec.Halfspace(key, offset), mask))

    if not _closed_under_edges([m for _, m in facets], len(vertices), dim):
        return None

    return Polytope(vertices, equalities, [h for h, _ in facets],
                    facet_masks=[m for _, m in facets])


def minkowski_sum(p, q):
    """Minkowski sum ``p + q``

    Simple sums whose facet normals all come from the summands are read off
    the summand facets; any other sum is the hull of all pairwise vertex
    sums.
    """

    if p.ambient_dim != q.ambient_dim:
        raise PolytopeError("Minkowski sum of polytopes in dimensions {} and "
                            "{}".format(p.ambient_dim, q.ambient_dim))

    summed = _sum_from_facets(p, q)
    if summed is not None:
        return summed

    logger.debug("minkowski_sum: hull of {} pairwise sums".format(
        len(p.vertices) * len(q.vertices)))

    return hull(_add(u, w) for u in p.vertices for w in q.vertices)


def scale(factor, p):

    factor = ec.to_rational(factor)
    if factor <= 0:
        raise PolytopeError("scaling factor must be positive, got {}".format(
            ec.format_rational(factor)))

    return Polytope(
        [tuple(factor * x for x in v) for v in p.vertices],
        [(a, factor * b) for a, b in p.equalities],
        [ec.Halfspace(h.normal, factor * h.offset) for h in p.facets],
        facet_masks=p.facet_masks)


def translate(t, p):

    t = ec.as_vector(t)
    if len(t) != p.ambient_dim:
        raise PolytopeError("translation {} does not have {} "
                            "coordinates".format(t, p.ambient_dim))

    return Polytope(
        [tuple(x + y for x, y in zip(v, t)) for v in p.vertices],
        [(a, b + ec.dot(a, t)) for a, b in p.equalities],
        [ec.Halfspace(h.normal, h.offset + ec.dot(h.normal, t))
         for h in p.facets],
        facet_masks=p.facet_masks)


def translate_to_origin(p):
    """Translate of ``p`` whose lexicographically first vertex is 0"""
    return translate(tuple(-x for x in p.vertices[0]), p)


def support_value(p, direction):
    direction = ec.as_vector(direction)
    return max(ec.dot(direction, v) for v in p.vertices)


def cut_with_halfspace(p, h):
    """Intersection of ``p`` with the half-space ``h``

    Vertices on or inside ``h`` are kept; every edge joining a strictly
    inside vertex to a strictly beyond one contributes its crossing point.

    Parameters
    ----------
    p : Polytope
    h : exact_core.Halfspace

    Returns
    -------
    Polytope
    """

    values = [h.value(v) for v in p.vertices]
    beyond = [i for i, value in enumerate(values) if value < h.offset]

    if not beyond:
        return p
    if len(beyond) == len(values):
        raise PolytopeError("empty cut: every vertex lies beyond {}".format(
            h.to_dict()))

    inside = [i for i, value in enumerate(values) if value > h.offset]
    points = [v for v, value in zip(p.vertices, values) if value >= h.offset]

    for i in beyond:
        for j in inside:
            if not p.is_edge(i, j):
                continue
            t = (values[j] - h.offset) / (values[j] - values[i])
            u, w = p.vertices[j], p.vertices[i]
            points.append(tuple(a + t * (b - a) for a, b in zip(u, w)))

    return hull(points)


def truncation_halfspace(p, facet_subset, c):
    """Cutting half-space of a parallel truncation at a face

    The normal is the sum of the inward normals of the chosen facets; ``c``
    places the hyperplane between the face (``c = 0``) and the nearest
    vertex off the face (``c = 1``).

    Parameters
    ----------
    p : Polytope
    facet_subset : iterable of int
        Facet ids whose intersection is a proper, non-facet face.
    c : rational in (0, 1)

    Returns
    -------
    halfspace : exact_core.Halfspace
    face : int
        Vertex bitmask of the truncated face.
    """

    c = ec.to_rational(c)
    if not 0 < c < 1:
        raise PolytopeError("truncation depth must lie in (0, 1), got "
                            "{}".format(ec.format_rational(c)))

    ids = sorted(set(facet_subset))
    face = p.mask_of(ids)

    if not ids or face == 0:
        raise PolytopeError("facets {} have an empty intersection".format(ids))
    if face == p.full_mask:
        raise PolytopeError("facets {} do not cut out a proper face".format(
            ids))
    if face in p.facet_masks:
        raise PolytopeError("facets {} intersect in a facet, which cannot be "
                            "truncated".format(ids))

    direction = [sum(p.facets[f].normal[i] for f in ids)
                 for i in range(p.ambient_dim)]
    normal = ec.canonical_normal(direction, p.equality_normals)

    values = [ec.dot(normal, v) for v in p.vertices]
    on_face = [values[i] for i in range(len(values)) if face >> i & 1]
    off_face = [values[i] for i in range(len(values)) if not face >> i & 1]

    low, nearest = on_face[0], min(off_face)

    return ec.Halfspace(normal, low + c * (nearest - low)), face


def truncate_at_face(p, facet_subset, c):
    """Parallel truncation of ``p`` at the face cut out by ``facet_subset``

    Returns
    -------
    truncated : Polytope
    halfspace : exact_core.Halfspace
        See :py:func:`truncation_halfspace`.
    """

    halfspace, face = truncation_halfspace(p, facet_subset, c)
    logger.debug("truncate_at_face: facets {}, {} face vertices".format(
        sorted(set(facet_subset)), bin(face).count("1")))

    return cut_with_halfspace(p, halfspace), halfspace


def facets_through(p, vertices):
    """Ids of the facets containing every given vertex"""

    mask = 0
    for v in vertices:
        mask |= 1 << p.vertex_index(v)
    return [f for f, m in enumerate(p.facet_masks) if m & mask == mask]


def is_simple(p):
    return all(len(tight) == p.dim for tight in p.incidence)


def normal_cone_at_vertex(p, v):
    """Normal cone of ``p`` at vertex ``v`` in the all-ones quotient

    Generated by the outward normals of the facets through ``v``; equality
    normals other than the all-ones one add their line to the cone.
    """

    i = p.vertex_index(v)
    if not p.in_sum_class:
        raise PolytopeError("normal cones are taken modulo (1, ..., 1); the "
                            "polytope does not lie in a hyperplane "
                            "sum(x) = const")

    generators = [tuple(-a for a in p.facets[f].normal)
                  for f in sorted(p.incidence[i])]
    for a in p.equality_normals:
        if not ec.is_lineality(a):
            generators.append(a)
            generators.append(tuple(-x for x in a))

    return ec.Cone(generators, p.ambient_dim)


def vertex_cones(p):
    """Normal cone of every vertex, in vertex order"""
    return [normal_cone_at_vertex(p, v) for v in p.vertices]


def normally_equivalent(p, q):
    """Compares normal fans through facet normals and vertex cone data

    True iff the affine hulls are parallel, the canonical facet normals
    coincide and the family of tight normal sets over the vertices is the
    same for both polytopes.
    """

    if p.ambient_dim != q.ambient_dim:
        return False
    if p.equality_normals != q.equality_normals:
        return False
    if len(p.vertices) != len(q.vertices):
        return False
    if sorted(p.facet_keys) != sorted(q.facet_keys):
        return False

    family_p = {p.tight_keys(i) for i in range(len(p.vertices))}
    family_q = {q.tight_keys(i) for i in range(len(q.vertices))}

    return family_p == family_q


def face_masks(p):
    """Vertex bitmasks of every nonempty proper face"""

    faces = set(p.facet_masks)
    frontier = set(faces)
    while frontier:
        found = set()
        for mask in frontier:
            for facet in p.facet_masks:
                meet = mask & facet
                if meet and meet != mask and meet not in faces:
                    found.add(meet)
        faces |= found
        frontier = found

    return faces


def f_vector(p):
    """Numbers of faces of every dimension below ``p.dim``"""

    faces = face_masks(p)
    dims = {}

    def face_dim(mask):
        if mask not in dims:
            below = [mask & f for f in p.facet_masks]
            below = [m for m in below if m and m != mask]
            dims[mask] = 1 + max(face_dim(m) for m in below) if below else 0
        return dims[mask]

    counts = [0] * p.dim
    for mask in sorted(faces, key=lambda m: bin(m).count("1")):
        counts[face_dim(mask)] += 1

    return FVector(counts, p.dim)


def face_from_facets(p, facet_ids):
    """Vertices lying on every listed facet"""
    return p.vertices_of(p.mask_of(facet_ids))


def face_polytope(p, vertices):
    """The face spanned by ``vertices`` as a polytope of its own"""
    return hull(vertices)
