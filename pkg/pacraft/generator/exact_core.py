"""
Exact rational scalars, vectors, half-spaces, affine hulls and the quotient
cones used to compare normal fans.

Every number that enters this module is turned into a
:py:class:`fractions.Fraction`; floats are refused. Linear algebra (ranks,
null spaces, row reduction) is delegated to :py:mod:`sympy` and the
double description conversions behind cone membership to :py:mod:`cdd`
(pycddlib) in its exact ``fraction`` mode.

Cones live in the quotient of the ambient space by the all-ones direction:
every polytope handled by pacraft sits in a hyperplane
``x_1 + ... + x_{n+1} = const``, so normals are only meaningful modulo
``(1, ..., 1)``. :py:func:`canonical_quotient_key` picks the representative.
"""

import logging

from collections import namedtuple
from fractions import Fraction
from functools import reduce, lru_cache
from math import gcd

import cdd
import sympy

try:
    from generator.error_handling import ExactError
except ImportError:
    from pacraft.generator.error_handling import ExactError

logger = logging.getLogger("main.{}".format(__name__))


def lcm(a, b):
    return a * b // gcd(a, b)


def to_rational(value):
    """Converts a scalar into an exact :py:class:`fractions.Fraction`

    Integers, fractions, sympy rationals and strings such as ``"25/2"`` are
    accepted. Floats (and anything else) raise, since a binary float cannot
    carry the exact offsets the construction needs.

    Parameters
    ----------
    value : int or Fraction or str or sympy.Rational

    Returns
    -------
    Fraction
    """

    if isinstance(value, bool):
        raise ExactError("boolean {!r} is not a rational".format(value))

    if isinstance(value, Fraction):
        return value

    if isinstance(value, int):
        return Fraction(value)

    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))

    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ExactError("'{}' is not an exact rational".format(value))

    raise ExactError("cannot take {!r} as an exact rational (only int, "
                     "Fraction and 'p/q' strings are accepted)".format(value))


def format_rational(value):
    """Serializes a rational as ``"p/q"``, or ``"p"`` when ``q`` is 1"""

    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "{}/{}".format(value.numerator, value.denominator)


def as_vector(coords):
    """Returns the coordinates as a tuple of fractions"""
    return tuple(to_rational(x) for x in coords)


def dot(a, x):
    return sum(ai * xi for ai, xi in zip(a, x))


def is_lineality(v):
    """True when ``v`` is a multiple of the all-ones vector (zero included)"""
    return len(set(v)) <= 1


def primitive_direction(v):
    """Returns the primitive integer vector pointing along ``v``

    The result is ``lambda * v`` for the unique positive rational
    ``lambda`` that makes the entries coprime integers. The sign of ``v``
    is preserved.

    Parameters
    ----------
    v : sequence
        Rational direction, not zero.

    Returns
    -------
    tuple of int
    """

    coords = as_vector(v)
    if not any(coords):
        raise ExactError("zero direction")

    denom = reduce(lcm, (x.denominator for x in coords), 1)
    ints = [x.numerator * (denom // x.denominator) for x in coords]
    common = reduce(gcd, (abs(x) for x in ints))

    return tuple(x // common for x in ints)


def canonical_quotient_key(v):
    """Canonical representative of ``v`` modulo ``span(1, ..., 1)``

    The minimum entry is subtracted from every coordinate and the result
    is made primitive, so every class has exactly one key and all keys have
    a zero entry and no negative ones.

    Parameters
    ----------
    v : sequence
        Rational vector which is not a multiple of the all-ones vector.

    Returns
    -------
    tuple of int
    """

    coords = as_vector(v)
    low = min(coords)
    shifted = [x - low for x in coords]
    if not any(shifted):
        raise ExactError("lineality direction {}".format(
            [format_rational(x) for x in coords]))

    return primitive_direction(shifted)


def _sympy_matrix(rows):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator)
                          for x in as_vector(row)] for row in rows])


def rank(vectors):
    """Exact rank of a list of rational vectors"""

    vectors = [v for v in vectors]
    if not vectors:
        return 0
    return _sympy_matrix(vectors).rank()


def affine_hull(points):
    """Dimension and equality system of the affine hull of ``points``

    The equalities are the reduced row echelon basis of the null space of
    the difference matrix, each row scaled to a primitive integer normal.
    Points on a hyperplane ``x_1 + ... + x_d = s`` therefore always report
    the single equality ``((1, ..., 1), s)``.

    Parameters
    ----------
    points : list
        Non-empty list of rational vectors of a common length.

    Returns
    -------
    dim : int
    equalities : list of (tuple of int, Fraction)
    """

    pts = [as_vector(p) for p in points]
    if not pts:
        raise ExactError("affine hull of an empty point set")

    ambient_dim = len(pts[0])
    if any(len(p) != ambient_dim for p in pts):
        raise ExactError("mixed ambient dimensions {}".format(
            sorted({len(p) for p in pts})))

    base = pts[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in pts[1:]]
    diffs = [row for row in diffs if any(row)]

    if diffs:
        kernel = _sympy_matrix(diffs).nullspace()
        if kernel:
            reduced = sympy.Matrix.hstack(*kernel).T.rref()[0]
            normals = [primitive_direction(as_vector(reduced.row(i)))
                       for i in range(reduced.rows)]
        else:
            normals = []
    else:
        normals = [tuple(int(i == j) for j in range(ambient_dim))
                   for i in range(ambient_dim)]

    equalities = [(a, dot(a, base)) for a in normals]

    return ambient_dim - len(equalities), equalities


def is_sum_hyperplane(equality_normals):
    """True when the equalities are exactly ``x_1 + ... + x_d = const``"""

    normals = list(equality_normals)
    return len(normals) == 1 and set(normals[0]) == {1}


@lru_cache(maxsize=256)
def _trailing_pivot_basis(equality_normals):
    """Row echelon basis of the equality normals with pivots on the last
    columns, as (pivot column, row) pairs"""

    reversed_rows = [tuple(reversed(a)) for a in equality_normals]
    reduced, pivots = _sympy_matrix(reversed_rows).rref()
    width = len(reversed_rows[0])

    basis = []
    for i, col in enumerate(pivots):
        row = tuple(reversed(as_vector(reduced.row(i))))
        basis.append((width - 1 - col, row))

    return tuple(basis)


def reduce_modulo(v, equality_normals):
    """Eliminates the trailing pivot columns of the equality row space
    from ``v``"""

    coords = list(as_vector(v))
    normals = tuple(tuple(a) for a in equality_normals)
    if not normals:
        return tuple(coords)

    for pivot, row in _trailing_pivot_basis(normals):
        factor = coords[pivot]
        if factor:
            coords = [x - factor * r for x, r in zip(coords, row)]

    return tuple(coords)


def canonical_normal(v, equality_normals=()):
    """Canonical primitive normal of the functional ``v`` restricted to an
    affine space with the given equality normals

    Polytopes in a hyperplane ``sum(x) = const`` use
    :py:func:`canonical_quotient_key`; any other affine space reduces ``v``
    against the equality rows (pivots on the trailing columns) before making
    it primitive. Full-dimensional polytopes just take the primitive
    direction.
    """

    normals = [tuple(a) for a in equality_normals]

    if not normals:
        return primitive_direction(v)

    if is_sum_hyperplane(normals):
        return canonical_quotient_key(v)

    reduced = reduce_modulo(v, normals)
    if not any(reduced):
        raise ExactError("direction {} is constant on the affine hull".format(
            [format_rational(x) for x in as_vector(v)]))

    return primitive_direction(reduced)


class Halfspace(namedtuple("Halfspace", ["normal", "offset"])):
    """The half-space ``{x : <normal, x> >= offset}``

    ``normal`` is a primitive integer vector and ``offset`` an exact
    rational; the outward normal of the half-space is ``-normal``.
    """

    __slots__ = ()

    def __new__(cls, normal, offset):

        normal = tuple(int(a) for a in normal)
        if not any(normal):
            raise ExactError("zero direction")
        if reduce(gcd, (abs(a) for a in normal)) != 1:
            raise ExactError("half-space normal {} is not primitive".format(
                list(normal)))

        return super(Halfspace, cls).__new__(cls, normal, to_rational(offset))

    def value(self, x):
        return dot(self.normal, x)

    def contains(self, x):
        return self.value(x) >= self.offset

    def is_tight(self, x):
        return self.value(x) == self.offset

    def to_dict(self):
        return {"normal": list(self.normal),
                "offset": format_rational(self.offset)}


def matrix_rows(mat):
    """Rows of a cdd matrix as (tuple of Fraction, is_linear) pairs"""

    linear = mat.lin_set
    return tuple((tuple(Fraction(x) for x in mat[i]), i in linear)
                 for i in range(mat.row_size))


def satisfies(rows, point):
    """Checks ``b + <h, x> >= 0`` (``== 0`` for linear rows) on every row"""

    for row, is_linear in rows:
        value = row[0] + dot(row[1:], point)
        if is_linear and value != 0:
            return False
        if not is_linear and value < 0:
            return False

    return True


def _cone_hrep(generators, ambient_dim):
    """H-representation of ``cone(generators) + span(1, ..., 1)``"""

    mat = cdd.Matrix([[1] + [0] * ambient_dim], number_type="fraction")
    if generators:
        mat.extend([[0] + list(g) for g in generators])
    mat.extend([[0] + [1] * ambient_dim], linear=True)
    mat.rep_type = cdd.RepType.GENERATOR

    return matrix_rows(cdd.Polyhedron(mat).get_inequalities())


def _quotient_rank(generators, ambient_dim):
    if not generators:
        return 0
    return rank(list(generators) + [(1,) * ambient_dim]) - 1


class Cone(object):
    """Polyhedral cone in the quotient ``R^d / span(1, ..., 1)``

    Parameters
    ----------
    generators : iterable
        Rational vectors; each is replaced by its
        :py:func:`canonical_quotient_key`, zero classes are discarded and
        generators lying in the cone of the others are pruned.
    ambient_dim : int
        Length ``d`` of the vectors.
    """

    def __init__(self, generators, ambient_dim):

        self.ambient_dim = ambient_dim
        """
        int: Number of coordinates of the (unreduced) generators.
        """

        keys = sorted({canonical_quotient_key(g) for g in generators
                       if not is_lineality(as_vector(g))})

        if any(len(k) != ambient_dim for k in keys):
            raise ExactError("cone generators must have {} coordinates".format(
                ambient_dim))

        self.generators = tuple(self._irredundant(keys))
        """
        tuple: Irredundant canonical generators, sorted.
        """

        self._hrep = None

    def _irredundant(self, keys):

        if _quotient_rank(keys, self.ambient_dim) == len(keys):
            return keys

        kept = list(keys)
        for key in keys:
            others = [g for g in kept if g != key]
            if satisfies(_cone_hrep(others, self.ambient_dim), key):
                kept = others

        return kept

    @property
    def hrep(self):
        """Homogeneous inequality rows ``(b, h)`` describing the cone plus
        the all-ones line"""

        if self._hrep is None:
            self._hrep = _cone_hrep(self.generators, self.ambient_dim)
        return self._hrep

    @property
    def dim(self):
        return _quotient_rank(self.generators, self.ambient_dim)

    def contains(self, ray):
        ray = as_vector(ray)
        if is_lineality(ray):
            return True
        return satisfies(self.hrep, ray)

    def contains_cone(self, other):
        return all(self.contains(g) for g in other.generators)

    def intersect(self, other):
        return intersect_cones(self, other)

    def to_dict(self):
        return {"generators": [list(g) for g in self.generators],
                "dim": self.dim}

    def __eq__(self, other):
        if not isinstance(other, Cone):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and
                self.contains_cone(other) and other.contains_cone(self))

    __hash__ = None

    def __repr__(self):
        return "Cone({}, dim={})".format(
            [list(g) for g in self.generators], self.dim)


def cone_contains(cone, ray):
    """True iff ``ray`` is a nonnegative combination of the cone generators
    modulo the all-ones direction (the zero class always is)"""
    return cone.contains(ray)


def cone_dim(cone):
    return cone.dim


def intersect_cones(first, second):
    """Exact intersection of two quotient cones

    Both H-representations are stacked and converted back into generators;
    extra lineality (a line other than the all-ones one) comes back as a
    pair of opposite generators.
    """

    if first.ambient_dim != second.ambient_dim:
        raise ExactError("cannot intersect cones of ambient dimensions {} "
                         "and {}".format(first.ambient_dim, second.ambient_dim))

    d = first.ambient_dim
    rows = first.hrep + second.hrep

    mat = cdd.Matrix([[1] + [0] * d], number_type="fraction")
    inequalities = [list(r) for r, is_linear in rows if not is_linear]
    equations = [list(r) for r, is_linear in rows if is_linear]
    if inequalities:
        mat.extend(inequalities)
    if equations:
        mat.extend(equations, linear=True)
    mat.rep_type = cdd.RepType.INEQUALITY

    generators = []
    for row, is_linear in matrix_rows(cdd.Polyhedron(mat).get_generators()):
        if row[0] != 0:
            continue
        direction = row[1:]
        if is_lineality(direction):
            continue
        generators.append(direction)
        if is_linear:
            generators.append(tuple(-x for x in direction))

    return Cone(generators, d)
