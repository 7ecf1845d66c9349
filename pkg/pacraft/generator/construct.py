"""
Constructions of the polytopes in the Minkowski realisation: standard
simplices, the permutohedron, nestohedra of the building sets ``B_beta``,
the functional ``kappa_beta`` with its minimum ``m_beta``, minimal face
``F_beta`` and excess hull ``N_beta``, the two-dimensional summands
``phi(beta)``, the half-space reference model and the assembly of
``PA_{n,c}``.
"""

import logging

from fractions import Fraction
from functools import lru_cache

try:
    import generator.exact_core as ec
    import generator.nestedsets as ns
    import generator.polytope as pt
    from generator.error_handling import ConstructionError, NestedSetError
except ImportError:
    import pacraft.generator.exact_core as ec
    import pacraft.generator.nestedsets as ns
    import pacraft.generator.polytope as pt
    from pacraft.generator.error_handling import ConstructionError, \
        NestedSetError

logger = logging.getLogger("main.{}".format(__name__))

DEFAULT_C = Fraction(1)
"""
Fraction: Default offset of the cuts ``kappa_beta >= m_beta + c``; with
``c = 1`` every summand is the hull of nestohedron vertices.
"""

REFERENCE_LIMIT = 3
"""
int: Largest ``n`` for which :py:func:`reference_pa` runs without
``allow_large``.
"""


def indicator(block, n):
    return tuple(int(i in block) for i in range(1, n + 2))


def unit_point(i, n, weight=1):
    return tuple(weight if j == i else 0 for j in range(1, n + 2))


def label_to_list(label):
    """Serializable form of a facet label (chain label or block)"""

    if isinstance(label, ns.Beta):
        return label.to_list()
    return sorted(label)


class LabeledPolytope(object):
    """Polytope whose facets carry labels

    Parameters
    ----------
    poly : polytope.Polytope
    labels : dict
        Facet normal (canonical key) to label; must cover every facet
        exactly once.
    """

    def __init__(self, poly, labels):

        self.poly = poly
        self.labels = dict(labels)

        keys = set(poly.facet_keys)
        missing = [label for key, label in self.labels.items()
                   if key not in keys]
        if missing:
            raise ConstructionError("labels {} do not name a facet".format(
                [label_to_list(l) for l in missing]))

        unlabelled = keys - set(self.labels)
        if unlabelled:
            raise ConstructionError("facets with normals {} carry no "
                                    "label".format(sorted(unlabelled)))

        self._by_label = {label: key for key, label in self.labels.items()}
        if len(self._by_label) != len(self.labels):
            raise ConstructionError("a label is attached to two facets")

        self._ids = {key: f for f, key in enumerate(poly.facet_keys)}

    def facet_id(self, label):
        try:
            return self._ids[self._by_label[label]]
        except KeyError:
            raise ConstructionError("no facet is labelled {}".format(
                label_to_list(label)))

    def facet_ids(self, labels):
        return [self.facet_id(label) for label in labels]

    def label_of(self, facet_id):
        return self.labels[self.poly.facets[facet_id].normal]

    def vertex_labels(self, i):
        """Labels of the facets through vertex ``i``"""
        return frozenset(self.labels[key] for key in self.poly.tight_keys(i))

    def to_dict(self):

        data = self.poly.to_dict()
        data["labels"] = [{"normal": list(key),
                           "label": label_to_list(self.labels[key])}
                          for key in self.poly.facet_keys]
        return data

    def __repr__(self):
        return "LabeledPolytope({!r})".format(self.poly)


def standard_simplex(block, n):
    """``conv{e_i : i in block}`` in ``R^{n+1}``"""

    try:
        block = ns.make_block(block, n)
    except NestedSetError as e:
        raise ConstructionError(e.value)

    return pt.hull(unit_point(i, n) for i in sorted(block))


def _summand_order(blocks):
    """Singletons first, then by non-increasing size"""
    return sorted(blocks, key=lambda b: (len(b) > 1, -len(b), ns.block_key(b)))


def simplex_sum(blocks, n):

    blocks = _summand_order(blocks)
    total = standard_simplex(blocks[0], n)
    for block in blocks[1:]:
        total = pt.minkowski_sum(total, standard_simplex(block, n))

    return total


def permutohedron(n):
    """``Delta_[n+1]`` plus every ``Delta_B`` for ``B`` a nonempty proper
    subset, with the facet of normal ``1_B`` labelled by the singleton label
    of ``B``"""

    if n < 1:
        raise ConstructionError("n must be positive, got {}".format(n))

    poly = simplex_sum(ns.permutohedron_building_set(n).blocks, n)
    labels = {indicator(b, n): ns.Beta(b) for b in ns.b0(n).blocks}

    return LabeledPolytope(poly, labels)


def _check_building(building):

    if not building.is_connected:
        raise ConstructionError("building set {} does not contain "
                                "[{}]".format(building, building.n + 1))
    if not ns.is_building_set(building.blocks, building.n):
        raise ConstructionError("{} is not a building set".format(building))


@lru_cache(maxsize=None)
def nestohedron(building):
    """Nestohedron of a building set, the sum of ``Delta_B`` over the blocks"""

    _check_building(building)
    poly = simplex_sum(building.blocks, building.n)
    logger.debug("nestohedron of {}: {} vertices".format(
        building, len(poly.vertices)))

    return poly


def labelled_nestohedron(building):
    """Nestohedron with each facet labelled by its block"""

    poly = nestohedron(building)
    by_key = {indicator(b, building.n): b for b in building.blocks
              if b != building.ground}

    labels = {}
    for key in poly.facet_keys:
        if key not in by_key:
            raise ConstructionError("facet normal {} is not the indicator of "
                                    "a block".format(list(key)))
        labels[key] = by_key[key]

    return LabeledPolytope(poly, labels)


def nested_set_of_vertex(labelled, i):
    """Labels of the facets through vertex ``i``: for a nestohedron, the
    maximal nested set of that vertex"""
    return labelled.vertex_labels(i)


def nestohedron_hrep(beta, n):
    """Equality and facet system of the nestohedron of ``B_beta``

    ``sum(x) = |B_beta|`` and, for every block ``A`` other than ``[n+1]``,
    ``sum_{i in A} x_i >= |B_beta|_A|``.
    """

    building = ns.b_beta(beta, n)
    equalities = [((1,) * (n + 1), Fraction(len(building)))]
    halfspaces = [ec.Halfspace(indicator(a, n), len(building.restrict(a)))
                  for a in building if a != building.ground]

    return equalities, halfspaces


def kappa_normal(beta, n):
    return beta.weights(n)


def kappa_beta(beta, x):
    """``kappa_beta(x)``: sum over the blocks of ``beta`` of the coordinate
    sums on the block"""

    x = ec.as_vector(x)
    return ec.dot(beta.weights(len(x) - 1), x)


def _non_singleton(beta):
    if beta.is_singleton:
        raise ConstructionError("{} is a singleton label".format(beta))


@lru_cache(maxsize=None)
def f_beta_and_m(beta, n):
    """Minimum ``m_beta`` of ``kappa_beta`` over the nestohedron of
    ``B_beta`` and the vertices ``F_beta`` attaining it"""

    _non_singleton(beta)
    poly = nestohedron(ns.b_beta(beta, n))
    values = [kappa_beta(beta, v) for v in poly.vertices]
    low = min(values)

    return low, tuple(v for v, value in zip(poly.vertices, values)
                      if value == low)


@lru_cache(maxsize=None)
def n_beta(beta, n):
    """Hull of the nestohedron vertices where ``kappa_beta`` exceeds
    ``m_beta``"""

    low, _ = f_beta_and_m(beta, n)
    poly = nestohedron(ns.b_beta(beta, n))

    return pt.hull(v for v in poly.vertices if kappa_beta(beta, v) > low)


def _check_c(c):

    c = ec.to_rational(c)
    if not 0 < c <= 1:
        raise ConstructionError("c must lie in (0, 1], got {}".format(
            ec.format_rational(c)))
    return c


@lru_cache(maxsize=None)
def n_beta_c(beta, n, c):
    """The nestohedron of ``B_beta`` cut by ``kappa_beta >= m_beta + c``"""

    c = _check_c(c)
    low, _ = f_beta_and_m(beta, n)
    poly = nestohedron(ns.b_beta(beta, n))

    return pt.cut_with_halfspace(
        poly, ec.Halfspace(kappa_normal(beta, n), low + c))


def phi_2d(beta, n=2):
    """``conv{2e_{i1}, e_{i2} + e_{i3}, 2e_{i2}}`` for the label
    ``{{i2, i1}, {i2}}``"""

    if n != 2:
        raise ConstructionError("phi is only defined for n = 2, got "
                                "{}".format(n))
    beta.check(n)
    if beta.k != 2 or beta.l != 0:
        raise ConstructionError("phi needs a label {{{{i2,i1}},{{i2}}}}, got "
                                "{}".format(beta))

    i2, = beta.min_block
    i1, = beta.tail
    i3, = ns.ground_set(n) - {i1, i2}

    return pt.hull([unit_point(i1, n, 2),
                    tuple(a + b for a, b in zip(unit_point(i2, n),
                                                unit_point(i3, n))),
                    unit_point(i2, n, 2)])


def reference_kappa(n, k, l):
    """Offset of the reference half-space of a label with ``k`` blocks and
    a minimal block of size ``l + 1``"""

    if not (1 <= k and 0 <= l and k + l <= n):
        raise ConstructionError("(k, l) = ({}, {}) is out of range for "
                                "n = {}".format(k, l, n))

    return (Fraction(3 ** (k + l + 1) - 3 ** (l + 1), 2) +
            Fraction(3 ** k - 3 * k, 3 ** n - n - 1))


def reference_hrep(n):
    """The reference system: ``sum(x) = 3^{n+1}`` and
    ``kappa_beta(x) >= kappa(k, l)`` for every label"""

    equalities = [((1,) * (n + 1), Fraction(3 ** (n + 1)))]
    halfspaces = [(beta, ec.Halfspace(kappa_normal(beta, n),
                                      reference_kappa(n, beta.k, beta.l)))
                  for beta in ns.enumerate_B1(n)]

    return equalities, halfspaces


def reference_pa(n, allow_large=False):
    """The half-space reference model, facets labelled by ``B_1``"""

    if n < 2:
        raise ConstructionError("n must be at least 2, got {}".format(n))
    if n > REFERENCE_LIMIT and not allow_large:
        raise ConstructionError("the reference enumeration for n = {} is "
                                "gated behind allow_large".format(n))

    equalities, labelled = reference_hrep(n)
    poly = pt.vertices_from_hrep(equalities, [h for _, h in labelled], n + 1)

    return LabeledPolytope(poly, {h.normal: beta for beta, h in labelled})


def assembly_order(n):
    """Non-singleton labels by non-increasing number of blocks, ties in
    canonical order"""

    return sorted((beta for beta in ns.enumerate_B1(n)
                   if not beta.is_singleton),
                  key=lambda beta: (-beta.k, beta.sort_key))


class AssemblyStep(object):

    def __init__(self, beta, facet_ids, face, halfspace, before, after,
                 summand):

        self.beta = beta
        self.facet_ids = tuple(facet_ids)
        """
        tuple: Ids in ``before`` of the facets labelled by the blocks of
        ``beta``.
        """
        self.face = face
        """
        int: Vertex bitmask in ``before`` of the face being truncated.
        """
        self.halfspace = halfspace
        """
        exact_core.Halfspace: Cut of the midpoint truncation at ``face``.
        """
        self.before = before
        self.after = after
        self.summand = summand

    @property
    def face_vertices(self):
        return self.before.vertices_of(self.face)

    def to_dict(self):
        return {
            "beta": self.beta.to_list(),
            "face": [i for i in range(len(self.before.vertices))
                     if self.face >> i & 1],
            "halfspace": self.halfspace.to_dict(),
            "f_vector_before": list(pt.f_vector(self.before)),
            "f_vector_after": list(pt.f_vector(self.after))
        }


class AssemblyLog(object):
    """Recorded truncation steps of :py:func:`assemble_pa`"""

    def __init__(self, n, c):

        self.n = n
        self.c = c
        self.steps = []
        self.start = None
        """
        polytope.Polytope: The permutohedron the assembly starts from.
        """

    def to_dict(self):
        return {"n": self.n, "c": ec.format_rational(self.c),
                "steps": [step.to_dict() for step in self.steps]}

    def __len__(self):
        return len(self.steps)


def assemble_pa(n, c=DEFAULT_C, record=False):
    """``PA_{n,c}`` as the permutohedron plus one summand per non-singleton
    label

    Parameters
    ----------
    n : int
    c : rational in (0, 1]
    record : bool
        Keep every intermediate polytope, face and truncation half-space
        in the returned log.

    Returns
    -------
    LabeledPolytope
    AssemblyLog
    """

    if n < 2:
        raise ConstructionError("n must be at least 2, got {}".format(n))
    c = _check_c(c)

    start = permutohedron(n)
    current = start.poly
    labels = dict(start.labels)
    log = AssemblyLog(n, c)
    log.start = current

    for beta in assembly_order(n):

        summand = n_beta_c(beta, n, c)
        after = pt.minkowski_sum(current, summand)

        key = ec.canonical_quotient_key(kappa_normal(beta, n))
        expected = set(current.facet_keys) | {key}
        if key in labels or set(after.facet_keys) != expected:
            raise ConstructionError(
                "adding the summand of {} gave {} facets instead of "
                "{}".format(beta, len(after.facets), len(expected)))

        if record:
            ids = LabeledPolytope(current, labels).facet_ids(
                ns.Beta(b) for b in beta.chain)
            halfspace, face = pt.truncation_halfspace(current, ids,
                                                      Fraction(1, 2))
            log.steps.append(AssemblyStep(beta, ids, face, halfspace,
                                          current, after, summand))

        labels[key] = beta
        logger.debug("assembled {}: {} vertices, {} facets".format(
            beta, len(after.vertices), len(after.facets)))
        current = after

    return LabeledPolytope(current, labels), log


def minkowski_pa2():
    """The dodecagon as ``Delta_[3]`` plus the simplices of the singleton
    labels plus ``phi`` of the six other labels"""

    total = simplex_sum(ns.permutohedron_building_set(2).blocks, 2)
    for beta in assembly_order(2):
        total = pt.minkowski_sum(total, phi_2d(beta, 2))

    return total
