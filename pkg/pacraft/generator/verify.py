import logging

from collections import namedtuple
from fractions import Fraction
from itertools import combinations

try:
    import generator.exact_core as ec
    import generator.nestedsets as ns
    import generator.polytope as pt
    import generator.construct as cs
    from generator.error_handling import VerificationError, \
        ConstructionError, ExactError
except ImportError:
    import pacraft.generator.exact_core as ec
    import pacraft.generator.nestedsets as ns
    import pacraft.generator.polytope as pt
    import pacraft.generator.construct as cs
    from pacraft.generator.error_handling import VerificationError, \
        ConstructionError, ExactError

logger = logging.getLogger("main.{}".format(__name__))

TRUNCATION_DEPTH = Fraction(1, 2)
"""
Fraction: Depth of the reference truncation every truncator step is
compared against.
"""

Check = namedtuple("Check", ["name", "passed", "witness", "group"])

GROUPS = {
    "i": "realises the complex",
    "ii": "simplex plus summands",
    "iii": "truncator set of summands",
    "reference": "normally equivalent to the reference model"
}


class VerificationReport(object):
    """Named pass/fail checks, grouped by the condition they certify

    Parameters
    ----------
    subject : dict
        What was verified (``n``, ``c``, ...), copied into the JSON output.
    """

    def __init__(self, subject=None):

        self.subject = dict(subject or {})
        self.checks = []
        """
        list: :py:class:`Check` entries in the order they were made.
        """

    def add(self, name, passed, witness=None, group=None):

        self.checks.append(Check(name, bool(passed), witness, group))
        if not passed:
            logger.debug("check {} failed: {}".format(name, witness))

    def extend(self, checks, group=None):
        for name, passed, witness in checks:
            self.add(name, passed, witness, group)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def summary(self):
        """Pass state of every group that has checks"""

        found = {}
        for check in self.checks:
            if check.group is not None:
                found[check.group] = found.get(check.group, True) and \
                    check.passed
        return found

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def failures(self):
        return [check for check in self.checks if not check.passed]

    def to_dict(self):
        return {
            "subject": self.subject,
            "passed": self.passed,
            "summary": self.summary,
            "checks": [{"name": check.name,
                        "status": "pass" if check.passed else "fail",
                        "group": check.group,
                        "witness": check.witness} for check in self.checks]
        }


def _point(v):
    return [ec.format_rational(x) for x in v]


def _min_face(p, normal):
    """Vertices of ``p`` minimizing ``<normal, .>``"""

    values = [ec.dot(normal, v) for v in p.vertices]
    low = min(values)
    return [v for v, value in zip(p.vertices, values) if value == low]


def restricted_keys(keys, equality_normals):
    """Canonical keys of the given functionals on a smaller affine space;
    functionals constant there are dropped"""

    found = set()
    for key in keys:
        try:
            found.add(ec.canonical_normal(key, equality_normals))
        except ExactError:
            continue

    return found


def is_f_deformation(p2, p1, face_vertexset, trunc_halfspace):
    """Tests whether ``p2`` deforms the parallel truncation of ``p1``

    Parameters
    ----------
    p2 : polytope.Polytope
        Candidate deformation.
    p1 : polytope.Polytope
        Polytope being truncated.
    face_vertexset : iterable
        Vertices of the truncated face; exactly these must lie beyond
        ``trunc_halfspace``.
    trunc_halfspace : exact_core.Halfspace

    Returns
    -------
    bool
        True iff every facet normal of ``p2`` is a facet normal of the
        truncation, the face of ``p2`` minimizing the cutting normal is
        normally equivalent to the new facet, and at every vertex of the
        truncation the matching supporting hyperplanes of ``p2`` meet in a
        vertex of ``p2``.
    """

    if p1.ambient_dim != p2.ambient_dim:
        return False

    face = {ec.as_vector(v) for v in face_vertexset}
    beyond = {v for v in p1.vertices if trunc_halfspace.value(v) <
              trunc_halfspace.offset}
    if beyond != face:
        logger.debug("the half-space does not cut exactly the given face")
        return False

    tr = pt.cut_with_halfspace(p1, trunc_halfspace)
    tr_keys = set(tr.facet_keys)
    new_key = trunc_halfspace.normal

    # a lower-dimensional p2 has its keys reduced on its own affine hull
    seen = tr_keys if p2.dim == tr.dim else \
        restricted_keys(tr_keys, p2.equality_normals)
    if new_key not in tr_keys or not set(p2.facet_keys) <= seen:
        return False

    new_facet = pt.hull(v for v in tr.vertices
                        if trunc_halfspace.is_tight(v))
    deformed_face = pt.hull(_min_face(p2, new_key))
    if not pt.normally_equivalent(deformed_face, new_facet):
        return False

    offsets = {key: min(ec.dot(key, w) for w in p2.vertices)
               for key in tr_keys}
    for i in range(len(tr.vertices)):
        tight = tr.tight_keys(i)
        if not any(all(ec.dot(key, w) == offsets[key] for key in tight)
                   for w in p2.vertices):
            logger.debug("no vertex of the deformation for {}".format(
                _point(tr.vertices[i])))
            return False

    return True


def check_truncator_step(s_prev, q, face_vertexset, total=None):
    """True iff adding ``q`` to ``s_prev`` is normally equivalent to the
    midpoint truncation of ``s_prev`` at the given face

    ``total`` may carry an already computed ``s_prev + q``.
    """

    face = [ec.as_vector(v) for v in face_vertexset]
    ids = pt.facets_through(s_prev, face)
    if set(pt.face_from_facets(s_prev, ids)) != set(face):
        raise VerificationError("{} vertices do not form a face".format(
            len(face)))

    truncated, _ = pt.truncate_at_face(s_prev, ids, TRUNCATION_DEPTH)
    if total is None:
        total = pt.minkowski_sum(s_prev, q)

    return pt.normally_equivalent(total, truncated)


def midpoint_truncation(p, v):
    """``p`` truncated at vertex ``v`` through the midpoints of its edges"""

    i = p.vertex_index(v)
    midpoints = [tuple((a + b) / 2 for a, b in zip(p.vertices[i],
                                                   p.vertices[j]))
                 for j in p.neighbours(i)]

    return pt.hull(midpoints + [w for j, w in enumerate(p.vertices) if j != i])


def vertex_trunc_identity(p, v):
    """Checks ``p + conv(V(p) - {v}) = 2 tr_v p`` up to translation"""

    if not pt.is_simple(p):
        raise VerificationError("the vertex truncation identity needs a "
                                "simple polytope")

    i = p.vertex_index(v)
    rest = pt.hull(w for j, w in enumerate(p.vertices) if j != i)
    total = pt.minkowski_sum(p, rest)
    doubled = pt.scale(2, midpoint_truncation(p, v))

    return pt.translate_to_origin(total).vertices == \
        pt.translate_to_origin(doubled).vertices


def verify_fan_refinement(p, q, total=None):
    """Checks that the fan of ``p + q`` is the common refinement of the
    fans of ``p`` and ``q``

    Every vertex cone of the sum must equal the intersection of the cones
    at its two summand vertices, and every full-dimensional intersection
    of a cone of ``p`` with a cone of ``q`` must be a vertex cone of the
    sum.
    """

    if total is None:
        total = pt.minkowski_sum(p, q)

    cones_p = pt.vertex_cones(p)
    cones_q = pt.vertex_cones(q)
    cones_s = pt.vertex_cones(total)
    index_q = {w: j for j, w in enumerate(q.vertices)}

    for k, x in enumerate(total.vertices):
        pairs = [(i, index_q[w]) for i, u in enumerate(p.vertices)
                 for w in [tuple(a - b for a, b in zip(x, u))]
                 if w in index_q]
        if len(pairs) != 1:
            logger.debug("vertex {} of the sum splits {} ways".format(
                _point(x), len(pairs)))
            return False
        i, j = pairs[0]
        if cones_s[k] != ec.intersect_cones(cones_p[i], cones_q[j]):
            logger.debug("cone at {} is not an intersection".format(
                _point(x)))
            return False

    full = p.ambient_dim - 1
    index_s = {x: k for k, x in enumerate(total.vertices)}
    for i, u in enumerate(p.vertices):
        for j, w in enumerate(q.vertices):
            meet = ec.intersect_cones(cones_p[i], cones_q[j])
            if meet.dim < full:
                continue
            x = tuple(a + b for a, b in zip(u, w))
            if x not in index_s or cones_s[index_s[x]] != meet:
                logger.debug("full intersection at {} + {} is missing from "
                             "the sum".format(_point(u), _point(w)))
                return False

    return True


def cone_bookkeeping(p2, p1, face_vertexset, trunc_halfspace):
    """Cone containments between a deformation and the truncation it
    deforms

    Every vertex cone of ``p2`` must contain at least one vertex cone of
    the truncation, have its generators covered by the contained cones and
    contain at most one cone whose vertex lies on the cutting hyperplane.
    """

    if not is_f_deformation(p2, p1, face_vertexset, trunc_halfspace):
        return False

    tr = pt.cut_with_halfspace(p1, trunc_halfspace)
    tr_cones = pt.vertex_cones(tr)

    for cone in pt.vertex_cones(p2):
        contained = [i for i, c in enumerate(tr_cones)
                     if cone.contains_cone(c)]
        if not contained:
            return False
        on_plane = [i for i in contained
                    if trunc_halfspace.is_tight(tr.vertices[i])]
        if len(on_plane) > 1:
            return False
        if not all(any(tr_cones[i].contains(g) for i in contained)
                   for g in cone.generators):
            return False

    return True


def realisation_checks(labelled, n):
    """Checks that a labelled polytope realises the complex ``C``

    Returns
    -------
    list of (name, passed, witness)
    """

    poly = labelled.poly
    labels = ns.enumerate_B1(n)
    found = []

    covered = set(labelled.labels.values()) == set(labels)
    found.append(("facet_count", len(poly.facets) == len(labels) and covered,
                  None if covered else {"facets": len(poly.facets),
                                        "labels": len(labels)}))
    if not covered:
        return found

    simple = pt.is_simple(poly)
    found.append(("simple", simple, None if simple else {
        "vertices": [_point(v) for i, v in enumerate(poly.vertices)
                     if len(poly.incidence[i]) != poly.dim][:5]}))

    hits = {}
    bad = None
    for nested in ns.enumerate_maximal_1_nested(n):
        mask = poly.mask_of(labelled.facet_ids(nested))
        if bin(mask).count("1") != 1:
            bad = bad or {"nested_set": [beta.to_list() for beta in nested],
                          "vertices": bin(mask).count("1")}
            continue
        hits.setdefault(mask, []).append(nested)

    bijective = bad is None and len(hits) == len(poly.vertices) and \
        all(len(v) == 1 for v in hits.values())
    found.append(("vertex_bijection", bijective, bad or (
        None if bijective else {"vertices": len(poly.vertices),
                                "hit": len(hits)})))

    masks = {beta: poly.facet_masks[labelled.facet_id(beta)]
             for beta in labels}
    mismatch = None
    for first, second in combinations(labels, 2):
        combinatorial = ns.labels_share_vertex(first, second, n)
        geometric = masks[first] & masks[second] != 0
        if combinatorial != geometric:
            mismatch = {"labels": [first.to_list(), second.to_list()],
                        "combinatorial": combinatorial,
                        "geometric": geometric}
            break
    found.append(("label_adjacency", mismatch is None, mismatch))

    return found


def verify_realises_C(labelled, n):
    """True iff the labelled polytope is simple, has one facet per label
    and its vertices biject onto the maximal 1-nested sets with matching
    label adjacency"""

    try:
        checks = realisation_checks(labelled, n)
    except ConstructionError as e:
        logger.debug(e.value)
        return False

    return all(passed for _, passed, _ in checks)


def _simplex_support(blocks, direction):
    return sum(max(direction[i - 1] for i in block) for block in blocks)


def _sample_directions(poly):

    directions = [tuple(-a for a in key) for key in poly.facet_keys]
    directions += [tuple(int(i == j) for j in range(poly.ambient_dim))
                   for i in range(poly.ambient_dim)]
    directions.append(tuple(range(1, poly.ambient_dim + 1)))

    return directions


def decomposition_checks(labelled, log):
    """The final polytope is ``Delta_[n+1]`` plus one summand per label"""

    n = log.n
    summed = [ns.Beta(b) for b in ns.b0(n).blocks] + \
        [step.beta for step in log.steps]
    covered = sorted(summed) == ns.enumerate_B1(n)
    found = [("summands_cover_B1", covered,
              None if covered else {"summands": len(summed)})]

    blocks = list(ns.permutohedron_building_set(n).blocks)
    bad = None
    for direction in _sample_directions(labelled.poly):
        expected = _simplex_support(blocks, direction) + sum(
            pt.support_value(step.summand, direction) for step in log.steps)
        actual = pt.support_value(labelled.poly, direction)
        if expected != actual:
            bad = {"direction": list(direction),
                   "expected": ec.format_rational(expected),
                   "actual": ec.format_rational(actual)}
            break
    found.append(("support_additivity", bad is None, bad))

    return found


def truncator_checks(log):
    """Every recorded step against the midpoint truncation of its face"""

    found = []
    ordered = all(a.beta.k >= b.beta.k for a, b in zip(log.steps,
                                                       log.steps[1:]))
    found.append(("summand_order", ordered, None))

    for step in log.steps:
        truncated, _ = pt.truncate_at_face(step.before, step.facet_ids,
                                           TRUNCATION_DEPTH)
        equivalent = pt.normally_equivalent(step.after, truncated)
        grows = len(step.after.facets) == len(step.before.facets) + 1
        simple = pt.is_simple(step.after)
        passed = equivalent and grows and simple

        witness = None
        if not passed:
            witness = {"beta": step.beta.to_list(),
                       "face": [_point(v) for v in step.face_vertices],
                       "normally_equivalent": equivalent,
                       "facets_before": len(step.before.facets),
                       "facets_after": len(step.after.facets),
                       "simple": simple}
        found.append(("truncator_step {}".format(step.beta), passed, witness))

    return found


def verify_minkowski_realisation(n, c=cs.DEFAULT_C, against_reference=False,
                                 partial=False, reference=None):
    """Certificate that ``PA_{n,c}`` is a Minkowski realisation of ``C``

    Parameters
    ----------
    n : int
    c : rational in (0, 1]
    against_reference : bool
        Also compare with the reference half-space model.
    partial : bool
        Skip the 1-nested enumeration (large ``n``).
    reference : construct.LabeledPolytope, optional
        Reference model computed elsewhere (e.g. under a time budget).

    Returns
    -------
    VerificationReport
    """

    c = ec.to_rational(c)
    report = VerificationReport({"n": n, "c": ec.format_rational(c),
                                 "partial": partial})

    labelled, log = cs.assemble_pa(n, c, record=True)
    poly = labelled.poly

    if partial:
        report.add("facet_count",
                   len(poly.facets) == len(ns.enumerate_B1(n)), group="i")
        report.add("simple", pt.is_simple(poly), group="i")
    else:
        report.extend(realisation_checks(labelled, n), group="i")

    report.extend(decomposition_checks(labelled, log), group="ii")
    report.extend(truncator_checks(log), group="iii")

    if against_reference or reference is not None:
        if reference is None:
            reference = cs.reference_pa(n)
        report.add("normally_equivalent_reference",
                   pt.normally_equivalent(poly, reference.poly),
                   group="reference")

    logger.debug("verification of n = {}, c = {}: {} checks, {}".format(
        n, ec.format_rational(c), len(report.checks),
        "pass" if report.passed else "fail"))

    return report


def verify_nestohedron_realisation(building):
    """Realisation of a nestohedron as a sum of simplices, checked step by step

    The simplices of the non-singleton blocks other than ``[n+1]``, added
    by non-increasing size, must each act as a midpoint truncation at the
    face cut out by the coordinate facets of the block; the vertices must
    biject onto the maximal nested sets through their tight labels.
    """

    n = building.n
    report = VerificationReport({"building_set": [sorted(b) for b in
                                                  building]})

    labelled = cs.labelled_nestohedron(building)
    maximal = set(ns.maximal_nested_sets(building))
    at_vertices = {cs.nested_set_of_vertex(labelled, i)
                   for i in range(len(labelled.poly.vertices))}
    report.add("vertex_count", len(labelled.poly.vertices) == len(maximal),
               {"vertices": len(labelled.poly.vertices),
                "maximal_nested_sets": len(maximal)}, group="i")
    report.add("vertex_labels", at_vertices == maximal, group="i")

    singletons = [b for b in building.blocks if len(b) == 1]
    current = cs.simplex_sum(singletons + [building.ground], n)
    steps = sorted((b for b in building.blocks
                    if len(b) > 1 and b != building.ground),
                   key=lambda b: (-len(b), ns.block_key(b)))

    for block in steps:
        keys = {cs.indicator([i], n) for i in block}
        ids = [f for f, key in enumerate(current.facet_keys) if key in keys]
        after = pt.minkowski_sum(current, cs.standard_simplex(block, n))
        truncated, _ = pt.truncate_at_face(current, ids, TRUNCATION_DEPTH)
        report.add("truncator_step {}".format(ns.format_block(block)),
                   pt.normally_equivalent(after, truncated), group="iii")
        current = after

    report.add("sum_matches", current == labelled.poly, group="ii")

    return report
