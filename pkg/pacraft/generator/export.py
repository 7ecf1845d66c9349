"""
Writers for the JSON, inequality and OFF formats and the JSON reader used
to load polytopes back. The text formats are rendered from the jinja2
templates in ``generator/templates``.
"""

import os
import json
import logging
import jinja2

from os.path import join, dirname, abspath

try:
    import generator.exact_core as ec
    import generator.polytope as pt
    from generator.error_handling import ExportError, ExactError, \
        PolytopeError
except ImportError:
    import pacraft.generator.exact_core as ec
    import pacraft.generator.polytope as pt
    from pacraft.generator.error_handling import ExportError, ExactError, \
        PolytopeError

logger = logging.getLogger("main.{}".format(__name__))

FORMATS = ["json", "ineq", "off"]

OFF_PROJECTION = ((1, 0, 0, 0),
                  (0, 1, 0, 0),
                  (0, 0, 1, 0))
"""
tuple: Integer projection of ``R^4`` onto ``R^3`` applied before writing
OFF files: the last coordinate is dropped, which is injective on every
hyperplane ``sum(x) = const``.
"""

TEMPLATE_DIR = join(dirname(abspath(__file__)), "templates")


def render(template, context):
    """Renders a template of ``generator/templates`` with ``context``"""

    return jinja2.Environment(
        loader=jinja2.FileSystemLoader(TEMPLATE_DIR)
    ).get_template(template).render(context)


def _unwrap(obj):
    """Polytope and optional labels of a (labelled) polytope"""

    if isinstance(obj, pt.Polytope):
        return obj, None
    return obj.poly, obj


def to_json(obj, extra=None):
    """Canonical JSON text of a polytope or labelled polytope

    Keys are sorted and rationals written as ``"p/q"`` strings, so equal
    objects always give the same bytes.
    """

    data = obj.to_dict()
    if extra:
        data.update(extra)

    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def to_ineq(obj, title="polytope"):
    """Equation and facet rows ``b a_1 ... a_d``"""

    poly, labelled = _unwrap(obj)

    equations = [[ec.format_rational(-b)] + [str(a) for a in normal]
                 for normal, b in poly.equalities]
    inequalities = []
    for f, h in enumerate(poly.facets):
        label = None
        if labelled is not None:
            label = str(labelled.label_of(f))
        inequalities.append({
            "values": [ec.format_rational(-h.offset)] +
                      [str(a) for a in h.normal],
            "label": label})

    return render("ineq.txt", {"title": title,
                               "ambient_dim": poly.ambient_dim,
                               "dim": poly.dim,
                               "equations": equations,
                               "inequalities": inequalities})


def _facet_cycle(poly, mask):
    """Vertex ids of a polygonal facet in boundary order"""

    ids = [i for i in range(len(poly.vertices)) if mask >> i & 1]
    cycle = [ids[0]]
    while len(cycle) < len(ids):
        following = [j for j in ids if j not in cycle and
                     poly.is_edge(cycle[-1], j)]
        if not following:
            raise ExportError("facet with {} vertices is not a "
                              "polygon".format(len(ids)))
        cycle.append(following[0])

    return cycle


def project(v):
    return tuple(ec.dot(row, v) for row in OFF_PROJECTION)


def to_off(obj, title="polytope"):
    """OFF text of a 3-polytope lying in a hyperplane of ``R^4``

    Coordinates are projected with :py:data:`OFF_PROJECTION` and printed as
    decimals; the file is meant for viewers, not for reading back.
    """

    poly, _ = _unwrap(obj)

    if poly.ambient_dim != 4 or poly.dim != 3 or not poly.in_sum_class:
        raise ExportError("OFF export needs a 3-polytope in a hyperplane "
                          "sum(x) = const of R^4 (n = 3), got dimension {} "
                          "in R^{}".format(poly.dim, poly.ambient_dim))

    points = [["{:.6f}".format(float(x)) for x in project(v)]
              for v in poly.vertices]
    faces = [_facet_cycle(poly, mask) for mask in poly.facet_masks]

    return render("off.txt", {"title": title,
                              "dropped": 4,
                              "level": ec.format_rational(
                                  sum(poly.vertices[0])),
                              "points": points,
                              "faces": faces,
                              "edges": len(poly.edges())})


def export(obj, fmt, title="polytope", extra=None):
    """Text of ``obj`` in one of :py:data:`FORMATS`"""

    if fmt == "json":
        return to_json(obj, extra)
    if fmt == "ineq":
        return to_ineq(obj, title)
    if fmt == "off":
        return to_off(obj, title)

    raise ExportError("unknown format '{}' (choose from {})".format(
        fmt, ", ".join(FORMATS)))


def write_output(text, out=None):
    """Writes ``text`` to ``out``, or returns it when no path is given"""

    if out is None:
        return text

    try:
        with open(out, "w") as fh:
            fh.write(text)
    except OSError as e:
        raise ExportError("cannot write {}: {}".format(out, e.strerror))
    logger.debug("wrote {} bytes to {}".format(len(text), out))

    return text


def polytope_from_json(source):
    """Reads a polytope written by :py:func:`to_json`

    Only the vertices are taken from the file; facets and equalities are
    derived again exactly.

    Parameters
    ----------
    source : str
        Path to a JSON file, or the JSON text itself.

    Returns
    -------
    polytope.Polytope
    """

    text = source
    if os.path.isfile(source):
        with open(source) as fh:
            text = fh.read()

    try:
        data = json.loads(text)
    except ValueError as e:
        raise ExportError("cannot parse polytope JSON ({})".format(e))

    if not isinstance(data, dict) or not isinstance(data.get("vertices"),
                                                    list):
        raise ExportError("polytope JSON needs a 'vertices' list")

    try:
        vertices = [[ec.to_rational(x) for x in v] for v in data["vertices"]]
        return pt.hull(vertices)
    except (ExactError, PolytopeError, TypeError) as e:
        raise ExportError("invalid vertices in polytope JSON: {}".format(
            getattr(e, "value", e)))
