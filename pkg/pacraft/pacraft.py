#!/usr/bin/env python3

import os
import sys
import json
import logging
import argparse
import multiprocessing

try:
    from __init__ import __version__, __build__
    import generator.exact_core as ec
    import generator.polytope as pt
    import generator.nestedsets as ns
    import generator.construct as cs
    import generator.verify as vf
    import generator.export as ex
    import generator.error_handling as eh
    from generator.beta_parser import parse_beta, parse_c, parse_n
    from generator.details import colored_print, print_polytope, \
        print_fvector, print_report
except ImportError:
    from pacraft import __version__, __build__
    import pacraft.generator.exact_core as ec
    import pacraft.generator.polytope as pt
    import pacraft.generator.nestedsets as ns
    import pacraft.generator.construct as cs
    import pacraft.generator.verify as vf
    import pacraft.generator.export as ex
    import pacraft.generator.error_handling as eh
    from pacraft.generator.beta_parser import parse_beta, parse_c, parse_n
    from pacraft.generator.details import colored_print, print_polytope, \
        print_fvector, print_report

logger = logging.getLogger("main")

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

DEFAULT_TIME_BUDGET = 600
"""
int: Seconds granted to the n = 4 reference enumeration unless
``PA_TIME_BUDGET_SECS`` says otherwise.
"""

TIME_BUDGET_ENV = "PA_TIME_BUDGET_SECS"

INPUT_ERRORS = (eh.SanityError, eh.ExportError, eh.NestedSetError,
                eh.ConstructionError, eh.ExactError)

DATA_MODES = ("build", "nestohedron", "fvector", "export")
"""
tuple: Modes whose data goes to stdout when no ``-o`` file is given.
"""


def get_args(args=None):

    parser = argparse.ArgumentParser(
        description="Exact Minkowski realisation of simple "
                    "permutoassociahedra")

    subparsers = parser.add_subparsers(help="Select which mode to run",
                                       dest="main_op")

    # BUILD MODE
    build_parser = subparsers.add_parser(
        "build", help="Build PA_{n,c} as a Minkowski sum")
    build_parser.add_argument(
        "--n", dest="n", type=int, required=True,
        help="Dimension of the permutoassociahedron (n >= 2)")
    build_parser.add_argument(
        "--c", dest="c", default="1",
        help="Offset of the summand cuts, an exact rational in (0, 1]")
    build_parser.add_argument(
        "--format", dest="format", default="json", choices=ex.FORMATS,
        help="Output format. 'off' is only available for n = 3.")
    build_parser.add_argument(
        "-o", dest="out", help="Output file. Printed to stdout otherwise.")
    build_parser.add_argument(
        "--steps", dest="steps", action="store_const", const=True,
        help="Add the recorded truncation steps to the JSON output.")
    build_parser.add_argument(
        "--against-reference", dest="against_reference",
        action="store_const", const=True,
        help="Also compare the result with the half-space reference model.")

    # VERIFY MODE
    verify_parser = subparsers.add_parser(
        "verify", help="Check that PA_{n,c} is a Minkowski realisation")
    verify_parser.add_argument(
        "--n", dest="n", type=int, required=True,
        help="2 or 3 (4 with --partial)")
    verify_parser.add_argument(
        "--c", dest="c", default="1",
        help="Offset of the summand cuts, an exact rational in (0, 1]")
    verify_parser.add_argument(
        "--against-reference", dest="against_reference",
        action="store_const", const=True,
        help="Add the normal equivalence check against the reference model.")
    verify_parser.add_argument(
        "--partial", dest="partial", action="store_const", const=True,
        help="Skip the enumeration of maximal 1-nested sets.")
    verify_parser.add_argument(
        "-o", dest="out", help="Write the JSON report to this file.")

    # NESTOHEDRON MODE
    nest_parser = subparsers.add_parser(
        "nestohedron", help="Nestohedron of B_beta with m_beta, F_beta and "
                            "N_beta")
    nest_parser.add_argument(
        "--n", dest="n", type=int, required=True, help="Ground set [n+1]")
    nest_parser.add_argument(
        "--beta", dest="beta", required=True,
        help="Chain from the outermost block, e.g. '[[1,2,4],[1,2],[1]]'")
    nest_parser.add_argument(
        "--c", dest="c", default=None,
        help="Also cut the nestohedron at kappa_beta >= m_beta + c.")
    nest_parser.add_argument(
        "-o", dest="out", help="Output JSON file. Printed to stdout "
                               "otherwise.")

    # FVECTOR MODE
    fvector_parser = subparsers.add_parser(
        "fvector", help="Print the f-vector of PA_{n,c}")
    fvector_parser.add_argument(
        "--n", dest="n", type=int, required=True,
        help="Dimension of the permutoassociahedron")
    fvector_parser.add_argument(
        "--c", dest="c", default="1",
        help="Offset of the summand cuts, an exact rational in (0, 1]")
    fvector_parser.add_argument(
        "--reference", dest="reference", action="store_const", const=True,
        help="Use the half-space reference model instead of the sum.")

    # EXPORT MODE
    export_parser = subparsers.add_parser(
        "export", help="Convert a polytope JSON file")
    export_parser.add_argument(
        "-i", "--input", dest="input", required=True,
        help="Polytope JSON file written by 'build'")
    export_parser.add_argument(
        "--format", dest="format", default="ineq", choices=ex.FORMATS,
        help="Output format")
    export_parser.add_argument(
        "-o", dest="out", help="Output file. Printed to stdout otherwise.")

    # CHECK-EQUIV MODE
    equiv_parser = subparsers.add_parser(
        "check-equiv", help="Exit 0 iff two polytope JSON files are "
                            "normally equivalent")
    equiv_parser.add_argument("first", help="Polytope JSON file")
    equiv_parser.add_argument("second", help="Polytope JSON file")

    # GENERAL OPTIONS
    parser.add_argument(
        "--debug", dest="debug", action="store_const", const=True,
        help="Set log to debug mode")
    parser.add_argument(
        "-v", "--version", dest="version", action="store_const", const=True,
        help="Show version and exit.")

    if args is None and len(sys.argv) == 1:
        parser.print_help()
        sys.exit(EXIT_FAIL)

    return parser.parse_args(args)


def time_budget():
    """Seconds allowed for gated work, from ``PA_TIME_BUDGET_SECS``"""

    value = os.environ.get(TIME_BUDGET_ENV)
    if value is None:
        return DEFAULT_TIME_BUDGET

    try:
        budget = float(value)
    except ValueError:
        raise eh.SanityError("{} must be a number of seconds, got "
                             "'{}'".format(TIME_BUDGET_ENV, value))
    if budget <= 0:
        raise eh.SanityError("{} must be positive, got {}".format(
            TIME_BUDGET_ENV, value))

    return budget


def budgeted_reference(n):
    """Reference model for ``n``, or None when the budget runs out

    Up to :py:data:`construct.REFERENCE_LIMIT` it is computed directly;
    beyond it the enumeration runs in a single worker process that is
    terminated when the budget expires.
    """

    if n <= cs.REFERENCE_LIMIT:
        return cs.reference_pa(n)

    budget = time_budget()
    pool = multiprocessing.Pool(1)
    try:
        job = pool.apply_async(cs.reference_pa, (n, True))
        return job.get(timeout=budget)
    except multiprocessing.TimeoutError:
        logger.warning(colored_print(
            "Reference enumeration for n = {} exceeded {} seconds ({}); "
            "skipping the comparison".format(n, budget, TIME_BUDGET_ENV),
            "yellow_bold"))
        return None
    finally:
        pool.terminate()


def log_stream(args):
    """stderr when the mode writes its data to stdout, stdout otherwise"""

    if args.main_op in DATA_MODES and not getattr(args, "out", None):
        return sys.stderr
    return sys.stdout


def emit(text, out):
    """Writes command output to ``out`` or to stdout"""

    if out:
        ex.write_output(text, out)
        logger.info(colored_print("Written to {}".format(out), "green_bold"))
    else:
        sys.stdout.write(text)


def build(args):

    n = parse_n(args.n)
    c = parse_c(args.c)
    if args.format == "off" and n != 3:
        raise eh.SanityError("OFF export is only available for n = 3")

    logger.debug(colored_print("Building PA_{{{},{}}}...".format(
        n, ec.format_rational(c)), "white"))
    labelled, log = cs.assemble_pa(n, c, record=bool(args.steps))

    if args.against_reference:
        reference = budgeted_reference(n)
        if reference is not None:
            same = pt.normally_equivalent(labelled.poly, reference.poly)
            logger.info("normally equivalent to the reference model: "
                        "{}".format(colored_print(
                            str(same), "green_bold" if same else "red_bold")))

    extra = {"n": n, "c": ec.format_rational(c)}
    if args.steps:
        extra["steps"] = log.to_dict()["steps"]

    title = "PA_{{{},{}}}".format(n, ec.format_rational(c))
    emit(ex.export(labelled, args.format, title, extra), args.out)

    return EXIT_PASS


def verify(args):

    n = parse_n(args.n)
    c = parse_c(args.c)
    if n > 3 and not args.partial:
        raise eh.SanityError("n = {} is only verified with --partial".format(
            n))

    reference = None
    if args.against_reference and n > cs.REFERENCE_LIMIT:
        reference = budgeted_reference(n)
        against = False
    else:
        against = bool(args.against_reference)

    report = vf.verify_minkowski_realisation(
        n, c, against_reference=against, partial=bool(args.partial),
        reference=reference)

    print_report(report)
    if args.out:
        ex.write_output(json.dumps(report.to_dict(), indent=2,
                                   sort_keys=True) + "\n", args.out)

    return report.exit_code


def nestohedron(args):

    n = parse_n(args.n)
    beta = parse_beta(args.beta, n)

    building = ns.b_beta(beta, n)
    poly = cs.nestohedron(building)
    m, face = cs.f_beta_and_m(beta, n)
    excess = cs.n_beta(beta, n)

    print_polytope(poly, "N E S T O H E D R O N")
    logger.info("   {} {}".format(colored_print("m_beta:", "white_underline"),
                                  ec.format_rational(m)))
    logger.info("   {} {}".format(colored_print("F_beta:", "white_underline"),
                                  len(face)))
    logger.info("   {} {} vertices, simple: {}".format(
        colored_print("N_beta:", "white_underline"), len(excess.vertices),
        pt.is_simple(excess)))

    data = {
        "n": n,
        "beta": beta.to_list(),
        "building_set": [sorted(b) for b in building],
        "m_beta": ec.format_rational(m),
        "F_beta": [[ec.format_rational(x) for x in v] for v in face],
        "nestohedron": poly.to_dict(),
        "N_beta": excess.to_dict()
    }
    if args.c is not None:
        c = parse_c(args.c)
        data["c"] = ec.format_rational(c)
        data["N_beta_c"] = cs.n_beta_c(beta, n, c).to_dict()

    emit(json.dumps(data, indent=2, sort_keys=True) + "\n", args.out)

    return EXIT_PASS


def fvector(args):

    n = parse_n(args.n)
    c = parse_c(args.c)

    if args.reference:
        labelled = budgeted_reference(n)
        if labelled is None:
            return EXIT_FAIL
        title = "reference f-vector"
    else:
        labelled, _ = cs.assemble_pa(n, c)
        title = "f-vector"

    fv = pt.f_vector(labelled.poly)
    print_fvector(fv, title)
    sys.stdout.write(json.dumps(list(fv)) + "\n")

    return EXIT_PASS


def export(args):

    poly = ex.polytope_from_json(args.input)
    emit(ex.export(poly, args.format, os.path.basename(args.input)),
         args.out)

    return EXIT_PASS


def check_equiv(args):

    first = ex.polytope_from_json(args.first)
    second = ex.polytope_from_json(args.second)

    same = pt.normally_equivalent(first, second)
    logger.info("normally equivalent: {}".format(colored_print(
        str(same), "green_bold" if same else "red_bold")))

    return EXIT_PASS if same else EXIT_FAIL


MODES = {
    "build": build,
    "verify": verify,
    "nestohedron": nestohedron,
    "fvector": fvector,
    "export": export,
    "check-equiv": check_equiv
}


def run(args):
    """Runs the selected mode and maps its outcome to an exit code"""

    try:
        return MODES[args.main_op](args)
    except INPUT_ERRORS as e:
        logger.error(colored_print(e.value, "red_bold"))
        return EXIT_INPUT
    except (eh.PolytopeError, eh.VerificationError) as e:
        logger.error(colored_print(e.value, "red_bold"))
        return EXIT_FAIL


def main(args=None):

    args = get_args(args)

    if args.version:
        print(__version__)
        if not args.main_op:
            sys.exit(EXIT_PASS)

    if args.debug:
        logger.setLevel(logging.DEBUG)

        # create formatter
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    else:
        logger.setLevel(logging.INFO)

        # create special formatter for info logs
        formatter = logging.Formatter('%(message)s')

    ch = logging.StreamHandler(log_stream(args))
    ch.setLevel(logging.DEBUG)
    ch.setFormatter(formatter)
    logger.handlers = [ch]

    if not args.main_op:
        logger.error(colored_print("Select a mode: {}".format(
            ", ".join(sorted(MODES))), "red_bold"))
        sys.exit(EXIT_INPUT)

    logger.debug("pacraft {} (build {})".format(__version__, __build__))

    sys.exit(run(args))


if __name__ == '__main__':

    main()
