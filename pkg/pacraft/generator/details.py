import sys
import logging

logger = logging.getLogger("main.{}".format(__name__))

COLORS = {
    "green_bold": "1;32m",
    "red_bold": "1;31m",
    "white": "0;38m",
    "white_bold": "1;38m",
    "white_underline": "4;38m",
    "blue_bold": "1;36m",
    "purple_bold": "1;34m",
    "yellow_bold": "1;93m"
}


def colored_print(msg, color_label="white_bold"):
    """Wraps ``msg`` in the ANSI escape of ``color_label``

    Non-ASCII characters are dropped when stdout is not UTF-8. Labels missing
    from :py:data:`COLORS` are used as the raw escape code.

    Parameters
    ----------
    msg : str
    color_label : str
        Key of :py:data:`COLORS` or an escape code such as ``"1;32m"``.
    """

    if sys.stdout.encoding != "UTF-8":
        msg = "".join([i if ord(i) < 128 else "" for i in msg])

    try:
        col = COLORS[color_label]
    except KeyError:
        col = color_label

    return "\x1b[{}{}\x1b[0m".format(col, msg)


def status_label(passed):
    return colored_print("PASS", "green_bold") if passed else \
        colored_print("FAIL", "red_bold")


def print_polytope(poly, title):
    """Logs the dimension, vertex and facet counts of a polytope"""

    logger.info(colored_print("\n===== {} =====\n".format(title),
                              "green_bold"))
    for info, value in [("ambient dimension", poly.ambient_dim),
                        ("dimension", poly.dim),
                        ("vertices", len(poly.vertices)),
                        ("facets", len(poly.facets))]:
        logger.info("   {} {}".format(colored_print(info + ":",
                                                    "white_underline"), value))


def print_fvector(fvector, title="f-vector"):

    logger.info("   {} ({})  euler: {}".format(
        colored_print(title + ":", "white_underline"),
        ", ".join(str(x) for x in fvector),
        status_label(fvector.satisfies_euler())))


def print_report(report):
    """Logs every check of a verification report, failures with their
    witness"""

    logger.info(colored_print(
        "\n===== V E R I F I C A T I O N =====\n", "green_bold"))

    for key, value in sorted(report.subject.items()):
        logger.info("   {} {}".format(
            colored_print("{}:".format(key), "white_underline"), value))

    for check in report.checks:
        logger.debug("   [{}] {} {}".format(check.group, check.name,
                                            status_label(check.passed)))

    for group, passed in sorted(report.summary.items()):
        logger.info("=> {} {}".format(colored_print(group, "blue_bold"),
                                      status_label(passed)))

    for check in report.failures():
        logger.info(colored_print("   {}: {}".format(check.name,
                                                     check.witness),
                                  "red_bold"))

    logger.info(colored_print(
        "\nAll checks passed" if report.passed else
        "\n{} check(s) failed".format(len(report.failures())),
        "green_bold" if report.passed else "red_bold"))
