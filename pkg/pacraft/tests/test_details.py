import pytest

from itertools import permutations

try:
    import generator.details as dt
    import generator.polytope as pt
    import generator.verify as vf
except ImportError:
    import pacraft.generator.details as dt
    import pacraft.generator.polytope as pt
    import pacraft.generator.verify as vf


def test_color_print():

    for color, code in dt.COLORS.items():
        assert dt.colored_print("text", color) == \
            "\x1b[{}text\x1b[0m".format(code)


def test_color_print_raw_code():

    assert dt.colored_print("text", "0;31m") == "\x1b[0;31mtext\x1b[0m"


def test_status_label():

    assert "PASS" in dt.status_label(True)
    assert "FAIL" in dt.status_label(False)


def test_print_report(caplog):

    report = vf.VerificationReport({"n": 2})
    report.add("simple", False, {"vertex": [1, 2, 3]}, group="i")

    with caplog.at_level("INFO", logger="main"):
        dt.print_report(report)

    assert "1 check(s) failed" in caplog.text


def test_print_polytope(caplog):

    with caplog.at_level("INFO", logger="main"):
        dt.print_polytope(pt.hull(permutations((1, 2, 3))), "hexagon")
        dt.print_fvector(pt.f_vector(pt.hull(permutations((1, 2, 3)))))

    assert "hexagon" in caplog.text
    assert "6, 6" in caplog.text
