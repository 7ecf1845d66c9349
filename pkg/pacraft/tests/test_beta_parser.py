import pytest
from contextlib import contextmanager

from fractions import Fraction

try:
    import generator.beta_parser as bp
    import generator.nestedsets as ns
    from generator.error_handling import SanityError
except ImportError:
    import pacraft.generator.beta_parser as bp
    import pacraft.generator.nestedsets as ns
    from pacraft.generator.error_handling import SanityError


@contextmanager
def not_raises(exception, msg):
    try:
        yield
    except exception:
        raise pytest.fail(msg)


def test_empty_string():

    for chain_str in ["", "   "]:
        with pytest.raises(SanityError):
            bp.empty_string_sanity(chain_str)


def test_brackets_but_no_blocks():

    for chain_str in ["[]", "[[]]", "[ [ ], [ ] ]"]:
        with pytest.raises(SanityError):
            bp.brackets_but_no_blocks(chain_str)


def test_brackets_sanity():

    for chain_str in ["[[1,2]", "[[1,2]]]", "][1]["]:
        with pytest.raises(SanityError):
            bp.brackets_sanity(chain_str)


def test_insanity_checks_pass():

    with not_raises(SanityError, "valid chain was rejected"):
        bp.insanity_checks("[[1,2,4],[1,2],[1]]")


def test_parse_chain():

    assert bp.parse_chain(" [[1, 2], [1]] ") == [[1, 2], [1]]

    for chain_str in ["[[1,2],[a]]", "[1,2]", "{\"a\": 1}", "[[1.5]]",
                      "[[true]]"]:
        with pytest.raises(SanityError):
            bp.parse_chain(chain_str)


def test_parse_beta():

    beta = bp.parse_beta("[[1,2,4],[1,2],[1]]", 3)

    assert beta == ns.Beta([1], (2, 4))
    assert beta.k == 3


def test_parse_beta_invalid():

    chains = [
        "",
        "[[1,2],[2,3]]",
        "[[1,2]",
        "[[]]",
        "[[1,2]]",
        "[[1,2,3,4],[1,2]]"
    ]

    for chain_str in chains:
        with pytest.raises(SanityError):
            bp.parse_beta(chain_str, 3)


def test_parse_beta_singleton_allowed():

    with not_raises(SanityError, "singleton label was rejected"):
        beta = bp.parse_beta("[[1,2]]", 2, non_singleton=False)

    assert beta.is_singleton


def test_parse_c():

    assert bp.parse_c("1/2") == Fraction(1, 2)
    assert bp.parse_c("1") == 1

    for c_str in ["0", "2", "-1/3", "abc", "1/0"]:
        with pytest.raises(SanityError):
            bp.parse_c(c_str)


def test_parse_n():

    with not_raises(SanityError, "n = 4 was rejected"):
        bp.parse_n(4)

    for n in [1, 5]:
        with pytest.raises(SanityError):
            bp.parse_n(n)

    with pytest.raises(SanityError):
        bp.parse_n(4, allowed=(2, 3))
