import json
import logging

try:
    import generator.exact_core as ec
    import generator.nestedsets as ns
    from generator.error_handling import SanityError, ExactError, \
        NestedSetError
except ImportError:
    import pacraft.generator.exact_core as ec
    import pacraft.generator.nestedsets as ns
    from pacraft.generator.error_handling import SanityError, ExactError, \
        NestedSetError

logger = logging.getLogger("main.{}".format(__name__))

# Tokens of the chain syntax
OPEN_TOKEN = "["
CLOSE_TOKEN = "]"


def empty_string_sanity(chain_str):
    if not chain_str.strip():
        raise SanityError("an empty chain was provided")


def brackets_but_no_blocks(chain_str):
    if chain_str.replace(" ", "").replace(OPEN_TOKEN, "").replace(
            CLOSE_TOKEN, "").replace(",", "") == "":
        raise SanityError("chain '{}' has no elements".format(chain_str))


def brackets_sanity(chain_str):
    """Every opening bracket is closed, never before it is opened"""

    depth = 0
    for char in chain_str:
        if char == OPEN_TOKEN:
            depth += 1
        elif char == CLOSE_TOKEN:
            depth -= 1
        if depth < 0:
            raise SanityError("a ']' closes nothing in '{}'".format(
                chain_str))
    if depth:
        raise SanityError("'{}' leaves {} bracket(s) open".format(
            chain_str, depth))


def insanity_checks(chain_str):
    """Syntax checks run before the chain is decoded"""

    for check in [empty_string_sanity, brackets_sanity,
                  brackets_but_no_blocks]:
        check(chain_str)


def parse_chain(chain_str):
    """Decodes ``"[[1,2,4],[1,2]]"`` into a list of integer lists"""

    insanity_checks(chain_str)

    try:
        blocks = json.loads(chain_str)
    except ValueError:
        raise SanityError("'{}' is not a JSON list of blocks".format(
            chain_str))

    if not isinstance(blocks, list) or not blocks or \
            not all(isinstance(b, list) for b in blocks):
        raise SanityError("'{}' must be a nonempty list of blocks".format(
            chain_str))

    for block in blocks:
        if not block or any(isinstance(x, bool) or not isinstance(x, int)
                            for x in block):
            raise SanityError("block {} must be a nonempty list of "
                              "integers".format(block))

    return blocks


def parse_beta(chain_str, n, non_singleton=True):
    """Chain label named on the command line, validated for ``n``

    Parameters
    ----------
    chain_str : str
        Blocks from the outermost to the innermost, e.g.
        ``"[[1,2,4],[1,2],[1]]"``.
    n : int
    non_singleton : bool
        Also reject one-block chains.

    Returns
    -------
    nestedsets.Beta
    """

    blocks = parse_chain(chain_str)

    try:
        beta = ns.Beta.from_chain(blocks)
        beta.check(n)
    except NestedSetError as e:
        raise SanityError("'{}' is not a chain label for n = {} ({})".format(
            chain_str, n, e.value))

    if non_singleton and beta.is_singleton:
        raise SanityError("'{}' has a single block; a chain of at least two "
                          "blocks is needed".format(chain_str))

    logger.debug("parsed chain label {}".format(beta))

    return beta


def parse_c(c_str):
    """Exact offset ``c`` in ``(0, 1]`` from a ``"p/q"`` string"""

    try:
        c = ec.to_rational(c_str)
    except ExactError as e:
        raise SanityError(e.value)

    if not 0 < c <= 1:
        raise SanityError("c must lie in (0, 1], got {}".format(
            ec.format_rational(c)))

    return c


def parse_n(n, allowed=(2, 3, 4)):

    if n not in allowed:
        raise SanityError("n must be one of {}, got {}".format(
            ", ".join(str(x) for x in allowed), n))
    return n
