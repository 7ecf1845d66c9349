"""
Building sets and nested-set combinatorics over the ground set ``[n+1]``.

Blocks are frozensets of 1-based integers. A :py:class:`Beta` is one of the
chain-shaped labels ``{beta_max > ... > beta_min}`` whose consecutive blocks
differ by one element; the collection of all of them for a given ``n`` is
``B_1`` (:py:func:`enumerate_B1`) and indexes the facets of the simple
permutoassociahedron.

The simplicial complexes in play are

* ``C_0``: all proper subsets of ``[n+1]`` (:py:func:`c0_membership`);
  its building set ``B_0`` is every nonempty proper subset, so a set of
  blocks is 0-nested exactly when it is a chain;
* ``C_1``: the 0-nested sets, with building set ``B_1``; a set of labels
  is 1-nested when the union of every antichain is 0-nested without being
  a label itself.
"""

import logging

from itertools import combinations, permutations

try:
    from generator.error_handling import NestedSetError
except ImportError:
    from pacraft.generator.error_handling import NestedSetError

logger = logging.getLogger("main.{}".format(__name__))


def ground_set(n):
    return frozenset(range(1, n + 2))


def block_key(block):
    """Sort key of a block: size first, then its sorted elements"""
    return len(block), tuple(sorted(block))


def make_block(elements, n=None):
    """Validated frozenset block, optionally checked against ``[n+1]``"""

    elements = list(elements)
    if not elements:
        raise NestedSetError("blocks must be nonempty")
    if any(isinstance(x, bool) or not isinstance(x, int) for x in elements):
        raise NestedSetError("block {} has non-integer elements".format(
            elements))
    if len(set(elements)) != len(elements):
        raise NestedSetError("block {} repeats an element".format(elements))

    block = frozenset(elements)
    if n is not None and not block <= ground_set(n):
        raise NestedSetError("block {} is not a subset of [{}]".format(
            sorted(block), n + 1))

    return block


def format_block(block):
    return "{" + ",".join(str(x) for x in sorted(block)) + "}"


def c0_membership(n):
    """Membership predicate of ``C_0``: proper subsets of ``[n+1]``"""

    ground = ground_set(n)
    return lambda s: frozenset(s) < ground


def powerset_membership(n):
    """Membership predicate of the full power set of ``[n+1]``"""

    ground = ground_set(n)
    return lambda s: frozenset(s) <= ground


class Beta(object):
    """Chain label ``{beta_max > ... > beta_min}``

    Parameters
    ----------
    min_block : iterable of int
        ``beta_min``, of size ``l + 1``.
    tail : sequence of int
        ``(i_{k-1}, ..., i_1)``: the elements added, in order, to grow
        ``beta_min`` into ``beta_max``.
    """

    __slots__ = ("min_block", "tail", "chain")

    def __init__(self, min_block, tail=()):

        self.min_block = make_block(min_block)
        self.tail = tuple(tail)

        if any(isinstance(x, bool) or not isinstance(x, int)
               for x in self.tail):
            raise NestedSetError("chain tail {} has non-integer "
                                 "elements".format(list(self.tail)))
        if len(set(self.tail)) != len(self.tail):
            raise NestedSetError("chain tail {} repeats an element".format(
                list(self.tail)))
        if self.min_block & set(self.tail):
            raise NestedSetError("chain tail {} meets the minimal block "
                                 "{}".format(list(self.tail),
                                             format_block(self.min_block)))

        growing = [self.min_block]
        for element in self.tail:
            growing.append(growing[-1] | {element})

        self.chain = tuple(reversed(growing))
        """
        tuple: Blocks from ``beta_max`` down to ``beta_min``.
        """

    @classmethod
    def from_chain(cls, blocks):
        """Label of a chain given outermost block first, as in
        ``[[1, 2, 4], [1, 2], [1]]``"""

        blocks = [make_block(b) for b in blocks]
        if not blocks:
            raise NestedSetError("empty chain")

        tail = []
        for outer, inner in zip(blocks[-2::-1], blocks[:0:-1]):
            if not inner < outer or len(outer - inner) != 1:
                raise NestedSetError(
                    "{} does not grow {} by exactly one element".format(
                        format_block(outer), format_block(inner)))
            tail.extend(outer - inner)

        return cls(blocks[-1], tail)

    @property
    def members(self):
        """The chain as a frozenset of blocks"""
        return frozenset(self.chain)

    @property
    def max_block(self):
        return self.chain[0]

    @property
    def k(self):
        return len(self.chain)

    @property
    def l(self):
        return len(self.min_block) - 1

    @property
    def is_singleton(self):
        return self.k == 1

    @property
    def sort_key(self):
        return self.k, tuple(block_key(b) for b in self.chain)

    def check(self, n):
        """Raises unless the label belongs to ``B_1`` for this ``n``"""

        if not self.max_block <= ground_set(n):
            raise NestedSetError("{} is not a chain over [{}]".format(
                self, n + 1))
        if len(self.max_block) > n:
            raise NestedSetError("the largest block of {} must have at most "
                                 "{} elements".format(self, n))

    def weights(self, n):
        """Coefficient of every coordinate in ``kappa_beta``: the number of
        blocks containing it"""

        return tuple(sum(1 for b in self.chain if i in b)
                     for i in range(1, n + 2))

    def comparable(self, other):
        return self.members <= other.members or other.members <= self.members

    def to_list(self):
        return [sorted(b) for b in self.chain]

    def __eq__(self, other):
        if not isinstance(other, Beta):
            return NotImplemented
        return self.min_block == other.min_block and self.tail == other.tail

    def __hash__(self):
        return hash((self.min_block, self.tail))

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __repr__(self):
        return "Beta({})".format(self.to_list())

    def __str__(self):
        return "{" + ",".join(format_block(b) for b in self.chain) + "}"


def as_beta(blocks):
    """The label whose chain is exactly ``blocks``, or None"""

    blocks = sorted({frozenset(b) for b in blocks}, key=len, reverse=True)
    if not blocks:
        return None
    try:
        return Beta.from_chain(blocks)
    except NestedSetError:
        return None


def is_chain(blocks):
    blocks = sorted({frozenset(b) for b in blocks}, key=len)
    return all(a < b for a, b in zip(blocks, blocks[1:]))


class BuildingSet(object):
    """Collection of blocks over ``[n+1]``

    No building-set axiom is enforced on construction; see
    :py:func:`is_building_set`.
    """

    def __init__(self, blocks, n):

        self.n = n
        self.blocks = frozenset(make_block(b, n) for b in blocks)

    @property
    def ground(self):
        return ground_set(self.n)

    @property
    def is_connected(self):
        return self.ground in self.blocks

    def restrict(self, subset):
        """``B|A``: the blocks contained in ``subset``"""

        subset = frozenset(subset)
        return frozenset(b for b in self.blocks if b <= subset)

    def sorted_blocks(self):
        return sorted(self.blocks, key=block_key)

    def __iter__(self):
        return iter(self.sorted_blocks())

    def __contains__(self, block):
        return frozenset(block) in self.blocks

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, BuildingSet):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __repr__(self):
        return "BuildingSet(n={}, [{}])".format(
            self.n, ", ".join(format_block(b) for b in self))


def restrict(building, subset):
    return building.restrict(subset)


def is_building_set(blocks, n, complex_membership=None):
    """Checks the building-set axioms relative to a simplicial complex

    Every vertex of the complex is a block, and the union of two
    intersecting blocks is a block whenever it is a simplex of the complex.
    The default complex is the whole power set of ``[n+1]``.

    Parameters
    ----------
    blocks : iterable
        Collections of integers.
    n : int
    complex_membership : callable, optional
        Predicate on frozensets, e.g. :py:func:`c0_membership`.

    Returns
    -------
    bool
    """

    if complex_membership is None:
        complex_membership = powerset_membership(n)

    ground = ground_set(n)
    blocks = {frozenset(b) for b in blocks}

    if any(not b or not b <= ground for b in blocks):
        return False

    for i in ground:
        if complex_membership(frozenset([i])) and frozenset([i]) not in blocks:
            logger.debug("singleton {{{}}} missing".format(i))
            return False

    for first, second in combinations(blocks, 2):
        if not first & second:
            continue
        union = first | second
        if complex_membership(union) and union not in blocks:
            logger.debug("{} is missing as the union of {} and {}".format(
                format_block(union), format_block(first),
                format_block(second)))
            return False

    return True


def b0(n):
    """``B_0``: every nonempty proper subset of ``[n+1]``"""

    ground = sorted(ground_set(n))
    return BuildingSet([c for size in range(1, n + 1)
                        for c in combinations(ground, size)], n)


def permutohedron_building_set(n):
    """``B_0`` together with the whole ground set"""
    return BuildingSet(list(b0(n).blocks) + [ground_set(n)], n)


def enumerate_B1(n):
    """All chain labels for ``n``, sorted canonically"""

    if n < 1:
        raise NestedSetError("n must be positive, got {}".format(n))

    ground = sorted(ground_set(n))
    labels = set()
    for size in range(1, n + 1):
        for min_block in combinations(ground, size):
            rest = [i for i in ground if i not in min_block]
            for k in range(1, n - size + 2):
                for tail in permutations(rest, k - 1):
                    labels.add(Beta(min_block, tail))

    return sorted(labels)


def b_beta(beta, n):
    """Building set ``B_beta`` of a non-singleton label

    The blocks of ``beta``, the nonempty proper subsets of ``beta_min``, the
    proper supersets of ``beta_max`` (``[n+1]`` included) and all
    singletons.
    """

    if beta.is_singleton:
        raise NestedSetError("B_beta is only defined for non-singleton "
                             "labels, got {}".format(beta))
    beta.check(n)

    ground = ground_set(n)
    blocks = set(beta.members)
    blocks.update(frozenset([i]) for i in ground)

    inner = sorted(beta.min_block)
    for size in range(1, len(inner)):
        blocks.update(frozenset(c) for c in combinations(inner, size))

    outside = sorted(ground - beta.max_block)
    for size in range(1, len(outside) + 1):
        blocks.update(beta.max_block | frozenset(c)
                      for c in combinations(outside, size))

    return BuildingSet(blocks, n)


def antichains(items, comparable):
    """Every subset of at least two pairwise incomparable items"""

    items = list(items)

    def grow(start, chosen):
        for i in range(start, len(items)):
            candidate = items[i]
            if any(comparable(candidate, other) for other in chosen):
                continue
            chosen.append(candidate)
            if len(chosen) >= 2:
                yield tuple(chosen)
            for found in grow(i + 1, chosen):
                yield found
            chosen.pop()

    return grow(0, [])


def _subsets_comparable(first, second):
    return first <= second or second <= first


def is_nested(nested, building, complex_membership):
    """Antichain test of a set of blocks

    Parameters
    ----------
    nested : iterable
        Blocks, all of them members of ``building``.
    building : BuildingSet or iterable
    complex_membership : callable
        Predicate on frozensets describing the ambient complex.

    Returns
    -------
    bool
        True iff the union of every antichain of ``nested`` lies in the
        complex but not in ``building``.
    """

    blocks = building.blocks if isinstance(building, BuildingSet) else \
        {frozenset(b) for b in building}
    nested = {frozenset(b) for b in nested}

    if not nested <= blocks:
        raise NestedSetError("{} are not blocks of the building set".format(
            [format_block(b) for b in nested - blocks]))

    for antichain in antichains(sorted(nested, key=block_key),
                                _subsets_comparable):
        union = frozenset().union(*antichain)
        if not complex_membership(union) or union in blocks:
            return False

    return True


def is_0_nested(blocks, n):
    """0-nestedness: the blocks are proper nonempty subsets of ``[n+1]``
    forming a chain (``C_0 - B_0`` only holds the empty set)"""

    ground = ground_set(n)
    blocks = {frozenset(b) for b in blocks}
    if any(not b or not b < ground for b in blocks):
        return False
    return is_chain(blocks)


def _union_is_admissible(labels, n):
    union = frozenset().union(*(beta.members for beta in labels))
    return is_0_nested(union, n) and as_beta(union) is None


def _label_comparable(first, second):
    return first.comparable(second)


def is_1_nested(labels, n):
    """Antichain test of a set of chain labels against ``C_1`` and ``B_1``"""

    labels = sorted(set(labels))
    for beta in labels:
        beta.check(n)

    return all(_union_is_admissible(antichain, n)
               for antichain in antichains(labels, _label_comparable))


def labels_share_vertex(first, second, n):
    """True iff the labels are comparable or their union is 0-nested
    without being a label"""

    if first == second:
        raise NestedSetError("labels must be distinct, got {} twice".format(
            first))
    return first.comparable(second) or _union_is_admissible((first, second), n)


def _can_extend(chosen, candidate, comparable, admissible):
    """Whether ``chosen + [candidate]`` stays nested, given that ``chosen``
    already is: only antichains through the candidate are new"""

    others = [x for x in chosen if not comparable(x, candidate)]
    if not others:
        return True

    def grow(start, picked):
        for i in range(start, len(others)):
            other = others[i]
            if any(comparable(other, p) for p in picked):
                continue
            picked.append(other)
            if not admissible((candidate,) + tuple(picked)):
                return False
            if not grow(i + 1, picked):
                return False
            picked.pop()
        return True

    return grow(0, [])


def _maximal_faces(candidates, comparable, admissible):
    """Depth-first enumeration of the maximal nested sets drawn from
    ``candidates`` (kept in the given canonical order)"""

    found = []

    def extend(start, chosen):
        extended = False
        for i in range(start, len(candidates)):
            candidate = candidates[i]
            if _can_extend(chosen, candidate, comparable, admissible):
                extended = True
                chosen.append(candidate)
                extend(i + 1, chosen)
                chosen.pop()

        if extended:
            return
        if all(not _can_extend(chosen, c, comparable, admissible)
               for c in candidates[:start] if c not in chosen):
            found.append(frozenset(chosen))

    extend(0, [])
    return found


def maximal_nested_sets(building):
    """Maximal nested sets of ``building - {[n+1]}`` in ``C_0``

    Parameters
    ----------
    building : BuildingSet
        Building set containing the whole ground set.

    Returns
    -------
    list of frozenset
        Each maximal nested set as a frozenset of blocks, in depth-first
        order over the canonically sorted blocks.
    """

    if not building.is_connected:
        raise NestedSetError("the building set must contain [{}]".format(
            building.n + 1))

    ground = building.ground
    candidates = [b for b in building.sorted_blocks() if b != ground]

    def admissible(blocks):
        union = frozenset().union(*blocks)
        return union < ground and union not in building.blocks

    found = _maximal_faces(candidates, _subsets_comparable, admissible)
    logger.debug("{} maximal nested sets for {}".format(len(found), building))

    return found


def enumerate_maximal_1_nested(n):
    """All maximal 1-nested sets of labels, by backtracking over ``B_1``"""

    labels = enumerate_B1(n)

    def admissible(picked):
        return _union_is_admissible(picked, n)

    found = _maximal_faces(labels, _label_comparable, admissible)
    logger.debug("{} maximal 1-nested sets for n = {}".format(len(found), n))

    return found
