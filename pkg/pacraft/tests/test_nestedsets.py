import pytest

from itertools import combinations

try:
    import generator.nestedsets as ns
    from generator.error_handling import NestedSetError
except ImportError:
    import pacraft.generator.nestedsets as ns
    from pacraft.generator.error_handling import NestedSetError


@pytest.fixture
def beta_12_1():
    return ns.Beta.from_chain([[1, 2], [1]])


def test_make_block():

    assert ns.make_block([2, 1], 2) == frozenset({1, 2})

    for elements in [[], [1, 1], [1, 4], [True], ["1"]]:
        with pytest.raises(NestedSetError):
            ns.make_block(elements, 2)


def test_beta_from_chain():

    beta = ns.Beta.from_chain([[1, 2, 4], [1, 2], [1]])

    assert beta.min_block == frozenset({1})
    assert beta.tail == (2, 4)
    assert beta.k == 3
    assert beta.l == 0
    assert beta.max_block == frozenset({1, 2, 4})
    assert beta.to_list() == [[1, 2, 4], [1, 2], [1]]
    assert beta.weights(3) == (3, 2, 0, 1)
    assert str(beta) == "{{1,2,4},{1,2},{1}}"


def test_beta_not_a_chain():

    for chain in [[[1, 2], [2, 3]], [[1, 2, 3], [1]], [], [[1], [1]]]:
        with pytest.raises(NestedSetError):
            ns.Beta.from_chain(chain)


def test_beta_check():

    with pytest.raises(NestedSetError):
        ns.Beta([1, 2, 3]).check(2)

    with pytest.raises(NestedSetError):
        ns.Beta([1], (5,)).check(3)


def test_beta_tail_errors():

    for min_block, tail in [([1], (1,)), ([1], (2, 2)), ([1], (True,))]:
        with pytest.raises(NestedSetError):
            ns.Beta(min_block, tail)


def test_as_beta():

    assert ns.as_beta([{1}, {1, 2}]) == ns.Beta([1], (2,))
    assert ns.as_beta([{1}, {2}]) is None
    assert ns.as_beta([]) is None


def test_enumerate_B1_counts():

    assert len(ns.enumerate_B1(2)) == 12
    assert len(ns.enumerate_B1(3)) == 62
    assert len(ns.enumerate_B1(4)) == 340


def test_enumerate_B1_order():

    labels = ns.enumerate_B1(2)

    assert labels == sorted(labels)
    assert labels[0] == ns.Beta([1])
    assert all(not beta.is_singleton for beta in labels[6:])
    assert len(set(labels)) == len(labels)


def test_b0():

    assert len(ns.b0(2)) == 6
    assert len(ns.permutohedron_building_set(2)) == 7
    assert ns.permutohedron_building_set(2).is_connected
    assert not ns.b0(2).is_connected


def test_is_building_set():

    b0 = ns.b0(2).blocks

    assert ns.is_building_set(b0, 2, ns.c0_membership(2))
    assert not ns.is_building_set(b0, 2)
    assert ns.is_building_set(ns.permutohedron_building_set(2).blocks, 2)
    assert not ns.is_building_set([{1}, {2}, {3}, {1, 2}, {2, 3}], 2)
    assert not ns.is_building_set([{1}, {2}], 2)


def test_b_beta(beta_12_1):

    building = ns.b_beta(beta_12_1, 2)

    assert building.sorted_blocks() == [
        frozenset({1}), frozenset({2}), frozenset({3}), frozenset({1, 2}),
        frozenset({1, 2, 3})]
    assert ns.is_building_set(building.blocks, 2)


def test_b_beta_n3():

    beta = ns.Beta.from_chain([[1, 2, 4], [1, 2]])
    building = ns.b_beta(beta, 3)

    assert len(building) == 7
    assert frozenset({1, 2, 3, 4}) in building
    assert len(ns.restrict(building, {1, 2, 4})) == 5
    assert len(building.restrict({1, 2})) == 3


def test_b_beta_singleton():

    with pytest.raises(NestedSetError):
        ns.b_beta(ns.Beta([1]), 2)


def test_is_nested():

    b0 = ns.b0(2)
    c0 = ns.c0_membership(2)

    assert not ns.is_nested([{1}, {3}], b0, c0)
    assert ns.is_nested([{1}, {1, 2}], b0, c0)
    assert ns.is_nested([{2}], b0, c0)

    with pytest.raises(NestedSetError):
        ns.is_nested([{1, 2, 3}], b0, c0)


def test_is_0_nested():

    assert ns.is_0_nested([{1}, {1, 2}], 2)
    assert not ns.is_0_nested([{1}, {2}], 2)
    assert not ns.is_0_nested([{1}, {1, 2, 3}], 2)


def test_is_1_nested(beta_12_1):

    singleton = ns.Beta([1])

    assert ns.is_1_nested([singleton, beta_12_1], 2)
    # the union of the two labels is itself a label
    assert not ns.is_1_nested([singleton, ns.Beta([1, 2])], 2)
    assert not ns.is_1_nested([ns.Beta([1]), ns.Beta([2])], 2)


def test_labels_share_vertex(beta_12_1):

    assert ns.labels_share_vertex(ns.Beta([1]), beta_12_1, 2)
    assert not ns.labels_share_vertex(ns.Beta([1]), ns.Beta([2]), 2)
    assert not ns.labels_share_vertex(ns.Beta([1]), ns.Beta([1, 2]), 2)

    with pytest.raises(NestedSetError):
        ns.labels_share_vertex(beta_12_1, beta_12_1, 2)


def test_maximal_nested_sets():

    assert len(ns.maximal_nested_sets(ns.permutohedron_building_set(2))) == 6
    assert len(ns.maximal_nested_sets(ns.permutohedron_building_set(3))) == 24

    for nested in ns.maximal_nested_sets(ns.permutohedron_building_set(3)):
        assert len(nested) == 3
        assert ns.is_nested(nested, ns.b0(3), ns.c0_membership(3))


def test_subsets_of_nested_sets_are_nested():

    for n in [2, 3]:
        c0 = ns.c0_membership(n)
        buildings = [ns.permutohedron_building_set(n)] + \
            [ns.b_beta(beta, n) for beta in ns.enumerate_B1(n)
             if not beta.is_singleton]

        for building in buildings:
            for nested in ns.maximal_nested_sets(building):
                for size in range(len(nested) + 1):
                    for subset in combinations(nested, size):
                        assert ns.is_nested(subset, building, c0)


def test_maximal_nested_sets_disconnected():

    with pytest.raises(NestedSetError):
        ns.maximal_nested_sets(ns.b0(2))


def test_maximal_1_nested():

    found = ns.enumerate_maximal_1_nested(2)

    assert len(found) == 12
    assert len(set(found)) == 12
    assert all(len(nested) == 2 for nested in found)
    assert all(ns.is_1_nested(nested, 2) for nested in found)


def test_maximal_1_nested_n3():

    found = ns.enumerate_maximal_1_nested(3)

    assert len(found) == 120
    assert all(len(nested) == 3 for nested in found)
