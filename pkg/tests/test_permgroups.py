import pytest

from morigal.permgroups import (
    SymmetricGroup,
    cycle_type,
    enumerate_subgroups_naive,
    subgroup_classes,
    subgroup_oracle,
)


def test_cycle_type():
    assert cycle_type((1, 2, 0, 3)) == (1, 3)
    assert cycle_type((0, 1, 2)) == (1, 1, 1)


def test_multiplication_table_is_composition():
    G = SymmetricGroup(4)
    for a in range(0, G.order, 5):
        for b in range(0, G.order, 7):
            pa, pb = G.perm(a), G.perm(b)
            assert G.perm(int(G.table[a, b])) == tuple(pa[pb[i]] for i in range(4))
        assert G.table[a, G.inverse[a]] == G.identity


@pytest.mark.parametrize("n, total, classes", [(3, 6, 4), (4, 30, 11), (5, 156, 19)])
def test_subgroup_counts_match_naive_closure(n, total, classes):
    naive = enumerate_subgroups_naive(n)
    G = SymmetricGroup(n)
    found = subgroup_classes(G)
    assert len(found) == classes
    assert sum(c.class_size(G.order) for c in found) == len(naive) == total
    # orders agree as multisets
    by_order = {}
    for c in found:
        by_order[c.order] = by_order.get(c.order, 0) + c.class_size(G.order)
    naive_orders = {}
    for H in naive:
        naive_orders[len(H)] = naive_orders.get(len(H), 0) + 1
    assert by_order == naive_orders


def test_oracle_n3():
    r = subgroup_oracle(3)
    assert r.holds and r.transitive_count == 2  # A_3 and S_3


def test_oracle_n5():
    r = subgroup_oracle(5)
    assert r.holds and r.subgroup_count == 156
    assert r.summary() == "property holds; 156 subgroups enumerated"


def test_oracle_refuses_large_degree():
    with pytest.raises(ValueError):
        subgroup_oracle(8)


def test_property_fails_without_transitivity_hypothesis():
    # S_4 has the intransitive subgroup S_3 x 1 containing a 3-cycle and a transposition;
    # transitivity is what the oracle relies on, so it must not be vacuous
    G = SymmetricGroup(4)
    found = subgroup_classes(G)
    three = G.type_names.index((1, 3))
    two = G.type_names.index((1, 1, 2))
    assert any(not c.transitive and c.type_counts[three] and c.type_counts[two] for c in found)
