import random

from netredist.critical_tree import critical_tree
from netredist.profiles import SPONSOR, induce_graph

from networks import misreport_deviation, reach_diamond, reference_network_10
from oracles import brute_parent_map, random_digraph_profile


def test_diamond_parent_skips_non_critical_intermediaries():
    # H can be reached through C or D, so neither is critical for her;
    # the nearest cut point is A.
    tree = critical_tree(induce_graph(reach_diamond()))
    assert tree.parent["H"] == "A"
    assert tree.parent["J"] == "H"
    assert tree.parent["C"] == "A"
    assert tree.parent["D"] == "A"
    assert tree.root_branches == ("A", "B")


def test_invitation_tree_is_its_own_critical_tree():
    tree = critical_tree(induce_graph(reference_network_10()))
    assert tree.parent == {
        "A": SPONSOR, "M": SPONSOR, "N": SPONSOR,
        "H": "A", "G": "A", "E": "A", "F": "A",
        "J": "H", "K": "H", "L": "K",
    }
    assert tree.subtree["A"] == frozenset("HGEFJKL")
    assert tree.subtree["J"] == frozenset()
    assert tree.branch_members("A") == frozenset("AHGEFJKL")


def test_ancestors_run_from_branch_root_to_agent():
    tree = critical_tree(induce_graph(reference_network_10()))
    assert tree.ancestors("J") == ["A", "H", "J"]
    assert tree.ancestors("A") == ["A"]
    assert tree.depth("L") == 4


def test_branch_of_indexes_into_root_branches():
    tree = critical_tree(induce_graph(reference_network_10()))
    for i in tree.agents:
        root = tree.root_branches[tree.branch_of[i]]
        assert i in tree.branch_members(root)


def test_unreachable_agents_are_excluded():
    tree = critical_tree(induce_graph(misreport_deviation()))
    assert set(tree.parent) == set("ABCDFG")


def test_matches_cut_point_oracle_on_random_digraphs():
    rng = random.Random(20240817)
    for _ in range(120):
        profile = random_digraph_profile(rng, rng.randint(1, 10))
        graph = induce_graph(profile)
        if not graph.reachable:
            continue
        tree = critical_tree(graph)
        assert dict(tree.parent) == brute_parent_map(graph)


def test_subtree_matches_unreachability_oracle():
    rng = random.Random(7)
    for _ in range(40):
        profile = random_digraph_profile(rng, rng.randint(2, 9))
        graph = induce_graph(profile)
        if not graph.reachable:
            continue
        tree = critical_tree(graph)
        for v in graph.reachable:
            cut = graph.reachable - graph.reachable_from(SPONSOR, frozenset({v}))
            assert tree.subtree[v] == cut - {v}
