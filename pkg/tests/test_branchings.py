"""Trees, Edmonds-style branching packing, and branching-vs-path splits."""

import pytest

from branchpairs import (
    Digraph,
    PreconditionViolated,
    Tree,
    TypeCertificate,
    bfs_tree,
    edmonds_deficiency,
    enumerate_semicomplete,
    fixture,
    out_branching_vs_path,
    two_arc_disjoint_out_branchings,
)
from branchpairs.branchings import DeficientSet

C3 = fixture("C3").digraph
K3 = fixture("K3").digraph
FIG_A = fixture("FIG_A").digraph
FIG_B = fixture("FIG_B").digraph


class TestTree:
    def test_growth_and_views(self):
        tree = Tree("out", 0)
        tree = tree.add(1, 0).add(2, 1)
        assert tree.covered() == frozenset({0, 1, 2})
        assert tree.arcs() == [(0, 1), (1, 2)]
        assert tree.arc_set() == frozenset({(0, 1), (1, 2)})

    def test_in_tree_arcs_point_toward_root(self):
        tree = Tree("in", 2, {0: 1, 1: 2})
        assert sorted(tree.arcs()) == [(0, 1), (1, 2)]
        assert tree.spine(0).vertices == (0, 1, 2)

    def test_with_arcs_batch(self):
        tree = Tree("out", 0).with_arcs([(0, 1), (1, 2), (0, 3)])
        assert tree.covered() == frozenset({0, 1, 2, 3})

    def test_with_arcs_rejects_known_child(self):
        tree = Tree("out", 0, {1: 0})
        with pytest.raises(ValueError):
            tree.with_arcs([(0, 1)])

    def test_reversed_kind(self):
        tree = Tree("out", 0, {1: 0})
        flipped = tree.reversed_kind()
        assert flipped.kind == "in"
        assert flipped.parent == tree.parent

    def test_validate(self):
        good = Tree("out", 0, {1: 0, 2: 1})
        ok, reason = good.validate(C3)
        assert ok and reason is None
        # (0, 2) is not an arc of the 3-cycle
        bad = Tree("out", 0, {2: 0})
        ok, reason = bad.validate(C3)
        assert not ok and "(0,2)" in reason
        within_ok, _ = good.validate(C3, within=range(3))
        assert within_ok
        partial, reason = Tree("out", 0, {1: 0}).validate(C3, within=range(3))
        assert not partial  # does not span the requested vertex set


def test_bfs_tree_restricted_to_a_side():
    tree = bfs_tree(K3, 1, "out", within=(1, 2))
    assert tree.covered() == frozenset({1, 2})
    assert tree.arcs() == [(1, 2)]
    in_tree = bfs_tree(K3, 0, "in")
    assert in_tree.covered() == frozenset({0, 1, 2})


def test_edmonds_deficiency_examples():
    assert edmonds_deficiency(K3, 0, 2) is None
    assert edmonds_deficiency(FIG_A, 0, 1) is None
    hole = edmonds_deficiency(C3, 0, 2)
    assert isinstance(hole, DeficientSet)
    assert 0 not in hole.vertices
    assert hole.indegree < 2


def test_two_branchings_exhaustive_small():
    for n in range(1, 5):
        for d in enumerate_semicomplete(n):
            for s in range(n):
                result = two_arc_disjoint_out_branchings(d, s)
                if isinstance(result, DeficientSet):
                    assert edmonds_deficiency(d, s, 2) is not None
                    continue
                first, second = result
                assert not (first.arc_set() & second.arc_set())
                for tree in (first, second):
                    ok, reason = tree.validate(d, within=range(n))
                    assert ok, reason
                    assert tree.root == s


def test_two_branchings_exhaustive_order_five():
    built = 0
    for d in enumerate_semicomplete(5):
        for s in range(5):
            result = two_arc_disjoint_out_branchings(d, s)
            if isinstance(result, DeficientSet):
                continue
            first, second = result
            assert not (first.arc_set() & second.arc_set())
            built += 1
    assert built == 164880


def test_branching_vs_path_pair_found():
    outcome = out_branching_vs_path(K3, 0, 2, 1)
    assert isinstance(outcome, tuple)
    branching, path = outcome
    ok, reason = branching.validate(K3, within=range(3))
    assert ok, reason
    assert path.start == 2 and path.end == 1
    assert path.in_digraph(K3)
    assert not set(path.arcs()) & branching.arc_set()


def test_branching_vs_path_single_vertex_path():
    outcome = out_branching_vs_path(K3, 0, 1, 1)
    branching, path = outcome
    assert path.vertices == (1,)
    ok, _ = branching.validate(K3, within=range(3))
    assert ok


def test_branching_vs_path_obstructions():
    cert = out_branching_vs_path(FIG_A, 0, 0, 1)
    assert isinstance(cert, TypeCertificate)
    assert cert.parts[0] == (1,)  # the first part pins the blocked target
    cert = out_branching_vs_path(C3, 0, 1, 2)
    assert isinstance(cert, TypeCertificate)
    assert cert.parts == ((2,), (0, 1))


def test_branching_vs_path_preconditions():
    with pytest.raises(PreconditionViolated):
        out_branching_vs_path(FIG_B, 1, 0, 2)  # u cannot reach everything
    with pytest.raises(PreconditionViolated):
        out_branching_vs_path(FIG_B, 0, 2, 0)  # no (w,v)-path at all


def test_shared_root_failures_have_the_stated_shape():
    # Whenever the u = w case fails, the certificate places v in the first
    # part, u in the second, and the second part has exactly one leaving arc.
    for n in range(2, 5):
        for d in enumerate_semicomplete(n):
            out = d.out_masks()
            for u in range(n):
                for v in range(n):
                    if u == v:
                        continue
                    try:
                        outcome = out_branching_vs_path(d, u, u, v)
                    except PreconditionViolated:
                        continue
                    if isinstance(outcome, tuple):
                        continue
                    assert v in outcome.parts[0]
                    assert u in outcome.parts[1]
                    v2 = set(outcome.parts[1])
                    leaving = sum(
                        1
                        for p in v2
                        for q in range(n)
                        if q not in v2 and d.has_arc(p, q)
                    )
                    assert leaving == 1
