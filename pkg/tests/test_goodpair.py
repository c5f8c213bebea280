"""Decision, construction, and verification of good (u,v)-pairs, plus the
tree-extension move table they are built on."""

import pytest

from branchpairs import (
    BadEndpoints,
    ChainObstruction,
    CutArcObstruction,
    Digraph,
    ExtensionObstruction,
    GoodPair,
    InternalInconsistency,
    NotSemicomplete,
    PreconditionViolated,
    RootMisplaced,
    SameRootStructure,
    SmallException,
    Tree,
    construct_good_pair,
    decide_good_pair,
    enumerate_semicomplete,
    exception_catalog,
    extend_trees_across_cut,
    fixture,
    oracle_good_pair,
    oracle_good_pair_targets,
    same_root_pair,
    verify_certificate,
    verify_good_pair,
)
from conftest import assert_good_pair

C3 = fixture("C3").digraph
K3 = fixture("K3").digraph
S4 = fixture("S4").digraph
FIG_B = fixture("FIG_B").digraph
FIG_D = fixture("FIG_D").digraph
CHAIN4 = fixture("CHAIN4").digraph
DIGON = Digraph.from_arcs(2, [(0, 1), (1, 0)])

# Five singleton layers whose only counter-arcs are the chain back arcs.
CHAIN5 = Digraph.from_arcs(
    5,
    [(0, 1), (0, 2), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 0), (3, 4), (4, 0)],
)


# --------------------------------------------------------------------------
# decide


def test_catalog_members_are_refused_with_their_own_id():
    for catalog_id, digraph, u, v in exception_catalog():
        cert = decide_good_pair(digraph, u, v)
        assert isinstance(cert, SmallException)
        assert cert.catalog_id == catalog_id
        ok, reason = verify_certificate(digraph, u, v, cert)
        assert ok, reason


def test_catalog_roles_are_pinned():
    # FIG_D refuses only its designated roles; the same digraph with the
    # roots moved admits a pair.
    assert decide_good_pair(FIG_D, 1, 3) is None
    assert_good_pair(FIG_D, 1, 3, construct_good_pair(FIG_D, 1, 3))


def test_s4_accepts_every_role_choice():
    for u in range(4):
        for v in range(4):
            assert decide_good_pair(S4, u, v) is None


def test_root_misplaced_certificates():
    cert = decide_good_pair(FIG_B, 1, 2)
    assert isinstance(cert, RootMisplaced)
    assert cert.which == "u-not-initial"
    assert cert.decomposition.components == ((0,), (1,), (2,))
    ok, reason = verify_certificate(FIG_B, 1, 2, cert)
    assert ok, reason
    assert decide_good_pair(FIG_B, 0, 1).which == "v-not-terminal"


def test_cut_arc_certificate_on_chain4():
    cert = decide_good_pair(CHAIN4, 3, 1)
    assert isinstance(cert, CutArcObstruction)
    assert cert.arc == (3, 1)
    assert cert.decomposition.components == ((0, 1, 2), (3,))
    ok, reason = verify_certificate(CHAIN4, 3, 1, cert)
    assert ok, reason


def test_cut_arc_certificate_on_digon():
    cert = decide_good_pair(DIGON, 0, 1)
    assert isinstance(cert, CutArcObstruction)
    assert cert.arc == (0, 1)
    ok, reason = verify_certificate(DIGON, 0, 1, cert)
    assert ok, reason


def test_odd_chain_certificate():
    cert = decide_good_pair(CHAIN5, 2, 3)
    assert isinstance(cert, ChainObstruction)
    assert cert.certificate.parts == ((1,), (3,), (0,), (2,), (4,))
    assert cert.certificate.back_arcs == ((0, 1), (2, 3), (4, 0))
    ok, reason = verify_certificate(CHAIN5, 2, 3, cert)
    assert ok, reason
    # construct routes the same verdict through
    assert isinstance(construct_good_pair(CHAIN5, 2, 3), ChainObstruction)


def test_decide_same_root_via_cut_arc():
    cert = decide_good_pair(C3, 0, 0)
    assert isinstance(cert, CutArcObstruction)
    ok, reason = verify_certificate(C3, 0, 0, cert)
    assert ok, reason


def test_decide_input_errors():
    with pytest.raises(BadEndpoints):
        decide_good_pair(C3, 0, 3)
    with pytest.raises(NotSemicomplete):
        decide_good_pair(Digraph.from_arcs(3, [(0, 1), (1, 2)]), 0, 2)


# --------------------------------------------------------------------------
# construct + verify


def test_construct_s4_everywhere():
    for u in range(4):
        for v in range(4):
            assert_good_pair(S4, u, v, construct_good_pair(S4, u, v))


def test_construct_k3_everywhere():
    for u in range(3):
        for v in range(3):
            assert_good_pair(K3, u, v, construct_good_pair(K3, u, v))


def test_construct_on_a_digon():
    pair = construct_good_pair(DIGON, 0, 0)
    assert isinstance(pair, GoodPair)
    assert pair.out_branching.arc_set() == frozenset({(0, 1)})
    assert pair.in_branching.arc_set() == frozenset({(1, 0)})


def test_same_root_pair_on_k3():
    pair = same_root_pair(K3, 0)
    assert isinstance(pair, GoodPair)
    assert_good_pair(K3, 0, 0, pair)


def test_same_root_structure_on_c3():
    structure = same_root_pair(C3, 0)
    assert structure == SameRootStructure(a_set=(1,), b_set=(2,), c_set=(), arc=(1, 2))
    ok, reason = verify_certificate(C3, 0, 0, structure)
    assert ok, reason


def test_search_budget_exhaustion_is_loud(monkeypatch):
    d = Digraph.from_arcs(3, [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0)])
    assert_good_pair(d, 0, 2, construct_good_pair(d, 0, 2))
    monkeypatch.setenv("BRANCHPAIRS_SEARCH_BUDGET", "1")
    with pytest.raises(InternalInconsistency):
        construct_good_pair(d, 0, 2)


def test_verify_good_pair_rejections():
    pair = construct_good_pair(S4, 0, 3)
    shared = GoodPair(pair.out_branching, pair.out_branching.reversed_kind())
    ok, reason = verify_good_pair(S4, 0, 3, shared)
    assert not ok and isinstance(reason, str)
    ok, _ = verify_good_pair(S4, 1, 3, pair)  # wrong out root
    assert not ok
    partial = GoodPair(Tree("out", 0, {1: 0}), pair.in_branching)
    ok, _ = verify_good_pair(S4, 0, 3, partial)  # out side does not span
    assert not ok
    # a pair built for S4 leans on arcs FIG_D does not have
    ok, _ = verify_good_pair(FIG_D, 0, 3, pair)
    assert not ok


def test_verify_certificate_rejections():
    small = decide_good_pair(*exception_catalog()[0][1:])
    wrong_small = SmallException("b", small.iso)
    ok, _ = verify_certificate(exception_catalog()[0][1], 0, 1, wrong_small)
    assert not ok

    cut = decide_good_pair(CHAIN4, 3, 1)
    not_a_cut = CutArcObstruction((0, 1), cut.decomposition)
    ok, _ = verify_certificate(CHAIN4, 3, 1, not_a_cut)
    assert not ok

    misplaced = decide_good_pair(FIG_B, 1, 2)
    ok, _ = verify_certificate(FIG_B, 0, 2, misplaced)  # u actually fine here
    assert not ok

    chain = decide_good_pair(CHAIN5, 2, 3)
    ok, _ = verify_certificate(CHAIN5, 3, 2, chain)  # roles swapped
    assert not ok

    structure = same_root_pair(C3, 0)
    tampered = SameRootStructure(structure.a_set, structure.b_set, structure.c_set, (2, 0))
    ok, _ = verify_certificate(C3, 0, 0, tampered)
    assert not ok


# --------------------------------------------------------------------------
# differential sweeps


def test_decide_matches_oracle_exhaustively_to_order_four():
    for n in range(1, 5):
        for d in enumerate_semicomplete(n):
            for u in range(n):
                targets = set(oracle_good_pair_targets(d, u))
                for v in range(n):
                    cert = decide_good_pair(d, u, v)
                    assert (cert is None) == (v in targets)
                    if cert is None:
                        assert_good_pair(d, u, v, construct_good_pair(d, u, v))
                    else:
                        ok, reason = verify_certificate(d, u, v, cert)
                        assert ok, reason


def test_same_root_pair_matches_oracle_exhaustively():
    from branchpairs import strong_decomposition

    for n in range(1, 5):
        for d in enumerate_semicomplete(n):
            strong = strong_decomposition(d).is_strong
            for u in range(n):
                if not strong and n > 1:
                    # u cannot sit in the initial and terminal component at
                    # once, so the shared-root question needs a strong input
                    assert oracle_good_pair(d, u, u) is None
                    continue
                outcome = same_root_pair(d, u)
                if isinstance(outcome, GoodPair):
                    assert_good_pair(d, u, u, outcome)
                    assert oracle_good_pair(d, u, u) is not None
                else:
                    assert oracle_good_pair(d, u, u) is None


# --------------------------------------------------------------------------
# the extension move table, one frozen vector per move


def _assert_extended(digraph, result, out_tree, in_tree):
    assert isinstance(result, tuple), result
    out2, in2 = result
    for tree in (out2, in2):
        ok, reason = tree.validate(digraph, within=range(digraph.n))
        assert ok, reason
    assert not out2.arc_set() & in2.arc_set()
    assert out_tree.arc_set() <= out2.arc_set()
    assert in_tree.arc_set() <= in2.arc_set()
    assert (out2.root, in2.root) == (out_tree.root, in_tree.root)


def test_no_arc_extension_through_an_unused_arc_in_x():
    d = Digraph.from_arcs(4, [(0, 1), (1, 0), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)])
    out_tree, in_tree = Tree("out", 0, {1: 0}), Tree("in", 3, {2: 3})
    result = extend_trees_across_cut(d, out_tree, in_tree, (0, 1), (2, 3), "no-arc")
    _assert_extended(d, result, out_tree, in_tree)


def test_no_arc_extension_through_an_unused_arc_in_y():
    d = Digraph.from_arcs(4, [(0, 1), (2, 3), (3, 2), (0, 2), (0, 3), (1, 2), (1, 3)])
    out_tree, in_tree = Tree("out", 0, {1: 0}), Tree("in", 3, {2: 3})
    result = extend_trees_across_cut(d, out_tree, in_tree, (0, 1), (2, 3), "no-arc")
    _assert_extended(d, result, out_tree, in_tree)


def test_no_arc_crosswise_completion():
    d = Digraph.from_arcs(4, [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)])
    out_tree, in_tree = Tree("out", 0, {1: 0}), Tree("in", 3, {2: 3})
    result = extend_trees_across_cut(d, out_tree, in_tree, (0, 1), (2, 3), "no-arc")
    _assert_extended(d, result, out_tree, in_tree)


def test_no_arc_small_obstruction():
    d = Digraph.from_arcs(2, [(0, 1)])
    result = extend_trees_across_cut(
        d, Tree("out", 0), Tree("in", 1), (0,), (1,), "no-arc"
    )
    assert result == ExtensionObstruction("no-arc", "small", (0,), (1,))


def test_in_tree_arc_extension_with_extra_coverage():
    d = Digraph.from_arcs(
        5,
        [(0, 1), (2, 0), (2, 1), (4, 3), (3, 0), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4)],
    )
    out_tree = Tree("out", 2, {0: 2, 1: 2})
    in_tree = Tree("in", 1, {0: 1, 3: 0, 4: 3})
    result = extend_trees_across_cut(
        d, out_tree, in_tree, (0, 1, 2), (3, 4), "in-tree-arc", arc=(3, 0)
    )
    _assert_extended(d, result, out_tree, in_tree)


def test_in_tree_arc_extension_through_an_unused_arc_in_x():
    d = Digraph.from_arcs(4, [(0, 1), (1, 0), (3, 0), (2, 3), (0, 2), (1, 2), (1, 3)])
    out_tree = Tree("out", 0, {1: 0})
    in_tree = Tree("in", 0, {3: 0, 2: 3})
    result = extend_trees_across_cut(
        d, out_tree, in_tree, (0, 1), (2, 3), "in-tree-arc", arc=(3, 0)
    )
    _assert_extended(d, result, out_tree, in_tree)


def test_in_tree_arc_saturated_target_obstruction():
    d = Digraph.from_arcs(2, [(1, 0)])
    result = extend_trees_across_cut(
        d, Tree("out", 0), Tree("in", 0, {1: 0}), (0,), (1,), "in-tree-arc", arc=(1, 0)
    )
    assert result == ExtensionObstruction("in-tree-arc", "saturated-target", (0,), (1,))


def test_back_arc_extension_with_large_sides():
    d = Digraph.from_arcs(
        5,
        [(0, 1), (0, 2), (1, 2), (4, 3), (3, 0), (0, 4), (1, 3), (1, 4), (2, 3), (2, 4)],
    )
    out_tree = Tree("out", 0, {1: 0, 2: 0})
    in_tree = Tree("in", 3, {4: 3})
    result = extend_trees_across_cut(
        d, out_tree, in_tree, (0, 1, 2), (3, 4), "back-arc", arc=(3, 0)
    )
    _assert_extended(d, result, out_tree, in_tree)


def test_back_arc_extension_through_an_unused_arc_in_x():
    d = Digraph.from_arcs(4, [(0, 1), (1, 0), (3, 2), (2, 0), (0, 3), (1, 2), (1, 3)])
    out_tree = Tree("out", 0, {1: 0})
    in_tree = Tree("in", 2, {3: 2})
    result = extend_trees_across_cut(
        d, out_tree, in_tree, (0, 1), (2, 3), "back-arc", arc=(2, 0)
    )
    _assert_extended(d, result, out_tree, in_tree)


def test_back_arc_reroute_on_two_by_two_sides():
    d = Digraph.from_arcs(
        4, [(1, 0), (0, 1), (2, 3), (3, 2), (2, 0), (1, 2), (1, 3), (0, 3)]
    )
    out_tree = Tree("out", 1, {0: 1})
    in_tree = Tree("in", 3, {2: 3})
    result = extend_trees_across_cut(
        d, out_tree, in_tree, (0, 1), (2, 3), "back-arc", arc=(2, 0)
    )
    # the reroute move rebuilds the out-tree, so only roots are preserved
    assert isinstance(result, tuple)
    out2, in2 = result
    for tree in (out2, in2):
        ok, reason = tree.validate(d, within=range(4))
        assert ok, reason
    assert not out2.arc_set() & in2.arc_set()
    assert (out2.root, in2.root) == (1, 3)


def test_back_arc_rescue_when_all_unused_arcs_leave_the_boundary():
    d = Digraph.from_arcs(4, [(0, 1), (0, 2), (1, 2), (0, 3), (2, 3), (3, 1)])
    out_tree = Tree("out", 0, {1: 0, 2: 0})
    in_tree = Tree("in", 3)
    result = extend_trees_across_cut(
        d, out_tree, in_tree, (0, 1, 2), (3,), "back-arc", arc=(3, 1)
    )
    assert isinstance(result, tuple)
    out2, in2 = result
    for tree in (out2, in2):
        ok, reason = tree.validate(d, within=range(4))
        assert ok, reason
    assert not out2.arc_set() & in2.arc_set()
    assert (out2.root, in2.root) == (0, 3)


def test_back_arc_rescue_through_the_digon_partner():
    d = Digraph.from_arcs(
        4, [(0, 1), (1, 2), (0, 2), (2, 0), (3, 0), (1, 3), (2, 3), (0, 3)]
    )
    out_tree = Tree("out", 0, {1: 0, 2: 1})
    in_tree = Tree("in", 3)
    result = extend_trees_across_cut(
        d, out_tree, in_tree, (0, 1, 2), (3,), "back-arc", arc=(3, 0)
    )
    _assert_extended(d, result, out_tree, in_tree)


def test_back_arc_singleton_target_obstruction():
    # Same shape as the digon rescue but with no (0,3) arc: the one unused
    # digon inside X cannot be split between the trees.
    d = Digraph.from_arcs(4, [(0, 1), (1, 2), (0, 2), (2, 0), (3, 0), (1, 3), (2, 3)])
    result = extend_trees_across_cut(
        d,
        Tree("out", 0, {1: 0, 2: 1}),
        Tree("in", 3),
        (0, 1, 2),
        (3,),
        "back-arc",
        arc=(3, 0),
    )
    assert result == ExtensionObstruction("back-arc", "singleton-target", (0, 1, 2), (3,))


def test_back_arc_singleton_source_obstruction():
    d = Digraph.from_arcs(
        4, [(0, 1), (1, 2), (0, 2), (2, 0), (3, 0), (1, 3), (2, 3)]
    ).reverse()
    result = extend_trees_across_cut(
        d,
        Tree("out", 3),
        Tree("in", 0, {1: 0, 2: 1}),
        (3,),
        (0, 1, 2),
        "back-arc",
        arc=(0, 3),
    )
    assert result == ExtensionObstruction("back-arc", "singleton-source", (3,), (0, 1, 2))


def test_back_arc_two_two_obstruction():
    d = Digraph.from_arcs(4, [(0, 1), (3, 2), (2, 0), (0, 3), (1, 2), (1, 3)])
    result = extend_trees_across_cut(
        d, Tree("out", 0, {1: 0}), Tree("in", 2, {3: 2}), (0, 1), (2, 3), "back-arc", arc=(2, 0)
    )
    assert result == ExtensionObstruction("back-arc", "two-two", (0, 1), (2, 3))


# --------------------------------------------------------------------------
# extension preconditions


def test_extension_rejects_bad_side_partitions():
    with pytest.raises(PreconditionViolated):
        extend_trees_across_cut(K3, Tree("out", 0), Tree("in", 2), (0, 1), (1, 2), "no-arc")
    with pytest.raises(PreconditionViolated):
        extend_trees_across_cut(K3, Tree("out", 0), Tree("in", 2), (0,), (2,), "no-arc")
    with pytest.raises(PreconditionViolated):
        extend_trees_across_cut(K3, Tree("out", 0), Tree("in", 2), (), (0, 1, 2), "no-arc")


def test_extension_rejects_unknown_modes_and_misplaced_arcs():
    d = Digraph.from_arcs(4, [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)])
    out_tree, in_tree = Tree("out", 0, {1: 0}), Tree("in", 3, {2: 3})
    with pytest.raises(PreconditionViolated):
        extend_trees_across_cut(d, out_tree, in_tree, (0, 1), (2, 3), "sideways")
    with pytest.raises(PreconditionViolated):
        extend_trees_across_cut(d, out_tree, in_tree, (0, 1), (2, 3), "no-arc", arc=(2, 0))
    with pytest.raises(PreconditionViolated):
        extend_trees_across_cut(d, out_tree, in_tree, (0, 1), (2, 3), "back-arc")
    with pytest.raises(PreconditionViolated):
        # designated arc must run from the in side to the out side
        extend_trees_across_cut(d, out_tree, in_tree, (0, 1), (2, 3), "back-arc", arc=(0, 2))


def test_extension_rejects_missing_or_used_cross_arcs():
    gap = Digraph.from_arcs(4, [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (3, 1)])
    with pytest.raises(PreconditionViolated):
        extend_trees_across_cut(
            gap, Tree("out", 0, {1: 0}), Tree("in", 3, {2: 3}), (0, 1), (2, 3), "no-arc"
        )
    d = Digraph.from_arcs(4, [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)])
    straddling = Tree("out", 0, {1: 0, 2: 0})  # uses cross arc (0, 2)
    with pytest.raises(PreconditionViolated):
        extend_trees_across_cut(
            d, straddling, Tree("in", 3, {2: 3}), (0, 1), (2, 3), "no-arc"
        )


def test_extension_rejects_wrong_tree_kinds_and_coverage():
    d = Digraph.from_arcs(4, [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)])
    with pytest.raises(PreconditionViolated):
        extend_trees_across_cut(
            d, Tree("in", 0, {}), Tree("in", 3, {2: 3}), (0, 1), (2, 3), "no-arc"
        )
    with pytest.raises(PreconditionViolated):
        extend_trees_across_cut(
            d, Tree("out", 0), Tree("in", 3, {2: 3}), (0, 1), (2, 3), "no-arc"
        )


def test_back_arc_mode_requires_confined_trees():
    d = Digraph.from_arcs(
        4, [(0, 1), (3, 2), (2, 0), (0, 3), (1, 2), (1, 3), (2, 1)]
    )
    # in-tree reaches across via (2,1): not allowed in back-arc mode
    in_tree = Tree("in", 2, {3: 2, 1: 2})
    with pytest.raises(PreconditionViolated):
        extend_trees_across_cut(
            d, Tree("out", 0, {1: 0}), in_tree, (0, 1), (2, 3), "back-arc", arc=(2, 0)
        )
