"""Shared helpers for the test suite."""

from branchpairs import verify_good_pair


def assert_good_pair(digraph, u, v, pair):
    """Fail with the verifier's reason if `pair` is not a good (u,v)-pair."""
    ok, reason = verify_good_pair(digraph, u, v, pair)
    assert ok, reason
