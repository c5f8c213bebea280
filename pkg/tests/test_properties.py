"""Property-based checks over seeded random instances."""

from hypothesis import assume, given, settings, strategies as st

from branchpairs import (
    GeneratorConfig,
    construct_good_pair,
    cut_arcs,
    decide_good_pair,
    hamiltonian_cycle,
    random_semicomplete,
    strong_decomposition,
    verify_certificate,
    verify_good_pair,
)
from branchpairs import io as formats

configs = st.builds(
    GeneratorConfig,
    st.integers(min_value=1, max_value=9),
    digon_prob=st.sampled_from((0.0, 0.15, 0.5)),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
    constraint=st.sampled_from(("any", "tournament")),
)


@given(configs, st.data())
@settings(max_examples=250, deadline=None)
def test_every_answer_carries_a_checkable_witness(config, data):
    d = random_semicomplete(config)
    u = data.draw(st.integers(min_value=0, max_value=d.n - 1))
    v = data.draw(st.integers(min_value=0, max_value=d.n - 1))
    cert = decide_good_pair(d, u, v)
    if cert is None:
        pair = construct_good_pair(d, u, v)
        ok, reason = verify_good_pair(d, u, v, pair)
        assert ok, reason
    else:
        ok, reason = verify_certificate(d, u, v, cert)
        assert ok, reason


@given(configs)
@settings(max_examples=150, deadline=None)
def test_edge_list_round_trip(config):
    d = random_semicomplete(config)
    assert formats.parse_edge_list(formats.serialize_edge_list(d)) == d
    assert formats.parse_dot(formats.serialize_dot(d)) == d


@given(configs, st.data())
@settings(max_examples=100, deadline=None)
def test_structured_results_survive_serialization(config, data):
    d = random_semicomplete(config)
    u = data.draw(st.integers(min_value=0, max_value=d.n - 1))
    v = data.draw(st.integers(min_value=0, max_value=d.n - 1))
    cert = decide_good_pair(d, u, v)
    if cert is None:
        pair = construct_good_pair(d, u, v)
        round_tripped = formats.pair_from_dict(formats.pair_to_dict(u, v, pair))
        assert round_tripped == (u, v, pair)
    else:
        back = formats.certificate_from_dict(formats.certificate_to_dict(cert))
        assert back == cert


@given(configs)
@settings(max_examples=150, deadline=None)
def test_condensation_is_a_transitive_tournament(config):
    d = random_semicomplete(config)
    dec = strong_decomposition(d)
    for i, earlier in enumerate(dec.components):
        for later in dec.components[i + 1:]:
            assert all(d.has_arc(p, q) for p in earlier for q in later)
            assert not any(d.has_arc(q, p) for p in earlier for q in later)


@given(configs)
@settings(max_examples=150, deadline=None)
def test_strong_instances_have_verified_hamiltonian_cycles(config):
    d = random_semicomplete(config)
    assume(d.n >= 2 and strong_decomposition(d).is_strong)
    cycle = hamiltonian_cycle(d)
    assert set(cycle.vertices) == set(range(d.n))
    assert cycle.in_digraph(d)
    assert d.has_arc(cycle.end, cycle.start)


@given(configs)
@settings(max_examples=100, deadline=None)
def test_cut_arcs_are_exactly_the_strongness_breakers(config):
    d = random_semicomplete(config)
    assume(strong_decomposition(d).is_strong and d.n >= 2)
    cuts = set(cut_arcs(d))
    for arc in d.arcs():
        removed = d.without_arc(*arc)
        assert (arc in cuts) == (not strong_decomposition(removed).is_strong)
