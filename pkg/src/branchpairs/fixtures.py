"""Named example digraphs used by the test suite, the CLI, and the decision
procedure's exception catalog.

FIG_A..FIG_F are the six small semicomplete digraphs that admit no good
(u,v)-pair for the designated roots even though the generic obstructions do
not apply; decide_good_pair matches against them (with roles pinned) as its
first check.  The remaining fixtures are handy regression instances: S4 is
the unique 2-arc-strong semicomplete digraph on four vertices with bad pairs
in none of its role choices, C3/K3 are the 3-cycle and the complete digon
triangle, CHAIN4 carries a cut-arc obstruction, and TYPEA3 is the smallest
instance of the two-part structure blocking an arc-disjoint path pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .digraph import Digraph


@dataclass(frozen=True)
class Fixture:
    name: str
    digraph: Digraph
    roles: dict[str, int] = field(default_factory=dict)


def _fx(name: str, n: int, arcs, **roles) -> Fixture:
    return Fixture(name, Digraph.from_arcs(n, arcs), dict(roles))


FIG_A = _fx("FIG_A", 2, [(0, 1)], u=0, v=1)
FIG_B = _fx("FIG_B", 3, [(0, 1), (1, 2), (0, 2)], u=0, v=2)
FIG_C = _fx("FIG_C", 3, [(0, 1), (1, 2), (0, 2), (2, 0)], u=0, v=2)
FIG_D = _fx("FIG_D", 4, [(0, 1), (1, 2), (0, 2), (3, 0), (1, 3), (2, 3)], u=0, v=3)
FIG_E = _fx("FIG_E", 4, [(1, 0), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2), (2, 1)],
            u=0, v=1)
FIG_F = _fx("FIG_F", 4, [(0, 1), (1, 2), (0, 2), (3, 0), (1, 3), (2, 3), (2, 0)],
            u=0, v=3)

S4 = _fx("S4", 4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3), (3, 1), (0, 2), (2, 0)])
C3 = _fx("C3", 3, [(0, 1), (1, 2), (2, 0)])
K3 = _fx("K3", 3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)])
CHAIN4 = _fx("CHAIN4", 4,
             [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (2, 0), (3, 1)],
             v=1, w=2, u=3)
TYPEA3 = _fx("TYPEA3", 3, [(0, 1), (1, 2), (2, 0)], u=0, w=1, v=2)

_ALL = (FIG_A, FIG_B, FIG_C, FIG_D, FIG_E, FIG_F, S4, C3, K3, CHAIN4, TYPEA3)
_BY_NAME = {f.name: f for f in _ALL}


def fixture_names() -> tuple[str, ...]:
    return tuple(f.name for f in _ALL)


def fixture(name: str) -> Fixture:
    try:
        return _BY_NAME[name.upper()]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")


def exception_catalog() -> tuple[tuple[str, Digraph, int, int], ...]:
    """(id, digraph, u, v) for the six no-pair exceptions, ids 'a'..'f'."""
    figs = (FIG_A, FIG_B, FIG_C, FIG_D, FIG_E, FIG_F)
    return tuple(
        (chr(ord("a") + i), f.digraph, f.roles["u"], f.roles["v"])
        for i, f in enumerate(figs)
    )
