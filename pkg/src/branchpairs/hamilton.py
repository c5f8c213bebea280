"""Hamiltonian cycles and prescribed-endpoint hamiltonian paths in
semicomplete digraphs.

Every strong semicomplete digraph has a hamiltonian cycle; we build one by
incremental insertion, which doubles as a constructive proof at desk scale.
The path variants (start at x / end at x / from the initial to the terminal
component) are assembled from per-component cycles chained along the
domination order.  All outputs are verified before being returned.
"""

from __future__ import annotations

from .digraph import ArcPath, Digraph, _bits, strong_decomposition, validate_semicomplete
from .errors import (
    BadEndpoints,
    InternalInconsistency,
    NoPath,
    NotSemicomplete,
    NotStrong,
)


def _check_semicomplete(digraph: Digraph) -> None:
    bad = validate_semicomplete(digraph)
    if bad is not None:
        raise NotSemicomplete(bad)


def _rotate(cycle: list[int], first: int) -> list[int]:
    i = cycle.index(first)
    return cycle[i:] + cycle[:i]


def hamiltonian_cycle(digraph: Digraph) -> ArcPath:
    """Hamiltonian cycle of a strong semicomplete digraph with at least two
    vertices, as an ArcPath whose last vertex has an arc back to the first.

    Incremental insertion: keep a cycle, repeatedly splice in an outside
    vertex between two consecutive cycle vertices.  When no single vertex is
    insertable, every outside vertex either dominates the whole cycle or is
    dominated by it (a mixed vertex always admits an insertion point), both
    classes are non-empty by strongness, and any arc from the dominated class
    to the dominating class lets us splice in two vertices at once.
    """
    _check_semicomplete(digraph)
    n = digraph.n
    if n < 2:
        raise ValueError("a hamiltonian cycle needs at least two vertices")
    if not strong_decomposition(digraph).is_strong:
        raise NotStrong("hamiltonian cycle requires a strong digraph")

    cycle = _initial_cycle(digraph)
    outside = sorted(set(range(n)) - set(cycle))
    while outside:
        inserted = False
        for w in outside:
            k = len(cycle)
            for i in range(k):
                if digraph.has_arc(cycle[i], w) and digraph.has_arc(w, cycle[(i + 1) % k]):
                    cycle = cycle[: i + 1] + [w] + cycle[i + 1 :]
                    outside.remove(w)
                    inserted = True
                    break
            if inserted:
                break
        if inserted:
            continue
        # No single vertex fits, so each outside vertex relates to the cycle
        # uniformly: dominated by all of it, or dominating all of it.
        dominated = [w for w in outside if all(digraph.has_arc(c, w) for c in cycle)]
        dominating = [w for w in outside if all(digraph.has_arc(w, c) for c in cycle)]
        pair = next(
            ((a, b) for a in dominated for b in dominating if digraph.has_arc(a, b)),
            None,
        )
        if pair is None:
            raise InternalInconsistency("cycle insertion stalled on a strong digraph")
        a, b = pair
        cycle = [cycle[0], a, b] + cycle[1:]
        outside.remove(a)
        outside.remove(b)

    cycle = _rotate(cycle, min(cycle))
    result = ArcPath(tuple(cycle))
    if not result.in_digraph(digraph) or not digraph.has_arc(cycle[-1], cycle[0]):
        raise InternalInconsistency("constructed cycle failed verification")
    if len(cycle) != n:
        raise InternalInconsistency("constructed cycle is not spanning")
    return result


def _initial_cycle(digraph: Digraph) -> list[int]:
    """A 2-cycle (first digon in ascending pair order) or a triangle through
    vertex 0 (which exists in a strong digon-free semicomplete digraph)."""
    n = digraph.n
    for a in range(n):
        for b in range(a + 1, n):
            if digraph.has_arc(a, b) and digraph.has_arc(b, a):
                return [a, b]
    for x in _bits(digraph.out_mask(0)):
        for y in _bits(digraph.in_mask(0)):
            if digraph.has_arc(x, y):
                return [0, x, y]
    raise InternalInconsistency("no starting cycle in a strong semicomplete digraph")


def _component_path(digraph: Digraph, component: tuple[int, ...], first=None, last=None):
    """Hamiltonian path of one strong component (original vertex ids),
    optionally starting at `first` or ending at `last` (not both)."""
    if len(component) == 1:
        return list(component)
    sub, ids = digraph.induced(component)
    cycle = [ids[q] for q in hamiltonian_cycle(sub).vertices]
    if first is not None:
        return _rotate(cycle, first)
    if last is not None:
        rotated = _rotate(cycle, last)
        return rotated[1:] + rotated[:1]
    return cycle


def hamiltonian_path_from(digraph: Digraph, x: int, direction: str = "start") -> ArcPath:
    """Hamiltonian path starting (direction='start') or ending ('end') at x.

    Works whenever x lies in the initial (for 'start') / terminal (for 'end')
    strong component: per-component cycles are chained along the domination
    order.  Raises NotStrong when x's component makes the path impossible.
    """
    if direction not in ("start", "end"):
        raise ValueError("direction must be 'start' or 'end'")
    if direction == "end":
        mirrored = hamiltonian_path_from(digraph.reverse(), x, "start")
        return ArcPath(tuple(reversed(mirrored.vertices)))
    _check_semicomplete(digraph)
    if not 0 <= x < digraph.n:
        raise BadEndpoints(f"vertex {x} out of range")
    dec = strong_decomposition(digraph)
    if x not in dec.components[0]:
        raise NotStrong(
            "a spanning path from x needs x in the initial strong component"
        )
    sequence: list[int] = []
    for index, component in enumerate(dec.components):
        sequence.extend(
            _component_path(digraph, component, first=x if index == 0 else None)
        )
    path = ArcPath(tuple(sequence))
    if len(sequence) != digraph.n or not path.in_digraph(digraph):
        raise NoPath("assembled spanning path failed verification")
    return path


def hamiltonian_path_between(digraph: Digraph, x: int, y: int) -> ArcPath:
    """Hamiltonian (x,y)-path in a non-strong semicomplete digraph, for x in
    the initial and y in the terminal strong component."""
    _check_semicomplete(digraph)
    if not (0 <= x < digraph.n and 0 <= y < digraph.n):
        raise BadEndpoints("endpoint out of range")
    dec = strong_decomposition(digraph)
    if dec.is_strong:
        raise BadEndpoints("digraph is strong; use hamiltonian_path_from instead")
    if x not in dec.components[0]:
        raise BadEndpoints("x must lie in the initial strong component")
    if y not in dec.components[-1]:
        raise BadEndpoints("y must lie in the terminal strong component")
    sequence: list[int] = []
    final = len(dec.components) - 1
    for index, component in enumerate(dec.components):
        sequence.extend(
            _component_path(
                digraph,
                component,
                first=x if index == 0 else None,
                last=y if index == final else None,
            )
        )
    path = ArcPath(tuple(sequence))
    if len(sequence) != digraph.n or not path.in_digraph(digraph):
        raise NoPath("assembled spanning path failed verification")
    return path
