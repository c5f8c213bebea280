"""Rooted trees (out-/in-branchings), Edmonds-condition checks, two
arc-disjoint out-branchings from one root, and the out-branching-versus-path
construction.

A `Tree` stores a parent map: for an out-tree the parent of a covered vertex
is its unique in-neighbour on the tree, for an in-tree its unique
out-neighbour.  A branching is a spanning tree in this sense.  Reversing a
tree's kind while keeping the parent map turns a valid out-tree of D into a
valid in-tree of the reverse of D, which the construction code uses to handle
mirror cases once instead of twice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import (
    ArcPath,
    Digraph,
    _bits,
    _max_flow,
    _reach,
    _residual_sink_side,
    arc_disjoint_paths,
    terminal_initial_sets,
)
from .errors import BadEndpoints, InternalInconsistency, PreconditionViolated


class Tree:
    """Rooted out- or in-tree over a subset of a digraph's vertices."""

    __slots__ = ("kind", "root", "parent")

    def __init__(self, kind: str, root: int, parent: dict[int, int] | None = None):
        if kind not in ("out", "in"):
            raise ValueError("kind must be 'out' or 'in'")
        parent = dict(parent or {})
        if root in parent:
            raise ValueError("the root cannot have a parent")
        self.kind = kind
        self.root = root
        self.parent = parent

    # A tree arc is stored child->parent; as an arc of the digraph it is
    # (parent, child) for out-trees and (child, parent) for in-trees.

    def covered(self) -> frozenset[int]:
        return frozenset(self.parent) | {self.root}

    def arcs(self) -> list[tuple[int, int]]:
        if self.kind == "out":
            return sorted((p, c) for c, p in self.parent.items())
        return sorted((c, p) for c, p in self.parent.items())

    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arcs())

    def add(self, vertex: int, neighbor: int) -> "Tree":
        """New tree with `vertex` attached below/above `neighbor`."""
        if vertex in self.parent or vertex == self.root:
            raise ValueError(f"vertex {vertex} already covered")
        parent = dict(self.parent)
        parent[vertex] = neighbor
        return Tree(self.kind, self.root, parent)

    def with_arcs(self, arcs) -> "Tree":
        """New tree extended by digraph arcs (tail, head); each arc must
        attach exactly one new vertex (the head for out-trees, the tail for
        in-trees)."""
        parent = dict(self.parent)
        for tail, head in arcs:
            child, par = (head, tail) if self.kind == "out" else (tail, head)
            if child in parent or child == self.root:
                raise ValueError(f"vertex {child} already covered")
            parent[child] = par
        return Tree(self.kind, self.root, parent)

    def spine(self, v: int) -> ArcPath:
        """Tree path root→v (out-tree) or v→root (in-tree)."""
        if v != self.root and v not in self.parent:
            raise ValueError(f"vertex {v} not covered by the tree")
        seq = [v]
        while seq[-1] != self.root:
            seq.append(self.parent[seq[-1]])
        if self.kind == "out":
            seq.reverse()
        return ArcPath(tuple(seq))

    def reversed_kind(self) -> "Tree":
        """Same parent map with the kind flipped; valid in the reverse digraph."""
        return Tree("in" if self.kind == "out" else "out", self.root, self.parent)

    def validate(self, digraph: Digraph, within=None) -> tuple[bool, str | None]:
        """Check arc membership, orientation, acyclicity, and (when `within`
        is given) that the covered set is exactly `within`."""
        n = digraph.n
        if not 0 <= self.root < n:
            return False, f"root {self.root} out of range"
        for child, par in sorted(self.parent.items()):
            if not (0 <= child < n and 0 <= par < n):
                return False, f"tree entry ({child},{par}) out of range"
            tail, head = (par, child) if self.kind == "out" else (child, par)
            if not digraph.has_arc(tail, head):
                return False, f"tree arc ({tail},{head}) missing from digraph"
        state: dict[int, int] = {self.root: 2}  # 1 = in progress, 2 = done
        for start in sorted(self.parent):
            chain = []
            vertex = start
            while state.get(vertex, 0) == 0:
                state[vertex] = 1
                chain.append(vertex)
                if vertex not in self.parent:
                    return False, f"vertex {vertex} detached from the root"
                vertex = self.parent[vertex]
            if state[vertex] == 1:
                return False, f"cycle through vertex {vertex}"
            for seen in chain:
                state[seen] = 2
        if within is not None:
            expected = frozenset(within)
            got = self.covered()
            if got != expected:
                missing = sorted(expected - got)
                extra = sorted(got - expected)
                return False, f"coverage mismatch: missing {missing}, extra {extra}"
        return True, None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Tree)
            and self.kind == other.kind
            and self.root == other.root
            and self.parent == other.parent
        )

    def __repr__(self) -> str:
        return f"Tree(kind={self.kind!r}, root={self.root}, arcs={self.arcs()})"


@dataclass(frozen=True, eq=False)
class GoodPair:
    """An out-branching and an in-branching sharing no arc."""

    out_branching: Tree
    in_branching: Tree

    def __eq__(self, other):
        return (
            isinstance(other, GoodPair)
            and self.out_branching == other.out_branching
            and self.in_branching == other.in_branching
        )


@dataclass(frozen=True)
class DeficientSet:
    """A vertex set X with root ∉ X whose in-degree is below the requested
    number of branchings — the Edmonds-condition counterexample."""

    vertices: tuple[int, ...]
    indegree: int


def bfs_tree(digraph: Digraph, root: int, kind: str, within=None) -> Tree:
    """Breadth-first out-/in-tree from `root`, restricted to `within` when
    given.  Covers exactly the vertices reachable (for 'out') or reaching
    (for 'in') inside the restriction; callers check coverage."""
    n = digraph.n
    if within is None:
        allowed = (1 << n) - 1
    else:
        allowed = 0
        for q in within:
            allowed |= 1 << q
    masks = digraph.out_masks() if kind == "out" else digraph.in_masks()
    parent: dict[int, int] = {}
    visited = 1 << root
    frontier = [root]
    while frontier:
        nxt = []
        for vertex in frontier:
            fresh = masks[vertex] & allowed & ~visited
            visited |= fresh
            for q in _bits(fresh):
                parent[q] = vertex
                nxt.append(q)
        frontier = nxt
    return Tree(kind, root, parent)


def edmonds_deficiency(digraph: Digraph, s: int, k: int) -> DeficientSet | None:
    """None iff λ(s,t) ≥ k for every t (Edmonds' condition for k arc-disjoint
    out-branchings rooted at s); otherwise a minimal violated cut, taken from
    the sink side of a failed flow."""
    if not 0 <= s < digraph.n:
        raise BadEndpoints(f"root {s} out of range")
    if k <= 0:
        return None
    out = digraph.out_masks()
    n = digraph.n
    for t in range(n):
        if t == s:
            continue
        value, fwd, back = _max_flow(out, n, 1 << s, t, k)
        if value < k:
            side = _residual_sink_side(fwd, back, n, t)
            return DeficientSet(tuple(_bits(side)), value)
    return None


def _contracted_connectivity_ok(digraph: Digraph, w_mask: int, k: int) -> bool:
    """λ(ŝ, q) ≥ k for every q outside w_mask after contracting w_mask into a
    single source ŝ (parallel arcs kept, so a multi-source flow computes it)."""
    out = digraph.out_masks()
    n = digraph.n
    rest = ((1 << n) - 1) & ~w_mask
    for q in _bits(rest):
        value, _, _ = _max_flow(out, n, w_mask, q, k)
        if value < k:
            return False
    return True


def two_arc_disjoint_out_branchings(
    digraph: Digraph, s: int
) -> tuple[Tree, Tree] | DeficientSet:
    """Two arc-disjoint out-branchings rooted at s, or the deficient set.

    Greedy growth of the first branching, one arc at a time.  A candidate arc
    (x, y) is kept only if (1) s still reaches every vertex once the tree arcs
    and the candidate are removed — so a second branching remains available —
    and (2) the contracted connectivity from the enlarged covered set stays at
    two, so the first branching itself can still be completed.  A tree with no
    acceptable candidate would contradict the branching theorem, so that case
    raises instead of returning.
    """
    deficiency = edmonds_deficiency(digraph, s, 2)
    if deficiency is not None:
        return deficiency
    n = digraph.n
    full = (1 << n) - 1
    out = digraph.out_masks()
    tree = Tree("out", s)
    tree_mask = 1 << s
    used = [0] * n  # arcs consumed by the first branching
    while tree_mask != full:
        chosen = None
        for y in _bits(full & ~tree_mask):
            if not _contracted_connectivity_ok(digraph, tree_mask | (1 << y), 2):
                continue
            tails = digraph.in_mask(y) & tree_mask
            for x in _bits(tails):
                avail = [out[q] & ~used[q] for q in range(n)]
                avail[x] &= ~(1 << y)
                if _reach(avail, 1 << s) == full:
                    chosen = (x, y)
                    break
            if chosen:
                break
        if chosen is None:
            raise InternalInconsistency(
                "branching growth stalled although Edmonds' condition holds"
            )
        x, y = chosen
        tree = tree.add(y, x)
        tree_mask |= 1 << y
        used[x] |= 1 << y
    second_masks = [out[q] & ~used[q] for q in range(n)]
    second = bfs_tree(Digraph(n, second_masks), s, "out")
    if second.covered() != frozenset(range(n)):
        raise InternalInconsistency("second branching incomplete despite invariant")
    return tree, second


def _unique_entering_arc(digraph: Digraph, part_mask: int) -> tuple[int, int]:
    """The single arc from outside `part_mask` into it (asserts uniqueness)."""
    entering = []
    for head in _bits(part_mask):
        for tail in _bits(digraph.in_mask(head) & ~part_mask):
            entering.append((tail, head))
    if len(entering) != 1:
        raise InternalInconsistency(
            f"expected exactly one entering arc, found {sorted(entering)}"
        )
    return entering[0]


def _mask_of(vertices) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def out_branching_vs_path(digraph: Digraph, u: int, w: int, v: int):
    """Out-branching rooted at u arc-disjoint from some (w,v)-path, or a
    structural certificate that none exists.

    Returns (Tree, ArcPath) on success and a TypeCertificate on failure; the
    certificate's parts cover the whole vertex set when u = w, and the initial
    strong component when u ≠ w.
    """
    from .structures import (  # deferred: structures has no need of this module
        ConsecutiveSingletons,
        TypeCertificate,
        TypedObstruction,
        arc_disjoint_path_pair,
        relabel_type_certificate,
        verify_type_certificate,
    )

    n = digraph.n
    for vertex in (u, w, v):
        if not 0 <= vertex < n:
            raise BadEndpoints(f"vertex {vertex} out of range")
    out_set, _ = terminal_initial_sets(digraph)
    if u not in out_set:
        raise PreconditionViolated(f"no out-branching can be rooted at {u}")
    if not (_reach(digraph.out_masks(), 1 << w) >> v & 1):
        raise PreconditionViolated(f"no ({w},{v})-path exists")
    full = (1 << n) - 1

    def _type_a(part1, part2) -> TypeCertificate:
        host = sorted(part1) + sorted(part2)
        arc = _unique_entering_arc_within(digraph, _mask_of(part1), _mask_of(host))
        cert = TypeCertificate(
            kind="A",
            parts=(tuple(sorted(part1)), tuple(sorted(part2))),
            back_arcs=(arc,),
            u=u,
            w=w,
            v=v,
        )
        _check_certificate(digraph, cert)
        return cert

    def _check_certificate(host: Digraph, cert: TypeCertificate) -> None:
        covered = sorted(q for part in cert.parts for q in part)
        if len(covered) == host.n:
            ok, reason = verify_type_certificate(host, cert)
        else:
            sub, verts = host.induced(covered)
            pos = {orig: i for i, orig in enumerate(verts)}
            ok, reason = verify_type_certificate(
                sub, relabel_type_certificate(cert, pos)
            )
        if not ok:
            raise InternalInconsistency(f"built an invalid certificate: {reason}")

    if w == v:
        branching = bfs_tree(digraph, u, "out")
        if branching.covered() != frozenset(range(n)):
            raise InternalInconsistency("root in Out(D) but BFS tree incomplete")
        return branching, ArcPath((v,))

    if u == w:
        result = two_arc_disjoint_out_branchings(digraph, u)
        if isinstance(result, tuple):
            first, second = result
            return first, second.spine(v)
        x_set = result.vertices
        x_mask = _mask_of(x_set)
        if result.indegree != 1:
            # u reaches every vertex, so every set avoiding u has an entering arc.
            raise InternalInconsistency("deficient set with in-degree 0 despite u∈Out")
        if v in x_set:
            return _type_a(x_set, [q for q in range(n) if q not in x_set])
        x_tail, y_head = _unique_entering_arc(digraph, x_mask)
        # Two arc-disjoint paths from u to {x_tail, v} inside D minus X.  A
        # super-sink absorbs one unit from each target; when the targets
        # coincide we ask for two arc-disjoint (u, x_tail)-paths directly.
        outside = [q for q in range(n) if not (x_mask >> q & 1)]
        pos = {q: i for i, q in enumerate(outside)}
        tau = len(outside)
        flow_masks = []
        for q in outside:
            mask = 0
            for r in _bits(digraph.out_mask(q) & ~x_mask):
                mask |= 1 << pos[r]
            flow_masks.append(mask)
        if v == x_tail:
            helper = Digraph(tau, flow_masks)
            value, fwd, back = _max_flow(flow_masks, tau, 1 << pos[u], pos[v], 2)
        else:
            flow_masks.append(0)
            flow_masks[pos[x_tail]] |= 1 << tau
            flow_masks[pos[v]] |= 1 << tau
            helper = Digraph(tau + 1, flow_masks)
            value, fwd, back = _max_flow(flow_masks, tau + 1, 1 << pos[u], tau, 2)
        if value == 2:
            if v == x_tail:
                paths = arc_disjoint_paths(helper, pos[u], pos[v], 2)
                lifted = [tuple(outside[q] for q in p.vertices) for p in paths]
            else:
                paths = arc_disjoint_paths(helper, pos[u], tau, 2)
                lifted = [tuple(outside[q] for q in p.vertices[:-1]) for p in paths]
            path_ux = next((p for p in lifted if p[-1] == x_tail), None)
            path_uv = next(
                (p for p in lifted if p[-1] == v and p is not path_ux), None
            )
            if path_ux is None or path_uv is None:
                raise InternalInconsistency("flow decomposition lost a target")
            parent: dict[int, int] = {}
            for a, b in zip(path_ux, path_ux[1:]):
                parent[b] = a
            parent[y_head] = x_tail
            subtree = bfs_tree(digraph, y_head, "out", within=x_set)
            if subtree.covered() != frozenset(x_set):
                raise InternalInconsistency("cut head does not span the deficient set")
            parent.update(subtree.parent)
            on_path = set(path_ux)
            for q in outside:
                if q not in on_path:
                    parent[q] = y_head
            branching = Tree("out", u, parent)
            ok, reason = branching.validate(digraph, within=range(n))
            if not ok:
                raise InternalInconsistency(f"assembled branching invalid: {reason}")
            return branching, ArcPath(path_uv)
        if v == x_tail:
            sink_side = _residual_sink_side(fwd, back, tau, pos[v])
        else:
            sink_side = _residual_sink_side(fwd, back, tau + 1, tau)
        u_side = [outside[i] for i in range(tau) if not (sink_side >> i & 1)]
        if u not in u_side or v in u_side:
            raise InternalInconsistency("flow cut does not separate u from v")
        return _type_a([q for q in range(n) if q not in u_side], u_side)

    # u ≠ w: auxiliary root s with arcs to u and w reduces the question to
    # two arc-disjoint out-branchings rooted at s.
    aux_masks = digraph.out_masks() + [(1 << u) | (1 << w)]
    aux = Digraph(n + 1, aux_masks)
    result = two_arc_disjoint_out_branchings(aux, n)
    if isinstance(result, tuple):
        if result[0].parent.get(u) == n:
            b_u, b_w = result
        else:
            b_w, b_u = result
        if b_u.parent.get(u) != n or b_w.parent.get(w) != n:
            raise InternalInconsistency("auxiliary arcs split across branchings")
        branching = Tree("out", u, {c: p for c, p in b_u.parent.items() if c != u})
        other = Tree("out", w, {c: p for c, p in b_w.parent.items() if c != w})
        return branching, other.spine(v)
    x_set = result.vertices
    x_mask = _mask_of(x_set)
    u_in = bool(x_mask >> u & 1)
    w_in = bool(x_mask >> w & 1)
    if u_in and w_in:
        raise InternalInconsistency("deficient set containing both roots")
    if w_in:
        raise InternalInconsistency("deficient set cut off from u despite u∈Out")
    if u_in:
        # Both auxiliary arc su and nothing else enter X, so X gets no arc of
        # D itself: X dominates the rest, and (w,v)-paths stay outside X.
        if v in x_set:
            raise InternalInconsistency("(w,v)-path exists but v sits in a closed set")
        subtree = bfs_tree(digraph, u, "out", within=x_set)
        if subtree.covered() != frozenset(x_set):
            raise InternalInconsistency("u does not span its closed set")
        parent = dict(subtree.parent)
        for q in range(n):
            if not (x_mask >> q & 1):
                parent[q] = u
        branching = Tree("out", u, parent)
        ok, reason = branching.validate(digraph, within=range(n))
        if not ok:
            raise InternalInconsistency(f"assembled branching invalid: {reason}")
        rest = [q for q in range(n) if not (x_mask >> q & 1)]
        sub, verts = digraph.induced(rest)
        pos = {orig: i for i, orig in enumerate(verts)}
        inner = bfs_tree(sub, pos[w], "out")
        if pos[v] not in inner.covered():
            raise InternalInconsistency("(w,v)-path vanished outside the closed set")
        path = tuple(verts[q] for q in inner.spine(pos[v]).vertices)
        return branching, ArcPath(path)
    x_tail, y_head = _unique_entering_arc(aux, x_mask)  # the aux root is outside X
    outcome = arc_disjoint_path_pair(digraph, u, y_head, w, v)
    if isinstance(outcome, tuple):
        path_uy, path_wv = outcome
        if path_uy.arcs()[-1] != (x_tail, y_head):
            raise InternalInconsistency("(u,y)-path enters the tight set irregularly")
        if _mask_of(path_wv.vertices) & x_mask:
            raise InternalInconsistency("(w,v)-path crosses the tight set")
        parent = {}
        for a, b in path_uy.arcs():
            parent[b] = a
        subtree = bfs_tree(digraph, y_head, "out", within=x_set)
        if subtree.covered() != frozenset(x_set):
            raise InternalInconsistency("cut head does not span the tight set")
        parent.update(subtree.parent)
        on_path = set(path_uy.vertices)
        for q in range(n):
            if not (x_mask >> q & 1) and q not in on_path:
                parent[q] = y_head
        branching = Tree("out", u, parent)
        ok, reason = branching.validate(digraph, within=range(n))
        if not ok:
            raise InternalInconsistency(f"assembled branching invalid: {reason}")
        return branching, path_wv
    if isinstance(outcome, ConsecutiveSingletons):
        raise InternalInconsistency("singleton obstruction requires equal sources")
    assert isinstance(outcome, TypedObstruction)
    cert = outcome.certificate
    if (cert.u, cert.w, cert.v) == (u, w, v) and outcome.offending_target == y_head:
        return cert
    if (cert.u, cert.w, cert.v) != (w, u, y_head) or outcome.offending_target != v:
        raise InternalInconsistency("path-pair obstruction with unexpected roles")
    # Mirrored roles: v lands in the receiving part V1, whose in-degree is one
    # for every kind, so the partition collapses to a type-A certificate for
    # (u, w, v) on the same strong component.
    part1 = cert.parts[0]
    component = sorted(q for part in cert.parts for q in part)
    part2 = tuple(q for q in component if q not in set(part1))
    arc = _unique_entering_arc_within(digraph, _mask_of(part1), _mask_of(component))
    collapsed = TypeCertificate(
        kind="A", parts=(tuple(sorted(part1)), part2), back_arcs=(arc,), u=u, w=w, v=v
    )
    sub, verts = digraph.induced(component)
    pos = {orig: i for i, orig in enumerate(verts)}
    ok, reason = verify_type_certificate(sub, relabel_type_certificate(collapsed, pos))
    if not ok:
        raise InternalInconsistency(f"collapsed certificate invalid: {reason}")
    return collapsed


def _unique_entering_arc_within(
    digraph: Digraph, part_mask: int, host_mask: int
) -> tuple[int, int]:
    """The single arc from host_mask∖part_mask into part_mask."""
    entering = []
    for head in _bits(part_mask):
        for tail in _bits(digraph.in_mask(head) & host_mask & ~part_mask):
            entering.append((tail, head))
    if len(entering) != 1:
        raise InternalInconsistency(
            f"expected exactly one entering arc, found {sorted(entering)}"
        )
    return entering[0]
