"""Stable graphs: genus-decorated multigraphs with labelled legs.

A stable graph records vertex genera, edges as pairs of half-edges
(vertex, slot), and legs (vertex, label) with distinct positive labels.
Stability at a vertex means 2g - 2 + n > 0 where n counts incident
half-edges and legs.  Graphs are value objects; isomorphism is decided by
comparing canonical relabellings (leg labels are fixed identities and are
never permuted).

An AStructure marks a subset of edges; contracting all the others is the
way a graph refines a fixed smaller graph, and the quotient here computes
that contraction (non-loop contractions add genera, loops bump genus).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import Refusal

HalfEdge = tuple  # (vertex, slot)


class StableGraph:
    """Immutable genus-decorated multigraph with labelled legs."""

    __slots__ = ("genera", "edges", "legs")

    def __init__(self, genera, edges=(), legs=()):
        object.__setattr__(self, "genera", tuple(int(g) for g in genera))
        object.__setattr__(
            self,
            "edges",
            tuple(
                ((int(a), int(s)), (int(b), int(t)))
                for (a, s), (b, t) in edges
            ),
        )
        object.__setattr__(
            self, "legs", tuple((int(v), int(lab)) for v, lab in legs)
        )

    @property
    def n_vertices(self) -> int:
        return len(self.genera)

    def __setattr__(self, name, value):
        raise AttributeError("StableGraph is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, StableGraph)
            and self.genera == other.genera
            and self.edges == other.edges
            and self.legs == other.legs
        )

    def __hash__(self):
        return hash((self.genera, self.edges, self.legs))

    def __repr__(self):
        return "StableGraph(genera=%r, edges=%r, legs=%r)" % (
            self.genera, self.edges, self.legs,
        )


def half_edges_at(graph: StableGraph, v: int) -> list[HalfEdge]:
    """Half-edges incident to vertex v, in edge order."""
    out = []
    for he1, he2 in graph.edges:
        if he1[0] == v:
            out.append(he1)
        if he2[0] == v:
            out.append(he2)
    return out


def legs_at(graph: StableGraph, v: int) -> list[tuple[int, int]]:
    return [leg for leg in graph.legs if leg[0] == v]


def validate(graph: StableGraph) -> list[str]:
    """All violations of the stable-graph invariants (empty list = valid)."""
    problems = []
    nv = graph.n_vertices
    if nv == 0:
        return ["graph has no vertices"]
    for i, g in enumerate(graph.genera):
        if g < 0:
            problems.append("vertex %d has negative genus %d" % (i, g))

    seen_he = set()
    for k, (he1, he2) in enumerate(graph.edges):
        for he in (he1, he2):
            v, s = he
            if not 0 <= v < nv:
                problems.append("edge %d touches missing vertex %d" % (k, v))
            elif s < 0:
                problems.append("edge %d has negative slot at vertex %d" % (k, v))
            if he in seen_he:
                problems.append("half-edge %r is used twice" % (he,))
            seen_he.add(he)
    for v in range(nv):
        slots = sorted(s for (w, s) in seen_he if w == v)
        if slots != list(range(len(slots))):
            problems.append(
                "slots at vertex %d are %r, expected 0..%d"
                % (v, slots, len(slots) - 1)
            )

    labels = [lab for _, lab in graph.legs]
    if len(set(labels)) != len(labels):
        problems.append("leg labels are not distinct: %r" % (sorted(labels),))
    for v, lab in graph.legs:
        if not 0 <= v < nv:
            problems.append("leg %d sits on missing vertex %d" % (lab, v))
        if lab < 1:
            problems.append("leg label %d is not positive" % lab)

    for v in range(nv):
        n = sum(1 for he in seen_he if he[0] == v) + sum(
            1 for w, _ in graph.legs if w == v
        )
        if 2 * graph.genera[v] - 2 + n <= 0:
            problems.append(
                "vertex %d is unstable: genus %d with %d special points"
                % (v, graph.genera[v], n)
            )

    if nv > 1 and not _is_connected(graph):
        problems.append("graph is not connected")
    return problems


def ensure_valid(graph: StableGraph) -> None:
    problems = validate(graph)
    if problems:
        raise ValueError("invalid stable graph: " + problems[0])


def _is_connected(graph: StableGraph) -> bool:
    nv = graph.n_vertices
    adj = [[] for _ in range(nv)]
    for (a, _), (b, _) in graph.edges:
        if 0 <= a < nv and 0 <= b < nv:
            adj[a].append(b)
            adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == nv


def total_genus(graph: StableGraph) -> int:
    """Sum of vertex genera plus the first Betti number of the graph."""
    ensure_valid(graph)
    return sum(graph.genera) + len(graph.edges) - graph.n_vertices + 1


def canonical_key(graph: StableGraph):
    """Isomorphism-invariant encoding: minimum over vertex relabellings of
    (genera, sorted edge vertex-pairs, sorted legs).  Slots carry no data."""
    nv = graph.n_vertices
    best = None
    for perm in itertools.permutations(range(nv)):
        genera = tuple(graph.genera[_inv_at(perm, i)] for i in range(nv))
        edges = tuple(
            sorted(
                tuple(sorted((perm[a], perm[b])))
                for (a, _), (b, _) in graph.edges
            )
        )
        legs = tuple(sorted((perm[v], lab) for v, lab in graph.legs))
        cand = (genera, edges, legs)
        if best is None or cand < best:
            best = cand
    return best


def _inv_at(perm, i):
    return perm.index(i)


def canonical_form(graph: StableGraph) -> StableGraph:
    """A canonical representative: isomorphic graphs map to equal objects."""
    genera, edges, legs = canonical_key(graph)
    next_slot = [0] * len(genera)
    built = []
    for a, b in edges:
        sa = next_slot[a]
        next_slot[a] += 1
        sb = next_slot[b]
        next_slot[b] += 1
        built.append(((a, sa), (b, sb)))
    return StableGraph(genera, built, sorted(legs, key=lambda t: (t[1], t[0])))


def is_isomorphic(g1: StableGraph, g2: StableGraph) -> bool:
    """Isomorphism respecting genera and leg labels (slots are anonymous)."""
    return canonical_key(g1) == canonical_key(g2)


def restrict_legs(graph: StableGraph, labels) -> StableGraph:
    """Copy of the graph keeping only legs whose label is in `labels`."""
    keep = set(labels)
    return StableGraph(
        graph.genera,
        graph.edges,
        [leg for leg in graph.legs if leg[1] in keep],
    )


@dataclass(frozen=True)
class ContractionResult:
    graph: StableGraph
    vertex_map: tuple  # old vertex -> new vertex
    edge_map: tuple    # old edge index -> new index or None (contracted)


def contract_edges(graph: StableGraph, contracted) -> ContractionResult:
    """Contract the edges at the given indices.

    Contracting a non-loop merges its endpoints and adds their genera; a
    loop (or an edge made parallel to already-contracted ones) raises the
    genus instead.  Both cases are the single rule: each merged vertex gets
    the summed genera plus the first Betti number of its contracted piece.
    """
    contracted = set(contracted)
    for i in contracted:
        if not 0 <= i < len(graph.edges):
            raise ValueError("no edge with index %r" % (i,))

    nv = graph.n_vertices
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in contracted:
        (a, _), (b, _) = graph.edges[i]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    roots = sorted({find(v) for v in range(nv)}, key=lambda r: min(
        v for v in range(nv) if find(v) == r
    ))
    new_index = {}
    for v in range(nv):
        r = find(v)
        if r not in new_index:
            new_index[r] = roots.index(r)
    vmap = tuple(new_index[find(v)] for v in range(nv))

    comp_sizes = [0] * len(roots)
    comp_genus = [0] * len(roots)
    for v in range(nv):
        comp_sizes[vmap[v]] += 1
        comp_genus[vmap[v]] += graph.genera[v]
    comp_edges = [0] * len(roots)
    for i in contracted:
        (a, _), _ = graph.edges[i]
        comp_edges[vmap[a]] += 1
    genera = [
        comp_genus[c] + comp_edges[c] - (comp_sizes[c] - 1)
        for c in range(len(roots))
    ]

    next_slot = [0] * len(roots)
    new_edges = []
    emap = []
    for i, ((a, _), (b, _)) in enumerate(graph.edges):
        if i in contracted:
            emap.append(None)
            continue
        na, nb = vmap[a], vmap[b]
        sa = next_slot[na]
        next_slot[na] += 1
        sb = next_slot[nb]
        next_slot[nb] += 1
        emap.append(len(new_edges))
        new_edges.append(((na, sa), (nb, sb)))

    legs = [(vmap[v], lab) for v, lab in graph.legs]
    return ContractionResult(
        StableGraph(genera, new_edges, legs), vmap, tuple(emap)
    )


@dataclass(frozen=True)
class AStructure:
    """A marked subset of edges, read as 'the edges that survive contraction'."""

    graph: StableGraph
    selected: tuple

    def __post_init__(self):
        sel = tuple(sorted(set(int(i) for i in self.selected)))
        for i in sel:
            if not 0 <= i < len(self.graph.edges):
                raise ValueError("selected edge index %d out of range" % i)
        object.__setattr__(self, "selected", sel)

    @property
    def unselected(self) -> tuple:
        return tuple(
            i for i in range(len(self.graph.edges)) if i not in set(self.selected)
        )

    def quotient(self) -> ContractionResult:
        """Contract every non-selected edge."""
        return contract_edges(self.graph, self.unselected)

    def matches_core(self, core: StableGraph, core_labels=None) -> bool:
        """Does contracting the non-selected edges give `core`?

        Legs not labelled in `core_labels` (default: core's own labels) are
        dropped from the quotient before comparing, so scaffolding legs on
        the big graph do not block the match.
        """
        labels = (
            set(core_labels)
            if core_labels is not None
            else {lab for _, lab in core.legs}
        )
        quot = restrict_legs(self.quotient().graph, labels)
        return is_isomorphic(quot, core)


def enumerate_stable_graphs(
    genus: int, leg_count: int, max_edges: int | None = None
) -> list[StableGraph]:
    """All stable graphs of the given total genus and leg count, one per
    isomorphism class, in canonical order.

    Legs are labelled 1..leg_count.  The default bounds admit genus <= 4;
    beyond that an explicit max_edges <= 6 must be passed, otherwise the
    request is refused (the search is exhaustive).
    """
    if not isinstance(genus, int) or genus < 0:
        raise ValueError("genus must be a nonnegative integer")
    if not isinstance(leg_count, int) or leg_count < 0:
        raise ValueError("leg count must be a nonnegative integer")
    if genus > 4 and (max_edges is None or max_edges > 6):
        raise Refusal(
            "genus %d exceeds the default bound 4; pass max_edges <= 6 to "
            "enumerate a bounded slice" % genus
        )

    budget = 2 * genus - 2 + leg_count
    if budget < 1:
        return []

    found = {}
    for nv in range(1, budget + 1):
        e_lo = nv - 1
        e_hi = genus + nv - 1
        if max_edges is not None:
            e_hi = min(e_hi, max_edges)
        for ne in range(e_lo, e_hi + 1):
            gsum = genus - (ne - nv + 1)
            if gsum < 0:
                continue
            for genera in _compositions(gsum, nv):
                for leg_home in itertools.product(range(nv), repeat=leg_count):
                    leg_counts = [0] * nv
                    for v in leg_home:
                        leg_counts[v] += 1
                    min_deg = []
                    ok = True
                    for v in range(nv):
                        need = max(0, 3 - 2 * genera[v] - leg_counts[v])
                        if nv > 1:
                            need = max(need, 1)
                        min_deg.append(need)
                    if sum(min_deg) > 2 * ne:
                        ok = False
                    if not ok:
                        continue
                    legs = [(v, i + 1) for i, v in enumerate(leg_home)]
                    for counts in _edge_multisets(nv, ne, min_deg):
                        graph = _build_graph(genera, counts, legs)
                        if nv > 1 and not _is_connected(graph):
                            continue
                        key = canonical_key(graph)
                        if key not in found:
                            found[key] = canonical_form(graph)
    return [found[k] for k in sorted(found)]


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _edge_multisets(nv, ne, min_deg):
    """Multisets of vertex pairs (i <= j) of size ne meeting per-vertex
    degree minima, yielded as count lists aligned with the pair list."""
    pairs = [(i, j) for i in range(nv) for j in range(i, nv)]
    last_pair_of = [max(k for k, p in enumerate(pairs) if v in p) for v in range(nv)]
    deg = [0] * nv
    counts = [0] * len(pairs)

    def deficit():
        return sum(max(0, m - d) for m, d in zip(min_deg, deg))

    def rec(k, remaining):
        if remaining == 0:
            if all(d >= m for d, m in zip(deg, min_deg)):
                yield list(counts)
            return
        if k == len(pairs):
            return
        if deficit() > 2 * remaining:
            return
        i, j = pairs[k]
        for c in range(remaining, -1, -1):
            counts[k] = c
            deg[i] += c
            deg[j] += c
            bad = False
            for v in (i, j):
                if last_pair_of[v] == k and deg[v] < min_deg[v]:
                    bad = True
            if not bad:
                yield from rec(k + 1, remaining - c)
            counts[k] = 0
            deg[i] -= c
            deg[j] -= c

    yield from rec(0, ne)


def _build_graph(genera, counts, legs):
    nv = len(genera)
    pairs = [(i, j) for i in range(nv) for j in range(i, nv)]
    next_slot = [0] * nv
    edges = []
    for (i, j), c in zip(pairs, counts):
        for _ in range(c):
            si = next_slot[i]
            next_slot[i] += 1
            sj = next_slot[j]
            next_slot[j] += 1
            edges.append(((i, si), (j, sj)))
    return StableGraph(genera, edges, legs)
