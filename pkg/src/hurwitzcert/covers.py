"""Covers of stable graphs: validation, realizability, dimensions.

A GraphCover sends a source stable graph to a target stable graph: vertices
to vertices, half-edges to half-edges, legs to legs, with a degree for every
source vertex and a ramification index for every source half-edge and leg.
Validation checks the simultaneous local conditions that make this the dual
datum of an admissible degree-d map:

  * maps commute with incidence and send edges to edges;
  * over each target half-edge or leg at the image of a source vertex v,
    the ramification indices of v's preimages sum to deg(v) (local degree);
  * over each target vertex the degrees of its preimages sum to one global
    degree d;
  * each source vertex genus matches the degree-genus count
    2g - 2 = deg (2g' - 2) + sum (ram - 1).

Realizability then asks, vertex by vertex, whether a connected cover with
the prescribed branching exists at all; that is a monodromy count and is
delegated to the hurwitz module (with its degree cap).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import Refusal
from .graphs import AStructure, StableGraph, legs_at, validate
from .hurwitz import MonodromyProblem, count_tuples


@dataclass
class GraphCover:
    """Cover data between two stable graphs.

    half_edge_map and ramification dictionaries are keyed by (vertex, slot)
    half-edges of the source; leg_map and leg_ram are keyed by leg label.
    """

    source: StableGraph
    target: StableGraph
    vertex_map: tuple
    half_edge_map: dict
    leg_map: dict
    degrees: tuple
    half_edge_ram: dict
    leg_ram: dict = field(default_factory=dict)

    def __post_init__(self):
        self.vertex_map = tuple(int(v) for v in self.vertex_map)
        self.degrees = tuple(int(d) for d in self.degrees)
        self.half_edge_map = {
            (int(a), int(s)): (int(b), int(t))
            for (a, s), (b, t) in self.half_edge_map.items()
        }
        self.leg_map = {int(k): int(v) for k, v in self.leg_map.items()}
        self.half_edge_ram = {
            (int(a), int(s)): int(r) for (a, s), r in self.half_edge_ram.items()
        }
        self.leg_ram = {int(k): int(r) for k, r in self.leg_ram.items()}


def _source_half_edges(graph: StableGraph):
    out = []
    for he1, he2 in graph.edges:
        out.append(he1)
        out.append(he2)
    return out


def validate_cover(cover: GraphCover) -> list[str]:
    """All violations in check order; the first entry is the first failure."""
    problems = []
    for msg in validate(cover.source):
        problems.append("source: " + msg)
    for msg in validate(cover.target):
        problems.append("target: " + msg)
    if problems:
        return problems

    src, tgt = cover.source, cover.target
    nsv, ntv = src.n_vertices, tgt.n_vertices

    if len(cover.vertex_map) != nsv:
        return problems + [
            "vertex_map covers %d vertices, source has %d"
            % (len(cover.vertex_map), nsv)
        ]
    for v, tv in enumerate(cover.vertex_map):
        if not 0 <= tv < ntv:
            problems.append("vertex_map sends %d to missing vertex %d" % (v, tv))
    if problems:
        return problems

    src_hes = _source_half_edges(src)
    tgt_hes = set(_source_half_edges(tgt))
    if set(cover.half_edge_map) != set(src_hes):
        missing = set(src_hes) - set(cover.half_edge_map)
        extra = set(cover.half_edge_map) - set(src_hes)
        if missing:
            problems.append("half_edge_map misses %r" % (sorted(missing)[0],))
        if extra:
            problems.append("half_edge_map names unknown half-edge %r"
                            % (sorted(extra)[0],))
        return problems
    for he, the in cover.half_edge_map.items():
        if the not in tgt_hes:
            problems.append("half-edge %r maps to missing %r" % (he, the))
        elif cover.vertex_map[he[0]] != the[0]:
            problems.append(
                "half-edge %r at vertex %d maps to %r over vertex %d, but the "
                "vertex maps to %d" % (he, he[0], the, the[0], cover.vertex_map[he[0]])
            )
    if problems:
        return problems

    tgt_edge_pairs = {frozenset(e) for e in tgt.edges}
    for he1, he2 in src.edges:
        image = frozenset((cover.half_edge_map[he1], cover.half_edge_map[he2]))
        if image not in tgt_edge_pairs:
            problems.append(
                "edge (%r, %r) maps to (%r, %r), which is not a target edge"
                % (he1, he2, cover.half_edge_map[he1], cover.half_edge_map[he2])
            )
    if problems:
        return problems

    src_labels = {lab for _, lab in src.legs}
    tgt_leg_by_label = {lab: v for v, lab in tgt.legs}
    if set(cover.leg_map) != src_labels:
        return problems + ["leg_map keys %r do not match source leg labels %r"
                           % (sorted(cover.leg_map), sorted(src_labels))]
    src_leg_home = {lab: v for v, lab in src.legs}
    for lab, tlab in cover.leg_map.items():
        if tlab not in tgt_leg_by_label:
            problems.append("leg %d maps to missing target leg %d" % (lab, tlab))
        elif tgt_leg_by_label[tlab] != cover.vertex_map[src_leg_home[lab]]:
            problems.append(
                "leg %d on vertex %d maps to target leg %d on vertex %d, but "
                "the vertex maps to %d"
                % (lab, src_leg_home[lab], tlab, tgt_leg_by_label[tlab],
                   cover.vertex_map[src_leg_home[lab]])
            )
    if problems:
        return problems

    if len(cover.degrees) != nsv:
        return problems + ["degrees lists %d vertices, source has %d"
                           % (len(cover.degrees), nsv)]
    for v, d in enumerate(cover.degrees):
        if d < 1:
            problems.append("vertex %d has nonpositive degree %d" % (v, d))
    if set(cover.half_edge_ram) != set(src_hes):
        return problems + ["half_edge_ram does not key exactly the source half-edges"]
    for he, r in cover.half_edge_ram.items():
        if r < 1:
            problems.append("half-edge %r has nonpositive ramification %d" % (he, r))
    for he1, he2 in src.edges:
        if cover.half_edge_ram[he1] != cover.half_edge_ram[he2]:
            problems.append(
                "edge (%r, %r) carries unequal ramification %d vs %d"
                % (he1, he2, cover.half_edge_ram[he1], cover.half_edge_ram[he2])
            )
    if set(cover.leg_ram) != src_labels:
        return problems + ["leg_ram does not key exactly the source leg labels"]
    for lab, r in cover.leg_ram.items():
        if r < 1:
            problems.append("leg %d has nonpositive ramification %d" % (lab, r))
    if problems:
        return problems

    for v in range(nsv):
        tv = cover.vertex_map[v]
        dv = cover.degrees[v]
        my_hes = [he for he in src_hes if he[0] == v]
        for the in sorted(h for h in tgt_hes if h[0] == tv):
            got = sum(
                cover.half_edge_ram[he]
                for he in my_hes
                if cover.half_edge_map[he] == the
            )
            if got != dv:
                problems.append(
                    "local degree fails at vertex %d over half-edge %r: "
                    "ramification sums to %d, degree is %d" % (v, the, got, dv)
                )
        for tlab in sorted(
            lab for tv2, lab in tgt.legs if tv2 == tv
        ):
            got = sum(
                cover.leg_ram[lab]
                for _, lab in legs_at(src, v)
                if cover.leg_map[lab] == tlab
            )
            if got != dv:
                problems.append(
                    "local degree fails at vertex %d over leg %d: "
                    "ramification sums to %d, degree is %d" % (v, tlab, got, dv)
                )
    if problems:
        return problems

    fibre_degree = {}
    for v, tv in enumerate(cover.vertex_map):
        fibre_degree[tv] = fibre_degree.get(tv, 0) + cover.degrees[v]
    degrees_seen = set()
    for tv in range(ntv):
        if tv not in fibre_degree:
            problems.append("target vertex %d has no preimage" % tv)
        else:
            degrees_seen.add(fibre_degree[tv])
    if not problems and len(degrees_seen) != 1:
        problems.append(
            "global degree is not constant across target vertices: %r"
            % (sorted(degrees_seen),)
        )
    if problems:
        return problems

    for v in range(nsv):
        tv = cover.vertex_map[v]
        dv = cover.degrees[v]
        branching = sum(
            cover.half_edge_ram[he] - 1 for he in src_hes if he[0] == v
        ) + sum(cover.leg_ram[lab] - 1 for _, lab in legs_at(src, v))
        lhs = 2 * src.genera[v] - 2
        rhs = dv * (2 * tgt.genera[tv] - 2) + branching
        if lhs != rhs:
            problems.append(
                "degree-genus count fails at vertex %d: 2g-2 = %d but "
                "deg(2g'-2) + branching = %d" % (v, lhs, rhs)
            )
    return problems


def ensure_valid_cover(cover: GraphCover) -> None:
    problems = validate_cover(cover)
    if problems:
        raise ValueError("invalid cover: " + problems[0])


def cover_degree(cover: GraphCover) -> int:
    """The constant fibre degree (cover must be valid)."""
    ensure_valid_cover(cover)
    return sum(
        cover.degrees[v]
        for v, tv in enumerate(cover.vertex_map)
        if tv == 0
    )


@dataclass(frozen=True)
class Realizability:
    ok: bool
    detail: str | None = None


@lru_cache(maxsize=None)
def _connected_count(degree, target_genus, profiles, degree_bound):
    problem = MonodromyProblem(
        degree=degree, target_genus=target_genus,
        profiles=profiles, connected=True,
    )
    return count_tuples(problem, degree_bound=degree_bound)


def vertex_profiles(cover: GraphCover, v: int) -> list[tuple[int, ...]]:
    """Branching profiles of source vertex v over each target half-edge and
    leg at its image, with unramified (all ones) profiles dropped."""
    tv = cover.vertex_map[v]
    src_hes = [he for he in _source_half_edges(cover.source) if he[0] == v]
    profiles = []
    for the in sorted(h for h in _source_half_edges(cover.target) if h[0] == tv):
        parts = sorted(
            (cover.half_edge_ram[he] for he in src_hes
             if cover.half_edge_map[he] == the),
            reverse=True,
        )
        if parts and set(parts) != {1}:
            profiles.append(tuple(parts))
    for tlab in sorted(lab for tv2, lab in cover.target.legs if tv2 == tv):
        parts = sorted(
            (cover.leg_ram[lab] for _, lab in legs_at(cover.source, v)
             if cover.leg_map[lab] == tlab),
            reverse=True,
        )
        if parts and set(parts) != {1}:
            profiles.append(tuple(parts))
    return profiles


def realizable(cover: GraphCover, degree_bound: int | None = None) -> Realizability:
    """Vertex-by-vertex existence of connected covers with the prescribed
    branching; the first vertex with no cover is reported."""
    ensure_valid_cover(cover)
    for v in range(cover.source.n_vertices):
        tv = cover.vertex_map[v]
        profiles = tuple(vertex_profiles(cover, v))
        count = _connected_count(
            cover.degrees[v], cover.target.genera[tv], profiles, degree_bound
        )
        if count.weighted == 0:
            reason = count.diagnostic or "monodromy count is zero"
            return Realizability(
                False,
                "vertex %d (degree %d over target vertex %d): %s"
                % (v, cover.degrees[v], tv, reason),
            )
    return Realizability(True)


def stratum_dimension(cover: GraphCover, extra_marks: dict | None = None) -> int:
    """Sum over target vertices of 3g - 3 + n, counting half-edges, legs,
    and any extra marks; a negative summand is an error."""
    ensure_valid_cover(cover)
    extra = dict(extra_marks or {})
    total = 0
    tgt = cover.target
    tgt_hes = _source_half_edges(tgt)
    for tv in range(tgt.n_vertices):
        n = sum(1 for he in tgt_hes if he[0] == tv)
        n += sum(1 for v, _ in tgt.legs if v == tv)
        n += extra.get(tv, 0)
        term = 3 * tgt.genera[tv] - 3 + n
        if term < 0:
            raise ValueError(
                "target vertex %d has 3g-3+n = %d < 0; its moduli space is empty"
                % (tv, term)
            )
        total += term
    return total


def genericity_check(cover: GraphCover, a: AStructure) -> bool:
    """Do the selected source edges map onto every target edge?"""
    if a.graph != cover.source:
        raise ValueError("the edge selection lives on a different graph")
    tgt_pairs = {frozenset(e) for e in cover.target.edges}
    hit = set()
    for i in a.selected:
        he1, he2 = cover.source.edges[i]
        hit.add(frozenset((cover.half_edge_map[he1], cover.half_edge_map[he2])))
    return hit == tgt_pairs


def intersection_multiplicity(cover: GraphCover, a: AStructure) -> int:
    """Product of the ramification indices over the non-selected source
    edges.  Requires the genericity condition; a selection that misses some
    target edge is refused."""
    ensure_valid_cover(cover)
    if not genericity_check(cover, a):
        raise Refusal(
            "selection is not generic: some target edge has no selected preimage"
        )
    out = 1
    for i in a.unselected:
        he1, _ = cover.source.edges[i]
        out *= cover.half_edge_ram[he1]
    return out
