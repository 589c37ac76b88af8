"""Classification of boundary strata meeting small Hurwitz loci.

Everything here answers one shape of question: fix a small core graph A
(two elliptic vertices joined by g-1 edges; a curve with a rational or
elliptic tail; a comb of elliptic teeth on a spine) and a space of marked
branched covers; which boundary strata, refined by covers of degenerate
targets together with an edge selection contracting to A, can support
components of the intersection, and which of those can carry classes that
are not obviously tautological?

The pipeline per candidate is fixed:

  1. assemble a cover of a degenerate target (validate_cover must pass,
     the source must be connected with the right total genus);
  2. discard covers whose vertexwise monodromy count vanishes (realizable)
     or whose separating edges sit over non-separating target edges;
  3. pick the selected edges: contracting the rest must reproduce A and
     the selection must hit every target edge (genericity);
  4. place the retained marked points on components of the right class;
  5. stabilize each class piece: the subcurve over one A-vertex keeps its
     retained marks and selected-edge branches, unstable rational
     components contract, relocating marks onto the attaching node;
  6. bound the image dimension per target vertex by what survives: a
     target point is visible only through a surviving component carrying
     a special point over it, or ramifying over it with positive genus,
     and each target vertex contributes at most the total moduli capacity
     of its surviving components;
  7. tag.  zero-by-dimension when a required factor dimension is missed;
     rational-target-TKD when every target vertex is rational;
     boundary-supported-TKD when a stabilized piece is nodal;
     fixed-target-TKD when the factor supports decouple or collide
     (whichever the operation's Kuenneth bookkeeping forbids); and
     candidate-nontaut for what survives everything.

Image dimension is reported factor by factor, each factor capped at its
required dimension, so that tag = zero-by-dimension holds exactly when
image_dim < required_dim; the uncapped per-factor bounds are kept in
factor_dims.

Target degenerations carry rational tail trees of depth one on the core
(for the one-edge cores the target shape is forced outright).  Deeper
trees are pre-excluded by branch-point budgeting: a deeper tree consumes
at least as many of the 2g-2 simple branch points while exposing no more
visible moduli than the depth-one shape, so nothing at the required
dimension is lost; pre-excluded shapes simply never appear in a report.

Contributions carry an undetermined nonzero rational scalar: multiplicity
and dimensions are exact, the normalization of each class is not computed
here (scalar_known stays False).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .covers import GraphCover, genericity_check, realizable, validate_cover
from .errors import Refusal
from .graphs import AStructure, StableGraph, contract_edges, validate
from .modular import tau

TAG_ZERO = "zero-by-dimension"
TAG_RATIONAL = "rational-target-TKD"
TAG_BOUNDARY = "boundary-supported-TKD"
TAG_FIXED = "fixed-target-TKD"
TAG_CANDIDATE = "candidate-nontaut"

_TAG_ORDER = {
    TAG_CANDIDATE: 0,
    TAG_BOUNDARY: 1,
    TAG_FIXED: 2,
    TAG_RATIONAL: 3,
    TAG_ZERO: 4,
}

DEFAULT_DEGREE_BOUND = 4
DEFAULT_CANDIDATE_BUDGET = 2_000_000

# scaffolding (whole-fibre) leg labels start here; retained marks keep the
# small labels of the core
_SCAFFOLD_BASE = 1001


@dataclass(frozen=True)
class HurwitzParams:
    """Discrete data of a marked Hurwitz problem.

    g: source genus, h: target genus, d: degree, m2: marked pairs,
    md: marked d-tuples, n: marked simple ramification points.
    """

    g: int
    h: int
    d: int
    m2: int = 0
    md: int = 0
    n: int = 0

    @property
    def b(self) -> int:
        """Simple branch points forced by the degree-genus count."""
        return (2 * self.g - 2) - self.d * (2 * self.h - 2)

    @property
    def N(self) -> int:
        """Bookkeeping constant (d-1) * b."""
        return (self.d - 1) * self.b

    @property
    def B(self) -> int:
        """Dimension of the base space: 3h-3+b plus one per marked fibre."""
        return 3 * self.h - 3 + self.b + self.m2 + self.md

    def violations(self) -> list[str]:
        out = []
        if self.g < 0:
            out.append("source genus g = %d is negative" % self.g)
        if self.h < 0:
            out.append("target genus h = %d is negative" % self.h)
        if self.d < 1:
            out.append("degree d = %d is not positive" % self.d)
        for name in ("m2", "md", "n"):
            if getattr(self, name) < 0:
                out.append("%s = %d is negative" % (name, getattr(self, name)))
        if not out and self.b < 0:
            out.append("branch count b = %d is negative; no such covers"
                       % self.b)
        return out

    def validate(self) -> None:
        problems = self.violations()
        if problems:
            raise ValueError(problems[0])


@dataclass
class StratumContribution:
    """One classified boundary candidate."""

    cover: GraphCover
    a_structure: AStructure
    image_dim: int
    required_dim: int
    multiplicity: int
    tag: str
    psi_excess_degree: int = 0
    factor_dims: tuple = ()     # ((name, dim, required), ...), dim uncapped
    scalar_known: bool = False
    detail: dict = field(default_factory=dict)


def pairing_coefficient(d: int) -> int:
    """Sum over ordered splittings d1 + d1' = d of tau(d1) tau(d1')."""
    if not isinstance(d, int) or d < 2:
        raise ValueError("need an integer d >= 2, got %r" % (d,))
    return sum(tau(d1) * tau(d - d1) for d1 in range(1, d))


# ---------------------------------------------------------------------------
# separating edges


def _bridge_indices(graph: StableGraph) -> set[int]:
    """Indices of separating edges (loops never separate)."""
    out = set()
    for i, ((a, _), (b, _)) in enumerate(graph.edges):
        if a == b:
            continue
        seen = {a}
        stack = [a]
        while stack:
            x = stack.pop()
            for j, ((p, _), (q, _)) in enumerate(graph.edges):
                if j == i:
                    continue
                for u, v in ((p, q), (q, p)):
                    if u == x and v not in seen:
                        seen.add(v)
                        stack.append(v)
        if b not in seen:
            out.add(i)
    return out


def separating_image_check(cover: GraphCover) -> bool:
    """Every separating source edge must map to a separating target edge."""
    src_bridges = _bridge_indices(cover.source)
    if not src_bridges:
        return True
    tgt_bridges = _bridge_indices(cover.target)
    pair_to_index = {
        frozenset(e): j for j, e in enumerate(cover.target.edges)
    }
    for i in src_bridges:
        he1, he2 = cover.source.edges[i]
        image = frozenset(
            (cover.half_edge_map[he1], cover.half_edge_map[he2])
        )
        if pair_to_index[image] not in tgt_bridges:
            return False
    return True


# ---------------------------------------------------------------------------
# small combinatorial helpers


def _partitions(n: int, max_part: int | None = None):
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _compositions(total: int, cells: int):
    if cells == 0:
        if total == 0:
            yield ()
        return
    if cells == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, cells - 1):
            yield (head,) + rest


def _compositions_bounded(total, bounds):
    if not bounds:
        if total == 0:
            yield ()
        return
    head_max = min(total, bounds[0])
    for head in range(head_max + 1):
        for rest in _compositions_bounded(total - head, bounds[1:]):
            yield (head,) + rest


def _integer_matrices(rows, cols):
    """Nonnegative integer matrices with the given row and column sums."""
    if sum(rows) != sum(cols):
        return
    if not rows:
        if not any(cols):
            yield ()
        return
    first, rest = rows[0], rows[1:]
    for split in _compositions_bounded(first, cols):
        new_cols = tuple(c - s for c, s in zip(cols, split))
        for tail in _integer_matrices(rest, new_cols):
            yield (split,) + tail


def _graph_isos(g1: StableGraph, g2: StableGraph):
    """Vertex bijections g1 -> g2 preserving genera and the edge multiset
    (legs are ignored)."""
    if g1.n_vertices != g2.n_vertices or len(g1.edges) != len(g2.edges):
        return []
    e2 = sorted(tuple(sorted((a, b))) for (a, _), (b, _) in g2.edges)
    out = []
    for perm in itertools.permutations(range(g1.n_vertices)):
        if any(g1.genera[v] != g2.genera[perm[v]]
               for v in range(g1.n_vertices)):
            continue
        mapped = sorted(
            tuple(sorted((perm[a], perm[b]))) for (a, _), (b, _) in g1.edges
        )
        if mapped == e2:
            out.append(perm)
    return out


# ---------------------------------------------------------------------------
# target scenarios


@dataclass(frozen=True)
class _Mark:
    """A target leg with its meaning."""

    label: int
    tv: int
    kind: str    # "branch" | "pair" | "pair_old" | "pair_new" | "tuple_*"


@dataclass
class _Scenario:
    target: StableGraph
    marks: tuple


def _make_scenario(genera, edges, mark_plan):
    """mark_plan: iterable of (tv, kind); returns None when unstable."""
    marks = []
    legs = []
    for label, (tv, kind) in enumerate(mark_plan, start=1):
        marks.append(_Mark(label, tv, kind))
        legs.append((tv, label))
    target = StableGraph(genera, edges, legs)
    if validate(target):
        return None
    return _Scenario(target, tuple(marks))


def _distribute(counts_by_kind, n_vertices):
    """Ways to spread each kind's count over the vertices."""
    kinds = sorted(counts_by_kind)
    spreads = [
        list(_compositions(counts_by_kind[k], n_vertices)) for k in kinds
    ]
    for combo in itertools.product(*spreads):
        yield dict(zip(kinds, combo))


def _scenarios_from_genera(genera_choices, edges, nv, kinds):
    out = []
    for genera in genera_choices:
        for spread in _distribute(kinds, nv):
            plan = []
            for kind in sorted(kinds):
                for tv in range(nv):
                    plan += [(tv, kind)] * spread[kind][tv]
            scenario = _make_scenario(list(genera), edges, plan)
            if scenario is not None:
                out.append(scenario)
    return out


def _scenarios_from_shapes(shapes, total_genus, kinds):
    """shapes: (n_vertices, edges, betti); marks of every kind spread over
    all vertices, vertex genera summing to total_genus - betti."""
    out = []
    for nv, edges, betti in shapes:
        free = total_genus - betti
        if free < 0:
            continue
        genera_choices = list(_compositions(free, nv))
        out.extend(_scenarios_from_genera(genera_choices, edges, nv, kinds))
    return out


def _cycle_edges(length):
    """A cycle target shape: length 1 is a loop."""
    if length == 1:
        return [((0, 0), (0, 1))]
    edges = []
    for i in range(length):
        edges.append(((i, 1), ((i + 1) % length, 0)))
    return edges


def _tail_edges(base_edges, n_vertices_base, tails):
    """Attach rational leaves to vertex 0 of the base shape."""
    used0 = sum(1 for e in base_edges for he in e if he[0] == 0)
    edges = list(base_edges)
    for j in range(tails):
        edges.append(((0, used0 + j), (n_vertices_base + j, 0)))
    return edges


_TREES = {
    1: [[(0, 1)]],
    2: [[(0, 1), (1, 2)]],
    3: [[(0, 1), (1, 2), (2, 3)], [(0, 1), (0, 2), (0, 3)]],
    4: [
        [(0, 1), (1, 2), (2, 3), (3, 4)],
        [(0, 1), (0, 2), (0, 3), (0, 4)],
        [(0, 1), (1, 2), (2, 3), (2, 4)],
    ],
}


def _tree_edges(pairs):
    used = {}
    edges = []
    for a, b in pairs:
        sa = used.get(a, 0)
        used[a] = sa + 1
        sb = used.get(b, 0)
        used[b] = sb + 1
        edges.append(((a, sa), (b, sb)))
    return edges


# ---------------------------------------------------------------------------
# source assembly over a scenario


@dataclass
class _Comp:
    """One source vertex in the making."""

    tv: int
    degree: int
    genus: int
    he_profiles: dict      # target half-edge -> descending partition
    branch_count: int      # how many of tv's branch marks ramify here


def _target_half_edges_at(target: StableGraph, tv: int):
    out = []
    for he1, he2 in target.edges:
        if he1[0] == tv:
            out.append(he1)
        if he2[0] == tv:
            out.append(he2)
    return sorted(out)


def _vertex_configs(scenario: _Scenario, tv: int, d: int, genus_budget: int):
    """Fibres over target vertex tv: component degrees, per-edge profiles,
    branch placement; genera forced by the degree-genus count."""
    target = scenario.target
    h_tv = target.genera[tv]
    hes = _target_half_edges_at(target, tv)
    n_branch = sum(
        1 for m in scenario.marks if m.tv == tv and m.kind == "branch"
    )
    configs = []
    for deg_parts in _partitions(d):
        ncomp = len(deg_parts)
        profile_spaces = []
        for dc in deg_parts:
            per_he = [list(_partitions(dc)) for _ in hes]
            profile_spaces.append(list(itertools.product(*per_he)))
        for chosen in itertools.product(*profile_spaces):
            for bsplit in _compositions(n_branch, ncomp):
                comps = []
                ok = True
                for ci, dc in enumerate(deg_parts):
                    if bsplit[ci] and dc < 2:
                        ok = False
                        break
                    edge_branching = sum(
                        sum(p - 1 for p in chosen[ci][hi])
                        for hi in range(len(hes))
                    )
                    rhs = dc * (2 * h_tv - 2) + edge_branching + bsplit[ci] + 2
                    if rhs < 0 or rhs % 2:
                        ok = False
                        break
                    gc = rhs // 2
                    if gc > genus_budget:
                        ok = False
                        break
                    comps.append(
                        _Comp(
                            tv=tv,
                            degree=dc,
                            genus=gc,
                            he_profiles={
                                he: chosen[ci][hi]
                                for hi, he in enumerate(hes)
                            },
                            branch_count=bsplit[ci],
                        )
                    )
                if ok:
                    configs.append(comps)
    return configs


def _edge_side(comps, offset, he):
    """Stubs over one target half-edge: (global component index, ram)."""
    side = []
    for local, comp in enumerate(comps):
        for r in comp.he_profiles.get(he, ()):
            side.append((offset + local, r))
    return side


def _matchings(side_a, side_b):
    """Ways to glue two stub fibres into edges: lists of
    (comp_a, comp_b, ram, multiplicity)."""
    rams = sorted({r for _, r in side_a} | {r for _, r in side_b})
    per_ram = []
    for r in rams:
        rows_idx = sorted({c for c, rr in side_a if rr == r})
        cols_idx = sorted({c for c, rr in side_b if rr == r})
        rows = tuple(
            sum(1 for c, rr in side_a if rr == r and c == ci)
            for ci in rows_idx
        )
        cols = tuple(
            sum(1 for c, rr in side_b if rr == r and c == ci)
            for ci in cols_idx
        )
        if sum(rows) != sum(cols):
            return
        tables = []
        for mat in _integer_matrices(rows, cols):
            entry = []
            for i, ci in enumerate(rows_idx):
                for j, cj in enumerate(cols_idx):
                    if mat[i][j]:
                        entry.append((ci, cj, r, mat[i][j]))
            tables.append(entry)
        per_ram.append(tables)
    for combo in itertools.product(*per_ram):
        glue = []
        for entry in combo:
            glue.extend(entry)
        yield glue


@dataclass
class _Assembled:
    cover: GraphCover
    comps: list            # of _Comp, indexed like source vertices
    fibre_legs: dict       # (comp index, mark label) -> [(leg label, ram)]
    scenario: _Scenario


def _assemble(scenario: _Scenario, per_tv_comps, matchings_choice, g_total):
    """Build the cover; None when disconnected or off-genus."""
    target = scenario.target
    comps = []
    for tv in range(target.n_vertices):
        comps.extend(per_tv_comps[tv])

    next_slot = [0] * len(comps)
    edges = []
    half_edge_map = {}
    half_edge_ram = {}
    for te_idx, glue in enumerate(matchings_choice):
        the1, the2 = target.edges[te_idx]
        for (ca, cb, r, mult) in glue:
            for _ in range(mult):
                sa = next_slot[ca]
                next_slot[ca] += 1
                sb = next_slot[cb]
                next_slot[cb] += 1
                edges.append(((ca, sa), (cb, sb)))
                half_edge_map[(ca, sa)] = the1
                half_edge_map[(cb, sb)] = the2
                half_edge_ram[(ca, sa)] = r
                half_edge_ram[(cb, sb)] = r

    total = sum(c.genus for c in comps) + len(edges) - len(comps) + 1
    if total != g_total:
        return None

    legs = []
    leg_map = {}
    leg_ram = {}
    fibre_legs = {}
    next_label = _SCAFFOLD_BASE
    for ci, comp in enumerate(comps):
        for mark in scenario.marks:
            if mark.tv != comp.tv:
                continue
            fibre = []
            fibre_legs[(ci, mark.label)] = fibre
            for _ in range(comp.degree):
                legs.append((ci, next_label))
                leg_map[next_label] = mark.label
                leg_ram[next_label] = 1
                fibre.append((next_label, 1))
                next_label += 1

    # simple branching: on each carrying component, one double point eats
    # two of the unramified fibre points of its branch mark
    branch_by_tv = {}
    for mark in scenario.marks:
        if mark.kind == "branch":
            branch_by_tv.setdefault(mark.tv, []).append(mark.label)
    for ci, comp in enumerate(comps):
        if not comp.branch_count:
            continue
        for mark_label in _branch_marks_for(comps, ci, branch_by_tv):
            fibre = fibre_legs[(ci, mark_label)]
            (l1, _), (l2, _) = fibre[0], fibre[1]
            legs = [leg for leg in legs if leg[1] != l2]
            del leg_map[l2]
            del leg_ram[l2]
            leg_ram[l1] = 2
            fibre_legs[(ci, mark_label)] = [(l1, 2)] + fibre[2:]

    source = StableGraph([c.genus for c in comps], edges, legs)
    cover = GraphCover(
        source=source,
        target=target,
        vertex_map=tuple(c.tv for c in comps),
        half_edge_map=half_edge_map,
        leg_map=leg_map,
        degrees=tuple(c.degree for c in comps),
        half_edge_ram=half_edge_ram,
        leg_ram=leg_ram,
    )
    problems = validate_cover(cover)
    if problems:
        if all("not connected" in p or "unstable" in p for p in problems):
            return None
        raise AssertionError("assembled an invalid cover: %s" % problems[0])
    return _Assembled(cover, comps, fibre_legs, scenario)


def _branch_marks_for(comps, ci, branch_by_tv):
    """The branch marks whose double point lives on component ci, fixed by
    a deterministic left-to-right convention."""
    labels = branch_by_tv[comps[ci].tv]
    taken = 0
    for cj in range(ci):
        if comps[cj].tv == comps[ci].tv:
            taken += comps[cj].branch_count
    return labels[taken:taken + comps[ci].branch_count]


def _assemblies(scenario: _Scenario, d: int, g_total: int, budget_box):
    """All connected degree-d assemblies over the scenario target."""
    target = scenario.target
    spaces = []
    for tv in range(target.n_vertices):
        cfgs = _vertex_configs(scenario, tv, d, g_total)
        if not cfgs:
            return
        spaces.append(cfgs)
    for per_tv in itertools.product(*spaces):
        offsets = {}
        acc = 0
        for tv in range(target.n_vertices):
            offsets[tv] = acc
            acc += len(per_tv[tv])
        edge_spaces = []
        feasible = True
        for the1, the2 in target.edges:
            side_a = _edge_side(per_tv[the1[0]], offsets[the1[0]], the1)
            side_b = _edge_side(per_tv[the2[0]], offsets[the2[0]], the2)
            glues = list(_matchings(side_a, side_b))
            if not glues:
                feasible = False
                break
            edge_spaces.append(glues)
        if not feasible:
            continue
        for choice in itertools.product(*edge_spaces):
            budget_box[0] += 1
            if budget_box[0] > budget_box[1]:
                raise Refusal(
                    "classification budget exceeded after %d assemblies"
                    % budget_box[0]
                )
            built = _assemble(scenario, per_tv, choice, g_total)
            if built is not None:
                yield built


# ---------------------------------------------------------------------------
# piece stabilization and dimension bounds


@dataclass
class _Pieces:
    class_of: tuple          # source vertex -> quotient class
    survivors: set
    marks: dict              # vertex -> [("leg", A label) | ("he", the)]
    internal_edges: list     # [((v, the at v side), (w, the at w side))]
    nodal_classes: set


def _stabilize(cover: GraphCover, selected, retained_labels):
    """Contract the unselected edges classwise and stabilize each piece."""
    src = cover.source
    sel = set(selected)
    quot = contract_edges(
        src, [i for i in range(len(src.edges)) if i not in sel]
    )
    class_of = quot.vertex_map

    marks = {v: [] for v in range(src.n_vertices)}
    for v, lab in src.legs:
        if lab in retained_labels:
            marks[v].append(("leg", cover.leg_map[lab]))
    for i in sel:
        for he in src.edges[i]:
            marks[he[0]].append(("he", cover.half_edge_map[he]))

    internal = []
    for i, (he1, he2) in enumerate(src.edges):
        if i in sel:
            continue
        internal.append(
            (
                (he1[0], cover.half_edge_map[he1]),
                (he2[0], cover.half_edge_map[he2]),
            )
        )

    alive = set(range(src.n_vertices))

    def end_degree(v):
        return sum(1 for e in internal for (w, _) in e if w == v)

    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if src.genera[v] != 0:
                continue
            deg = end_degree(v)
            nm = len(marks[v])
            if deg + nm > 2:
                continue
            if deg == 1:
                (edge,) = [e for e in internal if any(w == v for w, _ in e)]
                (other,) = [(w, the) for (w, the) in edge if w != v]
                internal.remove(edge)
                if nm == 1:
                    marks[other[0]].append(("he", other[1]))
                alive.discard(v)
                changed = True
                break
            if deg == 2 and nm == 0:
                touching = [e for e in internal if any(w == v for w, _ in e)]
                if len(touching) == 1:
                    continue  # a lone loop: the cycle itself is the curve
                e1, e2 = touching
                (a,) = [(w, the) for (w, the) in e1 if w != v]
                (b,) = [(w, the) for (w, the) in e2 if w != v]
                internal.remove(e1)
                internal.remove(e2)
                internal.append((a, b))
                alive.discard(v)
                changed = True
                break

    nodal = set()
    for e in internal:
        for (w, _) in e:
            nodal.add(class_of[w])

    return _Pieces(
        class_of=class_of,
        survivors=alive,
        marks=marks,
        internal_edges=internal,
        nodal_classes=nodal,
    )


def _per_vertex_dimensions(cover: GraphCover, pieces: _Pieces):
    """For each target vertex: the visible-moduli bound, capped by the
    surviving components' capacity, plus which classes live there."""
    tgt = cover.target
    per_tv = []
    for tv in range(tgt.n_vertices):
        surv = [v for v in pieces.survivors if cover.vertex_map[v] == tv]
        if not surv:
            per_tv.append({"dim": 0, "classes": frozenset()})
            continue
        points = [("leg", lab) for tv2, lab in tgt.legs if tv2 == tv]
        points += [("he", he) for he in _target_half_edges_at(tgt, tv)]
        visible = sum(
            1 for p in points if _visible_through(cover, pieces, surv, p)
        )
        capacity = 0
        for v in surv:
            sp = len(pieces.marks[v])
            for e in pieces.internal_edges:
                for (w, _) in e:
                    if w == v:
                        sp += 1
            capacity += max(0, 3 * cover.source.genera[v] - 3 + sp)
        dim = max(0, min(3 * tgt.genera[tv] - 3 + visible, capacity))
        per_tv.append(
            {
                "dim": dim,
                "classes": frozenset(pieces.class_of[v] for v in surv),
            }
        )
    return per_tv


def _visible_through(cover, pieces, surv, point):
    """A target point is seen by a surviving component that marks it, has a
    surviving node over it, or ramifies over it with positive genus (a
    rational component's ramification carries no modulus of its own)."""
    kind, ref = point
    for v in surv:
        for mk, mref in pieces.marks[v]:
            if (mk, mref) == (kind, ref):
                return True
        if kind == "he":
            for e in pieces.internal_edges:
                for (w, the) in e:
                    if w == v and the == ref:
                        return True
        if cover.source.genera[v] >= 1:
            if kind == "he":
                for he, the in cover.half_edge_map.items():
                    if he[0] == v and the == ref \
                            and cover.half_edge_ram[he] >= 2:
                        return True
            else:
                for v2, lab in cover.source.legs:
                    if v2 == v and cover.leg_map[lab] == ref \
                            and cover.leg_ram[lab] >= 2:
                        return True
    return False


# ---------------------------------------------------------------------------
# the shared classifier


@dataclass
class _OpRules:
    core: StableGraph
    core_labels: dict        # retained A label -> core vertex
    factors: tuple           # ((name, frozenset core vertices, required), ...)
    fixed_rule: str | None   # None | "disjoint" | "shared"
    fixed_sets: tuple = ()   # (frozenset core vertices, frozenset ...)
    psi_factor: str | None = None
    g_total: int = 0
    degree: int = 0
    extra_detail: dict = field(default_factory=dict)


def _run_op(scenarios, rules: _OpRules, retained_gen, degree_bound,
            candidate_budget):
    budget_box = [0, candidate_budget]
    contribs = []
    for scenario in scenarios:
        for assembled in _assemblies(
            scenario, rules.degree, rules.g_total, budget_box
        ):
            contribs.extend(
                _candidates_for(assembled, rules, retained_gen, degree_bound)
            )
    return _dedup(contribs)


def _candidates_for(assembled, rules, retained_gen, degree_bound):
    out = []
    cover = assembled.cover
    if not separating_image_check(cover):
        return out
    if not realizable(cover, degree_bound=degree_bound).ok:
        return out
    n_edges = len(cover.source.edges)
    n_sel = len(rules.core.edges)
    for selected in itertools.combinations(range(n_edges), n_sel):
        a = AStructure(cover.source, selected)
        if not genericity_check(cover, a):
            continue
        quot = a.quotient()
        isos = _graph_isos(quot.graph, rules.core)
        if not isos:
            continue
        seen = set()
        for iso in isos:
            for retained in retained_gen(assembled, quot.vertex_map, iso):
                key = tuple(sorted(
                    (lab, place) for lab, place in retained.items()
                ))
                if key in seen:
                    continue
                seen.add(key)
                contrib = _finish_candidate(
                    assembled, rules, selected, quot, iso, retained
                )
                if contrib is not None:
                    out.append(contrib)
    return out


def _finish_candidate(assembled, rules, selected, quot, iso, retained):
    """retained: A label -> (component, source leg label)."""
    cover = assembled.cover
    relabel = {src_lab: a_lab for a_lab, (_, src_lab) in retained.items()}
    if len(relabel) != len(retained):
        return None
    for a_lab, (ci, _) in retained.items():
        if iso[quot.vertex_map[ci]] != rules.core_labels[a_lab]:
            return None

    new_legs = [(v, relabel.get(lab, lab)) for v, lab in cover.source.legs]
    source = StableGraph(cover.source.genera, cover.source.edges, new_legs)
    final = GraphCover(
        source=source,
        target=cover.target,
        vertex_map=cover.vertex_map,
        half_edge_map=dict(cover.half_edge_map),
        leg_map={relabel.get(k, k): v for k, v in cover.leg_map.items()},
        degrees=cover.degrees,
        half_edge_ram=dict(cover.half_edge_ram),
        leg_ram={relabel.get(k, k): v for k, v in cover.leg_ram.items()},
    )

    a = AStructure(source, selected)
    if not a.matches_core(rules.core):
        return None

    pieces = _stabilize(final, selected, set(relabel.values()))
    per_tv = _per_vertex_dimensions(final, pieces)

    factor_dims = []
    image_dim = 0
    required_dim = 0
    short = False
    for name, core_vs, required in rules.factors:
        dim = 0
        for tv, entry in enumerate(per_tv):
            if {iso[c] for c in entry["classes"]} & set(core_vs):
                dim += entry["dim"]
        factor_dims.append((name, dim, required))
        image_dim += min(dim, required)
        required_dim += required
        if dim < required:
            short = True

    sel = set(selected)
    mult = 1
    for i, (he1, _) in enumerate(final.source.edges):
        if i not in sel:
            mult *= final.half_edge_ram[he1]

    if short:
        tag = TAG_ZERO
    elif all(gv == 0 for gv in final.target.genera):
        tag = TAG_RATIONAL
    elif pieces.nodal_classes:
        tag = TAG_BOUNDARY
    elif _fixed_target(rules, per_tv, iso):
        tag = TAG_FIXED
    else:
        tag = TAG_CANDIDATE

    psi = 0
    if tag == TAG_CANDIDATE and rules.psi_factor is not None:
        for name, dim, required in factor_dims:
            if name == rules.psi_factor:
                psi = max(0, required)
        if "s" in rules.extra_detail:
            assert psi <= rules.extra_detail["s"]

    detail = dict(rules.extra_detail)
    detail.update(_class_degree_detail(rules, final, pieces, iso))
    contrib = StratumContribution(
        cover=final,
        a_structure=a,
        image_dim=image_dim,
        required_dim=required_dim,
        multiplicity=mult,
        tag=tag,
        psi_excess_degree=psi,
        factor_dims=tuple(factor_dims),
        detail=detail,
    )
    contrib._mark_kinds = {
        m.label: m.kind for m in assembled.scenario.marks
    }
    return contrib


def _fixed_target(rules, per_tv, iso):
    if rules.fixed_rule is None:
        return False
    homes = []
    for core_vs in rules.fixed_sets:
        tvs = set()
        for tv, entry in enumerate(per_tv):
            if {iso[c] for c in entry["classes"]} & set(core_vs):
                tvs.add(tv)
        homes.append(tvs)
    overlap = bool(homes[0] & homes[1])
    return overlap if rules.fixed_rule == "shared" else not overlap


def _class_degree_detail(rules, cover, pieces, iso):
    """Fibre degree of each core class over one target vertex, chosen
    isomorphism-invariantly: the vertex maximizing (genus, degree vector)."""
    tgt = cover.target
    best = None
    for tv in range(tgt.n_vertices):
        by_core = {}
        for v in range(cover.source.n_vertices):
            if cover.vertex_map[v] != tv:
                continue
            cv = iso[pieces.class_of[v]]
            by_core[cv] = by_core.get(cv, 0) + cover.degrees[v]
        vector = tuple(
            by_core.get(cv, 0) for cv in range(rules.core.n_vertices)
        )
        cand = (tgt.genera[tv], vector)
        if best is None or cand > best:
            best = cand
    return {"class_degrees": best[1]}


def _candidate_signature(c: StratumContribution) -> str:
    """Isomorphism signature of the candidate's marked cover: colour
    refinement on the joint graph of source vertices, target vertices, and
    target marks, decorated with genera, degrees, ramification, and
    retained-mark labels.  Scaffolding labels, component order, and the
    edge selection wash out; candidates differing only there (and agreeing
    in tag, dimensions, multiplicity, and detail) merge.
    """
    cov = c.cover
    src, tgt = cov.source, cov.target
    kinds = getattr(c, "_mark_kinds", {})

    colors = {}
    adj = {}

    def add_node(n, color):
        colors[n] = color
        adj.setdefault(n, [])

    def add_edge(a, b, color):
        adj[a].append((color, b))
        adj[b].append((color, a))

    for v in range(src.n_vertices):
        add_node(("s", v), ("s", src.genera[v], cov.degrees[v]))
    for tv in range(tgt.n_vertices):
        add_node(("t", tv), ("t", tgt.genera[tv]))
    for _, lab in tgt.legs:
        add_node(("tl", lab), ("tl", kinds.get(lab, "?")))

    for he1, he2 in src.edges:
        add_edge(
            ("s", he1[0]), ("s", he2[0]),
            ("se", cov.half_edge_ram[he1]),
        )
    for he1, he2 in tgt.edges:
        add_edge(("t", he1[0]), ("t", he2[0]), ("te",))
    for v in range(src.n_vertices):
        add_edge(("s", v), ("t", cov.vertex_map[v]), ("pi",))
    for tv, lab in tgt.legs:
        add_edge(("t", tv), ("tl", lab), ("tleg",))
    for v, lab in src.legs:
        a_lab = lab if lab < _SCAFFOLD_BASE else -1
        add_edge(
            ("s", v), ("tl", cov.leg_map[lab]),
            ("sleg", cov.leg_ram[lab], a_lab),
        )

    table0 = sorted({repr(col) for col in colors.values()})
    id0 = {r: i for i, r in enumerate(table0)}
    ids = {n: id0[repr(colors[n])] for n in colors}
    tables = [tuple(table0)]
    n_classes = len(table0)
    for _ in range(len(colors)):
        raw = {
            n: (ids[n], tuple(sorted((ec, ids[m]) for ec, m in adj[n])))
            for n in ids
        }
        table = sorted(set(raw.values()))
        new_id = {val: i for i, val in enumerate(table)}
        ids = {n: new_id[raw[n]] for n in ids}
        tables.append(tuple(table))
        if len(table) == n_classes:
            break
        n_classes = len(table)
    return repr((tuple(tables), tuple(sorted(ids.values()))))


def _contribution_sort_key(c: StratumContribution):
    return (
        _TAG_ORDER[c.tag],
        c.detail.get("class_degrees", ()),
        c._signature,
        c.multiplicity,
    )


def _dedup(contribs):
    seen = {}
    for c in contribs:
        c._signature = _candidate_signature(c)
        key = (
            c.tag,
            c.image_dim,
            c.required_dim,
            c.factor_dims,
            c.multiplicity,
            c.psi_excess_degree,
            tuple(sorted((k, repr(v)) for k, v in c.detail.items())),
            c._signature,
        )
        if key not in seen:
            seen[key] = c
    return sorted(seen.values(), key=_contribution_sort_key)


# ---------------------------------------------------------------------------
# retained-mark placement


def _make_retained_gen(pair_rules, tuple_rules):
    """Build the placement generator from per-kind rules.

    pair_rules: (kind, core vertex of the first point, core vertex of the
    second, labels(i) -> (lab1, lab2)).  tuple_rules: (kind, core vertex
    per position, labels(j, position) -> lab).  Tuple fibres are retained
    in full, so their placement is forced or infeasible; pair placements
    are enumerated as count vectors over component choices, which
    collapses permutations of interchangeable pairs.
    """

    def gen(assembled, class_of, iso):
        cover = assembled.cover
        nsv = cover.source.n_vertices

        def comps_over(tv, core_v):
            return [
                v for v in range(nsv)
                if cover.vertex_map[v] == tv and iso[class_of[v]] == core_v
            ]

        fixed = {}
        used = {}
        for kind, cv_positions, labels_of in tuple_rules:
            marks = [m for m in assembled.scenario.marks if m.kind == kind]
            for j, m in enumerate(marks):
                need = {}
                for p, cv in enumerate(cv_positions):
                    need.setdefault(cv, []).append(p)
                for cv, positions in sorted(need.items()):
                    comps = comps_over(m.tv, cv)
                    if sum(cover.degrees[v] for v in comps) != len(positions):
                        return
                    pos_iter = iter(positions)
                    for v in sorted(comps):
                        for _ in range(cover.degrees[v]):
                            p = next(pos_iter)
                            lab = _take_fibre_leg(assembled, v, m.label, used)
                            if lab is None:
                                return
                            fixed[labels_of(j, p)] = (v, lab)
                spill = [
                    v for v in range(nsv)
                    if cover.vertex_map[v] == m.tv
                    and iso[class_of[v]] not in need
                ]
                if spill:
                    return

        pair_groups = []
        for kind, cv_first, cv_second, labels_of in pair_rules:
            marks = [m for m in assembled.scenario.marks if m.kind == kind]
            by_tv = {}
            for i, m in enumerate(marks):
                by_tv.setdefault(m.tv, []).append((i, m))
            for tv, entries in sorted(by_tv.items()):
                side1 = comps_over(tv, cv_first)
                side2 = comps_over(tv, cv_second)
                if not side1 or not side2:
                    return
                combos = sorted(itertools.product(side1, side2))
                pair_groups.append((entries, combos, labels_of))

        vector_spaces = [
            list(_compositions(len(entries), len(combos)))
            for entries, combos, _ in pair_groups
        ]
        for picks in itertools.product(*vector_spaces):
            placement = dict(fixed)
            group_used = dict(used)
            ok = True
            for (entries, combos, labels_of), counts in zip(
                pair_groups, picks
            ):
                expanded = []
                for combo, count in zip(combos, counts):
                    expanded += [combo] * count
                for (i, m), (c1, c2) in zip(entries, expanded):
                    lab1, lab2 = labels_of(i)
                    l1 = _take_fibre_leg(assembled, c1, m.label, group_used)
                    l2 = _take_fibre_leg(assembled, c2, m.label, group_used)
                    if l1 is None or l2 is None:
                        ok = False
                        break
                    placement[lab1] = (c1, l1)
                    placement[lab2] = (c2, l2)
                if not ok:
                    break
            if ok:
                yield placement

    return gen


def _take_fibre_leg(assembled, comp, mark_label, used):
    for lab, r in assembled.fibre_legs.get((comp, mark_label), ()):
        if r == 1 and (comp, lab) not in used:
            used[(comp, lab)] = True
            return lab
    return None


# ---------------------------------------------------------------------------
# operation: two elliptic pieces of complementary isogeny degree


def classify_equal12(g: int, m2: int, d: int,
                     degree_bound: int = DEFAULT_DEGREE_BOUND,
                     candidate_budget: int = DEFAULT_CANDIDATE_BUDGET
                     ) -> list[StratumContribution]:
    """Classify boundary candidates against the core of two elliptic
    vertices joined by g-1 edges, each side carrying one point of every
    marked pair; needs g + m2 = 12, so the required image dimension is 11.

    The candidate-nontaut entries must be exactly the ordered isogeny
    splittings (d1, d - d1): two smooth elliptic pieces over a common
    elliptic target vertex with every pair and node visible.
    """
    for name, value in (("g", g), ("m2", m2), ("d", d)):
        if not isinstance(value, int):
            raise ValueError("%s must be an int, got %r" % (name, value))
    if m2 < 0:
        raise ValueError("m2 = %d is negative" % m2)
    if g < 2:
        raise Refusal("need source genus g >= 2, got %d" % g)
    if g + m2 != 12:
        raise Refusal(
            "the elliptic-pair core needs g + m2 = 12, got %d + %d = %d"
            % (g, m2, g + m2)
        )
    if d < 2:
        raise Refusal("need degree d >= 2, got %d" % d)
    if d > degree_bound:
        raise Refusal("degree %d exceeds the bound %d" % (d, degree_bound))
    if g > 4:
        raise Refusal(
            "core with %d edges exceeds the enumeration bound (g <= 4)"
            % (g - 1)
        )

    params = HurwitzParams(g=g, h=1, d=d, m2=m2)
    params.validate()

    core_legs = []
    core_labels = {}
    for i in range(m2):
        core_legs.append((0, 2 * i + 1))
        core_labels[2 * i + 1] = 0
        core_legs.append((1, 2 * i + 2))
        core_labels[2 * i + 2] = 1
    core = StableGraph(
        [1, 1],
        [((0, k), (1, k)) for k in range(g - 1)],
        core_legs,
    )

    rules = _OpRules(
        core=core,
        core_labels=core_labels,
        factors=(("pair", frozenset({0, 1}), 11),),
        fixed_rule="disjoint",
        fixed_sets=(frozenset({0}), frozenset({1})),
        g_total=g,
        degree=d,
        extra_detail={"s": m2, "t": g - 1},
    )
    retained_gen = _make_retained_gen(
        [("pair", 0, 1, lambda i: (2 * i + 1, 2 * i + 2))], []
    )

    kinds = {"branch": params.b, "pair": m2}
    max_extra = g - 1
    genera_shapes = []
    for t in range(0, max_extra + 1):
        genera_shapes.append(
            ([1] + [0] * t, _tail_edges([], 1, t), 1 + t)
        )
    for cycle_len in (1, 2, 3):
        if cycle_len > max_extra:
            continue
        base = _cycle_edges(cycle_len)
        for t in range(0, max_extra - cycle_len + 1):
            if cycle_len >= 3 and t > 0:
                continue
            nv = cycle_len + t
            genera_shapes.append(
                ([0] * nv, _tail_edges(base, cycle_len, t), nv)
            )
    scenarios = []
    for genera, edges, nv in genera_shapes:
        scenarios.extend(
            _scenarios_from_genera([genera], edges, nv, kinds)
        )

    return _run_op(scenarios, rules, retained_gen, degree_bound,
                   candidate_budget)


# ---------------------------------------------------------------------------
# operation: one-edge divisor cores (rational tail / elliptic tail)


def classify_divisor_pullback(params: HurwitzParams, divisor_shape: str,
                              degree_bound: int = DEFAULT_DEGREE_BOUND,
                              candidate_budget: int =
                              DEFAULT_CANDIDATE_BUDGET
                              ) -> list[StratumContribution]:
    """Classify candidates against a one-edge core.

    divisor_shape = "rational-tail": the core glues a rational vertex
    carrying both points of one extra marked pair onto the genus-g vertex
    carrying all the old marks; the surviving shape has a degree-2
    rational bridge ramified over the node.

    divisor_shape = "elliptic-tail": the core glues an unmarked elliptic
    vertex onto a genus-(g-1) vertex carrying the pair marks; the
    surviving shape has a totally-ramified degree-2 elliptic tail over a
    rational target vertex with three branch points, plus d-2 rational
    tails.
    """
    if not isinstance(params, HurwitzParams):
        raise ValueError("params must be HurwitzParams")
    params.validate()
    g, h, d, m2, md = params.g, params.h, params.d, params.m2, params.md
    if params.n != 0:
        raise Refusal(
            "marked ramification points are not classified here (n = %d)"
            % params.n
        )
    if d < 2:
        raise Refusal("need degree d >= 2, got %d" % d)
    if d > degree_bound:
        raise Refusal("degree %d exceeds the bound %d" % (d, degree_bound))

    if divisor_shape == "rational-tail":
        if g < 2:
            raise Refusal(
                "need g >= 2 for the rational-tail core, got %d" % g
            )
        if params.b < 1:
            raise Refusal(
                "need at least one simple branch point, b = %d" % params.b
            )
        core_legs = []
        core_labels = {}
        for i in range(m2):
            core_legs += [(0, 2 * i + 1), (0, 2 * i + 2)]
            core_labels[2 * i + 1] = 0
            core_labels[2 * i + 2] = 0
        for j in range(md):
            for p in range(d):
                lab = 2 * m2 + j * d + p + 1
                core_legs.append((0, lab))
                core_labels[lab] = 0
        base = 2 * m2 + md * d
        core_legs += [(1, base + 1), (1, base + 2)]
        core_labels[base + 1] = 1
        core_labels[base + 2] = 1
        core = StableGraph([g, 0], [((0, 0), (1, 0))], core_legs)
        factors = (
            ("main", frozenset({0}), params.B),
            ("tail", frozenset({1}), 0),
        )
        fixed_rule = None
        fixed_sets = ()
        pair_rules = [
            ("pair_old", 0, 0, lambda i: (2 * i + 1, 2 * i + 2)),
            ("pair_new", 1, 1, lambda i: (base + 1, base + 2)),
        ]
        tuple_rules = [
            ("tuple_main", (0,) * d,
             lambda j, p: 2 * m2 + j * d + p + 1),
        ]
        kinds = {
            "branch": params.b,
            "pair_old": m2,
            "pair_new": 1,
            "tuple_main": md,
        }
    elif divisor_shape == "elliptic-tail":
        if h != 1:
            raise Refusal(
                "the elliptic-tail core needs target genus h = 1, got %d"
                % h
            )
        if md != 0:
            raise Refusal(
                "the elliptic-tail core carries no marked tuples, md = %d"
                % md
            )
        if g < 3:
            raise Refusal(
                "need g >= 3 so three branch points can join the node on "
                "the rational target vertex (b = 2g-2 = %d)" % params.b
            )
        core_legs = []
        core_labels = {}
        for i in range(m2):
            core_legs += [(0, 2 * i + 1), (0, 2 * i + 2)]
            core_labels[2 * i + 1] = 0
            core_labels[2 * i + 2] = 0
        core = StableGraph([g - 1, 1], [((0, 0), (1, 0))], core_legs)
        factors = (
            ("main", frozenset({0}), params.B - 2),
            ("tail", frozenset({1}), 1),
        )
        fixed_rule = "shared"
        fixed_sets = (frozenset({0}), frozenset({1}))
        pair_rules = [
            ("pair_old", 0, 0, lambda i: (2 * i + 1, 2 * i + 2)),
        ]
        tuple_rules = []
        kinds = {"branch": params.b, "pair_old": m2}
    else:
        raise ValueError(
            "divisor_shape must be 'rational-tail' or 'elliptic-tail', "
            "got %r" % (divisor_shape,)
        )

    rules = _OpRules(
        core=core,
        core_labels=core_labels,
        factors=factors,
        fixed_rule=fixed_rule,
        fixed_sets=fixed_sets,
        g_total=g,
        degree=d,
        extra_detail={"shape": divisor_shape},
    )
    retained_gen = _make_retained_gen(pair_rules, tuple_rules)

    shapes = [(2, [((0, 0), (1, 0))], 0), (1, [((0, 0), (0, 1))], 1)]
    scenarios = _scenarios_from_shapes(shapes, h, kinds)
    return _run_op(scenarios, rules, retained_gen, degree_bound,
                   candidate_budget)


# ---------------------------------------------------------------------------
# operation: the comb core


def classify_comb_pullback(params: HurwitzParams, s: int,
                           degree_bound: int = DEFAULT_DEGREE_BOUND,
                           candidate_budget: int = DEFAULT_CANDIDATE_BUDGET
                           ) -> list[StratumContribution]:
    """Classify candidates against the comb core: a genus-(g-d) spine
    carrying the pair and leftover tuple marks, with d elliptic teeth,
    each carrying one point of each of s-1 marked tuples.

    The surviving shape is unique: d isomorphic elliptic tails over a
    genus-1 target vertex and the spine over the genus-(h-1) part;
    psi_excess_degree records the excess degree s - d + 1 demanded of
    the tails factor (zero when s = d - 1, where the tails contribute
    through their fundamental class alone).
    """
    if not isinstance(params, HurwitzParams):
        raise ValueError("params must be HurwitzParams")
    if not isinstance(s, int):
        raise ValueError("s must be an int, got %r" % (s,))
    g, h, d, m2, md = params.g, params.h, params.d, params.m2, params.md
    if params.n != 0:
        raise Refusal(
            "marked ramification points are not classified here (n = %d)"
            % params.n
        )
    if h < 2:
        raise Refusal("need target genus h >= 2, got h = %d" % h)
    if s < max(2, d - 1):
        raise Refusal(
            "need s >= max(2, d-1) = %d, got s = %d" % (max(2, d - 1), s)
        )
    if md < s - 1:
        raise Refusal("need md >= s-1 = %d, got md = %d" % (s - 1, md))
    if d < 2:
        raise Refusal("need degree d >= 2, got %d" % d)
    if d > degree_bound:
        raise Refusal("degree %d exceeds the bound %d" % (d, degree_bound))
    if g < d:
        raise Refusal(
            "need g >= d so the spine keeps genus g-d >= 0, got g = %d, "
            "d = %d" % (g, d)
        )
    params.validate()

    core_legs = []
    core_labels = {}
    for i in range(m2):
        core_legs += [(0, 2 * i + 1), (0, 2 * i + 2)]
        core_labels[2 * i + 1] = 0
        core_labels[2 * i + 2] = 0
    for j in range(s - 1):
        for p in range(d):
            lab = 2 * m2 + j * d + p + 1
            core_legs.append((p + 1, lab))
            core_labels[lab] = p + 1
    spine_base = 2 * m2 + (s - 1) * d
    for j in range(md - s + 1):
        for p in range(d):
            lab = spine_base + j * d + p + 1
            core_legs.append((0, lab))
            core_labels[lab] = 0
    core_edges = [((0, k), (k + 1, 0)) for k in range(d)]
    core = StableGraph([g - d] + [1] * d, core_edges, core_legs)
    core_problems = validate(core)
    if core_problems:
        raise Refusal(
            "the comb core is unstable for these parameters: %s"
            % core_problems[0]
        )

    rules = _OpRules(
        core=core,
        core_labels=core_labels,
        factors=(
            ("spine", frozenset({0}), params.B - s - 1),
            ("tails", frozenset(range(1, d + 1)), s - d + 1),
        ),
        fixed_rule="shared",
        fixed_sets=(frozenset({0}), frozenset(range(1, d + 1))),
        psi_factor="tails",
        g_total=g,
        degree=d,
        extra_detail={"s": s},
    )
    retained_gen = _make_retained_gen(
        [("pair", 0, 0, lambda i: (2 * i + 1, 2 * i + 2))],
        [
            ("tuple_tail", tuple(range(1, d + 1)),
             lambda j, p: 2 * m2 + j * d + p + 1),
            ("tuple_spine", (0,) * d,
             lambda j, p: spine_base + j * d + p + 1),
        ],
    )

    kinds = {
        "branch": params.b,
        "pair": m2,
        "tuple_tail": s - 1,
        "tuple_spine": md - s + 1,
    }
    shapes = []
    for ne in range(1, min(d, 4) + 1):
        for pairs in _TREES[ne]:
            shapes.append((ne + 1, _tree_edges(pairs), 0))
    scenarios = _scenarios_from_shapes(shapes, h, kinds)
    return _run_op(scenarios, rules, retained_gen, degree_bound,
                   candidate_budget)
