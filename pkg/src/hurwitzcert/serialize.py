"""JSON documents for graphs, covers, contributions, and certificates.

Graph documents carry `vertices` (one {genus, legs} record per vertex)
and `edges` (pairs of [vertex, slot] half-edges).  Cover documents embed
`source` and `target` graphs and add `vertex_map`, `half_edge_map`,
`leg_map`, `degrees`, and a `ramification` section split into
`half_edges` and `legs`.  Certificate documents carry the root
parameters, the step chain, the base pair, and the witness.

All numbers are exact integers; floats and booleans are rejected on
parse.  Printing is canonical (sorted keys, fixed indentation), so
print -> parse -> print reproduces the same bytes, and parse -> print
round-trips any document this module produced.

A cover file may omit ramification entries for some legs.  A missing
value is inferred only when it is forced: among the source legs of one
vertex lying over one target leg, at most one may be unspecified, and
its value is the vertex degree minus the sum of the specified ones.
Anything less constrained is rejected as ambiguous.
"""


import json

from .certify import Certificate, Step
from .covers import GraphCover
from .graphs import StableGraph
from .strata import HurwitzParams, StratumContribution


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError("%s must be an exact integer, got %r" % (what, value))
    return value


def _list(value, what: str) -> list:
    if not isinstance(value, list):
        raise ValueError("%s must be a list, got %r" % (what, type(value)))
    return value


def _dict(value, what: str) -> dict:
    if not isinstance(value, dict):
        raise ValueError("%s must be an object, got %r" % (what, type(value)))
    return value


def _half_edge(value, what: str) -> tuple:
    pair = _list(value, what)
    if len(pair) != 2:
        raise ValueError("%s must be [vertex, slot]" % what)
    return (_int(pair[0], what + " vertex"), _int(pair[1], what + " slot"))


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# graphs


def graph_to_doc(graph: StableGraph) -> dict:
    vertices = []
    for v, genus in enumerate(graph.genera):
        labels = [lab for w, lab in graph.legs if w == v]
        vertices.append({"genus": genus, "legs": labels})
    edges = [[[a, s], [b, t]] for (a, s), (b, t) in graph.edges]
    return {"vertices": vertices, "edges": edges}


def graph_from_doc(doc) -> StableGraph:
    doc = _dict(doc, "graph")
    vertices = _list(doc.get("vertices"), "vertices")
    genera = []
    legs = []
    for v, record in enumerate(vertices):
        record = _dict(record, "vertex %d" % v)
        genera.append(_int(record.get("genus"), "vertex %d genus" % v))
        for lab in _list(record.get("legs", []), "vertex %d legs" % v):
            legs.append((v, _int(lab, "leg label")))
    edges = []
    for i, pair in enumerate(_list(doc.get("edges", []), "edges")):
        pair = _list(pair, "edge %d" % i)
        if len(pair) != 2:
            raise ValueError("edge %d must join two half-edges" % i)
        edges.append((_half_edge(pair[0], "edge %d end" % i),
                      _half_edge(pair[1], "edge %d end" % i)))
    return StableGraph(genera, edges, legs)


def graph_to_json(graph: StableGraph) -> str:
    return _dump(graph_to_doc(graph))


def graph_from_json(text: str) -> StableGraph:
    return graph_from_doc(json.loads(text))


# ---------------------------------------------------------------------------
# covers


def cover_to_doc(cover: GraphCover) -> dict:
    return {
        "source": graph_to_doc(cover.source),
        "target": graph_to_doc(cover.target),
        "vertex_map": list(cover.vertex_map),
        "half_edge_map": [
            [[v, s], [tv, ts]]
            for (v, s), (tv, ts) in sorted(cover.half_edge_map.items())
        ],
        "leg_map": [
            [lab, tlab] for lab, tlab in sorted(cover.leg_map.items())
        ],
        "degrees": list(cover.degrees),
        "ramification": {
            "half_edges": [
                [[v, s], r]
                for (v, s), r in sorted(cover.half_edge_ram.items())
            ],
            "legs": [
                [lab, r] for lab, r in sorted(cover.leg_ram.items())
            ],
        },
    }


def _infer_leg_ram(source, degrees, leg_map, leg_ram):
    """Fill omitted leg ramification values when they are forced."""
    groups = {}
    for v, lab in source.legs:
        if lab not in leg_map:
            raise ValueError("leg %d has no image" % lab)
        groups.setdefault((v, leg_map[lab]), []).append(lab)
    for (v, _), labels in sorted(groups.items()):
        missing = [lab for lab in labels if lab not in leg_ram]
        if not missing:
            continue
        if len(missing) > 1:
            raise ValueError(
                "ramification of legs %s is ambiguous; specify all but one "
                "per fibre" % missing
            )
        forced = degrees[v] - sum(leg_ram[lab] for lab in labels
                                  if lab in leg_ram)
        if forced < 1:
            raise ValueError(
                "inferred ramification %d for leg %d is not positive"
                % (forced, missing[0])
            )
        leg_ram[missing[0]] = forced


def cover_from_doc(doc) -> GraphCover:
    doc = _dict(doc, "cover")
    source = graph_from_doc(doc.get("source"))
    target = graph_from_doc(doc.get("target"))
    vertex_map = tuple(
        _int(tv, "vertex_map entry")
        for tv in _list(doc.get("vertex_map"), "vertex_map")
    )
    half_edge_map = {}
    for item in _list(doc.get("half_edge_map", []), "half_edge_map"):
        item = _list(item, "half_edge_map entry")
        if len(item) != 2:
            raise ValueError("half_edge_map entries are [source, image]")
        half_edge_map[_half_edge(item[0], "source half-edge")] = \
            _half_edge(item[1], "image half-edge")
    leg_map = {}
    for item in _list(doc.get("leg_map", []), "leg_map"):
        item = _list(item, "leg_map entry")
        if len(item) != 2:
            raise ValueError("leg_map entries are [leg, image]")
        leg_map[_int(item[0], "leg")] = _int(item[1], "leg image")
    degrees = tuple(
        _int(dc, "degree")
        for dc in _list(doc.get("degrees"), "degrees")
    )
    ram = _dict(doc.get("ramification", {}), "ramification")
    half_edge_ram = {}
    for item in _list(ram.get("half_edges", []), "half-edge ramification"):
        item = _list(item, "half-edge ramification entry")
        if len(item) != 2:
            raise ValueError("half-edge ramification entries are [he, r]")
        half_edge_ram[_half_edge(item[0], "ramified half-edge")] = \
            _int(item[1], "ramification")
    leg_ram = {}
    for item in _list(ram.get("legs", []), "leg ramification"):
        item = _list(item, "leg ramification entry")
        if len(item) != 2:
            raise ValueError("leg ramification entries are [leg, r]")
        leg_ram[_int(item[0], "leg")] = _int(item[1], "ramification")
    if len(vertex_map) != source.n_vertices:
        raise ValueError(
            "vertex_map covers %d vertices, source has %d"
            % (len(vertex_map), source.n_vertices)
        )
    if len(degrees) != source.n_vertices:
        raise ValueError(
            "degrees cover %d vertices, source has %d"
            % (len(degrees), source.n_vertices)
        )
    _infer_leg_ram(source, degrees, leg_map, leg_ram)
    return GraphCover(
        source=source,
        target=target,
        vertex_map=vertex_map,
        half_edge_map=half_edge_map,
        leg_map=leg_map,
        degrees=degrees,
        half_edge_ram=half_edge_ram,
        leg_ram=leg_ram,
    )


def cover_to_json(cover: GraphCover) -> str:
    return _dump(cover_to_doc(cover))


def cover_from_json(text: str) -> GraphCover:
    return cover_from_doc(json.loads(text))


# ---------------------------------------------------------------------------
# stratum contributions (output only)


def contribution_to_doc(contribution: StratumContribution) -> dict:
    detail = {}
    for key, value in contribution.detail.items():
        detail[key] = list(value) if isinstance(value, tuple) else value
    return {
        "tag": contribution.tag,
        "image_dim": contribution.image_dim,
        "required_dim": contribution.required_dim,
        "multiplicity": contribution.multiplicity,
        "psi_excess_degree": contribution.psi_excess_degree,
        "factor_dims": [
            [name, dim, req] for name, dim, req in contribution.factor_dims
        ],
        "scalar_known": contribution.scalar_known,
        "detail": detail,
        "selected_edges": list(contribution.a_structure.selected),
        "cover": cover_to_doc(contribution.cover),
    }


# ---------------------------------------------------------------------------
# parameters and certificates


def params_to_doc(params: HurwitzParams) -> dict:
    return {
        "g": params.g, "h": params.h, "d": params.d,
        "m2": params.m2, "md": params.md, "n": params.n,
    }


def params_from_doc(doc) -> HurwitzParams:
    doc = _dict(doc, "parameters")
    extra = set(doc) - {"g", "h", "d", "m2", "md", "n"}
    if extra:
        raise ValueError("unknown parameter fields: %s" % sorted(extra))
    return HurwitzParams(
        g=_int(doc.get("g"), "g"),
        h=_int(doc.get("h"), "h"),
        d=_int(doc.get("d"), "d"),
        m2=_int(doc.get("m2", 0), "m2"),
        md=_int(doc.get("md", 0), "md"),
        n=_int(doc.get("n", 0), "n"),
    )


def certificate_to_doc(certificate: Certificate) -> dict:
    return {
        "root": params_to_doc(certificate.root),
        "steps": [
            {
                "kind": step.kind,
                "before": params_to_doc(step.before),
                "after": params_to_doc(step.after),
                "s": step.s,
            }
            for step in certificate.steps
        ],
        "base": list(certificate.base),
        "witness": {
            "degree": certificate.witness_degree,
            "value": certificate.witness_value,
        },
    }


def certificate_from_doc(doc) -> Certificate:
    doc = _dict(doc, "certificate")
    steps = []
    for i, record in enumerate(_list(doc.get("steps", []), "steps")):
        record = _dict(record, "step %d" % i)
        kind = record.get("kind")
        if not isinstance(kind, str):
            raise ValueError("step %d kind must be a string" % i)
        steps.append(Step(
            kind=kind,
            before=params_from_doc(record.get("before")),
            after=params_from_doc(record.get("after")),
            s=_int(record.get("s", 0), "step %d s" % i),
        ))
    base = _list(doc.get("base"), "base")
    if len(base) != 2:
        raise ValueError("base must be [g0, m20]")
    witness = _dict(doc.get("witness"), "witness")
    return Certificate(
        root=params_from_doc(doc.get("root")),
        steps=tuple(steps),
        base=(_int(base[0], "base genus"), _int(base[1], "base pairs")),
        witness_degree=_int(witness.get("degree"), "witness degree"),
        witness_value=_int(witness.get("value"), "witness value"),
    )


def certificate_to_json(certificate: Certificate) -> str:
    return _dump(certificate_to_doc(certificate))


def certificate_from_json(text: str) -> Certificate:
    return certificate_from_doc(json.loads(text))
