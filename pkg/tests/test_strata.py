"""strata: parameter bookkeeping, classification pipelines, tags."""


import pytest

from hurwitzcert.covers import (
    GraphCover,
    genericity_check,
    realizable,
    validate_cover,
)
from hurwitzcert.errors import Refusal
from hurwitzcert.graphs import StableGraph
from hurwitzcert.modular import a_coeff_table
from hurwitzcert.strata import (
    TAG_BOUNDARY,
    TAG_CANDIDATE,
    TAG_FIXED,
    TAG_RATIONAL,
    TAG_ZERO,
    HurwitzParams,
    classify_comb_pullback,
    classify_divisor_pullback,
    classify_equal12,
    pairing_coefficient,
    separating_image_check,
)


def tag_histogram(contribs):
    out = {}
    for c in contribs:
        out[c.tag] = out.get(c.tag, 0) + 1
    return out


def candidates(contribs):
    return [c for c in contribs if c.tag == TAG_CANDIDATE]


def contribution_key(c):
    return (
        c.tag,
        c.image_dim,
        c.required_dim,
        c.factor_dims,
        c.multiplicity,
        c.psi_excess_degree,
        tuple(sorted((k, repr(v)) for k, v in c.detail.items())),
    )


# ---------------------------------------------------------------------------
# HurwitzParams


def test_params_derived_counts():
    p = HurwitzParams(g=4, h=2, d=2, md=1)
    assert p.b == 2
    assert p.N == 2
    assert p.B == 6


def test_params_genus_one_target():
    p = HurwitzParams(g=2, h=1, d=2, m2=10)
    assert p.b == 2
    assert p.N == 2
    assert p.B == 12


def test_params_degree_scales_branching():
    assert HurwitzParams(g=12, h=1, d=2).b == 22
    assert HurwitzParams(g=12, h=1, d=3).b == 22
    assert HurwitzParams(g=5, h=0, d=3).b == 14


def test_params_violations_name_the_field():
    assert HurwitzParams(g=2, h=1, d=2).violations() == []
    bad = HurwitzParams(g=-1, h=1, d=2).violations()
    assert any("negative" in msg for msg in bad)
    bad = HurwitzParams(g=2, h=1, d=0).violations()
    assert any("not positive" in msg for msg in bad)
    bad = HurwitzParams(g=2, h=1, d=2, n=-3).violations()
    assert any("n = -3" in msg for msg in bad)


def test_params_negative_branch_count_is_a_violation():
    bad = HurwitzParams(g=2, h=2, d=2).violations()
    assert any("branch count" in msg for msg in bad)


def test_params_validate_raises():
    with pytest.raises(ValueError):
        HurwitzParams(g=2, h=1, d=0).validate()
    HurwitzParams(g=2, h=1, d=2).validate()


# ---------------------------------------------------------------------------
# pairing_coefficient


def test_pairing_coefficient_small_values():
    assert pairing_coefficient(2) == 1
    assert pairing_coefficient(3) == -48
    assert pairing_coefficient(4) == 1080


def test_pairing_coefficient_matches_convolution_coefficients():
    table = a_coeff_table(80)
    for d in range(2, 81):
        assert pairing_coefficient(d) == table[d]


def test_pairing_coefficient_rejects_bad_input():
    with pytest.raises(ValueError):
        pairing_coefficient(1)
    with pytest.raises(ValueError):
        pairing_coefficient("2")


# ---------------------------------------------------------------------------
# separating_image_check


def bridge_over_bridge_cover():
    """Degree-1 cover of a two-vertex graph by itself."""
    graph = StableGraph([1, 1], [((0, 0), (1, 0))], [(0, 1), (1, 2)])
    return GraphCover(
        source=graph,
        target=graph,
        vertex_map=(0, 1),
        half_edge_map={(0, 0): (0, 0), (1, 0): (1, 0)},
        leg_map={1: 1, 2: 2},
        degrees=(1, 1),
        half_edge_ram={(0, 0): 1, (1, 0): 1},
        leg_ram={1: 1, 2: 1},
    )


def bridge_over_loop_cover():
    """Degree-2 cover whose separating edge lands on a loop."""
    source = StableGraph([1, 1], [((0, 0), (1, 0))], [])
    target = StableGraph([1], [((0, 0), (0, 1))], [])
    return GraphCover(
        source=source,
        target=target,
        vertex_map=(0, 0),
        half_edge_map={(0, 0): (0, 0), (1, 0): (0, 1)},
        leg_map={},
        degrees=(1, 1),
        half_edge_ram={(0, 0): 1, (1, 0): 1},
        leg_ram={},
    )


def loop_over_loop_cover():
    """Degree-1 cover of a loop by a loop: no separating edges at all."""
    graph = StableGraph([1], [((0, 0), (0, 1))], [])
    return GraphCover(
        source=graph,
        target=graph,
        vertex_map=(0,),
        half_edge_map={(0, 0): (0, 0), (0, 1): (0, 1)},
        leg_map={},
        degrees=(1,),
        half_edge_ram={(0, 0): 1, (0, 1): 1},
        leg_ram={},
    )


def test_separating_edge_over_separating_edge_passes():
    assert separating_image_check(bridge_over_bridge_cover())


def test_separating_edge_over_loop_fails():
    assert not separating_image_check(bridge_over_loop_cover())


def test_no_separating_edges_is_vacuous():
    assert separating_image_check(loop_over_loop_cover())


# ---------------------------------------------------------------------------
# classify_equal12


def test_equal12_degree_two():
    out = classify_equal12(2, 10, 2)
    assert tag_histogram(out) == {TAG_CANDIDATE: 1}
    c = out[0]
    assert c.detail["class_degrees"] == (1, 1)
    assert c.detail["s"] == 10
    assert c.detail["t"] == 1
    assert c.image_dim == c.required_dim == 11
    assert c.multiplicity == 1
    assert c.factor_dims == (("pair", 11, 11),)


def test_equal12_degree_three():
    out = classify_equal12(2, 10, 3)
    assert tag_histogram(out) == {TAG_CANDIDATE: 2, TAG_ZERO: 20}
    cands = candidates(out)
    assert {c.detail["class_degrees"] for c in cands} == {(1, 2), (2, 1)}
    for c in cands:
        assert c.image_dim == c.required_dim == 11
        assert c.multiplicity == 1


def test_equal12_degree_four():
    out = classify_equal12(2, 10, 4)
    assert tag_histogram(out) == {TAG_CANDIDATE: 3, TAG_ZERO: 230}
    cands = candidates(out)
    assert {c.detail["class_degrees"] for c in cands} == {
        (1, 3), (2, 2), (3, 1),
    }
    for c in cands:
        assert c.image_dim == c.required_dim == 11
        assert c.factor_dims == (("pair", 11, 11),)


def test_equal12_candidate_sources_are_elliptic_pairs():
    for d in (2, 3):
        for c in candidates(classify_equal12(2, 10, d)):
            src = c.cover.source
            tgt = c.cover.target
            elliptic_tv = tgt.genera.index(1)
            pair = [v for v, gv in enumerate(src.genera) if gv == 1]
            assert len(pair) == 2
            for v in pair:
                assert c.cover.vertex_map[v] == elliptic_tv
            split = tuple(c.cover.degrees[v] for v in pair)
            assert sorted(split) == sorted(c.detail["class_degrees"])
            assert sum(split) == d


def test_equal12_refusals():
    with pytest.raises(Refusal, match="g \\+ m2 = 12"):
        classify_equal12(2, 9, 2)
    with pytest.raises(Refusal, match="d >= 2"):
        classify_equal12(2, 10, 1)
    with pytest.raises(Refusal, match="exceeds the bound"):
        classify_equal12(2, 10, 5)
    with pytest.raises(Refusal, match="g >= 2"):
        classify_equal12(1, 11, 2)
    with pytest.raises(Refusal, match="enumeration bound"):
        classify_equal12(5, 7, 2)


def test_equal12_rejects_non_integers():
    with pytest.raises(ValueError):
        classify_equal12(2.0, 10, 2)
    with pytest.raises(ValueError):
        classify_equal12(2, -1, 2)


def test_equal12_is_deterministic():
    first = [contribution_key(c) for c in classify_equal12(2, 10, 3)]
    second = [contribution_key(c) for c in classify_equal12(2, 10, 3)]
    assert first == second


# ---------------------------------------------------------------------------
# classify_divisor_pullback, rational-tail shape


def test_rational_tail_degree_two_grid():
    for g in (2, 3, 4):
        out = classify_divisor_pullback(
            HurwitzParams(g=g, h=1, d=2), "rational-tail")
        assert tag_histogram(out) == {TAG_CANDIDATE: 1}
        c = out[0]
        src = c.cover.source
        assert src.genera == (0, g)
        assert c.cover.degrees == (2, 2)
        assert c.cover.vertex_map == (0, 1)
        assert c.cover.half_edge_ram == {(0, 0): 2, (1, 0): 2}
        assert c.image_dim == c.required_dim == 2 * g - 2
        assert c.multiplicity == 1
        assert c.detail["shape"] == "rational-tail"


def test_rational_tail_degree_three_grid():
    for g in (2, 3, 4):
        out = classify_divisor_pullback(
            HurwitzParams(g=g, h=1, d=3), "rational-tail")
        assert tag_histogram(out) == {TAG_CANDIDATE: 1, TAG_ZERO: 1}
        c = candidates(out)[0]
        src = c.cover.source
        assert src.genera == (0, 0, g)
        assert c.cover.degrees == (2, 1, 3)
        assert c.cover.vertex_map == (0, 0, 1)
        assert c.cover.half_edge_ram[(0, 0)] == 2
        assert c.image_dim == c.required_dim == 2 * g - 2


def test_rational_tail_bridge_is_ramified_over_the_node():
    c = classify_divisor_pullback(
        HurwitzParams(g=2, h=1, d=2), "rational-tail")[0]
    (he1, he2), = c.cover.source.edges
    assert c.cover.half_edge_ram[he1] == 2
    assert c.cover.half_edge_ram[he2] == 2


def test_rational_tail_over_rational_target_is_tautological():
    out = classify_divisor_pullback(
        HurwitzParams(g=2, h=0, d=2), "rational-tail")
    assert tag_histogram(out) == {TAG_RATIONAL: 1}


def test_rational_tail_refusals():
    with pytest.raises(Refusal, match="n = 1"):
        classify_divisor_pullback(
            HurwitzParams(g=2, h=1, d=2, n=1), "rational-tail")
    with pytest.raises(Refusal, match="g >= 2"):
        classify_divisor_pullback(
            HurwitzParams(g=1, h=1, d=2), "rational-tail")
    with pytest.raises(Refusal, match="branch point"):
        classify_divisor_pullback(
            HurwitzParams(g=3, h=2, d=2), "rational-tail")
    with pytest.raises(Refusal, match="exceeds the bound"):
        classify_divisor_pullback(
            HurwitzParams(g=2, h=1, d=6), "rational-tail")


def test_divisor_rejects_unknown_shape():
    with pytest.raises(ValueError):
        classify_divisor_pullback(HurwitzParams(g=2, h=1, d=2), "pair-tail")
    with pytest.raises(ValueError):
        classify_divisor_pullback((2, 1, 2), "rational-tail")


# ---------------------------------------------------------------------------
# classify_divisor_pullback, elliptic-tail shape


def test_elliptic_tail_degree_two_grid():
    for g in (3, 4):
        out = classify_divisor_pullback(
            HurwitzParams(g=g, h=1, d=2), "elliptic-tail")
        assert tag_histogram(out) == {TAG_CANDIDATE: 1, TAG_BOUNDARY: 1}
        c = candidates(out)[0]
        src = c.cover.source
        assert src.genera == (1, g - 1)
        assert c.cover.degrees == (2, 2)
        assert c.cover.vertex_map == (0, 1)
        assert sorted(c.cover.half_edge_ram.values()) == [2, 2]
        assert c.image_dim == c.required_dim == 2 * g - 3


def test_elliptic_tail_degree_three_grid():
    expected = {
        3: {TAG_CANDIDATE: 1, TAG_BOUNDARY: 2, TAG_FIXED: 3, TAG_ZERO: 3},
        4: {TAG_CANDIDATE: 1, TAG_BOUNDARY: 6, TAG_FIXED: 3, TAG_ZERO: 2},
    }
    for g in (3, 4):
        out = classify_divisor_pullback(
            HurwitzParams(g=g, h=1, d=3), "elliptic-tail")
        assert tag_histogram(out) == expected[g]
        c = candidates(out)[0]
        src = c.cover.source
        assert src.genera == (1, 0, g - 1)
        assert c.cover.degrees == (2, 1, 3)
        assert c.cover.vertex_map == (0, 0, 1)
        assert sorted(c.cover.half_edge_ram.values()) == [1, 1, 2, 2]
        assert c.image_dim == c.required_dim == 2 * g - 3


def test_elliptic_tail_candidate_is_totally_ramified_on_the_tail():
    c = candidates(classify_divisor_pullback(
        HurwitzParams(g=3, h=1, d=2), "elliptic-tail"))[0]
    tail_vertex = c.cover.source.genera.index(1)
    assert c.cover.degrees[tail_vertex] == 2
    for he, image in c.cover.half_edge_map.items():
        if he[0] == tail_vertex:
            assert c.cover.half_edge_ram[he] == 2


def test_elliptic_tail_refusals():
    with pytest.raises(Refusal, match="h = 1"):
        classify_divisor_pullback(
            HurwitzParams(g=4, h=2, d=2), "elliptic-tail")
    with pytest.raises(Refusal, match="md = 1"):
        classify_divisor_pullback(
            HurwitzParams(g=3, h=1, d=2, md=1), "elliptic-tail")
    with pytest.raises(Refusal, match="g >= 3"):
        classify_divisor_pullback(
            HurwitzParams(g=2, h=1, d=2), "elliptic-tail")


# ---------------------------------------------------------------------------
# classify_comb_pullback


def test_comb_unique_surviving_shape():
    out = classify_comb_pullback(HurwitzParams(g=4, h=2, d=2, md=1), s=2)
    assert tag_histogram(out) == {TAG_CANDIDATE: 1}
    c = out[0]
    src = c.cover.source
    assert src.genera == (1, 1, 2)
    assert c.cover.degrees == (1, 1, 2)
    assert c.cover.vertex_map == (0, 0, 1)
    assert c.cover.target.genera == (1, 1)
    assert c.image_dim == c.required_dim == 4
    assert c.multiplicity == 1
    assert c.factor_dims == (("spine", 3, 3), ("tails", 2, 1))
    assert c.detail["s"] == 2


def test_comb_psi_excess_degree():
    c = classify_comb_pullback(HurwitzParams(g=4, h=2, d=2, md=1), s=2)[0]
    assert c.psi_excess_degree == 1
    assert c.psi_excess_degree <= c.detail["s"]


def test_comb_psi_vanishes_at_the_lower_tuple_bound():
    out = classify_comb_pullback(HurwitzParams(g=5, h=2, d=3, md=1), s=2)
    cands = candidates(out)
    assert len(cands) == 1
    c = cands[0]
    assert c.psi_excess_degree == 0
    assert c.cover.source.genera == (1, 1, 1, 2)
    assert c.cover.degrees == (1, 1, 1, 3)
    assert c.factor_dims == (("spine", 3, 3), ("tails", 2, 0))


def test_comb_tails_sit_over_the_elliptic_target_vertex():
    c = classify_comb_pullback(HurwitzParams(g=4, h=2, d=2, md=1), s=2)[0]
    tgt = c.cover.target
    elliptic = [tv for tv, gv in enumerate(tgt.genera) if gv == 1]
    tails = [v for v, gv in enumerate(c.cover.source.genera) if gv == 1]
    assert len(tails) == c.cover.degrees[-1] == 2
    assert len({c.cover.vertex_map[v] for v in tails}) == 1
    assert c.cover.vertex_map[tails[0]] in elliptic
    for v in tails:
        assert c.cover.degrees[v] == 1


def test_comb_refusals_name_the_inequality():
    with pytest.raises(Refusal, match="h >= 2"):
        classify_comb_pullback(HurwitzParams(g=4, h=1, d=2, md=1), s=2)
    with pytest.raises(Refusal, match="s >= max"):
        classify_comb_pullback(HurwitzParams(g=4, h=2, d=2, md=1), s=1)
    with pytest.raises(Refusal, match="md >= s-1"):
        classify_comb_pullback(HurwitzParams(g=4, h=2, d=2, md=1), s=3)
    with pytest.raises(Refusal, match="g >= d"):
        classify_comb_pullback(HurwitzParams(g=3, h=2, d=4, md=3), s=3)
    with pytest.raises(Refusal, match="n = 2"):
        classify_comb_pullback(HurwitzParams(g=4, h=2, d=2, md=1, n=2), s=2)


# ---------------------------------------------------------------------------
# cross-cutting output invariants


@pytest.fixture(scope="module")
def output_pool():
    pool = []
    pool += classify_equal12(2, 10, 3)
    pool += classify_divisor_pullback(
        HurwitzParams(g=3, h=1, d=2), "rational-tail")
    pool += classify_divisor_pullback(
        HurwitzParams(g=3, h=1, d=3), "elliptic-tail")
    pool += classify_comb_pullback(HurwitzParams(g=4, h=2, d=2, md=1), s=2)
    return pool


def test_outputs_are_valid_covers(output_pool):
    for c in output_pool:
        assert validate_cover(c.cover) == []


def test_outputs_are_realizable(output_pool):
    for c in output_pool:
        assert realizable(c.cover).ok


def test_outputs_respect_separating_edges(output_pool):
    for c in output_pool:
        assert separating_image_check(c.cover)


def test_outputs_are_generic_for_their_selection(output_pool):
    for c in output_pool:
        assert c.a_structure.graph == c.cover.source
        assert genericity_check(c.cover, c.a_structure)


def test_zero_tag_matches_dimension_shortfall(output_pool):
    for c in output_pool:
        assert (c.tag == TAG_ZERO) == (c.image_dim < c.required_dim)


def test_image_dimension_caps_each_factor(output_pool):
    for c in output_pool:
        assert c.image_dim == sum(
            min(dim, req) for _, dim, req in c.factor_dims)
        assert c.required_dim == sum(req for _, _, req in c.factor_dims)


def test_no_candidate_survives_over_an_all_rational_target(output_pool):
    for c in output_pool:
        if all(gv == 0 for gv in c.cover.target.genera):
            assert c.tag != TAG_CANDIDATE


def test_scalar_factors_stay_unknown(output_pool):
    for c in output_pool:
        assert c.scalar_known is False
        assert c.multiplicity >= 1


def test_psi_only_appears_on_comb_candidates(output_pool):
    for c in output_pool:
        if c.psi_excess_degree:
            assert c.tag == TAG_CANDIDATE
            assert any(name == "tails" for name, _, _ in c.factor_dims)
