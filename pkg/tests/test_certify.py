"""certify: hypothesis cases, reduction chains, replay verification."""


from dataclasses import replace
from itertools import product

import pytest

from hurwitzcert.certify import (
    CASE_DEGREE_TWO,
    CASE_GENUS_ONE,
    CASE_HIGHER_DEGREE,
    STEP_COMB,
    STEP_DROP_PAIR,
    STEP_FORGET,
    STEP_GENUS,
    STEP_PAIR_TO_TUPLE,
    Certificate,
    Step,
    build_certificate,
    check_hypotheses,
    verify_certificate,
)
from hurwitzcert.errors import Refusal
from hurwitzcert.modular import a_coeff
from hurwitzcert.strata import HurwitzParams


# ---------------------------------------------------------------------------
# check_hypotheses


def test_case_genus_one_passes():
    report = check_hypotheses(HurwitzParams(g=12, h=1, d=2))
    assert report.case == CASE_GENUS_ONE
    assert report.ok
    assert [c.name for c in report.checks] == ["g >= 2", "g + m2 >= 12"]


def test_case_genus_one_boundary_value():
    report = check_hypotheses(HurwitzParams(g=2, h=1, d=2, m2=10))
    assert report.ok
    check = report.checks[1]
    assert (check.lhs, check.rhs) == (12, 12)


def test_case_genus_one_failure_is_evaluated():
    report = check_hypotheses(HurwitzParams(g=2, h=1, d=2, m2=9))
    assert not report.ok
    assert report.failures() == ["g + m2 >= 12 fails: 11 < 12"]


def test_case_degree_two():
    report = check_hypotheses(HurwitzParams(g=14, h=2, d=2, m2=8))
    assert report.case == CASE_DEGREE_TWO
    assert report.ok
    assert [c.name for c in report.checks] == [
        "g >= 2h", "g + m2 >= 2h + 10", "m2 >= 1",
    ]
    bad = check_hypotheses(HurwitzParams(g=14, h=2, d=2, m2=0))
    assert not bad.ok
    assert bad.failures() == ["m2 >= 1 fails: 0 < 1"]


def test_case_higher_degree():
    report = check_hypotheses(HurwitzParams(g=20, h=3, d=4, md=5))
    assert report.case == CASE_HIGHER_DEGREE
    assert report.ok
    lhs = [c.lhs for c in report.checks]
    rhs = [c.rhs for c in report.checks]
    assert lhs == [20, 25, 5]
    assert rhs == [10, 22, 3]


def test_case_higher_degree_tuple_shortage():
    report = check_hypotheses(HurwitzParams(g=20, h=3, d=4, md=2))
    assert not report.ok
    assert report.failures() == ["md >= (d-3)(h-1) + 1 fails: 2 < 3"]


def test_outside_scope_raises():
    with pytest.raises(ValueError):
        check_hypotheses(HurwitzParams(g=12, h=0, d=2))
    with pytest.raises(ValueError):
        check_hypotheses(HurwitzParams(g=12, h=1, d=1))
    with pytest.raises(ValueError):
        check_hypotheses((12, 1, 2))


# ---------------------------------------------------------------------------
# build_certificate


def test_build_at_the_base_needs_no_steps():
    cert = build_certificate(HurwitzParams(g=12, h=1, d=2))
    assert cert.steps == ()
    assert cert.base == (12, 0)
    assert cert.witness_degree == 2
    assert cert.witness_value == 1


def test_build_marked_base_needs_no_steps():
    cert = build_certificate(HurwitzParams(g=2, h=1, d=2, m2=10))
    assert cert.steps == ()
    assert cert.base == (2, 10)


def test_build_one_genus_step():
    cert = build_certificate(HurwitzParams(g=13, h=1, d=2))
    assert [s.kind for s in cert.steps] == [STEP_GENUS, STEP_FORGET]
    assert cert.steps[0].after == HurwitzParams(g=12, h=1, d=2, n=1)
    assert cert.steps[1].after == HurwitzParams(g=12, h=1, d=2)
    assert cert.base == (12, 0)


def test_build_degree_two_target_induction():
    cert = build_certificate(HurwitzParams(g=14, h=2, d=2, m2=8))
    assert cert.steps[0].kind == STEP_COMB
    assert cert.steps[0].s == 2
    assert cert.steps[0].after == HurwitzParams(g=12, h=1, d=2, m2=8)
    assert [s.kind for s in cert.steps[1:]] == [STEP_DROP_PAIR] * 8
    assert cert.base == (12, 0)
    assert cert.witness_value == a_coeff(2) == 1


def test_build_higher_degree_target_induction():
    cert = build_certificate(HurwitzParams(g=20, h=3, d=4, md=5))
    kinds = [s.kind for s in cert.steps]
    assert kinds == ([STEP_COMB] * 2 + [STEP_PAIR_TO_TUPLE] * 3
                     + [STEP_DROP_PAIR] * 3)
    assert all(s.s == 3 for s in cert.steps[:2])
    assert cert.steps[1].after == HurwitzParams(g=12, h=1, d=4, md=3)
    assert cert.base == (12, 0)
    assert cert.witness_value == a_coeff(4) == 1080


def test_build_forgets_marked_ramification_first():
    cert = build_certificate(HurwitzParams(g=12, h=1, d=2, n=2))
    assert [s.kind for s in cert.steps] == [STEP_FORGET, STEP_FORGET]
    assert cert.steps[-1].after.n == 0


def test_build_converts_tuples_at_genus_one_target():
    cert = build_certificate(HurwitzParams(g=4, h=1, d=3, m2=8, md=3))
    kinds = [s.kind for s in cert.steps]
    assert kinds == [STEP_PAIR_TO_TUPLE] * 3 + [STEP_DROP_PAIR] * 3
    assert cert.base == (4, 8)


def test_build_refuses_with_the_failed_inequality():
    with pytest.raises(Refusal, match="g \\+ m2 >= 12 fails: 11 < 12"):
        build_certificate(HurwitzParams(g=2, h=1, d=2, m2=9))
    with pytest.raises(Refusal, match="g >= 2h fails: 3 < 4"):
        build_certificate(HurwitzParams(g=3, h=2, d=2, m2=11))
    with pytest.raises(Refusal, match="md >= "):
        build_certificate(HurwitzParams(g=20, h=3, d=4, md=2))


def test_build_succeeds_exactly_when_hypotheses_pass():
    built = refused = 0
    for g, h, d, m2, md in product(
            range(2, 17, 2), (1, 2, 3), (2, 3, 4), (0, 1, 4), (0, 1, 3)):
        params = HurwitzParams(g=g, h=h, d=d, m2=m2, md=md)
        if params.violations():
            continue
        expected = check_hypotheses(params).ok
        try:
            cert = build_certificate(params)
        except Refusal:
            assert not expected, params
            refused += 1
        else:
            assert expected, params
            assert verify_certificate(cert)
            built += 1
    assert built > 0
    assert refused > 0


# ---------------------------------------------------------------------------
# verify_certificate


def sample_certificate():
    return build_certificate(HurwitzParams(g=14, h=2, d=2, m2=8))


def test_verify_round_trip():
    for params in (
            HurwitzParams(g=12, h=1, d=2),
            HurwitzParams(g=15, h=1, d=2, m2=3, n=2),
            HurwitzParams(g=14, h=2, d=2, m2=8),
            HurwitzParams(g=20, h=3, d=4, md=5),
            HurwitzParams(g=30, h=4, d=3, m2=5, md=4),
    ):
        assert verify_certificate(build_certificate(params))


def test_verify_rejects_zero_witness():
    cert = replace(sample_certificate(), witness_value=0)
    assert not verify_certificate(cert)


def test_verify_rejects_wrong_witness_value():
    cert = replace(sample_certificate(), witness_value=7)
    assert not verify_certificate(cert)


def test_verify_rejects_wrong_witness_degree():
    cert = replace(sample_certificate(), witness_degree=3)
    assert not verify_certificate(cert)


def test_verify_rejects_wrong_base():
    cert = replace(sample_certificate(), base=(11, 1))
    assert not verify_certificate(cert)


def test_verify_rejects_dropped_step():
    cert = sample_certificate()
    assert not verify_certificate(replace(cert, steps=cert.steps[1:]))
    assert not verify_certificate(replace(cert, steps=cert.steps[:-1]))


def test_verify_rejects_reordered_steps():
    cert = build_certificate(HurwitzParams(g=20, h=3, d=4, md=5))
    steps = list(cert.steps)
    steps[2], steps[3] = steps[3], steps[2]
    assert not verify_certificate(replace(cert, steps=tuple(steps)))


def test_verify_rejects_tampered_rewrite():
    cert = sample_certificate()
    first = cert.steps[0]
    bad = replace(first, after=replace(first.after, g=first.after.g + 1))
    assert not verify_certificate(
        replace(cert, steps=(bad,) + cert.steps[1:]))


def test_verify_rejects_small_comb_tuple_size():
    cert = build_certificate(HurwitzParams(g=20, h=2, d=4, md=3))
    first = cert.steps[0]
    assert first.kind == STEP_COMB and first.s == 3
    shrunk = replace(first, s=2,
                     after=replace(first.before, g=first.before.g - 4,
                                   h=1, md=first.before.md))
    assert not verify_certificate(
        replace(cert, steps=(shrunk,) + cert.steps[1:]))


def test_verify_rejects_chain_ending_off_base():
    cert = build_certificate(HurwitzParams(g=13, h=1, d=2))
    assert not verify_certificate(
        replace(cert, steps=cert.steps[:1], base=(12, 0)))


def test_verify_rejects_root_outside_scope():
    cert = sample_certificate()
    assert not verify_certificate(replace(cert, root=HurwitzParams(
        g=14, h=0, d=2, m2=8)))
    assert not verify_certificate(replace(cert, root=HurwitzParams(
        g=14, h=2, d=2, m2=7)))


def test_verify_rejects_structural_garbage():
    assert not verify_certificate(Certificate(
        root=(12, 1, 2), steps=(), base=(12, 0),
        witness_degree=2, witness_value=1))
    cert = sample_certificate()
    assert not verify_certificate(replace(cert, steps=("comb",)))


def test_verify_accepts_hand_built_chain():
    before = HurwitzParams(g=12, h=1, d=2, n=1)
    step = Step(kind=STEP_FORGET, before=before,
                after=HurwitzParams(g=12, h=1, d=2))
    cert = Certificate(root=before, steps=(step,), base=(12, 0),
                       witness_degree=2, witness_value=1)
    assert verify_certificate(cert)


def test_verify_rejects_noop_step():
    before = HurwitzParams(g=12, h=1, d=2, n=1)
    step = Step(kind=STEP_FORGET, before=before, after=before)
    cert = Certificate(root=before, steps=(step,), base=(12, 0),
                       witness_degree=2, witness_value=1)
    assert not verify_certificate(cert)
