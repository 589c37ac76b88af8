"""Hypothesis checking and replayable reduction certificates.

A certificate records why a marked Hurwitz cycle with parameters
(g, h, d, m2, md, n) is non-tautological: a chain of reduction steps,
each backed by a comparison lemma, rewrites the parameters down to a
base tuple (g0, m20) with g0 + m20 = 12, where the elliptic-pair
classification supplies the class, and the convolution coefficient a_d
is attached as the non-vanishing witness.

Step kinds and their exact parameter rewrites:

  forget-ramification   n -> n - 1            (needs n >= 1)
  pair-to-tuple         m2 -> m2 + 1,
                        md -> md - 1          (needs md >= 1)
  drop-pair             m2 -> m2 - 1          (needs m2 >= 1)
  genus-step            g -> g - 1,
                        n -> n + 1            (needs h = 1, g >= 13,
                                               md = 0, n = 0)
  comb-step (s)         g -> g - d,
                        h -> h - 1,
                        md -> md - s + 2      (needs h >= 2, n = 0,
                                               s >= max(2, d-1),
                                               g >= d, and s - 1
                                               available tuples)

Every step strictly decreases the lexicographic measure
(h, g, md, m2, n), so replaying a certificate always terminates.  At
degree 2 a marked pair and a marked 2-tuple carry identical data (two
unramified points forming one fibre), so the comb step may draw its
consumed tuple from the combined pool m2 + md; for d > 2 only md
qualifies.

Verification is a pure replay: re-check every precondition and rewrite,
confirm the chain ends at the declared base, and recompute the witness.
"""


from dataclasses import dataclass, replace

from .errors import Refusal
from .modular import a_coeff
from .strata import HurwitzParams


STEP_FORGET = "forget-ramification"
STEP_PAIR_TO_TUPLE = "pair-to-tuple"
STEP_DROP_PAIR = "drop-pair"
STEP_GENUS = "genus-step"
STEP_COMB = "comb-step"

STEP_KINDS = (
    STEP_FORGET,
    STEP_PAIR_TO_TUPLE,
    STEP_DROP_PAIR,
    STEP_GENUS,
    STEP_COMB,
)

CASE_GENUS_ONE = "h=1"
CASE_DEGREE_TWO = "h>1,d=2"
CASE_HIGHER_DEGREE = "h>1,d>2"

BASE_TOTAL = 12


# ---------------------------------------------------------------------------
# hypothesis checking


@dataclass(frozen=True)
class HypothesisCheck:
    """One inequality with both sides evaluated."""

    name: str
    lhs: int
    rhs: int
    passed: bool

    def describe(self) -> str:
        verdict = "holds" if self.passed else "fails"
        return "%s %s: %d vs %d" % (self.name, verdict, self.lhs, self.rhs)


@dataclass(frozen=True)
class HypothesisReport:
    """Applicable case label plus the evaluated inequalities."""

    case: str
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[str]:
        return [
            "%s fails: %d < %d" % (c.name, c.lhs, c.rhs)
            for c in self.checks if not c.passed
        ]


def _check(name: str, lhs: int, rhs: int) -> HypothesisCheck:
    return HypothesisCheck(name=name, lhs=lhs, rhs=rhs, passed=lhs >= rhs)


def check_hypotheses(params: HurwitzParams) -> HypothesisReport:
    """Pick the applicable case for (g, h, d, m2, md) and evaluate its
    inequalities exactly; n never appears, it is forgotten step by step.
    """
    if not isinstance(params, HurwitzParams):
        raise ValueError("params must be HurwitzParams")
    params.validate()
    if params.d < 2:
        raise ValueError(
            "outside scope: need degree d >= 2, got %d" % params.d)
    if params.h < 1:
        raise ValueError(
            "outside scope: need target genus h >= 1, got %d" % params.h)
    g, h, d, m2, md = params.g, params.h, params.d, params.m2, params.md
    if h == 1:
        return HypothesisReport(
            case=CASE_GENUS_ONE,
            checks=(
                _check("g >= 2", g, 2),
                _check("g + m2 >= 12", g + m2, BASE_TOTAL),
            ),
        )
    if d == 2:
        return HypothesisReport(
            case=CASE_DEGREE_TWO,
            checks=(
                _check("g >= 2h", g, 2 * h),
                _check("g + m2 >= 2h + 10", g + m2, 2 * h + 10),
                _check("m2 >= 1", m2, 1),
            ),
        )
    return HypothesisReport(
        case=CASE_HIGHER_DEGREE,
        checks=(
            _check("g >= d(h-1) + 2", g, d * (h - 1) + 2),
            _check("g + m2 + md >= (2d-3)(h-1) + 12",
                   g + m2 + md, (2 * d - 3) * (h - 1) + BASE_TOTAL),
            _check("md >= (d-3)(h-1) + 1", md, (d - 3) * (h - 1) + 1),
        ),
    )


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Step:
    """One reduction step: before -> after under the named rewrite."""

    kind: str
    before: HurwitzParams
    after: HurwitzParams
    s: int = 0          # comb-step only; 0 elsewhere


@dataclass(frozen=True)
class Certificate:
    """Replayable reduction chain with base identification and witness."""

    root: HurwitzParams
    steps: tuple
    base: tuple         # (g0, m20) with g0 + m20 = 12
    witness_degree: int
    witness_value: int


def _measure(p: HurwitzParams) -> tuple:
    return (p.h, p.g, p.md, p.m2, p.n)


def _step_problem(step: Step) -> str | None:
    """None if the step's precondition and rewrite are exactly right,
    else a description of the first problem found."""
    before, after, s = step.before, step.after, step.s
    if not isinstance(before, HurwitzParams):
        return "step input is not a parameter tuple"
    if not isinstance(after, HurwitzParams):
        return "step output is not a parameter tuple"
    if before.violations():
        return "step input is invalid: %s" % before.violations()[0]
    kind = step.kind
    if kind != STEP_COMB and s != 0:
        return "s = %d recorded on a %s step" % (s, kind)
    if kind == STEP_FORGET:
        if before.n < 1:
            return "forget-ramification needs n >= 1, got n = %d" % before.n
        expected = replace(before, n=before.n - 1)
    elif kind == STEP_PAIR_TO_TUPLE:
        if before.md < 1:
            return "pair-to-tuple needs md >= 1, got md = %d" % before.md
        expected = replace(before, m2=before.m2 + 1, md=before.md - 1)
    elif kind == STEP_DROP_PAIR:
        if before.m2 < 1:
            return "drop-pair needs m2 >= 1, got m2 = %d" % before.m2
        expected = replace(before, m2=before.m2 - 1)
    elif kind == STEP_GENUS:
        if before.h != 1:
            return "genus-step needs h = 1, got h = %d" % before.h
        if before.g < 13:
            return "genus-step needs g >= 13, got g = %d" % before.g
        if before.md != 0:
            return "genus-step needs md = 0, got md = %d" % before.md
        if before.n != 0:
            return "genus-step needs n = 0, got n = %d" % before.n
        expected = replace(before, g=before.g - 1, n=before.n + 1)
    elif kind == STEP_COMB:
        if before.h < 2:
            return "comb-step needs h >= 2, got h = %d" % before.h
        if before.n != 0:
            return "comb-step needs n = 0, got n = %d" % before.n
        floor = max(2, before.d - 1)
        if s < floor:
            return "comb-step needs s >= max(2, d-1) = %d, got s = %d" \
                % (floor, s)
        pool = before.md if before.d > 2 else before.m2 + before.md
        if pool < s - 1:
            return "comb-step needs %d available tuples, got %d" \
                % (s - 1, pool)
        if before.g < before.d:
            return "comb-step needs g >= d, got g = %d, d = %d" \
                % (before.g, before.d)
        expected = replace(before, g=before.g - before.d,
                           h=before.h - 1, md=before.md - s + 2)
    else:
        return "unknown step kind %r" % (kind,)
    if after != expected:
        return "%s rewrote %r to %r, expected %r" \
            % (kind, before, after, expected)
    if not _measure(after) < _measure(before):
        return "%s did not decrease the measure" % kind
    return None


def build_certificate(params: HurwitzParams) -> Certificate:
    """Build the reduction chain for params, refusing with the exact
    failed inequality when the hypotheses do not hold."""
    report = check_hypotheses(params)
    if not report.ok:
        raise Refusal(
            "hypotheses fail for case %s: %s"
            % (report.case, "; ".join(report.failures()))
        )
    witness = a_coeff(params.d)
    if witness == 0:
        raise Refusal(
            "non-vanishing hypothesis fails: a_%d = 0" % params.d)

    steps = []
    current = params

    def push(kind, after, s=0):
        nonlocal current
        step = Step(kind=kind, before=current, after=after, s=s)
        problem = _step_problem(step)
        assert problem is None, problem
        steps.append(step)
        current = after

    for _ in range(params.n):
        push(STEP_FORGET, replace(current, n=current.n - 1))
    while current.h > 1:
        s = 2 if current.d == 2 else current.d - 1
        push(STEP_COMB,
             replace(current, g=current.g - current.d,
                     h=current.h - 1, md=current.md - s + 2),
             s=s)
    for _ in range(current.md):
        push(STEP_PAIR_TO_TUPLE,
             replace(current, m2=current.m2 + 1, md=current.md - 1))
    while current.g > BASE_TOTAL:
        push(STEP_GENUS,
             replace(current, g=current.g - 1, n=current.n + 1))
        push(STEP_FORGET, replace(current, n=current.n - 1))
    while current.g + current.m2 > BASE_TOTAL:
        push(STEP_DROP_PAIR, replace(current, m2=current.m2 - 1))

    certificate = Certificate(
        root=params,
        steps=tuple(steps),
        base=(current.g, current.m2),
        witness_degree=params.d,
        witness_value=witness,
    )
    assert verify_certificate(certificate)
    return certificate


def verify_certificate(certificate: Certificate) -> bool:
    """Replay the chain: every precondition, every rewrite, the base
    identification, and the recomputed witness must all check out."""
    try:
        root = certificate.root
        if not isinstance(root, HurwitzParams):
            return False
        if root.violations():
            return False
        if root.d < 2 or root.h < 1:
            return False
        current = root
        for step in certificate.steps:
            if not isinstance(step, Step):
                return False
            if step.before != current:
                return False
            if _step_problem(step) is not None:
                return False
            current = step.after
        if current.h != 1 or current.n != 0 or current.md != 0:
            return False
        if tuple(certificate.base) != (current.g, current.m2):
            return False
        if current.g < 2 or current.g + current.m2 != BASE_TOTAL:
            return False
        if certificate.witness_degree != root.d:
            return False
        value = certificate.witness_value
        if not isinstance(value, int) or isinstance(value, bool) or value == 0:
            return False
        if a_coeff(root.d) != value:
            return False
        return True
    except (TypeError, ValueError, AttributeError, IndexError):
        return False
