"""Brute-force monodromy counting for covers of small degree.

A degree-d cover of a genus-h closed surface with prescribed branching is
encoded by a tuple of permutations of {0, .., d-1}: handle images
a_1, b_1, .., a_h, b_h and one permutation per branch point, subject to
[a_1,b_1]..[a_h,b_h] s_1 .. s_b = id, with s_j in the conjugacy class of
the j-th ramification profile.  Connected covers correspond to tuples whose
entries act transitively.  Counting is exhaustive, so degrees are capped
(default 6) and an explicit step budget refuses blow-ups before searching.

Counts come in two flavours: weighted (tuples / d!, an exact Fraction) and
the number of isomorphism classes (orbits under simultaneous conjugation).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import Refusal

DEFAULT_DEGREE_BOUND = 6
DEFAULT_STEP_BUDGET = 50_000_000


def cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    """Cycle lengths of a one-line permutation, sorted descending."""
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if not seen[start]:
            n = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                n += 1
            lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """Permutation applying q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _commutator(a, b):
    return compose(compose(a, b), compose(inverse(a), inverse(b)))


def _is_transitive(perms, d: int) -> bool:
    if d == 1:
        return True
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for p in perms:
            y = p[x]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return len(seen) == d


def _normalize_profile(profile) -> tuple[int, ...]:
    parts = tuple(sorted((int(p) for p in profile), reverse=True))
    if not parts or any(p < 1 for p in parts):
        raise ValueError("profile parts must be positive integers: %r" % (profile,))
    return parts


@dataclass(frozen=True)
class MonodromyProblem:
    """Degree, target genus, branch profiles, and a connectedness flag."""

    degree: int
    target_genus: int
    profiles: tuple[tuple[int, ...], ...] = ()
    connected: bool = True

    def __post_init__(self):
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ValueError("degree must be a positive integer")
        if not isinstance(self.target_genus, int) or self.target_genus < 0:
            raise ValueError("target genus must be a nonnegative integer")
        norm = tuple(_normalize_profile(p) for p in self.profiles)
        for p in norm:
            if sum(p) != self.degree:
                raise ValueError(
                    "profile %r does not partition the degree %d" % (p, self.degree)
                )
        object.__setattr__(self, "profiles", norm)

    @property
    def branching(self) -> int:
        """Total ramification: sum over profiles of (degree - #parts)."""
        return sum(self.degree - len(p) for p in self.profiles)

    @property
    def source_genus_numerator(self) -> int:
        """2g - 2 of the (connected) source by the degree-genus count."""
        return self.degree * (2 * self.target_genus - 2) + self.branching + 2


@dataclass(frozen=True)
class CoverCount:
    """Result of a monodromy search."""

    weighted: Fraction
    classes: int
    tuples: int
    diagnostic: str | None = None


def count_tuples(
    problem: MonodromyProblem,
    degree_bound: int | None = None,
    step_budget: int | None = None,
) -> CoverCount:
    """Exhaustive monodromy count for a small problem.

    Degenerate problems (odd total ramification, or branching that would
    force negative source genus on a connected cover) return zero counts
    with a diagnostic instead of searching.
    """
    d = problem.degree
    bound = DEFAULT_DEGREE_BOUND if degree_bound is None else degree_bound
    budget = DEFAULT_STEP_BUDGET if step_budget is None else step_budget
    if d > bound:
        raise Refusal("degree %d exceeds the enumeration bound %d" % (d, bound))

    if problem.branching % 2:
        return CoverCount(
            Fraction(0), 0, 0,
            diagnostic="total ramification %d is odd, so no cover exists "
            "(source genus would not be an integer)" % problem.branching,
        )
    if problem.connected and problem.source_genus_numerator < 0:
        return CoverCount(
            Fraction(0), 0, 0,
            diagnostic="branching forces negative source genus on a connected cover",
        )

    h = problem.target_genus
    fact = math.factorial(d)
    perms = list(itertools.permutations(range(d)))
    classes = [
        [p for p in perms if cycle_type(p) == prof] for prof in problem.profiles
    ]

    free_classes = classes[:-1] if classes else []
    est = fact ** (2 * h)
    for cls in free_classes:
        est *= len(cls)
    est *= max(1, 2 * h + len(problem.profiles))
    if est > budget:
        raise Refusal(
            "search size estimate %d exceeds the step budget %d" % (est, budget)
        )

    identity = tuple(range(d))
    solutions = []
    handle_space = itertools.product(perms, repeat=2 * h)
    for handles in handle_space:
        prefix = identity
        for i in range(h):
            prefix = compose(prefix, _commutator(handles[2 * i], handles[2 * i + 1]))
        if not classes:
            if prefix != identity:
                continue
            tup = handles
            if problem.connected and not _is_transitive(tup, d):
                continue
            solutions.append(tup)
            continue
        for body in itertools.product(*free_classes):
            prod = prefix
            for s in body:
                prod = compose(prod, s)
            last = inverse(prod)
            if cycle_type(last) != problem.profiles[-1]:
                continue
            tup = handles + body + (last,)
            if problem.connected and not _is_transitive(tup, d):
                continue
            solutions.append(tup)

    n_classes = _orbit_count(solutions, d)
    return CoverCount(Fraction(len(solutions), fact), n_classes, len(solutions))


def _orbit_count(solutions, d: int) -> int:
    """Orbits of tuples under simultaneous conjugation.

    Adjacent transpositions generate the symmetric group, so conjugating by
    them and taking connected components gives exactly the orbits.
    """
    if not solutions:
        return 0
    if d == 1:
        return len(solutions)
    index = {t: i for i, t in enumerate(solutions)}
    parent = list(range(len(solutions)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = []
    for i in range(d - 1):
        g = list(range(d))
        g[i], g[i + 1] = g[i + 1], g[i]
        gens.append(tuple(g))
    for t, ti in index.items():
        for g in gens:
            conj = tuple(compose(compose(g, p), g) for p in t)  # g = g^{-1}
            ci = index[conj]
            ra, rb = find(ti), find(ci)
            if ra != rb:
                parent[ra] = rb
    return sum(1 for i, p in enumerate(parent) if find(i) == i)


def torus_cover_classes(k: int, degree_bound: int | None = None) -> int:
    """Isomorphism classes of connected, unbranched degree-k covers of a torus."""
    problem = MonodromyProblem(degree=k, target_genus=1, profiles=(), connected=True)
    return count_tuples(problem, degree_bound=degree_bound).classes
