"""Possible Winner translations and the seeded random-instance generator.

With budget zero and swap prices in {0, d}, forbidding exactly the
positive-priced swaps turns each vote into a partial order: the reachable
rankings are precisely its linear extensions. Both translation directions
and a brute-force Possible Winner decider live here, plus the seeded
generator behind the test corpora.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

from .core import CO_WINNER, Election, Ranking, Vote, VotingRule, winners_of_rankings
from .errors import DomainError, PreconditionError, ResourceCapError
from .swaps import BriberyInstance, SwapCostFunction


def _transitive_closure(m: int, pairs: frozenset[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    reach: dict[int, set[int]] = {a: set() for a in range(m)}
    for a, b in pairs:
        reach[a].add(b)
    changed = True
    while changed:
        changed = False
        for a in range(m):
            extra = set()
            for b in reach[a]:
                extra |= reach[b] - reach[a]
            if extra:
                reach[a] |= extra
                changed = True
    return frozenset((a, b) for a in range(m) for b in reach[a])


@dataclass(frozen=True)
class PartialVote:
    """A strict partial order over candidates 0..m-1, transitively closed."""

    m: int
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        closed = _transitive_closure(self.m, self.pairs)
        if closed != self.pairs:
            object.__setattr__(self, "pairs", closed)
        for a, b in self.pairs:
            if a == b:
                raise DomainError("partial order must be irreflexive")
            if (b, a) in self.pairs:
                raise DomainError(f"cycle through candidates {a} and {b}")
            if not (0 <= a < self.m and 0 <= b < self.m):
                raise DomainError("pair outside the candidate range")

    def requires(self, a: int, b: int) -> bool:
        return (a, b) in self.pairs

    def is_extension(self, ranking: Ranking) -> bool:
        pos = {c: i for i, c in enumerate(ranking)}
        return all(pos[a] < pos[b] for a, b in self.pairs)

    def minimal_extension(self) -> Ranking:
        """Lexicographically smallest topological order, by candidate index."""
        succs: dict[int, set[int]] = {c: set() for c in range(self.m)}
        indeg = [0] * self.m
        for a, b in self.pairs:
            if b not in succs[a]:
                succs[a].add(b)
                indeg[b] += 1
        ready = sorted(c for c in range(self.m) if indeg[c] == 0)
        out = []
        while ready:
            c = ready.pop(0)
            out.append(c)
            for b in sorted(succs[c]):
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
            ready.sort()
        if len(out) != self.m:
            raise DomainError("partial order has a cycle")
        return tuple(out)

    def extensions(self, cap: int | None = None) -> Iterator[Ranking]:
        """All linear extensions, in lexicographic order."""
        succs: dict[int, set[int]] = {c: set() for c in range(self.m)}
        indeg = [0] * self.m
        for a, b in self.pairs:
            if b not in succs[a]:
                succs[a].add(b)
                indeg[b] += 1
        prefix: list[int] = []
        used = [False] * self.m
        count = 0

        def descend():
            nonlocal count
            if len(prefix) == self.m:
                count += 1
                if cap is not None and count > cap:
                    raise ResourceCapError(f"more than {cap} linear extensions")
                yield tuple(prefix)
                return
            for c in range(self.m):
                if used[c] or indeg[c] > 0:
                    continue
                used[c] = True
                for b in succs[c]:
                    indeg[b] -= 1
                prefix.append(c)
                yield from descend()
                prefix.pop()
                for b in succs[c]:
                    indeg[b] += 1
                used[c] = False

        yield from descend()


@dataclass(frozen=True)
class PossibleWinnerInstance:
    candidates: tuple[str, ...]
    votes: tuple[PartialVote, ...]
    rule: VotingRule
    preferred: int

    def __post_init__(self):
        m = len(self.candidates)
        self.rule.validate_for(m)
        if not 0 <= self.preferred < m:
            raise DomainError("preferred candidate not on the roster")
        for vote in self.votes:
            if vote.m != m:
                raise DomainError("partial vote built for a different roster")


def sb_to_pw(instance: BriberyInstance) -> PossibleWinnerInstance:
    """Zero-budget, two-price bribery instance as a Possible Winner instance.

    Keeps, per vote, exactly the precedences whose swap would cost money;
    their transitive closure is the partial vote.
    """
    if instance.budget != 0:
        raise PreconditionError("translation needs budget zero")
    positive = {c for c in instance.costs.iter_values() if c != 0}
    if len(positive) > 1:
        raise PreconditionError(f"costs must lie in {{0, d}}; found {sorted(positive)}")

    m = instance.election.m
    partials = []
    for idx, ranking in enumerate(instance.election.expanded()):
        pairs = set()
        for i in range(m):
            for j in range(i + 1, m):
                if instance.costs.cost(idx, ranking[i], ranking[j]) != 0:
                    pairs.add((ranking[i], ranking[j]))
        partials.append(PartialVote(m, frozenset(pairs)))
    return PossibleWinnerInstance(
        candidates=instance.election.candidates,
        votes=tuple(partials),
        rule=instance.rule,
        preferred=instance.preferred,
    )


def pw_to_sb(pw: PossibleWinnerInstance) -> BriberyInstance:
    """Possible Winner instance as a zero-budget bribery with {0,1} costs.

    Casts each partial vote as its minimal linear extension and prices
    exactly the ordered pairs the partial order requires.
    """
    cast = []
    overrides = []
    for vote in pw.votes:
        cast.append(Vote(vote.minimal_extension()))
        overrides.append({(a, b): Fraction(1) for (a, b) in vote.pairs})
    n = len(cast)
    return BriberyInstance(
        election=Election(pw.candidates, tuple(cast)),
        rule=pw.rule,
        preferred=pw.preferred,
        costs=SwapCostFunction([Fraction(0)] * n, overrides),
        budget=Fraction(0),
        mode=CO_WINNER,
    )


def possible_winner_brute(
    pw: PossibleWinnerInstance, cap: int = 10**6
) -> bool:
    """Exhaustive decision: some joint extension makes the candidate win."""
    per_vote: list[list[Ranking]] = []
    total = 1
    for vote in pw.votes:
        exts = list(vote.extensions(cap=cap))
        total *= len(exts)
        if total > cap:
            raise ResourceCapError(f"extension combinations exceed cap {cap}")
        per_vote.append(exts)
    m = len(pw.candidates)
    for profile in product(*per_vote):
        if pw.preferred in winners_of_rankings(list(profile), m, pw.rule):
            return True
    return False


def random_partial_votes(
    m: int, n: int, seed: int, density: float = 0.4
) -> tuple[PartialVote, ...]:
    """Seeded partial orders: random subsets of random linear orders."""
    rng = random.Random(seed)
    votes = []
    for _ in range(n):
        order = rng.sample(range(m), m)
        pairs = set()
        for i in range(m):
            for j in range(i + 1, m):
                if rng.random() < density:
                    pairs.add((order[i], order[j]))
        votes.append(PartialVote(m, frozenset(pairs)))
    return tuple(votes)


def gen_random(
    m: int,
    n: int,
    k: int,
    cost_model="unit",
    seed: int = 0,
    budget=None,
    rule: VotingRule | None = None,
    mode: str = CO_WINNER,
) -> BriberyInstance:
    """Reproducible random instance for the given seed.

    Cost models: ``"unit"``, ``("two-valued", a, b, density)`` pricing each
    ordered pair b with the given probability and a otherwise, or
    ``("uniform-range", lo, hi)`` drawing quarter-integer prices from
    [lo, hi]. Budget defaults to a seeded draw from 0..n*k.
    """
    if m < 1 or n < 1 or k < 1 or k > m:
        raise DomainError("need m >= 1, n >= 1 and 1 <= k <= m")
    rng = random.Random(f"{seed}:{m}:{n}:{k}")
    candidates = tuple(f"c{i}" for i in range(m))
    votes = tuple(Vote(tuple(rng.sample(range(m), m))) for _ in range(n))

    defaults: list[Fraction] = []
    overrides: list[dict[tuple[int, int], Fraction]] = []
    if cost_model == "unit":
        defaults = [Fraction(1)] * n
        overrides = [{} for _ in range(n)]
    elif cost_model[0] == "two-valued":
        _, low, high, density = cost_model
        low, high = Fraction(low), Fraction(high)
        for _ in range(n):
            defaults.append(low)
            table = {}
            for a in range(m):
                for b in range(m):
                    if a != b and rng.random() < density:
                        table[(a, b)] = high
            overrides.append(table)
    elif cost_model[0] == "uniform-range":
        _, lo, hi = cost_model
        lo_q, hi_q = int(Fraction(lo) * 4), int(Fraction(hi) * 4)
        if lo_q > hi_q:
            raise DomainError("uniform-range needs lo <= hi")
        for _ in range(n):
            defaults.append(Fraction(rng.randint(lo_q, hi_q), 4))
            table = {}
            for a in range(m):
                for b in range(m):
                    if a != b and rng.random() < 0.5:
                        table[(a, b)] = Fraction(rng.randint(lo_q, hi_q), 4)
            overrides.append(table)
    else:
        raise DomainError(f"unknown cost model {cost_model!r}")

    if budget is None:
        budget = Fraction(rng.randint(0, n * k))
    return BriberyInstance(
        election=Election(candidates, votes),
        rule=rule if rule is not None else VotingRule.k_approval(k),
        preferred=rng.randrange(m),
        costs=SwapCostFunction(defaults, overrides),
        budget=Fraction(budget),
        mode=mode,
    )
