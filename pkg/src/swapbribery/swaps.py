"""Swaps between adjacent candidates, swap pricing, and bribery verification.

Cost conventions: ``cost(v, a, b)`` is the price of swapping ``a`` with ``b``
in vote ``v`` while ``a`` directly precedes ``b``; the reverse swap is priced
by ``cost(v, b, a)``. Prices are exact non-negative rationals. Transforming a
full ranking into another costs the sum, over pairs whose relative order
flips, of the price oriented by the original vote; this is the cheapest
admissible swap set realizing the transformation (each flipped pair is
swapped exactly once).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .core import (
    CO_WINNER,
    UNIQUE_WINNER,
    Election,
    Ranking,
    VotingRule,
    winners_of_rankings,
)
from .errors import AdmissibilityError, DomainError

PairCosts = Mapping[tuple[int, int], Fraction]

# Above this many candidates, re-baselining a dense cost table to its
# cheapest pair is refused (it would materialize m^2 overrides).
_MATERIALIZE_LIMIT = 192


@dataclass(frozen=True)
class Swap:
    """An adjacent transposition request: swap ``pair[0]`` with ``pair[1]``."""

    vote: int
    pair: tuple[int, int]

    def __post_init__(self):
        if self.pair[0] == self.pair[1]:
            raise DomainError("a swap needs two distinct candidates")
        if self.vote < 0:
            raise DomainError("vote index must be non-negative")


class SwapCostFunction:
    """Per-expanded-vote swap prices: a default plus sparse pair overrides."""

    __slots__ = ("_defaults", "_overrides")

    def __init__(self, defaults: Iterable[Fraction], overrides: Iterable[PairCosts]):
        self._defaults = tuple(Fraction(d) for d in defaults)
        tables = list(overrides)
        if len(self._defaults) != len(tables):
            raise DomainError("defaults and overrides must align per vote")
        for d in self._defaults:
            if d < 0:
                raise DomainError("swap costs must be non-negative")
        canonical = []
        for default, table in zip(self._defaults, tables):
            kept = {}
            for (a, b), value in table.items():
                value = Fraction(value)
                if a == b:
                    raise DomainError("cost override needs two distinct candidates")
                if value < 0:
                    raise DomainError("swap costs must be non-negative")
                if value != default:
                    kept[(a, b)] = value
            canonical.append(kept)
        self._overrides = tuple(canonical)

    @classmethod
    def unit(cls, n_votes: int) -> "SwapCostFunction":
        return cls.uniform(n_votes, Fraction(1))

    @classmethod
    def uniform(cls, n_votes: int, value) -> "SwapCostFunction":
        value = Fraction(value)
        return cls([value] * n_votes, [{}] * n_votes)

    @property
    def n_votes(self) -> int:
        return len(self._defaults)

    def default(self, vote: int) -> Fraction:
        return self._defaults[vote]

    def overrides(self, vote: int) -> PairCosts:
        return self._overrides[vote]

    def cost(self, vote: int, a: int, b: int) -> Fraction:
        return self._overrides[vote].get((a, b), self._defaults[vote])

    def iter_values(self) -> Iterator[Fraction]:
        for default, table in zip(self._defaults, self._overrides):
            yield default
            yield from table.values()

    def min_value(self) -> Fraction:
        return min(self.iter_values())

    def max_value(self) -> Fraction:
        return max(self.iter_values())

    def is_uniform(self, value) -> bool:
        value = Fraction(value)
        return all(
            d == value and all(c == value for c in table.values())
            for d, table in zip(self._defaults, self._overrides)
        )

    def lowered(self, vote: int, m: int) -> tuple[Fraction, dict[tuple[int, int], Fraction]]:
        """Rewrite vote's table as (base, deltas) with base = cheapest pair price.

        All deltas are >= 0, which downstream enumerations rely on for
        monotone pruning. If the default is not already the minimum the
        full pair table is materialized, so this is refused for large m.
        """
        default = self._defaults[vote]
        table = self._overrides[vote]
        if not table:
            return default, {}
        low = min(default, min(table.values()))
        if low == default:
            return default, {p: c - default for p, c in table.items() if c != default}
        if m > _MATERIALIZE_LIMIT:
            raise DomainError(
                "cost table default is not minimal; refusing to materialize "
                f"{m}x{m} pair costs"
            )
        deltas = {}
        for a in range(m):
            for b in range(m):
                if a == b:
                    continue
                c = table.get((a, b), default)
                if c != low:
                    deltas[(a, b)] = c - low
        return low, deltas

    def __eq__(self, other):
        if not isinstance(other, SwapCostFunction):
            return NotImplemented
        return self._defaults == other._defaults and self._overrides == other._overrides

    def __repr__(self):
        return f"SwapCostFunction(n_votes={self.n_votes})"


@dataclass(frozen=True)
class Bribery:
    """A bribery, canonically represented by per-expanded-vote target rankings."""

    targets: tuple[Ranking, ...]

    @classmethod
    def identity(cls, election: Election) -> "Bribery":
        return cls(tuple(election.expanded()))

    def replaced(self, vote: int, target: Ranking) -> "Bribery":
        targets = list(self.targets)
        targets[vote] = target
        return Bribery(tuple(targets))


@dataclass(frozen=True)
class BriberyInstance:
    """Election + rule + preferred candidate + prices + budget + winner mode."""

    election: Election
    rule: VotingRule
    preferred: int
    costs: SwapCostFunction
    budget: Fraction
    mode: str = CO_WINNER

    def __post_init__(self):
        object.__setattr__(self, "budget", Fraction(self.budget))
        self.rule.validate_for(self.election.m)
        if not 0 <= self.preferred < self.election.m:
            raise DomainError("preferred candidate not on the roster")
        if self.budget < 0:
            raise DomainError("budget must be non-negative")
        if self.mode not in (CO_WINNER, UNIQUE_WINNER):
            raise DomainError(f"unknown winner mode {self.mode!r}")
        if self.costs.n_votes != self.election.n_expanded:
            raise DomainError("cost function must cover every expanded vote")

    @property
    def unique_mode(self) -> bool:
        return self.mode == UNIQUE_WINNER


def apply_swaps(ranking: Ranking, swaps: Iterable[tuple[int, int]]) -> Ranking:
    """Apply a set of adjacent swaps in some valid sequential order.

    Raises AdmissibilityError when no order applies every requested swap.
    The result is order-independent for admissible sets.
    """
    order = list(ranking)
    pending = list(dict.fromkeys(tuple(p) for p in swaps))
    for a, b in pending:
        if a == b or a not in order or b not in order:
            raise DomainError(f"swap pair ({a}, {b}) invalid for this ranking")
    while pending:
        pos = {c: i for i, c in enumerate(order)}
        for idx, (a, b) in enumerate(pending):
            if pos[a] + 1 == pos[b]:
                order[pos[a]], order[pos[b]] = order[pos[b]], order[pos[a]]
                pending.pop(idx)
                break
        else:
            raise AdmissibilityError(f"swaps {pending} are not admissible")
    return tuple(order)


def inverted_pairs(ranking: Ranking, target: Ranking) -> Iterator[tuple[int, int]]:
    """Pairs whose order flips, oriented as (earlier-in-ranking, later)."""
    pos = {c: i for i, c in enumerate(target)}
    m = len(ranking)
    for i in range(m):
        for j in range(i + 1, m):
            if pos[ranking[i]] > pos[ranking[j]]:
                yield ranking[i], ranking[j]


def bribery_swaps(instance: BriberyInstance, bribery: Bribery) -> list[Swap]:
    """A minimum-cost admissible swap set realizing the bribery.

    Swapping each flipped pair exactly once suffices; the returned set is
    admissible per vote and prices out to the bribery's total cost.
    """
    swaps = []
    for idx, (src, dst) in enumerate(zip(instance.election.expanded(), bribery.targets)):
        for pair in inverted_pairs(src, dst):
            swaps.append(Swap(idx, pair))
    return swaps


def _count_inversions(seq: list[int]) -> int:
    """Number of out-of-order pairs, by merge counting."""
    if len(seq) < 2:
        return 0
    work = list(seq)
    buf = [0] * len(work)
    total = 0
    width = 1
    n = len(work)
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if work[i] <= work[j]:
                    buf[k] = work[i]
                    i += 1
                else:
                    buf[k] = work[j]
                    j += 1
                    total += mid - i
                k += 1
            buf[k:hi] = work[i:mid] if i < mid else work[j:hi]
            work[lo:hi] = buf[lo:hi]
        width *= 2
    return total


def transform_cost(
    ranking: Ranking,
    target: Ranking,
    costs: SwapCostFunction,
    vote: int,
) -> Fraction:
    """Minimum total swap cost converting ``ranking`` into ``target``."""
    if ranking == target:
        return Fraction(0)
    if frozenset(ranking) != frozenset(target):
        raise DomainError("rankings must permute the same candidates")
    pos_target = {c: i for i, c in enumerate(target)}
    inversions = _count_inversions([pos_target[c] for c in ranking])
    default = costs.default(vote)
    total = default * inversions
    table = costs.overrides(vote)
    if table:
        pos_src = {c: i for i, c in enumerate(ranking)}
        for (a, b), value in table.items():
            if value == default:
                continue
            pa, pb = pos_src.get(a), pos_src.get(b)
            if pa is None or pb is None:
                continue
            if pa < pb and pos_target[a] > pos_target[b]:
                total += value - default
    return total


def move_to_top_target(ranking: Ranking, chosen: frozenset[int]) -> Ranking:
    """Cheapest ranking whose first |chosen| positions hold ``chosen``.

    Keeps the relative order of ``chosen`` and of the remaining candidates,
    which flips exactly the forced crossing pairs and nothing else.
    """
    head = tuple(c for c in ranking if c in chosen)
    tail = tuple(c for c in ranking if c not in chosen)
    return head + tail


def move_to_top_cost(
    ranking: Ranking,
    chosen: Iterable[int],
    k: int,
    costs: SwapCostFunction,
    vote: int,
) -> Fraction:
    """Minimum cost of any bribery putting exactly ``chosen`` in the top k."""
    chosen = frozenset(chosen)
    if len(chosen) != k:
        raise DomainError(f"chosen set must have exactly k={k} candidates")
    total = Fraction(0)
    seen_outside: list[int] = []
    for c in ranking:
        if c in chosen:
            for a in seen_outside:
                total += costs.cost(vote, a, c)
        else:
            seen_outside.append(c)
    return total


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of checking a bribery against an instance."""

    total_cost: Fraction
    winners: frozenset[int]
    preferred_wins: bool
    within_budget: bool

    @property
    def is_solution(self) -> bool:
        return self.preferred_wins and self.within_budget


def bribed_election(instance: BriberyInstance, bribery: Bribery) -> Election:
    """The election obtained by replacing each expanded vote with its target."""
    from .core import Vote

    return Election(
        instance.election.candidates,
        tuple(Vote(t) for t in bribery.targets),
    )


def verify_bribery(instance: BriberyInstance, bribery: Bribery) -> VerifyReport:
    """Price a bribery and evaluate the winner condition on the result."""
    originals = instance.election.expanded_list()
    if len(bribery.targets) != len(originals):
        raise DomainError(
            f"bribery covers {len(bribery.targets)} votes, expected {len(originals)}"
        )
    roster = frozenset(range(instance.election.m))
    total = Fraction(0)
    for idx, (src, dst) in enumerate(zip(originals, bribery.targets)):
        if src == dst:
            continue
        if len(dst) != instance.election.m or frozenset(dst) != roster:
            raise DomainError(f"target for vote {idx} is not a permutation of the roster")
        total += transform_cost(src, dst, instance.costs, idx)
    winning = winners_of_rankings(bribery.targets, instance.election.m, instance.rule)
    if instance.unique_mode:
        p_wins = winning == frozenset({instance.preferred})
    else:
        p_wins = instance.preferred in winning
    return VerifyReport(
        total_cost=total,
        winners=winning,
        preferred_wins=p_wins,
        within_budget=total <= instance.budget,
    )
