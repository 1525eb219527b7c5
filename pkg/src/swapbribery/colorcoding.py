"""Color-coding search for k-approval, driven by election patterns.

A vote pattern is a k-subset of the integers [1..nk]; an election pattern
assigns one to each vote, abstracting which (colored) candidates occupy
the one-positions after a bribery. Patterns where 1 (the preferred
candidate's reserved color) occurs at least as often as any other element
are the ones a solution can produce. For each such pattern, candidates
are colored and each vote takes the cheapest candidate set matching its
pattern colors; exhaustive coloring enumeration makes the search complete
at desk scale, random coloring gives the one-sided fast variant.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Mapping

from .core import K_APPROVAL, Ranking
from .errors import DomainError, ResourceCapError
from .swaps import (
    Bribery,
    BriberyInstance,
    move_to_top_cost,
    move_to_top_target,
    verify_bribery,
)

VotePattern = tuple[int, ...]
ElectionPattern = tuple[VotePattern, ...]


@dataclass(frozen=True)
class ColorCaps:
    pattern_size: int = 12  # bound on n*k
    colorings: int = 10**6  # bound on |A|^(m-1) per pattern


DEFAULT_CAPS = ColorCaps()


def vote_patterns(nk: int, k: int) -> Iterator[VotePattern]:
    """All k-subsets of [1..nk], ascending."""
    return combinations(range(1, nk + 1), k)


def successful_patterns(n: int, k: int, strict: bool = False, caps: ColorCaps = DEFAULT_CAPS) -> Iterator[ElectionPattern]:
    """Election patterns where element 1 occurs at least as often as any other.

    With ``strict`` (unique-winner search), 1 must occur strictly more
    often than every other element.
    """
    nk = n * k
    if nk > caps.pattern_size:
        raise ResourceCapError(f"n*k = {nk} exceeds pattern cap {caps.pattern_size}")
    for pattern in product(vote_patterns(nk, k), repeat=n):
        counts = Counter()
        for part in pattern:
            counts.update(part)
        ones = counts.get(1, 0)
        rest = [c for e, c in counts.items() if e != 1]
        if strict:
            if all(c < ones for c in rest):
                yield pattern
        else:
            if all(c <= ones for c in rest):
                yield pattern


def _matching_sets(
    m: int,
    k: int,
    coloring: Mapping[int, int | None],
    wanted: frozenset[int],
) -> Iterator[tuple[int, ...]]:
    """k-subsets of candidates whose colors are distinct and equal ``wanted``."""
    for cands in combinations(range(m), k):
        colors = {coloring.get(c) for c in cands}
        if None not in colors and len(colors) == k and colors == wanted:
            yield cands


def cheapest_for_pattern(
    instance: BriberyInstance,
    pattern: ElectionPattern,
    coloring: Mapping[int, int | None],
) -> tuple[Bribery, Fraction] | None:
    """Cheapest bribery realizing the pattern under a fixed coloring.

    Per vote, minimizes the move-to-top cost over candidate sets whose
    colors match the vote pattern; None when some vote has no match.
    """
    if instance.rule.kind != K_APPROVAL:
        raise DomainError("color coding needs a k-approval instance")
    k = instance.rule.k
    rankings = instance.election.expanded_list()
    if len(pattern) != len(rankings):
        raise DomainError("pattern length must equal the number of expanded votes")
    if coloring.get(instance.preferred) != 1:
        raise DomainError("the preferred candidate must carry color 1")

    targets: list[Ranking] = []
    total = Fraction(0)
    for idx, ranking in enumerate(rankings):
        wanted = frozenset(pattern[idx])
        best = None
        for cands in _matching_sets(instance.election.m, k, coloring, wanted):
            cost = move_to_top_cost(ranking, cands, k, instance.costs, idx)
            if best is None or cost < best[1]:
                best = (cands, cost)
        if best is None:
            return None
        targets.append(move_to_top_target(ranking, frozenset(best[0])))
        total += best[1]
    return Bribery(tuple(targets)), total


@dataclass(frozen=True)
class ColorCodingResult:
    decision: bool
    witness: Bribery | None
    cost: Fraction | None


def _others(instance: BriberyInstance) -> list[int]:
    return [c for c in range(instance.election.m) if c != instance.preferred]


def _subset_costs(instance: BriberyInstance) -> list[dict[tuple[int, ...], Fraction]]:
    """Per expanded vote, the move-to-top cost of every k-subset."""
    k = instance.rule.k
    m = instance.election.m
    tables = []
    for idx, ranking in enumerate(instance.election.expanded_list()):
        tables.append(
            {
                cands: move_to_top_cost(ranking, cands, k, instance.costs, idx)
                for cands in combinations(range(m), k)
            }
        )
    return tables


def _try_coloring(
    instance: BriberyInstance,
    rankings: list[Ranking],
    patterns: list[ElectionPattern],
    coloring: dict[int, int | None],
    costs: list[dict[tuple[int, ...], Fraction]],
) -> tuple[Bribery, Fraction] | None:
    """Evaluate one coloring against many patterns sharing a color set."""
    k = instance.rule.k
    per_vote: list[dict[frozenset[int], tuple[tuple[int, ...], Fraction]]] = []
    for table in costs:
        sig_best: dict[frozenset[int], tuple[tuple[int, ...], Fraction]] = {}
        for cands, cost in table.items():
            colors = {coloring.get(c) for c in cands}
            if None in colors or len(colors) != k:
                continue
            sig = frozenset(colors)
            held = sig_best.get(sig)
            if held is None or cost < held[1]:
                sig_best[sig] = (cands, cost)
        per_vote.append(sig_best)

    for pattern in patterns:
        total = Fraction(0)
        picks = []
        for idx, part in enumerate(pattern):
            hit = per_vote[idx].get(frozenset(part))
            if hit is None:
                picks = None
                break
            picks.append(hit[0])
            total += hit[1]
        if picks is None or total > instance.budget:
            continue
        targets = tuple(
            move_to_top_target(r, frozenset(c)) for r, c in zip(rankings, picks)
        )
        witness = Bribery(targets)
        if verify_bribery(instance, witness).is_solution:
            return witness, total
    return None


def solve_color_coding(
    instance: BriberyInstance,
    mode: str = "exhaustive",
    trials: int | None = None,
    seed: int = 0,
    caps: ColorCaps = DEFAULT_CAPS,
) -> ColorCodingResult:
    """Pattern-driven search for a within-budget bribery.

    ``exhaustive`` enumerates every coloring with colors drawn from each
    pattern's color set and is complete: the decision matches ground
    truth. ``random`` samples ``trials`` colorings per pattern (default
    (nk-1)^(nk-1)) and is one-sided: any returned bribery is verified, a
    miss proves nothing.
    """
    if instance.rule.kind != K_APPROVAL:
        raise DomainError("color coding needs a k-approval instance")
    if mode not in ("exhaustive", "random"):
        raise DomainError(f"unknown mode {mode!r}")
    k = instance.rule.k
    n = instance.election.n_expanded
    m = instance.election.m
    nk = n * k
    if nk > caps.pattern_size:
        raise ResourceCapError(f"n*k = {nk} exceeds pattern cap {caps.pattern_size}")

    others = _others(instance)
    rankings = instance.election.expanded_list()
    costs = _subset_costs(instance)
    patterns = list(successful_patterns(n, k, strict=instance.unique_mode, caps=caps))

    if mode == "random":
        rng = random.Random(seed)
        if trials is None:
            trials = max(1, (nk - 1) ** (nk - 1))
        for pattern in patterns:
            palette = sorted({e for part in pattern for e in part if e != 1})
            rounds = trials if palette else 1
            for _ in range(rounds):
                coloring: dict[int, int | None] = {instance.preferred: 1}
                for c in others:
                    coloring[c] = rng.choice(palette) if palette else None
                hit = _try_coloring(instance, rankings, [pattern], coloring, costs)
                if hit is not None:
                    return ColorCodingResult(True, hit[0], hit[1])
        return ColorCodingResult(False, None, None)

    by_palette: dict[tuple[int, ...], list[ElectionPattern]] = {}
    for pattern in patterns:
        palette = tuple(sorted({e for part in pattern for e in part if e != 1}))
        by_palette.setdefault(palette, []).append(pattern)

    for palette, group in sorted(by_palette.items()):
        size = len(palette) ** len(others) if palette else 1
        if size > caps.colorings:
            raise ResourceCapError(
                f"{len(palette)}^{len(others)} colorings exceed cap {caps.colorings}"
            )
        assignments = product(palette, repeat=len(others)) if palette else iter([()])
        for values in assignments:
            coloring = {instance.preferred: 1}
            for c, value in zip(others, values):
                coloring[c] = value
            if not values:
                for c in others:
                    coloring[c] = None
            hit = _try_coloring(instance, rankings, group, coloring, costs)
            if hit is not None:
                return ColorCodingResult(True, hit[0], hit[1])
    return ColorCodingResult(False, None, None)
