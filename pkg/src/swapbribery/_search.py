"""Pure-Python search kernel: cheapest winning assignment of vote options.

This is the hot inner loop of the brute-force oracles. Each vote offers a
list of options (candidate subsets earning one point each); the search
picks one option per vote minimizing total cost subject to the preferred
candidate winning. ``swapbribery._kernels`` is a compiled twin of this
module with identical semantics; one of the two is selected at import
time by :mod:`swapbribery.oracle`.

All costs are non-negative scaled integers. Options must be sorted by
ascending cost per vote; ties keep a stable, deterministic order so both
backends return identical results.
"""

from __future__ import annotations

BACKEND_NAME = "pure"


def best_assignment(
    offsets,
    gains,
    width: int,
    costs,
    m: int,
    preferred: int,
    unique: bool,
    budget: int,
):
    """Minimum-cost choice of one option per vote under the winner condition.

    ``offsets[v]:offsets[v+1]`` delimits vote ``v``'s options; option ``i``
    gives one point to each candidate in ``gains[i*width:(i+1)*width]``.
    ``budget`` of -1 means unbounded; otherwise only assignments of total
    cost <= budget qualify. Returns ``(cost, choices)`` or ``None``.
    """
    n_votes = len(offsets) - 1
    suffix_min = [0] * (n_votes + 1)
    for v in range(n_votes - 1, -1, -1):
        lo, hi = offsets[v], offsets[v + 1]
        if lo == hi:
            return None
        suffix_min[v] = suffix_min[v + 1] + costs[lo]

    no_best = budget + 1 if budget >= 0 else None
    best = no_best
    best_choice = None
    scores = [0] * m
    choice = [0] * n_votes

    def descend(v: int, acc: int):
        nonlocal best, best_choice
        if v == n_votes:
            sp = scores[preferred]
            if unique:
                ok = all(scores[c] < sp for c in range(m) if c != preferred)
            else:
                ok = all(scores[c] <= sp for c in range(m) if c != preferred)
            if ok and (best is None or acc < best):
                best = acc
                best_choice = choice.copy()
            return
        rest = suffix_min[v + 1]
        for idx in range(offsets[v], offsets[v + 1]):
            lower = acc + costs[idx] + rest
            if best is not None and lower >= best:
                break
            choice[v] = idx
            base = idx * width
            for t in range(base, base + width):
                scores[gains[t]] += 1
            descend(v + 1, acc + costs[idx])
            for t in range(base, base + width):
                scores[gains[t]] -= 1

    descend(0, 0)
    if best_choice is None:
        return None
    return int(best), best_choice
