"""Compiled search kernel: cheapest winning assignment of vote options.

Twin of ``swapbribery._search`` (see there for the contract); both must
return identical results on identical inputs. Costs are non-negative
scaled integers small enough that any assignment total fits in 63 bits;
the caller checks this before dispatching here.
"""

from libc.stdlib cimport free, malloc

BACKEND_NAME = "compiled"

cdef long long NO_BEST = -1


cdef struct SearchState:
    long long *costs
    int *gains
    int *offsets
    long long *suffix_min
    int *scores
    int *choice
    int *best_choice
    long long best
    int width
    int m
    int preferred
    int unique
    int n_votes
    int found


cdef void _descend(SearchState *st, int v, long long acc) noexcept:
    cdef int idx, t, base, c, ok
    cdef long long sp, lower
    if v == st.n_votes:
        sp = st.scores[st.preferred]
        ok = 1
        for c in range(st.m):
            if c == st.preferred:
                continue
            if st.unique:
                if st.scores[c] >= sp:
                    ok = 0
                    break
            else:
                if st.scores[c] > sp:
                    ok = 0
                    break
        if ok and (st.best == NO_BEST or acc < st.best):
            st.best = acc
            st.found = 1
            for c in range(st.n_votes):
                st.best_choice[c] = st.choice[c]
        return
    for idx in range(st.offsets[v], st.offsets[v + 1]):
        lower = acc + st.costs[idx] + st.suffix_min[v + 1]
        if st.best != NO_BEST and lower >= st.best:
            break
        st.choice[v] = idx
        base = idx * st.width
        for t in range(base, base + st.width):
            st.scores[st.gains[t]] += 1
        _descend(st, v + 1, acc + st.costs[idx])
        for t in range(base, base + st.width):
            st.scores[st.gains[t]] -= 1


def best_assignment(offsets, gains, int width, costs,
                    int m, int preferred, bint unique, long long budget):
    """See ``swapbribery._search.best_assignment``."""
    cdef int n_votes = len(offsets) - 1
    cdef int n_options = len(costs)
    cdef int i, v
    cdef SearchState st

    st.width = width
    st.m = m
    st.preferred = preferred
    st.unique = 1 if unique else 0
    st.n_votes = n_votes
    st.found = 0
    st.best = budget + 1 if budget >= 0 else NO_BEST

    st.costs = <long long *> malloc(max(1, n_options) * sizeof(long long))
    st.gains = <int *> malloc(max(1, n_options * width) * sizeof(int))
    st.offsets = <int *> malloc((n_votes + 1) * sizeof(int))
    st.suffix_min = <long long *> malloc((n_votes + 1) * sizeof(long long))
    st.scores = <int *> malloc(max(1, m) * sizeof(int))
    st.choice = <int *> malloc(max(1, n_votes) * sizeof(int))
    st.best_choice = <int *> malloc(max(1, n_votes) * sizeof(int))
    if (st.costs == NULL or st.gains == NULL or st.offsets == NULL or
            st.suffix_min == NULL or st.scores == NULL or
            st.choice == NULL or st.best_choice == NULL):
        _release(&st)
        raise MemoryError()

    try:
        for i in range(n_options):
            st.costs[i] = costs[i]
        for i in range(n_options * width):
            st.gains[i] = gains[i]
        for i in range(n_votes + 1):
            st.offsets[i] = offsets[i]
        for i in range(m):
            st.scores[i] = 0

        st.suffix_min[n_votes] = 0
        for v in range(n_votes - 1, -1, -1):
            if st.offsets[v] == st.offsets[v + 1]:
                return None
            st.suffix_min[v] = st.suffix_min[v + 1] + st.costs[st.offsets[v]]

        _descend(&st, 0, 0)

        if not st.found:
            return None
        return int(st.best), [st.best_choice[v] for v in range(n_votes)]
    finally:
        _release(&st)


cdef void _release(SearchState *st) noexcept:
    free(st.costs)
    free(st.gains)
    free(st.offsets)
    free(st.suffix_min)
    free(st.scores)
    free(st.choice)
    free(st.best_choice)
