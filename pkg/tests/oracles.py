"""Independent reference implementations used only to check the package.

Nothing here imports the production linear algebra: determinants are
cofactor expansions, ranks are Fraction Gaussian elimination, and the
total-unimodularity oracle enumerates submatrices with its own loops.
Isomorphism-class counting is done by brute-force canonical forms over
all vertex permutations.
"""

from fractions import Fraction
from itertools import combinations, permutations


def cofactor_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise ValueError("not square")
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[r[c] for c in range(n) if c != j] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def rational_rank(rows):
    work = [[Fraction(x) for x in r] for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        pivrow = work[rank]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col] / pivrow[col]
                work[i] = [a - f * b for a, b in zip(work[i], pivrow)]
        rank += 1
    return rank


def tu_by_definition(rows):
    """All-minors total unimodularity straight from the definition."""
    if not rows:
        return True
    nr, nc = len(rows), len(rows[0])
    for k in range(1, min(nr, nc) + 1):
        for ridx in combinations(range(nr), k):
            for cidx in combinations(range(nc), k):
                sub = [[rows[i][j] for j in cidx] for i in ridx]
                if abs(cofactor_det(sub)) > 1:
                    return False
    return True


def canonical_pair_graph(pairs, nverts):
    """Minimum over all vertex permutations of the sorted pair tuple."""
    best = None
    for perm in permutations(range(nverts)):
        relabeled = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for (u, v) in pairs))
        if best is None or relabeled < best:
            best = relabeled
    return best


def brute_force_multigraph_classes(nverts, nedges, loops=False, connected=None, rank=None):
    """Canonical forms of labeled multigraphs, filtered; exact but tiny-only."""
    slots = []
    for u in range(nverts):
        start = u if loops else u + 1
        for v in range(start, nverts):
            slots.append((u, v))

    classes = set()

    def rec(idx, remaining, acc):
        if remaining == 0:
            consider(tuple(acc))
            return
        if idx == len(slots):
            return
        for count in range(remaining + 1):
            rec(idx + 1, remaining - count, acc + [slots[idx]] * count)

    def consider(pairs):
        touched = {u for (u, v) in pairs} | {v for (u, v) in pairs}
        if len(touched) != nverts:
            return  # isolated vertices excluded
        if connected is not None or rank is not None:
            parent = list(range(nverts))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for (u, v) in pairs:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
            ncomp = len({find(x) for x in range(nverts)})
            if connected is not None and (ncomp == 1) != connected:
                return
            if rank is not None and nverts - ncomp != rank:
                return
        classes.add(canonical_pair_graph(pairs, nverts))

    rec(0, nedges, [])
    return classes
