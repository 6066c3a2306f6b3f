"""Independent brute-force oracles used by the test suite.

These deliberately avoid the library's algorithms: the signed-rank oracle
enumerates every sign assignment directly, the DBSCAN oracle builds the
full reachability closure, and the boundary oracle scans every possible
single split. They are slow and obviously correct, which is the point.
"""

from __future__ import annotations

import itertools
import math


def average_ranks(values):
    """1-based ranks with ties averaged, computed by sort-and-group."""
    indexed = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    pos = 0
    while pos < len(indexed):
        end = pos
        while end + 1 < len(indexed) and values[indexed[end + 1]] == values[indexed[pos]]:
            end += 1
        mean_rank = (pos + 1 + end + 1) / 2
        for k in range(pos, end + 1):
            ranks[indexed[k]] = mean_rank
        pos = end + 1
    return ranks


def wilcoxon_exact_p_oracle(pairs):
    """Exact two-sided p for the min signed-rank sum, by enumerating all
    2^n sign assignments of the |difference| ranks."""
    diffs = [a - b for a, b in pairs if a != b]
    if not diffs:
        raise ValueError("degenerate: all differences zero")
    ranks = average_ranks([abs(d) for d in diffs])
    w_plus = sum(r for r, d in zip(ranks, diffs) if d > 0)
    w_minus = sum(r for r, d in zip(ranks, diffs) if d < 0)
    observed = min(w_plus, w_minus)

    total = sum(ranks)
    hits = 0
    n_assignments = 0
    for signs in itertools.product((1, -1), repeat=len(ranks)):
        plus = sum(r for r, s in zip(ranks, signs) if s > 0)
        stat = min(plus, total - plus)
        if stat <= observed + 1e-12:
            hits += 1
        n_assignments += 1
    return hits / n_assignments


def dbscan_oracle(points, eps, min_pts):
    """DBSCAN-by-definition: eps-neighborhood graph, core points, and the
    transitive closure of density reachability.

    Clusters are numbered by their smallest core index; border points join
    the lowest-numbered candidate cluster; everything else is -1.
    """
    n = len(points)
    def dist(i, j):
        dot = sum(a * b for a, b in zip(points[i], points[j]))
        return 1.0 - dot

    neighbors = [[j for j in range(n) if dist(i, j) <= eps] for i in range(n)]
    core = [len(neighbors[i]) >= min_pts for i in range(n)]

    # Reachability closure over core-core edges.
    reach = [[i == j for j in range(n)] for i in range(n)]
    for i in range(n):
        if core[i]:
            for j in neighbors[i]:
                if core[j]:
                    reach[i][j] = True
    for k in range(n):
        if not core[k]:
            continue
        for i in range(n):
            if core[i] and reach[i][k]:
                row_i, row_k = reach[i], reach[k]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True

    labels = [-1] * n
    cluster_id = 0
    for i in range(n):
        if core[i] and labels[i] == -1:
            for j in range(n):
                if core[j] and reach[i][j]:
                    labels[j] = cluster_id
            cluster_id += 1
    for i in range(n):
        if labels[i] == -1 and not core[i]:
            candidates = [labels[j] for j in neighbors[i] if core[j]]
            if candidates:
                labels[i] = min(candidates)
    return labels


def partition_of(labels):
    """Canonical partition view: ({frozenset cluster members}, frozenset noise)."""
    clusters = {}
    noise = set()
    for i, lbl in enumerate(labels):
        if lbl == -1:
            noise.add(i)
        else:
            clusters.setdefault(lbl, set()).add(i)
    return frozenset(frozenset(m) for m in clusters.values()), frozenset(noise)


def best_single_boundary_oracle(line_texts, embed_fn):
    """The gap whose two sides are least similar, scanning every split."""
    best_gap, best_sim = None, math.inf
    for g in range(len(line_texts) - 1):
        left = embed_fn(" ".join(line_texts[: g + 1]))
        right = embed_fn(" ".join(line_texts[g + 1 :]))
        sim = sum(a * b for a, b in zip(left, right))
        if sim < best_sim:
            best_gap, best_sim = g, sim
    return best_gap
