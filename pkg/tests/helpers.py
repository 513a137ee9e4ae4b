"""Shared graph constructors and independent oracles for the test suite.

The oracles here deliberately avoid the library's own algorithms: betweenness
is checked by enumerating all shortest paths, walk-step distributions by
recursive trajectory enumeration with exact probabilities.
"""

from __future__ import annotations

import math
from collections import defaultdict
from itertools import combinations, permutations

from netbrain import Graph, WalkPolicy, build_graph, is_connected


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    """Star on n nodes with node 0 as the center."""
    return build_graph(n, [(0, i) for i in range(1, n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def harmonic(n: int) -> float:
    return sum(1.0 / i for i in range(1, n + 1))


def average_clustering(g: Graph) -> float:
    total = 0.0
    for v in range(g.n):
        nbrs = g.adj[v]
        k = len(nbrs)
        if k < 2:
            continue
        links = sum(
            1 for i in range(k) for j in range(i + 1, k) if g.has_edge(nbrs[i], nbrs[j])
        )
        total += 2.0 * links / (k * (k - 1))
    return total / g.n


# --- betweenness oracle -------------------------------------------------------


def _all_shortest_paths(g: Graph, s: int, t: int) -> list[list[int]]:
    """Every shortest s-t path, found by exhaustive simple-path enumeration."""
    best: list[list[int]] = []
    best_len = [math.inf]

    def dfs(path: list[int], seen: set[int]) -> None:
        if len(path) - 1 > best_len[0]:
            return
        cur = path[-1]
        if cur == t:
            length = len(path) - 1
            if length < best_len[0]:
                best_len[0] = length
                best.clear()
            if length == best_len[0]:
                best.append(list(path))
            return
        for w in g.adj[cur]:
            if w not in seen:
                seen.add(w)
                path.append(w)
                dfs(path, seen)
                path.pop()
                seen.remove(w)

    dfs([s], {s})
    return best


def brute_force_betweenness(g: Graph) -> list[float]:
    """Unordered pairs, endpoints excluded; intended for graphs of <= 8 nodes."""
    scores = [0.0] * g.n
    for s in range(g.n):
        for t in range(s + 1, g.n):
            paths = _all_shortest_paths(g, s, t)
            if not paths:
                continue
            weight = 1.0 / len(paths)
            for p in paths:
                for mid in p[1:-1]:
                    scores[mid] += weight
    return scores


# --- exact walk-step distribution ----------------------------------------------


def exact_first_walk_distribution(
    g: Graph, brain: int, policy: WalkPolicy, step_cap: int | None = None
) -> dict[int, float]:
    """Exact probability of each possible first-walk step count.

    Mirrors the walk semantics by direct recursion over trajectories: arrival
    makes a node known, departure reports (and primes) its neighborhood, the
    walk stops at dead ends, the step cap, or full brain coverage.
    """
    n = g.n
    standard = policy is WalkPolicy.STANDARD
    look_ahead = policy is WalkPolicy.LOOK_AHEAD
    dist: dict[int, float] = defaultdict(float)

    def recurse(
        cur: int,
        departed: frozenset[int],
        primed: frozenset[int],
        known: frozenset[int],
        steps: int,
        prob: float,
    ) -> None:
        if len(known) == n:
            dist[steps] += prob
            return
        if step_cap is not None and steps >= step_cap:
            dist[steps] += prob
            return
        if look_ahead:
            eligible = [w for w in g.adj[cur] if w not in departed and w not in primed]
        else:
            eligible = [w for w in g.adj[cur] if w not in departed]
        if not eligible:
            dist[steps] += prob
            return
        share = prob / len(eligible)
        for nxt in eligible:
            departed2 = departed | {cur}
            known2 = set(known)
            primed2 = set(primed)
            if not standard:
                known2.update(g.adj[cur])
                primed2.update(w for w in g.adj[cur] if w not in departed2)
            known2.add(nxt)
            steps2 = steps + (1 if standard else len(g.adj[nxt]))
            recurse(nxt, departed2, frozenset(primed2), frozenset(known2), steps2, share)

    steps0 = 0 if standard else len(g.adj[brain])
    recurse(brain, frozenset(), frozenset(), frozenset({brain}), steps0, 1.0)
    return dict(dist)


# --- small-graph enumeration up to isomorphism ----------------------------------


def connected_graphs_up_to_iso(n: int) -> list[Graph]:
    """All connected graphs on exactly n nodes, one per isomorphism class."""
    if n == 1:
        return [build_graph(1, [])]
    pairs = list(combinations(range(n), 2))
    npairs = len(pairs)
    pair_index = {p: i for i, p in enumerate(pairs)}

    # Per-permutation remap tables, split into low/high bit halves so each
    # edge-mask remap is two lookups and an OR.
    lo_bits = min(8, npairs)
    hi_bits = npairs - lo_bits
    perm_tables = []
    for perm in permutations(range(n)):
        moved = []
        for u, v in pairs:
            a, b = perm[u], perm[v]
            if a > b:
                a, b = b, a
            moved.append(1 << pair_index[(a, b)])
        lo = [0] * (1 << lo_bits)
        for v in range(1 << lo_bits):
            acc = 0
            rest = v
            while rest:
                b = rest & -rest
                acc |= moved[b.bit_length() - 1]
                rest ^= b
            lo[v] = acc
        hi = [0] * (1 << hi_bits)
        for v in range(1 << hi_bits):
            acc = 0
            rest = v
            while rest:
                b = rest & -rest
                acc |= moved[lo_bits + b.bit_length() - 1]
                rest ^= b
            hi[v] = acc
        perm_tables.append((lo, hi))
    lo_mask = (1 << lo_bits) - 1

    def is_connected_mask(mask: int) -> bool:
        adj = [0] * n
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            rest = frontier
            while rest:
                b = rest & -rest
                nxt |= adj[b.bit_length() - 1]
                rest ^= b
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << n) - 1

    out = []
    for mask in range(1 << npairs):
        if not is_connected_mask(mask):
            continue
        canonical = True
        for lo, hi in perm_tables:
            if lo[mask & lo_mask] | hi[mask >> lo_bits] < mask:
                canonical = False
                break
        if canonical:
            out.append(build_graph(n, [pairs[i] for i in range(npairs) if mask >> i & 1]))
    return out


def random_connected_graph(n: int, rng) -> Graph:
    """A random connected graph on n nodes (rejection sampling on G(n, p))."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    while True:
        g = build_graph(n, [e for e in pairs if rng.random() < 0.5])
        if is_connected(g):
            return g
