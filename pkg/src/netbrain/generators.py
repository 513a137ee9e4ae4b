"""Seeded network-model constructors, all parameterized by node count and target mean degree.

Every generator is a pure function of its parameters and seed: the same seed
always yields a bit-identical edge set. The combinatorial models (ER, BA, CM,
WS, SBM) draw from ``random.Random``; the geometric Waxman model uses a numpy
generator for the bulk distance work.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, replace
from typing import Iterator, Sequence

import numpy as np

from .errors import ParameterError
from .graph import Graph, build_graph, build_graph_reported, largest_connected_component

logger = logging.getLogger(__name__)

MODELS = ("er", "ba", "cm", "ws", "waxman", "sbm")


@dataclass(frozen=True)
class GeneratorSpec:
    """Declarative description of one network realization.

    ``k_avg`` is the target mean degree. Model-specific fields are ignored by
    models that do not use them: ``p_rewire`` (ws), ``mu`` and ``blocks``
    (sbm), ``alpha`` (waxman), ``degree_sequence`` (cm, replaces n/k_avg).
    """

    model: str
    n: int = 0
    k_avg: float = 0.0
    seed: int = 0
    p_rewire: float = 0.03
    mu: float = 0.01
    blocks: int = 10
    alpha: float = 0.5
    degree_sequence: tuple[int, ...] | None = None

    def validate(self) -> None:
        if self.model not in MODELS:
            raise ParameterError(f"unknown model {self.model!r}, expected one of {MODELS}")
        if self.model == "cm":
            if not self.degree_sequence:
                raise ParameterError("cm requires a degree_sequence")
            if sum(self.degree_sequence) % 2 != 0:
                raise ParameterError("cm degree sequence must have an even sum")
            return
        if self.n < 2:
            raise ParameterError(f"need n >= 2, got {self.n}")
        if not 0 < self.k_avg < self.n:
            raise ParameterError(f"need 0 < k_avg < n, got k_avg={self.k_avg}, n={self.n}")
        if self.model == "ws":
            k = int(self.k_avg)
            if k != self.k_avg or k % 2 != 0:
                raise ParameterError("ws requires an even integer k_avg")
            if not 0.0 <= self.p_rewire <= 1.0:
                raise ParameterError(f"p_rewire must be in [0, 1], got {self.p_rewire}")
        if self.model == "sbm":
            if self.blocks < 1 or self.blocks > self.n:
                raise ParameterError(f"need 1 <= blocks <= n, got blocks={self.blocks}")
            if not 0.0 <= self.mu <= 1.0:
                raise ParameterError(f"mu must be in [0, 1], got {self.mu}")
        if self.model == "waxman" and not 0.0 < self.alpha <= 1.0:
            raise ParameterError(f"alpha must be in (0, 1], got {self.alpha}")


@dataclass(frozen=True)
class RealizedStats:
    """What a generation run actually produced, after LCC reduction."""

    model: str
    requested_n: int
    requested_k_avg: float
    n: int
    m: int
    k_avg: float
    nodes_outside_lcc: int


@dataclass(frozen=True)
class GenerationResult:
    graph: Graph
    stats: RealizedStats


def _gnp_edges(nodes: Sequence[int], p: float, rng: random.Random) -> Iterator[tuple[int, int]]:
    """G(n, p) over the given nodes via geometric skipping, O(n + m)."""
    n = len(nodes)
    if p <= 0.0 or n < 2:
        return
    if p >= 1.0:
        for i in range(n):
            for j in range(i + 1, n):
                yield nodes[i], nodes[j]
        return
    lp = math.log1p(-p)
    v, w = 1, -1
    while v < n:
        lr = math.log1p(-rng.random())
        w = w + 1 + int(lr / lp)
        while w >= v and v < n:
            w -= v
            v += 1
        if v < n:
            yield nodes[v], nodes[w]


def _bernoulli_indices(total: int, p: float, rng: random.Random) -> Iterator[int]:
    """Indices of successes among `total` independent Bernoulli(p) trials."""
    if p <= 0.0 or total <= 0:
        return
    if p >= 1.0:
        yield from range(total)
        return
    lp = math.log1p(-p)
    i = -1
    while True:
        i += 1 + int(math.log1p(-rng.random()) / lp)
        if i >= total:
            return
        yield i


def gen_er(n: int, k_avg: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) with p = k_avg / (n - 1)."""
    if n < 2 or not 0 < k_avg < n:
        raise ParameterError(f"need 0 < k_avg < n and n >= 2, got k_avg={k_avg}, n={n}")
    p = min(1.0, k_avg / (n - 1))
    rng = random.Random(seed)
    return build_graph(n, _gnp_edges(range(n), p, rng))


def gen_ba(n: int, m_attach: int, seed: int) -> Graph:
    """Barabasi-Albert growth from a seed clique of m_attach + 1 nodes.

    Each arriving node attaches m_attach edges to distinct targets chosen
    with probability proportional to current degree, so the mean degree
    approaches 2 * m_attach.
    """
    if not 1 <= m_attach < n:
        raise ParameterError(f"need 1 <= m_attach < n, got m_attach={m_attach}, n={n}")
    rng = random.Random(seed)
    clique = m_attach + 1
    edges = [(i, j) for i in range(clique) for j in range(i + 1, clique)]
    # One entry per unit of degree; drives preferential attachment.
    repeated = [v for v in range(clique) for _ in range(m_attach)]
    for v in range(clique, n):
        targets: set[int] = set()
        while len(targets) < m_attach:
            targets.add(repeated[int(rng.random() * len(repeated))])
        for t in sorted(targets):
            edges.append((v, t))
            repeated.append(t)
        repeated.extend([v] * m_attach)
    return build_graph(n, edges)


def gen_cm(degree_sequence: Sequence[int], seed: int) -> Graph:
    """Erased configuration model: stub matching, then drop loops and multi-edges.

    The realized degree of each node is at most the requested one; the number
    of erased pairings is logged.
    """
    n = len(degree_sequence)
    total = sum(degree_sequence)
    if total % 2 != 0:
        raise ParameterError("degree sequence must have an even sum")
    if any(d < 0 for d in degree_sequence):
        raise ParameterError("degrees must be non-negative")
    if n and max(degree_sequence) >= n:
        raise ParameterError("max degree must be smaller than the sequence length")
    rng = random.Random(seed)
    stubs = [v for v, d in enumerate(degree_sequence) for _ in range(d)]
    rng.shuffle(stubs)
    pairs = [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]
    g, drops = build_graph_reported(n, pairs)
    if drops.self_loops or drops.duplicates:
        logger.info(
            "configuration model erased %d self-loops and %d duplicate pairings",
            drops.self_loops,
            drops.duplicates,
        )
    return g


def gen_ws(n: int, k_even: int, p_rewire: float, seed: int) -> Graph:
    """Watts-Strogatz ring lattice with per-edge rewiring.

    Each of the n * k_even / 2 lattice edges is independently rewired with
    probability p_rewire: the source endpoint is kept, the other endpoint is
    redrawn uniformly among non-self, non-duplicate targets. The edge count
    is preserved exactly.
    """
    if k_even % 2 != 0 or not 2 <= k_even < n:
        raise ParameterError(f"need even k with 2 <= k < n, got k={k_even}, n={n}")
    if not 0.0 <= p_rewire <= 1.0:
        raise ParameterError(f"p_rewire must be in [0, 1], got {p_rewire}")
    rng = random.Random(seed)
    neighbor_sets: list[set[int]] = [set() for _ in range(n)]
    for j in range(1, k_even // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)
    for j in range(1, k_even // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if rng.random() >= p_rewire:
                continue
            if len(neighbor_sets[u]) >= n - 1:
                continue  # u is saturated, nothing valid to rewire to
            w = int(rng.random() * n)
            while w == u or w in neighbor_sets[u]:
                w = int(rng.random() * n)
            neighbor_sets[u].discard(v)
            neighbor_sets[v].discard(u)
            neighbor_sets[u].add(w)
            neighbor_sets[w].add(u)
    edges = [(u, v) for u in range(n) for v in neighbor_sets[u] if u < v]
    return build_graph(n, edges)


def waxman_beta(points: np.ndarray, k_avg: float, alpha: float) -> float:
    """Link-probability scale giving expected mean degree k_avg on these points.

    The pair probability is beta * exp(-d / (alpha * sqrt(2))), so the
    expected degree is linear in beta and the calibration is exact.
    """
    n = len(points)
    scale = alpha * math.sqrt(2.0)
    total = 0.0
    for u in range(n - 1):
        d = np.hypot(points[u + 1 :, 0] - points[u, 0], points[u + 1 :, 1] - points[u, 1])
        total += float(np.exp(-d / scale).sum())
    if total <= 0.0:
        raise ParameterError("degenerate point set for waxman calibration")
    return k_avg * n / (2.0 * total)


def gen_waxman(n: int, k_avg: float, alpha: float, seed: int) -> Graph:
    """Waxman geometric graph on n uniform points in the unit square.

    Pair (u, v) is linked with probability beta * exp(-d(u,v) / (alpha*sqrt(2)))
    where beta is calibrated against the realized point set so the expected
    mean degree equals k_avg.
    """
    if n < 2 or not 0 < k_avg < n:
        raise ParameterError(f"need 0 < k_avg < n and n >= 2, got k_avg={k_avg}, n={n}")
    if not 0.0 < alpha <= 1.0:
        raise ParameterError(f"alpha must be in (0, 1], got {alpha}")
    rng = np.random.default_rng(seed)
    points = rng.random((n, 2))
    beta = waxman_beta(points, k_avg, alpha)
    if beta > 1.0:
        raise ParameterError(
            f"k_avg={k_avg} unreachable at alpha={alpha} (needs beta={beta:.3f} > 1); "
            "increase alpha"
        )
    scale = alpha * math.sqrt(2.0)
    edges: list[tuple[int, int]] = []
    for u in range(n - 1):
        d = np.hypot(points[u + 1 :, 0] - points[u, 0], points[u + 1 :, 1] - points[u, 1])
        hits = np.nonzero(rng.random(n - u - 1) < beta * np.exp(-d / scale))[0]
        edges.extend((u, u + 1 + int(j)) for j in hits)
    return build_graph(n, edges)


def sbm_intra_probability(n: int, blocks: int, mu: float, k_avg: float) -> float:
    """Intra-block pair probability solving E[k] = p_in*(n_b - 1) + mu*(n - n_b).

    The raw solution is returned unclamped; callers decide how to handle
    values outside [0, 1].
    """
    n_b = n / blocks
    if n_b <= 1:
        raise ParameterError("blocks must leave at least 2 nodes per block")
    return (k_avg - mu * (n - n_b)) / (n_b - 1)


def gen_sbm(n: int, blocks: int, mu: float, k_avg: float, seed: int) -> Graph:
    """Stochastic block model with equal-size blocks (remainder goes to the first ones).

    Inter-block pairs are linked with probability mu; the intra-block
    probability is solved from the expected-degree equation and clamped to
    [0, 1] with a warning when the target is unreachable from below.
    """
    if blocks < 1:
        raise ParameterError(f"need blocks >= 1, got {blocks}")
    if not 0.0 <= mu <= 1.0:
        raise ParameterError(f"mu must be in [0, 1], got {mu}")
    p_in = sbm_intra_probability(n, blocks, mu, k_avg)
    if p_in > 1.0:
        raise ParameterError(
            f"intra-block probability {p_in:.3f} > 1: mu={mu} too small for k_avg={k_avg}"
        )
    if p_in < 0.0:
        logger.warning(
            "sbm intra-block probability %.4f clamped to 0 (mu=%g alone exceeds k_avg=%g)",
            p_in,
            mu,
            k_avg,
        )
        p_in = 0.0
    base, rem = divmod(n, blocks)
    sizes = [base + 1] * rem + [base] * (blocks - rem)
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    for b in range(blocks):
        block_nodes = range(offsets[b], offsets[b + 1])
        edges.extend(_gnp_edges(block_nodes, p_in, rng))
    for a in range(blocks):
        for b in range(a + 1, blocks):
            na, nb = sizes[a], sizes[b]
            for t in _bernoulli_indices(na * nb, mu, rng):
                edges.append((offsets[a] + t // nb, offsets[b] + t % nb))
    return build_graph(n, edges)


def generate(spec: GeneratorSpec) -> GenerationResult:
    """Dispatch to the model constructor and reduce to the largest component."""
    spec.validate()
    if spec.model == "er":
        g = gen_er(spec.n, spec.k_avg, spec.seed)
    elif spec.model == "ba":
        m_attach = max(1, round(spec.k_avg / 2.0))
        g = gen_ba(spec.n, m_attach, spec.seed)
    elif spec.model == "cm":
        g = gen_cm(spec.degree_sequence, spec.seed)
    elif spec.model == "ws":
        g = gen_ws(spec.n, int(spec.k_avg), spec.p_rewire, spec.seed)
    elif spec.model == "waxman":
        g = gen_waxman(spec.n, spec.k_avg, spec.alpha, spec.seed)
    else:
        g = gen_sbm(spec.n, spec.blocks, spec.mu, spec.k_avg, spec.seed)
    raw_n = g.n
    lcc, _ = largest_connected_component(g)
    requested_n = spec.n if spec.model != "cm" else len(spec.degree_sequence or ())
    requested_k = (
        spec.k_avg
        if spec.model != "cm"
        else (sum(spec.degree_sequence) / len(spec.degree_sequence) if spec.degree_sequence else 0.0)
    )
    stats = RealizedStats(
        model=spec.model,
        requested_n=requested_n,
        requested_k_avg=requested_k,
        n=lcc.n,
        m=lcc.m,
        k_avg=lcc.mean_degree(),
        nodes_outside_lcc=raw_n - lcc.n,
    )
    return GenerationResult(graph=lcc, stats=stats)


def with_seed(spec: GeneratorSpec, seed: int) -> GeneratorSpec:
    return replace(spec, seed=seed)
