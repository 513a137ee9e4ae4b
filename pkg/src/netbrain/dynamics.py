"""Walk engine: repeated self-avoiding walks from a fixed brain node.

Three walk policies are supported:

* ``standard``: the agent only learns the nodes it steps on; every move
  costs one step.
* ``extended``: on departing a node the agent reports all of that node's
  neighbors to the brain (they become *primed*), but primed nodes stay
  visitable; a walk's cost is the sum of the degrees of its path nodes.
* ``look_ahead``: like extended, but primed nodes may never be entered;
  same degree-sum cost.

Within one walk a node is never visited twice (*blocked* once left). A walk
ends at a dead end, at an optional step cap, or as soon as the brain's
accumulated knowledge covers the whole graph. Each new walk starts from the
same brain node with the agent's view wiped clean; only the brain's knowledge
and step counter persist.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterable, Sequence

from .errors import ConfigError, DiscoveryStallError
from .graph import Graph


class NodeState(IntEnum):
    """Per-walk agent view of one node."""

    UNVISITED = 0
    PRIMED = 1
    BLOCKED = 2
    CURRENT = 3


class WalkPolicy(str, Enum):
    STANDARD = "standard"
    EXTENDED = "extended"
    LOOK_AHEAD = "look_ahead"


class Termination(str, Enum):
    DEAD_END = "dead_end"
    STEP_CAP = "step_cap"
    FULL_COVERAGE = "full_coverage"


@dataclass(frozen=True)
class WalkOutcome:
    """Result of a single walk: path taken, knowledge reported, cost."""

    visited_path: tuple[int, ...]
    newly_known: frozenset[int]
    steps: int
    terminated_by: Termination


@dataclass
class BrainState:
    """Knowledge accumulated at the brain across walks."""

    brain: int
    known: set[int]
    cumulative_steps: int = 0
    walk_count: int = 0
    cap_hits: int = 0

    def fraction_known(self, n: int) -> float:
        return len(self.known) / n if n else 1.0


@dataclass(frozen=True)
class LearningCurve:
    """Cumulative steps at the first crossing of each discovery threshold."""

    thresholds: tuple[float, ...]
    crossings: tuple[tuple[float, int], ...]

    def steps_at(self, threshold: float) -> int:
        for t, steps in self.crossings:
            if abs(t - threshold) < 1e-9:
                return steps
        raise KeyError(f"threshold {threshold} not in curve grid")


def default_thresholds() -> tuple[float, ...]:
    """The 1%..100% grid in 1% increments."""
    return tuple(i / 100.0 for i in range(1, 101))


def validate_thresholds(thresholds: Sequence[float]) -> tuple[float, ...]:
    ts = tuple(float(t) for t in thresholds)
    if not ts:
        raise ConfigError("threshold grid must not be empty")
    if any(not 0.0 < t <= 1.0 for t in ts):
        raise ConfigError("thresholds must lie in (0, 1]")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ConfigError("thresholds must be strictly increasing")
    return ts


def eligible_moves(
    g: Graph, states: Sequence[int], policy: WalkPolicy, current: int
) -> list[int]:
    """Neighbors of `current` the agent may move to under `policy`.

    Standard and extended walks may enter anything not blocked (primed nodes
    are still visitable); look-ahead walks may only enter unvisited nodes.
    An empty result is a dead end.
    """
    nbrs = g.adj[current]
    if policy is WalkPolicy.LOOK_AHEAD:
        return [w for w in nbrs if states[w] == NodeState.UNVISITED]
    return [w for w in nbrs if states[w] < NodeState.BLOCKED]


def policy_step_metric(policy: WalkPolicy, path: Sequence[int], g: Graph) -> int:
    """Cost of a walk along `path`: moves for standard, degree sum otherwise."""
    if not path:
        raise ValueError("path must contain at least the starting node")
    if policy is WalkPolicy.STANDARD:
        return len(path) - 1
    return sum(len(g.adj[v]) for v in path)


class _CrossingTracker:
    """Records cumulative steps the moment each knowledge threshold is reached.

    Thresholds are precomputed as integer knowledge counts, so the per-move
    check is a pair of integer comparisons. Checks happen at move boundaries:
    a move's cost is charged before its discoveries are inspected.
    """

    __slots__ = ("grid", "targets", "next_idx", "base_steps", "crossings")

    def __init__(self, grid: tuple[float, ...], n: int):
        self.grid = grid
        self.targets = [math.ceil(t * n - 1e-9) for t in grid]
        self.next_idx = 0
        self.base_steps = 0
        self.crossings: list[tuple[float, int]] = []

    def record(self, known_count: int, steps_in_walk: int) -> None:
        while self.next_idx < len(self.targets) and known_count >= self.targets[self.next_idx]:
            self.crossings.append((self.grid[self.next_idx], self.base_steps + steps_in_walk))
            self.next_idx += 1


def _walk(
    g: Graph,
    brain: int,
    policy: WalkPolicy,
    step_cap: int | None,
    rng: random.Random,
    known_mask: bytearray,
    known_count: int,
    collect_path: bool,
    stop_count: int | None = None,
    tracker: _CrossingTracker | None = None,
) -> tuple[list[int] | None, int, list[int], int, Termination]:
    """One walk against a shared knowledge mask; returns the fresh reports.

    The mask is updated in place; `known_count` tracks its popcount so the
    coverage check is O(1) per move. `stop_count` (default: the full node
    count) ends the walk as soon as the brain knows that many nodes.
    """
    n = g.n
    adj = g.adj
    if stop_count is None:
        stop_count = n
    state = bytearray(n)
    state[brain] = NodeState.CURRENT
    new_nodes: list[int] = []
    if not known_mask[brain]:
        known_mask[brain] = 1
        known_count += 1
        new_nodes.append(brain)
    standard = policy is WalkPolicy.STANDARD
    look_ahead = policy is WalkPolicy.LOOK_AHEAD
    steps = 0 if standard else len(adj[brain])
    path = [brain] if collect_path else None
    if tracker is not None:
        tracker.record(known_count, steps)
    if known_count >= stop_count:
        return path, steps, new_nodes, known_count, Termination.FULL_COVERAGE
    cur = brain
    rnd = rng.random
    blocked = int(NodeState.BLOCKED)
    primed = int(NodeState.PRIMED)
    while True:
        nbrs = adj[cur]
        if look_ahead:
            elig = [w for w in nbrs if state[w] == 0]
        else:
            elig = [w for w in nbrs if state[w] < blocked]
        if not elig:
            return path, steps, new_nodes, known_count, Termination.DEAD_END
        # Exactly one rng draw per move keeps runs reproducible.
        i = int(rnd() * len(elig))
        nxt = elig[i if i < len(elig) else -1]
        state[cur] = blocked
        if not standard:
            # Departure primes the neighborhood and reports it to the brain.
            for w in nbrs:
                if not known_mask[w]:
                    known_mask[w] = 1
                    known_count += 1
                    new_nodes.append(w)
                if state[w] == 0:
                    state[w] = primed
        state[nxt] = NodeState.CURRENT
        if not known_mask[nxt]:
            known_mask[nxt] = 1
            known_count += 1
            new_nodes.append(nxt)
        steps += 1 if standard else len(adj[nxt])
        if collect_path:
            path.append(nxt)
        cur = nxt
        if tracker is not None:
            tracker.record(known_count, steps)
        if known_count >= stop_count:
            return path, steps, new_nodes, known_count, Termination.FULL_COVERAGE
        if step_cap is not None and steps >= step_cap:
            return path, steps, new_nodes, known_count, Termination.STEP_CAP


def run_walk(
    g: Graph,
    brain: int,
    policy: WalkPolicy,
    rng: random.Random,
    step_cap: int | None = None,
    known: Iterable[int] | None = None,
) -> WalkOutcome:
    """Execute one walk from the brain with a fresh agent view.

    `known` is the brain's accumulated knowledge before this walk; it only
    affects the full-coverage early exit and which reports count as new.
    """
    if not 0 <= brain < g.n:
        raise ValueError(f"brain {brain} outside [0, {g.n})")
    mask = bytearray(g.n)
    count = 0
    if known is not None:
        for v in known:
            if not mask[v]:
                mask[v] = 1
                count += 1
    path, steps, new_nodes, _, reason = _walk(
        g, brain, policy, step_cap, rng, mask, count, collect_path=True
    )
    return WalkOutcome(
        visited_path=tuple(path or ()),
        newly_known=frozenset(new_nodes),
        steps=steps,
        terminated_by=reason,
    )


def run_discovery(
    g: Graph,
    brain: int,
    policy: WalkPolicy,
    rng: random.Random,
    step_cap: int | None = None,
    thresholds: Sequence[float] | None = None,
    target_fraction: float = 1.0,
) -> tuple[LearningCurve, BrainState]:
    """Repeat walks from the brain until its knowledge covers the graph.

    Records the cumulative step count (summed over walks, at move
    granularity) at the moment each discovery threshold is first reached.
    The graph must be connected (run on the LCC); a misuse guard aborts if
    10 * n consecutive walks add nothing.

    `target_fraction` stops the run once that fraction is known; the default
    of 1.0 runs to full coverage. Thresholds above the target are then never
    crossed.
    """
    if not 0 <= brain < g.n:
        raise ValueError(f"brain {brain} outside [0, {g.n})")
    grid = validate_thresholds(thresholds if thresholds is not None else default_thresholds())
    if not 0.0 < target_fraction <= 1.0:
        raise ConfigError(f"target_fraction must be in (0, 1], got {target_fraction}")
    n = g.n
    mask = bytearray(n)
    count = 0
    cumulative = 0
    walks = 0
    cap_hits = 0
    stalled = 0
    tracker = _CrossingTracker(grid, n)
    stop_count = math.ceil(target_fraction * n - 1e-9)
    while count < stop_count:
        tracker.base_steps = cumulative
        _, steps, new_nodes, count, reason = _walk(
            g,
            brain,
            policy,
            step_cap,
            rng,
            mask,
            count,
            collect_path=False,
            stop_count=stop_count,
            tracker=tracker,
        )
        cumulative += steps
        walks += 1
        if reason is Termination.STEP_CAP:
            cap_hits += 1
        if new_nodes:
            stalled = 0
        else:
            stalled += 1
            if stalled >= 10 * n:
                raise DiscoveryStallError(
                    f"no progress in {stalled} consecutive walks "
                    f"(policy={policy.value}, brain={brain}, known={count}/{n}); "
                    "is the graph connected?"
                )
    curve = LearningCurve(thresholds=grid, crossings=tuple(tracker.crossings))
    brain_state = BrainState(
        brain=brain,
        known={v for v in range(n) if mask[v]},
        cumulative_steps=cumulative,
        walk_count=walks,
        cap_hits=cap_hits,
    )
    return curve, brain_state
