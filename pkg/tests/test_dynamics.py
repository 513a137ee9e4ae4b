import random
import statistics

import pytest

from helpers import (
    complete_graph,
    cycle_graph,
    exact_first_walk_distribution,
    harmonic,
    path_graph,
    star_graph,
)
from netbrain import (
    DiscoveryStallError,
    GeneratorSpec,
    NodeState,
    Termination,
    WalkPolicy,
    build_graph,
    default_thresholds,
    eligible_moves,
    generate,
    policy_step_metric,
    run_discovery,
    run_walk,
)

POLICIES = [WalkPolicy.STANDARD, WalkPolicy.EXTENDED, WalkPolicy.LOOK_AHEAD]

U, P, B, C = NodeState.UNVISITED, NodeState.PRIMED, NodeState.BLOCKED, NodeState.CURRENT


# --- eligible_moves ---------------------------------------------------------


@pytest.mark.parametrize("policy", POLICIES)
def test_first_move_from_p3_middle(policy):
    g = path_graph(3)
    states = [U, C, U]
    assert eligible_moves(g, states, policy, 1) == [0, 2]


def test_star_leaf_is_forced_dead_end():
    g = star_graph(5)
    states = [B, C, U, U, U]  # walked center -> leaf 1
    assert eligible_moves(g, states, WalkPolicy.STANDARD, 1) == []


def test_extended_may_enter_primed_but_look_ahead_may_not():
    g = path_graph(3)
    states = [B, C, P]
    assert eligible_moves(g, states, WalkPolicy.EXTENDED, 1) == [2]
    assert eligible_moves(g, states, WalkPolicy.LOOK_AHEAD, 1) == []


def test_look_ahead_dead_end_on_c6():
    # After walking five consecutive cycle nodes, the last one sits between a
    # blocked neighbor and a primed one: no eligible move.
    g = cycle_graph(6)
    states = [B, B, B, B, C, P]
    assert eligible_moves(g, states, WalkPolicy.LOOK_AHEAD, 4) == []


# --- policy_step_metric -------------------------------------------------------


def test_step_metric_standard_counts_moves():
    g = path_graph(4)
    assert policy_step_metric(WalkPolicy.STANDARD, [0, 1, 2, 3], g) == 3


def test_step_metric_degree_sum_on_star():
    g = star_graph(5)
    assert policy_step_metric(WalkPolicy.EXTENDED, [0, 2], g) == 5


def test_step_metric_look_ahead_on_cycle():
    g = cycle_graph(6)
    assert policy_step_metric(WalkPolicy.LOOK_AHEAD, [0, 1, 2, 3, 4], g) == 10


# --- run_walk ------------------------------------------------------------------


def test_standard_walk_on_star_center():
    g = star_graph(5)
    for seed in range(20):
        out = run_walk(g, 0, WalkPolicy.STANDARD, random.Random(seed))
        assert len(out.visited_path) == 2
        assert out.visited_path[0] == 0
        assert out.steps == 1
        assert out.newly_known == {0, out.visited_path[1]}
        assert out.terminated_by is Termination.DEAD_END


def test_extended_walk_on_star_covers_everything():
    g = star_graph(5)
    out = run_walk(g, 0, WalkPolicy.EXTENDED, random.Random(3))
    assert out.steps == 5  # deg(center) + deg(leaf)
    assert out.newly_known == set(range(5))
    assert out.terminated_by is Termination.FULL_COVERAGE


def test_look_ahead_walk_on_c6():
    g = cycle_graph(6)
    for seed in range(10):
        out = run_walk(g, 0, WalkPolicy.LOOK_AHEAD, random.Random(seed))
        assert len(out.visited_path) == 5  # five consecutive nodes either way
        assert out.steps == 10
        assert out.newly_known == set(range(6))
        assert out.terminated_by is Termination.FULL_COVERAGE


def test_standard_walk_on_k4_never_dead_ends_early():
    g = complete_graph(4)
    for seed in range(10):
        out = run_walk(g, 0, WalkPolicy.STANDARD, random.Random(seed))
        assert out.steps == 3
        assert out.newly_known == {0, 1, 2, 3}
        assert out.terminated_by is Termination.FULL_COVERAGE


def test_walk_respects_prior_brain_knowledge():
    g = star_graph(5)
    out = run_walk(g, 0, WalkPolicy.STANDARD, random.Random(1), known={0, 1, 2, 3})
    # Only one leaf is missing; the walk may or may not hit it, but reports
    # only genuinely new nodes.
    assert out.newly_known <= {4}


def test_walk_step_cap_uses_policy_metric():
    g = cycle_graph(50)
    out = run_walk(g, 0, WalkPolicy.STANDARD, random.Random(0), step_cap=5)
    assert out.steps == 5
    assert out.terminated_by is Termination.STEP_CAP
    out = run_walk(g, 0, WalkPolicy.EXTENDED, random.Random(0), step_cap=5)
    # Degree-sum metric: the start costs deg(brain)=2 and each move adds 2,
    # so the cap first binds after the second move.
    assert out.steps == 6
    assert out.terminated_by is Termination.STEP_CAP
    assert len(out.visited_path) == 3


def test_walk_path_is_self_avoiding_and_adjacent():
    rng = random.Random(99)
    g = generate(GeneratorSpec(model="er", n=100, k_avg=5, seed=8)).graph
    for policy in POLICIES:
        for _ in range(30):
            out = run_walk(g, 0, policy, rng)
            path = out.visited_path
            assert len(set(path)) == len(path)
            for a, b in zip(path, path[1:]):
                assert b in g.adj[a]
            assert out.steps == policy_step_metric(policy, path, g)


def test_walk_consumes_one_draw_per_move():
    class CountingRandom(random.Random):
        draws = 0

        def random(self):
            CountingRandom.draws += 1
            return super().random()

    g = complete_graph(5)
    rng = CountingRandom(7)
    CountingRandom.draws = 0
    out = run_walk(g, 0, WalkPolicy.STANDARD, rng)
    assert CountingRandom.draws == len(out.visited_path) - 1


# --- run_discovery ---------------------------------------------------------------


def test_star_standard_is_coupon_collector():
    g = star_graph(21)
    totals = []
    for seed in range(400):
        _, brain = run_discovery(g, 0, WalkPolicy.STANDARD, random.Random(seed))
        totals.append(brain.cumulative_steps)
        assert brain.walk_count == brain.cumulative_steps  # every walk is 1 step
    mean = statistics.fmean(totals)
    expected = 20 * harmonic(20)
    se = statistics.stdev(totals) / len(totals) ** 0.5
    assert abs(mean - expected) <= 3 * se


@pytest.mark.parametrize("policy", [WalkPolicy.EXTENDED, WalkPolicy.LOOK_AHEAD])
def test_star_priming_covers_in_one_walk(policy):
    g = star_graph(5)
    for seed in range(25):
        curve, brain = run_discovery(g, 0, policy, random.Random(seed), thresholds=[1.0])
        assert brain.walk_count == 1
        assert brain.cumulative_steps == 5
        assert curve.crossings == ((1.0, 5),)


def test_k2_curve_is_single_step():
    g = complete_graph(2)
    curve, _ = run_discovery(g, 0, WalkPolicy.STANDARD, random.Random(0), thresholds=[1.0])
    assert curve.crossings == ((1.0, 1),)


def test_discovery_monotone_knowledge_and_steps():
    g = generate(GeneratorSpec(model="er", n=200, k_avg=6, seed=3)).graph
    curve, brain = run_discovery(g, 0, WalkPolicy.EXTENDED, random.Random(5))
    assert brain.known == set(range(g.n))
    steps = [s for _, s in curve.crossings]
    assert steps == sorted(steps)
    assert len(curve.crossings) == len(default_thresholds())
    assert brain.cumulative_steps == curve.steps_at(1.0)


@pytest.mark.parametrize("policy", POLICIES)
def test_discovery_terminates_on_standard_menagerie(policy):
    graphs = {
        "P10": path_graph(10),
        "C10": cycle_graph(10),
        "K10": complete_graph(10),
        "S10": star_graph(10),
        "ER": generate(GeneratorSpec(model="er", n=200, k_avg=6, seed=0)).graph,
    }
    for name, g in graphs.items():
        for seed in range(100):
            _, brain = run_discovery(g, 0, policy, random.Random(seed), thresholds=[1.0])
            assert len(brain.known) == g.n, (name, seed)


@pytest.mark.parametrize("policy", POLICIES)
def test_discovery_is_deterministic_per_seed(policy):
    g = generate(GeneratorSpec(model="ws", n=120, k_avg=4, seed=2, p_rewire=0.05)).graph
    a, _ = run_discovery(g, 3, policy, random.Random(77))
    b, _ = run_discovery(g, 3, policy, random.Random(77))
    assert a == b


def test_discovery_stall_guard_fires_on_disconnected_graph():
    g = build_graph(3, [(0, 1)])  # node 2 unreachable: misuse
    with pytest.raises(DiscoveryStallError):
        run_discovery(g, 0, WalkPolicy.STANDARD, random.Random(0), thresholds=[1.0])


def test_discovery_stall_guard_fires_when_cap_blocks_coverage():
    # A degree-sum cap below the brain's degree ends every extended walk
    # after one move, so knowledge saturates at the brain's neighborhood and
    # the pendant chain behind node 1 stays unlearnable. Real non-termination,
    # not misuse: the guard must turn it into a diagnostic error.
    edges = [(0, i) for i in range(1, 11)] + [(1, 11), (11, 12)]
    g = build_graph(13, edges)
    with pytest.raises(DiscoveryStallError, match="no progress"):
        run_discovery(
            g, 0, WalkPolicy.EXTENDED, random.Random(3), step_cap=5, thresholds=[1.0]
        )


def test_discovery_target_fraction_stops_early():
    g = generate(GeneratorSpec(model="er", n=300, k_avg=5, seed=6)).graph
    grid = [0.25, 0.5]
    curve, brain = run_discovery(
        g, 0, WalkPolicy.STANDARD, random.Random(9), thresholds=grid, target_fraction=0.5
    )
    assert len(curve.crossings) == 2
    assert len(brain.known) < g.n


def test_first_walk_distribution_matches_enumeration_smoke():
    # A quick slice of the exhaustive acceptance oracle: C5 under each policy.
    g = cycle_graph(5)
    for policy in POLICIES:
        exact = exact_first_walk_distribution(g, 0, policy)
        rng = random.Random(11)
        counts: dict[int, int] = {}
        trials = 4000
        for _ in range(trials):
            out = run_walk(g, 0, policy, rng)
            counts[out.steps] = counts.get(out.steps, 0) + 1
        assert set(counts) == set(exact)
        for steps, prob in exact.items():
            assert counts.get(steps, 0) / trials == pytest.approx(prob, abs=0.035)


def test_extended_vs_look_ahead_close_on_er_smoke():
    # Desk-scale version of the near-equivalence check; the acceptance suite
    # runs it at n=1000.
    g = generate(GeneratorSpec(model="er", n=300, k_avg=8, seed=14)).graph
    means = {}
    for policy in (WalkPolicy.EXTENDED, WalkPolicy.LOOK_AHEAD):
        vals = []
        for seed in range(30):
            curve, _ = run_discovery(
                g, 0, policy, random.Random(seed), thresholds=[0.9], target_fraction=0.9
            )
            vals.append(curve.steps_at(0.9))
        means[policy] = statistics.fmean(vals)
    gap = abs(means[WalkPolicy.EXTENDED] - means[WalkPolicy.LOOK_AHEAD])
    assert gap / means[WalkPolicy.LOOK_AHEAD] < 0.25
