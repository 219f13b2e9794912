"""Acceptance suite: one test per release criterion, one printed verdict each.

Run with `pytest tests/test_acceptance.py -v -s` to see the verdict lines.
"""

import os
import time
from dataclasses import replace

import pytest

from coopkitchen.agent.comm import CommCondition
from coopkitchen.agent.conditions import parse_condition
from coopkitchen.agent.pathing import adjacent_floor_cells, plan_path
from coopkitchen.agent.policy import FsmState, parse_macro, PolicySnippet, select_macro
from coopkitchen.env import ControlAction, Player, load_bundled
from coopkitchen.metrics import (
    attribute_lineage,
    classify_key_actions,
    compute_report,
    contribution_rate,
)
from coopkitchen.session import SessionConfig, replay_log, run_session, run_validation, validation_table

from conftest import bfs_path
import scenarios
import test_fire_property


def verdict(name: str) -> None:
    print(f"\nACCEPTANCE {name}: PASS")


# -- 1. determinism ------------------------------------------------------------


def test_determinism_twenty_randomized_episodes():
    """20 randomized (seed, scripted human, mock backend) episodes, run twice
    each, must produce identical EpisodeLog hashes in under a minute."""
    started = time.monotonic()
    conditions = list(CommCondition)
    for i in range(20):
        config = SessionConfig(
            comm_condition=conditions[i % 4],
            tom_enabled=bool(i % 2),
            seed=1000 + i,
            human_source={"type": "random", "seed": 37 * i + 5},
        )
        first = run_session(config).episode_hash()
        second = run_session(config).episode_hash()
        assert first == second, f"episode {i} not deterministic"
    elapsed = time.monotonic() - started
    assert elapsed < 60.0, f"determinism suite took {elapsed:.1f}s"
    verdict(f"determinism (20 episodes x2, {elapsed:.1f}s)")


# -- 2. reward ledger ------------------------------------------------------------


def test_reward_ledger_exercises_every_reward_row():
    """One of each burger, one wrong serve, one missed order:
    15 + 20 + 25 - 10 - 10 = 40 exactly."""
    d = scenarios.reward_ledger_episode()
    assert d.state.tick == 500
    assert d.state.score == 40
    from coopkitchen.env import EventKind

    rewards = sorted(
        e.payload["reward"] for e in d.events
        if e.kind in (EventKind.SERVE, EventKind.ORDER_MISSED)
    )
    assert rewards == [-10, -10, 15, 20, 25]
    verdict("reward ledger (final score 40)")


# -- 3. key events / contribution -----------------------------------------------


def test_contribution_oracle_hand_counted():
    d = scenarios.contribution_episode()
    key = classify_key_actions(d.events)
    retained, _ = attribute_lineage(d.events, key)
    agent = sum(1 for k in retained if k.actor == "agent")
    human = sum(1 for k in retained if k.actor == "human")
    assert (agent, human) == (7, 5)
    rate = contribution_rate(retained)
    assert rate == pytest.approx(58.33, abs=0.01)
    by_lineage = {}
    for ke in retained:
        by_lineage.setdefault(ke.burger_lineage_id, set()).add((ke.kind.value, ke.actor))
    expected = {order: set(pairs) for order, pairs in scenarios.CONTRIBUTION_FIXTURE.items()}
    assert by_lineage == expected
    verdict("key-event contribution (7 vs 5, 58.33%)")


# -- 4. path planning oracle -------------------------------------------------------


def test_path_planner_matches_bfs_on_bundled_layout():
    layout = load_bundled()
    started = time.monotonic()
    floors = [
        (r, c) for r in range(layout.height) for c in range(layout.width)
        if layout.is_floor((r, c))
    ]
    targets = [
        (r, c) for r in range(layout.height) for c in range(layout.width)
        if not layout.is_floor((r, c)) and adjacent_floor_cells(layout, (r, c))
    ]
    pairs = 0
    for start in floors:
        for target in targets:
            plan = plan_path(layout, set(), start, target)
            goals = set(adjacent_floor_cells(layout, target))
            oracle = bfs_path(layout, start, goals)
            if oracle is None:
                assert plan is None
            else:
                assert plan is not None and len(plan) == len(oracle), \
                    f"{start}->{target}: {len(plan)} vs oracle {len(oracle)}"
            pairs += 1
    elapsed = time.monotonic() - started
    assert elapsed < 10.0
    assert pairs > 1000
    verdict(f"path planning ({pairs} pairs vs BFS, {elapsed:.1f}s)")


# -- 5. fire state machine ------------------------------------------------------------


def test_fire_state_machine_random_schedules():
    for seed in range(40):
        test_fire_property.run_schedule(seed)
    verdict("fire state machine (40 random schedules)")


# -- 6. condition gating, all eight cells ------------------------------------------------


def test_condition_gating_exhaustive():
    chatty_human = {"type": "script", "actions": {},
                    "messages": {"60": 2, "140": 8, "300": 10}}
    for comm in CommCondition:
        for tom in (True, False):
            config = SessionConfig(
                comm_condition=comm, tom_enabled=tom, seed=4,
                human_source=dict(chatty_human),
            )
            log = run_session(config)
            agent_msgs = sum(1 for t in log.ticks if t.agent_msg)
            human_msgs = sum(1 for t in log.ticks if t.human_msg)
            tom_entries = sum(1 for t in log.transcript if t.purpose == "ToMInference")
            comm_entries = sum(1 for t in log.transcript if t.purpose == "Communication")
            cell = f"{comm.value}/tom={tom}"
            if comm.agent_may_send:
                assert agent_msgs > 0 and comm_entries > 0, cell
            else:
                assert agent_msgs == 0 and comm_entries == 0, cell
            if comm.human_may_send:
                assert human_msgs == 3, cell
            else:
                assert human_msgs == 0, cell
                assert log.footer["protocol_errors"] == 3, cell
            assert tom_entries == (6 if tom else 0), cell
    verdict("condition gating (8 cells: directions + ToM counts)")


# -- 7. snippet semantics -----------------------------------------------------------------


def test_snippet_semantics_unit_suite():
    from coopkitchen.env import init_game, load_layout
    from conftest import MINI_LAYOUT, scripted_config

    state = init_game(load_layout(MINI_LAYOUT),
                      scripted_config((0, "BeefBurger", 30)), seed=1)

    # satisfied snippet overrides the rule policy
    snip = PolicySnippet(
        condition=parse_condition("order(BeefBurger)"),
        macro=parse_macro("PassOn(Plate)"),
        issued_tick=0, expires_tick=100,
    )
    macro, _ = select_macro(state, FsmState(), [snip])
    assert macro.describe() == "PassOn(Plate)" and macro.source == "snippet"

    # expired snippet never fires
    stale = PolicySnippet(
        condition=parse_condition("order(BeefBurger)"),
        macro=parse_macro("PassOn(Plate)"),
        issued_tick=0, expires_tick=0,
    )
    macro, _ = select_macro(state, FsmState(), [stale])
    assert macro.source == "fsm" and not stale.consumed

    # a vanished order makes its condition false
    from coopkitchen.env import step

    for _ in range(31):
        state, _, _ = step(state, ControlAction.NOOP, ControlAction.NOOP)
    assert not parse_condition("order(BeefBurger)").evaluate(state)
    assert not parse_condition("order_remaining(BeefBurger) >= 0").evaluate(state)
    verdict("snippet semantics (override, expiry, staleness)")


# -- 8. liveness and performance -----------------------------------------------------------


def test_liveness_and_tick_budget():
    config = SessionConfig(
        comm_condition=CommCondition.BI_COMM, tom_enabled=True, seed=77,
        human_source={"type": "random", "seed": 11},
    )
    from coopkitchen.session import SessionRunner

    runner = SessionRunner(config)
    per_tick = []
    started = time.monotonic()
    while not runner.finished():
        t0 = time.perf_counter()
        runner.tick_once()
        per_tick.append(time.perf_counter() - t0)
    log = runner.finalize()
    total = time.monotonic() - started

    assert len(log.ticks) == 500  # one action per tick, no missed ticks
    assert all(t.a_agent is not None for t in log.ticks)
    mean_ms = sum(per_tick) / len(per_tick) * 1000
    worst_ms = max(per_tick) * 1000
    assert mean_ms < 5.0, f"mean tick {mean_ms:.2f}ms"
    assert worst_ms < 50.0, f"worst tick {worst_ms:.2f}ms"
    assert total < 5.0, f"episode took {total:.2f}s"
    verdict(f"liveness/performance (mean {mean_ms:.2f}ms/tick, episode {total:.2f}s)")


# -- 9. record/replay closure ----------------------------------------------------------------


def test_record_replay_closure():
    config = SessionConfig(
        comm_condition=CommCondition.BI_COMM, tom_enabled=True, seed=31,
        human_source={"type": "random", "seed": 8},
    )
    recorded = run_session(config)
    replayed = run_session(replace(config, backend_mode="replay"),
                           transcript=recorded.transcript)
    assert recorded.episode_hash() == replayed.episode_hash()
    # and the engine-level replay of the recorded log verifies every hash
    report = replay_log(recorded)
    assert report.ok and report.ticks_verified == 500
    verdict("record/replay closure (identical episode hashes)")


# -- 10. directional validation ----------------------------------------------------------------


def test_directional_validation_table():
    """ToM-on mean should not trail ToM-off; live backend only when a key is
    present, otherwise the mock backend exercises the same harness shape."""
    live = bool(os.environ.get("COOPKITCHEN_API_KEY"))
    backend = "live" if live else "mock"
    games = 10
    on = run_validation(games, tom_enabled=True, backend_mode=backend, base_seed=50)
    off = run_validation(games, tom_enabled=False, backend_mode=backend, base_seed=50)
    table = validation_table([on, off])
    print("\n" + table)
    assert len(on["scores"]) + len(on["failed"]) == games
    assert len(off["scores"]) + len(off["failed"]) == games
    assert on["mean"] is not None and off["mean"] is not None
    if on["mean"] < off["mean"]:
        print("NOTE: ToM-on mean below ToM-off in this batch (expectation, not assertion)")
    verdict(f"directional validation ({backend}: ToM-on {on['mean']:.1f} vs ToM-off {off['mean']:.1f})")
