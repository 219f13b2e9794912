"""Fire state machine over randomized attend/neglect schedules.

For each seeded schedule, a chef either tends the pan (plates the beef the
moment it is well-done) or neglects it for some number of ticks. Checks:
PanFire happens exactly when a well-done beef sits unattended for
`fire_delay` ticks, extinguishing restores the pan to a cookable state once
the burnt beef is removed, and overcooked beef never reaches a correct serve.
"""

import random

from coopkitchen.config import GameConfig
from coopkitchen.env import (
    BeefState,
    EventKind,
    Player,
    TileKind,
    init_game,
    load_layout,
)

from conftest import MINI_LAYOUT, Driver

A = Player.AGENT


def run_schedule(seed: int):
    rng = random.Random(seed)
    config = GameConfig(order_script=(), episode_ticks=100_000)
    d = Driver(init_game(load_layout(MINI_LAYOUT), config, seed=seed))
    pan = d.station(TileKind.PAN)

    d.use(A, d.station(TileKind.BEEF))
    d.use(A, pan)
    # fetch a plate and stand facing the pan while the beef cooks
    d.use(A, d.station(TileKind.PLATE))
    d.goto_face(A, pan)
    while d.state.pans[pan].beef.state == BeefState.COOKING:
        d.do()
    assert d.state.pans[pan].beef.state == BeefState.WELL_DONE
    assert d.state.pans[pan].beef.ticks == 0

    neglect = rng.randrange(0, 2 * d.state.config.fire_delay)
    d.wait(neglect)

    fired = any(e.kind == EventKind.PAN_FIRE for e in d.events)
    should_fire = neglect >= d.state.config.fire_delay
    assert fired == should_fire, f"seed {seed}: neglect {neglect} fired={fired}"

    if not fired:
        # attend: plate the beef; pan must be immediately reusable
        d.interact(A)
        assert d.state.pans[pan].beef is None
        assert d.state.chefs[A].held.contents != frozenset()
        d.use(A, d.station(TileKind.CENTER_COUNTER))
        return
    d.use(A, d.station(TileKind.CENTER_COUNTER))  # park the plate before firefighting

    # fire path: extinguish, with occasional interrupted streaks
    d.use(A, d.station(TileKind.EXTINGUISHER))
    d.goto_face(A, pan)
    streak = 0
    while d.state.pans[pan].on_fire:
        if streak and rng.random() < 0.15:
            d.do()  # fumble: streak resets
            streak = 0
            continue
        d.interact(A)
        streak += 1
    assert any(e.kind == EventKind.FIRE_EXTINGUISHED for e in d.events)
    assert d.state.pans[pan].beef.state == BeefState.OVERCOOKED

    # usability restored: remove the burnt beef, cook a fresh one
    d.use(A, d.station(TileKind.EXTINGUISHER))
    d.use(A, d.station(TileKind.PLATE))
    d.use(A, pan)
    assert d.state.pans[pan].beef is None
    d.use(A, d.station(TileKind.BREAD))  # ingredient stations double as the trash
    held = d.state.chefs[A].held
    assert held.garbage_id is None  # the interact discarded the burnt beef
    d.use(A, d.station(TileKind.CENTER_COUNTER, index=1))  # other cell than the parked plate
    d.use(A, d.station(TileKind.BEEF))
    events = d.use(A, pan)
    assert any(e.kind == EventKind.START_COOK for e in events)

    # no correct serve may ever contain overcooked beef
    for e in d.events:
        if e.kind == EventKind.SERVE and e.payload.get("result") == "correct":
            raise AssertionError("correct serve in a fire scenario with no orders")


def test_fire_schedules_property():
    for seed in range(60):
        run_schedule(seed)


def test_exact_fire_boundary():
    """Beef plated on the last pre-fire tick never ignites; one later always does."""
    config = GameConfig(order_script=(), episode_ticks=100_000)
    for extra, expect_fire in ((-1, False), (0, True)):
        d = Driver(init_game(load_layout(MINI_LAYOUT), config, seed=1))
        pan = d.station(TileKind.PAN)
        d.use(A, d.station(TileKind.BEEF))
        d.use(A, pan)
        d.wait(d.state.config.cook_duration)
        d.use(A, d.station(TileKind.PLATE))
        d.goto_face(A, pan)
        # well-done beef has been resting while we fetched the plate
        rested = d.state.pans[pan].beef.ticks
        d.wait(d.state.config.fire_delay - rested + extra)
        fired = d.state.pans[pan].on_fire
        assert fired == expect_fire
        if not fired:
            d.interact(A)
            assert d.state.pans[pan].beef is None
