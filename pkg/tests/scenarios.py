"""Hand-authored two-chef scripted episodes for oracle tests.

Both scenarios run on the compact kitchen from conftest with a fixed order
script, so every reward and key event below is hand-countable.
"""

from coopkitchen.config import GameConfig, OrderScriptEntry
from coopkitchen.env import BeefState, Player, TileKind, init_game, load_layout

from conftest import Driver, MINI_LAYOUT

A, H = Player.AGENT, Player.HUMAN

PARK_A = (3, 1)
PARK_H = (3, 5)


def make_driver(order_entries, episode_ticks=500, seed=1):
    script = tuple(OrderScriptEntry(tick=t, kind=k, lifetime=life) for t, k, life in order_entries)
    config = GameConfig(order_script=script, episode_ticks=episode_ticks)
    return Driver(init_game(load_layout(MINI_LAYOUT), config, seed=seed))


def prepare_chopped_lettuce(d: Driver, player):
    """get lettuce -> cutboard -> chop x3 -> hold the chopped lettuce."""
    d.use(player, d.station(TileKind.LETTUCE))
    d.use(player, d.station(TileKind.CUTBOARD))
    for _ in range(d.state.config.chop_count):
        d.interact(player)
    d.interact(player)  # barehand pickup


def cook_and_plate_beef(d: Driver, player):
    """beef -> pan -> fetch plate -> wait well-done -> plate it. Holds plate{beef}."""
    pan = d.station(TileKind.PAN)
    d.use(player, d.station(TileKind.BEEF))
    d.use(player, pan)
    d.use(player, d.station(TileKind.PLATE))
    d.goto_face(player, pan)
    while d.state.pans[pan].beef.state != BeefState.WELL_DONE:
        d.do()
    d.interact(player)  # plate the well-done beef


def serve_held(d: Driver, player):
    d.use(player, d.station(TileKind.SERVE))


def beef_lettuce_burger_split(d: Driver, counter_index=0):
    """BeefLettuceBurger with split work.

    agent: CookBeef, UsePlate, UseBeef, Serve   (4 key events)
    human: PrepareLettuce, UseLettuce, UseBread (3 key events)
    """
    center = d.station(TileKind.CENTER_COUNTER, counter_index)
    cook_and_plate_beef(d, A)  # CookBeef + UsePlate + UseBeef by agent
    d.use(A, center)  # plate{beef} parked
    d.goto_cell(A, PARK_A)

    prepare_chopped_lettuce(d, H)  # PrepareLettuce by human
    d.use(H, center)  # "Put Lettuce onto Plate with Beef" -> UseLettuce human
    d.use(H, d.station(TileKind.BREAD))
    d.use(H, center)  # "Put onto Plate with BeefLettuce" -> UseBread human
    d.goto_cell(H, PARK_H)

    d.use(A, center)  # pick up the finished burger
    serve_held(d, A)  # Serve by agent (+25)
    d.goto_cell(A, PARK_A)


def lettuce_burger_split(d: Driver, counter_index=1):
    """LettuceBurger with the opposite split.

    agent: PrepareLettuce, UseLettuce, UseBread (3 key events)
    human: UsePlate, Serve                      (2 key events)
    """
    center = d.station(TileKind.CENTER_COUNTER, counter_index)
    d.use(H, d.station(TileKind.PLATE))  # UsePlate by human
    d.use(H, center)
    d.goto_cell(H, PARK_H)

    prepare_chopped_lettuce(d, A)  # PrepareLettuce by agent
    d.use(A, center)  # "Put Lettuce onto Plate" -> UseLettuce agent
    d.use(A, d.station(TileKind.BREAD))
    d.use(A, center)  # "Put onto Plate with Lettuce" -> UseBread agent
    d.goto_cell(A, PARK_A)

    d.use(H, center)  # pick up the burger
    serve_held(d, H)  # Serve by human (+15)
    d.goto_cell(H, PARK_H)


def beef_burger_solo(d: Driver, player=A):
    """BeefBurger built end-to-end by one chef: exactly 5 key events."""
    cook_and_plate_beef(d, player)
    d.use(player, d.station(TileKind.BREAD))  # bread straight onto the held plate
    serve_held(d, player)  # (+20)


def wrong_serve_plate_of_bread(d: Driver, player=A):
    d.use(player, d.station(TileKind.PLATE))
    d.use(player, d.station(TileKind.BREAD))
    serve_held(d, player)  # (-10)


def run_to_end(d: Driver):
    while not d.state.finished():
        d.do()


def contribution_episode():
    """The 7-vs-5 key-event fixture.

    Orders: BeefLettuceBurger and LettuceBurger, both generous deadlines.
    Hand count: agent 7 key events, human 5 -> contribution 58.33%.
    """
    d = make_driver([(0, "BeefLettuceBurger", 400), (0, "LettuceBurger", 400)])
    beef_lettuce_burger_split(d)
    lettuce_burger_split(d)
    run_to_end(d)
    return d


# (kind, actor) pairs expected from the contribution episode, per lineage.
CONTRIBUTION_FIXTURE = {
    1: [  # BeefLettuceBurger order
        ("CookBeef", "agent"),
        ("UsePlate", "agent"),
        ("UseBeef", "agent"),
        ("PrepareLettuce", "human"),
        ("UseLettuce", "human"),
        ("UseBread", "human"),
        ("Serve", "agent"),
    ],
    2: [  # LettuceBurger order
        ("UsePlate", "human"),
        ("PrepareLettuce", "agent"),
        ("UseLettuce", "agent"),
        ("UseBread", "agent"),
        ("Serve", "human"),
    ],
}


def reward_ledger_episode():
    """Every reward-table row once: +25 +20 +15 -10 (wrong) -10 (miss) = 40.

    The doomed LettuceBurger order (tick 100, lifetime 50) is left to expire;
    our own LettuceBurger is served after tick 150 against the long order.
    """
    d = make_driver([
        (0, "BeefBurger", 450),
        (0, "BeefLettuceBurger", 450),
        (40, "LettuceBurger", 440),
        (100, "LettuceBurger", 50),  # missed at tick 150
    ])
    beef_burger_solo(d, A)  # +20, finishes well before tick 100
    d.goto_cell(A, PARK_A)
    beef_lettuce_burger_split(d)  # +25
    wrong_serve_plate_of_bread(d, H)  # -10
    d.goto_cell(H, PARK_H)
    while d.state.tick <= 151:  # let the doomed order expire (-10)
        d.do()
    lettuce_burger_split(d)  # +15 against the long LettuceBurger order
    run_to_end(d)
    return d
