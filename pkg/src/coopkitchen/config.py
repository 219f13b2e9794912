"""Game and order-policy configuration (key-value document, JSON on disk)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace


@dataclass(frozen=True)
class OrderScriptEntry:
    tick: int
    kind: str  # BurgerKind value
    lifetime: int


@dataclass(frozen=True)
class OrderPolicy:
    initial: int = 2
    max_active: int = 4
    replacement_gap: int = 10  # ticks between fulfil/miss and the replacement spawn
    topup_interval: int = 100  # periodic spawn toward max_active; 0 disables
    lifetime: int = 150


@dataclass(frozen=True)
class GameConfig:
    cook_duration: int = 20
    fire_delay: int = 20  # ticks a well-done beef survives unattended
    chop_count: int = 3
    extinguish_duration: int = 10  # consecutive interact-ticks
    episode_ticks: int = 500
    tick_hz: int = 5
    orders: OrderPolicy = field(default_factory=OrderPolicy)
    # when set, replaces the random order policy entirely (oracle tests)
    order_script: tuple[OrderScriptEntry, ...] | None = None

    def __post_init__(self):
        for name in ("cook_duration", "fire_delay", "chop_count", "extinguish_duration",
                     "episode_ticks", "tick_hz"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.order_script is not None:
            d["order_script"] = [asdict(e) for e in self.order_script]
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "GameConfig":
        data = dict(data)
        if "orders" in data and isinstance(data["orders"], dict):
            data["orders"] = OrderPolicy(**data["orders"])
        if data.get("order_script") is not None:
            data["order_script"] = tuple(OrderScriptEntry(**e) for e in data["order_script"])
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "GameConfig":
        return cls.from_dict(json.loads(text))
