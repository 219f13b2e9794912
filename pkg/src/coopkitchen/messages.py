"""The fixed catalog of human message templates (ids 1..11).

Seven item requests, two situation calls, two emotion reactions. Item and
situation messages map to a macro the agent adopts immediately; emotion
messages carry no direct task content (they still feed belief inference).
"""

from __future__ import annotations

from dataclasses import dataclass

TEMPLATES: dict[int, str] = {
    1: "We need Bread",
    2: "We need Beef",
    3: "We need Lettuce",
    4: "We need Plate",
    5: "We need LettuceBurger",
    6: "We need BeefBurger",
    7: "We need BeefLettuceBurger",
    8: "Put out the fire!",
    9: "Take the beef off the pan!",
    10: "Good Job",
    11: "Need Improved",
}

# template id -> macro text handed to the policy layer (None: no direct macro)
TEMPLATE_MACROS: dict[int, str | None] = {
    1: "PassOn(Bread)",
    2: "Prepare(Beef)",
    3: "Prepare(Lettuce)",
    4: "PassOn(Plate)",
    5: "Assemble(LettuceBurger)",
    6: "Assemble(BeefBurger)",
    7: "Assemble(BeefLettuceBurger)",
    8: "PutoutFire",
    9: None,  # resolved against active orders, see macro_for_template
    10: None,
    11: None,
}


@dataclass(frozen=True)
class HumanMessage:
    tick: int
    template_id: int
    text: str


def render_template(template_id: int, tick: int) -> HumanMessage:
    if template_id not in TEMPLATES:
        raise ValueError(f"unknown message template {template_id}")
    return HumanMessage(tick=tick, template_id=template_id, text=TEMPLATES[template_id])


def macro_for_template(template_id: int, state) -> str | None:
    """Macro text the agent adopts on receiving the message, if any."""
    if template_id == 9:
        # plating the beef happens inside assembling a beef order
        from .env.items import BurgerKind, Ingredient, RECIPES

        beef_orders = [o for o in state.orders if Ingredient.BEEF in RECIPES[o.kind]]
        if beef_orders:
            kind = min(beef_orders, key=lambda o: (o.deadline_tick, o.id)).kind
            return f"Assemble({kind.value})"
        return f"Assemble({BurgerKind.BEEF_BURGER.value})"
    return TEMPLATE_MACROS.get(template_id)
