"""The history summarizer's output is frozen against a golden fixture."""

from pathlib import Path

from coopkitchen.agent.comm import CommCondition
from coopkitchen.agent.history import summarize_history
from coopkitchen.session import SessionConfig, SessionRunner

GOLDEN = Path(__file__).parent / "golden_summary.txt"


def test_full_episode_summary_matches_golden():
    config = SessionConfig(
        comm_condition=CommCondition.BI_COMM, tom_enabled=True, seed=8,
        human_source={"type": "random", "seed": 3},
    )
    runner = SessionRunner(config)
    runner.run()
    text = summarize_history(runner.controller.history)
    assert text == GOLDEN.read_text()


def test_summary_sections_present():
    text = GOLDEN.read_text()
    assert text.startswith("Earlier (ticks 0-")
    assert "Recent ticks " in text
    assert text.rstrip().splitlines()[-1].startswith("Now: ")
