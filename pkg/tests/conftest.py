from __future__ import annotations

import pytest

from geoscript.corpus import load_source
from geoscript.graph import ConstructionGraph
from geoscript.settings import Settings

ACCEPTANCE_LINES: list[str] = []


def build(source: str, settings: Settings | None = None) -> ConstructionGraph:
    return ConstructionGraph.from_script(source, settings)


@pytest.fixture
def corpus_graph():
    def make(name: str, settings: Settings | None = None) -> ConstructionGraph:
        return ConstructionGraph.from_script(load_source(name), settings, f"{name}.ggs")

    return make


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
