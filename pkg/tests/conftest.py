"""Shared test fixtures for torus_skein tests."""

import random
from collections.abc import Callable
from pathlib import Path

import pytest

from tests.diagrams import KINK, corpus
from torus_skein.models.diagram import TorusDiagram


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(20260217)


@pytest.fixture(scope="session")
def diagram_corpus() -> dict[str, TorusDiagram]:
    return corpus()


@pytest.fixture()
def kink() -> TorusDiagram:
    return KINK


@pytest.fixture()
def write_diagram(tmp_path: Path) -> Callable[[str, str], Path]:
    def write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write
