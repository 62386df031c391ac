from __future__ import annotations

import pytest

from seifert_skein.seifert import SeifertData, normalize


@pytest.fixture
def sigma235() -> SeifertData:
    return SeifertData(((2, 1), (3, -1), (5, -1)))


@pytest.fixture
def sigma235_normalized(sigma235) -> SeifertData:
    return normalize(sigma235)


@pytest.fixture
def m333() -> SeifertData:
    return SeifertData(((3, 1), (3, 1), (3, 1)))
