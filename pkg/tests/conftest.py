from __future__ import annotations

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest  # noqa: E402
from hypothesis import HealthCheck, settings  # noqa: E402

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _default_cap(monkeypatch):
    # the CLI writes the cap into the group module; restore it after each test
    import spaceforms.group as group_mod

    monkeypatch.delenv("SPACEFORM_MAX_ORDER", raising=False)
    monkeypatch.setattr(group_mod, "MAX_TABLE_ORDER", group_mod.MAX_TABLE_ORDER)
