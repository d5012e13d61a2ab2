import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))


def pytest_collection_modifyitems(config, items):
    if os.environ.get("HWPOLY_STRETCH") == "1":
        return
    skip = pytest.mark.skip(reason="stretch run disabled (set HWPOLY_STRETCH=1)")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)
