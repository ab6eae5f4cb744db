from __future__ import annotations

import logging

import pytest

from threshold_pst.threshold import BlockForm
from threshold_pst.utils.i18n import set_locale


@pytest.fixture(autouse=True)
def english_messages():
    set_locale("en")
    yield
    set_locale("en")


@pytest.fixture(autouse=True)
def restore_root_logger():
    """main() 會重設 root handlers；每個測試結束後還原。"""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in root.handlers:
        if handler not in handlers:
            handler.close()
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def pst_forms() -> list[BlockForm]:
    return [BlockForm.from_canonical(b) for b in [(2, 2), (2, 6), (2, 6, 4, 4), (2, 2, 4, 4), (2, 10)]]
