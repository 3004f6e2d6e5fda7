#!/usr/bin/env python3
"""
Tests the clinical_notes_nlp.__main__ functionality.

Per [pytest](https://docs.pytest.org/en/reorganize-docs/new-docs/user/naming_conventions.html),
all tiles, classes, and methods will be prefaced with `test_/Test` to comply
with auto-discovery (others may exist, but will not be part of test suite
directly).

Module Attributes:
  N/A
"""
import runpy
import sys

import pytest

from clinical_notes_nlp import main



def test_run_as_module(monkeypatch, capsys):
    """
    Tests that `python -m clinical_notes_nlp` reaches the CLI parser.
    """
    monkeypatch.setattr(main, '_register_shutdown_signals', lambda: None)
    monkeypatch.setattr(sys, 'argv', ['clinical_notes_nlp', '--version'])
    with pytest.raises(SystemExit) as ex:
        runpy.run_module('clinical_notes_nlp', run_name='__main__')
    assert ex.value.code == 0
    assert capsys.readouterr().out.startswith('clinical_notes_nlp v')
