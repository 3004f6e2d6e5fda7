#!/usr/bin/env python3
"""
Tests the clinical_notes_nlp.general.utils functionality.

Per [pytest](https://docs.pytest.org/en/reorganize-docs/new-docs/user/naming_conventions.html),
all tiles, classes, and methods will be prefaced with `test_/Test` to comply
with auto-discovery (others may exist, but will not be part of test suite
directly).

Module Attributes:
  N/A
"""
import os.path

import pytest

from clinical_notes_nlp.general import utils



def test_derive_seed():
    """
    Tests the `derive_seed()` method.
    """
    seed = utils.derive_seed(1, 'tfidf', 'mlp', 'with', 3)
    assert seed == utils.derive_seed(1, 'tfidf', 'mlp', 'with', 3)
    assert 0 <= seed < 2**63
    assert seed != utils.derive_seed(2, 'tfidf', 'mlp', 'with', 3)
    assert seed != utils.derive_seed(1, 'tfidf', 'mlp', 'without', 3)
    assert seed != utils.derive_seed(1, 'tfidf', 'mlp', 'with', 4)
    assert utils.derive_seed(1) != utils.derive_seed(1, 'bow')
    # Parts are keyed on their string form
    assert utils.derive_seed(7, 'bow') == utils.derive_seed('7', 'bow')



def test_hours_between():
    """
    Tests the `hours_between()` method.
    """
    assert utils.hours_between('2021-01-01T00:00', '2021-01-01T06:30') == 6.5
    assert utils.hours_between('2021-01-02T00:00', '2021-01-01T00:00') == -24.0
    assert utils.hours_between('2021-01-01T00:00+01:00',
            '2021-01-01T00:00+00:00') == 1.0

    with pytest.raises(ValueError):
        utils.hours_between('yesterday', '2021-01-01T00:00')

    with pytest.raises(ValueError) as ex:
        utils.hours_between('2021-01-01T00:00+01:00', '2021-01-01T00:00')
    assert 'timezone-aware and naive' in str(ex.value)



def test_write_text_file(tmp_path):
    """
    Tests the `write_text_file()` method.
    """
    path = os.path.join(tmp_path, 'nested', 'dir', 'out.csv')
    utils.write_text_file(path, 'a,b\n1,2\n')
    with open(path, encoding='utf_8', newline='') as file:
        assert file.read() == 'a,b\n1,2\n'

    utils.write_text_file(path, 'é\n')
    with open(path, 'rb') as file:
        assert file.read() == 'é\n'.encode('utf-8')
