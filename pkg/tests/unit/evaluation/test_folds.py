#!/usr/bin/env python3
"""
Tests the clinical_notes_nlp.evaluation.folds functionality.

Per [pytest](https://docs.pytest.org/en/reorganize-docs/new-docs/user/naming_conventions.html),
all tiles, classes, and methods will be prefaced with `test_/Test` to comply
with auto-discovery (others may exist, but will not be part of test suite
directly).

Module Attributes:
  N/A
"""
import pytest

from clinical_notes_nlp.evaluation import folds as folds_mod
from clinical_notes_nlp.general.exceptions import ClassTooSmallError, \
        KTooLargeError, KTooSmallError, LengthMismatchError



def _assert_partition(folds, n_samples):
    """
    Every index is held out exactly once and never trained on in its own fold.
    """
    held_out = sorted(i for _, test in folds for i in test)
    assert held_out == list(range(n_samples))
    for train, test in folds:
        assert not set(train) & set(test)
        assert sorted(train + test) == list(range(n_samples))



def test_kfold_split_sizes():
    """
    Tests the `kfold_split()` method's fold sizes.
    """
    labels = [0, 1] * 5
    folds = folds_mod.kfold_split(labels, 5, seed=1, stratified=False)
    assert folds.sizes() == [2] * 5
    _assert_partition(folds, 10)

    folds = folds_mod.kfold_split(labels, 3, seed=1, stratified=False)
    assert sorted(folds.sizes()) == [3, 3, 4]
    _assert_partition(folds, 10)

    folds = folds_mod.kfold_split(labels, 3, seed=1)
    assert sorted(folds.sizes()) == [3, 3, 4]



def test_kfold_split_stratified():
    """
    Tests the `kfold_split()` method balances positives across folds.
    """
    labels = [1] * 6 + [0] * 6
    for seed in range(5):
        folds = folds_mod.kfold_split(labels, 3, seed)
        for fold in range(3):
            test = folds.test_indices(fold)
            assert sum(labels[i] for i in test) == 2
            assert len(test) == 4
        _assert_partition(folds, 12)

    labels = [1] * 7 + [0] * 13
    folds = folds_mod.kfold_split(labels, 4, seed=2)
    positives = [sum(labels[i] for i in folds.test_indices(f))
            for f in range(4)]
    assert max(positives) - min(positives) <= 1



def test_kfold_split_deterministic():
    """
    Tests the `kfold_split()` method depends only on its seed.
    """
    labels = [0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1]
    assert folds_mod.kfold_split(labels, 3, 7) \
            == folds_mod.kfold_split(labels, 3, 7)
    assert any(folds_mod.kfold_split(labels, 3, 7)
            != folds_mod.kfold_split(labels, 3, seed) for seed in range(8, 12))



def test_kfold_split_groups():
    """
    Tests the `kfold_split()` method keeps every group in a single fold.
    """
    groups = [g for g in range(8) for _ in range(3)]
    labels = [g % 2 for g in groups]
    folds = folds_mod.kfold_split(labels, 4, seed=3, groups=groups)
    _assert_partition(folds, 24)
    for g in range(8):
        assert len({folds.assignments[i] for i, grp in enumerate(groups)
                if grp == g}) == 1
    assert folds.sizes() == [6] * 4
    for fold in range(4):
        assert sum(labels[i] for i in folds.test_indices(fold)) == 3

    groups = ['a', 'a', 'a', 'a', 'b', 'c', 'd']
    labels = [1, 0, 1, 0, 1, 0, 1]
    folds = folds_mod.kfold_split(labels, 2, seed=0, groups=groups,
            stratified=False)
    assert len({folds.assignments[i] for i in range(4)}) == 1
    assert sorted(folds.sizes()) == [3, 4]



def test_kfold_split_errors():
    """
    Tests the `kfold_split()` method's errors.
    """
    labels = [0, 1] * 3
    with pytest.raises(KTooSmallError):
        folds_mod.kfold_split(labels, 1, 1)
    with pytest.raises(KTooLargeError):
        folds_mod.kfold_split(labels, 7, 1, stratified=False)
    with pytest.raises(ClassTooSmallError):
        folds_mod.kfold_split([1, 0, 0, 0, 0, 0], 2, 1)
    with pytest.raises(LengthMismatchError):
        folds_mod.kfold_split(labels, 2, 1, groups=[0, 1])
    with pytest.raises(KTooLargeError):
        folds_mod.kfold_split(labels, 3, 1, groups=[0, 0, 0, 1, 1, 1])
