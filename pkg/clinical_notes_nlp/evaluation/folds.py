#!/usr/bin/env python3
"""
K-fold partitions for cross-validation, optionally stratified by class and
optionally keeping groups of samples (patient/provider components) together.

Module Attributes:
  logger (Logger): Logger for this module.
"""
import dataclasses
import logging

import numpy as np

from clinical_notes_nlp.general.exceptions import ClassTooSmallError, \
        KTooLargeError, KTooSmallError, LengthMismatchError



logger = logging.getLogger(__name__)



@dataclasses.dataclass(frozen=True)
class Folds:
    """
    A partition of sample indices into `k` folds.

    Instance Attributes:
      k (int): Number of folds.
      assignments ((int)): Fold id in [0, k) of every sample.
    """
    k: int
    assignments: tuple



    def test_indices(self, fold):
        """
        Args:
          fold (int): Fold id.

        Returns:
          ([int]): Samples held out in `fold`, ascending.
        """
        return [i for i, f in enumerate(self.assignments) if f == fold]



    def train_indices(self, fold):
        """
        Args:
          fold (int): Fold id.

        Returns:
          ([int]): Samples trained on for `fold`, ascending.
        """
        return [i for i, f in enumerate(self.assignments) if f != fold]



    def sizes(self):
        """
        Returns:
          ([int]): Number of samples in each fold.
        """
        return [self.assignments.count(f) for f in range(self.k)]



    def __iter__(self):
        """
        Yields:
          (([int], [int])): (train indices, test indices) per fold.
        """
        for fold in range(self.k):
            yield self.train_indices(fold), self.test_indices(fold)



def _assign_groups(labels, groups, k, rng, stratified):
    """
    Greedily place whole groups, largest first, into the fold whose per-class
    counts grow least relative to the class totals; ties go to the smaller
    fold, then the lower fold id.

    Returns:
      ([int]): Fold id per sample.
    """
    group_ids = list(dict.fromkeys(groups))
    members = {g: [] for g in group_ids}
    for i, g in enumerate(groups):
        members[g].append(i)

    classes = (0, 1) if stratified else (None,)
    def class_count(idx, cls):
        return len(idx) if cls is None else sum(labels[i] == cls for i in idx)
    totals = [max(1, class_count(range(len(labels)), c)) for c in classes]

    shuffled = [group_ids[i] for i in rng.permutation(len(group_ids))]
    ordered = sorted(shuffled, key=lambda g: -len(members[g]))

    fold_counts = np.zeros((k, len(classes)))
    fold_sizes = np.zeros(k, dtype=int)
    assignments = [0] * len(labels)
    for g in ordered:
        adds = np.array([class_count(members[g], c) for c in classes])
        costs = fold_counts @ (adds / np.square(totals))
        fold = min(range(k), key=lambda f, c=costs: (c[f], fold_sizes[f], f))
        fold_counts[fold] += adds
        fold_sizes[fold] += len(members[g])
        for i in members[g]:
            assignments[i] = fold
    return assignments



def kfold_split(labels, k, seed, stratified=True, groups=None):
    """
    Partition samples into `k` folds.

    Without `groups`, fold sizes differ by at most 1 and, when stratified, so
    do per-fold positive counts.  With `groups`, every group lands in a single
    fold and balance is best-effort.

    Args:
      labels ([int]): Binary label per sample.
      k (int): Number of folds.
      seed (int): Shuffle seed.
      stratified (bool): Whether to balance classes across folds.
      groups ([hashable] or None): Group of every sample.

    Returns:
      (Folds): The partition.

    Raises:
      (KTooSmallError): `k` < 2.
      (KTooLargeError): `k` exceeds the sample (or group) count.
      (ClassTooSmallError): Stratified and a class has fewer than `k` samples.
      (LengthMismatchError): `groups` length differs from `labels`.
    """
    labels = [int(y) for y in labels]
    n_samples = len(labels)
    if k < 2:
        raise KTooSmallError(f'k must be >= 2, got {k}')
    if k > n_samples:
        raise KTooLargeError(f'k={k} exceeds the {n_samples} samples')
    if stratified:
        for cls in (0, 1):
            count = labels.count(cls)
            if count < k:
                raise ClassTooSmallError(f'Class {cls} has {count} samples,'
                        + f' fewer than k={k}')

    rng = np.random.default_rng(seed)
    if groups is not None:
        if len(groups) != n_samples:
            raise LengthMismatchError(f'{len(groups)} groups for {n_samples}'
                    + ' samples')
        n_groups = len(set(groups))
        if k > n_groups:
            raise KTooLargeError(f'k={k} exceeds the {n_groups} groups')
        folds = Folds(k, tuple(_assign_groups(labels, list(groups), k, rng,
                stratified)))
    else:
        if stratified:
            pos = [i for i, y in enumerate(labels) if y == 1]
            neg = [i for i, y in enumerate(labels) if y != 1]
            order = [pos[i] for i in rng.permutation(len(pos))] \
                    + [neg[i] for i in rng.permutation(len(neg))]
        else:
            order = [int(i) for i in rng.permutation(n_samples)]
        assignments = [0] * n_samples
        for position, idx in enumerate(order):
            assignments[idx] = position % k
        folds = Folds(k, tuple(assignments))

    logger.debug('Fold sizes: %(sizes)s', {'sizes': folds.sizes()})
    return folds
