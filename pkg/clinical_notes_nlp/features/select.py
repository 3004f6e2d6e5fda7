#!/usr/bin/env python3
"""
Univariate feature scoring and top-K feature selection.

Chi-square suits the nonnegative count-like BoW/TF-IDF features; the one-way
ANOVA F statistic suits signed dense embedding features.

Module Attributes:
  DEFAULT_K (int): Upper bound of the default number of kept features.
  SCORERS ({str: func}): Scorer name to scoring function.
  logger (Logger): Logger for this module.
"""
import dataclasses
import logging

import numpy as np
from scipy import sparse

from clinical_notes_nlp import version
from clinical_notes_nlp.features.vectors import DenseVector, SparseVector, \
        as_matrix, unstack_sparse
from clinical_notes_nlp.general.exceptions import ClassTooSmallError, \
        DimensionMismatchError, KTooLargeError, KTooSmallError, \
        LengthMismatchError, NegativeFeatureError, SingleClassError



DEFAULT_K = 1000

logger = logging.getLogger(__name__)



def _check_labels(matrix, y):
    """
    Returns:
      (ndarray): `y` as an int array.

    Raises:
      (LengthMismatchError): Row count differs from label count.
      (SingleClassError): Fewer than 2 classes.
    """
    y = np.asarray(y, dtype=int)
    if matrix.shape[0] != len(y):
        raise LengthMismatchError(f'{matrix.shape[0]} samples but {len(y)}'
                + ' labels')
    if len(np.unique(y)) < 2:
        raise SingleClassError('Feature scoring needs both classes present')
    return y



def score_chi2(X, y):
    """
    Chi-square statistic between per-class feature sums and the sums expected
    under the class priors.

    Args:
      X ([SparseVector] or matrix): Nonnegative features.
      y ([int]): Binary labels.

    Returns:
      (ndarray): One score per feature; a feature with zero total scores 0.

    Raises:
      (NegativeFeatureError): A negative feature value.
      (LengthMismatchError): `X` and `y` differ in length.
      (SingleClassError): Only one class in `y`.
    """
    matrix = as_matrix(X)
    values = matrix.data if sparse.issparse(matrix) else matrix
    if np.any(values < 0):
        raise NegativeFeatureError('Chi-square scoring requires nonnegative'
                + ' features')
    y = _check_labels(matrix, y)

    onehot = np.column_stack([y == 0, y == 1]).astype(float)
    observed = np.asarray(matrix.T @ onehot).T
    feature_total = np.asarray(matrix.sum(axis=0)).ravel()
    expected = np.outer(onehot.mean(axis=0), feature_total)
    terms = np.divide((observed - expected) ** 2, expected,
            out=np.zeros_like(expected), where=expected > 0)
    return terms.sum(axis=0)



def score_f_classif(X, y):
    """
    One-way ANOVA F statistic per feature.

    Args:
      X ([DenseVector] or matrix): Features.
      y ([int]): Binary labels.

    Returns:
      (ndarray): One score per feature.  Zero within-class variance scores
        `inf` when the class means differ and 0 when they do not.

    Raises:
      (ClassTooSmallError): Fewer than 3 samples.
      (LengthMismatchError): `X` and `y` differ in length.
      (SingleClassError): Only one class in `y`.
    """
    matrix = as_matrix(X)
    if sparse.issparse(matrix):
        matrix = matrix.toarray()
    y = _check_labels(matrix, y)
    n_samples = len(y)
    if n_samples < 3:
        raise ClassTooSmallError('ANOVA F needs at least 3 samples, got'
                + f' {n_samples}')

    grand_mean = matrix.mean(axis=0)
    ss_between = np.zeros(matrix.shape[1])
    ss_within = np.zeros(matrix.shape[1])
    for cls in (0, 1):
        rows = matrix[y == cls]
        cls_mean = rows.mean(axis=0)
        ss_between += len(rows) * (cls_mean - grand_mean) ** 2
        ss_within += ((rows - cls_mean) ** 2).sum(axis=0)

    df_within = n_samples - 2
    scores = np.zeros(matrix.shape[1])
    varying = ss_within > 0
    scores[varying] = ss_between[varying] \
            / (ss_within[varying] / df_within)
    scores[~varying & (ss_between > 0)] = np.inf
    return scores



SCORERS = {
    'chi2': score_chi2,
    'f_classif': score_f_classif,
}



def default_k(input_dim):
    """
    Args:
      input_dim (int): Number of features.

    Returns:
      (int): `min(DEFAULT_K, input_dim)`.
    """
    return min(DEFAULT_K, input_dim)



def _n_rows(X):
    return X.shape[0] if hasattr(X, 'shape') else len(X)



def _reduce(X, kept):
    """
    Keep the columns `kept` of `X`, returned in the same form as given.
    """
    if isinstance(X, (list, tuple)) and not X:
        return []
    if isinstance(X, (list, tuple)) and X and isinstance(X[0], SparseVector):
        return unstack_sparse(as_matrix(X)[:, kept])
    if isinstance(X, (list, tuple)) and X and isinstance(X[0], DenseVector):
        return [DenseVector(v.values[kept]) for v in X]
    matrix = as_matrix(X)
    return matrix[:, kept]



@dataclasses.dataclass(frozen=True)
class SelectorModel:
    """
    The fitted top-K feature mapping.

    Instance Attributes:
      scores ((float)): Score of every input feature.
      kept_indices ((int)): Kept input features, ascending.
      input_dim (int): Number of input features.
    """
    scores: tuple
    kept_indices: tuple
    input_dim: int



    @property
    def k(self):
        """
        Returns:
          (int): Number of kept features.
        """
        return len(self.kept_indices)



    def transform(self, X):
        """
        Args:
          X ([SparseVector]/[DenseVector]/matrix): Samples in the input space.

        Returns:
          ([SparseVector]/[DenseVector]/matrix): Same form, column j equal to
            input column `kept_indices[j]`.

        Raises:
          (DimensionMismatchError): Input dimension differs from the fit.
        """
        dim = as_matrix(X).shape[1] if _n_rows(X) else self.input_dim
        if dim != self.input_dim:
            raise DimensionMismatchError(f'Selector fitted on {self.input_dim}'
                    + f' features, got {dim}')
        return _reduce(X, list(self.kept_indices))



    def to_dict(self):
        """
        Returns:
          ({str: *}): The versioned artifact
            `{version, input_dim, k, kept_indices, scores}`.
        """
        return version.stamp_artifact({
            'input_dim': self.input_dim,
            'k': self.k,
            'kept_indices': list(self.kept_indices),
            'scores': list(self.scores),
        })



    @classmethod
    def from_dict(cls, payload):
        """
        Args:
          payload ({str: *}): Output of `to_dict()`.

        Returns:
          (SelectorModel): The model.

        Raises:
          (VersionMismatchError): Incompatible artifact.
        """
        version.check_artifact_version(payload, 'SelectorModel')
        return cls(tuple(float(s) for s in payload['scores']),
                tuple(int(i) for i in payload['kept_indices']),
                int(payload['input_dim']))



def select_k_best(X, scores, k):
    """
    Keep the `k` top-scoring features.  Ties go to the lower index and NaN
    scores rank below everything.

    Args:
      X ([SparseVector]/[DenseVector]/matrix): Training samples.
      scores ([float]): One score per feature.
      k (int): Number of features to keep.

    Returns:
      ([SparseVector]/[DenseVector]/matrix): `X` reduced to the kept features,
        re-indexed densely in original relative order.
      (SelectorModel): The fitted mapping.

    Raises:
      (KTooSmallError): `k` < 1.
      (KTooLargeError): `k` > number of features.
      (DimensionMismatchError): `scores` does not match the feature count.
    """
    scores = np.asarray(scores, dtype=float)
    input_dim = len(scores)
    if _n_rows(X) and as_matrix(X).shape[1] != input_dim:
        raise DimensionMismatchError(f'{len(scores)} scores for'
                + f' {as_matrix(X).shape[1]} features')
    if k < 1:
        raise KTooSmallError(f'k must be >= 1, got {k}')
    if k > input_dim:
        raise KTooLargeError(f'k={k} exceeds the {input_dim} available'
                + ' features')

    ranked = np.where(np.isnan(scores), -np.inf, scores)
    order = np.lexsort((np.arange(input_dim), -ranked))
    kept = tuple(sorted(int(i) for i in order[:k]))
    model = SelectorModel(tuple(float(s) for s in scores), kept, input_dim)
    logger.debug('Kept %(k)s of %(d)s features', {'k': k, 'd': input_dim})
    return model.transform(X), model
