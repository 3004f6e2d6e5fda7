#!/usr/bin/env python3
"""
Gaussian Naive Bayes: per-class priors with independent per-feature Gaussian
likelihoods, evaluated in log space.

Module Attributes:
  _BATCH_ROWS (int): Rows densified at a time when scoring sparse input.
  logger (Logger): Logger for this module.
"""
import dataclasses
import logging

import numpy as np
from scipy import sparse
from scipy.special import softmax

from clinical_notes_nlp import version
from clinical_notes_nlp.classifiers.classifier_meta import Classifier, \
        check_input_dim, check_training_data



_BATCH_ROWS = 256

logger = logging.getLogger(__name__)



@dataclasses.dataclass(frozen=True, eq=False)
class GNBModel:
    """
    Fitted Gaussian Naive Bayes parameters.  Row 0 is Negative, row 1 Positive.

    Instance Attributes:
      priors (ndarray): Class frequencies, shape (2,).
      mu (ndarray): Per-class feature means, shape (2, F).
      var (ndarray): Per-class feature variances after smoothing, shape (2, F).
    """
    priors: np.ndarray
    mu: np.ndarray
    var: np.ndarray



def gnb_fit(X, y, var_smoothing=1e-9):
    """
    Args:
      X ([SparseVector]/[DenseVector]/matrix): Training samples.
      y ([int]): Binary labels.
      var_smoothing (float): Fraction of the largest feature variance added to
        every variance.  Used as an absolute floor when all features are
        constant.

    Returns:
      (GNBModel): The fitted model.

    Raises:
      (LengthMismatchError): Different numbers of samples and labels.
      (SingleClassError): Only one class in `y`.
    """
    matrix, labels = check_training_data(X, y)
    if sparse.issparse(matrix):
        matrix = matrix.toarray()

    epsilon = var_smoothing * float(np.max(np.var(matrix, axis=0), initial=0))
    if epsilon <= 0:
        epsilon = var_smoothing

    priors = np.empty(2)
    mu = np.empty((2, matrix.shape[1]))
    var = np.empty((2, matrix.shape[1]))
    for cls in (0, 1):
        rows = matrix[labels == cls]
        priors[cls] = len(rows) / len(labels)
        mu[cls] = rows.mean(axis=0)
        var[cls] = rows.var(axis=0) + epsilon
    logger.debug('Gaussian NB fitted: priors %(p)s, smoothing %(e).3g',
            {'p': priors.tolist(), 'e': epsilon})
    return GNBModel(priors, mu, var)



def gnb_joint_log_likelihood(model, X):
    """
    Args:
      model (GNBModel): The fitted model.
      X ([SparseVector]/[DenseVector]/matrix): Samples.

    Returns:
      (ndarray): `log P(y) + sum_i log N(x_i; mu_y, var_y)`, shape (n, 2).

    Raises:
      (DimensionMismatchError): Feature count differs from the fit.
    """
    matrix = check_input_dim(X, model.mu.shape[1])
    log_norm = np.log(model.priors) \
            - 0.5 * np.sum(np.log(2.0 * np.pi * model.var), axis=1)
    out = np.empty((matrix.shape[0], 2))
    for start in range(0, matrix.shape[0], _BATCH_ROWS):
        batch = matrix[start:start + _BATCH_ROWS]
        if sparse.issparse(batch):
            batch = batch.toarray()
        for cls in (0, 1):
            out[start:start + len(batch), cls] = log_norm[cls] - 0.5 \
                    * np.sum((batch - model.mu[cls]) ** 2 / model.var[cls],
                    axis=1)
    return out



def gnb_predict_joint_proba(model, X):
    """
    Args:
      model (GNBModel): The fitted model.
      X ([SparseVector]/[DenseVector]/matrix): Samples.

    Returns:
      (ndarray): Posterior of (Negative, Positive) per sample, shape (n, 2).
    """
    return softmax(gnb_joint_log_likelihood(model, X), axis=1)



def gnb_predict_proba(model, X):
    """
    Args:
      model (GNBModel): The fitted model.
      X ([SparseVector]/[DenseVector]/matrix): Samples.

    Returns:
      (ndarray): Posterior of the Positive class per sample.
    """
    return gnb_predict_joint_proba(model, X)[:, 1]



class GaussianNB(Classifier):
    """
    Gaussian Naive Bayes classifier.

    Instance Attributes:
      _var_smoothing (float): Variance smoothing fraction.
    """
    DISPLAY_NAME = 'GaussianNB'



    def __init__(self, var_smoothing=1e-9, seed=1, **kwargs):
        super().__init__(seed, **kwargs)
        self._var_smoothing = var_smoothing



    @classmethod
    def get_model_type_names(cls):
        return ['gnb', 'gaussian-nb', 'naive-bayes']



    def fit(self, X, y):
        self._model = gnb_fit(X, y, self._var_smoothing)
        return self



    def predict_proba(self, X):
        return gnb_predict_proba(self._model, X)



    def _params_to_dict(self):
        return {'var_smoothing': self._var_smoothing,
                'priors': self._model.priors.tolist(),
                'mu': self._model.mu.tolist(),
                'var': self._model.var.tolist()}



    @classmethod
    def from_dict(cls, payload):
        version.check_artifact_version(payload, 'Model')
        clf = cls(payload['var_smoothing'])
        clf._model = GNBModel(np.asarray(payload['priors'], dtype=float),
                np.asarray(payload['mu'], dtype=float),
                np.asarray(payload['var'], dtype=float))
        return clf
