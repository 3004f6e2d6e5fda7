#!/usr/bin/env python3
"""
L2-regularized logistic regression with a bias term, fitted by full-batch
gradient descent on the mean negative log-likelihood.

Module Attributes:
  logger (Logger): Logger for this module.
"""
import dataclasses
import logging

import numpy as np
from scipy.special import expit

from clinical_notes_nlp import version
from clinical_notes_nlp.classifiers.classifier_meta import Classifier, \
        check_input_dim, check_training_data



logger = logging.getLogger(__name__)



@dataclasses.dataclass(frozen=True, eq=False)
class LRModel:
    """
    Fitted logistic regression parameters.

    Instance Attributes:
      w (ndarray): Weight per feature.
      b (float): Bias.
      l2 (float): Regularization strength used in fitting.
      history ((float)): Training loss before each epoch and after the last.
    """
    w: np.ndarray
    b: float = 0.0
    l2: float = 0.0
    history: tuple = ()



def lr_loss_and_grad(w, b, X, y, l2):
    """
    Regularized mean negative log-likelihood and its gradient.

    Args:
      w (ndarray): Weights.
      b (float): Bias.
      X (csr_matrix or ndarray): Samples.
      y (ndarray): Binary labels.
      l2 (float): Regularization strength; the bias is not regularized.

    Returns:
      (float): The loss.
      (ndarray): Gradient w.r.t. `w`.
      (float): Gradient w.r.t. `b`.
    """
    z = np.asarray(X @ w).ravel() + b
    loss = np.mean(np.logaddexp(0, z) - y * z) + 0.5 * l2 * np.dot(w, w)
    residual = expit(z) - y
    grad_w = np.asarray(X.T @ residual).ravel() / len(y) + l2 * w
    return float(loss), grad_w, float(residual.mean())



def lr_fit(X, y, l2=1e-4, lr=0.01, epochs=500, seed=1):
    """
    Args:
      X ([SparseVector]/[DenseVector]/matrix): Training samples.
      y ([int]): Binary labels.
      l2 (float): Regularization strength >= 0.
      lr (float): Step size > 0.
      epochs (int): Gradient steps.
      seed (int): Accepted for a uniform fit interface; weights start at 0.

    Returns:
      (LRModel): The fitted model.

    Raises:
      (LengthMismatchError): Different numbers of samples and labels.
      (SingleClassError): Only one class in `y`.
    """
    del seed
    matrix, labels = check_training_data(X, y)
    w = np.zeros(matrix.shape[1])
    b = 0.0
    history = []
    for _ in range(epochs):
        loss, grad_w, grad_b = lr_loss_and_grad(w, b, matrix, labels, l2)
        history.append(loss)
        w = w - lr * grad_w
        b = b - lr * grad_b
    history.append(lr_loss_and_grad(w, b, matrix, labels, l2)[0])
    logger.debug('Logistic regression loss %(first).6f -> %(last).6f over'
            ' %(n)s epochs', {'first': history[0], 'last': history[-1],
            'n': epochs})
    return LRModel(w, b, l2, tuple(history))



def lr_predict_proba(model, X):
    """
    Args:
      model (LRModel): The fitted model.
      X ([SparseVector]/[DenseVector]/matrix): Samples.

    Returns:
      (ndarray): `1 / (1 + exp(-(w.x + b)))` per sample.

    Raises:
      (DimensionMismatchError): Feature count differs from `w`.
    """
    matrix = check_input_dim(X, len(model.w))
    return expit(np.asarray(matrix @ model.w).ravel() + model.b)



class LogisticRegression(Classifier):
    """
    Logistic regression classifier.

    Instance Attributes:
      _l2 (float): Regularization strength.
      _lr (float): Step size.
      _epochs (int): Gradient steps.
    """
    DISPLAY_NAME = 'LR'



    def __init__(self, l2=1e-4, lr=0.01, epochs=500, seed=1, **kwargs):
        super().__init__(seed, **kwargs)
        self._l2 = l2
        self._lr = lr
        self._epochs = epochs



    @classmethod
    def get_model_type_names(cls):
        return ['lr', 'logistic-regression']



    def fit(self, X, y):
        self._model = lr_fit(X, y, self._l2, self._lr, self._epochs,
                self._seed)
        return self



    def predict_proba(self, X):
        return lr_predict_proba(self._model, X)



    def loss_and_grad(self, w, b, X, y):
        """
        Args:
          w (ndarray): Weights.
          b (float): Bias.
          X ([SparseVector]/[DenseVector]/matrix): Samples.
          y ([int]): Binary labels.

        Returns:
          (float): Loss under this classifier's regularization.
          (ndarray): Gradient w.r.t. `w`.
          (float): Gradient w.r.t. `b`.
        """
        matrix, labels = check_training_data(X, y)
        return lr_loss_and_grad(np.asarray(w, dtype=float), b, matrix, labels,
                self._l2)



    def _params_to_dict(self):
        return {'l2': self._l2, 'lr': self._lr, 'epochs': self._epochs,
                'w': self._model.w.tolist(), 'b': self._model.b}



    @classmethod
    def from_dict(cls, payload):
        version.check_artifact_version(payload, 'Model')
        clf = cls(payload['l2'], payload['lr'], payload['epochs'])
        clf._model = LRModel(np.asarray(payload['w'], dtype=float),
                float(payload['b']), payload['l2'])
        return clf
