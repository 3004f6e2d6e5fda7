#!/usr/bin/env python3
"""
The abstract base of all binary classifiers, plus the input checks every
classifier shares.

Module Attributes:
  logger (Logger): Logger for this module.
"""
from abc import ABC, abstractmethod
import logging

import numpy as np

from clinical_notes_nlp import version
from clinical_notes_nlp.features.vectors import as_matrix
from clinical_notes_nlp.general.exceptions import DimensionMismatchError, \
        LengthMismatchError, SingleClassError



logger = logging.getLogger(__name__)



def check_training_data(X, y):
    """
    Coerce and validate training inputs.

    Args:
      X ([SparseVector]/[DenseVector]/matrix): Samples.
      y ([int]): Binary labels, 1 for Positive.

    Returns:
      (csr_matrix or ndarray): Samples as a matrix.
      (ndarray): Labels as a float array.

    Raises:
      (LengthMismatchError): Different numbers of samples and labels.
      (SingleClassError): Fewer than 2 classes present.
    """
    matrix = as_matrix(X)
    labels = np.asarray(y, dtype=float).ravel()
    if matrix.shape[0] != len(labels):
        raise LengthMismatchError(f'{matrix.shape[0]} samples but'
                + f' {len(labels)} labels')
    if len(np.unique(labels)) < 2:
        raise SingleClassError('Training data must contain both classes')
    return matrix, labels



def check_input_dim(X, expected_dim):
    """
    Args:
      X ([SparseVector]/[DenseVector]/matrix): Samples.
      expected_dim (int): Feature count the model was fitted on.

    Returns:
      (csr_matrix or ndarray): Samples as a matrix.

    Raises:
      (DimensionMismatchError): Feature count differs.
    """
    matrix = as_matrix(X)
    if matrix.shape[1] != expected_dim:
        raise DimensionMismatchError(f'Model expects {expected_dim} features,'
                + f' got {matrix.shape[1]}')
    return matrix



class Classifier(ABC):
    """
    The abstract class for all classifiers.  Each classifier type subclasses
    this, but externally only the generic methods defined here are called.

    This serves as a base class for other classifiers, so will consume any
    final kwargs.

    Class Attributes:
      DISPLAY_NAME (str): Name used in reports.

    Instance Attributes:
      _seed (int): Seed for any randomness in fitting.
      _model (LRModel/GNBModel/MLPModel or None): Fitted parameters; None
        until fitted.
    """
    DISPLAY_NAME = None



    def __init__(self, seed=1, **kwargs):
        """
        Args:
          seed (int): Seed for any randomness in fitting.
          kwargs ({}): Should be empty since this is the base class.  Will log
            warning if not empty.
        """
        self._seed = seed
        self._model = None

        if kwargs:
            logger.warning('Discarded excess kwargs provided to'
                    + f' {self.__class__.__name__}: {", ".join(kwargs.keys())}')



    @classmethod
    @abstractmethod
    def get_model_type_names(cls):
        """
        Get the list of names that can be used on the command line or in config
        to identify this classifier.

        Returns:
          ([str]): Valid names; the first is canonical.
        """



    @property
    def name(self):
        """
        Returns:
          (str): Canonical name of this classifier.
        """
        return self.get_model_type_names()[0]



    @property
    def model(self):
        """
        Returns:
          (LRModel/GNBModel/MLPModel or None): The fitted parameters.
        """
        return self._model



    def is_fitted(self):
        """
        Returns:
          (bool): True once `fit()` completed.
        """
        return self._model is not None



    @abstractmethod
    def fit(self, X, y):
        """
        Args:
          X ([SparseVector]/[DenseVector]/matrix): Training samples.
          y ([int]): Binary labels, 1 for Positive.

        Returns:
          (Classifier<>): self.
        """



    @abstractmethod
    def predict_proba(self, X):
        """
        Args:
          X ([SparseVector]/[DenseVector]/matrix): Samples.

        Returns:
          (ndarray): Probability of the Positive class per sample.
        """



    def predict(self, X, threshold=0.5):
        """
        Args:
          X ([SparseVector]/[DenseVector]/matrix): Samples.
          threshold (float): Positive iff probability >= threshold.

        Returns:
          (ndarray): Binary predictions, 1 for Positive.
        """
        return (self.predict_proba(X) >= threshold).astype(int)



    @abstractmethod
    def _params_to_dict(self):
        """
        Returns:
          ({str: *}): Hyperparameters and fitted parameters, JSON-ready.
        """



    def to_dict(self):
        """
        Returns:
          ({str: *}): The versioned artifact with a `model_type` discriminator.
        """
        return version.stamp_artifact({'model_type': self.name,
                **self._params_to_dict()})



    @classmethod
    @abstractmethod
    def from_dict(cls, payload):
        """
        Args:
          payload ({str: *}): Output of `to_dict()`.

        Returns:
          (Classifier<>): The fitted classifier.

        Raises:
          (VersionMismatchError): Incompatible artifact.
        """
