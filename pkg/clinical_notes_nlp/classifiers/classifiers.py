#!/usr/bin/env python3
"""
The classifiers API module.  This is intended to be the item accessed outside
of the classifiers subpackage.

Module Attributes:
  logger (Logger): Logger for this module.
  _CLASSIFIERS ((Class<Classifier<>>)): All classifier classes supported, in
    report order.
"""
import logging

from clinical_notes_nlp.classifiers import gaussian_nb, logistic_regression, \
        mlp
from clinical_notes_nlp.data.corpus import Label
from clinical_notes_nlp.features.vectors import as_row
from clinical_notes_nlp.general.exceptions import InvalidConfigError



logger = logging.getLogger(__name__)

_CLASSIFIERS = (
    logistic_regression.LogisticRegression,
    gaussian_nb.GaussianNB,
    mlp.MLP,
)



def list_model_names():
    """
    Returns:
      ([str]): Canonical name of every classifier, in report order.
    """
    return [clf_cls.get_model_type_names()[0] for clf_cls in _CLASSIFIERS]



def get_model_cls(name):
    """
    Args:
      name (str): Any name a classifier answers to.

    Returns:
      (Class<Classifier<>>): The matching class.

    Raises:
      (InvalidConfigError): No classifier matches.
    """
    for clf_cls in _CLASSIFIERS:
        if name in clf_cls.get_model_type_names():
            return clf_cls
    raise InvalidConfigError(f'Unknown model type "{name}"')



def create_model(name, **params):
    """
    Args:
      name (str): Classifier name.
      params ({str: *}): Constructor kwargs.

    Returns:
      (Classifier<>): An unfitted classifier.
    """
    return get_model_cls(name)(**params)



def load_model(payload):
    """
    Args:
      payload ({str: *}): Output of a classifier's `to_dict()`.

    Returns:
      (Classifier<>): The fitted classifier.

    Raises:
      (InvalidConfigError): Unknown `model_type`.
      (VersionMismatchError): Incompatible artifact.
    """
    return get_model_cls(payload.get('model_type')).from_dict(payload)



def predict(model, x, threshold=0.5):
    """
    Label a single sample.

    Args:
      model (Classifier<>): A fitted classifier.
      x (SparseVector/DenseVector/array-like): The sample.
      threshold (float): Positive iff probability >= threshold.

    Returns:
      (Label): Positive or Negative.

    Raises:
      (DimensionMismatchError): Feature count differs from the fit.
    """
    proba = float(model.predict_proba(as_row(x))[0])
    return Label.POSITIVE if proba >= threshold else Label.NEGATIVE
