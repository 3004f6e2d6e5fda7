#!/usr/bin/env python3
"""
Multilayer perceptron with ReLU hidden layers and a sigmoid output unit, fitted
by mini-batch SGD with backpropagation on the mean binary cross-entropy.

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
from clinical_notes_nlp.general.exceptions import InvalidArchitectureError, \
        InvalidConfigError



logger = logging.getLogger(__name__)



@dataclasses.dataclass(frozen=True, eq=False)
class MLPModel:
    """
    Fitted network parameters.  Layer `l` maps `weights[l].shape[0]` inputs to
    `weights[l].shape[1]` outputs; the last layer has a single output.

    Instance Attributes:
      weights ((ndarray)): Weight matrix per layer.
      biases ((ndarray)): Bias vector per layer.
    """
    weights: tuple
    biases: tuple



    def __post_init__(self):
        if len(self.weights) != len(self.biases) or not self.weights:
            raise InvalidArchitectureError('One bias vector per weight matrix'
                    + ' is required')
        for w_in, w_out in zip(self.weights, self.weights[1:]):
            if w_in.shape[1] != w_out.shape[0]:
                raise InvalidArchitectureError('Incompatible layer shapes'
                        + f' {w_in.shape} and {w_out.shape}')
        for w, b in zip(self.weights, self.biases):
            if b.shape != (w.shape[1],):
                raise InvalidArchitectureError(f'Bias of shape {b.shape} for'
                        + f' weights of shape {w.shape}')
        if self.weights[-1].shape[1] != 1:
            raise InvalidArchitectureError('Output layer must have 1 unit')



    @property
    def layer_sizes(self):
        """
        Returns:
          ([int]): `[in, h1, ..., 1]`.
        """
        return [self.weights[0].shape[0]] + [w.shape[1] for w in self.weights]



def relu(z):
    """
    Args:
      z (ndarray): Preactivations.

    Returns:
      (ndarray): `max(z, 0)` elementwise.
    """
    return np.maximum(z, 0.0)



def init_params(layer_sizes, seed):
    """
    Uniform `+/- sqrt(6 / (fan_in + fan_out))` weights and zero biases.

    Args:
      layer_sizes ([int]): `[in, h1, ..., 1]`.
      seed (int): RNG seed.

    Returns:
      ([ndarray]): Weight matrices.
      ([ndarray]): Bias vectors.
    """
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(layer_sizes, layer_sizes[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return weights, biases



def _forward(weights, biases, X):
    """
    Returns:
      ([ndarray/csr_matrix]): Layer inputs, starting with `X`.
      ([ndarray]): Preactivations per layer; the last has shape (n, 1).
    """
    inputs = [X]
    preacts = []
    for layer, (w, b) in enumerate(zip(weights, biases)):
        z = np.asarray(inputs[-1] @ w) + b
        preacts.append(z)
        if layer < len(weights) - 1:
            inputs.append(relu(z))
    return inputs, preacts



def mlp_loss_and_grads(weights, biases, X, y):
    """
    Mean binary cross-entropy and its backpropagated gradients.

    Args:
      weights ([ndarray]): Weight matrices.
      biases ([ndarray]): Bias vectors.
      X (csr_matrix or ndarray): Samples.
      y (ndarray): Binary labels.

    Returns:
      (float): The loss.
      ([ndarray]): Gradient per weight matrix.
      ([ndarray]): Gradient per bias vector.
    """
    inputs, preacts = _forward(weights, biases, X)
    z_out = preacts[-1].ravel()
    loss = float(np.mean(np.logaddexp(0, z_out) - y * z_out))

    delta = ((expit(z_out) - y) / len(y)).reshape(-1, 1)
    grads_w = [None] * len(weights)
    grads_b = [None] * len(weights)
    for layer in range(len(weights) - 1, -1, -1):
        grads_w[layer] = np.asarray(inputs[layer].T @ delta)
        grads_b[layer] = delta.sum(axis=0)
        if layer > 0:
            delta = (delta @ weights[layer].T) * (preacts[layer - 1] > 0)
    return loss, grads_w, grads_b



def mlp_fit(X, y, hidden=(100,), lr=1e-3, epochs=200,  # pylint: disable=too-many-arguments
        batch_size=32, seed=1):
    """
    Args:
      X ([SparseVector]/[DenseVector]/matrix): Training samples.
      y ([int]): Binary labels.
      hidden ([int]): Hidden layer sizes; at least one layer, each >= 1.
      lr (float): SGD step size.
      epochs (int): Passes over the data.
      batch_size (int): Samples per SGD step.
      seed (int): Seed for initialization and batch order.

    Returns:
      (MLPModel): The fitted model.

    Raises:
      (InvalidArchitectureError): Bad hidden layer sizes.
      (InvalidConfigError): `batch_size` < 1.
      (LengthMismatchError): Different numbers of samples and labels.
      (SingleClassError): Only one class in `y`.
    """
    hidden = list(hidden)
    if not hidden or any(h < 1 for h in hidden):
        raise InvalidArchitectureError('Hidden layer sizes must be a non-empty'
                + f' list of positive integers, got {hidden}')
    if batch_size < 1:
        raise InvalidConfigError(f'batch_size must be >= 1, got {batch_size}')
    matrix, labels = check_training_data(X, y)

    weights, biases = init_params([matrix.shape[1]] + hidden + [1], seed)
    rng = np.random.default_rng([seed, 1])
    n_samples = len(labels)
    for epoch in range(epochs):
        order = rng.permutation(n_samples)
        epoch_loss = 0.0
        for start in range(0, n_samples, batch_size):
            idx = order[start:start + batch_size]
            loss, grads_w, grads_b = mlp_loss_and_grads(weights, biases,
                    matrix[idx], labels[idx])
            epoch_loss += loss * len(idx)
            for layer, (g_w, g_b) in enumerate(zip(grads_w, grads_b)):
                weights[layer] = weights[layer] - lr * g_w
                biases[layer] = biases[layer] - lr * g_b
        if (epoch + 1) % 50 == 0 or epoch + 1 == epochs:
            logger.debug('MLP epoch %(e)s/%(n)s: mean loss %(l).6f',
                    {'e': epoch + 1, 'n': epochs, 'l': epoch_loss / n_samples})
    return MLPModel(tuple(weights), tuple(biases))



def mlp_predict_proba(model, X):
    """
    Args:
      model (MLPModel): The fitted model.
      X ([SparseVector]/[DenseVector]/matrix): Samples.

    Returns:
      (ndarray): Sigmoid output per sample.

    Raises:
      (DimensionMismatchError): Feature count differs from the input layer.
    """
    matrix = check_input_dim(X, model.layer_sizes[0])
    _, preacts = _forward(model.weights, model.biases, matrix)
    return expit(preacts[-1].ravel())



class MLP(Classifier):
    """
    Multilayer perceptron classifier.

    Instance Attributes:
      _hidden ((int)): Hidden layer sizes.
      _lr (float): SGD step size.
      _epochs (int): Passes over the data.
      _batch_size (int): Samples per SGD step.
    """
    DISPLAY_NAME = 'MLP-NN'



    def __init__(self, hidden=(100,), lr=1e-3, epochs=200,  # pylint: disable=too-many-arguments
            batch_size=32, seed=1, **kwargs):
        super().__init__(seed, **kwargs)
        self._hidden = tuple(hidden)
        self._lr = lr
        self._epochs = epochs
        self._batch_size = batch_size



    @classmethod
    def get_model_type_names(cls):
        return ['mlp', 'mlp-nn']



    def fit(self, X, y):
        self._model = mlp_fit(X, y, self._hidden, self._lr, self._epochs,
                self._batch_size, self._seed)
        return self



    def predict_proba(self, X):
        return mlp_predict_proba(self._model, X)



    @staticmethod
    def loss_and_grads(weights, biases, X, y):
        """
        Args:
          weights ([ndarray]): Weight matrices.
          biases ([ndarray]): Bias vectors.
          X ([SparseVector]/[DenseVector]/matrix): Samples.
          y ([int]): Binary labels.

        Returns:
          (float): The loss.
          ([ndarray]): Gradient per weight matrix.
          ([ndarray]): Gradient per bias vector.
        """
        matrix, labels = check_training_data(X, y)
        return mlp_loss_and_grads(weights, biases, matrix, labels)



    def _params_to_dict(self):
        return {'hidden': list(self._hidden), 'lr': self._lr,
                'epochs': self._epochs, 'batch_size': self._batch_size,
                'weights': [w.tolist() for w in self._model.weights],
                'biases': [b.tolist() for b in self._model.biases]}



    @classmethod
    def from_dict(cls, payload):
        version.check_artifact_version(payload, 'Model')
        clf = cls(payload['hidden'], payload['lr'], payload['epochs'],
                payload['batch_size'])
        clf._model = MLPModel(
                tuple(np.asarray(w, dtype=float) for w in payload['weights']),
                tuple(np.asarray(b, dtype=float) for b in payload['biases']))
        return clf
