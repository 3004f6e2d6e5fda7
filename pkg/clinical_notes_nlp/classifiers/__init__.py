# pylint: disable=missing-module-docstring
__all__ = [
        'classifier_meta',
        'classifiers',
        'gaussian_nb',
        'logistic_regression',
        'mlp',
]
