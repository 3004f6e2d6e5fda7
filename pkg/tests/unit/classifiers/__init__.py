# pylint: disable=missing-module-docstring
__all__ = [
        'test_classifiers',
        'test_gaussian_nb',
        'test_logistic_regression',
        'test_mlp',
]
