# pylint: disable=missing-module-docstring
__all__ = [
        'test_folds',
        'test_grid',
        'test_metrics',
]
