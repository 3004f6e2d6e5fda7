# pylint: disable=missing-module-docstring
__all__ = [
        'folds',
        'grid',
        'metrics',
]
