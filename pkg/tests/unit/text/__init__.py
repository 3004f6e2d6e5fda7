# pylint: disable=missing-module-docstring
__all__ = [
        'test_preprocess',
]
