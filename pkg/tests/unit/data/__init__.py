# pylint: disable=missing-module-docstring
__all__ = [
        'test_corpus',
        'test_synth',
]
