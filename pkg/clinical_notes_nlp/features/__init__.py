# pylint: disable=missing-module-docstring
__all__ = [
        'embeddings',
        'representations',
        'select',
        'vectors',
        'vocab',
]
