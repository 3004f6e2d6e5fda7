# pylint: disable=missing-module-docstring
__all__ = [
        'test_embeddings',
        'test_representations',
        'test_select',
        'test_vectors',
        'test_vocab',
]
