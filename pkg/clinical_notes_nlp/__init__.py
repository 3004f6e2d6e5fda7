# pylint: disable=missing-module-docstring
__all__ = [
        '__main__',
        'main',
        'pipeline',
        'version',
]
