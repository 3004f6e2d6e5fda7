# pylint: disable=missing-module-docstring
__all__ = [
        'conftest',
        'test__main__',
        'test_main',
        'test_pipeline',
        'test_version',
]
