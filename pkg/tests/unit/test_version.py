#!/usr/bin/env python3
"""
Tests the clinical_notes_nlp.version functionality.

Per [pytest](https://docs.pytest.org/en/reorganize-docs/new-docs/user/naming_conventions.html),
all tiles, classes, and methods will be prefaced with `test_/Test` to comply
with auto-discovery (others may exist, but will not be part of test suite
directly).

Module Attributes:
  N/A
"""
# pylint: disable=protected-access # Allow for purpose of testing those elements

import subprocess

import pytest

from clinical_notes_nlp import version
from clinical_notes_nlp.general.exceptions import VersionMismatchError



def test_get_full_version_string(monkeypatch):
    """
    Tests the `get_full_version_string()` method.
    """
    monkeypatch.setattr(version, '_get_git_describe', lambda: 'abc1234-dirty')
    assert version.get_full_version_string() \
            == f'v{version._VERSION}_abc1234-dirty'



def test__get_git_describe__fake(fake_process):
    """
    Tests the `_get_git_describe()` method.

    This will mock all subprocess calls to return specific fixed values so all
    logic paths can be followed.
    """
    git_cmd = ('git', 'describe', '--always', '--dirty')
    fake_process.register_subprocess(git_cmd, stdout='1234567\n')
    assert version._get_git_describe() == '1234567'

    fake_process.register_subprocess(git_cmd, returncode=128)
    assert version._get_git_describe() == 'x'

    fake_process.register_subprocess(git_cmd, returncode=999)
    with pytest.raises(subprocess.CalledProcessError) as ex:
        version._get_git_describe()
    assert ex.value.returncode == 999



def test_stamp_artifact():
    """
    Tests the `stamp_artifact()` method.
    """
    stamped = version.stamp_artifact({'kind': 'vocab', 'tokens': []})
    assert list(stamped) == ['version', 'kind', 'tokens']
    assert stamped['version'] == version.ARTIFACT_VERSION



def test_check_artifact_version():
    """
    Tests the `check_artifact_version()` method.
    """
    version.check_artifact_version({'version': version.ARTIFACT_VERSION},
            'Model')

    with pytest.raises(VersionMismatchError) as ex:
        version.check_artifact_version({'version': 999}, 'Model')
    assert 'Model artifact has version 999' in str(ex.value)

    with pytest.raises(VersionMismatchError):
        version.check_artifact_version({}, 'Model')

    with pytest.raises(VersionMismatchError):
        version.check_artifact_version(['not', 'a', 'dict'], 'Model')



def test__get_git_describe__no_git(monkeypatch):
    """
    Tests the `_get_git_describe()` method when git is not installed.
    """
    def mock_run(*args, **kwargs):           # pylint: disable=unused-argument
        """
        Fail the way a missing executable does.
        """
        raise FileNotFoundError('git')

    monkeypatch.setattr(version.subprocess, 'run', mock_run)
    assert version._get_git_describe() == 'x'
