#!/usr/bin/env python3
"""The version information for the code and for the artifacts it writes.

Module Attributes:
  _VERSION (string): The current version of the code per SemVer.  Format should
    be `M.m.P-p`.  The `-p` can and should be omitted if it is `0`.  When in
    development, a `+dev` must be appended to the version on which it is based.
  ARTIFACT_VERSION (int): Version of the JSON artifact format (vocabularies,
    embedding tables, selectors, models, pipelines).  Bumped whenever a reader
    of the previous format would misinterpret the new one.
"""
import subprocess

from clinical_notes_nlp.general import dirs
from clinical_notes_nlp.general.exceptions import VersionMismatchError



_VERSION = '1.0.0+dev'

ARTIFACT_VERSION = 1



def get_full_version_string():
    """Gets a version string that includes the intended version and the git
    description of the checkout.

    Returns:
      (str): The string containing all version info for project.
    """
    return f'v{_VERSION}_{_get_git_describe()}'



def _get_git_describe():
    """Gets `git describe --always --dirty` for the repo, which is the short
    commit hash (or nearest tag) with a `-dirty` suffix for uncommitted changes.

    Returns:
      (str): The description.  `x` if git is not installed or this is not a git
        checkout.

    Raises:
      (subprocess.CalledProcessError): Raised if an unexpected non-zero return
        code is received from shell invocation.
    """
    try:
        result = subprocess.run(('git', 'describe', '--always', '--dirty'),
                cwd=dirs.get_root_path(), capture_output=True, encoding='utf-8',
                check=True)
    except FileNotFoundError:
        return 'x'
    except subprocess.CalledProcessError as ex:
        if ex.returncode in (1, 128):
            # No .git dir / not cloned
            return 'x'
        raise
    return result.stdout.strip()



def stamp_artifact(payload):
    """Adds the artifact version to a payload about to be serialized.

    Args:
      payload ({str: *}): The artifact contents.

    Returns:
      ({str: *}): A new dict with `version` first, then the payload keys.
    """
    return {'version': ARTIFACT_VERSION, **payload}



def check_artifact_version(payload, kind):
    """Checks a loaded artifact was written in the current format.

    Args:
      payload ({str: *}): The loaded artifact.
      kind (str): What the artifact is, for the error message.

    Raises:
      (VersionMismatchError): Missing or different version.
    """
    found = payload.get('version') if isinstance(payload, dict) else None
    if found != ARTIFACT_VERSION:
        raise VersionMismatchError(f'{kind} artifact has version {found!r};'
                + f' this build reads version {ARTIFACT_VERSION}')
