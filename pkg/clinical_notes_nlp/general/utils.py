#!/usr/bin/env python3
"""
General utility functions for the project that do not fit in another other
more-specific sub-package.

Module Attributes:
  N/A
"""
import hashlib
import os
import os.path

import dateutil.parser as dp



def derive_seed(base_seed, *parts):
    """
    Derive a child seed from a base seed and a path of names, e.g.
    `derive_seed(1, 'tfidf', 'mlp', 'with', 3)`.

    The derivation is a hash, not `hash()`, so it is stable across processes
    and python invocations.  Runs that split work across processes therefore
    draw exactly the same random numbers as serial runs.

    Args:
      base_seed (int): The seed given by the user.
      parts (str/int): The names identifying the consumer of the seed.

    Returns:
      (int): A seed in [0, 2**63).
    """
    key = '|'.join([str(base_seed)] + [str(p) for p in parts])
    digest = hashlib.sha256(key.encode('utf-8')).digest()
    return int.from_bytes(digest[:8], 'big') >> 1



def hours_between(start, end):
    """
    Hours elapsed from `start` to `end`.

    Args:
      start (str): ISO 8601 datetime string.
      end (str): ISO 8601 datetime string.

    Returns:
      (float): Elapsed hours; negative if `end` precedes `start`.

    Raises:
      (ValueError): Either string is not ISO 8601, or only one of them carries
        a timezone.
    """
    dt_start = dp.isoparse(start)
    dt_end = dp.isoparse(end)
    try:
        return (dt_end - dt_start).total_seconds() / 3600.0
    except TypeError as ex:
        raise ValueError('Cannot compare timezone-aware and naive datetimes:'
                + f' {start!r}, {end!r}') from ex



def write_text_file(path, text):
    """
    Write a UTF-8 text file, creating parent dirs as needed.  Newlines are
    written as-is so outputs are byte-identical across platforms.

    Args:
      path (str): Destination path.
      text (str): Full file contents.
    """
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, 'w', encoding='utf_8', newline='') as file:
        file.write(text)
