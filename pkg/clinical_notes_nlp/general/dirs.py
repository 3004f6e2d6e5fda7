#!/usr/bin/env python3
"""
Locations of the repo checkout, its `config/` dir and the data files bundled
with the package.

Module Attributes:
  _PACKAGE_DIR (str): Absolute path of the `clinical_notes_nlp` package dir.
"""
import os.path



_PACKAGE_DIR = os.path.dirname(os.path.dirname(os.path.realpath(__file__)))



def get_root_path():
    """
    Returns:
      (str): The repo root, where `git describe` runs for the version suffix.
    """
    return os.path.dirname(_PACKAGE_DIR)



def get_conf_path():
    """
    Returns:
      (str): The dir relative config file names are looked up in.
    """
    return os.path.join(get_root_path(), 'config')



def get_resources_path():
    """
    Returns:
      (str): The dir holding bundled data such as the default stopword list.
    """
    return os.path.join(_PACKAGE_DIR, 'resources')
