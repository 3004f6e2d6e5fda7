#!/usr/bin/env python3
"""
`python -m clinical_notes_nlp` entry point; all work happens in `main`.

Module Attributes:
  N/A
"""
from clinical_notes_nlp import main



if __name__ == '__main__':
    main._setup_and_call_main()               # pylint: disable=protected-access
