#!/usr/bin/env python3
"""
Configures pytest as needed.  This file normally does not need to exist, but is
used here to share small note and corpus builders across the /tests/unit
subpackages.

Module Attributes:
  N/A
"""
import pytest

from clinical_notes_nlp.data import corpus as corpus_mod
from clinical_notes_nlp.data import synth
from clinical_notes_nlp.text import preprocess



@pytest.fixture(name='make_note')
def fixture_make_note():
    """
    Returns a builder for notes where only the fields a test cares about need
    to be given.  Patient and provider default to one per note.
    """
    def make_note(note_id, text='', label=corpus_mod.Label.UNLABELED,
            patient_id=None, provider_id=None, **kwargs):
        """
        Build one note.
        """
        return corpus_mod.Note(id=note_id,
                patient_id=patient_id or f'p-{note_id}',
                provider_id=provider_id or f'md-{note_id}',
                text=text, label=label, **kwargs)

    return make_note



@pytest.fixture(name='small_synth_corpus')
def fixture_small_synth_corpus():
    """
    A small, strongly separable synthetic corpus.
    """
    return synth.generate_corpus(synth.SynthConfig(n_docs=60,
            doc_len_range=(10, 20), vocab_size=40, signal_strength=0.8,
            n_patients=30, n_providers=10, seed=3))



@pytest.fixture(name='plain_options')
def fixture_plain_options():
    """
    Preprocessing options with accent folding and numeric dropping but no
    stoplist, so test texts are tokenized predictably.
    """
    return preprocess.PreprocessOptions(fold_accents=True, drop_numeric=True,
            stoplist=frozenset())
