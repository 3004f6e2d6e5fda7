#!/usr/bin/env python3
"""
Tests the clinical_notes_nlp.pipeline functionality.

Per [pytest](https://docs.pytest.org/en/reorganize-docs/new-docs/user/naming_conventions.html),
all tiles, classes, and methods will be prefaced with `test_/Test` to comply
with auto-discovery (others may exist, but will not be part of test suite
directly).

Module Attributes:
  N/A
"""
import json

import numpy as np
import pytest

from clinical_notes_nlp import pipeline
from clinical_notes_nlp.data import synth
from clinical_notes_nlp.data.corpus import Corpus, split_disjoint
from clinical_notes_nlp.evaluation.metrics import compute_metrics
from clinical_notes_nlp.general.config import RunConfig
from clinical_notes_nlp.general.exceptions import InvalidConfigError, \
        KTooLargeError, VersionMismatchError



@pytest.fixture(name='train_test')
def fixture_train_test():
    """
    A separable synthetic corpus split with no patient or provider shared.
    """
    corpus = synth.generate_corpus(synth.SynthConfig(n_docs=200,
            doc_len_range=(15, 30), vocab_size=80, signal_strength=0.8,
            n_patients=100, n_providers=25, seed=5))
    return split_disjoint(corpus, 0.3, seed=2)



@pytest.mark.parametrize('model', ['lr', 'gnb', 'mlp'])
def test_pipeline_held_out_accuracy(train_test, model):
    """
    Tests every classifier generalizes on the separable synthetic corpus.
    """
    train, test = train_test
    run_config = RunConfig(subcommand='fit', representation='tfidf',
            model=model, mlp_hidden=(16,), mlp_epochs=100)
    fitted = pipeline.Pipeline.fit(train, run_config)
    probas = fitted.predict_proba(test)
    assert probas.shape == (len(test),)
    report = compute_metrics([n.label.to_binary() for n in test],
            (probas >= 0.5).astype(int))
    assert report.acc >= 0.90



def test_pipeline_selection(train_test):
    """
    Tests a pipeline with feature selection.
    """
    train, test = train_test
    fitted = pipeline.Pipeline.fit(train, RunConfig(subcommand='fit',
            representation='bow', model='gnb', select_k=12))
    assert fitted.selector.k == 12
    assert fitted.predict_proba(test).shape == (len(test),)

    with pytest.raises(KTooLargeError):
        pipeline.Pipeline.fit(train, RunConfig(subcommand='fit',
                representation='bow', model='gnb', select_k=100_000))



def test_pipeline_to_from_dict(train_test):
    """
    Tests the artifact survives JSON serialization.
    """
    train, test = train_test
    fitted = pipeline.Pipeline.fit(train, RunConfig(subcommand='fit',
            representation='embed', model='lr', select_k=5, embed_dim=10,
            embed_epochs=1))
    payload = json.loads(json.dumps(fitted.to_dict()))
    assert payload['kind'] == 'pipeline'
    assert list(payload) == ['version', 'kind', 'preprocess',
            'representation', 'selector', 'model']

    loaded = pipeline.Pipeline.from_dict(payload)
    assert loaded.options == fitted.options
    assert np.array_equal(loaded.predict_proba(test),
            fitted.predict_proba(test))
    assert loaded.predict_proba(Corpus([])).shape == (0,)

    payload['version'] = 999
    with pytest.raises(VersionMismatchError):
        pipeline.Pipeline.from_dict(payload)
    payload['version'] = 1
    payload['kind'] = 'model'
    with pytest.raises(InvalidConfigError):
        pipeline.Pipeline.from_dict(payload)



def test_pipeline_fit_errors(make_note):
    """
    Tests fitting needs labeled notes and known component names.
    """
    with pytest.raises(InvalidConfigError):
        pipeline.Pipeline.fit(Corpus([make_note('a', 'civ')]),
                RunConfig(subcommand='fit'))

    corpus = synth.generate_corpus(synth.SynthConfig(n_docs=10, seed=1))
    with pytest.raises(InvalidConfigError):
        pipeline.Pipeline.fit(corpus, RunConfig(subcommand='fit',
                representation='lsa'))
    with pytest.raises(InvalidConfigError):
        pipeline.Pipeline.fit(corpus, RunConfig(subcommand='fit',
                model='svm'))
