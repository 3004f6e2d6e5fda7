#!/usr/bin/env python3
"""
Tests the clinical_notes_nlp.features.representations functionality.

Per [pytest](https://docs.pytest.org/en/reorganize-docs/new-docs/user/naming_conventions.html),
all tiles, classes, and methods will be prefaced with `test_/Test` to comply
with auto-discovery (others may exist, but will not be part of test suite
directly).

Module Attributes:
  N/A
"""
# pylint: disable=protected-access # Allow for purpose of testing those elements

import json
import logging

import numpy as np
import pytest

from clinical_notes_nlp.features import representations, select
from clinical_notes_nlp.features.vectors import DenseVector, SparseVector
from clinical_notes_nlp.general.exceptions import EmptyVocabularyError, \
        InvalidConfigError
from clinical_notes_nlp.text.preprocess import TokenDoc



@pytest.fixture(name='docs')
def fixture_docs():
    """
    A few token documents sharing some tokens.
    """
    return [TokenDoc(f'd{i}', tuple(tokens)) for i, tokens in enumerate([
        ['civ', 'cec', 'civ', 'valve'],
        ['po', 'sop', 'cec'],
        ['civ', 'po', 'asthme', 'valve'],
        ['sop', 'asthme'],
    ])]



def test_registry():
    """
    Tests the registry functions.
    """
    assert representations.list_representation_names() \
            == ['bow', 'tfidf', 'embed']
    assert representations.get_representation_cls('tf-idf') \
            is representations.TfidfRepresentation
    assert representations.get_representation_cls('skipgram') \
            is representations.EmbeddingRepresentation
    with pytest.raises(InvalidConfigError) as ex:
        representations.get_representation_cls('lsa')
    assert 'Unknown representation "lsa"' in str(ex.value)

    rep = representations.create_representation('bag-of-words', min_df=2)
    assert isinstance(rep, representations.BowRepresentation)
    assert rep.name == 'bow'
    assert rep.is_fitted() is False
    assert rep.vocab is None



def test_excess_kwargs(caplog):
    """
    Tests the base class logs and discards unknown kwargs.
    """
    caplog.set_level(logging.WARNING)
    representations.BowRepresentation(min_df=1, window=3)
    assert caplog.record_tuples == [
        ('clinical_notes_nlp.features.representations', logging.WARNING,
            'Discarded excess kwargs provided to BowRepresentation: window'),
    ]



def test_bow_representation(docs):
    """
    Tests the `BowRepresentation` class.
    """
    rep = representations.BowRepresentation()
    vectors = rep.fit_transform(docs)
    assert rep.is_fitted() is True
    assert rep.dim == 6
    assert rep.vocab.tokens == ('civ', 'cec', 'valve', 'po', 'sop', 'asthme')
    assert vectors[0] == SparseVector(6, (0, 1, 2), (2.0, 1.0, 1.0))
    assert rep.get_scorer() is select.score_chi2
    assert representations.BowRepresentation.DISPLAY_NAME == 'BoW'

    unseen = [TokenDoc('n', ('civ', 'inconnu'))]
    assert rep.transform(unseen) == [SparseVector(6, (0,), (1.0,))]

    loaded = representations.load_representation(
            json.loads(json.dumps(rep.to_dict())))
    assert isinstance(loaded, representations.BowRepresentation)
    assert loaded.transform(docs) == vectors

    assert representations.BowRepresentation(min_df=2).fit(docs).vocab.tokens \
            == ('civ', 'cec', 'valve', 'po', 'sop', 'asthme')
    with pytest.raises(EmptyVocabularyError):
        representations.BowRepresentation(min_df=3).fit(docs)



def test_tfidf_representation(docs):
    """
    Tests the `TfidfRepresentation` class.
    """
    rep = representations.TfidfRepresentation()
    vectors = rep.fit_transform(docs)
    assert rep.idf.n_docs == 4
    assert rep.dim == 6
    for vec in vectors:
        assert np.linalg.norm(vec.values) == pytest.approx(1.0)
    assert rep.get_scorer() is select.score_chi2

    loaded = representations.load_representation(
            json.loads(json.dumps(rep.to_dict())))
    assert loaded.idf == rep.idf
    assert loaded.transform(docs) == vectors
    assert loaded.to_dict()['type'] == 'tfidf'



def test_embedding_representation(docs):
    """
    Tests the `EmbeddingRepresentation` class.
    """
    rep = representations.EmbeddingRepresentation(seed=4, dim=5, window=2,
            epochs=3, lr=0.05)
    vectors = rep.fit_transform(docs)
    assert rep.dim == 5
    assert len(rep.history) == 3
    assert all(isinstance(v, DenseVector) and v.dim == 5 for v in vectors)
    assert rep.get_scorer() is select.score_f_classif
    assert rep.table.vocab == rep.vocab

    again = representations.EmbeddingRepresentation(seed=4, dim=5, window=2,
            epochs=3, lr=0.05).fit_transform(docs)
    assert again == vectors

    payload = json.loads(json.dumps(rep.to_dict()))
    assert payload['type'] == 'embed'
    assert payload['dim'] == 5
    assert payload['negative'] == 0
    loaded = representations.load_representation(payload)
    assert loaded.transform(docs) == vectors
    assert loaded.transform([TokenDoc('n', ('inconnu',))]) \
            == [DenseVector(np.zeros(5))]
