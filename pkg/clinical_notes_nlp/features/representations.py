#!/usr/bin/env python3
"""
Document representations: the fit/transform layer between token documents and
classifiers.  Each representation knows how it is fitted, how it turns
documents into vectors, which univariate scorer suits its features, and how it
is saved.  The grid and the CLI only go through the generic interface and the
registry at the bottom of this module.

Module Attributes:
  logger (Logger): Logger for this module.
  _REPRESENTATIONS ((Class<Representation<>>)): All representation classes
    supported.
"""
from abc import ABC, abstractmethod
import logging

from clinical_notes_nlp.features import embeddings, select, vocab
from clinical_notes_nlp.general.exceptions import InvalidConfigError



logger = logging.getLogger(__name__)



class Representation(ABC):
    """
    The abstract class for all document representations.  Each representation
    subclasses this, but externally only the generic methods defined here are
    called.

    This serves as a base class for other representations, so will consume any
    final kwargs.

    Class Attributes:
      DISPLAY_NAME (str): Name used in reports.
      SCORER (str): Key into `select.SCORERS` suited to this representation's
        features.

    Instance Attributes:
      _min_df (int): Minimum document frequency of a vocabulary token.
      _seed (int): Seed for any randomness in fitting.
      _vocab (Vocabulary or None): The fitted vocabulary; None until fitted.
    """
    DISPLAY_NAME = None
    SCORER = 'chi2'



    def __init__(self, min_df=1, seed=1, **kwargs):
        """
        Args:
          min_df (int): Minimum document frequency of a vocabulary token.
          seed (int): Seed for any randomness in fitting.
          kwargs ({}): Should be empty since this is the base class.  Will log
            warning if not empty.
        """
        self._min_df = min_df
        self._seed = seed
        self._vocab = None

        if kwargs:
            logger.warning('Discarded excess kwargs provided to'
                    + f' {self.__class__.__name__}: {", ".join(kwargs.keys())}')



    @classmethod
    @abstractmethod
    def get_representation_names(cls):
        """
        Get the list of names that can be used on the command line or in config
        to identify this representation.

        Returns:
          ([str]): Valid names; the first is canonical.
        """



    @property
    def name(self):
        """
        Returns:
          (str): Canonical name of this representation.
        """
        return self.get_representation_names()[0]



    @property
    def vocab(self):
        """
        Returns:
          (Vocabulary or None): The fitted vocabulary.
        """
        return self._vocab



    def is_fitted(self):
        """
        Returns:
          (bool): True once `fit()` completed.
        """
        return self._vocab is not None



    @abstractmethod
    def fit(self, docs):
        """
        Fit all statistics on `docs` and nothing else.

        Args:
          docs ([TokenDoc]): Training documents.

        Returns:
          (Representation<>): self.
        """



    @abstractmethod
    def transform(self, docs):
        """
        Args:
          docs ([TokenDoc]): Documents to vectorize.

        Returns:
          ([SparseVector] or [DenseVector]): One vector per document.
        """



    def fit_transform(self, docs):
        """
        Args:
          docs ([TokenDoc]): Training documents.

        Returns:
          ([SparseVector] or [DenseVector]): Their vectors.
        """
        return self.fit(docs).transform(docs)



    @property
    @abstractmethod
    def dim(self):
        """
        Returns:
          (int): Dimension of the produced vectors.
        """



    def get_scorer(self):
        """
        Returns:
          (func): The univariate scorer for this representation's features.
        """
        return select.SCORERS[self.SCORER]



    @abstractmethod
    def to_dict(self):
        """
        Returns:
          ({str: *}): JSON-serializable state, including a `type` key.
        """



    @classmethod
    @abstractmethod
    def from_dict(cls, payload):
        """
        Args:
          payload ({str: *}): Output of `to_dict()`.

        Returns:
          (Representation<>): The fitted representation.
        """



class BowRepresentation(Representation):
    """
    Raw token counts over the fitted vocabulary.
    """
    DISPLAY_NAME = 'BoW'



    @classmethod
    def get_representation_names(cls):
        return ['bow', 'bag-of-words']



    def fit(self, docs):
        self._vocab = vocab.build_vocab(docs, self._min_df)
        return self



    def transform(self, docs):
        return [vocab.bow_vectorize(doc, self._vocab) for doc in docs]



    @property
    def dim(self):
        return len(self._vocab)



    def to_dict(self):
        return {'type': self.name, 'min_df': self._min_df,
                'vocab': vocab.vocab_to_dict(self._vocab)}



    @classmethod
    def from_dict(cls, payload):
        rep = cls(min_df=payload['min_df'])
        rep._vocab, _ = vocab.vocab_from_dict(payload['vocab'])
        return rep



class TfidfRepresentation(Representation):
    """
    L2-normalized TF-IDF over the fitted vocabulary.

    Instance Attributes:
      _idf (IdfTable or None): The fitted IDF.
    """
    DISPLAY_NAME = 'TF-IDF'



    def __init__(self, min_df=1, seed=1, **kwargs):
        super().__init__(min_df, seed, **kwargs)
        self._idf = None



    @classmethod
    def get_representation_names(cls):
        return ['tfidf', 'tf-idf']



    def fit(self, docs):
        self._vocab = vocab.build_vocab(docs, self._min_df)
        self._idf = vocab.tfidf_fit(docs, self._vocab)
        return self



    def transform(self, docs):
        return [vocab.tfidf_transform(doc, self._vocab, self._idf)
                for doc in docs]



    @property
    def dim(self):
        return len(self._vocab)



    @property
    def idf(self):
        """
        Returns:
          (IdfTable or None): The fitted IDF.
        """
        return self._idf



    def to_dict(self):
        return {'type': self.name, 'min_df': self._min_df,
                'vocab': vocab.vocab_to_dict(self._vocab, self._idf)}



    @classmethod
    def from_dict(cls, payload):
        rep = cls(min_df=payload['min_df'])
        rep._vocab, rep._idf = vocab.vocab_from_dict(payload['vocab'])
        return rep



class EmbeddingRepresentation(Representation):
    """
    Mean skip-gram central vector of each document's tokens.

    Instance Attributes:
      _params ({str: int/float}): Skip-gram training parameters.
      _table (EmbeddingTable or None): The trained vectors.
      history ([float]): Per-epoch mean training loss of the last fit.
    """
    DISPLAY_NAME = 'Embeddings'
    SCORER = 'f_classif'



    def __init__(self, min_df=1, seed=1, dim=100,  # pylint: disable=too-many-arguments
            window=5, epochs=5, lr=0.025, negative=0, **kwargs):
        """
        Args:
          min_df (int): Minimum document frequency of a vocabulary token.
          seed (int): Seed for initialization and negative draws.
          dim (int): Embedding dimension.
          window (int): Context window.
          epochs (int): Training passes.
          lr (float): Initial learning rate.
          negative (int): Negative samples per pair; 0 for the full softmax.
          kwargs ({}): Passed to the base class.
        """
        super().__init__(min_df, seed, **kwargs)
        self._params = {'d': dim, 'window': window, 'epochs': epochs,
                'lr': lr, 'negative': negative}
        self._table = None
        self.history = []



    @classmethod
    def get_representation_names(cls):
        return ['embed', 'embeddings', 'skipgram']



    def fit(self, docs):
        self._vocab = vocab.build_vocab(docs, self._min_df)
        self._table, self.history = embeddings.train_skipgram(docs,
                self._vocab, seed=self._seed, **self._params)
        return self



    def transform(self, docs):
        return [embeddings.doc_embed(doc, self._table) for doc in docs]



    @property
    def dim(self):
        return self._table.d



    @property
    def table(self):
        """
        Returns:
          (EmbeddingTable or None): The trained vectors.
        """
        return self._table



    def to_dict(self):
        params = dict(self._params)
        return {'type': self.name, 'min_df': self._min_df,
                'dim': params.pop('d'), **params,
                'table': embeddings.table_to_dict(self._table)}



    @classmethod
    def from_dict(cls, payload):
        rep = cls(min_df=payload['min_df'], dim=payload['dim'],
                window=payload['window'], epochs=payload['epochs'],
                lr=payload['lr'], negative=payload['negative'])
        rep._table = embeddings.table_from_dict(payload['table'])
        rep._vocab = rep._table.vocab
        return rep



_REPRESENTATIONS = (
    BowRepresentation,
    TfidfRepresentation,
    EmbeddingRepresentation,
)



def get_representation_cls(name):
    """
    Args:
      name (str): Any name a representation answers to.

    Returns:
      (Class<Representation<>>): The matching class.

    Raises:
      (InvalidConfigError): No representation matches.
    """
    for rep_cls in _REPRESENTATIONS:
        if name in rep_cls.get_representation_names():
            return rep_cls
    raise InvalidConfigError(f'Unknown representation "{name}"')



def create_representation(name, **params):
    """
    Args:
      name (str): Representation name.
      params ({str: *}): Constructor kwargs.

    Returns:
      (Representation<>): An unfitted representation.
    """
    return get_representation_cls(name)(**params)



def load_representation(payload):
    """
    Args:
      payload ({str: *}): Output of a representation's `to_dict()`.

    Returns:
      (Representation<>): The fitted representation.
    """
    return get_representation_cls(payload['type']).from_dict(payload)



def list_representation_names():
    """
    Returns:
      ([str]): Canonical name of every representation, in report order.
    """
    return [rep_cls.get_representation_names()[0]
            for rep_cls in _REPRESENTATIONS]
