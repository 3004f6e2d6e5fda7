#!/usr/bin/env python3
"""
Corpus vocabulary statistics and the bag-of-words / TF-IDF document vectors
built on them.

TF-IDF uses raw counts for TF, the smoothed IDF `ln((1 + N) / (1 + df)) + 1`,
and L2 normalization of every non-empty document vector.

Module Attributes:
  logger (Logger): Logger for this module.
"""
from collections import Counter
import dataclasses
import logging
import math

from clinical_notes_nlp import version
from clinical_notes_nlp.features.vectors import SparseVector
from clinical_notes_nlp.general.exceptions import EmptyVocabularyError



logger = logging.getLogger(__name__)



@dataclasses.dataclass(frozen=True)
class Vocabulary:
    """
    Tokens kept from a corpus, indexed densely in first-seen order.

    Instance Attributes:
      tokens ((str)): Token at each index.
      doc_freq ((int)): Document frequency at each index; 0 < df <= n_docs.
      n_docs (int): Number of documents counted.
      index ({str: int}): Token to index; derived.
    """
    tokens: tuple
    doc_freq: tuple
    n_docs: int
    index: dict = dataclasses.field(init=False, repr=False, compare=False)



    def __post_init__(self):
        object.__setattr__(self, 'index',
                {t: i for i, t in enumerate(self.tokens)})
        if len(self.index) != len(self.tokens):
            raise ValueError('Vocabulary tokens must be unique')



    def __len__(self):
        return len(self.tokens)



    def __contains__(self, token):
        return token in self.index



@dataclasses.dataclass(frozen=True)
class IdfTable:
    """
    Smoothed inverse document frequencies.

    Instance Attributes:
      idf ((float)): IDF per vocabulary index, each >= 1.
      n_docs (int): Number of documents at fit time.
    """
    idf: tuple
    n_docs: int



def build_vocab(docs, min_df=1):
    """
    Args:
      docs ([TokenDoc]): The documents; non-empty.
      min_df (int): Minimum document frequency to keep a token.

    Returns:
      (Vocabulary): Tokens with df >= min_df, in first-seen order.

    Raises:
      (EmptyVocabularyError): No documents, or no token survives `min_df`.
    """
    doc_freq = Counter()
    first_seen = []
    for doc in docs:
        for token in dict.fromkeys(doc.tokens):
            if token not in doc_freq:
                first_seen.append(token)
            doc_freq[token] += 1

    kept = [t for t in first_seen if doc_freq[t] >= min_df]
    if not kept:
        raise EmptyVocabularyError(f'No token reaches min_df={min_df} in'
                + f' {len(docs)} documents')
    vocab = Vocabulary(tuple(kept), tuple(doc_freq[t] for t in kept), len(docs))
    logger.info('Built vocabulary of %(v)s tokens from %(n)s documents',
            {'v': len(vocab), 'n': len(docs)})
    return vocab



def _counts(doc, vocab):
    """
    Args:
      doc (TokenDoc): The document.
      vocab (Vocabulary): The vocabulary.

    Returns:
      ({int: int}): Count per in-vocabulary index.
    """
    counts = Counter()
    for token in doc.tokens:
        idx = vocab.index.get(token)
        if idx is not None:
            counts[idx] += 1
    return counts



def bow_vectorize(doc, vocab):
    """
    Args:
      doc (TokenDoc): The document.
      vocab (Vocabulary): The vocabulary.

    Returns:
      (SparseVector): Count of every in-vocabulary token; OOV tokens ignored.
    """
    return SparseVector.from_dict(len(vocab), _counts(doc, vocab))



def tfidf_fit(docs, vocab):
    """
    Args:
      docs ([TokenDoc]): Documents the vocabulary was built from.  Only their
        number is used; document frequencies come from `vocab`.
      vocab (Vocabulary): The vocabulary.

    Returns:
      (IdfTable): `idf[i] = ln((1 + N) / (1 + df[i])) + 1`.
    """
    n_docs = len(docs)
    idf = tuple(math.log((1 + n_docs) / (1 + df)) + 1 for df in vocab.doc_freq)
    return IdfTable(idf, n_docs)



def tfidf_transform(doc, vocab, idf):
    """
    Args:
      doc (TokenDoc): The document.
      vocab (Vocabulary): The vocabulary.
      idf (IdfTable): The fitted IDF.

    Returns:
      (SparseVector): Counts times IDF, L2-normalized; the zero vector when the
        document has no in-vocabulary token.
    """
    weighted = {i: c * idf.idf[i] for i, c in _counts(doc, vocab).items()}
    norm = math.sqrt(sum(w * w for w in weighted.values()))
    if norm > 0:
        weighted = {i: w / norm for i, w in weighted.items()}
    return SparseVector.from_dict(len(vocab), weighted)



def top_terms(docs, n=20):
    """
    Most frequent tokens of each class.

    Args:
      docs ([TokenDoc]): The documents.
      n (int): How many tokens to list per class.

    Returns:
      ({Label: [(str, int)]}): Per label present, up to `n` (token, count)
        pairs by descending count, ties alphabetical.
    """
    per_label = {}
    for doc in docs:
        per_label.setdefault(doc.label, Counter()).update(doc.tokens)
    return {label: sorted(counts.items(), key=lambda tc: (-tc[1], tc[0]))[:n]
            for label, counts in per_label.items()}



def vocab_to_dict(vocab, idf=None):
    """
    Serialize a vocabulary (and optional IDF) as the versioned artifact
    `{version, tokens, doc_freq, idf, n_docs}`.

    Args:
      vocab (Vocabulary): The vocabulary.
      idf (IdfTable or None): The IDF; serialized as `null` if None.

    Returns:
      ({str: *}): The artifact.
    """
    return version.stamp_artifact({
        'tokens': list(vocab.tokens),
        'doc_freq': list(vocab.doc_freq),
        'idf': list(idf.idf) if idf is not None else None,
        'n_docs': vocab.n_docs,
    })



def vocab_from_dict(payload):
    """
    Args:
      payload ({str: *}): Output of `vocab_to_dict()`.

    Returns:
      ((Vocabulary, IdfTable or None)): The vocabulary and IDF.

    Raises:
      (VersionMismatchError): Incompatible artifact.
    """
    version.check_artifact_version(payload, 'Vocabulary')
    vocab = Vocabulary(tuple(payload['tokens']), tuple(payload['doc_freq']),
            payload['n_docs'])
    idf = None
    if payload.get('idf') is not None:
        idf = IdfTable(tuple(payload['idf']), payload['n_docs'])
    return vocab, idf
