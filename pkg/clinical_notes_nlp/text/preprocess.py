#!/usr/bin/env python3
"""
Turns raw French note text into a normalized token sequence: lowercase,
accent-folded, split on punctuation (intra-word hyphens kept, so `pro-bnp`
stays one token), numeric values dropped, stopwords removed.

Module Attributes:
  logger (Logger): Logger for this module.
  DEFAULT_STOPWORDS_FILE (str): File name of the bundled French stoplist.
  _TOKEN_RE (Pattern): Maximal runs of letters/digits, joined by single
    hyphens.
  _NUMERIC_RE (Pattern): Tokens that are numeric values (digits with `.`, `,`,
    `%` or `-`).
  _LIGATURES ({str: str}): Ligatures NFKD does not decompose.
"""
import dataclasses
import json
import logging
import os.path
import re
import unicodedata

from clinical_notes_nlp.data.corpus import Label
from clinical_notes_nlp.general import dirs
from clinical_notes_nlp.general import utils



logger = logging.getLogger(__name__)

DEFAULT_STOPWORDS_FILE = 'stopwords_fr.txt'

_TOKEN_RE = re.compile(r'[^\W_]+(?:-[^\W_]+)*')

_NUMERIC_RE = re.compile(r'^[\d.,%-]*\d[\d.,%-]*$')

_LIGATURES = str.maketrans({'œ': 'oe', 'æ': 'ae', 'ß': 'ss'})



@dataclasses.dataclass(frozen=True)
class TokenDoc:
    """
    A preprocessed note.

    Instance Attributes:
      note_id (str): Id of the source note.
      tokens ((str)): Non-empty, lowercase, stoplist-free tokens in order.
      label (Label): Label of the source note.
    """
    note_id: str
    tokens: tuple
    label: Label = Label.UNLABELED



    def to_dict(self):
        """
        Returns:
          ({str: *}): The JSONL record for this document.
        """
        return {'note_id': self.note_id, 'tokens': list(self.tokens),
                'label': self.label.value}



@dataclasses.dataclass(frozen=True)
class PreprocessOptions:
    """
    Preprocessing switches.

    Instance Attributes:
      fold_accents (bool): Map Latin diacritics to base letters.
      drop_numeric (bool): Remove numeric tokens.
      stoplist (frozenset(str)): Tokens to remove, already normalized.
      stopwords_path (str or None): Where the stoplist came from; None for the
        bundled list.  Kept so the options can be serialized.
    """
    fold_accents: bool = True
    drop_numeric: bool = True
    stoplist: frozenset = frozenset()
    stopwords_path: str = None



    @classmethod
    def create(cls, fold_accents=True, drop_numeric=True, stopwords_path=None):
        """
        Build options with the stoplist loaded from `stopwords_path` (or the
        bundled list) and normalized to match `fold_accents`.

        Args:
          fold_accents (bool): See class.
          drop_numeric (bool): See class.
          stopwords_path (str or None): See class.

        Returns:
          (PreprocessOptions): The options.
        """
        return cls(fold_accents=fold_accents, drop_numeric=drop_numeric,
                stoplist=load_stoplist(stopwords_path, fold_accents),
                stopwords_path=stopwords_path)



    def to_dict(self):
        """
        Returns:
          ({str: *}): Serializable form.  The stoplist itself is embedded so a
            model artifact does not depend on the stopword file still existing.
        """
        return {'fold_accents': self.fold_accents,
                'drop_numeric': self.drop_numeric,
                'stoplist': sorted(self.stoplist)}



    @classmethod
    def from_dict(cls, payload):
        """
        Args:
          payload ({str: *}): Output of `to_dict()`.

        Returns:
          (PreprocessOptions): The options.
        """
        return cls(fold_accents=payload['fold_accents'],
                drop_numeric=payload['drop_numeric'],
                stoplist=frozenset(payload['stoplist']))



def normalize(text, fold_accents=True):
    """
    Lowercase text, optionally folding accents (`é` -> `e`, `ç` -> `c`, ...).

    Args:
      text (str): Raw text.
      fold_accents (bool): Whether to fold diacritics.

    Returns:
      (str): The normalized text.
    """
    text = text.lower()
    if fold_accents:
        text = text.translate(_LIGATURES)
        text = ''.join(c for c in unicodedata.normalize('NFKD', text)
                if not unicodedata.combining(c))
    return text



def is_numeric(token):
    """
    Args:
      token (str): A token.

    Returns:
      (bool): True for numeric values such as `1200`, `45`, `2,5`, `12-15`.
    """
    return _NUMERIC_RE.match(token) is not None



def tokenize(text, drop_numeric=True):
    """
    Split normalized text into tokens.

    Args:
      text (str): Normalized text.
      drop_numeric (bool): Whether to drop numeric tokens.

    Returns:
      ([str]): Maximal runs of letters/digits with intra-word hyphens.
    """
    tokens = _TOKEN_RE.findall(text)
    if drop_numeric:
        tokens = [t for t in tokens if not is_numeric(t)]
    return tokens



def remove_stopwords(tokens, stoplist):
    """
    Args:
      tokens ([str]): Normalized tokens.
      stoplist ({str}): Tokens to remove.

    Returns:
      ([str]): `tokens` without stoplist members, order preserved.
    """
    return [t for t in tokens if t not in stoplist]



def load_stoplist(path=None, fold_accents=True):
    """
    Load a stopword file: one token per line, UTF-8, `#` starts a comment.

    Args:
      path (str or None): The file; None for the bundled French list.
      fold_accents (bool): Normalize entries with accent folding, matching the
        text normalization they will be compared against.

    Returns:
      (frozenset(str)): The normalized stopwords.

    Raises:
      (OSError): The file cannot be read.
    """
    if path is None:
        path = os.path.join(dirs.get_resources_path(), DEFAULT_STOPWORDS_FILE)
    words = set()
    with open(path, encoding='utf_8') as file:
        for line in file:
            line = line.split('#', 1)[0].strip()
            if line:
                words.update(tokenize(normalize(line, fold_accents),
                        drop_numeric=False))
    logger.debug('Loaded %(n)s stopwords from "%(path)s"',
            {'n': len(words), 'path': path})
    return frozenset(words)



def preprocess_text(text, options):
    """
    Run the full text pipeline.

    Args:
      text (str): Raw note text.
      options (PreprocessOptions): The switches and stoplist.

    Returns:
      ([str]): The tokens.
    """
    tokens = tokenize(normalize(text, options.fold_accents),
            options.drop_numeric)
    return remove_stopwords(tokens, options.stoplist)



def preprocess_note(note, options):
    """
    Args:
      note (Note): The note.
      options (PreprocessOptions): The switches and stoplist.

    Returns:
      (TokenDoc): The preprocessed note.
    """
    return TokenDoc(note_id=note.id,
            tokens=tuple(preprocess_text(note.text, options)),
            label=note.label)



def preprocess_corpus(corpus, options):
    """
    Args:
      corpus (Corpus or [Note]): The notes.
      options (PreprocessOptions): The switches and stoplist.

    Returns:
      ([TokenDoc]): One document per note, in order.
    """
    docs = [preprocess_note(n, options) for n in corpus]
    logger.info('Preprocessed %(n)s notes into %(t)s tokens',
            {'n': len(docs), 't': sum(len(d.tokens) for d in docs)})
    return docs



def write_token_docs(docs, path):
    """
    Write token documents as JSONL.

    Args:
      docs ([TokenDoc]): The documents.
      path (str): Destination path.
    """
    lines = [json.dumps(d.to_dict(), ensure_ascii=False) + '\n' for d in docs]
    utils.write_text_file(path, ''.join(lines))
