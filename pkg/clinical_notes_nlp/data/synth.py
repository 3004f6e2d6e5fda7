#!/usr/bin/env python3
"""
Seeded generator of labeled pseudo-clinical notes with a plantable class
signal.  Stands in for real hospital notes, which cannot be shipped.

Each token of a note is drawn from its class's signal words with probability
`signal_strength` and from a shared background otherwise.  The background is
synthetic `w0001...` tokens, French filler (mostly stopwords) and an occasional
numeric value, so preprocessing has work to do.

Module Attributes:
  DEFAULT_SIGNAL_WORDS_POS ((str)): Cardiac terms and abbreviations.
  DEFAULT_SIGNAL_WORDS_NEG ((str)): Respiratory and unremarkable-exam terms.
  FRENCH_FILLER ((str)): Background filler words.
  _NUMERIC_RATE (float): Share of background tokens that are numbers.
  logger (Logger): Logger for this module.
"""
import dataclasses
import logging

import numpy as np

from clinical_notes_nlp.data.corpus import Corpus, Label, Note
from clinical_notes_nlp.general.exceptions import InvalidConfigError



DEFAULT_SIGNAL_WORDS_POS = ('civ', 'cec', 'cia', 'fc', 'milri', 'aortique',
        'aorte', 'valve')
DEFAULT_SIGNAL_WORDS_NEG = ('ivrs', 'sop', 'po', 'bronchiolite', 'asthme',
        'pneumonie', 'eupneique', 'afebrile')
FRENCH_FILLER = ('le', 'la', 'les', 'de', 'des', 'du', 'un', 'une', 'et',
        'est', 'avec', 'pour', 'dans', 'sur', 'pas', 'au', 'par', 'patient',
        'examen', 'suivi', 'jour', 'soir', 'note', 'garde', 'à', 'été', 'très')
_NUMERIC_RATE = 0.03

logger = logging.getLogger(__name__)



@dataclasses.dataclass(frozen=True)
class SynthConfig:                      # pylint: disable=too-many-instance-attributes
    """
    Generator settings.

    Instance Attributes:
      n_docs (int): Number of notes, >= 0.
      doc_len_range ((int, int)): Inclusive token count range of a note.
      vocab_size (int): Number of synthetic background tokens.
      signal_words_pos ((str)): Signal tokens of Positive notes.
      signal_words_neg ((str)): Signal tokens of Negative notes; disjoint from
        `signal_words_pos`.
      signal_strength (float): Per-token probability of a signal word, [0, 1].
      positive_fraction (float): Share of Positive notes, (0, 1).
      n_patients (int): Patients assigned round-robin over the notes.
      n_providers (int): Providers, each owning a fixed set of patients.
      seed (int): RNG seed.
    """
    n_docs: int = 600
    doc_len_range: tuple = (20, 60)
    vocab_size: int = 300
    signal_words_pos: tuple = DEFAULT_SIGNAL_WORDS_POS
    signal_words_neg: tuple = DEFAULT_SIGNAL_WORDS_NEG
    signal_strength: float = 0.7
    positive_fraction: float = 0.5
    n_patients: int = 300
    n_providers: int = 60
    seed: int = 1



    def validate(self):
        """
        Raises:
          (InvalidConfigError): Any setting out of range.
        """
        lo, hi = self.doc_len_range
        problems = []
        if self.n_docs < 0:
            problems.append(f'n_docs must be >= 0, got {self.n_docs}')
        if not 1 <= lo <= hi:
            problems.append(f'doc_len_range must satisfy 1 <= min <= max, got'
                    + f' {self.doc_len_range}')
        if self.vocab_size < 1:
            problems.append(f'vocab_size must be >= 1, got {self.vocab_size}')
        if not self.signal_words_pos or not self.signal_words_neg:
            problems.append('Both signal word lists must be non-empty')
        overlap = set(self.signal_words_pos) & set(self.signal_words_neg)
        if overlap:
            problems.append(f'Signal word lists overlap: {sorted(overlap)}')
        if not 0 <= self.signal_strength <= 1:
            problems.append('signal_strength must be in [0, 1], got'
                    + f' {self.signal_strength}')
        if not 0 < self.positive_fraction < 1:
            problems.append('positive_fraction must be in (0, 1), got'
                    + f' {self.positive_fraction}')
        if self.n_patients < 1 or self.n_providers < 1:
            problems.append('n_patients and n_providers must be >= 1')
        if problems:
            raise InvalidConfigError('; '.join(problems))



def _background_vocab(vocab_size):
    width = max(4, len(str(vocab_size)))
    return [f'w{i:0{width}d}' for i in range(1, vocab_size + 1)] \
            + list(FRENCH_FILLER)



def generate_corpus(cfg):
    """
    Args:
      cfg (SynthConfig): Generator settings.

    Returns:
      (Corpus): `cfg.n_docs` labeled notes with exactly
        `round(positive_fraction * n_docs)` Positive ones.

    Raises:
      (InvalidConfigError): Invalid settings.
    """
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    background = _background_vocab(cfg.vocab_size)
    n_pos = round(cfg.positive_fraction * cfg.n_docs)
    is_positive = np.zeros(cfg.n_docs, dtype=bool)
    is_positive[:n_pos] = True
    is_positive = is_positive[rng.permutation(cfg.n_docs)]

    notes = []
    for i_doc in range(cfg.n_docs):
        signal = cfg.signal_words_pos if is_positive[i_doc] \
                else cfg.signal_words_neg
        length = int(rng.integers(cfg.doc_len_range[0],
                cfg.doc_len_range[1] + 1))
        from_signal = rng.random(length) < cfg.signal_strength
        signal_picks = rng.integers(len(signal), size=length)
        background_picks = rng.integers(len(background), size=length)
        numeric = rng.random(length) < _NUMERIC_RATE
        values = rng.integers(1, 2000, size=length)
        tokens = []
        for pos in range(length):
            if from_signal[pos]:
                tokens.append(signal[signal_picks[pos]])
            elif numeric[pos]:
                tokens.append(str(values[pos]))
            else:
                tokens.append(background[background_picks[pos]])

        patient = i_doc % cfg.n_patients
        notes.append(Note(
                id=f'synth-{i_doc + 1:05d}',
                patient_id=f'p{patient + 1:04d}',
                provider_id=f'md{patient % cfg.n_providers + 1:03d}',
                text=' '.join(tokens),
                label=Label.POSITIVE if is_positive[i_doc] else Label.NEGATIVE,
                stay_index=1,
                hours_since_admission=round(float(rng.uniform(0, 24)), 1),
                note_type='admission' if rng.random() < 0.5 else 'evaluation'))

    logger.info('Generated %(n)s notes (%(pos)s Positive), signal strength'
            ' %(s)s', {'n': cfg.n_docs, 'pos': n_pos,
            's': cfg.signal_strength})
    return Corpus(notes)
