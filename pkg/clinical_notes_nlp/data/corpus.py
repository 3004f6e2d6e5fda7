#!/usr/bin/env python3
"""
Labeled clinical notes: loading them from disk, filtering them down to the notes
of interest, and partitioning them so no patient or care provider is shared by
the train and test sides.

Module Attributes:
  logger (Logger): Logger for this module.
  CSV_COLUMNS ((str)): The required CSV header, in order.
  FIRST_STAY_MAX_HOURS (float): Notes charted later than this after admission
    are dropped by `first_stay_filter()`.
  DEFAULT_NOTE_TYPES (frozenset(str)): Note types kept by `note_type_filter()`.
"""
import csv
import dataclasses
from enum import Enum
import json
import logging

import numpy as np

from clinical_notes_nlp.general import utils
from clinical_notes_nlp.general.exceptions import *  # pylint: disable=wildcard-import



logger = logging.getLogger(__name__)

CSV_COLUMNS = ('id', 'patient_id', 'provider_id', 'stay_index',
        'hours_since_admission', 'label', 'text')

FIRST_STAY_MAX_HOURS = 24.0

DEFAULT_NOTE_TYPES = frozenset({'admission', 'evaluation'})



class Label(Enum):
    """
    Annotation of a note.  Positive is cardiac failure; Negative is healthy.
    """
    POSITIVE = 'Positive'
    NEGATIVE = 'Negative'
    UNLABELED = 'Unlabeled'



    @classmethod
    def parse(cls, raw):
        """
        Parse a label as found in a notes file.

        Args:
          raw (str or None): The raw value.  Missing/empty means unlabeled.

        Returns:
          (Label): The parsed label.

        Raises:
          (ValueError): Not a known label.
        """
        if raw is None or raw == '':
            return cls.UNLABELED
        return cls(raw)



    def to_binary(self):
        """
        Returns:
          (int): 1 for Positive, 0 for Negative.

        Raises:
          (ValueError): Unlabeled has no binary value.
        """
        if self is Label.POSITIVE:
            return 1
        if self is Label.NEGATIVE:
            return 0
        raise ValueError('Unlabeled note has no binary label')



    @classmethod
    def from_binary(cls, value):
        """
        Args:
          value (int): 1 or 0.

        Returns:
          (Label): Positive for 1, Negative otherwise.
        """
        return cls.POSITIVE if value == 1 else cls.NEGATIVE



@dataclasses.dataclass(frozen=True)
class Note:                             # pylint: disable=too-many-instance-attributes
    """
    One clinical document.

    Instance Attributes:
      id (str): Unique within a corpus.
      patient_id (str): Patient the note is about.
      provider_id (str): Care provider who wrote it.
      text (str): Narrative text; may be empty.
      label (Label): Annotation.
      stay_index (int): 1 for the first ICU stay.
      hours_since_admission (float or None): When the note was charted.
      note_type (str or None): E.g. `admission`, `evaluation`.
    """
    id: str
    patient_id: str
    provider_id: str
    text: str
    label: Label = Label.UNLABELED
    stay_index: int = 1
    hours_since_admission: float = None
    note_type: str = None



    def to_dict(self):
        """
        Returns:
          ({str: *}): The JSONL record for this note.  Optional fields that are
            not set are omitted.
        """
        record = {
            'id': self.id,
            'patient_id': self.patient_id,
            'provider_id': self.provider_id,
            'stay_index': self.stay_index,
        }
        if self.hours_since_admission is not None:
            record['hours_since_admission'] = self.hours_since_admission
        if self.note_type is not None:
            record['note_type'] = self.note_type
        record['text'] = self.text
        if self.label is not Label.UNLABELED:
            record['label'] = self.label.value
        return record



class Corpus:
    """
    An ordered, immutable collection of notes with unique ids.  Order is load
    order.

    Instance Attributes:
      _notes ((Note)): The notes.
    """
    def __init__(self, notes):
        """
        Args:
          notes ([Note]): The notes, in order.

        Raises:
          (DuplicateIdError): Two notes share an id.
        """
        seen = set()
        for note in notes:
            if note.id in seen:
                raise DuplicateIdError(note.id)
            seen.add(note.id)
        self._notes = tuple(notes)



    @property
    def notes(self):
        """
        Returns:
          ((Note)): The notes, in order.
        """
        return self._notes



    def __len__(self):
        return len(self._notes)



    def __iter__(self):
        return iter(self._notes)



    def __getitem__(self, idx):
        return self._notes[idx]



    def __eq__(self, other):
        return isinstance(other, Corpus) and self._notes == other._notes



    def __hash__(self):
        return hash(self._notes)



    def labeled(self):
        """
        Returns:
          (Corpus): Only the notes labeled Positive or Negative.
        """
        return Corpus([n for n in self._notes if n.label is not Label.UNLABELED])



    def patient_ids(self):
        """
        Returns:
          ({str}): Distinct patient ids.
        """
        return {n.patient_id for n in self._notes}



    def provider_ids(self):
        """
        Returns:
          ({str}): Distinct provider ids.
        """
        return {n.provider_id for n in self._notes}



def _require_str(record, key, line_no):
    """
    Get a required string field of a record.

    Args:
      record ({str: *}): The record.
      key (str): The field name.
      line_no (int): Line number for errors.

    Returns:
      (str): The value.

    Raises:
      (MalformedRecordError): Missing or not a string.
    """
    val = record.get(key)
    if not isinstance(val, str):
        raise MalformedRecordError(line_no, f'"{key}" must be a string')
    return val



def _optional_number(record, key, line_no, cast):
    """
    Get an optional numeric field of a record, which may be a string in CSV.

    Args:
      record ({str: *}): The record.
      key (str): The field name.
      line_no (int): Line number for errors.
      cast (type): `int` or `float`.

    Returns:
      (int/float or None): The value; None if missing or empty.

    Raises:
      (MalformedRecordError): Present but not a number.
    """
    val = record.get(key)
    if val is None or val == '':
        return None
    if isinstance(val, bool):
        raise MalformedRecordError(line_no, f'"{key}" must be a number')
    try:
        num = cast(val)
    except (TypeError, ValueError) as ex:
        raise MalformedRecordError(line_no, f'"{key}" must be a number') from ex
    if cast is int and isinstance(val, float) and val != num:
        raise MalformedRecordError(line_no, f'"{key}" must be an integer')
    return num



def _note_from_record(record, line_no):
    """
    Build a note from a parsed record.  Unknown fields are ignored.

    Args:
      record ({str: *}): The record, from JSONL or CSV.
      line_no (int): Line number for errors.

    Returns:
      (Note): The note.

    Raises:
      (MalformedRecordError): The record violates the schema.
    """
    if not isinstance(record, dict):
        raise MalformedRecordError(line_no, 'record must be an object')

    stay_index = _optional_number(record, 'stay_index', line_no, int)
    if stay_index is None:
        stay_index = 1
    if stay_index < 1:
        raise MalformedRecordError(line_no, '"stay_index" must be >= 1')

    hours = _optional_number(record, 'hours_since_admission', line_no, float)
    if hours is None and record.get('admitted_at') and record.get('charted_at'):
        try:
            hours = utils.hours_between(record['admitted_at'],
                    record['charted_at'])
        except (TypeError, ValueError) as ex:
            raise MalformedRecordError(line_no,
                    f'unparsable admission/charting time: {ex}') from ex
    if hours is not None and hours < 0:
        raise MalformedRecordError(line_no,
                '"hours_since_admission" must be >= 0')

    try:
        label = Label.parse(record.get('label'))
    except ValueError as ex:
        raise MalformedRecordError(line_no,
                f'unknown label {record.get("label")!r}') from ex

    note_type = record.get('note_type')
    if note_type is not None and not isinstance(note_type, str):
        raise MalformedRecordError(line_no, '"note_type" must be a string')

    return Note(id=_require_str(record, 'id', line_no),
            patient_id=_require_str(record, 'patient_id', line_no),
            provider_id=_require_str(record, 'provider_id', line_no),
            text=_require_str(record, 'text', line_no),
            label=label,
            stay_index=stay_index,
            hours_since_admission=hours,
            note_type=note_type or None)



def _read_jsonl_records(file):
    """
    Yields the records of a JSONL file, skipping blank lines.

    Args:
      file (file): The open file.

    Yields:
      ((int, {str: *})): Line number and parsed record.

    Raises:
      (MalformedRecordError): A line is not valid JSON.
    """
    for line_no, line in enumerate(file, start=1):
        if not line.strip():
            continue
        try:
            yield line_no, json.loads(line)
        except json.JSONDecodeError as ex:
            raise MalformedRecordError(line_no, f'invalid JSON ({ex.msg})') \
                    from ex



def _read_csv_records(file):
    """
    Yields the records of a CSV file with the required header.

    Args:
      file (file): The open file.

    Yields:
      ((int, {str: *})): Line number and parsed record.

    Raises:
      (MalformedRecordError): Missing/incorrect header or wrong column count.
    """
    reader = csv.reader(file)
    header = next(reader, None)
    if header is None:
        return
    if tuple(h.strip() for h in header) != CSV_COLUMNS:
        raise MalformedRecordError(1, 'CSV header must be'
                + f' "{",".join(CSV_COLUMNS)}"')
    for row in reader:
        if not row:
            continue
        if len(row) != len(CSV_COLUMNS):
            raise MalformedRecordError(reader.line_num,
                    f'expected {len(CSV_COLUMNS)} columns, found {len(row)}')
        yield reader.line_num, dict(zip(CSV_COLUMNS, row))



def infer_format(path):
    """
    Infer the notes file format from its extension.

    Args:
      path (str): The file path.

    Returns:
      (str): `csv` for `.csv` files; `jsonl` otherwise.
    """
    return 'csv' if str(path).lower().endswith('.csv') else 'jsonl'



def _locate_decode_error(path):
    """
    Find the first byte of `path` that is not valid UTF-8.

    Args:
      path (str): The file path.

    Returns:
      ((int, int) or None): 1-based line number and 0-based byte offset of the
        first invalid byte; None if the whole file decodes.
    """
    with open(path, 'rb') as file:
        data = file.read()
    try:
        data.decode('utf_8')
    except UnicodeDecodeError as ex:
        return data.count(b'\n', 0, ex.start) + 1, ex.start
    return None



def load_notes(path, fmt=None):
    """
    Load a notes file.

    Args:
      path (str): Path to a UTF-8 JSONL or CSV file.
      fmt (str or None): `jsonl` or `csv`; inferred from the extension if None.

    Returns:
      (Corpus): One note per record, in file order.

    Raises:
      (MalformedRecordError): A record cannot be parsed, or the file is not
        valid UTF-8.
      (DuplicateIdError): Two records share an id.
      (InvalidConfigError): Unknown format.
      (OSError): The file cannot be read.
    """
    fmt = fmt or infer_format(path)
    if fmt not in ('jsonl', 'csv'):
        raise InvalidConfigError(f'Unknown notes format "{fmt}"')

    notes = []
    newline = '' if fmt == 'csv' else None
    try:
        with open(path, encoding='utf_8', newline=newline) as file:
            records = _read_csv_records(file) if fmt == 'csv' \
                    else _read_jsonl_records(file)
            for line_no, record in records:
                notes.append(_note_from_record(record, line_no))
    except UnicodeDecodeError as ex:
        line_no, offset = _locate_decode_error(path) or (1, ex.start)
        raise MalformedRecordError(line_no, f'"{path}" is not valid UTF-8'
                + f' (byte offset {offset})') from ex

    corpus = Corpus(notes)
    logger.info('Loaded %(n)s notes from "%(path)s"',
            {'n': len(corpus), 'path': path})
    return corpus



def write_notes(corpus, path):
    """
    Write a corpus as JSONL, one note per line, keys in schema order.

    Args:
      corpus (Corpus): The notes.
      path (str): Destination path.
    """
    lines = [json.dumps(n.to_dict(), ensure_ascii=False) + '\n' for n in corpus]
    utils.write_text_file(path, ''.join(lines))
    logger.info('Wrote %(n)s notes to "%(path)s"', {'n': len(corpus),
            'path': path})



def first_stay_filter(corpus):
    """
    Keep only notes of the first ICU stay charted within the first 24h.

    Args:
      corpus (Corpus): The notes.

    Returns:
      (Corpus): Notes with `stay_index == 1` and `hours_since_admission` absent
        or <= 24, in original order.
    """
    kept = Corpus([n for n in corpus if n.stay_index == 1
            and (n.hours_since_admission is None
                or n.hours_since_admission <= FIRST_STAY_MAX_HOURS)])
    logger.info('First-stay filter kept %(kept)s of %(total)s notes',
            {'kept': len(kept), 'total': len(corpus)})
    return kept



def note_type_filter(corpus, allowed=DEFAULT_NOTE_TYPES):
    """
    Keep only notes of the given types.  Notes without a type are kept.

    Args:
      corpus (Corpus): The notes.
      allowed ({str}): Note types to keep (compared case-insensitively).

    Returns:
      (Corpus): The kept notes, in original order.
    """
    allowed = {a.lower() for a in allowed}
    kept = Corpus([n for n in corpus
            if n.note_type is None or n.note_type.lower() in allowed])
    logger.info('Note-type filter kept %(kept)s of %(total)s notes',
            {'kept': len(kept), 'total': len(corpus)})
    return kept



def group_ids(corpus):
    """
    Connected component of every note in the bipartite patient<->provider
    graph.  Two notes are in the same component when they are linked by any
    chain of shared patients or providers.

    Args:
      corpus (Corpus or [Note]): The notes.

    Returns:
      ([int]): Component id per note, numbered 0.. in order of first
        appearance.
    """
    parent = {}

    def find(node):
        root = node
        while parent[root] != root:
            root = parent[root]
        while parent[node] != root:
            parent[node], node = root, parent[node]
        return root

    def union(a, b):
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        root_a, root_b = find(a), find(b)
        if root_a != root_b:
            parent[root_b] = root_a

    for note in corpus:
        union(('patient', note.patient_id), ('provider', note.provider_id))

    numbering = {}
    ids = []
    for note in corpus:
        root = find(('patient', note.patient_id))
        ids.append(numbering.setdefault(root, len(numbering)))
    return ids



def split_disjoint(corpus, test_fraction, seed):
    """
    Split a corpus so no patient id and no provider id appears on both sides.

    Whole connected components of the patient<->provider graph are assigned to
    a side: the components are shuffled with the seeded RNG and moved to the
    test side until it reaches round(test_fraction * |corpus|) notes.  At least
    one component always stays on each side.

    Args:
      corpus (Corpus): The notes.
      test_fraction (float): Target test share, in (0, 1).
      seed (int): RNG seed.

    Returns:
      ((Corpus, Corpus)): Train and test partitions, each in load order.

    Raises:
      (InvalidConfigError): `test_fraction` out of range.
      (InsufficientGroupsError): < 2 distinct patients or providers.
      (UnsatisfiableSplitError): The graph is a single component.
    """
    if not 0 < test_fraction < 1:
        raise InvalidConfigError(f'test_fraction must be in (0, 1), got'
                + f' {test_fraction}')
    if len(corpus.patient_ids()) < 2 or len(corpus.provider_ids()) < 2:
        raise InsufficientGroupsError('Need at least 2 distinct patients and 2'
                + ' distinct providers to split; found'
                + f' {len(corpus.patient_ids())} and'
                + f' {len(corpus.provider_ids())}.')

    comp_of_note = group_ids(corpus)
    n_comps = max(comp_of_note) + 1
    if n_comps < 2:
        raise UnsatisfiableSplitError('All notes are linked through shared'
                + ' patients/providers; one side of the split would be empty.')

    comp_sizes = np.bincount(comp_of_note, minlength=n_comps)
    order = np.random.default_rng(seed).permutation(n_comps)
    target = round(test_fraction * len(corpus))

    test_comps = set()
    test_size = 0
    for comp in order[:-1]:
        if test_size >= target and test_comps:
            break
        test_comps.add(int(comp))
        test_size += int(comp_sizes[comp])

    train = Corpus([n for n, c in zip(corpus, comp_of_note)
            if c not in test_comps])
    test = Corpus([n for n, c in zip(corpus, comp_of_note) if c in test_comps])
    check_disjoint(train, test)
    logger.info('Split %(total)s notes into %(train)s train / %(test)s test'
            + ' (%(comps)s groups)', {'total': len(corpus), 'train': len(train),
            'test': len(test), 'comps': n_comps})
    return train, test



def check_disjoint(train, test):
    """
    Contamination guard: no patient or provider may be on both sides.

    Args:
      train (Corpus or [Note]): One side.
      test (Corpus or [Note]): The other side.

    Raises:
      (ContaminationError): Shared ids found; the message names them.
    """
    shared_patients = {n.patient_id for n in train} \
            & {n.patient_id for n in test}
    shared_providers = {n.provider_id for n in train} \
            & {n.provider_id for n in test}
    if shared_patients or shared_providers:
        raise ContaminationError('Train and test share patients'
                + f' {sorted(shared_patients)} and providers'
                + f' {sorted(shared_providers)}')
