#!/usr/bin/env python3
"""This module lists all user defined exceptions for import to the modules
that need them (in alphabetical order).

Every exception here subclasses `DomainError` so the CLI can tell a validation
or domain failure (exit code 1) apart from an I/O failure (exit code 2).
"""



class DomainError(Exception):
    """
    Base for all validation and domain errors raised by this package.
    """



class ClassTooSmallError(DomainError):
    """
    Raised when a stratified fold assignment is requested but a class has fewer
    samples than there are folds.
    """



class ContaminationError(DomainError):
    """
    Raised when the same patient or care provider appears in both the train and
    the test side of a partition.
    """



class DimensionMismatchError(DomainError):
    """
    Raised when a feature vector does not have the dimension a fitted model
    expects.
    """



class DuplicateIdError(DomainError):
    """
    Raised when two notes of the same corpus share an id.

    Instance Attributes:
      note_id (str): The duplicated note id.
    """
    def __init__(self, note_id):
        """
        Args:
          note_id (str): The duplicated note id.
        """
        self.note_id = note_id
        super().__init__(f'Duplicate note id "{note_id}"')



class EmptyVocabularyError(DomainError):
    """
    Raised when no token survives the minimum document frequency.
    """



class InsufficientGroupsError(DomainError):
    """
    Raised when a corpus has fewer than 2 distinct patients or fewer than 2
    distinct providers, so no contamination-free split can exist.
    """



class InvalidArchitectureError(DomainError):
    """
    Raised when an MLP is requested with no hidden layer or a layer size < 1.
    """



class InvalidConfigError(DomainError):
    """
    Raised when a configuration value (synthetic corpus, run config, ...) is out
    of its valid range.
    """



class InvalidDimensionError(DomainError):
    """
    Raised when an embedding dimension < 1 is requested.
    """



class KTooLargeError(DomainError):
    """
    Raised when a `k` (selected features, folds) exceeds what the data allows.
    """



class KTooSmallError(DomainError):
    """
    Raised when a `k` (selected features, folds) is below its minimum.
    """



class LengthMismatchError(DomainError):
    """
    Raised when paired sequences (labels vs predictions, samples vs labels)
    differ in length.
    """



class MalformedRecordError(DomainError):
    """
    Raised when a record of a notes file cannot be parsed.

    Instance Attributes:
      line_no (int): The 1-based line number of the offending record.
    """
    def __init__(self, line_no, reason):
        """
        Args:
          line_no (int): The 1-based line number of the offending record.
          reason (str): What was wrong with the record.
        """
        self.line_no = line_no
        super().__init__(f'Malformed record at line {line_no}: {reason}')



class NegativeFeatureError(DomainError):
    """
    Raised when chi-square scoring is given a negative feature value.
    """



class NoTrainingPairsError(DomainError):
    """
    Raised when a corpus yields no (center, context) pair for skip-gram
    training.
    """



class SingleClassError(DomainError):
    """
    Raised when a fit or a score needs both classes but only one is present.
    """



class UnsatisfiableSplitError(DomainError):
    """
    Raised when the patient/provider constraint graph leaves one side of a
    split empty.
    """



class VersionMismatchError(DomainError):
    """
    Raised when a serialized artifact was written by an incompatible version.
    """
