#!/usr/bin/env python3
"""
Binary classification metrics with Positive as the positive class.

A ratio with a zero denominator is reported as 0 and its name is recorded in
`zero_division`.

Module Attributes:
  METRIC_NAMES ((str)): Metric names in report order.
"""
import dataclasses

import numpy as np

from clinical_notes_nlp.data.corpus import Label
from clinical_notes_nlp.general.exceptions import LengthMismatchError



METRIC_NAMES = ('acc', 'pre', 'rec', 'f1')



@dataclasses.dataclass(frozen=True)
class MetricsReport:                    # pylint: disable=too-many-instance-attributes
    """
    Accuracy, precision, recall and F1 with the confusion counts behind them.

    Instance Attributes:
      acc (float): (TP + TN) / total.
      pre (float): TP / (TP + FP).
      rec (float): TP / (TP + FN).
      f1 (float): Harmonic mean of `pre` and `rec`.
      tp (int): True positives.
      fp (int): False positives.
      fn (int): False negatives.
      tn (int): True negatives.
      zero_division ((str)): Metrics whose denominator was 0.
    """
    acc: float
    pre: float
    rec: float
    f1: float
    tp: int
    fp: int
    fn: int
    tn: int
    zero_division: tuple = ()



    @property
    def confusion(self):
        """
        Returns:
          ((int, int, int, int)): (TP, FP, FN, TN).
        """
        return (self.tp, self.fp, self.fn, self.tn)



    def to_dict(self):
        """
        Returns:
          ({str: *}): JSON-ready fields.
        """
        return {**dataclasses.asdict(self),
                'zero_division': list(self.zero_division)}



def _to_binary(values):
    return np.array([v.to_binary() if isinstance(v, Label) else int(v)
            for v in values], dtype=int)



def _ratio(num, den, name, flags):
    if den == 0:
        flags.append(name)
        return 0.0
    return num / den



def compute_metrics(y_true, y_pred):
    """
    Args:
      y_true ([int/Label]): Reference labels.
      y_pred ([int/Label]): Predicted labels.

    Returns:
      (MetricsReport): The metrics.

    Raises:
      (LengthMismatchError): Lengths differ or are 0.
    """
    if len(y_true) != len(y_pred) or len(y_true) == 0:
        raise LengthMismatchError(f'{len(y_true)} reference labels vs'
                + f' {len(y_pred)} predictions')
    truth = _to_binary(y_true)
    pred = _to_binary(y_pred)
    tp = int(np.sum((truth == 1) & (pred == 1)))
    fp = int(np.sum((truth == 0) & (pred == 1)))
    fn = int(np.sum((truth == 1) & (pred == 0)))
    tn = int(np.sum((truth == 0) & (pred == 0)))

    flags = []
    pre = _ratio(tp, tp + fp, 'pre', flags)
    rec = _ratio(tp, tp + fn, 'rec', flags)
    f1 = _ratio(2 * pre * rec, pre + rec, 'f1', flags)
    return MetricsReport((tp + tn) / len(truth), pre, rec, f1, tp, fp, fn, tn,
            tuple(flags))



def average_reports(reports):
    """
    Fold-mean of the metrics, summed confusion counts, union of the flags.

    Args:
      reports ([MetricsReport]): Non-empty list of per-fold reports.

    Returns:
      (MetricsReport): The aggregate.
    """
    means = {name: float(np.mean([getattr(r, name) for r in reports]))
            for name in METRIC_NAMES}
    counts = {name: sum(getattr(r, name) for r in reports)
            for name in ('tp', 'fp', 'fn', 'tn')}
    flags = tuple(name for name in METRIC_NAMES
            if any(name in r.zero_division for r in reports))
    return MetricsReport(**means, **counts, zero_division=flags)
