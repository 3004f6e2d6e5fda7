#!/usr/bin/env python3
"""
The representation x classifier x feature-selection experiment grid.

Every cell is cross-validated on the same folds.  Within a fold, the
representation is fitted once on the training documents and shared by all the
classifier/selection cells of that fold; selectors and classifiers are fitted
per cell.  Nothing is ever fitted on held-out documents.

Module Attributes:
  REPORTED_SCORES ({(bool, str, str): (float, float, float, float)}): Scores
    published for the private hospital cohort, keyed by (selection,
    representation, classifier).  Display-only reference values.
  logger (Logger): Logger for this module.
"""
import csv
import dataclasses
import io
import logging

from joblib import Parallel, delayed

from clinical_notes_nlp.classifiers import classifiers
from clinical_notes_nlp.data.corpus import Corpus, check_disjoint, group_ids
from clinical_notes_nlp.evaluation.folds import kfold_split
from clinical_notes_nlp.evaluation.metrics import METRIC_NAMES, \
        average_reports, compute_metrics
from clinical_notes_nlp.features import representations, select
from clinical_notes_nlp.general.exceptions import InvalidConfigError
from clinical_notes_nlp.general.utils import derive_seed
from clinical_notes_nlp.text.preprocess import PreprocessOptions, \
        preprocess_corpus



REPORTED_SCORES = {
    (False, 'bow', 'lr'): (0.81, 0.80, 0.82, 0.81),
    (False, 'bow', 'gnb'): (0.78, 0.76, 0.81, 0.78),
    (False, 'bow', 'mlp'): (0.81, 0.80, 0.82, 0.81),
    (False, 'tfidf', 'lr'): (0.78, 0.76, 0.79, 0.77),
    (False, 'tfidf', 'gnb'): (0.77, 0.74, 0.80, 0.77),
    (False, 'tfidf', 'mlp'): (0.84, 0.82, 0.85, 0.83),
    (False, 'embed', 'lr'): (0.76, 0.74, 0.79, 0.76),
    (False, 'embed', 'gnb'): (0.76, 0.71, 0.79, 0.75),
    (False, 'embed', 'mlp'): (0.77, 0.76, 0.78, 0.77),
    (True, 'bow', 'lr'): (0.81, 0.81, 0.79, 0.80),
    (True, 'bow', 'gnb'): (0.80, 0.78, 0.79, 0.78),
    (True, 'bow', 'mlp'): (0.82, 0.82, 0.81, 0.81),
    (True, 'tfidf', 'lr'): (0.82, 0.81, 0.83, 0.82),
    (True, 'tfidf', 'gnb'): (0.81, 0.82, 0.79, 0.80),
    (True, 'tfidf', 'mlp'): (0.87, 0.86, 0.88, 0.87),
    (True, 'embed', 'lr'): (0.80, 0.79, 0.80, 0.79),
    (True, 'embed', 'gnb'): (0.79, 0.79, 0.79, 0.79),
    (True, 'embed', 'mlp'): (0.80, 0.80, 0.80, 0.80),
}

logger = logging.getLogger(__name__)



def _selection_name(selection):
    return 'with' if selection else 'without'



@dataclasses.dataclass(frozen=True)
class GridConfig:                       # pylint: disable=too-many-instance-attributes
    """
    Everything that determines a grid run.

    Instance Attributes:
      k (int): Number of folds.
      seed (int): Base seed; every fitted component derives its own from it.
      stratified (bool): Stratify folds by class.
      select_k (int or None): Features kept by selection; None for
        `min(1000, dim)`.  Capped at each representation's dimension.
      threshold (float): Decision threshold on the Positive probability.
      jobs (int): Worker processes for (representation, fold) units.
      representations ((str)): Representations to evaluate, in report order.
      models ((str)): Classifiers to evaluate, in report order.
      representation_params ({str: {str: *}}): Constructor kwargs per
        representation name.
      model_params ({str: {str: *}}): Constructor kwargs per classifier name.
      preprocess (PreprocessOptions or None): None for the defaults.
    """
    k: int = 5
    seed: int = 1
    stratified: bool = True
    select_k: int = None
    threshold: float = 0.5
    jobs: int = 1
    representations: tuple = ('bow', 'tfidf', 'embed')
    models: tuple = ('lr', 'gnb', 'mlp')
    representation_params: dict = dataclasses.field(default_factory=dict)
    model_params: dict = dataclasses.field(default_factory=dict)
    preprocess: PreprocessOptions = None



    @classmethod
    def from_run_config(cls, run_config):
        """
        Args:
          run_config (RunConfig): The validated CLI/config-file settings.

        Returns:
          (GridConfig): The grid settings.
        """
        rep_names = tuple(representations.list_representation_names())
        model_names = tuple(classifiers.list_model_names())
        return cls(k=run_config.k, seed=run_config.seed,
                stratified=run_config.stratified,
                select_k=run_config.select_k,
                threshold=run_config.threshold, jobs=run_config.jobs,
                representations=rep_names, models=model_names,
                representation_params={n: run_config.representation_params(n)
                    for n in rep_names},
                model_params={n: run_config.model_params(n)
                    for n in model_names},
                preprocess=PreprocessOptions.create(run_config.fold_accents,
                    run_config.drop_numeric, run_config.stopwords_path))



@dataclasses.dataclass(frozen=True)
class CellResult:
    """
    One classifier/selection cell evaluated on one fold.

    Instance Attributes:
      model_name (str): Classifier name.
      selection (bool): Whether features were selected.
      metrics (MetricsReport): Held-out metrics.
      selector (SelectorModel or None): The fitted selector.
      classifier (Classifier<>): The fitted classifier.
    """
    model_name: str
    selection: bool
    metrics: object
    selector: object
    classifier: object



@dataclasses.dataclass(frozen=True)
class FoldResult:
    """
    All cells of one representation on one fold.

    Instance Attributes:
      rep_name (str): Representation name.
      fold (int): Fold id.
      representation (Representation<>): The representation fitted on the
        fold's training documents.
      cells ((CellResult)): One result per (classifier, selection).
    """
    rep_name: str
    fold: int
    representation: object
    cells: tuple



@dataclasses.dataclass(frozen=True)
class GridRow:
    """
    One cell of the grid, averaged over folds.

    Instance Attributes:
      representation (str): Representation name.
      classifier (str): Classifier name.
      selection (bool): Whether features were selected.
      metrics (MetricsReport): Fold-mean metrics.
      fold_metrics ((MetricsReport)): Per-fold metrics, by fold id.
    """
    representation: str
    classifier: str
    selection: bool
    metrics: object
    fold_metrics: tuple



@dataclasses.dataclass(frozen=True)
class GridReport:
    """
    Fold-mean metrics of every grid cell, without selection first, then by
    representation, then by classifier.

    Instance Attributes:
      rows ((GridRow)): The cells.
    """
    rows: tuple



    def get(self, representation, classifier, selection):
        """
        Args:
          representation (str): Representation name.
          classifier (str): Classifier name.
          selection (bool): Whether features were selected.

        Returns:
          (GridRow): The matching row.

        Raises:
          (KeyError): No such cell.
        """
        for row in self.rows:
            if (row.representation, row.classifier, row.selection) \
                    == (representation, classifier, selection):
                return row
        raise KeyError((representation, classifier, selection))



    def to_csv(self):
        """
        Returns:
          (str): `representation,classifier,selection,acc,pre,rec,f1` CSV
            with display names and 4-decimal metrics.
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(['representation', 'classifier', 'selection',
                *METRIC_NAMES])
        for row in self.rows:
            writer.writerow([_rep_display(row.representation),
                    _model_display(row.classifier),
                    _selection_name(row.selection),
                    *(f'{getattr(row.metrics, m):.4f}' for m in METRIC_NAMES)])
        return buffer.getvalue()



    def to_text_table(self, reference=False):
        """
        Render an aligned plain-text table grouped by selection and
        representation.

        Args:
          reference (bool): Add the published reference scores as extra
            columns, where one exists for the cell.

        Returns:
          (str): The table.
        """
        header = ['Selection', 'Representation', 'Classifier',
                *(m.upper() for m in METRIC_NAMES)]
        if reference:
            header += [f'REF {m.upper()}' for m in METRIC_NAMES]
        lines = [header]
        prev_row = None
        for row in self.rows:
            new_sel = prev_row is None or row.selection != prev_row.selection
            new_rep = new_sel or row.representation != prev_row.representation
            line = [_selection_name(row.selection) if new_sel else '',
                    _rep_display(row.representation) if new_rep else '',
                    _model_display(row.classifier)]
            prev_row = row
            line += [f'{getattr(row.metrics, m):.2f}' for m in METRIC_NAMES]
            if reference:
                ref = REPORTED_SCORES.get((row.selection, row.representation,
                        row.classifier))
                line += [f'{v:.2f}' for v in ref] if ref else ['-'] * 4
            lines.append(line)

        widths = [max(len(line[c]) for line in lines)
                for c in range(len(header))]
        rule = '-+-'.join('-' * w for w in widths)
        rendered = []
        for i_line, line in enumerate(lines):
            cells = [cell.ljust(w) if c < 3 else cell.rjust(w)
                    for c, (cell, w) in enumerate(zip(line, widths))]
            rendered.append(' | '.join(cells).rstrip())
            if i_line == 0:
                rendered.append(rule)
        return '\n'.join(rendered) + '\n'



def _rep_display(name):
    return representations.get_representation_cls(name).DISPLAY_NAME



def _model_display(name):
    return classifiers.get_model_cls(name).DISPLAY_NAME



def fit_representation(train_docs, rep_name, config, fold):
    """
    Args:
      train_docs ([TokenDoc]): The fold's training documents.
      rep_name (str): Representation name.
      config (GridConfig): The grid settings.
      fold (int): Fold id.

    Returns:
      (Representation<>): Fitted on `train_docs` only, seeded from
        (seed, representation, fold).
    """
    params = dict(config.representation_params.get(rep_name, {}))
    rep = representations.create_representation(rep_name,
            seed=derive_seed(config.seed, rep_name, fold), **params)
    return rep.fit(train_docs)



def fit_cell(rep, train_X, train_y, model_name, selection, config, fold):  # pylint: disable=too-many-arguments
    """
    Fit the selector (if any) and classifier of one cell.

    Args:
      rep (Representation<>): The fitted representation.
      train_X ([SparseVector]/[DenseVector]): Training vectors.
      train_y ([int]): Training labels.
      model_name (str): Classifier name.
      selection (bool): Whether to select features.
      config (GridConfig): The grid settings.
      fold (int): Fold id.

    Returns:
      (SelectorModel or None): The fitted selector.
      (Classifier<>): The fitted classifier, seeded from (seed,
        representation, classifier, selection, fold).
    """
    selector = None
    if selection:
        k = min(config.select_k or select.default_k(rep.dim), rep.dim)
        scores = rep.get_scorer()(train_X, train_y)
        train_X, selector = select.select_k_best(train_X, scores, k)
    params = dict(config.model_params.get(model_name, {}))
    clf = classifiers.create_model(model_name, seed=derive_seed(config.seed,
            rep.name, model_name, _selection_name(selection), fold), **params)
    return selector, clf.fit(train_X, train_y)



def evaluate_fold(train_docs, train_y, test_docs, test_y, rep_name, config,  # pylint: disable=too-many-arguments
        fold=0):
    """
    Fit one representation on a fold's training documents and evaluate every
    classifier/selection cell on its held-out documents.

    Args:
      train_docs ([TokenDoc]): Training documents.
      train_y ([int]): Training labels.
      test_docs ([TokenDoc]): Held-out documents; only ever transformed.
      test_y ([int]): Held-out labels.
      rep_name (str): Representation name.
      config (GridConfig): The grid settings.
      fold (int): Fold id.

    Returns:
      (FoldResult): The fitted components and held-out metrics.
    """
    rep = fit_representation(train_docs, rep_name, config, fold)
    train_X = rep.transform(train_docs)
    test_X = rep.transform(test_docs)

    cells = []
    for selection in (False, True):
        for model_name in config.models:
            selector, clf = fit_cell(rep, train_X, train_y, model_name,
                    selection, config, fold)
            cell_X = selector.transform(test_X) if selector else test_X
            metrics = compute_metrics(test_y, clf.predict(cell_X,
                    config.threshold))
            logger.info('Fold %(fold)s %(rep)s/%(clf)s/%(sel)s: acc %(acc).4f'
                    ' f1 %(f1).4f', {'fold': fold, 'rep': rep_name,
                    'clf': model_name, 'sel': _selection_name(selection),
                    'acc': metrics.acc, 'f1': metrics.f1})
            cells.append(CellResult(model_name, selection, metrics, selector,
                    clf))
    return FoldResult(rep_name, fold, rep, tuple(cells))



def _run_unit(docs, labels, folds, rep_name, config, fold):  # pylint: disable=too-many-arguments
    train_idx = folds.train_indices(fold)
    test_idx = folds.test_indices(fold)
    return evaluate_fold([docs[i] for i in train_idx],
            [labels[i] for i in train_idx], [docs[i] for i in test_idx],
            [labels[i] for i in test_idx], rep_name, config, fold)



def run_grid(corpus, config):
    """
    Cross-validate every (representation, classifier, selection) cell.

    Folds keep patient/provider components together, and every fold is
    checked for contamination before anything is fitted.

    Args:
      corpus (Corpus): The notes; unlabeled notes are ignored.
      config (GridConfig): The grid settings.

    Returns:
      (GridReport): Fold-mean metrics per cell.

    Raises:
      (InvalidConfigError): No labeled note.
      (ContaminationError): A fold shares a patient or provider with its
        training side.
      Errors of the components are propagated.
    """
    labeled = corpus.labeled()
    if len(labeled) == 0:
        raise InvalidConfigError('The grid needs labeled notes; none found')
    options = config.preprocess or PreprocessOptions.create()
    docs = preprocess_corpus(labeled, options)
    labels = [note.label.to_binary() for note in labeled]
    folds = kfold_split(labels, config.k, config.seed, config.stratified,
            groups=group_ids(labeled))
    for fold in range(config.k):
        check_disjoint(Corpus([labeled[i] for i in folds.train_indices(fold)]),
                Corpus([labeled[i] for i in folds.test_indices(fold)]))

    units = [(rep_name, fold) for rep_name in config.representations
            for fold in range(config.k)]
    if config.jobs > 1:
        results = Parallel(n_jobs=config.jobs)(delayed(_run_unit)(docs,
                labels, folds, rep_name, config, fold)
                for rep_name, fold in units)
    else:
        results = [_run_unit(docs, labels, folds, rep_name, config, fold)
                for rep_name, fold in units]

    per_cell = {}
    for result in results:
        for cell in result.cells:
            per_cell.setdefault((cell.selection, result.rep_name,
                    cell.model_name), []).append(cell.metrics)

    rows = []
    for selection in (False, True):
        for rep_name in config.representations:
            for model_name in config.models:
                fold_metrics = tuple(per_cell[(selection, rep_name,
                        model_name)])
                rows.append(GridRow(rep_name, model_name, selection,
                        average_reports(fold_metrics), fold_metrics))
    logger.info('Grid complete: %(cells)s cells x %(k)s folds on %(n)s notes',
            {'cells': len(rows), 'k': config.k, 'n': len(labeled)})
    return GridReport(tuple(rows))
