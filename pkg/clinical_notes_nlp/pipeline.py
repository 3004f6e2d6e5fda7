#!/usr/bin/env python3
"""
A fitted end-to-end note classifier: preprocessing options, representation,
optional feature selector and classifier, saved together as one versioned
`pipeline` artifact.

Module Attributes:
  ARTIFACT_KIND (str): The `kind` of a pipeline artifact.
  logger (Logger): Logger for this module.
"""
import logging

import numpy as np

from clinical_notes_nlp import version
from clinical_notes_nlp.classifiers import classifiers
from clinical_notes_nlp.features import representations, select
from clinical_notes_nlp.features.select import SelectorModel
from clinical_notes_nlp.general.exceptions import InvalidConfigError
from clinical_notes_nlp.general.utils import derive_seed
from clinical_notes_nlp.text.preprocess import PreprocessOptions, \
        preprocess_corpus



ARTIFACT_KIND = 'pipeline'

logger = logging.getLogger(__name__)



class Pipeline:
    """
    Preprocess -> represent -> select -> classify.

    Instance Attributes:
      options (PreprocessOptions): Preprocessing switches and stoplist.
      representation (Representation<>): The fitted representation.
      selector (SelectorModel or None): The fitted selector, if any.
      classifier (Classifier<>): The fitted classifier.
    """
    def __init__(self, options, representation, selector, classifier):
        self.options = options
        self.representation = representation
        self.selector = selector
        self.classifier = classifier



    @classmethod
    def fit(cls, corpus, run_config):
        """
        Fit every stage on the labeled notes of `corpus`.

        Args:
          corpus (Corpus): Training notes; unlabeled ones are ignored.
          run_config (RunConfig): Representation, model, selection and
            hyperparameter settings.

        Returns:
          (Pipeline): The fitted pipeline.

        Raises:
          (InvalidConfigError): No labeled note, or unknown names.
          Errors of the components are propagated.
        """
        labeled = corpus.labeled()
        if len(labeled) == 0:
            raise InvalidConfigError('Fitting needs labeled notes; none found')
        options = PreprocessOptions.create(run_config.fold_accents,
                run_config.drop_numeric, run_config.stopwords_path)
        docs = preprocess_corpus(labeled, options)
        labels = [note.label.to_binary() for note in labeled]

        rep_cls = representations.get_representation_cls(
                run_config.representation)
        rep_name = rep_cls.get_representation_names()[0]
        rep = rep_cls(seed=derive_seed(run_config.seed, rep_name),
                **run_config.representation_params(rep_name)).fit(docs)
        X = rep.transform(docs)

        selector = None
        if run_config.select_k is not None:
            scores = rep.get_scorer()(X, labels)
            X, selector = select.select_k_best(X, scores, run_config.select_k)

        model_cls = classifiers.get_model_cls(run_config.model)
        model_name = model_cls.get_model_type_names()[0]
        clf = model_cls(seed=derive_seed(run_config.seed, rep_name, model_name,
                'with' if selector else 'without'),
                **run_config.model_params(model_name)).fit(X, labels)
        logger.info('Fitted %(rep)s + %(model)s pipeline on %(n)s notes',
                {'rep': rep_name, 'model': model_name, 'n': len(labeled)})
        return cls(options, rep, selector, clf)



    def predict_proba(self, corpus):
        """
        Args:
          corpus (Corpus or [Note]): Notes to score; labels are ignored.

        Returns:
          (ndarray): Probability of Positive per note.
        """
        docs = preprocess_corpus(corpus, self.options)
        if not docs:
            return np.zeros(0)
        X = self.representation.transform(docs)
        if self.selector is not None:
            X = self.selector.transform(X)
        return self.classifier.predict_proba(X)



    def to_dict(self):
        """
        Returns:
          ({str: *}): The versioned artifact
            `{version, kind, preprocess, representation, selector, model}`.
        """
        return version.stamp_artifact({
            'kind': ARTIFACT_KIND,
            'preprocess': self.options.to_dict(),
            'representation': self.representation.to_dict(),
            'selector': self.selector.to_dict() if self.selector else None,
            'model': self.classifier.to_dict(),
        })



    @classmethod
    def from_dict(cls, payload):
        """
        Args:
          payload ({str: *}): Output of `to_dict()`.

        Returns:
          (Pipeline): The fitted pipeline.

        Raises:
          (VersionMismatchError): Incompatible artifact.
          (InvalidConfigError): Not a pipeline artifact.
        """
        version.check_artifact_version(payload, 'Pipeline')
        if payload.get('kind') != ARTIFACT_KIND:
            raise InvalidConfigError(f'Expected a "{ARTIFACT_KIND}" artifact,'
                    + f' got kind {payload.get("kind")!r}')
        selector = None
        if payload.get('selector') is not None:
            selector = SelectorModel.from_dict(payload['selector'])
        return cls(PreprocessOptions.from_dict(payload['preprocess']),
                representations.load_representation(payload['representation']),
                selector, classifiers.load_model(payload['model']))
